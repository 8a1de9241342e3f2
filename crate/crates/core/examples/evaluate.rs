//! Ex-post evaluation. A quick calibration on noisy history gives the model
//! used for planning; the optimised schedule is then "applied" to the true
//! building and compared with the forecast of the configured schedule
//! (savings) and with the model's own prediction (accuracy).
//!
//! cargo run --release --example evaluate

use thermoplan::calibration::nsga2::Nsga2Settings;
use thermoplan::calibration::{calibrate, CalibrationSettings};
use thermoplan::evaluation::{daily_error_report, daily_savings, error_summary, period_summary, SavingsWindow};
use thermoplan::model::{simulate, state_after_history, ParameterBounds};
use thermoplan::scheduler::{
    optimize_schedule, Comfort, DayAheadProblem, DecisionBounds, DecisionSpace, DecisionVector, SearchSettings,
    Variable,
};
use thermoplan::synthetic::Scenario;

fn main() -> thermoplan::Result<()> {
    let scenario = Scenario::winter_office(7)?;
    let config = &scenario.building.config;
    let history = scenario.history(0.02, 1)?;
    let settings = CalibrationSettings {
        algorithm: Nsga2Settings {
            population: 40,
            generations: 40,
            ..Nsga2Settings::default()
        },
        ..CalibrationSettings::default()
    };
    let cal = calibrate(&history, config, &ParameterBounds::default(), &settings, 42)?;
    println!("calibration gate passed: {}", cal.accuracy.pass);
    let params = cal.selected.params;

    let initial = state_after_history(&params, config, &history)?;
    let inputs = scenario.forecast_inputs()?;
    let problem = DayAheadProblem::new(params, config.clone(), inputs.clone(), initial, Comfort::default_for(config.mode))?;
    let configured = DecisionVector::from_config(config);
    let space = DecisionSpace::new(
        vec![Variable::DayStart, Variable::NightSetpoint, Variable::NightStart],
        DecisionBounds::default(),
        configured,
    )?;
    let sol = optimize_schedule(&problem, &space, &SearchSettings::default(), 42)?;

    let baseline = simulate(&params, config, &inputs, initial, None)?;
    let predicted = problem.simulate(&sol.theta)?;
    let measured = scenario.measured_day(Some(&sol.theta))?;

    let window = SavingsWindow::default_for(config.mode);
    let savings = period_summary(&daily_savings(&baseline.power, measured.power(), &window)?)?;
    for d in &savings.days {
        println!("{}: saved {:.0} kWh ({:.1}%)", d.date, d.savings_kwh, d.savings_percent);
    }

    let errors = error_summary(&daily_error_report(
        &predicted.power,
        &predicted.indoor_temp,
        measured.power(),
        measured.indoor_temp(),
    )?)?;
    for d in &errors.days {
        println!(
            "{}: power error {:.1} kW ({:.2}%), temperature error {:.2}%",
            d.date, d.power_err_kw, d.power_err_percent, d.temp_err_percent
        );
    }

    let dir = std::env::temp_dir();
    savings.write_csv(dir.join("savings.csv"))?;
    errors.write_csv(dir.join("errors.csv"))?;
    println!("reports in {}", dir.display());
    Ok(())
}
