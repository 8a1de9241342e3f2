//! Day-ahead schedule for the synthetic office: a multistart direct search
//! over the set-point program, checked against the configured schedule and a
//! brute-force scan of day start.
//!
//! cargo run --release --example optimize -- [seed]

use thermoplan::model::state_after_history;
use thermoplan::scheduler::{
    optimize_schedule, Comfort, DayAheadProblem, DecisionBounds, DecisionSpace, DecisionVector, SearchSettings,
    Variable,
};
use thermoplan::synthetic::Scenario;

fn main() -> thermoplan::Result<()> {
    let seed: u64 = std::env::args().nth(1).map_or(42, |a| a.parse().expect("seed"));
    let scenario = Scenario::winter_office(7)?;
    let b = &scenario.building;
    let history = scenario.history(0.0, 0)?;
    let initial = state_after_history(&b.params, &b.config, &history)?;
    let problem = DayAheadProblem::new(
        b.params,
        b.config.clone(),
        scenario.forecast_inputs()?,
        initial,
        Comfort::default_for(b.config.mode),
    )?;

    let baseline = DecisionVector::from_config(&b.config);
    let base = problem.evaluate(&baseline);
    println!(
        "configured schedule: {:.0} kWh, comfort margin {:+.2} C",
        base.objective * 0.25 / 1000.0,
        -base.constraint
    );

    let space = DecisionSpace::new(
        vec![Variable::DayStart, Variable::NightSetpoint, Variable::NightStart],
        DecisionBounds::default(),
        baseline,
    )?;
    let sol = optimize_schedule(&problem, &space, &SearchSettings::default(), seed)?;
    let t = sol.theta;
    println!(
        "optimised: day from {} , night {:.2} C from {}",
        thermoplan::clock::format_minutes(t.day_start),
        t.night_setpoint.unwrap(),
        thermoplan::clock::format_minutes(t.night_start)
    );
    println!(
        "  {:.0} kWh, constraint {:+.3} C, feasible {}, {} simulations",
        sol.predicted_energy_kwh, sol.constraint_value, sol.feasible, sol.evaluations_used
    );

    // Brute force over day start alone, one-minute grid.
    let mut best = (f64::INFINITY, 0.0);
    for m in 240..=480 {
        let theta = DecisionVector { day_start: m as f64, ..baseline };
        let e = problem.evaluate(&theta);
        if e.feasible() && e.objective < best.0 {
            best = (e.objective, m as f64);
        }
        if m % 15 == 0 {
            println!("  day start {}: {:.0} kWh  g = {:+.3}", thermoplan::clock::format_minutes(m as f64), e.objective * 0.25 / 1000.0, e.constraint);
        }
    }
    println!("grid optimum over day start: {} ({:.0} kWh)", thermoplan::clock::format_minutes(best.1), best.0 * 0.25 / 1000.0);
    Ok(())
}
