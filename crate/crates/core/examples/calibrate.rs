//! Calibrates the network on 28 days of synthetic office data. Prints the
//! Pareto front and the selected compromise with its accuracy gate.
//!
//! cargo run --release --example calibrate -- [noise] [seed]

use thermoplan::calibration::{calibrate, CalibrationSettings};
use thermoplan::model::{ParameterBounds, PARAMETER_NAMES};
use thermoplan::synthetic::Scenario;

fn main() -> thermoplan::Result<()> {
    let mut args = std::env::args().skip(1);
    let noise: f64 = args.next().map_or(0.0, |a| a.parse().expect("noise level"));
    let seed: u64 = args.next().map_or(42, |a| a.parse().expect("seed"));

    let scenario = Scenario::winter_office(7)?;
    let history = scenario.history(noise, 99)?;
    let building = &scenario.building;

    let started = std::time::Instant::now();
    let cal = calibrate(
        &history,
        &building.config,
        &ParameterBounds::default(),
        &CalibrationSettings::default(),
        seed,
    )?;
    println!("calibrated in {:.1?}, front of {} candidates", started.elapsed(), cal.front.len());
    for c in cal.front.candidates().iter().take(10) {
        println!("  f1 = {:8.4} %   f2 = {:10.1} W", c.scores.f1, c.scores.f2);
    }

    let truth = building.params.to_array();
    let found = cal.selected.params.to_array();
    println!("\n{:>6} {:>12} {:>12}", "param", "true", "selected");
    for i in 0..truth.len() {
        println!("{:>6} {:>12.4e} {:>12.4e}", PARAMETER_NAMES[i], truth[i], found[i]);
    }
    let a = &cal.accuracy;
    println!(
        "\nmedian |dT| = {:.3} C, f1 = {:.3} %, P_error = {:.3} %  ->  {}",
        a.median_abs_temp_error,
        a.relative_temp_error,
        a.relative_power_error,
        if a.pass { "PASS" } else { "FAIL" }
    );
    Ok(())
}
