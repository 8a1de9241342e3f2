//! Writes a synthetic office's measured history and next-day weather, plus a
//! matching run configuration for the command-line pipeline.
//!
//!     cargo run --example synthetic_data -- data/ [noise] [seed]

use thermoplan::synthetic::Scenario;

fn main() -> thermoplan::Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = args.next().unwrap_or_else(|| "data".into());
    let noise: f64 = args.next().map_or(0.0, |s| s.parse().expect("noise is a number"));
    let seed: u64 = args.next().map_or(7, |s| s.parse().expect("seed is an integer"));

    let scenario = Scenario::winter_office(seed)?;
    let files = scenario.write_files(&dir, noise, seed)?;
    println!(
        "{} days of history from {}, forecast day {}",
        scenario.history_days,
        scenario.first_day,
        scenario.forecast_day()
    );
    for path in [&files.history, &files.weather, &files.config] {
        println!("wrote {}", path.display());
    }
    Ok(())
}
