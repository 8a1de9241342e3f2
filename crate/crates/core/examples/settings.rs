//! Run settings: defaults and a partial TOML file with the quantities derived
//! from them, then two rejected files.
//!
//! cargo run --example settings

use thermoplan::model::Mode;
use thermoplan::settings::Settings;

const PARTIAL: &str = r#"
[building]
mode = "cooling"
p_min_kw = -900.0
p_max_kw = 0.0
day_setpoint = 24.0
night_setpoint = 28.0

[optimization]
comfort_temp = 25.5
"#;

fn main() -> thermoplan::Result<()> {
    let defaults = Settings::default();
    let c = defaults.comfort()?;
    let w = defaults.savings_window()?;
    println!(
        "defaults: {:?}, comfort {} C over {}..{}, savings window {}..{}",
        defaults.mode(),
        c.temperature,
        c.window[0],
        c.window[1],
        w.start,
        w.end
    );

    let cooling = Settings::from_toml(PARTIAL)?;
    let c = cooling.comfort()?;
    let config = cooling.building_config();
    let w = cooling.savings_window()?;
    println!(
        "partial file: {:?}, power {}..{} W, comfort {} C, savings window {}..{}",
        cooling.mode(),
        config.p_min,
        config.p_max,
        c.temperature,
        w.start,
        w.end
    );

    for bad in ["[building]\nvolume = -1.0\n", "[optimisation]\ncomfort_temp = 20.0\n"] {
        match Settings::from_toml(bad) {
            Ok(_) => println!("accepted: {bad:?}"),
            Err(e) => println!("rejected: {e}"),
        }
    }

    let mut switched = Settings::default();
    switched.set_mode(Mode::Cooling);
    println!("\n{}", toml::to_string(&switched).expect("settings serialise"));
    Ok(())
}
