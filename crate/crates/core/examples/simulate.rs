//! Forward simulation of the synthetic office over its forecast day, starting
//! from the state reached by replaying the measured history.
//!
//! cargo run --example simulate -- [out.csv]

use thermoplan::model::{simulate, state_after_history};
use thermoplan::synthetic::Scenario;

fn main() -> thermoplan::Result<()> {
    let scenario = Scenario::winter_office(7)?;
    let b = &scenario.building;
    let history = scenario.history(0.0, 0)?;
    let initial = state_after_history(&b.params, &b.config, &history)?;
    println!("state after {} history steps: T_i {:.2} C, T_m {:.2} C", history.len(), initial.t_i, initial.t_m);

    let run = simulate(&b.params, &b.config, &scenario.forecast_inputs()?, initial, None)?;
    println!("time    set    T_i    P [kW]");
    for k in (0..run.len()).step_by(4) {
        println!(
            "{}  {:5.1}  {:5.2}  {:7.1}",
            run.power.timestamp(k).format("%H:%M"),
            run.setpoint.values()[k],
            run.indoor_temp.values()[k],
            run.power.values()[k] / 1000.0
        );
    }
    println!("total {:.0} kWh", run.energy_kwh());

    if let Some(path) = std::env::args().nth(1) {
        run.write_csv(&path)?;
        println!("wrote {path}");
    }
    Ok(())
}
