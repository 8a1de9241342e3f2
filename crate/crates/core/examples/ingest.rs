//! Hourly weather written to CSV, read back through a column mapping and
//! aligned onto the 15-minute model grid. Occupancy and ventilation come from
//! a weekday template because the file has no schedule columns.
//!
//! cargo run --example ingest -- [dir]

use chrono::NaiveDate;
use thermoplan::clock::ClockTime;
use thermoplan::synthetic::WinterWeather;
use thermoplan::timeseries::{
    align_inputs, ingest_csv, write_csv, ColumnSpec, DstRule, RawBundle, Role, WeeklySchedule, Window,
};

fn main() -> thermoplan::Result<()> {
    let dir = std::env::args().nth(1).map_or_else(std::env::temp_dir, Into::into);
    let path = dir.join("hourly_weather.csv");

    let first_day = NaiveDate::from_ymd_opt(2018, 2, 12).unwrap();
    let start = first_day.and_hms_opt(0, 0, 0).unwrap();
    // One spare hour so the last grid instants can be interpolated.
    let (temp, sun) = WinterWeather::default().generate(start, 2 * 24 + 1, 3)?;
    let raw = RawBundle::new()
        .with_series(Role::ExternalTemp, temp)
        .with_series(Role::SolarIrradiance, sun);
    write_csv(&raw, &path)?;
    println!("wrote {}", path.display());

    let columns = ColumnSpec {
        external_temp: Some("external_temp".into()),
        solar_irradiance: Some("solar_irradiance".into()),
        ..ColumnSpec::default()
    };
    let window = Window::days(first_day, 2);
    let t = |h| ClockTime::from_hm(h, 0).unwrap();
    let template = WeeklySchedule::weekdays([t(8), t(18)], [t(7), t(19)]);
    let raw = ingest_csv(&path, &columns)?.with_template_schedules(&template, &window)?;
    let inputs = align_inputs(&raw, &window, DstRule::EuropeanUnion)?;

    println!("{} grid steps from {}", inputs.len(), inputs.origin());
    println!("time               T_e     I_sol  occ  vent");
    for k in (28..40).chain(190..192) {
        println!(
            "{}  {:6.2}  {:6.1}  {:3}  {:4}",
            inputs.timestamp(k).format("%Y-%m-%d %H:%M"),
            inputs.external_temp().values()[k],
            inputs.solar_irradiance().values()[k],
            inputs.occupancy().values()[k] as u8,
            inputs.ventilation().values()[k] as u8,
        );
    }
    Ok(())
}
