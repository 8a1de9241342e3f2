use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::{check_same_grid, day_ranges};
use crate::calibration::metrics::{f1_temperature_mape, f2_power_median_abs, value_range};
use crate::error::{Error, Result};
use crate::timeseries::TimeSeries;

/// Forecast error of one day.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DailyError {
    pub date: NaiveDate,
    /// Median absolute power error.
    pub power_err_kw: f64,
    /// Median absolute power error over the day's actual power range.
    pub power_err_percent: f64,
    /// Mean absolute percentage error of indoor temperature.
    pub temp_err_percent: f64,
}

/// Errors of one day of aligned values. Power in watts.
pub fn day_error(
    date: NaiveDate,
    forecast_power: &[f64],
    forecast_temp: &[f64],
    actual_power: &[f64],
    actual_temp: &[f64],
) -> Result<DailyError> {
    let f2 = f2_power_median_abs(forecast_power, actual_power)?;
    let range = value_range(actual_power, &format!("actual power on {date}"))?;
    Ok(DailyError {
        date,
        power_err_kw: f2 / 1000.0,
        power_err_percent: 100.0 * f2 / range,
        temp_err_percent: f1_temperature_mape(forecast_temp, actual_temp)?,
    })
}

/// Per-day forecast errors over aligned power and temperature series.
pub fn daily_error_report(
    forecast_power: &TimeSeries,
    forecast_temp: &TimeSeries,
    actual_power: &TimeSeries,
    actual_temp: &TimeSeries,
) -> Result<Vec<DailyError>> {
    check_same_grid(&[forecast_power, forecast_temp, actual_power, actual_temp])?;
    let fp = forecast_power.clone().into_watts();
    let ap = actual_power.clone().into_watts();
    day_ranges(forecast_power)
        .into_iter()
        .map(|(date, r)| {
            day_error(
                date,
                &fp.values()[r.clone()],
                &forecast_temp.values()[r.clone()],
                &ap.values()[r.clone()],
                &actual_temp.values()[r],
            )
        })
        .collect()
}

/// Weather forecast error over a period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeatherError {
    pub mean_relative_percent: f64,
    pub mean_abs: f64,
    pub max_abs: f64,
    /// Instants left out of the relative mean for a near-zero measurement.
    pub excluded: usize,
}

/// Measured values smaller than this are skipped by the relative error.
pub const RELATIVE_EPSILON: f64 = 1e-6;

pub fn weather_error_stats(forecast: &TimeSeries, measured: &TimeSeries) -> Result<WeatherError> {
    check_same_grid(&[forecast, measured])?;
    let (mut rel, mut kept) = (0.0, 0usize);
    let (mut abs, mut max_abs) = (0.0, 0.0f64);
    for (f, m) in forecast.values().iter().zip(measured.values()) {
        let e = (f - m).abs();
        abs += e;
        max_abs = max_abs.max(e);
        if m.abs() >= RELATIVE_EPSILON {
            rel += e / m.abs();
            kept += 1;
        }
    }
    if kept == 0 {
        return Err(Error::DegenerateInput(
            "every measured value is zero; relative error undefined".into(),
        ));
    }
    let n = measured.len();
    Ok(WeatherError {
        mean_relative_percent: 100.0 * rel / kept as f64,
        mean_abs: abs / n as f64,
        max_abs,
        excluded: n - kept,
    })
}
