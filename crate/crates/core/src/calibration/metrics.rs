//! Forecast error measures.

use crate::error::{Error, Result};

/// Actual temperatures closer to 0 °C than this make the relative error undefined.
pub const ZERO_TEMPERATURE_TOLERANCE: f64 = 1e-6;

fn check_lengths(forecast: &[f64], actual: &[f64]) -> Result<()> {
    if forecast.len() != actual.len() || actual.is_empty() {
        return Err(Error::DegenerateInput(format!(
            "forecast and actual must have the same non-zero length ({} vs {})",
            forecast.len(),
            actual.len()
        )));
    }
    Ok(())
}

/// Median with the mean-of-central-pair convention for even lengths.
pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "median of an empty slice");
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

/// Mean absolute percentage error of temperatures, in %.
pub fn f1_temperature_mape(forecast: &[f64], actual: &[f64]) -> Result<f64> {
    check_lengths(forecast, actual)?;
    if let Some(i) = actual.iter().position(|t| t.abs() < ZERO_TEMPERATURE_TOLERANCE) {
        return Err(Error::DegenerateDenominator(format!(
            "actual temperature at index {i} is 0 °C"
        )));
    }
    let sum: f64 = forecast.iter().zip(actual).map(|(f, a)| ((f - a) / a).abs()).sum();
    Ok(100.0 * sum / actual.len() as f64)
}

/// Median absolute deviation between forecast and actual power, in the input unit.
pub fn f2_power_median_abs(forecast: &[f64], actual: &[f64]) -> Result<f64> {
    check_lengths(forecast, actual)?;
    let dev: Vec<f64> = forecast.iter().zip(actual).map(|(f, a)| (f - a).abs()).collect();
    Ok(median(&dev))
}

/// Median absolute temperature deviation.
pub fn median_abs_deviation(forecast: &[f64], actual: &[f64]) -> Result<f64> {
    f2_power_median_abs(forecast, actual)
}

/// `max - min` of a series, rejecting a flat one.
pub fn value_range(values: &[f64], what: &str) -> Result<f64> {
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if !(hi > lo) {
        return Err(Error::DegenerateRange(format!("{what} is constant")));
    }
    Ok(hi - lo)
}
