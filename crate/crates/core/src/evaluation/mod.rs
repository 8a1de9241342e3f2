//! Realised performance: energy savings against the non-optimised forecast,
//! and forecast error for the model and the weather service. CSV reports.

mod accuracy;
mod savings;
mod summary;

use std::ops::Range;
use std::path::Path;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

pub use accuracy::{daily_error_report, day_error, weather_error_stats, DailyError, WeatherError, RELATIVE_EPSILON};
pub use savings::{daily_savings, energy_savings, DailySavings, Savings, SavingsWindow};
pub use summary::{summarize, Summary};

use crate::error::{Error, Result};
use crate::format::{csv_writer, fmt_sig};
use crate::timeseries::{TimeSeries, TIMESTAMP_FORMAT};

pub(crate) fn check_same_grid(series: &[&TimeSeries]) -> Result<()> {
    let first = series[0];
    for s in &series[1..] {
        if s.origin() != first.origin() || s.step() != first.step() || s.len() != first.len() {
            return Err(Error::DegenerateInput(format!(
                "series are not aligned: {} x {} from {} vs {} x {} from {}",
                first.len(),
                first.step(),
                first.origin(),
                s.len(),
                s.step(),
                s.origin()
            )));
        }
    }
    Ok(())
}

/// Index ranges of each calendar day covered by `series`.
pub(crate) fn day_ranges(series: &TimeSeries) -> Vec<(NaiveDate, Range<usize>)> {
    let mut out: Vec<(NaiveDate, Range<usize>)> = Vec::new();
    for k in 0..series.len() {
        let date = series.timestamp(k).date();
        match out.last_mut() {
            Some((d, r)) if *d == date => r.end = k + 1,
            _ => out.push((date, k..k + 1)),
        }
    }
    out
}

fn summary_of<T>(rows: &[T], f: impl Fn(&T) -> f64) -> Result<Summary> {
    let values: Vec<f64> = rows.iter().map(f).collect();
    summarize(&values).ok_or_else(|| Error::InsufficientData("a period needs at least one day".into()))
}

fn write_footer<W: std::io::Write>(w: &mut csv::Writer<W>, columns: &[Summary]) -> Result<()> {
    let mut mean = vec!["Mean".to_string()];
    let mut sd = vec!["S.D.".to_string()];
    for c in columns {
        mean.push(fmt_sig(c.mean));
        sd.push(fmt_sig(c.sd));
    }
    w.write_record(&mean)?;
    w.write_record(&sd)?;
    Ok(())
}

/// Daily savings with mean and standard deviation of both columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SavingsReport {
    pub days: Vec<DailySavings>,
    pub kwh: Summary,
    pub percent: Summary,
}

pub fn period_summary(days: &[DailySavings]) -> Result<SavingsReport> {
    Ok(SavingsReport {
        days: days.to_vec(),
        kwh: summary_of(days, |d| d.savings_kwh)?,
        percent: summary_of(days, |d| d.savings_percent)?,
    })
}

impl SavingsReport {
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut w = csv_writer(path)?;
        w.write_record(["date", "savings_kWh", "savings_percent"])?;
        for d in &self.days {
            w.write_record([d.date.to_string(), fmt_sig(d.savings_kwh), fmt_sig(d.savings_percent)])?;
        }
        write_footer(&mut w, &[self.kwh, self.percent])?;
        w.flush().map_err(|e| Error::io(path, e))
    }
}

/// Daily forecast errors with their period statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub days: Vec<DailyError>,
    pub power_err_kw: Summary,
    pub power_err_percent: Summary,
    pub temp_err_percent: Summary,
}

pub fn error_summary(days: &[DailyError]) -> Result<ErrorReport> {
    Ok(ErrorReport {
        days: days.to_vec(),
        power_err_kw: summary_of(days, |d| d.power_err_kw)?,
        power_err_percent: summary_of(days, |d| d.power_err_percent)?,
        temp_err_percent: summary_of(days, |d| d.temp_err_percent)?,
    })
}

impl ErrorReport {
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut w = csv_writer(path)?;
        w.write_record(["date", "power_err_kW", "power_err_percent", "temp_err_percent"])?;
        for d in &self.days {
            w.write_record([
                d.date.to_string(),
                fmt_sig(d.power_err_kw),
                fmt_sig(d.power_err_percent),
                fmt_sig(d.temp_err_percent),
            ])?;
        }
        write_footer(&mut w, &[self.power_err_kw, self.power_err_percent, self.temp_err_percent])?;
        w.flush().map_err(|e| Error::io(path, e))
    }
}

/// Forecast error of outdoor temperature and solar irradiance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeatherReport {
    pub temperature: WeatherError,
    pub irradiance: WeatherError,
}

impl WeatherReport {
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut w = csv_writer(path)?;
        w.write_record(["statistic", "temperature_C", "irradiance_W_m2"])?;
        let (t, s) = (&self.temperature, &self.irradiance);
        w.write_record(["mean_relative_percent", &fmt_sig(t.mean_relative_percent), &fmt_sig(s.mean_relative_percent)])?;
        w.write_record(["mean_abs", &fmt_sig(t.mean_abs), &fmt_sig(s.mean_abs)])?;
        w.write_record(["max_abs", &fmt_sig(t.max_abs), &fmt_sig(s.max_abs)])?;
        w.flush().map_err(|e| Error::io(path, e))
    }
}

/// Power traces for plotting, as magnitudes in kW.
pub fn write_plot_data(
    path: impl AsRef<Path>,
    actual: &TimeSeries,
    forecast_opt: &TimeSeries,
    forecast_nonopt: &TimeSeries,
) -> Result<()> {
    check_same_grid(&[actual, forecast_opt, forecast_nonopt])?;
    let kw = |s: &TimeSeries| s.clone().into_kilowatts();
    let (a, o, n) = (kw(actual), kw(forecast_opt), kw(forecast_nonopt));
    let path = path.as_ref();
    let mut w = csv_writer(path)?;
    w.write_record(["timestamp", "actual_power", "forecast_opt_power", "forecast_nonopt_power"])?;
    for k in 0..a.len() {
        w.write_record([
            a.timestamp(k).format(TIMESTAMP_FORMAT).to_string(),
            fmt_sig(a.values()[k].abs()),
            fmt_sig(o.values()[k].abs()),
            fmt_sig(n.values()[k].abs()),
        ])?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timeseries::Unit;
    use proptest::prelude::*;

    fn rows(kwh: &[f64], pct: &[f64]) -> Vec<DailySavings> {
        let d0 = NaiveDate::from_ymd_opt(2018, 7, 2).unwrap();
        kwh.iter()
            .zip(pct)
            .enumerate()
            .map(|(i, (k, p))| DailySavings {
                date: d0 + chrono::Days::new(i as u64),
                savings_kwh: *k,
                savings_percent: *p,
            })
            .collect()
    }

    #[test]
    fn cooling_savings_table() {
        let r = period_summary(&rows(
            &[971., 1235., 1640., 2033., 542., 906., 1418., 1952., 1418., 1508.],
            &[6.6, 10.2, 10.9, 11.1, 2.5, 3.6, 9.5, 10.2, 9.9, 11.6],
        ))
        .unwrap();
        assert!((r.kwh.mean - 1362.3).abs() < 0.05);
        assert!((r.percent.mean - 8.6).abs() < 0.05);
        assert!((r.kwh.sd - 441.9).abs() < 0.05);
    }

    #[test]
    fn heating_savings_mean_kwh() {
        let r = period_summary(&rows(
            &[2310., 1738., 2248., 1533., 1129., 397., 636., 1797., 714., 1062., 1290., 384., 1725., 813., 1179., 40., 1375.],
            &[0.0; 17],
        ))
        .unwrap();
        assert!((r.kwh.mean - 1198.2).abs() < 0.05);
        assert!((r.kwh.sd - 631.8).abs() < 0.05);
    }

    #[test]
    fn single_day_period() {
        let r = period_summary(&rows(&[12.0], &[3.0])).unwrap();
        assert!(r.kwh.single_sample && r.kwh.sd == 0.0);
        assert!(period_summary(&[]).is_err());
    }

    #[test]
    fn day_ranges_follow_the_calendar() {
        let t = NaiveDate::from_ymd_opt(2018, 7, 2).unwrap().and_hms_opt(23, 0, 0).unwrap();
        let s = TimeSeries::on_grid(t, vec![0.0; 10], Unit::Watt).unwrap();
        let r = day_ranges(&s);
        assert_eq!(r.len(), 2);
        assert_eq!((r[0].1.clone(), r[1].1.clone()), (0..4, 4..10));
    }

    #[test]
    fn savings_csv_has_a_footer() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("savings.csv");
        period_summary(&rows(&[10.0, 20.0], &[1.0, 3.0])).unwrap().write_csv(&path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "date,savings_kWh,savings_percent");
        assert_eq!(lines[1], "2018-07-02,10,1");
        assert_eq!(lines[3], "Mean,15,2");
        assert_eq!(lines[4], "S.D.,5,1");
    }

    #[test]
    fn plot_data_shows_magnitudes_in_kw() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("plot.csv");
        let t = NaiveDate::from_ymd_opt(2018, 7, 2).unwrap().and_hms_opt(0, 0, 0).unwrap();
        let a = TimeSeries::on_grid(t, vec![-2000.0, -1500.0], Unit::Watt).unwrap();
        let b = TimeSeries::on_grid(t, vec![-1.0, -1.25], Unit::Kilowatt).unwrap();
        write_plot_data(&path, &a, &b, &b).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().nth(2).unwrap(), "2018-07-02T00:15,1.5,1.25,1.25");
    }

    proptest! {
        #[test]
        fn summary_mean_is_the_daily_mean(values in proptest::collection::vec(-1e4f64..1e4, 1..40)) {
            let r = period_summary(&rows(&values, &values)).unwrap();
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            prop_assert!((r.kwh.mean - mean).abs() <= 1e-12 * mean.abs().max(1.0));
        }

        #[test]
        fn percent_matches_kwh_over_baseline(
            base in proptest::collection::vec(1.0f64..500.0, 96),
            opt in proptest::collection::vec(0.0f64..500.0, 96),
        ) {
            let t = NaiveDate::from_ymd_opt(2018, 7, 2).unwrap().and_hms_opt(0, 0, 0).unwrap();
            let a = TimeSeries::on_grid(t, base.clone(), Unit::Kilowatt).unwrap();
            let b = TimeSeries::on_grid(t, opt, Unit::Kilowatt).unwrap();
            let w = SavingsWindow::default_for(crate::model::Mode::Heating);
            let day = &daily_savings(&a, &b, &w).unwrap()[0];
            let baseline_kwh: f64 = base[16..80].iter().sum::<f64>() * 0.25;
            prop_assert!((day.savings_percent - 100.0 * day.savings_kwh / baseline_kwh).abs() < 1e-3);
        }
    }
}
