//! Uniformly sampled series and their CSV ingestion. Resampling and alignment
//! bring them onto the 15-minute model grid.

mod align;
mod ingest;
mod schedule;

pub use align::{align, align_inputs, align_series, dst_transitions, DstRule, InputBundle, ModelInputs, Window};
pub use ingest::{ingest_csv, write_csv, ColumnSpec, RawBundle, Role, MAX_FILLED_GAP};
pub(crate) use ingest::TIMESTAMP_FORMAT;
pub use schedule::{DayWindows, WeeklySchedule};

use chrono::{NaiveDateTime, TimeDelta};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minutes between two samples of the model grid.
pub const GRID_MINUTES: i64 = 15;

/// Steps in one day on the model grid.
pub const STEPS_PER_DAY: usize = 96;

pub fn grid_step() -> TimeDelta {
    TimeDelta::minutes(GRID_MINUTES)
}

/// Physical unit attached to a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Unit {
    Watt,
    Kilowatt,
    Celsius,
    WattPerSquareMetre,
    Dimensionless,
}

/// A uniformly sampled real-valued series.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    origin: NaiveDateTime,
    step: TimeDelta,
    values: Vec<f64>,
    unit: Unit,
}

fn check_step(step: TimeDelta) -> Result<()> {
    if step <= TimeDelta::zero() || step.num_seconds() % 60 != 0 || step.subsec_nanos() != 0 {
        return Err(Error::Config(format!(
            "series step must be a positive whole number of minutes, got {step}"
        )));
    }
    Ok(())
}

impl TimeSeries {
    pub fn new(origin: NaiveDateTime, step: TimeDelta, values: Vec<f64>, unit: Unit) -> Result<Self> {
        check_step(step)?;
        if values.is_empty() {
            return Err(Error::InsufficientData("a series needs at least one value".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::DegenerateInput(format!(
                "non-finite value at index {i} of series starting {origin}"
            )));
        }
        Ok(TimeSeries {
            origin,
            step,
            values,
            unit,
        })
    }

    /// A series on the 15-minute model grid.
    pub fn on_grid(origin: NaiveDateTime, values: Vec<f64>, unit: Unit) -> Result<Self> {
        Self::new(origin, grid_step(), values, unit)
    }

    pub fn origin(&self) -> NaiveDateTime {
        self.origin
    }

    pub fn step(&self) -> TimeDelta {
        self.step
    }

    pub fn step_minutes(&self) -> i64 {
        self.step.num_minutes()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn timestamp(&self, index: usize) -> NaiveDateTime {
        self.origin + self.step * index as i32
    }

    pub fn last_timestamp(&self) -> NaiveDateTime {
        self.timestamp(self.len() - 1)
    }

    /// Index of `t` if it falls exactly on a sample instant.
    pub fn index_of(&self, t: NaiveDateTime) -> Option<usize> {
        let offset = t - self.origin;
        if offset < TimeDelta::zero() {
            return None;
        }
        let step = self.step.num_seconds();
        let secs = offset.num_seconds();
        if secs % step != 0 {
            return None;
        }
        let index = (secs / step) as usize;
        (index < self.len()).then_some(index)
    }

    pub fn iter(&self) -> impl Iterator<Item = (NaiveDateTime, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| (self.timestamp(i), *v))
    }

    /// Sub-series of `len` samples starting at `start`.
    pub fn slice(&self, start: usize, len: usize) -> Result<TimeSeries> {
        if len == 0 || start + len > self.len() {
            return Err(Error::InsufficientData(format!(
                "slice {start}..{} out of a series of length {}",
                start + len,
                self.len()
            )));
        }
        Ok(TimeSeries {
            origin: self.timestamp(start),
            step: self.step,
            values: self.values[start..start + len].to_vec(),
            unit: self.unit,
        })
    }

    /// Same series with a transformed value set.
    pub fn with_values(&self, values: Vec<f64>) -> Result<TimeSeries> {
        TimeSeries::new(self.origin, self.step, values, self.unit)
    }

    /// Converts kilowatt series to watts; other units are returned unchanged.
    pub fn into_watts(mut self) -> TimeSeries {
        if self.unit == Unit::Kilowatt {
            self.values.iter_mut().for_each(|v| *v *= 1000.0);
            self.unit = Unit::Watt;
        }
        self
    }

    /// Converts watt series to kilowatts; other units are returned unchanged.
    pub fn into_kilowatts(mut self) -> TimeSeries {
        if self.unit == Unit::Watt {
            self.values.iter_mut().for_each(|v| *v /= 1000.0);
            self.unit = Unit::Kilowatt;
        }
        self
    }
}

/// A uniformly sampled on/off indicator (occupancy, ventilation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleSeries {
    origin: NaiveDateTime,
    step: TimeDelta,
    values: Vec<bool>,
}

impl ScheduleSeries {
    pub fn new(origin: NaiveDateTime, step: TimeDelta, values: Vec<bool>) -> Result<Self> {
        check_step(step)?;
        if values.is_empty() {
            return Err(Error::InsufficientData("a schedule needs at least one value".into()));
        }
        Ok(ScheduleSeries {
            origin,
            step,
            values,
        })
    }

    pub fn origin(&self) -> NaiveDateTime {
        self.origin
    }

    pub fn step(&self) -> TimeDelta {
        self.step
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn timestamp(&self, index: usize) -> NaiveDateTime {
        self.origin + self.step * index as i32
    }

    /// Indicator as 0.0 / 1.0.
    pub fn value(&self, index: usize) -> f64 {
        if self.values[index] {
            1.0
        } else {
            0.0
        }
    }

    /// End of the interval held by the last sample.
    pub fn covered_until(&self) -> NaiveDateTime {
        self.timestamp(self.len())
    }

    pub fn slice(&self, start: usize, len: usize) -> Result<ScheduleSeries> {
        if len == 0 || start + len > self.len() {
            return Err(Error::InsufficientData(format!(
                "slice {start}..{} out of a schedule of length {}",
                start + len,
                self.len()
            )));
        }
        Ok(ScheduleSeries {
            origin: self.timestamp(start),
            step: self.step,
            values: self.values[start..start + len].to_vec(),
        })
    }

    /// Upsamples by previous-value hold: each sample is repeated for every
    /// finer step inside its interval.
    pub fn resample_hold(&self, target_step: TimeDelta) -> Result<ScheduleSeries> {
        let factor = upsampling_factor(self.step, target_step)?;
        let values = self
            .values
            .iter()
            .flat_map(|v| std::iter::repeat_n(*v, factor))
            .collect();
        ScheduleSeries::new(self.origin, target_step, values)
    }
}

fn upsampling_factor(step: TimeDelta, target_step: TimeDelta) -> Result<usize> {
    check_step(target_step)?;
    let from = step.num_minutes();
    let to = target_step.num_minutes();
    if to > from {
        return Err(Error::UnsupportedDownsampling {
            from_minutes: from,
            to_minutes: to,
        });
    }
    if from % to != 0 {
        return Err(Error::Config(format!(
            "target step {to} min does not divide series step {from} min"
        )));
    }
    Ok((from / to) as usize)
}

/// Upsamples `series` to `target_step` by linear interpolation between
/// neighbouring samples. Original instants keep their exact values and the
/// output spans the same interval (first to last sample).
pub fn resample_linear(series: &TimeSeries, target_step: TimeDelta) -> Result<TimeSeries> {
    if series.len() < 2 {
        return Err(Error::InsufficientData(
            "linear resampling needs at least two samples".into(),
        ));
    }
    let factor = upsampling_factor(series.step, target_step)?;
    let v = &series.values;
    let mut out = Vec::with_capacity((v.len() - 1) * factor + 1);
    for pair in v.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        out.push(a);
        for j in 1..factor {
            let w = j as f64 / factor as f64;
            out.push(a + (b - a) * w);
        }
    }
    out.push(v[v.len() - 1]);
    TimeSeries::new(series.origin, target_step, out, series.unit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::NaiveDate;

    fn t0() -> NaiveDateTime {
        NaiveDate::from_ymd_opt(2018, 1, 31)
            .unwrap()
            .and_hms_opt(0, 0, 0)
            .unwrap()
    }

    fn hourly(values: &[f64]) -> TimeSeries {
        TimeSeries::new(t0(), TimeDelta::hours(1), values.to_vec(), Unit::Celsius).unwrap()
    }

    #[test]
    fn resample_two_points() {
        let out = resample_linear(&hourly(&[10.0, 14.0]), grid_step()).unwrap();
        assert_eq!(out.values(), &[10.0, 11.0, 12.0, 13.0, 14.0]);
        assert_eq!(out.step_minutes(), 15);
        assert_eq!(out.origin(), t0());
    }

    #[test]
    fn resample_piecewise() {
        let out = resample_linear(&hourly(&[0.0, 8.0, 4.0]), grid_step()).unwrap();
        assert_eq!(out.values(), &[0.0, 2.0, 4.0, 6.0, 8.0, 7.0, 6.0, 5.0, 4.0]);
    }

    #[test]
    fn resample_constant() {
        let out = resample_linear(&hourly(&[3.5; 6]), grid_step()).unwrap();
        assert!(out.values().iter().all(|v| *v == 3.5));
        assert_eq!(out.len(), 21);
    }

    #[test]
    fn resample_rejects_downsampling_and_short_input() {
        let s = TimeSeries::on_grid(t0(), vec![1.0, 2.0], Unit::Celsius).unwrap();
        assert!(matches!(
            resample_linear(&s, TimeDelta::hours(1)),
            Err(Error::UnsupportedDownsampling { .. })
        ));
        assert!(matches!(
            resample_linear(&hourly(&[1.0]), grid_step()),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn hold_repeats_each_value() {
        let s = ScheduleSeries::new(t0(), TimeDelta::hours(1), vec![false, true, false]).unwrap();
        let out = s.resample_hold(grid_step()).unwrap();
        assert_eq!(out.len(), 12);
        assert!(out.values()[4..8].iter().all(|v| *v));
        assert!(!out.values()[3] && !out.values()[8]);
    }

    #[test]
    fn index_lookup() {
        let s = TimeSeries::on_grid(t0(), vec![0.0; 8], Unit::Celsius).unwrap();
        assert_eq!(s.index_of(t0() + TimeDelta::minutes(45)), Some(3));
        assert_eq!(s.index_of(t0() + TimeDelta::minutes(50)), None);
        assert_eq!(s.index_of(t0() - TimeDelta::minutes(15)), None);
        assert_eq!(s.index_of(t0() + TimeDelta::hours(2)), None);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(TimeSeries::on_grid(t0(), vec![1.0, f64::NAN], Unit::Celsius).is_err());
    }

    proptest::proptest! {
        #[test]
        fn resample_exact_on_affine(a in -5.0f64..5.0, b in -30.0f64..30.0, n in 2usize..48) {
            let vals: Vec<f64> = (0..n).map(|h| a * (h as f64 * 60.0) + b).collect();
            let out = resample_linear(&hourly(&vals), grid_step()).unwrap();
            let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            for (i, v) in out.values().iter().enumerate() {
                let expected = a * (i as f64 * 15.0) + b;
                proptest::prop_assert!((v - expected).abs() <= 1e-12 * scale);
            }
        }
    }
}
