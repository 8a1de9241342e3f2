use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::clock::ClockTime;
use crate::error::{Error, Result};
use crate::model::Mode;
use crate::timeseries::{TimeSeries, Unit};

/// Daily clock interval `[start, end)` over which savings are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SavingsWindow {
    pub start: ClockTime,
    pub end: ClockTime,
}

impl SavingsWindow {
    pub fn new(start: ClockTime, end: ClockTime) -> Result<Self> {
        if start >= end {
            return Err(Error::Config(format!("savings window {start}..{end} is empty")));
        }
        Ok(SavingsWindow { start, end })
    }

    /// 04:00 to 20:00 when heating, 19:00 to 22:00 when cooling.
    pub fn default_for(mode: Mode) -> Self {
        let t = |h| ClockTime::from_hm(h, 0).expect("valid hour");
        match mode {
            Mode::Heating => SavingsWindow {
                start: t(4),
                end: t(20),
            },
            Mode::Cooling => SavingsWindow {
                start: t(19),
                end: t(22),
            },
        }
    }

    pub fn contains(&self, clock: ClockTime) -> bool {
        self.start <= clock && clock < self.end
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Savings {
    pub kwh: f64,
    pub percent: f64,
}

fn watts(series: &TimeSeries) -> f64 {
    match series.unit() {
        Unit::Kilowatt => 1000.0,
        _ => 1.0,
    }
}

/// Savings of `actual_opt` against the non-optimised forecast inside the
/// window, on power magnitudes.
pub fn energy_savings(forecast_nonopt: &TimeSeries, actual_opt: &TimeSeries, window: &SavingsWindow) -> Result<Savings> {
    if forecast_nonopt.origin() != actual_opt.origin()
        || forecast_nonopt.step() != actual_opt.step()
        || forecast_nonopt.len() != actual_opt.len()
    {
        return Err(Error::DegenerateInput(
            "savings need two series on the same grid".into(),
        ));
    }
    let (sa, sb) = (watts(forecast_nonopt), watts(actual_opt));
    let mut baseline = 0.0;
    let mut saved = 0.0;
    for (k, (t, p_bar)) in forecast_nonopt.iter().enumerate() {
        if window.contains(ClockTime::of(&t)) {
            let b = (p_bar * sa).abs();
            baseline += b;
            saved += b - (actual_opt.values()[k] * sb).abs();
        }
    }
    if baseline == 0.0 {
        return Err(Error::DegenerateBaseline);
    }
    let hours = forecast_nonopt.step().num_seconds() as f64 / 3600.0;
    Ok(Savings {
        kwh: hours * saved / 1000.0,
        percent: 100.0 * saved / baseline,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DailySavings {
    pub date: NaiveDate,
    pub savings_kwh: f64,
    pub savings_percent: f64,
}

/// [`energy_savings`] for every calendar day the two series cover.
pub fn daily_savings(
    forecast_nonopt: &TimeSeries,
    actual_opt: &TimeSeries,
    window: &SavingsWindow,
) -> Result<Vec<DailySavings>> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < forecast_nonopt.len() {
        let date = forecast_nonopt.timestamp(start).date();
        let mut end = start;
        while end < forecast_nonopt.len() && forecast_nonopt.timestamp(end).date() == date {
            end += 1;
        }
        let s = energy_savings(
            &forecast_nonopt.slice(start, end - start)?,
            &actual_opt.slice(start, end - start)?,
            window,
        )?;
        out.push(DailySavings {
            date,
            savings_kwh: s.kwh,
            savings_percent: s.percent,
        });
        start = end;
    }
    Ok(out)
}
