use chrono::{Datelike, NaiveDate, NaiveDateTime, TimeDelta, Weekday};
use serde::{Deserialize, Serialize};

use super::{grid_step, resample_linear, RawBundle, Role, ScheduleSeries, TimeSeries, WeeklySchedule, GRID_MINUTES};
use crate::error::{Error, Result};

/// Half-open interval `[start, end)` on the 15-minute grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub start: NaiveDateTime,
    pub end: NaiveDateTime,
}

impl Window {
    pub fn new(start: NaiveDateTime, end: NaiveDateTime) -> Result<Self> {
        let span = end - start;
        if span <= TimeDelta::zero() || span.num_seconds() % (GRID_MINUTES * 60) != 0 {
            return Err(Error::Config(format!(
                "window {start} .. {end} is empty or not a whole number of 15-minute steps"
            )));
        }
        Ok(Window { start, end })
    }

    /// `days` whole days starting at midnight of `first_day`.
    pub fn days(first_day: NaiveDate, days: u32) -> Self {
        let start = first_day.and_hms_opt(0, 0, 0).expect("midnight exists");
        Window {
            start,
            end: start + TimeDelta::days(days as i64),
        }
    }

    /// Window of `steps` grid steps starting at `start`.
    pub fn steps_from(start: NaiveDateTime, steps: usize) -> Self {
        Window {
            start,
            end: start + grid_step() * steps as i32,
        }
    }

    pub fn len(&self) -> usize {
        ((self.end - self.start).num_minutes() / GRID_MINUTES) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Which daylight-saving calendar the naive local timestamps follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DstRule {
    /// No transitions (fixed-offset local time).
    None,
    /// Last Sunday of March and of October.
    #[default]
    EuropeanUnion,
}

fn last_sunday(year: i32, month: u32) -> NaiveDate {
    let mut d = NaiveDate::from_ymd_opt(year, month + 1, 1)
        .expect("valid month")
        .pred_opt()
        .expect("valid date");
    while d.weekday() != Weekday::Sun {
        d = d.pred_opt().expect("valid date");
    }
    d
}

/// Transition days whose switching instant (02:00 or 03:00 local) lies in `window`.
pub fn dst_transitions(rule: DstRule, window: &Window) -> Vec<NaiveDate> {
    match rule {
        DstRule::None => Vec::new(),
        DstRule::EuropeanUnion => {
            let mut out = Vec::new();
            for year in window.start.year()..=window.end.year() {
                for (month, hour) in [(3, 2), (10, 3)] {
                    let day = last_sunday(year, month);
                    let instant = day.and_hms_opt(hour, 0, 0).expect("valid time");
                    if window.start <= instant && instant < window.end {
                        out.push(day);
                    }
                }
            }
            out
        }
    }
}

/// Weather and schedules driving the model, all on the same 15-minute grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelInputs {
    external_temp: TimeSeries,
    solar_irradiance: TimeSeries,
    occupancy: ScheduleSeries,
    ventilation: ScheduleSeries,
}

impl ModelInputs {
    pub fn new(
        external_temp: TimeSeries,
        solar_irradiance: TimeSeries,
        occupancy: ScheduleSeries,
        ventilation: ScheduleSeries,
    ) -> Result<Self> {
        let origin = external_temp.origin();
        let len = external_temp.len();
        let grid = grid_step();
        let shapes = [
            ("external_temp", external_temp.origin(), external_temp.step(), external_temp.len()),
            ("solar_irradiance", solar_irradiance.origin(), solar_irradiance.step(), solar_irradiance.len()),
            ("occupancy", occupancy.origin(), occupancy.step(), occupancy.len()),
            ("ventilation", ventilation.origin(), ventilation.step(), ventilation.len()),
        ];
        for (name, o, s, l) in shapes {
            if o != origin || s != grid || l != len {
                return Err(Error::Config(format!(
                    "{name} is not aligned on the shared 15-minute grid ({o}, {} min, {l} samples)",
                    s.num_minutes()
                )));
            }
        }
        Ok(ModelInputs {
            external_temp,
            solar_irradiance,
            occupancy,
            ventilation,
        })
    }

    pub fn external_temp(&self) -> &TimeSeries {
        &self.external_temp
    }

    pub fn solar_irradiance(&self) -> &TimeSeries {
        &self.solar_irradiance
    }

    pub fn occupancy(&self) -> &ScheduleSeries {
        &self.occupancy
    }

    pub fn ventilation(&self) -> &ScheduleSeries {
        &self.ventilation
    }

    pub fn len(&self) -> usize {
        self.external_temp.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn origin(&self) -> NaiveDateTime {
        self.external_temp.origin()
    }

    pub fn timestamp(&self, index: usize) -> NaiveDateTime {
        self.external_temp.timestamp(index)
    }

    pub fn slice(&self, start: usize, len: usize) -> Result<ModelInputs> {
        Ok(ModelInputs {
            external_temp: self.external_temp.slice(start, len)?,
            solar_irradiance: self.solar_irradiance.slice(start, len)?,
            occupancy: self.occupancy.slice(start, len)?,
            ventilation: self.ventilation.slice(start, len)?,
        })
    }
}

/// Measured power and indoor temperature together with the model inputs, all
/// on one common grid.
#[derive(Debug, Clone, PartialEq)]
pub struct InputBundle {
    power: TimeSeries,
    indoor_temp: TimeSeries,
    inputs: ModelInputs,
}

impl InputBundle {
    pub fn new(power: TimeSeries, indoor_temp: TimeSeries, inputs: ModelInputs) -> Result<Self> {
        for (name, s) in [("power", &power), ("indoor_temp", &indoor_temp)] {
            if s.origin() != inputs.origin() || s.step() != grid_step() || s.len() != inputs.len() {
                return Err(Error::Config(format!(
                    "{name} is not aligned with the model inputs"
                )));
            }
        }
        Ok(InputBundle {
            power,
            indoor_temp,
            inputs,
        })
    }

    /// Measured power in W.
    pub fn power(&self) -> &TimeSeries {
        &self.power
    }

    pub fn indoor_temp(&self) -> &TimeSeries {
        &self.indoor_temp
    }

    pub fn external_temp(&self) -> &TimeSeries {
        self.inputs.external_temp()
    }

    pub fn solar_irradiance(&self) -> &TimeSeries {
        self.inputs.solar_irradiance()
    }

    pub fn occupancy(&self) -> &ScheduleSeries {
        self.inputs.occupancy()
    }

    pub fn ventilation(&self) -> &ScheduleSeries {
        self.inputs.ventilation()
    }

    pub fn inputs(&self) -> &ModelInputs {
        &self.inputs
    }

    pub fn len(&self) -> usize {
        self.inputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty()
    }

    pub fn origin(&self) -> NaiveDateTime {
        self.inputs.origin()
    }

    pub fn slice(&self, start: usize, len: usize) -> Result<InputBundle> {
        Ok(InputBundle {
            power: self.power.slice(start, len)?,
            indoor_temp: self.indoor_temp.slice(start, len)?,
            inputs: self.inputs.slice(start, len)?,
        })
    }

    /// The last `len` steps.
    pub fn tail(&self, len: usize) -> Result<InputBundle> {
        if len > self.len() {
            return Err(Error::InsufficientHistory {
                needed: len,
                available: self.len(),
            });
        }
        self.slice(self.len() - len, len)
    }
}

impl From<&ModelInputs> for RawBundle {
    fn from(m: &ModelInputs) -> Self {
        RawBundle::new()
            .with_series(Role::ExternalTemp, m.external_temp.clone())
            .with_series(Role::SolarIrradiance, m.solar_irradiance.clone())
            .with_schedule(Role::Occupancy, m.occupancy.clone())
            .with_schedule(Role::Ventilation, m.ventilation.clone())
    }
}

impl From<&InputBundle> for RawBundle {
    fn from(b: &InputBundle) -> Self {
        RawBundle::from(&b.inputs)
            .with_series(Role::Power, b.power.clone())
            .with_series(Role::IndoorTemp, b.indoor_temp.clone())
    }
}

impl RawBundle {
    /// Adds template-generated occupancy/ventilation for `window` where the
    /// bundle has no such schedule.
    pub fn with_template_schedules(mut self, template: &WeeklySchedule, window: &Window) -> Result<Self> {
        for role in [Role::Occupancy, Role::Ventilation] {
            if self.schedule(role).is_none() {
                let s = template.generate(role, window.start, window.len())?;
                self = self.with_schedule(role, s);
            }
        }
        Ok(self)
    }
}

fn missing_whole(role: Role, window: &Window) -> Error {
    Error::Coverage {
        series: role.to_string(),
        missing: format!("{} .. {} (series absent)", window.start, window.end),
    }
}

fn grid_offset(origin: NaiveDateTime, start: NaiveDateTime, role: Role) -> Result<i64> {
    let offset = (start - origin).num_minutes();
    if (start - origin).num_seconds() % (GRID_MINUTES * 60) != 0 {
        return Err(Error::Config(format!(
            "{role} samples are not on the 15-minute grid of the window starting {start}"
        )));
    }
    Ok(offset / GRID_MINUTES)
}

fn fit_measured(role: Role, series: &TimeSeries, window: &Window) -> Result<TimeSeries> {
    let step = series.step_minutes();
    let on_grid = if step == GRID_MINUTES {
        series.clone()
    } else {
        resample_linear(series, grid_step())?
    };
    if window.start < on_grid.origin() {
        return Err(Error::Coverage {
            series: role.to_string(),
            missing: format!("{} .. {}", window.start, on_grid.origin()),
        });
    }
    let last_needed = window.end - grid_step();
    if last_needed > on_grid.last_timestamp() {
        return Err(Error::Coverage {
            series: role.to_string(),
            missing: format!("{} .. {}", on_grid.last_timestamp() + grid_step(), window.end),
        });
    }
    let offset = grid_offset(on_grid.origin(), window.start, role)?;
    on_grid.slice(offset as usize, window.len())
}

fn fit_schedule(role: Role, series: &ScheduleSeries, window: &Window) -> Result<ScheduleSeries> {
    let on_grid = series.resample_hold(grid_step())?;
    if window.start < on_grid.origin() {
        return Err(Error::Coverage {
            series: role.to_string(),
            missing: format!("{} .. {}", window.start, on_grid.origin()),
        });
    }
    if window.end > on_grid.covered_until() {
        return Err(Error::Coverage {
            series: role.to_string(),
            missing: format!("{} .. {}", on_grid.covered_until(), window.end),
        });
    }
    let offset = grid_offset(on_grid.origin(), window.start, role)?;
    on_grid.slice(offset as usize, window.len())
}

fn check_dst(rule: DstRule, window: &Window) -> Result<()> {
    match dst_transitions(rule, window).first() {
        Some(day) => Err(Error::DaylightSaving(*day)),
        None => Ok(()),
    }
}

fn measured(raw: &RawBundle, role: Role, window: &Window) -> Result<TimeSeries> {
    let s = raw.series(role).ok_or_else(|| missing_whole(role, window))?;
    fit_measured(role, s, window)
}

fn schedule(raw: &RawBundle, role: Role, window: &Window) -> Result<ScheduleSeries> {
    let s = raw.schedule(role).ok_or_else(|| missing_whole(role, window))?;
    fit_schedule(role, s, window)
}

/// One measured series resampled and trimmed to `window`.
pub fn align_series(raw: &RawBundle, role: Role, window: &Window) -> Result<TimeSeries> {
    measured(raw, role, window)
}

/// Aligns weather and schedules onto `window` (no measured power/temperature needed).
pub fn align_inputs(raw: &RawBundle, window: &Window, dst: DstRule) -> Result<ModelInputs> {
    check_dst(dst, window)?;
    ModelInputs::new(
        measured(raw, Role::ExternalTemp, window)?,
        measured(raw, Role::SolarIrradiance, window)?,
        schedule(raw, Role::Occupancy, window)?,
        schedule(raw, Role::Ventilation, window)?,
    )
}

/// Resamples every series to the 15-minute grid (linear for measured values,
/// previous-value hold for schedules) and trims all of them to `window`.
pub fn align(raw: &RawBundle, window: &Window, dst: DstRule) -> Result<InputBundle> {
    let power = measured(raw, Role::Power, window)?;
    let indoor_temp = measured(raw, Role::IndoorTemp, window)?;
    InputBundle::new(power, indoor_temp, align_inputs(raw, window, dst)?)
}
