use std::path::Path;

use chrono::{Datelike, NaiveDateTime, Weekday};
use serde::{Deserialize, Serialize};

use super::{grid_step, Role, ScheduleSeries};
use crate::clock::ClockTime;
use crate::error::{Error, Result};

/// Occupied and ventilated intervals of one weekday, each `[start, end)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DayWindows {
    pub occupancy: Option<[ClockTime; 2]>,
    pub ventilation: Option<[ClockTime; 2]>,
}

impl DayWindows {
    fn window(&self, role: Role) -> Option<[ClockTime; 2]> {
        match role {
            Role::Occupancy => self.occupancy,
            Role::Ventilation => self.ventilation,
            _ => None,
        }
    }
}

/// Weekly template from which occupancy and ventilation schedules are generated.
/// Days without an entry are unoccupied and unventilated.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeeklySchedule {
    pub monday: Option<DayWindows>,
    pub tuesday: Option<DayWindows>,
    pub wednesday: Option<DayWindows>,
    pub thursday: Option<DayWindows>,
    pub friday: Option<DayWindows>,
    pub saturday: Option<DayWindows>,
    pub sunday: Option<DayWindows>,
}

impl WeeklySchedule {
    /// Same windows Monday to Friday, nothing at weekends.
    pub fn weekdays(occupancy: [ClockTime; 2], ventilation: [ClockTime; 2]) -> Self {
        let day = Some(DayWindows {
            occupancy: Some(occupancy),
            ventilation: Some(ventilation),
        });
        WeeklySchedule {
            monday: day.clone(),
            tuesday: day.clone(),
            wednesday: day.clone(),
            thursday: day.clone(),
            friday: day,
            saturday: None,
            sunday: None,
        }
    }

    /// Same windows every day of the week.
    pub fn every_day(occupancy: [ClockTime; 2], ventilation: [ClockTime; 2]) -> Self {
        let mut s = Self::weekdays(occupancy, ventilation);
        s.saturday = s.monday.clone();
        s.sunday = s.monday.clone();
        s
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let schedule: WeeklySchedule = toml::from_str(&text)
            .map_err(|e| Error::Config(format!("{}: {}", path.display(), e.message())))?;
        schedule.validate()?;
        Ok(schedule)
    }

    pub fn day(&self, weekday: Weekday) -> Option<&DayWindows> {
        match weekday {
            Weekday::Mon => self.monday.as_ref(),
            Weekday::Tue => self.tuesday.as_ref(),
            Weekday::Wed => self.wednesday.as_ref(),
            Weekday::Thu => self.thursday.as_ref(),
            Weekday::Fri => self.friday.as_ref(),
            Weekday::Sat => self.saturday.as_ref(),
            Weekday::Sun => self.sunday.as_ref(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for wd in [
            Weekday::Mon,
            Weekday::Tue,
            Weekday::Wed,
            Weekday::Thu,
            Weekday::Fri,
            Weekday::Sat,
            Weekday::Sun,
        ] {
            if let Some(day) = self.day(wd) {
                for (what, w) in [("occupancy", day.occupancy), ("ventilation", day.ventilation)] {
                    if let Some([start, end]) = w {
                        if start >= end {
                            return Err(Error::Config(format!(
                                "{wd} {what}: start {start} must precede end {end}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether `role` is active at instant `t`.
    pub fn is_active(&self, role: Role, t: NaiveDateTime) -> bool {
        let clock = ClockTime::of(&t);
        self.day(t.weekday())
            .and_then(|d| d.window(role))
            .is_some_and(|[start, end]| start <= clock && clock < end)
    }

    /// Generates `len` samples of `role` on the 15-minute grid from `start`.
    pub fn generate(&self, role: Role, start: NaiveDateTime, len: usize) -> Result<ScheduleSeries> {
        if !role.is_schedule() {
            return Err(Error::Config(format!("{role} is not a schedule role")));
        }
        let step = grid_step();
        let values = (0..len)
            .map(|i| self.is_active(role, start + step * i as i32))
            .collect();
        ScheduleSeries::new(start, step, values)
    }
}
