use chrono::NaiveDateTime;
use serde::{Deserialize, Serialize};

use crate::clock::ClockTime;
use crate::error::{Error, Result};
use crate::scheduler::DecisionVector;
use crate::timeseries::GRID_MINUTES;

/// Season the thermal plant operates in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Heating,
    Cooling,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heating" => Ok(Mode::Heating),
            "cooling" => Ok(Mode::Cooling),
            other => Err(Error::Config(format!("unknown mode `{other}` (heating|cooling)"))),
        }
    }
}

/// Static building inputs. Powers are signed watts: heating positive,
/// cooling negative.
#[derive(Debug, Clone, PartialEq)]
pub struct BuildingConfig {
    pub mode: Mode,
    pub p_min: f64,
    pub p_max: f64,
    pub day_setpoint: f64,
    pub night_setpoint: f64,
    pub day_start: ClockTime,
    pub day_end: ClockTime,
    /// Building volume in m³ (reporting only).
    pub volume: f64,
    /// Production efficiency in [0, 1] (reporting only).
    pub machine_efficiency: f64,
    /// Fuel lower heating value in kWh/m³ (reporting only).
    pub lhv: f64,
    /// RK4 substeps per grid step.
    pub substeps: u32,
}

impl BuildingConfig {
    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.p_min,
            self.p_max,
            self.day_setpoint,
            self.night_setpoint,
            self.volume,
            self.machine_efficiency,
            self.lhv,
        ];
        if finite.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config("building values must be finite".into()));
        }
        if self.p_min > self.p_max {
            return Err(Error::Config(format!(
                "p_min ({}) exceeds p_max ({})",
                self.p_min, self.p_max
            )));
        }
        match self.mode {
            Mode::Heating if self.p_min < 0.0 => {
                return Err(Error::Config("heating mode requires p_min >= 0".into()))
            }
            Mode::Cooling if self.p_max > 0.0 => {
                return Err(Error::Config("cooling mode requires p_max <= 0".into()))
            }
            _ => {}
        }
        if self.day_start >= self.day_end {
            return Err(Error::Config(format!(
                "day_start {} must precede day_end {}",
                self.day_start, self.day_end
            )));
        }
        if !(0.0..=1.0).contains(&self.machine_efficiency) {
            return Err(Error::Config("machine_efficiency must lie in [0, 1]".into()));
        }
        if self.volume < 0.0 || self.lhv < 0.0 {
            return Err(Error::Config("volume and lhv must not be negative".into()));
        }
        if self.substeps == 0 {
            return Err(Error::Config("substeps must be at least 1".into()));
        }
        Ok(())
    }

    /// Fuel volume (m³) needed to deliver `thermal_kwh`.
    pub fn fuel_volume(&self, thermal_kwh: f64) -> Option<f64> {
        let denom = self.machine_efficiency * self.lhv;
        (denom > 0.0).then(|| thermal_kwh / denom)
    }
}

/// Day/night set-point program for one simulation. Switch times are
/// continuous minutes after midnight, applied at the grid instant at or
/// before them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SetpointSchedule {
    pub day_setpoint: f64,
    pub night_setpoint: f64,
    pub day_start: f64,
    pub night_start: f64,
}

fn snap_to_grid(minutes: f64) -> f64 {
    (minutes / GRID_MINUTES as f64).floor() * GRID_MINUTES as f64
}

impl SetpointSchedule {
    pub fn from_config(config: &BuildingConfig) -> Self {
        SetpointSchedule {
            day_setpoint: config.day_setpoint,
            night_setpoint: config.night_setpoint,
            day_start: config.day_start.minutes() as f64,
            night_start: config.day_end.minutes() as f64,
        }
    }

    /// Config program with the decision variables substituted.
    pub fn with_decision(config: &BuildingConfig, decision: &DecisionVector) -> Self {
        SetpointSchedule {
            day_setpoint: config.day_setpoint,
            night_setpoint: decision.night_setpoint.unwrap_or(config.night_setpoint),
            day_start: decision.day_start,
            night_start: decision.night_start,
        }
    }

    /// Day set-point on `[day_start, night_start)`, night set-point otherwise.
    pub fn at(&self, t: NaiveDateTime) -> f64 {
        let clock = ClockTime::of(&t).minutes() as f64;
        if snap_to_grid(self.day_start) <= clock && clock < snap_to_grid(self.night_start) {
            self.day_setpoint
        } else {
            self.night_setpoint
        }
    }
}

/// Set-point in force at `t`, from the config program or a decision override.
pub fn setpoint_at(config: &BuildingConfig, decision: Option<&DecisionVector>, t: NaiveDateTime) -> f64 {
    match decision {
        Some(d) => SetpointSchedule::with_decision(config, d).at(t),
        None => SetpointSchedule::from_config(config).at(t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::NaiveDate;

    pub(crate) fn config() -> BuildingConfig {
        BuildingConfig {
            mode: Mode::Heating,
            p_min: 0.0,
            p_max: 1.0e6,
            day_setpoint: 23.0,
            night_setpoint: 16.0,
            day_start: "06:00".parse().unwrap(),
            day_end: "21:00".parse().unwrap(),
            volume: 75_000.0,
            machine_efficiency: 0.9,
            lhv: 10.5,
            substeps: 1,
        }
    }

    fn at(h: u32, m: u32) -> NaiveDateTime {
        NaiveDate::from_ymd_opt(2018, 2, 5).unwrap().and_hms_opt(h, m, 0).unwrap()
    }

    #[test]
    fn day_and_night_values() {
        let c = config();
        assert_eq!(setpoint_at(&c, None, at(12, 0)), 23.0);
        assert_eq!(setpoint_at(&c, None, at(3, 0)), 16.0);
    }

    #[test]
    fn half_open_boundaries() {
        let c = config();
        assert_eq!(setpoint_at(&c, None, at(6, 0)), 23.0);
        assert_eq!(setpoint_at(&c, None, at(5, 45)), 16.0);
        assert_eq!(setpoint_at(&c, None, at(21, 0)), 16.0);
        assert_eq!(setpoint_at(&c, None, at(20, 45)), 23.0);
    }

    #[test]
    fn decision_override_snaps_to_grid() {
        let c = config();
        let d = DecisionVector {
            day_start: 5.0 * 60.0 + 29.0,
            night_setpoint: Some(12.0),
            night_start: 18.0 * 60.0 + 14.9,
        };
        assert_eq!(setpoint_at(&c, Some(&d), at(5, 15)), 23.0);
        assert_eq!(setpoint_at(&c, Some(&d), at(5, 0)), 12.0);
        assert_eq!(setpoint_at(&c, Some(&d), at(17, 45)), 23.0);
        assert_eq!(setpoint_at(&c, Some(&d), at(18, 0)), 12.0);
    }

    #[test]
    fn config_invariants() {
        let mut c = config();
        c.validate().unwrap();
        c.p_min = -1.0;
        assert!(c.validate().is_err());
        let mut c = config();
        c.mode = Mode::Cooling;
        assert!(c.validate().is_err());
        c.p_min = -1.0e6;
        c.p_max = 0.0;
        c.validate().unwrap();
        let mut c = config();
        c.day_start = "22:00".parse().unwrap();
        assert!(c.validate().is_err());
        let mut c = config();
        c.volume = -1.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn fuel_volume_uses_efficiency_and_lhv() {
        let c = config();
        let v = c.fuel_volume(945.0).unwrap();
        assert!((v - 100.0).abs() < 1e-9);
    }
}
