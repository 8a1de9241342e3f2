//! The run configuration file (TOML).
//!
//! Every section is optional and defaults to the office case study values:
//! 15-minute grid, 28-day calibration window, 08:00 to 20:00 comfort at
//! 23 °C heating or 24 °C cooling, gate thresholds 1 °C / 5 % / 12 %.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::calibration::CalibrationSettings;
use crate::clock::ClockTime;
use crate::error::{Error, Result};
use crate::evaluation::SavingsWindow;
use crate::model::{initial_state_from_history, state_after_history, BuildingConfig, Mode, ParameterBounds, RcParameters, ThermalState};
use crate::scheduler::{Comfort, DecisionBounds, SearchSettings, Variable};
use crate::timeseries::{ColumnSpec, DstRule, InputBundle, WeeklySchedule};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Settings {
    pub building: BuildingSection,
    pub model: ModelSection,
    pub bounds: ParameterBounds,
    pub calibration: CalibrationSettings,
    pub optimization: OptimizationSection,
    pub evaluation: EvaluationSection,
    pub columns: ColumnSpec,
    pub schedule: ScheduleSection,
    pub timeseries: TimeseriesSection,
}

/// Building description with powers in kW.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BuildingSection {
    pub mode: Mode,
    pub p_min_kw: f64,
    pub p_max_kw: f64,
    pub day_setpoint: f64,
    pub night_setpoint: f64,
    pub day_start: ClockTime,
    pub day_end: ClockTime,
    pub volume: f64,
    pub machine_efficiency: f64,
    pub lhv: f64,
}

impl Default for BuildingSection {
    fn default() -> Self {
        let t = |h| ClockTime::from_hm(h, 0).expect("valid hour");
        BuildingSection {
            mode: Mode::Heating,
            p_min_kw: 0.0,
            p_max_kw: 1635.0,
            day_setpoint: 21.0,
            night_setpoint: 16.0,
            day_start: t(6),
            day_end: t(21),
            volume: 75_000.0,
            machine_efficiency: 0.9,
            lhv: 10.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelSection {
    /// RK4 substeps per 15-minute step.
    pub substeps: u32,
}

impl Default for ModelSection {
    fn default() -> Self {
        ModelSection { substeps: 1 }
    }
}

/// How the next-day simulation is initialised from the history.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialStateRule {
    /// Replay the history through the model for the wall core, take the
    /// last measured indoor temperature for the air.
    #[default]
    HistoryReplay,
    /// Last measured indoor temperature; wall core halfway to outdoors.
    LastMeasured,
}

impl InitialStateRule {
    pub fn state(self, params: &RcParameters, config: &BuildingConfig, history: &InputBundle) -> Result<ThermalState> {
        match self {
            InitialStateRule::HistoryReplay => state_after_history(params, config, history),
            InitialStateRule::LastMeasured => Ok(initial_state_from_history(&history.tail(1)?)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OptimizationSection {
    /// Defaults to 23 °C heating, 24 °C cooling.
    pub comfort_temp: Option<f64>,
    pub comfort_window: Option<[ClockTime; 2]>,
    pub variables: Vec<Variable>,
    pub bounds: DecisionBounds,
    pub search: SearchSettings,
    pub initial_state: InitialStateRule,
}

impl Default for OptimizationSection {
    fn default() -> Self {
        OptimizationSection {
            comfort_temp: None,
            comfort_window: None,
            variables: vec![Variable::DayStart, Variable::NightSetpoint, Variable::NightStart],
            bounds: DecisionBounds::default(),
            search: SearchSettings::default(),
            initial_state: InitialStateRule::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EvaluationSection {
    /// Defaults to 04:00 to 20:00 heating, 19:00 to 22:00 cooling.
    pub savings_window: Option<[ClockTime; 2]>,
}

/// Where occupancy and ventilation come from when the CSV has no such column.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScheduleSection {
    /// Weekly template file, relative to the config file.
    pub template: Option<PathBuf>,
    /// Inline weekly template.
    pub weekly: Option<WeeklySchedule>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TimeseriesSection {
    pub dst: DstRule,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            building: BuildingSection::default(),
            model: ModelSection::default(),
            bounds: ParameterBounds::default(),
            calibration: CalibrationSettings::default(),
            optimization: OptimizationSection::default(),
            evaluation: EvaluationSection::default(),
            columns: ColumnSpec {
                power: Some("power".into()),
                indoor_temp: Some("indoor_temp".into()),
                external_temp: Some("external_temp".into()),
                solar_irradiance: Some("solar_irradiance".into()),
                occupancy: None,
                ventilation: None,
            },
            schedule: ScheduleSection::default(),
            timeseries: TimeseriesSection::default(),
        }
    }
}

impl Settings {
    /// Parses a config file. Unknown keys are rejected by name; relative
    /// template paths are resolved against the file's directory.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut s = Self::from_toml(&text).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            other => other,
        })?;
        if let (Some(t), Some(dir)) = (&s.schedule.template, path.parent()) {
            if t.is_relative() {
                s.schedule.template = Some(dir.join(t));
            }
        }
        Ok(s)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let s: Settings = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        s.validate()?;
        Ok(s)
    }

    /// Takes every building value from a model-level config.
    pub fn with_building(mut self, c: &BuildingConfig) -> Self {
        self.building = BuildingSection {
            mode: c.mode,
            p_min_kw: c.p_min / 1000.0,
            p_max_kw: c.p_max / 1000.0,
            day_setpoint: c.day_setpoint,
            night_setpoint: c.night_setpoint,
            day_start: c.day_start,
            day_end: c.day_end,
            volume: c.volume,
            machine_efficiency: c.machine_efficiency,
            lhv: c.lhv,
        };
        self.model.substeps = c.substeps;
        self
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let text = toml::to_string(self).map_err(|e| Error::Config(format!("cannot serialise settings: {e}")))?;
        std::fs::write(path, text).map_err(|e| Error::io(path, e))
    }

    pub fn validate(&self) -> Result<()> {
        self.building_config().validate()?;
        self.bounds.validate()?;
        self.calibration.algorithm.validate()?;
        self.optimization.bounds.validate()?;
        self.optimization.search.mads.validate()?;
        if self.optimization.variables.is_empty() {
            return Err(Error::Config("optimization.variables must name at least one variable".into()));
        }
        self.comfort()?;
        self.savings_window()?;
        if self.schedule.template.is_some() && self.schedule.weekly.is_some() {
            return Err(Error::Config("schedule: give either `template` or `weekly`, not both".into()));
        }
        if let Some(w) = &self.schedule.weekly {
            w.validate()?;
        }
        Ok(())
    }

    pub fn mode(&self) -> Mode {
        self.building.mode
    }

    /// Switches the season; power limits are mirrored when they only fit
    /// the other season.
    pub fn set_mode(&mut self, mode: Mode) {
        let b = &mut self.building;
        if b.mode != mode {
            let (lo, hi) = (b.p_min_kw, b.p_max_kw);
            let fits = match mode {
                Mode::Heating => lo >= 0.0,
                Mode::Cooling => hi <= 0.0,
            };
            if !fits {
                // Adding 0.0 turns -0.0 into 0.0 for the written file.
                b.p_min_kw = -hi + 0.0;
                b.p_max_kw = -lo + 0.0;
            }
            b.mode = mode;
        }
    }

    /// The model-level building config (watts).
    pub fn building_config(&self) -> BuildingConfig {
        let b = &self.building;
        BuildingConfig {
            mode: b.mode,
            p_min: b.p_min_kw * 1000.0,
            p_max: b.p_max_kw * 1000.0,
            day_setpoint: b.day_setpoint,
            night_setpoint: b.night_setpoint,
            day_start: b.day_start,
            day_end: b.day_end,
            volume: b.volume,
            machine_efficiency: b.machine_efficiency,
            lhv: b.lhv,
            substeps: self.model.substeps,
        }
    }

    pub fn comfort(&self) -> Result<Comfort> {
        let mut c = Comfort::default_for(self.mode());
        if let Some(t) = self.optimization.comfort_temp {
            c.temperature = t;
        }
        if let Some(w) = self.optimization.comfort_window {
            if w[0] > w[1] {
                return Err(Error::Config(format!("comfort window {}..{} is reversed", w[0], w[1])));
            }
            c.window = w;
        }
        if !c.temperature.is_finite() {
            return Err(Error::Config("comfort_temp must be finite".into()));
        }
        Ok(c)
    }

    pub fn savings_window(&self) -> Result<SavingsWindow> {
        match self.evaluation.savings_window {
            Some([a, b]) => SavingsWindow::new(a, b),
            None => Ok(SavingsWindow::default_for(self.mode())),
        }
    }

    /// The weekly template used to fill absent occupancy/ventilation columns.
    pub fn weekly_schedule(&self) -> Result<Option<WeeklySchedule>> {
        match (&self.schedule.template, &self.schedule.weekly) {
            (Some(path), _) => WeeklySchedule::from_file(path).map(Some),
            (None, Some(w)) => Ok(Some(w.clone())),
            (None, None) => Ok(None),
        }
    }
}
