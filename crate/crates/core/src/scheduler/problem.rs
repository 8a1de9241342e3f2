use serde::{Deserialize, Serialize};

use super::DecisionVector;
use crate::clock::ClockTime;
use crate::error::{Error, Result};
use crate::model::{simulate, BuildingConfig, Mode, RcParameters, SimulationResult, ThermalState, GRID_SECONDS};
use crate::timeseries::{ModelInputs, STEPS_PER_DAY};

/// Indoor comfort requirement over a closed daily window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Comfort {
    pub temperature: f64,
    pub window: [ClockTime; 2],
}

impl Comfort {
    /// 08:00 to 20:00 at 23 °C when heating, 24 °C when cooling.
    pub fn default_for(mode: Mode) -> Self {
        let t = |h| ClockTime::from_hm(h, 0).expect("valid hour");
        Comfort {
            temperature: match mode {
                Mode::Heating => 23.0,
                Mode::Cooling => 24.0,
            },
            window: [t(8), t(20)],
        }
    }
}

/// Outcome of one schedule evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    /// Sum of |P| over the day, W. Infinite when the simulation failed.
    pub objective: f64,
    /// Worst comfort violation in °C; `<= 0` is feasible.
    pub constraint: f64,
}

impl Evaluation {
    pub const FAILED: Evaluation = Evaluation {
        objective: f64::INFINITY,
        constraint: f64::INFINITY,
    };

    pub fn feasible(&self) -> bool {
        self.constraint <= 0.0
    }
}

/// Converts a sum of 15-minute power samples (W) to kWh.
pub fn watt_sum_to_kwh(sum: f64) -> f64 {
    sum * GRID_SECONDS / 3.6e6
}

/// One day of forecast inputs with a calibrated model and a comfort target.
#[derive(Debug, Clone)]
pub struct DayAheadProblem {
    params: RcParameters,
    config: BuildingConfig,
    inputs: ModelInputs,
    initial: ThermalState,
    comfort: Comfort,
    in_window: Vec<usize>,
}

impl DayAheadProblem {
    pub fn new(
        params: RcParameters,
        config: BuildingConfig,
        inputs: ModelInputs,
        initial: ThermalState,
        comfort: Comfort,
    ) -> Result<Self> {
        params.validate()?;
        config.validate()?;
        if inputs.len() != STEPS_PER_DAY {
            return Err(Error::DegenerateInput(format!(
                "day-ahead inputs must hold {STEPS_PER_DAY} steps, got {}",
                inputs.len()
            )));
        }
        let [lo, hi] = comfort.window;
        let in_window: Vec<usize> = (0..inputs.len())
            .filter(|&k| {
                let c = ClockTime::of(&inputs.timestamp(k));
                lo <= c && c <= hi
            })
            .collect();
        if in_window.is_empty() {
            return Err(Error::Config(format!("comfort window {lo}..{hi} contains no grid instant")));
        }
        Ok(DayAheadProblem {
            params,
            config,
            inputs,
            initial,
            comfort,
            in_window,
        })
    }

    pub fn config(&self) -> &BuildingConfig {
        &self.config
    }

    pub fn inputs(&self) -> &ModelInputs {
        &self.inputs
    }

    pub fn comfort(&self) -> &Comfort {
        &self.comfort
    }

    pub fn initial(&self) -> ThermalState {
        self.initial
    }

    /// Grid indices inside the comfort window.
    pub fn comfort_indices(&self) -> &[usize] {
        &self.in_window
    }

    pub fn simulate(&self, theta: &DecisionVector) -> Result<SimulationResult> {
        simulate(&self.params, &self.config, &self.inputs, self.initial, Some(theta))
    }

    /// Sum of |P| over the day, W.
    pub fn objective_energy(&self, theta: &DecisionVector) -> Result<f64> {
        Ok(Self::energy_of(&self.simulate(theta)?))
    }

    fn energy_of(run: &SimulationResult) -> f64 {
        run.power.values().iter().map(|p| p.abs()).sum()
    }

    /// Comfort violation at every instant of the window (°C, `<= 0` is met).
    pub fn comfort_violations(&self, theta: &DecisionVector) -> Result<Vec<f64>> {
        Ok(self.violations_of(&self.simulate(theta)?))
    }

    fn violations_of(&self, run: &SimulationResult) -> Vec<f64> {
        let t = run.indoor_temp.values();
        self.in_window
            .iter()
            .map(|&k| match self.config.mode {
                Mode::Heating => self.comfort.temperature - t[k],
                Mode::Cooling => t[k] - self.comfort.temperature,
            })
            .collect()
    }

    /// Largest comfort violation over the window.
    pub fn constraint_comfort(&self, theta: &DecisionVector) -> Result<f64> {
        Ok(self.max_violation(&self.simulate(theta)?))
    }

    fn max_violation(&self, run: &SimulationResult) -> f64 {
        self.violations_of(run).into_iter().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Objective and constraint from a single simulation. A day that starts
    /// at or after night start counts as infeasible by the gap in minutes.
    pub fn evaluate(&self, theta: &DecisionVector) -> Evaluation {
        if !super::DecisionSpace::is_ordered(theta) {
            return Evaluation {
                objective: f64::INFINITY,
                constraint: 1.0 + (theta.day_start - theta.night_start).max(0.0),
            };
        }
        match self.simulate(theta) {
            Ok(run) => Evaluation {
                objective: Self::energy_of(&run),
                constraint: self.max_violation(&run),
            },
            Err(_) => Evaluation::FAILED,
        }
    }
}
