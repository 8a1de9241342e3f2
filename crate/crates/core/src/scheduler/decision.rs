use serde::{Deserialize, Serialize};

use crate::clock::ClockTime;
use crate::error::{Error, Result};
use crate::model::BuildingConfig;

/// Schedule decisions for one day. Times are continuous minutes after
/// midnight; the simulation floors them to the 15-minute grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecisionVector {
    pub day_start: f64,
    /// `None` keeps the configured night set-point.
    pub night_setpoint: Option<f64>,
    pub night_start: f64,
}

impl DecisionVector {
    /// The schedule already written in the building config.
    pub fn from_config(config: &BuildingConfig) -> Self {
        DecisionVector {
            day_start: config.day_start.minutes() as f64,
            night_setpoint: Some(config.night_setpoint),
            night_start: config.day_end.minutes() as f64,
        }
    }
}

/// A searchable decision variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variable {
    DayStart,
    NightSetpoint,
    NightStart,
}

/// Box bounds on every decision variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecisionBounds {
    pub day_start: [ClockTime; 2],
    pub night_start: [ClockTime; 2],
    pub night_setpoint: [f64; 2],
}

impl Default for DecisionBounds {
    fn default() -> Self {
        let t = |h| ClockTime::from_hm(h, 0).expect("valid hour");
        DecisionBounds {
            day_start: [t(4), t(8)],
            night_start: [t(16), t(22)],
            night_setpoint: [12.0, 20.0],
        }
    }
}

impl DecisionBounds {
    pub fn validate(&self) -> Result<()> {
        let ok = |lo: f64, hi: f64| lo.is_finite() && hi.is_finite() && lo <= hi;
        if !ok(self.day_start[0].minutes() as f64, self.day_start[1].minutes() as f64)
            || !ok(self.night_start[0].minutes() as f64, self.night_start[1].minutes() as f64)
            || !ok(self.night_setpoint[0], self.night_setpoint[1])
        {
            return Err(Error::Config("decision bounds must satisfy lower <= upper".into()));
        }
        if self.day_start[0] >= self.night_start[1] {
            return Err(Error::Config(
                "decision bounds leave no day_start earlier than night_start".into(),
            ));
        }
        Ok(())
    }

    fn range(&self, v: Variable) -> (f64, f64) {
        match v {
            Variable::DayStart => (self.day_start[0].minutes() as f64, self.day_start[1].minutes() as f64),
            Variable::NightStart => (self.night_start[0].minutes() as f64, self.night_start[1].minutes() as f64),
            Variable::NightSetpoint => (self.night_setpoint[0], self.night_setpoint[1]),
        }
    }
}

/// The active variables with their box. Inactive ones keep fixed values.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionSpace {
    variables: Vec<Variable>,
    bounds: DecisionBounds,
    fixed: DecisionVector,
}

impl DecisionSpace {
    pub fn new(variables: Vec<Variable>, bounds: DecisionBounds, fixed: DecisionVector) -> Result<Self> {
        bounds.validate()?;
        if variables.is_empty() {
            return Err(Error::Config("at least one decision variable is required".into()));
        }
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(Error::Config(format!("decision variable {v:?} listed twice")));
            }
        }
        Ok(DecisionSpace {
            variables,
            bounds,
            fixed,
        })
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn dimension(&self) -> usize {
        self.variables.len()
    }

    pub fn bounds(&self) -> &DecisionBounds {
        &self.bounds
    }

    /// Maps a point of the unit box to a decision vector.
    pub fn decode(&self, unit: &[f64]) -> DecisionVector {
        let mut d = self.fixed;
        for (v, &u) in self.variables.iter().zip(unit) {
            let (lo, hi) = self.bounds.range(*v);
            let x = lo + u.clamp(0.0, 1.0) * (hi - lo);
            match v {
                Variable::DayStart => d.day_start = x,
                Variable::NightStart => d.night_start = x,
                Variable::NightSetpoint => d.night_setpoint = Some(x),
            }
        }
        d
    }

    pub fn encode(&self, d: &DecisionVector) -> Vec<f64> {
        self.variables
            .iter()
            .map(|v| {
                let (lo, hi) = self.bounds.range(*v);
                let x = match v {
                    Variable::DayStart => d.day_start,
                    Variable::NightStart => d.night_start,
                    Variable::NightSetpoint => d.night_setpoint.unwrap_or(self.fixed.night_setpoint.unwrap_or(lo)),
                };
                if hi > lo {
                    ((x - lo) / (hi - lo)).clamp(0.0, 1.0)
                } else {
                    0.0
                }
            })
            .collect()
    }

    /// Index of a variable within the unit vector, if active.
    pub fn position(&self, v: Variable) -> Option<usize> {
        self.variables.iter().position(|x| *x == v)
    }

    /// Day must start strictly before night on the simulation grid.
    pub fn is_ordered(d: &DecisionVector) -> bool {
        let snap = |m: f64| (m / 15.0).floor();
        snap(d.day_start) < snap(d.night_start)
    }
}
