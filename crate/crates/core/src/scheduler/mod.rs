//! Day-ahead set-point scheduling: minimise predicted energy subject to
//! indoor comfort, by multistart direct search.

mod decision;
mod lhs;
pub mod mads;
mod problem;

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clock::format_minutes;
use crate::error::{Error, Result};
use crate::format::write_json;
use crate::timeseries::GRID_MINUTES;
pub use decision::{DecisionBounds, DecisionSpace, DecisionVector, Variable};
pub use lhs::lhs_unit;
pub use mads::{mads_solve, LocalSolution, MadsSettings};
pub use problem::{watt_sum_to_kwh, Comfort, DayAheadProblem, Evaluation};

/// Multistart settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SearchSettings {
    pub multistart: usize,
    pub mads: MadsSettings,
}

impl Default for SearchSettings {
    fn default() -> Self {
        SearchSettings {
            multistart: 20,
            mads: MadsSettings::default(),
        }
    }
}

/// Latin hypercube starting points in decision space. A day start at or
/// after the night start is repaired by swapping the two time coordinates.
pub fn lhs_sample(space: &DecisionSpace, count: usize, seed: u64) -> Vec<DecisionVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    lhs_unit(space.dimension(), count, &mut rng)
        .into_iter()
        .map(|u| {
            let d = space.decode(&u);
            match (space.position(Variable::DayStart), space.position(Variable::NightStart)) {
                (Some(i), Some(j)) if d.day_start >= d.night_start => {
                    let mut u = u;
                    u.swap(i, j);
                    space.decode(&u)
                }
                _ => d,
            }
        })
        .collect()
}

/// One local search of a multistart run.
#[derive(Debug, Clone, PartialEq)]
pub struct StartTrace {
    pub start: DecisionVector,
    pub end: DecisionVector,
    pub value: Evaluation,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleSolution {
    pub theta: DecisionVector,
    /// Sum of |P| over the day, W.
    pub objective: f64,
    pub predicted_energy_kwh: f64,
    /// Largest comfort violation in the window, °C.
    pub constraint_value: f64,
    pub feasible: bool,
    pub evaluations_used: usize,
    pub seed: u64,
    pub starts: Vec<StartTrace>,
}

/// Runs a local search from every LHS start and keeps the best feasible end
/// point (lowest start index on ties). With no feasible end point the least
/// violating one is returned and `feasible` is false.
pub fn optimize_schedule(
    problem: &DayAheadProblem,
    space: &DecisionSpace,
    settings: &SearchSettings,
    seed: u64,
) -> Result<ScheduleSolution> {
    settings.mads.validate()?;
    if settings.multistart == 0 {
        return Err(Error::Config("multistart count must be at least 1".into()));
    }
    let starts = lhs_sample(space, settings.multistart, seed);
    let runs: Vec<LocalSolution> = starts
        .par_iter()
        .map(|s| mads_solve(|u: &[f64]| problem.evaluate(&space.decode(u)), &space.encode(s), &settings.mads))
        .collect::<Result<_>>()?;

    let best = (0..runs.len())
        .min_by(|&a, &b| {
            let (va, vb) = (&runs[a].value, &runs[b].value);
            match (va.feasible(), vb.feasible()) {
                (true, false) => std::cmp::Ordering::Less,
                (false, true) => std::cmp::Ordering::Greater,
                (true, true) => va.objective.total_cmp(&vb.objective),
                (false, false) => va.constraint.total_cmp(&vb.constraint),
            }
            .then(a.cmp(&b))
        })
        .expect("at least one start");
    let value = runs[best].value;
    let traces = starts
        .iter()
        .zip(&runs)
        .map(|(s, r)| StartTrace {
            start: *s,
            end: space.decode(&r.x),
            value: r.value,
            evaluations: r.evaluations,
        })
        .collect();
    Ok(ScheduleSolution {
        theta: space.decode(&runs[best].x),
        objective: value.objective,
        predicted_energy_kwh: watt_sum_to_kwh(value.objective),
        constraint_value: value.constraint,
        feasible: value.feasible(),
        evaluations_used: runs.iter().map(|r| r.evaluations).sum(),
        seed,
        starts: traces,
    })
}

/// The set-point file handed to the building management system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub day_start: String,
    pub night_start: String,
    pub day_setpoint: f64,
    pub night_setpoint: f64,
    pub day_start_minutes: f64,
    pub night_start_minutes: f64,
    pub predicted_energy_kwh: f64,
    pub constraint_value: f64,
    pub feasible: bool,
    pub evaluations_used: usize,
    pub seed: u64,
}

impl SolutionFile {
    pub fn new(solution: &ScheduleSolution, day_setpoint: f64, default_night_setpoint: f64) -> Self {
        let t = solution.theta;
        // Report the grid instants the model actually switched at.
        let snapped = |m: f64| (m / GRID_MINUTES as f64).floor() * GRID_MINUTES as f64;
        SolutionFile {
            day_start: format_minutes(snapped(t.day_start)),
            night_start: format_minutes(snapped(t.night_start)),
            day_setpoint,
            night_setpoint: t.night_setpoint.unwrap_or(default_night_setpoint),
            day_start_minutes: t.day_start,
            night_start_minutes: t.night_start,
            predicted_energy_kwh: solution.predicted_energy_kwh,
            constraint_value: solution.constraint_value,
            feasible: solution.feasible,
            evaluations_used: solution.evaluations_used,
            seed: solution.seed,
        }
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        write_json(path.as_ref(), self)
    }
}
