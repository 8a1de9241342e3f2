//! Mesh adaptive direct search on the unit box with coordinate polling.
//!
//! Infeasible points are discarded by the extreme barrier once a feasible
//! incumbent exists. Before that, the poll minimises the constraint
//! violation, so an infeasible start can still reach the feasible region.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::problem::Evaluation;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MadsSettings {
    /// Starting mesh size as a fraction of each box side.
    pub initial_mesh: f64,
    /// Stop after an unsuccessful poll at a mesh smaller than this.
    pub min_mesh: f64,
    /// Evaluations per run, not counting the start point.
    pub max_evaluations: usize,
}

impl Default for MadsSettings {
    fn default() -> Self {
        MadsSettings {
            initial_mesh: 0.25,
            min_mesh: 1e-3,
            max_evaluations: 500,
        }
    }
}

impl MadsSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.min_mesh > 0.0 && self.initial_mesh > 0.0 && self.initial_mesh <= 1.0) {
            return Err(Error::Config(
                "mesh sizes must be positive with initial_mesh <= 1".into(),
            ));
        }
        if self.max_evaluations == 0 {
            return Err(Error::Config("max_evaluations must be at least 1".into()));
        }
        Ok(())
    }
}

/// Result of one local search.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalSolution {
    pub x: Vec<f64>,
    pub value: Evaluation,
    /// Simulations run, including the start point.
    pub evaluations: usize,
    /// Mesh size at each iteration, starting value first.
    pub mesh_history: Vec<f64>,
}

impl LocalSolution {
    pub fn feasible(&self) -> bool {
        self.value.feasible()
    }
}

fn improves(candidate: &Evaluation, incumbent: &Evaluation) -> bool {
    match (candidate.feasible(), incumbent.feasible()) {
        (true, true) => candidate.objective < incumbent.objective,
        (true, false) => true,
        (false, true) => false,
        (false, false) => candidate.constraint < incumbent.constraint,
    }
}

/// Minimises over `[0, 1]^n` from `start`. Poll points are clipped to the
/// box; repeated points are answered from a cache.
pub fn mads_solve<F>(mut evaluate: F, start: &[f64], settings: &MadsSettings) -> Result<LocalSolution>
where
    F: FnMut(&[f64]) -> Evaluation,
{
    settings.validate()?;
    if start.is_empty() || start.iter().any(|u| !(0.0..=1.0).contains(u)) {
        return Err(Error::Config("MADS start must be a non-empty point of the unit box".into()));
    }
    let key = |x: &[f64]| x.iter().map(|v| v.to_bits()).collect::<Vec<u64>>();
    let mut cache: HashMap<Vec<u64>, Evaluation> = HashMap::new();

    let mut x = start.to_vec();
    let mut fx = evaluate(&x);
    cache.insert(key(&x), fx);
    let mut used = 0usize;
    let mut mesh = settings.initial_mesh;
    let mut history = vec![mesh];

    // The run ends when a poll at a mesh finer than `min_mesh` fails.
    'search: loop {
        let mut moved = false;
        for j in 0..x.len() {
            for sign in [1.0, -1.0] {
                let mut y = x.clone();
                y[j] = (y[j] + sign * mesh).clamp(0.0, 1.0);
                if y[j] == x[j] {
                    continue;
                }
                let k = key(&y);
                let fy = match cache.get(&k) {
                    Some(v) => *v,
                    None => {
                        if used >= settings.max_evaluations {
                            break 'search;
                        }
                        used += 1;
                        let v = evaluate(&y);
                        cache.insert(k, v);
                        v
                    }
                };
                if improves(&fy, &fx) {
                    x = y;
                    fx = fy;
                    moved = true;
                    break;
                }
            }
            if moved {
                break;
            }
        }
        if moved {
            mesh = (mesh * 2.0).min(1.0);
        } else if mesh < settings.min_mesh {
            break;
        } else {
            mesh *= 0.5;
        }
        history.push(mesh);
    }
    Ok(LocalSolution {
        x,
        value: fx,
        evaluations: used + 1,
        mesh_history: history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unconstrained(f: impl Fn(&[f64]) -> f64) -> impl FnMut(&[f64]) -> Evaluation {
        move |x| Evaluation {
            objective: f(x),
            constraint: 0.0,
        }
    }

    #[test]
    fn quadratic_minimum() {
        let s = mads_solve(unconstrained(|x| (x[0] - 0.3).powi(2)), &[0.9], &MadsSettings::default()).unwrap();
        assert!((s.x[0] - 0.3).abs() < 1e-3, "{:?}", s.x);
        assert!(s.evaluations <= 501);
    }

    #[test]
    fn constrained_minimum_on_the_boundary() {
        let eval = |x: &[f64]| Evaluation {
            objective: (x[0] - 0.3).powi(2),
            constraint: 0.5 - x[0],
        };
        let s = mads_solve(eval, &[0.9], &MadsSettings::default()).unwrap();
        assert!(s.feasible());
        assert!((s.x[0] - 0.5).abs() < 1e-3, "{:?}", s.x);
    }

    #[test]
    fn infeasible_start_recovers_through_violation() {
        let eval = |x: &[f64]| Evaluation {
            objective: x[0],
            constraint: 0.6 - x[0],
        };
        let s = mads_solve(eval, &[0.0], &MadsSettings::default()).unwrap();
        assert!(s.feasible());
        assert!((s.x[0] - 0.6).abs() < 1e-3);
    }

    #[test]
    fn nowhere_feasible_is_reported() {
        let eval = |_: &[f64]| Evaluation {
            objective: 1.0,
            constraint: 1.0,
        };
        let s = mads_solve(eval, &[0.5, 0.5], &MadsSettings::default()).unwrap();
        assert!(!s.feasible());
        assert_eq!(s.x, vec![0.5, 0.5]);
    }

    #[test]
    fn budget_is_respected() {
        let mut calls = 0usize;
        let settings = MadsSettings {
            max_evaluations: 7,
            min_mesh: 1e-12,
            ..Default::default()
        };
        let s = mads_solve(
            |x: &[f64]| {
                calls += 1;
                Evaluation {
                    objective: (x[0] - 0.123).powi(2) + (x[1] - 0.77).powi(2),
                    constraint: 0.0,
                }
            },
            &[0.5, 0.5],
            &settings,
        )
        .unwrap();
        assert_eq!(calls, 8);
        assert_eq!(s.evaluations, 8);
    }

    #[test]
    fn mesh_shrinks_below_threshold() {
        let s = mads_solve(unconstrained(|x| (x[0] - 0.4).abs() + (x[1] - 0.1).abs()), &[0.0, 1.0], &MadsSettings::default())
            .unwrap();
        assert!(s.mesh_history.iter().all(|m| *m <= 1.0));
        assert!(*s.mesh_history.last().unwrap() < 1e-3);
    }
}
