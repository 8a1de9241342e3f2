//! Fitting the network parameters to measured history: biobjective search,
//! compromise selection and the accuracy gate.

pub mod metrics;
pub mod nsga2;
pub mod topsis;

use std::path::Path;

use chrono::NaiveDateTime;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::{csv_writer, fmt_sig, write_json};
use crate::model::{
    initial_state_from_history, simulate, BuildingConfig, ParameterBounds, RcParameters, PARAMETER_COUNT,
    PARAMETER_NAMES,
};
use crate::timeseries::{InputBundle, STEPS_PER_DAY};
pub use metrics::{f1_temperature_mape, f2_power_median_abs, median};
pub use nsga2::{nsga2, Nsga2Settings, PENALTY};
pub use topsis::topsis_select;

/// Temperature MAPE (%) and median absolute power deviation (W).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveScores {
    pub f1: f64,
    pub f2: f64,
}

impl ObjectiveScores {
    pub const PENALISED: ObjectiveScores = ObjectiveScores {
        f1: PENALTY,
        f2: PENALTY,
    };

    pub fn as_array(&self) -> [f64; 2] {
        [self.f1, self.f2]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParetoCandidate {
    pub params: RcParameters,
    pub scores: ObjectiveScores,
}

/// Mutually non-dominated candidates, ordered by increasing `f1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParetoFront {
    candidates: Vec<ParetoCandidate>,
}

impl ParetoFront {
    /// Keeps the non-dominated subset of `candidates`.
    pub fn from_candidates(candidates: Vec<ParetoCandidate>) -> Self {
        let objs: Vec<Vec<f64>> = candidates.iter().map(|c| c.scores.as_array().to_vec()).collect();
        let mut kept: Vec<ParetoCandidate> = nsga2::fast_nondominated_sort(&objs)
            .first()
            .map(|f| f.iter().map(|&i| candidates[i]).collect())
            .unwrap_or_default();
        kept.sort_by(|a, b| {
            a.scores
                .f1
                .total_cmp(&b.scores.f1)
                .then(a.scores.f2.total_cmp(&b.scores.f2))
        });
        ParetoFront { candidates: kept }
    }

    pub fn candidates(&self) -> &[ParetoCandidate] {
        &self.candidates
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    /// O(n²) check that no member dominates another.
    pub fn is_mutually_nondominated(&self) -> bool {
        self.candidates.iter().all(|a| {
            self.candidates
                .iter()
                .all(|b| !nsga2::dominates(&a.scores.as_array(), &b.scores.as_array()))
        })
    }

    /// Best compromise by closeness to the ideal point.
    pub fn select(&self) -> Option<&ParetoCandidate> {
        let pts: Vec<[f64; 2]> = self.candidates.iter().map(|c| c.scores.as_array()).collect();
        topsis_select(&pts).map(|i| &self.candidates[i])
    }

    /// Writes `f1_percent, f2_watts` and one column per parameter.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = csv_writer(path.as_ref())?;
        let mut header = vec!["f1_percent", "f2_watts"];
        header.extend(PARAMETER_NAMES);
        w.write_record(&header)?;
        for c in &self.candidates {
            let mut row = vec![fmt_sig(c.scores.f1), fmt_sig(c.scores.f2)];
            row.extend(c.params.to_array().iter().map(|v| fmt_sig(*v)));
            w.write_record(&row)?;
        }
        w.flush().map_err(|e| Error::io(path.as_ref(), e))
    }
}

/// Gate limits: median |ΔT| in °C, temperature MAPE in %, relative power error in %.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AccuracyThresholds {
    pub median_temp_error: f64,
    pub relative_temp_error: f64,
    pub relative_power_error: f64,
}

impl Default for AccuracyThresholds {
    fn default() -> Self {
        AccuracyThresholds {
            median_temp_error: 1.0,
            relative_temp_error: 5.0,
            relative_power_error: 12.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AccuracyReport {
    /// Median |forecast - measured| indoor temperature, °C.
    pub median_abs_temp_error: f64,
    /// Temperature MAPE, %.
    pub relative_temp_error: f64,
    /// Median absolute power deviation over the measured power range, %.
    pub relative_power_error: f64,
    /// Median absolute power deviation, W.
    pub power_deviation: f64,
    /// Measured `max - min` power, W.
    pub power_range: f64,
    pub pass: bool,
    pub thresholds: AccuracyThresholds,
}

impl AccuracyReport {
    /// Verdict from already computed statistics. Every limit is strict.
    pub fn assess(
        median_abs_temp_error: f64,
        relative_temp_error: f64,
        power_deviation: f64,
        power_range: f64,
        thresholds: AccuracyThresholds,
    ) -> Self {
        let relative_power_error = 100.0 * power_deviation / power_range;
        let pass = median_abs_temp_error < thresholds.median_temp_error
            && relative_temp_error < thresholds.relative_temp_error
            && relative_power_error < thresholds.relative_power_error;
        AccuracyReport {
            median_abs_temp_error,
            relative_temp_error,
            relative_power_error,
            power_deviation,
            power_range,
            pass,
            thresholds,
        }
    }
}

/// Simulates `params` over the history and scores the forecast. A failed
/// simulation yields [`ObjectiveScores::PENALISED`].
pub fn evaluate_candidate(params: &RcParameters, config: &BuildingConfig, bundle: &InputBundle) -> ObjectiveScores {
    let Ok(run) = simulate(params, config, bundle.inputs(), initial_state_from_history(bundle), None) else {
        return ObjectiveScores::PENALISED;
    };
    let f1 = f1_temperature_mape(run.indoor_temp.values(), bundle.indoor_temp().values());
    let f2 = f2_power_median_abs(run.power.values(), bundle.power().values());
    match (f1, f2) {
        (Ok(f1), Ok(f2)) if f1.is_finite() && f2.is_finite() => ObjectiveScores { f1, f2 },
        _ => ObjectiveScores::PENALISED,
    }
}

/// Re-simulates `params` over the history and applies the three accuracy limits.
pub fn accuracy_gate(
    params: &RcParameters,
    config: &BuildingConfig,
    bundle: &InputBundle,
    thresholds: AccuracyThresholds,
) -> Result<AccuracyReport> {
    let range = metrics::value_range(bundle.power().values(), "measured power")?;
    let run = simulate(params, config, bundle.inputs(), initial_state_from_history(bundle), None)?;
    let (forecast_t, actual_t) = (run.indoor_temp.values(), bundle.indoor_temp().values());
    let median_dt = metrics::median_abs_deviation(forecast_t, actual_t)?;
    let f1 = f1_temperature_mape(forecast_t, actual_t)?;
    let f2 = f2_power_median_abs(run.power.values(), bundle.power().values())?;
    Ok(AccuracyReport::assess(median_dt, f1, f2, range, thresholds))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CalibrationSettings {
    /// Length of the fitted history, counted back from its end.
    pub window_days: u32,
    pub algorithm: Nsga2Settings,
    pub thresholds: AccuracyThresholds,
}

impl Default for CalibrationSettings {
    fn default() -> Self {
        CalibrationSettings {
            window_days: 28,
            algorithm: Nsga2Settings::default(),
            thresholds: AccuracyThresholds::default(),
        }
    }
}

/// Everything a calibration run produces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub seed: u64,
    pub window_start: NaiveDateTime,
    pub window_steps: usize,
    pub settings: CalibrationSettings,
    pub bounds: ParameterBounds,
    pub front: ParetoFront,
    pub selected: ParetoCandidate,
    pub accuracy: AccuracyReport,
}

impl Calibration {
    /// Full report as JSON (values at full precision).
    pub fn write_report(&self, path: impl AsRef<Path>) -> Result<()> {
        write_json(path.as_ref(), self)
    }
}

/// Fits the parameters to the last `settings.window_days` days of `bundle`.
pub fn calibrate(
    bundle: &InputBundle,
    config: &BuildingConfig,
    bounds: &ParameterBounds,
    settings: &CalibrationSettings,
    seed: u64,
) -> Result<Calibration> {
    config.validate()?;
    bounds.validate()?;
    settings.algorithm.validate()?;
    if settings.window_days == 0 {
        return Err(Error::Config("calibration window must be at least one day".into()));
    }
    let history = bundle.tail(settings.window_days as usize * STEPS_PER_DAY)?;
    // Data problems would otherwise show up as uniformly penalised candidates.
    f1_temperature_mape(history.indoor_temp().values(), history.indoor_temp().values())?;
    metrics::value_range(history.power().values(), "measured power")?;

    let evaluate = |genes: &[f64]| evaluate_candidate(&bounds.decode(genes), config, &history).as_array().to_vec();
    let run = nsga2(evaluate, &[0.0; PARAMETER_COUNT], &[1.0; PARAMETER_COUNT], &settings.algorithm, seed)?;
    let candidates = run
        .front
        .iter()
        .map(|ind| ParetoCandidate {
            params: bounds.decode(&ind.genes),
            scores: ObjectiveScores {
                f1: ind.objectives[0],
                f2: ind.objectives[1],
            },
        })
        .collect();
    let front = ParetoFront::from_candidates(candidates);
    let selected = *front.select().expect("a non-empty population has a non-empty front");
    let accuracy = accuracy_gate(&selected.params, config, &history, settings.thresholds)?;
    Ok(Calibration {
        seed,
        window_start: history.origin(),
        window_steps: history.len(),
        settings: *settings,
        bounds: *bounds,
        front,
        selected,
        accuracy,
    })
}

/// Stores parameters as JSON.
pub fn write_parameters(path: impl AsRef<Path>, params: &RcParameters) -> Result<()> {
    write_json(path.as_ref(), params)
}

pub fn read_parameters(path: impl AsRef<Path>) -> Result<RcParameters> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let params: RcParameters = serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    params.validate()?;
    Ok(params)
}
