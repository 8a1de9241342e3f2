use std::path::Path;

use super::network::{self, StepInputs, ThermalState};
use super::{BuildingConfig, RcParameters, SetpointSchedule};
use crate::error::{Error, Result};
use crate::format::{csv_writer, fmt_sig};
use crate::scheduler::DecisionVector;
use crate::timeseries::{InputBundle, ModelInputs, TimeSeries, Unit, GRID_MINUTES, TIMESTAMP_FORMAT};

/// Grid step in seconds.
pub const GRID_SECONDS: f64 = (GRID_MINUTES * 60) as f64;

/// Forecast trajectories on the input grid. `indoor_temp[k]` is the state at
/// `t_k`; `power[k]` is held over `[t_k, t_k+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    /// Signed watts: heating positive, cooling negative.
    pub power: TimeSeries,
    pub indoor_temp: TimeSeries,
    pub setpoint: TimeSeries,
    /// Outdoor wall surface `T_h`.
    pub surface_outdoor: TimeSeries,
    /// Indoor wall surface `T_s`.
    pub surface_indoor: TimeSeries,
    pub state_trace: Vec<ThermalState>,
    /// State at the end of the last step.
    pub final_state: ThermalState,
}

impl SimulationResult {
    pub fn len(&self) -> usize {
        self.power.len()
    }

    pub fn is_empty(&self) -> bool {
        self.power.is_empty()
    }

    /// Thermal energy over the run in kWh, counting magnitudes.
    pub fn energy_kwh(&self) -> f64 {
        self.power.values().iter().map(|p| p.abs()).sum::<f64>() * GRID_SECONDS / 3.6e6
    }

    /// Writes `timestamp, power_kW, T_i, T_h, T_s, T_m, setpoint`. Power is
    /// shown as a magnitude.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = csv_writer(path.as_ref())?;
        w.write_record(["timestamp", "power_kW", "T_i", "T_h", "T_s", "T_m", "setpoint"])?;
        for k in 0..self.len() {
            w.write_record([
                self.power.timestamp(k).format(TIMESTAMP_FORMAT).to_string(),
                fmt_sig(self.power.values()[k].abs() / 1000.0),
                fmt_sig(self.indoor_temp.values()[k]),
                fmt_sig(self.surface_outdoor.values()[k]),
                fmt_sig(self.surface_indoor.values()[k]),
                fmt_sig(self.state_trace[k].t_m),
                fmt_sig(self.setpoint.values()[k]),
            ])?;
        }
        w.flush().map_err(|e| Error::io(path.as_ref(), e))
    }
}

/// Simulates the building over `inputs` with the config program, optionally
/// overridden by schedule decisions.
pub fn simulate(
    params: &RcParameters,
    config: &BuildingConfig,
    inputs: &ModelInputs,
    initial: ThermalState,
    decision: Option<&DecisionVector>,
) -> Result<SimulationResult> {
    let program = match decision {
        Some(d) => SetpointSchedule::with_decision(config, d),
        None => SetpointSchedule::from_config(config),
    };
    simulate_detailed(params, config, inputs, initial, &program, None)
}

/// Full-control variant: explicit set-point program and an optional indoor
/// solar flux series (W) for the indoor wall node.
pub fn simulate_detailed(
    params: &RcParameters,
    config: &BuildingConfig,
    inputs: &ModelInputs,
    initial: ThermalState,
    program: &SetpointSchedule,
    internal_solar: Option<&[f64]>,
) -> Result<SimulationResult> {
    if !initial.is_finite() {
        return Err(Error::DegenerateInput("initial state is not finite".into()));
    }
    if let Some(phi) = internal_solar {
        if phi.len() != inputs.len() {
            return Err(Error::DegenerateInput(format!(
                "internal solar series has {} samples, inputs have {}",
                phi.len(),
                inputs.len()
            )));
        }
    }
    let n = inputs.len();
    let (t_e, solar) = (inputs.external_temp().values(), inputs.solar_irradiance().values());
    let mut power = Vec::with_capacity(n);
    let mut setpoint = Vec::with_capacity(n);
    let mut t_h = Vec::with_capacity(n);
    let mut t_s = Vec::with_capacity(n);
    let mut trace = Vec::with_capacity(n);
    let mut state = initial;
    for k in 0..n {
        let step_inputs = StepInputs {
            t_e: t_e[k],
            solar: solar[k],
            occupancy: inputs.occupancy().value(k),
            ventilation: inputs.ventilation().value(k),
            internal_solar: internal_solar.map_or(0.0, |phi| phi[k]),
        };
        let sp = program.at(inputs.timestamp(k));
        let surf = network::algebraic_nodes(params, &state, &step_inputs);
        let (next, p) = network::step(params, config, &state, &step_inputs, sp, GRID_SECONDS);
        if !next.is_finite() || !p.is_finite() {
            return Err(Error::NumericalBlowup {
                step: k,
                params: format!("{params:?}"),
            });
        }
        trace.push(state);
        t_h.push(surf.t_h);
        t_s.push(surf.t_s);
        power.push(p);
        setpoint.push(sp);
        state = next;
    }
    let origin = inputs.origin();
    let series = |v: Vec<f64>, unit| TimeSeries::on_grid(origin, v, unit);
    Ok(SimulationResult {
        power: series(power, Unit::Watt)?,
        indoor_temp: series(trace.iter().map(|s| s.t_i).collect(), Unit::Celsius)?,
        setpoint: series(setpoint, Unit::Celsius)?,
        surface_outdoor: series(t_h, Unit::Celsius)?,
        surface_indoor: series(t_s, Unit::Celsius)?,
        state_trace: trace,
        final_state: state,
    })
}

/// Starting state for a history: the first measured indoor temperature, with
/// the wall core halfway between indoor and outdoor.
pub fn initial_state_from_history(bundle: &InputBundle) -> ThermalState {
    let t_i = bundle.indoor_temp().values()[0];
    let t_e = bundle.external_temp().values()[0];
    ThermalState::new(t_i, (t_i + t_e) / 2.0)
}

/// Starting state at the end of `history`: replays the model to carry the
/// wall-core temperature forward, and resets the air node to the last
/// measured indoor temperature.
pub fn state_after_history(
    params: &RcParameters,
    config: &BuildingConfig,
    history: &InputBundle,
) -> Result<ThermalState> {
    let replay = simulate(params, config, history.inputs(), initial_state_from_history(history), None)?;
    let last = *history.indoor_temp().values().last().expect("bundle is non-empty");
    Ok(ThermalState::new(last, replay.final_state.t_m))
}
