//! The R6C2 grey-box thermal network and its forward simulation.

mod building;
pub mod network;
mod params;
mod simulate;

pub use building::{setpoint_at, BuildingConfig, Mode, SetpointSchedule};
pub use network::{PowerDemand, StepInputs, SurfaceTemps, ThermalState};
pub use params::{ParameterBounds, RcParameters, PARAMETER_COUNT, PARAMETER_NAMES};
pub use simulate::{
    initial_state_from_history, simulate, simulate_detailed, state_after_history, SimulationResult,
    GRID_SECONDS,
};
