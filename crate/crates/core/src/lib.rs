//! Grey-box building thermal modelling with calibration and day-ahead
//! set-point scheduling.

pub mod calibration;
pub mod cli;
pub mod clock;
pub mod error;
pub mod evaluation;
pub mod format;
pub mod integrate;
pub mod model;
pub mod scheduler;
pub mod settings;
pub mod synthetic;
pub mod timeseries;

pub use error::{Error, Result};
