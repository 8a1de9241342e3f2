use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of calibrated model parameters.
pub const PARAMETER_COUNT: usize = 11;

/// Parameter names in vector order.
pub const PARAMETER_NAMES: [&str; PARAMETER_COUNT] =
    ["r_i", "r_m", "r_s", "r_f", "r_v", "r_e", "c_i", "c_m", "g", "alpha", "a"];

/// The calibratable parameters of the R6C2 network.
///
/// Resistances in K/W, capacitances in J/K, `g` in W. `alpha` multiplies the
/// solar irradiance (W/m²) and acts as an effective absorbing area. `a` is the
/// radiative share of internal gains.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RcParameters {
    /// Interior convective resistance.
    pub r_i: f64,
    /// Outdoor wall conductive resistance.
    pub r_m: f64,
    /// Indoor wall conductive resistance.
    pub r_s: f64,
    /// Infiltration and glazing.
    pub r_f: f64,
    /// Mechanical ventilation.
    pub r_v: f64,
    /// External convective resistance.
    pub r_e: f64,
    /// Indoor air capacitance.
    pub c_i: f64,
    /// Wall capacitance.
    pub c_m: f64,
    /// Maximum occupancy heat gain.
    pub g: f64,
    pub alpha: f64,
    pub a: f64,
}

impl RcParameters {
    pub fn to_array(&self) -> [f64; PARAMETER_COUNT] {
        [
            self.r_i, self.r_m, self.r_s, self.r_f, self.r_v, self.r_e, self.c_i, self.c_m, self.g,
            self.alpha, self.a,
        ]
    }

    pub fn from_array(v: [f64; PARAMETER_COUNT]) -> Self {
        RcParameters {
            r_i: v[0],
            r_m: v[1],
            r_s: v[2],
            r_f: v[3],
            r_v: v[4],
            r_e: v[5],
            c_i: v[6],
            c_m: v[7],
            g: v[8],
            alpha: v[9],
            a: v[10],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.to_array();
        for (i, name) in PARAMETER_NAMES.iter().enumerate() {
            if !v[i].is_finite() {
                return Err(Error::InvalidParameters(format!("{name} is not finite")));
            }
            if i < 8 && v[i] <= 0.0 {
                return Err(Error::InvalidParameters(format!(
                    "{name} must be strictly positive, got {}",
                    v[i]
                )));
            }
        }
        if self.g < 0.0 || self.alpha < 0.0 {
            return Err(Error::InvalidParameters("g and alpha must be non-negative".into()));
        }
        if !(0.0..=1.0).contains(&self.a) {
            return Err(Error::InvalidParameters(format!("a must lie in [0, 1], got {}", self.a)));
        }
        Ok(())
    }
}

/// Componentwise box for calibration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterBounds {
    pub lower: RcParameters,
    pub upper: RcParameters,
}

impl Default for ParameterBounds {
    fn default() -> Self {
        ParameterBounds {
            lower: RcParameters {
                r_i: 1e-6,
                r_m: 1e-6,
                r_s: 1e-6,
                r_f: 1e-6,
                r_v: 1e-6,
                r_e: 1e-6,
                c_i: 1e4,
                c_m: 1e4,
                g: 0.0,
                alpha: 0.0,
                a: 0.0,
            },
            upper: RcParameters {
                r_i: 1.0,
                r_m: 1.0,
                r_s: 1.0,
                r_f: 1.0,
                r_v: 1.0,
                r_e: 1.0,
                c_i: 1e10,
                c_m: 1e10,
                g: 1e5,
                alpha: 100.0,
                a: 1.0,
            },
        }
    }
}

impl ParameterBounds {
    pub fn validate(&self) -> Result<()> {
        self.lower.validate()?;
        self.upper.validate()?;
        let (lo, hi) = (self.lower.to_array(), self.upper.to_array());
        for i in 0..PARAMETER_COUNT {
            if lo[i] > hi[i] {
                return Err(Error::Config(format!(
                    "bounds for {}: lower {} exceeds upper {}",
                    PARAMETER_NAMES[i], lo[i], hi[i]
                )));
            }
        }
        Ok(())
    }

    pub fn contains(&self, p: &RcParameters) -> bool {
        let (lo, hi, v) = (self.lower.to_array(), self.upper.to_array(), p.to_array());
        (0..PARAMETER_COUNT).all(|i| lo[i] <= v[i] && v[i] <= hi[i])
    }

    /// Whether parameter `i` is searched on a logarithmic scale: strictly
    /// positive lower bound and more than a decade of range.
    pub fn is_log_scaled(&self, i: usize) -> bool {
        let (lo, hi) = (self.lower.to_array()[i], self.upper.to_array()[i]);
        lo > 0.0 && hi / lo > 10.0
    }

    /// Maps a unit-cube point to parameters (log-uniform where
    /// [`is_log_scaled`](Self::is_log_scaled), linear otherwise).
    pub fn decode(&self, unit: &[f64]) -> RcParameters {
        debug_assert_eq!(unit.len(), PARAMETER_COUNT);
        let (lo, hi) = (self.lower.to_array(), self.upper.to_array());
        let v = std::array::from_fn(|i| {
            let u = unit[i].clamp(0.0, 1.0);
            if u == 0.0 {
                lo[i]
            } else if u == 1.0 {
                hi[i]
            } else if self.is_log_scaled(i) {
                (lo[i].ln() + u * (hi[i].ln() - lo[i].ln())).exp().clamp(lo[i], hi[i])
            } else {
                lo[i] + u * (hi[i] - lo[i])
            }
        });
        RcParameters::from_array(v)
    }

    /// Inverse of [`decode`](Self::decode).
    pub fn encode(&self, p: &RcParameters) -> Vec<f64> {
        let (lo, hi, v) = (self.lower.to_array(), self.upper.to_array(), p.to_array());
        (0..PARAMETER_COUNT)
            .map(|i| {
                if hi[i] == lo[i] {
                    0.0
                } else if self.is_log_scaled(i) {
                    (v[i].ln() - lo[i].ln()) / (hi[i].ln() - lo[i].ln())
                } else {
                    (v[i] - lo[i]) / (hi[i] - lo[i])
                }
            })
            .collect()
    }
}
