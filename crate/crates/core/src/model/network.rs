//! The R6C2 network. Surface nodes are algebraic; indoor air and wall core
//! carry the dynamics, driven by thermostat demand.

use serde::{Deserialize, Serialize};

use super::{BuildingConfig, RcParameters};
use crate::integrate;

/// Differential states: indoor air `t_i` and wall core `t_m`, in °C.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalState {
    pub t_i: f64,
    pub t_m: f64,
}

impl ThermalState {
    pub fn new(t_i: f64, t_m: f64) -> Self {
        ThermalState { t_i, t_m }
    }

    pub fn is_finite(&self) -> bool {
        self.t_i.is_finite() && self.t_m.is_finite()
    }
}

/// Exogenous inputs held constant over one step.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StepInputs {
    /// External temperature, °C.
    pub t_e: f64,
    /// Solar irradiance on outdoor walls, W/m².
    pub solar: f64,
    /// Occupancy indicator in [0, 1].
    pub occupancy: f64,
    /// Ventilation indicator in [0, 1].
    pub ventilation: f64,
    /// Solar flux on indoor walls, W. Zero unless supplied explicitly.
    pub internal_solar: f64,
}

/// Outdoor (`t_h`) and indoor (`t_s`) wall surface temperatures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceTemps {
    pub t_h: f64,
    pub t_s: f64,
}

/// Solves the two surface-node balances for the given state.
///
/// `t_h (1/R_m + 1/R_e) = t_m/R_m + t_e/R_e + alpha·solar`
/// `t_s (1/R_i + 1/R_s) = t_i/R_i + t_m/R_s + a·g·occ + internal_solar`
pub fn algebraic_nodes(p: &RcParameters, state: &ThermalState, inputs: &StepInputs) -> SurfaceTemps {
    let t_h = (state.t_m / p.r_m + inputs.t_e / p.r_e + p.alpha * inputs.solar)
        / (1.0 / p.r_m + 1.0 / p.r_e);
    let t_s = (state.t_i / p.r_i
        + state.t_m / p.r_s
        + p.a * p.g * inputs.occupancy
        + inputs.internal_solar)
        / (1.0 / p.r_i + 1.0 / p.r_s);
    SurfaceTemps { t_h, t_s }
}

/// Heat flow into the air node from everything except the HVAC plant, W.
fn passive_air_gain(p: &RcParameters, state: &ThermalState, surf: &SurfaceTemps, inputs: &StepInputs) -> f64 {
    (surf.t_s - state.t_i) / p.r_i
        + inputs.ventilation * (inputs.t_e - state.t_i) / p.r_v
        + (inputs.t_e - state.t_i) / p.r_f
        + (1.0 - p.a) * p.g * inputs.occupancy
}

/// Plant power: `requested` would bring the air to the set-point within `dt`
/// seconds; `applied` is that request clamped to `[p_min, p_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerDemand {
    pub requested: f64,
    pub applied: f64,
}

pub fn thermostat_power(
    p: &RcParameters,
    config: &BuildingConfig,
    state: &ThermalState,
    inputs: &StepInputs,
    setpoint: f64,
    dt: f64,
) -> PowerDemand {
    let surf = algebraic_nodes(p, state, inputs);
    let requested = p.c_i * (setpoint - state.t_i) / dt - passive_air_gain(p, state, &surf, inputs);
    let applied = requested.min(config.p_max).max(config.p_min);
    PowerDemand { requested, applied }
}

/// Time derivatives `[dT_i/dt, dT_m/dt]` with plant power `power`.
pub fn derivatives(p: &RcParameters, state: &ThermalState, inputs: &StepInputs, power: f64) -> [f64; 2] {
    let surf = algebraic_nodes(p, state, inputs);
    let d_ti = (passive_air_gain(p, state, &surf, inputs) + power) / p.c_i;
    let d_tm = ((surf.t_h - state.t_m) / p.r_m + (surf.t_s - state.t_m) / p.r_s) / p.c_m;
    [d_ti, d_tm]
}

/// Advances the state by `dt` seconds with the thermostat power held constant.
/// Returns the next state and the applied power.
pub fn step(
    p: &RcParameters,
    config: &BuildingConfig,
    state: &ThermalState,
    inputs: &StepInputs,
    setpoint: f64,
    dt: f64,
) -> (ThermalState, f64) {
    let power = thermostat_power(p, config, state, inputs, setpoint, dt).applied;
    let f = |y: &[f64; 2]| derivatives(p, &ThermalState::new(y[0], y[1]), inputs, power);
    let y = integrate::rk4(&f, &[state.t_i, state.t_m], dt, config.substeps);
    (ThermalState::new(y[0], y[1]), power)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Mode, RcParameters};

    fn params() -> RcParameters {
        RcParameters {
            r_i: 6.7e-6,
            r_m: 5e-5,
            r_s: 1e-5,
            r_f: 5e-5,
            r_v: 6.7e-5,
            r_e: 1e-5,
            c_i: 2e8,
            c_m: 5e9,
            g: 1.5e5,
            alpha: 60.0,
            a: 0.4,
        }
    }

    fn config(p_min: f64, p_max: f64) -> BuildingConfig {
        BuildingConfig {
            mode: Mode::Heating,
            p_min,
            p_max,
            day_setpoint: 23.0,
            night_setpoint: 16.0,
            day_start: "06:00".parse().unwrap(),
            day_end: "21:00".parse().unwrap(),
            volume: 0.0,
            machine_efficiency: 1.0,
            lhv: 0.0,
            substeps: 1,
        }
    }

    fn residuals(p: &RcParameters, st: &ThermalState, inp: &StepInputs, s: &SurfaceTemps) -> (f64, f64) {
        let lhs_h = s.t_h * (p.r_m + p.r_e) / (p.r_m * p.r_e);
        let rhs_h = st.t_m / p.r_m + inp.t_e / p.r_e + p.alpha * inp.solar;
        let lhs_s = s.t_s * (p.r_i + p.r_s) / (p.r_i * p.r_s);
        let rhs_s = st.t_i / p.r_i + st.t_m / p.r_s + p.a * p.g * inp.occupancy;
        (
            (lhs_h - rhs_h).abs() / rhs_h.abs().max(lhs_h.abs()).max(1e-300),
            (lhs_s - rhs_s).abs() / rhs_s.abs().max(lhs_s.abs()).max(1e-300),
        )
    }

    #[test]
    fn surface_nodes_simple_cases() {
        let p = params();
        let st = ThermalState::new(20.0, 20.0);
        let inp = StepInputs {
            t_e: 20.0,
            ..Default::default()
        };
        let s = algebraic_nodes(&p, &st, &inp);
        assert!((s.t_h - 20.0).abs() < 1e-12);
        assert!((s.t_s - 20.0).abs() < 1e-12);

        let mut q = p;
        q.r_m = 1.0;
        q.r_e = 1.0;
        q.alpha = 0.0;
        let s = algebraic_nodes(&q, &ThermalState::new(0.0, 10.0), &StepInputs {
            t_e: 30.0,
            ..Default::default()
        });
        assert!((s.t_h - 20.0).abs() < 1e-12);
    }

    #[test]
    fn equilibrium_needs_no_power() {
        let p = params();
        let st = ThermalState::new(21.0, 21.0);
        let inp = StepInputs {
            t_e: 21.0,
            ..Default::default()
        };
        let d = thermostat_power(&p, &config(0.0, 1e6), &st, &inp, 21.0, 900.0);
        assert!(d.requested.abs() < 1e-6);
        assert_eq!(d.applied, d.requested.max(0.0));
    }

    #[test]
    fn one_node_demand_is_capacity_times_gap_over_dt() {
        let mut p = params();
        p.c_i = 3600.0;
        p.r_i = 1e300;
        p.r_f = 1e300;
        p.r_v = 1e300;
        p.g = 0.0;
        let st = ThermalState::new(20.0, 20.0);
        let inp = StepInputs {
            t_e: 20.0,
            ..Default::default()
        };
        let d = thermostat_power(&p, &config(0.0, 1e6), &st, &inp, 21.0, 900.0);
        assert!((d.requested - 4.0).abs() < 1e-12);
        assert_eq!(d.applied, d.requested);
    }

    #[test]
    fn demand_is_clamped() {
        let p = params();
        let st = ThermalState::new(10.0, 10.0);
        let inp = StepInputs {
            t_e: -5.0,
            ..Default::default()
        };
        let d = thermostat_power(&p, &config(0.0, 5e5), &st, &inp, 23.0, 900.0);
        assert!(d.requested > 5e5);
        assert_eq!(d.applied, 5e5);
        let d = thermostat_power(&p, &config(0.0, 5e5), &ThermalState::new(30.0, 30.0), &inp, 16.0, 900.0);
        assert!(d.requested < 0.0);
        assert_eq!(d.applied, 0.0);
    }

    #[test]
    fn fixed_point_without_sources() {
        let p = params();
        let st = ThermalState::new(20.0, 20.0);
        let inp = StepInputs {
            t_e: 20.0,
            ..Default::default()
        };
        let (next, power) = step(&p, &config(0.0, 1e6), &st, &inp, 20.0, 900.0);
        assert!(power.abs() < 1e-6);
        assert!((next.t_i - 20.0).abs() < 1e-9);
        assert!((next.t_m - 20.0).abs() < 1e-9);
    }

    /// Parameters that reduce the air node to `C_i dT_i/dt = (T_e - T_i)/R_f`.
    fn decay_params(tau_ratio: f64, dt: f64) -> RcParameters {
        let mut p = params();
        p.r_f = 1e-4;
        p.c_i = dt / (tau_ratio * p.r_f);
        p.r_s = 1e300;
        p.g = 0.0;
        p.r_v = 1e300;
        p
    }

    #[test]
    fn single_step_matches_exponential() {
        let dt = 900.0;
        for x in [0.1, 0.3, 0.6] {
            let p = decay_params(x, dt);
            let st = ThermalState::new(20.0, 20.0);
            let inp = StepInputs {
                t_e: 0.0,
                ..Default::default()
            };
            let (next, _) = step(&p, &config(0.0, 0.0), &st, &inp, 20.0, dt);
            let exact = 20.0 * (-x as f64).exp();
            let rel = ((next.t_i - exact) / 20.0).abs();
            assert!(rel < x.powi(5), "x={x}: rel error {rel}");
        }
    }

    #[test]
    fn substep_halving_is_fourth_order() {
        let dt = 900.0;
        let p = decay_params(0.8, dt);
        let st = ThermalState::new(20.0, 20.0);
        let inp = StepInputs {
            t_e: 0.0,
            ..Default::default()
        };
        let exact = 20.0 * (-0.8f64).exp();
        let err = |n: u32| {
            let mut c = config(0.0, 0.0);
            c.substeps = n;
            (step(&p, &c, &st, &inp, 20.0, dt).0.t_i - exact).abs()
        };
        for n in [1, 2, 4] {
            assert!(err(n) / err(2 * n) >= 16.0 * 0.9, "n={n}");
        }
    }

    #[test]
    fn occupancy_warms_free_floating_air() {
        let p = params();
        let st = ThermalState::new(20.0, 20.0);
        let inp = StepInputs {
            t_e: 20.0,
            occupancy: 1.0,
            ..Default::default()
        };
        let (next, power) = step(&p, &config(0.0, 0.0), &st, &inp, 20.0, 900.0);
        assert_eq!(power, 0.0);
        assert!(next.t_i > 20.0);
    }

    proptest::proptest! {
        #[test]
        fn surface_residuals_are_tiny(
            t_i in -10.0f64..40.0, t_m in -10.0f64..40.0, t_e in -20.0f64..40.0,
            solar in 0.0f64..900.0, occ in 0.0f64..=1.0,
            lr in proptest::collection::vec(-6.0f64..0.0, 4),
        ) {
            let mut p = params();
            p.r_i = 10f64.powf(lr[0]);
            p.r_m = 10f64.powf(lr[1]);
            p.r_s = 10f64.powf(lr[2]);
            p.r_e = 10f64.powf(lr[3]);
            let st = ThermalState::new(t_i, t_m);
            let inp = StepInputs { t_e, solar, occupancy: occ, ..Default::default() };
            let s = algebraic_nodes(&p, &st, &inp);
            let (rh, rs) = residuals(&p, &st, &inp, &s);
            proptest::prop_assert!(rh <= 1e-10 && rs <= 1e-10, "{} {}", rh, rs);
        }

        #[test]
        fn applied_power_always_within_limits(
            t_i in -10.0f64..40.0, t_e in -20.0f64..40.0, sp in 10.0f64..30.0,
            p_max in 0.0f64..2e6,
        ) {
            let cfg = config(0.0, p_max);
            let d = thermostat_power(&params(), &cfg, &ThermalState::new(t_i, t_i), &StepInputs { t_e, ..Default::default() }, sp, 900.0);
            proptest::prop_assert!(d.applied >= 0.0 && d.applied <= p_max);
            if d.requested >= 0.0 && d.requested <= p_max {
                proptest::prop_assert_eq!(d.applied, d.requested);
            }
        }
    }
}
