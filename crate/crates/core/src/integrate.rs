//! Fixed-step classical Runge–Kutta integration.

/// One classical fourth-order Runge–Kutta step of size `h` for the autonomous
/// system `y' = f(y)`.
pub fn rk4_step<const N: usize, F>(f: &F, y: &[f64; N], h: f64) -> [f64; N]
where
    F: Fn(&[f64; N]) -> [f64; N],
{
    let axpy = |base: &[f64; N], k: &[f64; N], s: f64| -> [f64; N] {
        std::array::from_fn(|i| base[i] + s * k[i])
    };
    let k1 = f(y);
    let k2 = f(&axpy(y, &k1, h / 2.0));
    let k3 = f(&axpy(y, &k2, h / 2.0));
    let k4 = f(&axpy(y, &k3, h));
    std::array::from_fn(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

/// Integrates over `span` using `substeps` equal RK4 steps.
pub fn rk4<const N: usize, F>(f: &F, y: &[f64; N], span: f64, substeps: u32) -> [f64; N]
where
    F: Fn(&[f64; N]) -> [f64; N],
{
    let n = substeps.max(1);
    let h = span / n as f64;
    (0..n).fold(*y, |acc, _| rk4_step(f, &acc, h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay_error_bounded_by_fifth_power() {
        for &x in &[0.05, 0.2, 0.5, 1.0] {
            let f = |y: &[f64; 1]| [-y[0]];
            let y1 = rk4_step(&f, &[1.0], x);
            let err = (y1[0] - (-x as f64).exp()).abs();
            assert!(err < x.powi(5), "x={x} err={err}");
        }
    }

    #[test]
    fn fourth_order_convergence() {
        let f = |y: &[f64; 1]| [-2.0 * y[0]];
        let exact = (-2.0f64).exp();
        let errs: Vec<f64> = [1, 2, 4, 8, 16]
            .iter()
            .map(|n| (rk4(&f, &[1.0], 1.0, *n)[0] - exact).abs())
            .collect();
        for w in errs.windows(2) {
            assert!(w[0] / w[1] > 14.0, "{errs:?}");
        }
    }

    #[test]
    fn exact_for_cubic_polynomials() {
        // y' = 3t^2 written autonomously with t as a state
        let f = |y: &[f64; 2]| [3.0 * y[1] * y[1], 1.0];
        let y = rk4_step(&f, &[0.0, 0.0], 2.0);
        assert!((y[0] - 8.0).abs() < 1e-12);
    }
}
