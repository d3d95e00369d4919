//! Quadrature reference for the oscillatory initial-value problem
//! `u' + x³u = 20 sin(500x²)`, `u(-1) = 0`, whose solution is
//! `u(x) = 20 e^{-x⁴/4} ∫_{-1}^x e^{t⁴/4} sin(500t²) dt`.

use quadrature::double_exponential;

/// Panels wider than this are split before integrating.
const MAX_PANEL: f64 = 1.0 / 64.0;
const TARGET: f64 = 1e-15;

fn integrand(t: f64) -> f64 {
    (t.powi(4) / 4.0).exp() * (500.0 * t * t).sin()
}

fn integrate(a: f64, b: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let panels = ((b - a) / MAX_PANEL).ceil().max(1.0) as usize;
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|k| {
            let lo = a + k as f64 * h;
            let hi = if k + 1 == panels { b } else { lo + h };
            double_exponential::integrate(integrand, lo, hi, TARGET).integral
        })
        .sum()
}

/// Exact solution at one point.
pub fn oscillatory_solution(x: f64) -> f64 {
    20.0 * (-x.powi(4) / 4.0).exp() * integrate(-1.0, x)
}

/// Exact solution at many points, accumulating the integral between
/// consecutive sorted abscissae.
pub fn oscillatory_reference(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut out = vec![0.0; xs.len()];
    let mut acc = 0.0;
    let mut prev = -1.0;
    for i in order {
        let x = xs[i];
        acc += integrate(prev, x);
        prev = prev.max(x);
        out[i] = 20.0 * (-x.powi(4) / 4.0).exp() * acc;
    }
    out
}
