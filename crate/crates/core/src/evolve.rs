//! Crank-Nicolson leap-frog time stepping for the third- and fifth-order
//! KdV equations on `(-L, L)`, with the odd-order Birkhoff basis in space.
//!
//! The unknowns are `w = ∂_x^p u` at the interior nodes of the reference
//! grid `x ∈ [-1, 1]` (`ξ = Lx`), so `u = B w` satisfies the homogeneous
//! boundary conditions exactly at every step. Per step
//!
//! `A₊ w^{k+1} = A₋ w^{k-1} - 2τ g (u ∂_ξ u)^k`,
//! `A± = B_in ± τ Σ_m c_m B_in^(m) / L^m`,
//!
//! with `B_in^(p) = I`. `A₊` is factorized once per run.

use nalgebra::{DMatrix, DVector};

use crate::birkhoff::{psim_odd_order, PsimMatrix};
use crate::diffmat;
use crate::error::{Error, Result};
use crate::gridgen::NodeFamily;
use crate::lacore::Factorized;

/// Soliton parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KdvParams {
    /// `u_t + u u_x + u_xxx = 0`, soliton `12κ² sech²(κ(x - 4κ²t - x₀))`.
    Third { kappa: f64, x0: f64 },
    /// `u_t + γ u u_x + ν u_xxx - μ u_xxxxx = 0`, sech⁴ soliton.
    Fifth {
        gamma: f64,
        nu: f64,
        mu: f64,
        eta0: f64,
        x0: f64,
    },
}

impl KdvParams {
    pub fn order(&self) -> usize {
        match self {
            KdvParams::Third { .. } => 3,
            KdvParams::Fifth { .. } => 5,
        }
    }

    /// `(amplitude, wavenumber, speed, shift, power, offset)` of
    /// `offset + A sech^m(k(x - ct - x₀))`.
    fn soliton(&self) -> (f64, f64, f64, f64, i32, f64) {
        match *self {
            KdvParams::Third { kappa, x0 } => (12.0 * kappa * kappa, kappa, 4.0 * kappa * kappa, x0, 2, 0.0),
            KdvParams::Fifth {
                gamma,
                nu,
                mu,
                eta0,
                x0,
            } => (
                105.0 * nu * nu / (169.0 * mu * gamma),
                (nu / (52.0 * mu)).sqrt(),
                gamma * eta0 + 36.0 * nu * nu / (169.0 * mu),
                x0,
                4,
                eta0,
            ),
        }
    }

    /// Coefficient of the nonlinear term `u u_x`.
    fn nonlinear(&self) -> f64 {
        match *self {
            KdvParams::Third { .. } => 1.0,
            KdvParams::Fifth { gamma, .. } => gamma,
        }
    }

    /// `(m, c_m)` of the linear part `Σ c_m ∂^m u`.
    fn linear_terms(&self) -> Vec<(usize, f64)> {
        match *self {
            KdvParams::Third { .. } => vec![(3, 1.0)],
            KdvParams::Fifth { nu, mu, .. } => vec![(3, nu), (5, -mu)],
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            KdvParams::Third { kappa, x0 } => {
                if !kappa.is_finite() || kappa == 0.0 || !x0.is_finite() {
                    return Err(Error::InvalidArgument("KdV3 needs finite nonzero kappa".into()));
                }
            }
            KdvParams::Fifth {
                gamma,
                nu,
                mu,
                eta0,
                x0,
            } => {
                if gamma == 0.0 || !(mu * nu > 0.0) {
                    return Err(Error::InvalidArgument(
                        "KdV5 soliton needs gamma != 0 and mu*nu > 0".into(),
                    ));
                }
                if eta0 != 0.0 {
                    return Err(Error::InvalidArgument(
                        "homogeneous boundary data needs eta0 = 0".into(),
                    ));
                }
                if !x0.is_finite() {
                    return Err(Error::InvalidArgument("x0 must be finite".into()));
                }
            }
        }
        Ok(())
    }
}

/// Exact soliton `u(x, t)`.
pub fn exact_soliton(params: &KdvParams, x: f64, t: f64) -> f64 {
    soliton_derivative(params, 0, x, t)
}

/// `∂_x^k u(x, t)` of the exact soliton, from
/// `d/dz [sech^m(z) P(tanh z)] = sech^m(z) (-m tanh(z) P + (1 - tanh²z) P')`.
pub fn soliton_derivative(params: &KdvParams, k: usize, x: f64, t: f64) -> f64 {
    let (amp, wave, speed, x0, power, offset) = params.soliton();
    let z = wave * (x - speed * t - x0);
    let s = 1.0 / z.cosh();
    let th = z.tanh();
    // P as coefficients in tanh
    let mut poly = vec![1.0];
    let m = power as f64;
    for _ in 0..k {
        let mut next = vec![0.0; poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            next[i + 1] -= m * c;
            if i > 0 {
                next[i - 1] += i as f64 * c;
                next[i + 1] -= i as f64 * c;
            }
        }
        poly = next;
    }
    let p = poly.iter().rev().fold(0.0, |acc, &c| acc * th + c);
    let base = amp * s.powi(power) * p * wave.powi(k as i32);
    if k == 0 {
        offset + base
    } else {
        base
    }
}

/// Run configuration.
#[derive(Debug, Clone)]
pub struct KdvConfig {
    pub params: KdvParams,
    /// Half-length of the domain.
    pub l: f64,
    pub n: usize,
    pub tau: f64,
    pub t_end: f64,
    pub family: NodeFamily,
    /// Drop `u u_x` (linear runs and checks).
    pub nonlinear: bool,
    /// Record the error every this many steps (the final step is always
    /// recorded).
    pub record_every: usize,
    /// Keep a snapshot every this many steps; 0 keeps only the first and
    /// last.
    pub snapshot_every: usize,
}

impl KdvConfig {
    /// κ = 0.3, x₀ = -20, L = 50, τ = 0.001, N = 160, CGL, up to t = 50.
    pub fn third_defaults() -> Self {
        KdvConfig {
            params: KdvParams::Third { kappa: 0.3, x0: -20.0 },
            l: 50.0,
            n: 160,
            tau: 0.001,
            t_end: 50.0,
            family: NodeFamily::Cgl,
            nonlinear: true,
            record_every: 1000,
            snapshot_every: 5000,
        }
    }

    /// μ = γ = 1, ν = 1.1, η₀ = 0, x₀ = -10, L = 50, τ = 0.001, CGL.
    pub fn fifth_defaults() -> Self {
        KdvConfig {
            params: KdvParams::Fifth {
                gamma: 1.0,
                nu: 1.1,
                mu: 1.0,
                eta0: 0.0,
                x0: -10.0,
            },
            l: 50.0,
            n: 256,
            tau: 0.001,
            t_end: 1.0,
            family: NodeFamily::Cgl,
            nonlinear: true,
            record_every: 100,
            snapshot_every: 0,
        }
    }

    pub fn order(&self) -> usize {
        self.params.order()
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if !(self.l > 0.0) || !self.l.is_finite() {
            return Err(Error::InvalidArgument(format!("L must be positive, got {}", self.l)));
        }
        if !(self.tau > 0.0) || !self.tau.is_finite() {
            return Err(Error::InvalidArgument(format!("tau must be positive, got {}", self.tau)));
        }
        if !(self.t_end >= 0.0) || !self.t_end.is_finite() {
            return Err(Error::InvalidArgument(format!("t_end must be >= 0, got {}", self.t_end)));
        }
        if !self.family.is_lobatto() {
            return Err(Error::Unsupported("KdV needs a Lobatto grid".into()));
        }
        if self.record_every == 0 {
            return Err(Error::InvalidArgument("record_every must be at least 1".into()));
        }
        Ok(())
    }
}

/// Prebuilt spatial operators and the factorized implicit matrix.
pub struct KdvOperators {
    params: KdvParams,
    l: f64,
    tau: f64,
    nonlinear: bool,
    /// Physical nodes `ξ_j = L x_j`.
    xi: Vec<f64>,
    /// Interior-column block of `B` over all rows: `u = bw · w`.
    bw: DMatrix<f64>,
    d1: DMatrix<f64>,
    a_minus: DMatrix<f64>,
    a_plus: Factorized,
    psim: PsimMatrix,
}

impl KdvOperators {
    /// Operators for a given step; `tau` may be negative (backward runs).
    pub fn new(params: KdvParams, l: f64, n: usize, family: NodeFamily, tau: f64, nonlinear: bool) -> Result<Self> {
        params.validate()?;
        if tau == 0.0 || !tau.is_finite() {
            return Err(Error::InvalidArgument("tau must be finite and nonzero".into()));
        }
        let nodes = family.build(n)?;
        let p = params.order();
        let psim = psim_odd_order(&nodes, p)?;
        let b_in = psim.interior_block(0);
        let m = b_in.nrows();
        let mut lin = DMatrix::zeros(m, m);
        for (order, c) in params.linear_terms() {
            let block = if order == p {
                DMatrix::identity(m, m)
            } else {
                psim.interior_block(order)
            };
            lin += block * (c / l.powi(order as i32));
        }
        let a_plus = Factorized::new(&b_in + &lin * tau)?;
        let a_minus = &b_in - &lin * tau;
        let cols = psim.interior_cols();
        let b = psim.b();
        let bw = b.columns(cols.start, cols.len()).into_owned();
        let d1 = diffmat::first_derivative_matrix(nodes.nodes())? / l;
        Ok(KdvOperators {
            params,
            l,
            tau,
            nonlinear,
            xi: nodes.nodes().iter().map(|x| l * x).collect(),
            bw,
            d1,
            a_minus,
            a_plus,
            psim,
        })
    }

    pub fn from_config(cfg: &KdvConfig) -> Result<Self> {
        cfg.validate()?;
        Self::new(cfg.params, cfg.l, cfg.n, cfg.family, cfg.tau, cfg.nonlinear)
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn nodes(&self) -> &[f64] {
        &self.xi
    }

    pub fn psim(&self) -> &PsimMatrix {
        &self.psim
    }

    /// `u` at every node from interior data `w`.
    pub fn values(&self, w: &DVector<f64>) -> DVector<f64> {
        &self.bw * w
    }

    /// Interior data `w = ∂_x^p u` of the exact soliton at time `t`.
    pub fn exact_data(&self, t: f64) -> DVector<f64> {
        let p = self.params.order();
        let scale = self.l.powi(p as i32);
        let n = self.xi.len();
        DVector::from_iterator(
            n - 2,
            self.xi[1..n - 1].iter().map(|&x| scale * soliton_derivative(&self.params, p, x, t)),
        )
    }

    /// Max error against the exact soliton over the interior nodes.
    pub fn interior_error(&self, w: &DVector<f64>, t: f64) -> f64 {
        let u = self.values(w);
        let n = self.xi.len();
        (1..n - 1)
            .map(|i| (u[i] - exact_soliton(&self.params, self.xi[i], t)).abs())
            .fold(0.0, f64::max)
    }
}

/// Two consecutive time levels.
#[derive(Debug, Clone)]
pub struct KdvState {
    pub step: usize,
    pub t: f64,
    pub w_prev: DVector<f64>,
    pub w_curr: DVector<f64>,
}

impl KdvState {
    /// Levels `t - τ` and `t`.
    pub fn new(step: usize, t: f64, w_prev: DVector<f64>, w_curr: DVector<f64>) -> Self {
        KdvState {
            step,
            t,
            w_prev,
            w_curr,
        }
    }

    /// The same two levels with their roles exchanged, for stepping with
    /// `-τ`; `t` moves to the new current level.
    pub fn reversed(&self, tau: f64) -> Self {
        KdvState {
            step: self.step,
            t: self.t - tau,
            w_prev: self.w_curr.clone(),
            w_curr: self.w_prev.clone(),
        }
    }
}

/// One leap-frog step.
pub fn kdv_step(state: &KdvState, ops: &KdvOperators) -> Result<KdvState> {
    let mut rhs = &ops.a_minus * &state.w_prev;
    if ops.nonlinear {
        let u = ops.values(&state.w_curr);
        let du = &ops.d1 * &u;
        let g = ops.params.nonlinear();
        for r in 0..rhs.len() {
            rhs[r] -= 2.0 * ops.tau * g * u[r + 1] * du[r + 1];
        }
    }
    let next = ops.a_plus.solve(&rhs)?;
    let t = state.t + ops.tau;
    let step = state.step + 1;
    if next.iter().any(|v| !v.is_finite()) {
        return Err(Error::Blowup { step, t });
    }
    Ok(KdvState {
        step,
        t,
        w_prev: state.w_curr.clone(),
        w_curr: next,
    })
}

/// Result of a run.
#[derive(Debug, Clone)]
pub struct KdvRun {
    /// Physical nodes `ξ_j`.
    pub nodes: Vec<f64>,
    /// `(t, max interior error)`.
    pub errors: Vec<(f64, f64)>,
    /// `(t, u at every node)`.
    pub snapshots: Vec<(f64, Vec<f64>)>,
    pub final_t: f64,
    pub final_error: f64,
}

/// Runs from the exact soliton (levels 0 and τ) to `t_end`.
pub fn kdv_run(cfg: &KdvConfig) -> Result<KdvRun> {
    let ops = KdvOperators::from_config(cfg)?;
    let steps = (cfg.t_end / cfg.tau).round() as usize;
    let w0 = ops.exact_data(0.0);
    let mut run = KdvRun {
        nodes: ops.nodes().to_vec(),
        errors: vec![(0.0, ops.interior_error(&w0, 0.0))],
        snapshots: vec![(0.0, ops.values(&w0).iter().copied().collect())],
        final_t: 0.0,
        final_error: 0.0,
    };
    run.final_error = run.errors[0].1;
    if steps == 0 {
        return Ok(run);
    }
    let w1 = ops.exact_data(cfg.tau);
    let mut state = KdvState::new(1, cfg.tau, w0, w1);
    let peak = exact_soliton(&cfg.params, cfg.params.soliton().3, 0.0).abs().max(1.0);
    let record = |state: &KdvState, run: &mut KdvRun, last: bool| {
        if state.step % cfg.record_every == 0 || last {
            run.errors.push((state.t, ops.interior_error(&state.w_curr, state.t)));
        }
        if last || (cfg.snapshot_every > 0 && state.step % cfg.snapshot_every == 0) {
            run.snapshots.push((state.t, ops.values(&state.w_curr).iter().copied().collect()));
        }
    };
    record(&state, &mut run, steps == 1);
    while state.step < steps {
        state = kdv_step(&state, &ops)?;
        let umax = ops.values(&state.w_curr).amax();
        if umax > 1e6 * peak {
            return Err(Error::Blowup {
                step: state.step,
                t: state.t,
            });
        }
        record(&state, &mut run, state.step == steps);
    }
    run.final_t = state.t;
    run.final_error = ops.interior_error(&state.w_curr, state.t);
    Ok(run)
}
