mod common;

use common::monomial_derivative;
use nalgebra::{DMatrix, DVector};
use psim::evolve::{kdv_run, kdv_step, KdvConfig, KdvOperators, KdvState};
use psim::{KdvParams, NodeFamily};

const L: f64 = 10.0;
const TAU: f64 = 0.01;

fn third() -> KdvParams {
    KdvParams::Third { kappa: 0.5, x0: 0.0 }
}

fn fifth() -> KdvParams {
    KdvParams::Fifth {
        gamma: 1.0,
        nu: 1.1,
        mu: 1.0,
        eta0: 0.0,
        x0: 0.0,
    }
}

/// `(order, point)` pairs of the homogeneous boundary conditions.
fn boundary(p: usize) -> Vec<(usize, f64)> {
    match p {
        3 => vec![(0, -1.0), (0, 1.0), (1, 1.0)],
        _ => vec![(0, -1.0), (0, 1.0), (1, -1.0), (1, 1.0), (2, 1.0)],
    }
}

/// `(order, coefficient)` of the linear operator on the reference interval.
fn linear(p: usize) -> Vec<(usize, f64)> {
    match p {
        3 => vec![(3, 1.0 / L.powi(3))],
        _ => vec![(3, 1.1 / L.powi(3)), (5, -1.0 / L.powi(5))],
    }
}

/// Three-level recursion on monomial coefficients: find `u^{k+1}` with the
/// boundary conditions and
/// `u^{k+1}(x_j) + τ Lu^{k+1}(x_j) = u^{k-1}(x_j) - τ Lu^{k-1}(x_j)`.
struct Oracle {
    x: Vec<f64>,
    interior: Vec<usize>,
    p: usize,
    dim: usize,
}

impl Oracle {
    fn new(p: usize, n: usize) -> Self {
        let nodes = NodeFamily::Cgl.build(n).unwrap();
        Oracle {
            x: nodes.nodes().to_vec(),
            interior: (1..n).collect(),
            p,
            dim: n + p - 1,
        }
    }

    fn op(&self, c: &DVector<f64>, x: f64, sign: f64) -> f64 {
        (0..self.dim)
            .map(|m| {
                let lin: f64 = linear(self.p).iter().map(|(o, k)| k * monomial_derivative(m, *o, x)).sum();
                c[m] * (monomial_derivative(m, 0, x) + sign * TAU * lin)
            })
            .sum()
    }

    fn boundary_rows(&self, a: &mut DMatrix<f64>) {
        for (r, (o, x)) in boundary(self.p).into_iter().enumerate() {
            for m in 0..self.dim {
                a[(self.interior.len() + r, m)] = monomial_derivative(m, o, x);
            }
        }
    }

    /// Polynomial whose p-th derivative at the interior nodes is `w`.
    fn from_data(&self, w: &DVector<f64>) -> DVector<f64> {
        let mut a = DMatrix::zeros(self.dim, self.dim);
        let mut rhs = DVector::zeros(self.dim);
        for (r, &i) in self.interior.iter().enumerate() {
            for m in 0..self.dim {
                a[(r, m)] = monomial_derivative(m, self.p, self.x[i]);
            }
            rhs[r] = w[r];
        }
        self.boundary_rows(&mut a);
        a.lu().solve(&rhs).unwrap()
    }

    fn step(&self, prev: &DVector<f64>) -> DVector<f64> {
        let mut a = DMatrix::zeros(self.dim, self.dim);
        let mut rhs = DVector::zeros(self.dim);
        for (r, &i) in self.interior.iter().enumerate() {
            let x = self.x[i];
            for m in 0..self.dim {
                let mut e = DVector::zeros(self.dim);
                e[m] = 1.0;
                a[(r, m)] = self.op(&e, x, 1.0);
            }
            rhs[r] = self.op(prev, x, -1.0);
        }
        self.boundary_rows(&mut a);
        a.lu().solve(&rhs).unwrap()
    }

    fn values(&self, c: &DVector<f64>) -> DVector<f64> {
        DVector::from_iterator(self.x.len(), self.x.iter().map(|&x| self.op(c, x, 0.0)))
    }
}

#[test]
fn linearized_steps_match_three_level_oracle() {
    let n = 16;
    for params in [third(), fifth()] {
        let p = params.order();
        let ops = KdvOperators::new(params, L, n, NodeFamily::Cgl, TAU, false).unwrap();
        let m = n - 1;
        let w0 = DVector::from_fn(m, |i, _| if i == 4 { 1.0 } else { 0.0 });
        let w1 = DVector::from_fn(m, |i, _| if i == 5 { 0.5 } else { 0.0 });
        let s1 = kdv_step(&KdvState::new(1, TAU, w0.clone(), w1.clone()), &ops).unwrap();
        let s2 = kdv_step(&s1, &ops).unwrap();

        let oracle = Oracle::new(p, n);
        let c0 = oracle.from_data(&w0);
        let c1 = oracle.from_data(&w1);
        let c2 = oracle.step(&c0);
        let c3 = oracle.step(&c1);
        let d2 = (ops.values(&s1.w_curr) - oracle.values(&c2)).amax();
        let d3 = (ops.values(&s2.w_curr) - oracle.values(&c3)).amax();
        assert!(d2 < 1e-9 && d3 < 1e-9, "order {p}: {d2:e} {d3:e}");
    }
}

/// The boundary conditions damp some modes, so the backward propagator
/// amplifies rounding there; the run is kept short on a grid where that
/// growth stays mild.
#[test]
fn linear_time_reversal() {
    for (params, n) in [(third(), 24), (fifth(), 32)] {
        let fwd = KdvOperators::new(params, 50.0, n, NodeFamily::Cgl, 0.001, false).unwrap();
        let back = KdvOperators::new(params, 50.0, n, NodeFamily::Cgl, -0.001, false).unwrap();
        let start = KdvState::new(1, 0.001, fwd.exact_data(0.0), fwd.exact_data(0.001));
        let mut s = start.clone();
        for _ in 0..20 {
            s = kdv_step(&s, &fwd).unwrap();
        }
        let mut r = s.reversed(0.001);
        for _ in 0..20 {
            r = kdv_step(&r, &back).unwrap();
        }
        // r now holds (level 1, level 0)
        let d = (fwd.values(&r.w_curr) - fwd.values(&start.w_prev)).amax();
        assert!(d < 1e-8, "order {}: {d:e}", params.order());
        assert!(r.t.abs() < 1e-12);
    }
}

#[test]
fn boundary_conditions_hold_every_step() {
    for params in [third(), fifth()] {
        let p = params.order();
        let ops = KdvOperators::new(params, L, 32, NodeFamily::Cgl, TAU, true).unwrap();
        let mut s = KdvState::new(1, TAU, ops.exact_data(0.0), ops.exact_data(TAU));
        for _ in 0..20 {
            s = kdv_step(&s, &ops).unwrap();
            let u = ops.psim().interpolant(&s.w_curr, &vec![0.0; p]).unwrap();
            for (o, x) in boundary(p) {
                let mut d = u.clone();
                for _ in 0..o {
                    d = d.derivative();
                }
                assert!(d.eval(x).abs() < 1e-10, "order {p}: derivative {o} at {x} is {}", d.eval(x));
            }
        }
    }
}

#[test]
fn fifth_order_error_drops_with_n() {
    let err = |n: usize| {
        let mut c = KdvConfig::fifth_defaults();
        c.n = n;
        c.tau = 0.01;
        kdv_run(&c).unwrap().final_error
    };
    let (e64, e128) = (err(64), err(128));
    assert!(e128 < e64 / 100.0, "{e64:e} -> {e128:e}");
}

#[test]
fn third_order_soliton_at_t1() {
    let mut c = KdvConfig::third_defaults();
    c.t_end = 1.0;
    let r = kdv_run(&c).unwrap();
    assert!(r.final_error <= 1e-5, "{:e}", r.final_error);
    assert!((r.final_t - 1.0).abs() < 1e-9);
    assert_eq!(r.errors.last().unwrap().0, r.final_t);
}

#[test]
fn zero_end_time_keeps_initial_snapshot_only() {
    let mut c = KdvConfig::fifth_defaults();
    c.t_end = 0.0;
    c.n = 32;
    let r = kdv_run(&c).unwrap();
    assert_eq!(r.snapshots.len(), 1);
    assert_eq!(r.snapshots[0].0, 0.0);
}
