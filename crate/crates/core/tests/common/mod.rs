//! Monomial interpolation-solve oracle for Birkhoff bases.
//!
//! Each basis column is the polynomial `Σ c_m x^m` fixed by the same
//! conditions the library imposes: the p-th derivative at the interior
//! collocation nodes and the boundary functionals. The monomial system is
//! solved directly, so it shares nothing with the coefficient-space build.

#![allow(dead_code)]

use nalgebra::DMatrix;
use psim::birkhoff::{BoundaryFunctional, PsimMatrix};
use psim::{BcVariant, NodeFamily, OddPattern};

/// k-th derivative of `x^m` at `x`.
pub fn monomial_derivative(m: usize, k: usize, x: f64) -> f64 {
    if k > m {
        return 0.0;
    }
    let falling: f64 = ((m - k + 1)..=m).map(|v| v as f64).product();
    falling * x.powi((m - k) as i32)
}

fn functional_row(f: &BoundaryFunctional, m: usize) -> f64 {
    match *f {
        BoundaryFunctional::Derivative { order, at } => monomial_derivative(m, order, at.x()),
        BoundaryFunctional::Robin { a, b, at } => {
            a * monomial_derivative(m, 0, at.x()) + b * monomial_derivative(m, 1, at.x())
        }
    }
}

/// Oracle `B^(k)` at all nodes for `k = 0..=p`, columns in the library's
/// column order.
pub fn oracle_matrices(psim: &PsimMatrix) -> Vec<DMatrix<f64>> {
    let x = psim.nodes().nodes().to_vec();
    let p = psim.interior_order();
    let ncols = psim.ncols();
    let rows: Vec<usize> = psim.nodes().interior().collect();
    let cols: Vec<usize> = psim.interior_cols().collect();
    assert_eq!(rows.len(), cols.len());
    // condition c (one per column) evaluated on monomial m
    let mut cond = DMatrix::zeros(ncols, ncols);
    for (r, c) in rows.iter().zip(&cols) {
        for m in 0..ncols {
            cond[(*c, m)] = monomial_derivative(m, p, x[*r]);
        }
    }
    for (c, f) in psim.boundary_columns() {
        for m in 0..ncols {
            cond[(*c, m)] = functional_row(f, m);
        }
    }
    // columns of the inverse hold the monomial coefficients of each basis column
    let coef = cond.lu().try_inverse().expect("monomial system singular");
    (0..=p)
        .map(|k| {
            let v = DMatrix::from_fn(x.len(), ncols, |i, m| monomial_derivative(m, k, x[i]));
            v * &coef
        })
        .collect()
}

/// Largest deviation between the library matrices and the oracle.
pub fn oracle_deviation(psim: &PsimMatrix) -> f64 {
    oracle_matrices(psim)
        .iter()
        .enumerate()
        .map(|(k, o)| (psim.stored(k).expect("stored derivative") - o).amax())
        .fold(0.0, f64::max)
}

/// Every variant paired with the node families it accepts and its smallest
/// admissible N.
pub fn variants() -> Vec<(BcVariant, Vec<NodeFamily>, usize)> {
    let lobatto = vec![NodeFamily::Lgl, NodeFamily::Cgl];
    vec![
        (BcVariant::Dirichlet, lobatto.clone(), 2),
        (
            BcVariant::Mixed {
                a_minus: 1.0,
                b_minus: -1.0,
                a_plus: 1.0,
                b_plus: 1.0,
            },
            lobatto.clone(),
            2,
        ),
        (BcVariant::NeumannAnchored, lobatto.clone(), 3),
        (BcVariant::RadauInitial, vec![NodeFamily::Lgr, NodeFamily::Cgr], 1),
        (BcVariant::OddOrder(OddPattern::Third), lobatto.clone(), 3),
        (BcVariant::OddOrder(OddPattern::Fifth), lobatto, 5),
    ]
}

/// Max deviation over every variant and family at its smallest admissible N.
pub fn smallest_n_sweep() -> Vec<(String, usize, f64)> {
    let mut out = Vec::new();
    for (variant, families, n) in variants() {
        for fam in families {
            let nodes = fam.build(n).expect("grid");
            let psim = PsimMatrix::build(&nodes, variant).expect("basis");
            out.push((format!("{} {}", variant.name(), fam.name()), n, oracle_deviation(&psim)));
        }
    }
    out
}
