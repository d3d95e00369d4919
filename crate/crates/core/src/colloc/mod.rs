//! Collocation solvers under the Birkhoff basis (BCOL), the Lagrange basis
//! (LCOL) and the Lagrange basis preconditioned by the interior PSIM
//! (P-LCOL).
//!
//! A problem is `lead·u^(p) + Σ_{k<p} a_k(x) u^(k) = f` with boundary data
//! given in the column order of the matching [`PsimMatrix`].

pub mod poisson;
pub mod reference;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::birkhoff::{BcVariant, BoundaryFunctional, PsimMatrix};
use crate::diffmat;
use crate::error::{Error, Result};
use crate::gridgen::{NodeFamily, NodeSet};
use crate::lacore;
use crate::orthopoly::SpectralCoeffs;

pub use poisson::{poisson2d_kronecker, solve_poisson2d, Poisson2d};

/// A real coefficient function on `[-1, 1]`.
#[derive(Clone)]
pub enum Coef {
    Const(f64),
    Func(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl Coef {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Coef::Func(Arc::new(f))
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Coef::Const(c) => *c,
            Coef::Func(f) => f(x),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coef::Const(c) if *c == 0.0)
    }
}

impl fmt::Debug for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coef::Const(c) => write!(f, "Const({c})"),
            Coef::Func(_) => write!(f, "Func"),
        }
    }
}

impl From<f64> for Coef {
    fn from(c: f64) -> Self {
        Coef::Const(c)
    }
}

/// `lead·u^(p) + Σ_k coeffs[k](x)·u^(k) = forcing`, `k < p`.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub id: String,
    pub lead: f64,
    /// `coeffs[k]` multiplies `u^(k)`; its length is the order `p`.
    pub coeffs: Vec<Coef>,
    pub forcing: Coef,
    pub bc: BcVariant,
    /// Boundary data in [`PsimMatrix::boundary_columns`] order.
    pub bc_data: Vec<f64>,
    pub exact: Option<Coef>,
}

impl ProblemSpec {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    fn validate(&self) -> Result<()> {
        if self.order() != self.bc.interior_order() {
            return Err(Error::Unsupported(format!(
                "order-{} problem cannot use the {} basis (order {})",
                self.order(),
                self.bc.name(),
                self.bc.interior_order()
            )));
        }
        if self.lead == 0.0 {
            return Err(Error::InvalidArgument("leading coefficient must be nonzero".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Bcol,
    Lcol,
    Plcol,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Bcol => "bcol",
            Scheme::Lcol => "lcol",
            Scheme::Plcol => "plcol",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "").as_str() {
            "bcol" => Ok(Scheme::Bcol),
            "lcol" => Ok(Scheme::Lcol),
            "plcol" => Ok(Scheme::Plcol),
            _ => Err(Error::InvalidArgument(format!("unknown scheme '{s}' (bcol, lcol, plcol)"))),
        }
    }
}

/// Outcome of one collocation solve.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub scheme: Scheme,
    pub family: NodeFamily,
    pub bc: &'static str,
    pub n: usize,
    /// 2-norm condition number of the matrix handed to the linear solver.
    pub cond2: f64,
    pub nodes: Vec<f64>,
    /// Solution values at every node.
    pub solution: Vec<f64>,
    /// `max_i |u_N(x_i) - u(x_i)|` when an exact solution is known.
    pub max_error: Option<f64>,
    /// The solution polynomial (BCOL only).
    pub interpolant: Option<SpectralCoeffs>,
}

/// Whether to compute the condition number (an SVD) alongside the solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cond {
    Compute,
    Skip,
}

fn finish(
    scheme: Scheme,
    p: &ProblemSpec,
    nodes: &NodeSet,
    a: &DMatrix<f64>,
    cond: Cond,
    solution: Vec<f64>,
    interpolant: Option<SpectralCoeffs>,
) -> Result<SolveReport> {
    let cond2 = match cond {
        Cond::Compute => lacore::cond2(a)?,
        Cond::Skip => f64::NAN,
    };
    let max_error = p.exact.as_ref().map(|u| {
        nodes
            .nodes()
            .iter()
            .zip(&solution)
            .map(|(&x, &v)| (v - u.eval(x)).abs())
            .fold(0.0, f64::max)
    });
    Ok(SolveReport {
        scheme,
        family: nodes.family(),
        bc: p.bc.name(),
        n: nodes.order(),
        cond2,
        nodes: nodes.nodes().to_vec(),
        solution,
        max_error,
        interpolant,
    })
}

/// Values of a coefficient at the interior nodes.
fn interior_values(c: &Coef, nodes: &NodeSet) -> Vec<f64> {
    nodes.interior().map(|i| c.eval(nodes.nodes()[i])).collect()
}

/// BCOL on a prebuilt basis: unknowns are `u^(p)` at the interior nodes;
/// the matrix is `lead·I + Σ_k Λ_{a_k} B_in^(k)`.
pub fn solve_bcol_with(p: &ProblemSpec, psim: &PsimMatrix, cond: Cond) -> Result<SolveReport> {
    p.validate()?;
    if p.bc != psim.variant() {
        return Err(Error::Unsupported(format!(
            "problem uses the {} basis but the matrix was built for {}",
            p.bc.name(),
            psim.variant().name()
        )));
    }
    let nodes = psim.nodes();
    let boundary = psim.boundary_columns();
    if p.bc_data.len() != boundary.len() {
        return Err(Error::Dimension(format!(
            "{} boundary values given, basis has {} boundary columns",
            p.bc_data.len(),
            boundary.len()
        )));
    }
    let m = psim.interior_cols().len();
    let rows = nodes.interior();
    let cols = psim.interior_cols();

    let mut a = DMatrix::identity(m, m) * p.lead;
    let mut rhs = DVector::from_vec(interior_values(&p.forcing, nodes));
    for (k, coef) in p.coeffs.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        let bk = psim.stored(k).expect("orders below p are stored");
        let ak = interior_values(coef, nodes);
        for (r, i) in rows.clone().enumerate() {
            for (c, j) in cols.clone().enumerate() {
                a[(r, c)] += ak[r] * bk[(i, j)];
            }
            for ((col, _), &g) in boundary.iter().zip(&p.bc_data) {
                rhs[r] -= g * ak[r] * bk[(i, *col)];
            }
        }
    }
    let w = lacore::solve_dense(&a, &rhs)?;
    let u = psim.recover(0, &w, &p.bc_data)?;
    let interp = psim.interpolant(&w, &p.bc_data)?;
    finish(Scheme::Bcol, p, nodes, &a, cond, u.iter().copied().collect(), Some(interp))
}

/// BCOL, building the basis for the problem's boundary variant.
pub fn solve_bcol(p: &ProblemSpec, nodes: &NodeSet) -> Result<SolveReport> {
    let psim = PsimMatrix::build(nodes, p.bc)?;
    solve_bcol_with(p, &psim, Cond::Compute)
}

/// `D^(k)` for `k = 0..=p` (with `D^(0) = I`).
fn lagrange_derivatives(nodes: &NodeSet, p: usize) -> Result<Vec<DMatrix<f64>>> {
    let n1 = nodes.nodes().len();
    let d1 = diffmat::first_derivative_matrix(nodes.nodes())?;
    let mut out = vec![DMatrix::identity(n1, n1), d1.clone()];
    for _ in 2..=p {
        let next = &d1 * out.last().expect("nonempty");
        out.push(next);
    }
    Ok(out)
}

/// Interior operator rows `lead·D^(p) + Σ Λ_{a_k} D^(k)` restricted to all
/// columns, one row per interior node.
fn lagrange_operator_rows(p: &ProblemSpec, nodes: &NodeSet, d: &[DMatrix<f64>]) -> DMatrix<f64> {
    let order = p.order();
    let n1 = nodes.nodes().len();
    let rows: Vec<usize> = nodes.interior().collect();
    let mut a = DMatrix::zeros(rows.len(), n1);
    for (r, &i) in rows.iter().enumerate() {
        for j in 0..n1 {
            a[(r, j)] = p.lead * d[order][(i, j)];
        }
    }
    for (k, coef) in p.coeffs.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        for (r, &i) in rows.iter().enumerate() {
            let ak = coef.eval(nodes.nodes()[i]);
            for j in 0..n1 {
                a[(r, j)] += ak * d[k][(i, j)];
            }
        }
    }
    a
}

/// Prescribed node values implied by the boundary data, for variants whose
/// functionals are plain endpoint values.
fn dirichlet_like_values(p: &ProblemSpec, nodes: &NodeSet) -> Result<Vec<(usize, f64)>> {
    let n = nodes.order();
    match p.bc {
        BcVariant::Dirichlet => Ok(vec![(0, p.bc_data[0]), (n, p.bc_data[1])]),
        BcVariant::RadauInitial => Ok(vec![(0, p.bc_data[0])]),
        _ => Err(Error::Unsupported(format!(
            "no Lagrange elimination for the {} variant",
            p.bc.name()
        ))),
    }
}

/// LCOL system `(A, rhs)` for Dirichlet/Radau data, unknowns at the
/// interior nodes.
fn lcol_eliminated(p: &ProblemSpec, nodes: &NodeSet, d: &[DMatrix<f64>]) -> Result<(DMatrix<f64>, DVector<f64>)> {
    let fixed = dirichlet_like_values(p, nodes)?;
    let full = lagrange_operator_rows(p, nodes, d);
    let inner: Vec<usize> = nodes.interior().collect();
    let a = DMatrix::from_fn(inner.len(), inner.len(), |r, c| full[(r, inner[c])]);
    let mut rhs = DVector::from_vec(interior_values(&p.forcing, nodes));
    for (r, v) in rhs.iter_mut().enumerate() {
        for &(j, g) in &fixed {
            *v -= g * full[(r, j)];
        }
    }
    Ok((a, rhs))
}

fn assemble_full(nodes: &NodeSet, fixed: &[(usize, f64)], inner: &DVector<f64>) -> Vec<f64> {
    let mut u = vec![0.0; nodes.nodes().len()];
    for (r, i) in nodes.interior().enumerate() {
        u[i] = inner[r];
    }
    for &(j, g) in fixed {
        u[j] = g;
    }
    u
}

/// LCOL: Dirichlet and initial-value data are eliminated; mixed data
/// replaces the first and last collocation rows by the discrete functionals
/// `a·u(±1) + b·(D u)(±1)` (tau treatment).
pub fn solve_lcol_with(p: &ProblemSpec, nodes: &NodeSet, cond: Cond) -> Result<SolveReport> {
    p.validate()?;
    let d = lagrange_derivatives(nodes, p.order())?;
    match p.bc {
        BcVariant::Dirichlet | BcVariant::RadauInitial => {
            if p.bc == BcVariant::RadauInitial && !nodes.family().is_radau()
                || p.bc == BcVariant::Dirichlet && !nodes.family().is_lobatto()
            {
                return Err(Error::Unsupported(format!(
                    "{} data on {} nodes",
                    p.bc.name(),
                    nodes.family().name()
                )));
            }
            let (a, rhs) = lcol_eliminated(p, nodes, &d)?;
            let inner = lacore::solve_dense(&a, &rhs)?;
            let u = assemble_full(nodes, &dirichlet_like_values(p, nodes)?, &inner);
            finish(Scheme::Lcol, p, nodes, &a, cond, u, None)
        }
        BcVariant::Mixed { .. } => {
            if !nodes.family().is_lobatto() {
                return Err(Error::Unsupported("mixed data needs a Lobatto grid".into()));
            }
            let n = nodes.order();
            let ops = lagrange_operator_rows(p, nodes, &d);
            let mut a = DMatrix::zeros(n + 1, n + 1);
            let mut rhs = DVector::zeros(n + 1);
            for (r, i) in nodes.interior().enumerate() {
                a.row_mut(i).copy_from(&ops.row(r));
                rhs[i] = p.forcing.eval(nodes.nodes()[i]);
            }
            for ((row, fl), &g) in [0, n].into_iter().zip(mixed_functionals(p.bc)).zip(&p.bc_data) {
                if let BoundaryFunctional::Robin { a: ca, b: cb, .. } = fl {
                    for j in 0..=n {
                        a[(row, j)] = cb * d[1][(row, j)];
                    }
                    a[(row, row)] += ca;
                }
                rhs[row] = g;
            }
            let u = lacore::solve_dense(&a, &rhs)?;
            finish(Scheme::Lcol, p, nodes, &a, cond, u.iter().copied().collect(), None)
        }
        _ => Err(Error::Unsupported(format!(
            "LCOL is not provided for the {} variant",
            p.bc.name()
        ))),
    }
}

fn mixed_functionals(bc: BcVariant) -> [BoundaryFunctional; 2] {
    use crate::birkhoff::Endpoint;
    match bc {
        BcVariant::Mixed {
            a_minus,
            b_minus,
            a_plus,
            b_plus,
        } => [
            BoundaryFunctional::Robin {
                a: a_minus,
                b: b_minus,
                at: Endpoint::Left,
            },
            BoundaryFunctional::Robin {
                a: a_plus,
                b: b_plus,
                at: Endpoint::Right,
            },
        ],
        _ => unreachable!("only called for mixed data"),
    }
}

pub fn solve_lcol(p: &ProblemSpec, nodes: &NodeSet) -> Result<SolveReport> {
    solve_lcol_with(p, nodes, Cond::Compute)
}

/// P-LCOL: the Dirichlet LCOL system left-multiplied by `B_in`, with
/// `B_in D_in^(2)` and `B_in d_j^(2)` replaced by the `I` and `-b_j` they
/// equal.
pub fn solve_plcol_with(p: &ProblemSpec, psim: &PsimMatrix, cond: Cond) -> Result<SolveReport> {
    p.validate()?;
    if p.bc != BcVariant::Dirichlet || psim.variant() != BcVariant::Dirichlet {
        return Err(Error::Unsupported("P-LCOL is defined for Dirichlet data only".into()));
    }
    let nodes = psim.nodes();
    let d = lagrange_derivatives(nodes, 1)?;
    let lower = ProblemSpec {
        lead: 1.0,
        ..p.clone()
    };
    // operator rows without the second-derivative term
    let mut ops = DMatrix::zeros(nodes.interior().len(), nodes.nodes().len());
    for (k, coef) in lower.coeffs.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        for (r, i) in nodes.interior().enumerate() {
            let ak = coef.eval(nodes.nodes()[i]);
            for j in 0..nodes.nodes().len() {
                ops[(r, j)] += ak * d[k][(i, j)];
            }
        }
    }
    let n = nodes.order();
    let fixed = [(0usize, p.bc_data[0]), (n, p.bc_data[1])];
    let mut rhs = DVector::from_vec(interior_values(&p.forcing, nodes));
    for (r, v) in rhs.iter_mut().enumerate() {
        for &(j, g) in &fixed {
            *v -= g * ops[(r, j)];
        }
    }
    let b_in = psim.interior_block(0);
    let inner: Vec<usize> = nodes.interior().collect();
    let ops_in = DMatrix::from_fn(inner.len(), inner.len(), |r, c| ops[(r, inner[c])]);
    let a = DMatrix::identity(inner.len(), inner.len()) * p.lead + &b_in * ops_in;
    let mut rhs = &b_in * rhs;
    // B_in d_j^(2) = -b_j for the boundary columns j = 0, N
    for &(j, g) in &fixed {
        for (r, &i) in inner.iter().enumerate() {
            rhs[r] += p.lead * g * psim.b()[(i, j)];
        }
    }
    let u_in = lacore::solve_dense(&a, &rhs)?;
    let u = assemble_full(nodes, &fixed, &u_in);
    finish(Scheme::Plcol, p, nodes, &a, cond, u, None)
}

pub fn solve_plcol(p: &ProblemSpec, nodes: &NodeSet) -> Result<SolveReport> {
    let psim = PsimMatrix::build(nodes, BcVariant::Dirichlet)?;
    solve_plcol_with(p, &psim, Cond::Compute)
}

/// Dispatch on the scheme.
pub fn solve(p: &ProblemSpec, nodes: &NodeSet, scheme: Scheme) -> Result<SolveReport> {
    match scheme {
        Scheme::Bcol => solve_bcol(p, nodes),
        Scheme::Lcol => solve_lcol(p, nodes),
        Scheme::Plcol => solve_plcol(p, nodes),
    }
}

/// Second-order BVP under the Birkhoff basis.
pub fn solve_bvp2_bcol(p: &ProblemSpec, nodes: &NodeSet) -> Result<SolveReport> {
    require_order(p, 2)?;
    solve_bcol(p, nodes)
}

/// Second-order BVP under the Lagrange basis.
pub fn solve_bvp2_lcol(p: &ProblemSpec, nodes: &NodeSet) -> Result<SolveReport> {
    require_order(p, 2)?;
    solve_lcol(p, nodes)
}

/// Second-order Dirichlet BVP, preconditioned Lagrange collocation.
pub fn solve_bvp2_plcol(p: &ProblemSpec, nodes: &NodeSet) -> Result<SolveReport> {
    require_order(p, 2)?;
    solve_plcol(p, nodes)
}

/// First-order initial-value problem at Radau nodes.
pub fn solve_ivp1(p: &ProblemSpec, nodes: &NodeSet, scheme: Scheme) -> Result<SolveReport> {
    require_order(p, 1)?;
    if scheme == Scheme::Plcol {
        return Err(Error::Unsupported("P-LCOL is defined for second-order problems".into()));
    }
    solve(p, nodes, scheme)
}

/// Third- or fifth-order problem under the odd-order Birkhoff basis.
pub fn solve_odd_order(p: &ProblemSpec, nodes: &NodeSet) -> Result<SolveReport> {
    if !matches!(p.order(), 3 | 5) {
        return Err(Error::Unsupported(format!("odd-order solver got order {}", p.order())));
    }
    solve_bcol(p, nodes)
}

fn require_order(p: &ProblemSpec, order: usize) -> Result<()> {
    if p.order() != order {
        return Err(Error::Unsupported(format!(
            "expected an order-{order} problem, '{}' has order {}",
            p.id,
            p.order()
        )));
    }
    Ok(())
}

/// `(N, cond2)` for each N.
pub fn condition_sweep(scheme: Scheme, p: &ProblemSpec, family: NodeFamily, ns: &[usize]) -> Result<Vec<(usize, f64)>> {
    ns.iter()
        .map(|&n| {
            let nodes = family.build(n)?;
            Ok((n, solve(p, &nodes, scheme)?.cond2))
        })
        .collect()
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::InvalidArgument("slope fit needs at least two matching points".into()));
    }
    if x.iter().chain(y).any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::InvalidArgument("slope fit needs positive finite data".into()));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    Ok(sxy / sxx)
}
