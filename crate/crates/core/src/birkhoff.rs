//! Birkhoff interpolation bases and pseudospectral integration matrices.
//!
//! Every basis polynomial is held in coefficient space together with its
//! derivative chain. Interior columns are integrals of the interior Lagrange
//! polynomials `L_j` (so their `p`-th derivative is `L_j`), plus a
//! low-dimensional correction that zeroes the boundary functionals. Boundary
//! columns are dual to the boundary functionals and have vanishing `p`-th
//! derivative at the interior nodes.
//!
//! Matrix entries are obtained by evaluating the coefficient expansions at
//! the nodes, never by applying a differentiation matrix.

use std::ops::Range;

use nalgebra::{DMatrix, DVector};

use crate::diffmat;
use crate::error::{Error, Result};
use crate::gridgen::NodeSet;
use crate::orthopoly::{eval_basis_all, interior_lagrange_all, BasisFamily, SpectralCoeffs};

/// Which end of `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Left,
    Right,
}

impl Endpoint {
    pub fn x(self) -> f64 {
        match self {
            Endpoint::Left => -1.0,
            Endpoint::Right => 1.0,
        }
    }
}

/// A linear functional on polynomials evaluated at an endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryFunctional {
    /// `u^(order)(±1)`
    Derivative { order: usize, at: Endpoint },
    /// `a u(±1) + b u'(±1)`
    Robin { a: f64, b: f64, at: Endpoint },
}

impl BoundaryFunctional {
    pub fn value(at: Endpoint) -> Self {
        BoundaryFunctional::Derivative { order: 0, at }
    }

    pub fn slope(at: Endpoint) -> Self {
        BoundaryFunctional::Derivative { order: 1, at }
    }

    /// Applies the functional to a polynomial given by its derivative chain
    /// (`chain[k]` is the k-th derivative).
    pub fn apply_chain(&self, chain: &[SpectralCoeffs]) -> f64 {
        let deriv = |k: usize, x: f64| -> f64 {
            if k < chain.len() {
                chain[k].eval(x)
            } else {
                let mut d = chain[chain.len() - 1].clone();
                for _ in chain.len() - 1..k {
                    d = d.derivative();
                }
                d.eval(x)
            }
        };
        match *self {
            BoundaryFunctional::Derivative { order, at } => deriv(order, at.x()),
            BoundaryFunctional::Robin { a, b, at } => a * deriv(0, at.x()) + b * deriv(1, at.x()),
        }
    }

    /// Applies the functional to an arbitrary smooth function given its
    /// derivatives `u^(k)(x)` through `deriv(k, x)`.
    pub fn apply_fn(&self, deriv: impl Fn(usize, f64) -> f64) -> f64 {
        match *self {
            BoundaryFunctional::Derivative { order, at } => deriv(order, at.x()),
            BoundaryFunctional::Robin { a, b, at } => a * deriv(0, at.x()) + b * deriv(1, at.x()),
        }
    }
}

/// Boundary pattern of an odd-order Birkhoff basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OddPattern {
    /// `u(-1), u(1), u'(1)`
    Third,
    /// `u(-1), u(1), u'(-1), u'(1), u''(1)`
    Fifth,
}

impl OddPattern {
    pub fn order(self) -> usize {
        match self {
            OddPattern::Third => 3,
            OddPattern::Fifth => 5,
        }
    }

    pub fn from_order(p: usize) -> Result<Self> {
        match p {
            3 => Ok(OddPattern::Third),
            5 => Ok(OddPattern::Fifth),
            _ => Err(Error::Unsupported(format!(
                "odd-order Birkhoff bases exist for p = 3 or 5, got {p}"
            ))),
        }
    }

    /// Functionals in column order (the first precedes the interior block).
    pub fn functionals(self) -> Vec<BoundaryFunctional> {
        use Endpoint::*;
        match self {
            OddPattern::Third => vec![
                BoundaryFunctional::value(Left),
                BoundaryFunctional::value(Right),
                BoundaryFunctional::slope(Right),
            ],
            OddPattern::Fifth => vec![
                BoundaryFunctional::value(Left),
                BoundaryFunctional::value(Right),
                BoundaryFunctional::slope(Left),
                BoundaryFunctional::slope(Right),
                BoundaryFunctional::Derivative { order: 2, at: Right },
            ],
        }
    }
}

/// Boundary-condition variant of a Birkhoff basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BcVariant {
    /// `u(±1)` with second derivatives inside (Lobatto grids).
    Dirichlet,
    /// `a₋u(-1) + b₋u'(-1)` and `a₊u(1) + b₊u'(1)` (Lobatto grids).
    Mixed {
        a_minus: f64,
        b_minus: f64,
        a_plus: f64,
        b_plus: f64,
    },
    /// `u'(-1), u'(1), u(-1)`; basis in `P_{N+1}`, odd `N` only.
    NeumannAnchored,
    /// `u(-1)` with first derivatives at the Radau nodes.
    RadauInitial,
    /// Third or fifth derivatives inside, boundary pattern as given.
    OddOrder(OddPattern),
}

impl BcVariant {
    pub fn name(&self) -> &'static str {
        match self {
            BcVariant::Dirichlet => "dirichlet",
            BcVariant::Mixed { .. } => "mixed",
            BcVariant::NeumannAnchored => "neumann",
            BcVariant::RadauInitial => "radau",
            BcVariant::OddOrder(OddPattern::Third) => "odd3",
            BcVariant::OddOrder(OddPattern::Fifth) => "odd5",
        }
    }

    /// Order of the derivative data carried at the interior nodes.
    pub fn interior_order(&self) -> usize {
        match self {
            BcVariant::RadauInitial => 1,
            BcVariant::OddOrder(p) => p.order(),
            _ => 2,
        }
    }

    /// `d = 2a₊a₋ − a₊b₋ + a₋b₊` for the mixed variant.
    pub fn mixed_determinant(a_minus: f64, b_minus: f64, a_plus: f64, b_plus: f64) -> f64 {
        2.0 * a_plus * a_minus - a_plus * b_minus + a_minus * b_plus
    }
}

/// Birkhoff basis of one variant on one node set, with the value matrices
/// `B^(k) = (B_j^(k)(x_i))` for `k = 0..=p`.
#[derive(Debug, Clone)]
pub struct PsimMatrix {
    nodes: NodeSet,
    variant: BcVariant,
    /// `chains[c][k]`: k-th derivative of the polynomial in column `c`.
    chains: Vec<Vec<SpectralCoeffs>>,
    interior_cols: Range<usize>,
    boundary: Vec<(usize, BoundaryFunctional)>,
    values: Vec<DMatrix<f64>>,
}

impl PsimMatrix {
    /// Builds the basis for any variant.
    pub fn build(nodes: &NodeSet, variant: BcVariant) -> Result<Self> {
        match variant {
            BcVariant::Dirichlet => psim_dirichlet(nodes),
            BcVariant::Mixed {
                a_minus,
                b_minus,
                a_plus,
                b_plus,
            } => psim_mixed(nodes, a_minus, b_minus, a_plus, b_plus),
            BcVariant::NeumannAnchored => psim_neumann(nodes),
            BcVariant::RadauInitial => psim_radau(nodes),
            BcVariant::OddOrder(p) => psim_odd_order(nodes, p.order()),
        }
    }

    pub fn nodes(&self) -> &NodeSet {
        &self.nodes
    }

    pub fn variant(&self) -> BcVariant {
        self.variant
    }

    /// Order `p` of the interior derivative data.
    pub fn interior_order(&self) -> usize {
        self.variant.interior_order()
    }

    pub fn ncols(&self) -> usize {
        self.chains.len()
    }

    /// Highest polynomial degree among the basis columns.
    pub fn degree(&self) -> usize {
        self.chains.iter().map(|ch| ch[0].len() - 1).max().unwrap_or(0)
    }

    /// `B = B^(0)`
    pub fn b(&self) -> &DMatrix<f64> {
        &self.values[0]
    }

    /// `B^(1)`
    pub fn b1(&self) -> &DMatrix<f64> {
        &self.values[1]
    }

    /// Stored `B^(k)` for `k <= p`.
    pub fn stored(&self, k: usize) -> Option<&DMatrix<f64>> {
        self.values.get(k)
    }

    pub fn interior_cols(&self) -> Range<usize> {
        self.interior_cols.clone()
    }

    /// Boundary columns and the functional each one is dual to, in column
    /// order. Boundary data passed to the solvers follows this order.
    pub fn boundary_columns(&self) -> &[(usize, BoundaryFunctional)] {
        &self.boundary
    }

    /// Derivative chain of column `c` (`chain[k]` is the k-th derivative).
    pub fn column_chain(&self, c: usize) -> &[SpectralCoeffs] {
        &self.chains[c]
    }

    /// `B^(k)_in`: interior rows, interior columns.
    pub fn interior_block(&self, k: usize) -> DMatrix<f64> {
        let rows = self.nodes.interior();
        let cols = self.interior_cols();
        let m = bk_matrices(self, k);
        m.view((rows.start, cols.start), (rows.len(), cols.len())).into_owned()
    }

    /// Interior rows of boundary column `c` of `B^(k)`.
    pub fn interior_rows_of_column(&self, k: usize, c: usize) -> DVector<f64> {
        let rows = self.nodes.interior();
        let m = bk_matrices(self, k);
        DVector::from_iterator(rows.len(), rows.map(|i| m[(i, c)]))
    }

    /// Assembles the full column-coefficient vector from interior data and
    /// boundary data (in [`Self::boundary_columns`] order).
    pub fn coefficient_vector(&self, interior: &DVector<f64>, boundary: &[f64]) -> Result<DVector<f64>> {
        if interior.len() != self.interior_cols.len() || boundary.len() != self.boundary.len() {
            return Err(Error::Dimension(format!(
                "expected {} interior and {} boundary values, got {} and {}",
                self.interior_cols.len(),
                self.boundary.len(),
                interior.len(),
                boundary.len()
            )));
        }
        let mut c = DVector::zeros(self.ncols());
        for (i, col) in self.interior_cols().enumerate() {
            c[col] = interior[i];
        }
        for ((col, _), &v) in self.boundary.iter().zip(boundary) {
            c[*col] = v;
        }
        Ok(c)
    }

    /// Values of `Σ c_j B_j^(k)` at all nodes.
    pub fn recover(&self, k: usize, interior: &DVector<f64>, boundary: &[f64]) -> Result<DVector<f64>> {
        let c = self.coefficient_vector(interior, boundary)?;
        Ok(bk_matrices(self, k) * c)
    }

    /// The interpolant `Σ c_j B_j` as one coefficient expansion.
    pub fn interpolant(&self, interior: &DVector<f64>, boundary: &[f64]) -> Result<SpectralCoeffs> {
        let c = self.coefficient_vector(interior, boundary)?;
        let mut acc = SpectralCoeffs::zeros(self.nodes.family().basis(), 1);
        for (j, chain) in self.chains.iter().enumerate() {
            if c[j] != 0.0 {
                acc.axpy(c[j], &chain[0]);
            }
        }
        Ok(acc)
    }
}

/// `B^(k)`: stored coefficient-space values for `k <= p`; above that,
/// `D^(k) B` when the basis lies in `P_N`, else coefficient differentiation.
pub fn bk_matrices(psim: &PsimMatrix, k: usize) -> DMatrix<f64> {
    if let Some(m) = psim.values.get(k) {
        return m.clone();
    }
    if psim.degree() <= psim.nodes.order() {
        if let Ok(m) = bk_via_psdm(psim, k) {
            return m;
        }
    }
    let chains: Vec<SpectralCoeffs> = psim
        .chains
        .iter()
        .map(|chain| {
            let mut d = chain[chain.len() - 1].clone();
            for _ in chain.len() - 1..k {
                d = d.derivative();
            }
            d
        })
        .collect();
    values_at_nodes(&psim.nodes, &chains)
}

/// `D^(k) B` by differentiation matrices (the route of the PSDM identity).
pub fn bk_via_psdm(psim: &PsimMatrix, k: usize) -> Result<DMatrix<f64>> {
    if k == 0 {
        return Ok(psim.b().clone());
    }
    let d = diffmat::psdm(&psim.nodes, k)?;
    Ok(d.full() * psim.b())
}

/// Evaluates coefficient expansions (one per column) at every node.
fn values_at_nodes(nodes: &NodeSet, columns: &[SpectralCoeffs]) -> DMatrix<f64> {
    let len = columns.iter().map(|c| c.len()).max().unwrap_or(1);
    let basis = nodes.family().basis();
    let npts = nodes.nodes().len();
    let mut v = DMatrix::zeros(npts, len);
    let mut row = vec![0.0; len];
    for (i, &x) in nodes.nodes().iter().enumerate() {
        eval_basis_all(basis, x, &mut row);
        for (k, &val) in row.iter().enumerate() {
            v[(i, k)] = val;
        }
    }
    let mut c = DMatrix::zeros(len, columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (k, &a) in col.coeffs.iter().enumerate() {
            c[(k, j)] = a;
        }
    }
    v * c
}

fn assemble(
    nodes: &NodeSet,
    variant: BcVariant,
    chains: Vec<Vec<SpectralCoeffs>>,
    interior_cols: Range<usize>,
    boundary: Vec<(usize, BoundaryFunctional)>,
) -> PsimMatrix {
    let p = variant.interior_order();
    let values = (0..=p)
        .map(|k| {
            let cols: Vec<SpectralCoeffs> = chains.iter().map(|ch| ch[k].clone()).collect();
            values_at_nodes(nodes, &cols)
        })
        .collect();
    PsimMatrix {
        nodes: nodes.clone(),
        variant,
        chains,
        interior_cols,
        boundary,
        values,
    }
}

/// Derivative chain `[q, q', …, q^(p)]` of a low-degree correction polynomial.
fn chain_by_differentiation(q: SpectralCoeffs, p: usize) -> Vec<SpectralCoeffs> {
    let mut chain = Vec::with_capacity(p + 1);
    let mut cur = q;
    for _ in 0..p {
        let next = cur.derivative();
        chain.push(cur);
        cur = next;
    }
    chain.push(cur);
    chain
}

/// `[∂^{-p}L, ∂^{-(p-1)}L, …, ∂^{-1}L, L]`
fn integral_chain(l: &SpectralCoeffs, p: usize) -> Vec<SpectralCoeffs> {
    let mut chain = vec![l.clone()];
    let mut cur = l.clone();
    for _ in 0..p {
        cur = cur.antiderivative(1).expect("order 1 is valid");
        chain.push(cur.clone());
    }
    if p >= 2 {
        // the direct two-fold formula is the better-conditioned route for the
        // top two levels
        chain[2] = l.antiderivative(2).expect("order 2 is valid");
    }
    chain.reverse();
    chain
}

fn linear(family: BasisFamily, c0: f64, c1: f64) -> SpectralCoeffs {
    SpectralCoeffs::from_monomial(family, &[c0, c1])
}

fn require_lobatto(nodes: &NodeSet, what: &str) -> Result<()> {
    if !nodes.family().is_lobatto() {
        return Err(Error::Unsupported(format!(
            "{what} basis needs LGL or CGL nodes, got {}",
            nodes.family().name()
        )));
    }
    Ok(())
}

/// Dirichlet basis at LGL or CGL points:
/// `B_0 = (1-x)/2`, `B_N = (1+x)/2`,
/// `B_j = ∂^{-2}L_j − (1+x)/2 · ∂^{-2}L_j(1)`.
pub fn psim_dirichlet(nodes: &NodeSet) -> Result<PsimMatrix> {
    require_lobatto(nodes, "Dirichlet")?;
    let n = nodes.order();
    let fam = nodes.family().basis();
    let mut chains = Vec::with_capacity(n + 1);
    chains.push(chain_by_differentiation(linear(fam, 0.5, -0.5), 2));
    for l in interior_lagrange_all(nodes) {
        let mut ch = integral_chain(&l, 2);
        let s = ch[0].eval(1.0);
        ch[0].axpy(-s, &linear(fam, 0.5, 0.5));
        ch[1].axpy(-s, &linear(fam, 0.5, 0.0));
        chains.push(ch);
    }
    chains.push(chain_by_differentiation(linear(fam, 0.5, 0.5), 2));
    let boundary = vec![
        (0, BoundaryFunctional::value(Endpoint::Left)),
        (n, BoundaryFunctional::value(Endpoint::Right)),
    ];
    Ok(assemble(nodes, BcVariant::Dirichlet, chains, 1..n, boundary))
}

/// Mixed (Robin) basis at LGL or CGL points. Interior columns keep
/// `B_j'' = L_j`; only the affine correction depends on the boundary
/// operators.
pub fn psim_mixed(nodes: &NodeSet, a_minus: f64, b_minus: f64, a_plus: f64, b_plus: f64) -> Result<PsimMatrix> {
    require_lobatto(nodes, "mixed")?;
    let d = BcVariant::mixed_determinant(a_minus, b_minus, a_plus, b_plus);
    if d == 0.0 || !d.is_finite() {
        return Err(Error::DegenerateMixed);
    }
    let n = nodes.order();
    let fam = nodes.family().basis();
    // B_0 = a₊(1-x)/d + b₊/d,  B_N = a₋(1+x)/d - b₋/d
    let b0 = linear(fam, (a_plus + b_plus) / d, -a_plus / d);
    let bn = linear(fam, (a_minus - b_minus) / d, a_minus / d);
    let mut chains = Vec::with_capacity(n + 1);
    chains.push(chain_by_differentiation(b0, 2));
    for l in interior_lagrange_all(nodes) {
        let mut ch = integral_chain(&l, 2);
        // ∫(a₊(1-t) + b₊) L_j dt = a₊ ∂^{-2}L_j(1) + b₊ ∂^{-1}L_j(1)
        let k = (a_plus * ch[0].eval(1.0) + b_plus * ch[1].eval(1.0)) / d;
        ch[0].axpy(-k, &linear(fam, a_minus - b_minus, a_minus));
        ch[1].axpy(-k, &linear(fam, a_minus, 0.0));
        chains.push(ch);
    }
    chains.push(chain_by_differentiation(bn, 2));
    let boundary = vec![
        (
            0,
            BoundaryFunctional::Robin {
                a: a_minus,
                b: b_minus,
                at: Endpoint::Left,
            },
        ),
        (
            n,
            BoundaryFunctional::Robin {
                a: a_plus,
                b: b_plus,
                at: Endpoint::Right,
            },
        ),
    ];
    let variant = BcVariant::Mixed {
        a_minus,
        b_minus,
        a_plus,
        b_plus,
    };
    Ok(assemble(nodes, variant, chains, 1..n, boundary))
}

/// Neumann basis anchored by `u(-1)`, in `P_{N+1}`. Columns are ordered
/// `B_0 (u'(-1)), B_1..B_{N-1}, B_N (u'(1)), B_{N+1} (u(-1))`.
pub fn psim_neumann(nodes: &NodeSet) -> Result<PsimMatrix> {
    require_lobatto(nodes, "Neumann")?;
    let n = nodes.order();
    if n % 2 == 0 {
        return Err(Error::NeumannEvenN(n));
    }
    if n < 3 {
        return Err(Error::GridTooSmall {
            family: nodes.family().name(),
            min: 3,
            n,
        });
    }
    let fam = nodes.family().basis();
    // Q_N = φ_N' vanishes exactly at the interior Lobatto nodes.
    // ∂^{-1}Q_N = φ_N - φ_N(-1),  ∫Q_N = 1 - (-1)^N = 2.
    let phi_n = SpectralCoeffs::unit(fam, n);
    let q = phi_n.derivative();
    let mut q1 = phi_n.clone();
    q1.coeffs[0] -= crate::orthopoly::parity(n);
    let q2 = q1.antiderivative(1)?;
    let total = q1.eval(1.0);
    let bn_chain = vec![q2.scaled(1.0 / total), q1.scaled(1.0 / total), q.scaled(1.0 / total)];

    let mut b0_chain = vec![linear(fam, 1.0, 1.0), linear(fam, 1.0, 0.0), SpectralCoeffs::zeros(fam, 1)];
    for (dst, src) in b0_chain.iter_mut().zip(&bn_chain) {
        dst.axpy(-1.0, src);
    }

    let mut chains = Vec::with_capacity(n + 2);
    chains.push(b0_chain);
    for l in interior_lagrange_all(nodes) {
        let mut ch = integral_chain(&l, 2);
        let s1 = ch[1].eval(1.0);
        for (dst, src) in ch.iter_mut().zip(&bn_chain) {
            dst.axpy(-s1, src);
        }
        chains.push(ch);
    }
    chains.push(bn_chain);
    chains.push(chain_by_differentiation(SpectralCoeffs::unit(fam, 0), 2));
    let boundary = vec![
        (0, BoundaryFunctional::slope(Endpoint::Left)),
        (n, BoundaryFunctional::slope(Endpoint::Right)),
        (n + 1, BoundaryFunctional::value(Endpoint::Left)),
    ];
    Ok(assemble(nodes, BcVariant::NeumannAnchored, chains, 1..n, boundary))
}

/// First-order basis at LGR or CGR points: `B_0 = 1`, `B_j = ∂^{-1}L_j`.
pub fn psim_radau(nodes: &NodeSet) -> Result<PsimMatrix> {
    if !nodes.family().is_radau() {
        return Err(Error::Unsupported(format!(
            "initial-value basis needs LGR or CGR nodes, got {}",
            nodes.family().name()
        )));
    }
    let n = nodes.order();
    let fam = nodes.family().basis();
    let mut chains = Vec::with_capacity(n + 1);
    chains.push(chain_by_differentiation(SpectralCoeffs::unit(fam, 0), 1));
    for l in interior_lagrange_all(nodes) {
        chains.push(integral_chain(&l, 1));
    }
    let boundary = vec![(0, BoundaryFunctional::value(Endpoint::Left))];
    Ok(assemble(nodes, BcVariant::RadauInitial, chains, 1..n + 1, boundary))
}

/// Third- or fifth-order basis at LGL or CGL points.
///
/// Interior columns are `∂^{-p}L_j + q_j` with `q_j ∈ P_{p-1}` cancelling the
/// boundary functionals; boundary columns are the `P_{p-1}` polynomials dual
/// to the functionals. Column order: first functional, interior block, then
/// the remaining functionals.
pub fn psim_odd_order(nodes: &NodeSet, p: usize) -> Result<PsimMatrix> {
    let pattern = OddPattern::from_order(p)?;
    require_lobatto(nodes, "odd-order")?;
    let n = nodes.order();
    if n < p {
        return Err(Error::GridTooSmall {
            family: nodes.family().name(),
            min: p,
            n,
        });
    }
    let fam = nodes.family().basis();
    let functionals = pattern.functionals();

    // Functional matrix on the correction space span{φ_0..φ_{p-1}}.
    let corr_chains: Vec<Vec<SpectralCoeffs>> = (0..p)
        .map(|k| chain_by_differentiation(SpectralCoeffs::unit(fam, k), p))
        .collect();
    let f = DMatrix::from_fn(p, p, |a, b| functionals[a].apply_chain(&corr_chains[b]));
    let lu = crate::lacore::Factorized::new(f).map_err(|_| {
        Error::Unsupported("boundary functionals are dependent on the correction space".into())
    })?;

    let combine = |coef: &DVector<f64>| -> Vec<SpectralCoeffs> {
        (0..=p)
            .map(|k| {
                let mut acc = SpectralCoeffs::zeros(fam, 1);
                for b in 0..p {
                    acc.axpy(coef[b], &corr_chains[b][k]);
                }
                acc
            })
            .collect()
    };

    let dual: Vec<Vec<SpectralCoeffs>> = (0..p)
        .map(|a| {
            let mut e = DVector::zeros(p);
            e[a] = 1.0;
            lu.solve(&e).map(|c| combine(&c))
        })
        .collect::<Result<_>>()?;

    let mut chains = Vec::with_capacity(n + p - 1);
    chains.push(dual[0].clone());
    for l in interior_lagrange_all(nodes) {
        let mut ch = integral_chain(&l, p);
        let rhs = DVector::from_iterator(p, functionals.iter().map(|fl| -fl.apply_chain(&ch)));
        let q = combine(&lu.solve(&rhs)?);
        for (dst, src) in ch.iter_mut().zip(&q) {
            dst.axpy(1.0, src);
        }
        chains.push(ch);
    }
    let mut boundary = vec![(0, functionals[0])];
    for (a, ch) in dual.into_iter().enumerate().skip(1) {
        boundary.push((chains.len(), functionals[a]));
        chains.push(ch);
    }
    Ok(assemble(nodes, BcVariant::OddOrder(pattern), chains, 1..n, boundary))
}
