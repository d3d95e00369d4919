//! Gauss–Lobatto and Gauss–Radau nodes and weights.
//!
//! Legendre families are computed by Newton iteration on the defining
//! polynomial; Chebyshev families are closed form. Endpoints are pinned
//! exactly to `-1` (all families) and `+1` (Lobatto families).

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::orthopoly::BasisFamily;

const MAX_NEWTON: usize = 100;

/// Quadrature family of a [`NodeSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeFamily {
    /// Legendre–Gauss–Lobatto
    Lgl,
    /// Chebyshev–Gauss–Lobatto
    Cgl,
    /// Legendre–Gauss–Radau (left endpoint included)
    Lgr,
    /// Chebyshev–Gauss–Radau (left endpoint included)
    Cgr,
}

impl NodeFamily {
    pub fn name(self) -> &'static str {
        match self {
            NodeFamily::Lgl => "lgl",
            NodeFamily::Cgl => "cgl",
            NodeFamily::Lgr => "lgr",
            NodeFamily::Cgr => "cgr",
        }
    }

    pub fn basis(self) -> BasisFamily {
        match self {
            NodeFamily::Lgl | NodeFamily::Lgr => BasisFamily::Legendre,
            NodeFamily::Cgl | NodeFamily::Cgr => BasisFamily::Chebyshev,
        }
    }

    pub fn is_lobatto(self) -> bool {
        matches!(self, NodeFamily::Lgl | NodeFamily::Cgl)
    }

    pub fn is_radau(self) -> bool {
        !self.is_lobatto()
    }

    /// Lobatto family built on the given polynomial basis.
    pub fn lobatto(basis: BasisFamily) -> Self {
        match basis {
            BasisFamily::Legendre => NodeFamily::Lgl,
            BasisFamily::Chebyshev => NodeFamily::Cgl,
        }
    }

    pub fn radau(basis: BasisFamily) -> Self {
        match basis {
            BasisFamily::Legendre => NodeFamily::Lgr,
            BasisFamily::Chebyshev => NodeFamily::Cgr,
        }
    }

    pub fn min_order(self) -> usize {
        if self.is_lobatto() {
            2
        } else {
            1
        }
    }

    /// Builds the node set of order `n` (nodes indexed `0..=n`).
    pub fn build(self, n: usize) -> Result<NodeSet> {
        match self {
            NodeFamily::Lgl => lgl(n),
            NodeFamily::Cgl => cgl(n),
            NodeFamily::Lgr => lgr(n),
            NodeFamily::Cgr => cgr(n),
        }
    }
}

impl std::str::FromStr for NodeFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lgl" => Ok(NodeFamily::Lgl),
            "cgl" => Ok(NodeFamily::Cgl),
            "lgr" => Ok(NodeFamily::Lgr),
            "cgr" => Ok(NodeFamily::Cgr),
            other => Err(Error::InvalidArgument(format!(
                "unknown node family '{other}' (expected lgl, cgl, lgr or cgr)"
            ))),
        }
    }
}

/// Ordered quadrature nodes `x_0 < … < x_N` with their weights.
///
/// Chebyshev weights are for the weight function `1/sqrt(1 - x^2)` and sum
/// to `π`; Legendre weights sum to 2.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet {
    family: NodeFamily,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl NodeSet {
    pub fn family(&self) -> NodeFamily {
        self.family
    }

    /// Grid order `N`; there are `N + 1` nodes.
    pub fn order(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Indices of the interior nodes carrying derivative data: `1..N` for
    /// Lobatto grids and `1..=N` for Radau grids.
    pub fn interior(&self) -> std::ops::Range<usize> {
        let n = self.order();
        if self.family.is_lobatto() {
            1..n
        } else {
            1..n + 1
        }
    }

    /// `Σ w_i f(x_i)`.
    pub fn quadrature(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

fn check_order(family: NodeFamily, n: usize) -> Result<()> {
    let min = family.min_order();
    if n < min {
        return Err(Error::GridTooSmall {
            family: family.name(),
            min,
            n,
        });
    }
    Ok(())
}

/// `(P_n(x), P_n'(x), P_n''(x))`; the derivatives come from the
/// recurrence for `P_n'`, which stays finite at `x = ±1`.
pub(crate) fn legendre_with_derivs(n: usize, x: f64) -> (f64, f64, f64) {
    if n == 0 {
        return (1.0, 0.0, 0.0);
    }
    // (P, P', P'') for degree k-1 and k
    let (mut p0, mut d0, mut s0) = (1.0, 0.0, 0.0);
    let (mut p1, mut d1, mut s1) = (x, 1.0, 0.0);
    for k in 1..n {
        let kf = k as f64;
        let a = (2.0 * kf + 1.0) / (kf + 1.0);
        let b = kf / (kf + 1.0);
        let p2 = a * x * p1 - b * p0;
        let d2 = a * (p1 + x * d1) - b * d0;
        let s2 = a * (2.0 * d1 + x * s1) - b * s0;
        p0 = p1;
        d0 = d1;
        s0 = s1;
        p1 = p2;
        d1 = d2;
        s1 = s2;
    }
    (p1, d1, s1)
}

/// Legendre–Gauss–Lobatto nodes: `±1` and the zeros of `P_N'`.
pub fn lgl(n: usize) -> Result<NodeSet> {
    check_order(NodeFamily::Lgl, n)?;
    let nf = n as f64;
    let mut nodes = vec![0.0; n + 1];
    nodes[0] = -1.0;
    nodes[n] = 1.0;
    // Solve for the upper half and reflect, which keeps the set exactly
    // symmetric.
    let tol = 1e-15;
    for j in (n + 1) / 2..n {
        let mut x = -((PI * j as f64) / nf).cos();
        let mut converged = false;
        for _ in 0..MAX_NEWTON {
            let (_, d, s) = legendre_with_derivs(n, x);
            let dx = d / s;
            x -= dx;
            if dx.abs() <= tol * (1.0 + x.abs()) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence {
                family: "lgl",
                index: j,
                iterations: MAX_NEWTON,
            });
        }
        nodes[j] = x;
        nodes[n - j] = -x;
    }
    if n % 2 == 0 {
        nodes[n / 2] = 0.0;
    }
    let weights = nodes
        .iter()
        .map(|&x| {
            let (p, _, _) = legendre_with_derivs(n, x);
            2.0 / (nf * (nf + 1.0) * p * p)
        })
        .collect();
    Ok(NodeSet {
        family: NodeFamily::Lgl,
        nodes,
        weights,
    })
}

/// Chebyshev–Gauss–Lobatto nodes `x_j = -cos(jπ/N)`.
pub fn cgl(n: usize) -> Result<NodeSet> {
    check_order(NodeFamily::Cgl, n)?;
    let nf = n as f64;
    let h = PI / nf;
    // sin form gives exact antisymmetry x_{N-j} = -x_j
    let nodes = (0..=n)
        .map(|j| (PI * (2.0 * j as f64 - nf) / (2.0 * nf)).sin())
        .collect();
    let mut weights = vec![h; n + 1];
    weights[0] = h / 2.0;
    weights[n] = h / 2.0;
    Ok(NodeSet {
        family: NodeFamily::Cgl,
        nodes,
        weights,
    })
}

/// Legendre–Gauss–Radau nodes: `-1` and the other zeros of `P_N + P_{N+1}`.
pub fn lgr(n: usize) -> Result<NodeSet> {
    check_order(NodeFamily::Lgr, n)?;
    let nf = n as f64;
    let mut nodes = vec![0.0; n + 1];
    nodes[0] = -1.0;
    let tol = 1e-15;
    // q(x) = (P_N + P_{N+1})/(1 + x) has the N wanted roots in (-1, 1).
    let q = |x: f64| -> (f64, f64) {
        let (pn, dn, _) = legendre_with_derivs(n, x);
        let (pm, dm, _) = legendre_with_derivs(n + 1, x);
        let f = pn + pm;
        let df = dn + dm;
        let y = 1.0 + x;
        (f / y, (df * y - f) / (y * y))
    };
    for j in 1..=n {
        let guess = -((2.0 * PI * j as f64) / (2.0 * nf + 1.0)).cos();
        let mut x = guess;
        let mut converged = false;
        for _ in 0..MAX_NEWTON {
            let (f, df) = q(x);
            let dx = f / df;
            let next = x - dx;
            if !(next > -1.0 && next < 1.0) || !next.is_finite() {
                break;
            }
            x = next;
            if dx.abs() <= tol * (1.0 + x.abs()) {
                converged = true;
                break;
            }
        }
        if !converged {
            // Newton left the interval; fall back to bisection on a bracket
            // around the Chebyshev–Radau guess.
            x = bisect_bracket(|t| q(t).0, guess, n).ok_or(Error::NoConvergence {
                family: "lgr",
                index: j,
                iterations: MAX_NEWTON,
            })?;
        }
        nodes[j] = x;
    }
    let weights = nodes
        .iter()
        .map(|&x| {
            let (p, _, _) = legendre_with_derivs(n, x);
            (1.0 - x) / ((nf + 1.0) * (nf + 1.0) * p * p)
        })
        .collect();
    Ok(NodeSet {
        family: NodeFamily::Lgr,
        nodes,
        weights,
    })
}

fn bisect_bracket(f: impl Fn(f64) -> f64, guess: f64, n: usize) -> Option<f64> {
    let half = PI / (2.0 * n as f64 + 1.0);
    let theta = (-guess).acos();
    let mut lo = -((theta - half).max(0.0)).cos();
    let mut hi = -((theta + half).min(PI)).cos();
    lo = lo.max(-1.0 + f64::EPSILON);
    hi = hi.min(1.0);
    let (mut flo, fhi) = (f(lo), f(hi));
    if flo * fhi > 0.0 {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 || (hi - lo) < 4.0 * f64::EPSILON {
            return Some(mid);
        }
        if fm * flo < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Chebyshev–Gauss–Radau nodes `x_j = -cos(2πj/(2N+1))`.
pub fn cgr(n: usize) -> Result<NodeSet> {
    check_order(NodeFamily::Cgr, n)?;
    let h = 2.0 * PI / (2.0 * n as f64 + 1.0);
    let mut nodes: Vec<f64> = (0..=n).map(|j| -(j as f64 * h).cos()).collect();
    nodes[0] = -1.0;
    let mut weights = vec![h; n + 1];
    weights[0] = h / 2.0;
    Ok(NodeSet {
        family: NodeFamily::Cgr,
        nodes,
        weights,
    })
}
