//! Legendre and Chebyshev polynomials in coefficient space.
//!
//! A [`SpectralCoeffs`] value is an expansion `Σ c_k φ_k(x)` where `φ_k` is
//! `P_k` or `T_k`. Integration is done with the sparse three-term
//! antiderivative relations of each family, so repeated integration never
//! leaves coefficient space and never touches a differentiation matrix.

use crate::error::{Error, Result};
use crate::gridgen::{NodeFamily, NodeSet};

/// Orthogonal polynomial family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisFamily {
    Legendre,
    Chebyshev,
}

impl BasisFamily {
    pub fn name(self) -> &'static str {
        match self {
            BasisFamily::Legendre => "legendre",
            BasisFamily::Chebyshev => "chebyshev",
        }
    }

    /// Squared norm of the k-th basis polynomial under the family's weight:
    /// `2/(2k+1)` for Legendre, `c_k π/2` for Chebyshev.
    pub fn norm_sq(self, k: usize) -> f64 {
        match self {
            BasisFamily::Legendre => 2.0 / (2 * k + 1) as f64,
            BasisFamily::Chebyshev => {
                if k == 0 {
                    std::f64::consts::PI
                } else {
                    std::f64::consts::FRAC_PI_2
                }
            }
        }
    }
}

/// `(-1)^k`
#[inline]
pub(crate) fn parity(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Value of `P_k(x)` or `T_k(x)` by forward three-term recurrence.
pub fn eval_basis(family: BasisFamily, k: usize, x: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, x);
    for n in 1..k {
        let next = match family {
            BasisFamily::Legendre => {
                let nf = n as f64;
                ((2.0 * nf + 1.0) * x * cur - nf * prev) / (nf + 1.0)
            }
            BasisFamily::Chebyshev => 2.0 * x * cur - prev,
        };
        prev = cur;
        cur = next;
    }
    cur
}

/// Fills `out[k] = φ_k(x)` for `k = 0..out.len()`.
pub fn eval_basis_all(family: BasisFamily, x: f64, out: &mut [f64]) {
    let len = out.len();
    if len == 0 {
        return;
    }
    out[0] = 1.0;
    if len == 1 {
        return;
    }
    out[1] = x;
    for n in 1..len - 1 {
        out[n + 1] = match family {
            BasisFamily::Legendre => {
                let nf = n as f64;
                ((2.0 * nf + 1.0) * x * out[n] - nf * out[n - 1]) / (nf + 1.0)
            }
            BasisFamily::Chebyshev => 2.0 * x * out[n] - out[n - 1],
        };
    }
}

/// Closed-form `φ_k'(±1)`; `sign` is `+1.0` or `-1.0`.
pub fn eval_basis_deriv_endpoint(family: BasisFamily, k: usize, sign: f64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let s = if sign < 0.0 { parity(k - 1) } else { 1.0 };
    let kf = k as f64;
    match family {
        BasisFamily::Legendre => 0.5 * s * kf * (kf + 1.0),
        BasisFamily::Chebyshev => s * kf * kf,
    }
}

/// A polynomial stored by its coefficients in one orthogonal family.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoeffs {
    pub family: BasisFamily,
    pub coeffs: Vec<f64>,
}

impl SpectralCoeffs {
    pub fn new(family: BasisFamily, coeffs: Vec<f64>) -> Self {
        Self { family, coeffs }
    }

    pub fn zeros(family: BasisFamily, len: usize) -> Self {
        Self::new(family, vec![0.0; len])
    }

    /// The single basis polynomial `φ_k`.
    pub fn unit(family: BasisFamily, k: usize) -> Self {
        let mut c = vec![0.0; k + 1];
        c[k] = 1.0;
        Self::new(family, c)
    }

    /// Converts `Σ a_i x^i` to the family's basis (Horner's scheme in
    /// coefficient space).
    pub fn from_monomial(family: BasisFamily, monomial: &[f64]) -> Self {
        let mut acc = Self::zeros(family, 1);
        for &a in monomial.iter().rev() {
            acc = acc.times_x();
            acc.coeffs[0] += a;
        }
        acc
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nominal degree (`len - 1`); trailing zeros are not trimmed.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Multiplication by `x`.
    pub fn times_x(&self) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![0.0; n + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            match self.family {
                BasisFamily::Legendre => {
                    let kf = k as f64;
                    let den = 2.0 * kf + 1.0;
                    out[k + 1] += c * (kf + 1.0) / den;
                    if k > 0 {
                        out[k - 1] += c * kf / den;
                    }
                }
                BasisFamily::Chebyshev => {
                    if k == 0 {
                        out[1] += c;
                    } else {
                        out[k + 1] += 0.5 * c;
                        out[k - 1] += 0.5 * c;
                    }
                }
            }
        }
        Self::new(self.family, out)
    }

    /// Clenshaw backward summation.
    pub fn eval(&self, x: f64) -> f64 {
        let c = &self.coeffs;
        let n = c.len();
        match n {
            0 => return 0.0,
            1 => return c[0],
            _ => {}
        }
        let (mut b1, mut b2) = (0.0_f64, 0.0_f64);
        match self.family {
            BasisFamily::Legendre => {
                // P_{k+1} = alpha_k P_k + beta_k P_{k-1}
                // alpha_k = (2k+1)x/(k+1), beta_k = -k/(k+1)
                for k in (1..n).rev() {
                    let kf = k as f64;
                    let alpha = (2.0 * kf + 1.0) * x / (kf + 1.0);
                    let beta_next = -(kf + 1.0) / (kf + 2.0);
                    let b = c[k] + alpha * b1 + beta_next * b2;
                    b2 = b1;
                    b1 = b;
                }
                c[0] + x * b1 - 0.5 * b2
            }
            BasisFamily::Chebyshev => {
                for k in (1..n).rev() {
                    let b = c[k] + 2.0 * x * b1 - b2;
                    b2 = b1;
                    b1 = b;
                }
                c[0] + x * b1 - b2
            }
        }
    }

    /// Exact derivative in coefficient space.
    pub fn derivative(&self) -> Self {
        let n = self.coeffs.len();
        if n <= 1 {
            return Self::zeros(self.family, 1);
        }
        let c = &self.coeffs;
        // d has indices 0..n-1, padded by two zeros for the recurrence.
        let mut d = vec![0.0; n + 1];
        match self.family {
            BasisFamily::Legendre => {
                for k in (1..n).rev() {
                    let kf = k as f64;
                    d[k - 1] = (2.0 * kf - 1.0) * (c[k] + d[k + 1] / (2.0 * kf + 3.0));
                }
            }
            BasisFamily::Chebyshev => {
                for k in (1..n).rev() {
                    d[k - 1] = d[k + 1] + 2.0 * k as f64 * c[k];
                }
                d[0] *= 0.5;
            }
        }
        d.truncate(n - 1);
        Self::new(self.family, d)
    }

    /// `∂_x^{-m}`: the m-fold integral from -1, so the result and its first
    /// `m - 1` derivatives vanish at `x = -1`.
    pub fn antiderivative(&self, m: usize) -> Result<Self> {
        match m {
            0 => Err(Error::InvalidArgument(
                "antiderivative order must be positive".into(),
            )),
            1 => Ok(self.integrate_once()),
            2 => Ok(self.integrate_twice()),
            _ => {
                let mut acc = self.integrate_twice();
                for _ in 2..m {
                    acc = acc.integrate_once();
                }
                Ok(acc)
            }
        }
    }

    fn integrate_once(&self) -> Self {
        let fam = self.family;
        let n = self.coeffs.len();
        let mut r = vec![0.0; n + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let kf = k as f64;
            match (fam, k) {
                (BasisFamily::Legendre, 0) | (BasisFamily::Chebyshev, 0) => {
                    // 1 + x
                    add_scaled(&mut r, &low_degree(fam, &[1.0, 1.0]), c);
                }
                (BasisFamily::Legendre, _) => {
                    let s = c / (2.0 * kf + 1.0);
                    r[k + 1] += s;
                    r[k - 1] -= s;
                }
                (BasisFamily::Chebyshev, 1) => {
                    // (x^2 - 1)/2
                    add_scaled(&mut r, &low_degree(fam, &[-0.5, 0.0, 0.5]), c);
                }
                (BasisFamily::Chebyshev, _) => {
                    r[k + 1] += c / (2.0 * (kf + 1.0));
                    r[k - 1] -= c / (2.0 * (kf - 1.0));
                    r[0] -= c * parity(k) / (kf * kf - 1.0);
                }
            }
        }
        Self::new(fam, r)
    }

    fn integrate_twice(&self) -> Self {
        let fam = self.family;
        let n = self.coeffs.len();
        let mut r = vec![0.0; n + 2];
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let kf = k as f64;
            match (fam, k) {
                (_, 0) => {
                    // (1 + x)^2 / 2
                    add_scaled(&mut r, &low_degree(fam, &[0.5, 1.0, 0.5]), c);
                }
                (_, 1) => {
                    // (1 + x)^2 (x - 2) / 6
                    add_scaled(
                        &mut r,
                        &low_degree(fam, &[-1.0 / 3.0, -0.5, 0.0, 1.0 / 6.0]),
                        c,
                    );
                }
                (BasisFamily::Chebyshev, 2) => {
                    // x (1 + x)^2 (x - 2) / 6
                    add_scaled(
                        &mut r,
                        &low_degree(fam, &[0.0, -1.0 / 3.0, -0.5, 0.0, 1.0 / 6.0]),
                        c,
                    );
                }
                (BasisFamily::Legendre, _) => {
                    r[k + 2] += c / ((2.0 * kf + 1.0) * (2.0 * kf + 3.0));
                    r[k] -= 2.0 * c / ((2.0 * kf - 1.0) * (2.0 * kf + 3.0));
                    r[k - 2] += c / ((2.0 * kf - 1.0) * (2.0 * kf + 1.0));
                }
                (BasisFamily::Chebyshev, _) => {
                    let sgn = parity(k);
                    let k2m1 = kf * kf - 1.0;
                    r[k + 2] += c / (4.0 * (kf + 1.0) * (kf + 2.0));
                    r[k] -= c / (2.0 * k2m1);
                    r[k - 2] += c / (4.0 * (kf - 1.0) * (kf - 2.0));
                    // -(-1)^k (1 + x)/(k^2 - 1) - 3(-1)^k / ((k^2-1)(k^2-4))
                    r[1] -= c * sgn / k2m1;
                    r[0] -= c * sgn / k2m1 + 3.0 * c * sgn / (k2m1 * (kf * kf - 4.0));
                }
            }
        }
        Self::new(fam, r)
    }

    /// `self += alpha * other`, growing as needed.
    pub fn axpy(&mut self, alpha: f64, other: &Self) {
        debug_assert_eq!(self.family, other.family);
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), 0.0);
        }
        for (a, &b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += alpha * b;
        }
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        Self::new(self.family, self.coeffs.iter().map(|c| alpha * c).collect())
    }

    /// Pads (never truncates) to `len` coefficients.
    pub fn padded(mut self, len: usize) -> Self {
        if self.coeffs.len() < len {
            self.coeffs.resize(len, 0.0);
        }
        self
    }
}

fn low_degree(family: BasisFamily, monomial: &[f64]) -> Vec<f64> {
    SpectralCoeffs::from_monomial(family, monomial).coeffs
}

fn add_scaled(dst: &mut [f64], src: &[f64], alpha: f64) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += alpha * s;
    }
}

/// Interior Lagrange polynomial `L_j` of a Lobatto or Radau grid, expanded in
/// the grid's orthogonal family.
///
/// `L_j` interpolates the Kronecker delta on the interior nodes only
/// (`x_1..x_{N-1}` for Lobatto, `x_1..x_N` for Radau). Its coefficients come
/// from the grid's quadrature with the two (Lobatto) or one (Radau) unknown
/// endpoint values eliminated by orthogonality against the top modes.
pub fn project_interior_lagrange(nodes: &NodeSet, j: usize) -> Result<SpectralCoeffs> {
    let n = nodes.order();
    let last_interior = if nodes.family().is_lobatto() { n - 1 } else { n };
    if j == 0 || j > last_interior {
        return Err(Error::InvalidArgument(format!(
            "index {j} is not an interior node of a {} grid with N = {n}",
            nodes.family().name()
        )));
    }
    let mut vals = vec![0.0; n + 1];
    let basis = nodes.family().basis();
    eval_basis_all(basis, nodes.nodes()[j], &mut vals);
    Ok(interior_lagrange_from_values(nodes, j, &vals))
}

/// All interior Lagrange polynomials, in node order.
pub fn interior_lagrange_all(nodes: &NodeSet) -> Vec<SpectralCoeffs> {
    let n = nodes.order();
    let last_interior = if nodes.family().is_lobatto() { n - 1 } else { n };
    let basis = nodes.family().basis();
    let mut vals = vec![0.0; n + 1];
    (1..=last_interior)
        .map(|j| {
            eval_basis_all(basis, nodes.nodes()[j], &mut vals);
            interior_lagrange_from_values(nodes, j, &vals)
        })
        .collect()
}

/// `vals[k] = φ_k(x_j)` for `k = 0..=N`.
fn interior_lagrange_from_values(nodes: &NodeSet, j: usize, vals: &[f64]) -> SpectralCoeffs {
    let n = nodes.order();
    let nf = n as f64;
    let w = nodes.weights()[j];
    match nodes.family() {
        NodeFamily::Lgl => {
            let coeffs = (0..=n - 2)
                .map(|k| {
                    let corr = if (n + k) % 2 == 1 { vals[n - 1] } else { vals[n] };
                    (vals[k] - corr) * w / BasisFamily::Legendre.norm_sq(k)
                })
                .collect();
            SpectralCoeffs::new(BasisFamily::Legendre, coeffs)
        }
        NodeFamily::Cgl => {
            let coeffs = (0..=n - 2)
                .map(|k| {
                    let ck = if k == 0 { 2.0 } else { 1.0 };
                    let corr = if (n + k) % 2 == 1 { vals[n - 1] } else { vals[n] };
                    2.0 / (ck * nf) * (vals[k] - corr)
                })
                .collect();
            SpectralCoeffs::new(BasisFamily::Chebyshev, coeffs)
        }
        NodeFamily::Lgr => {
            let coeffs = (0..n)
                .map(|k| {
                    (vals[k] - parity(n + k) * vals[n]) * w / BasisFamily::Legendre.norm_sq(k)
                })
                .collect();
            SpectralCoeffs::new(BasisFamily::Legendre, coeffs)
        }
        NodeFamily::Cgr => {
            let coeffs = (0..n)
                .map(|k| {
                    let ck = if k == 0 { 2.0 } else { 1.0 };
                    4.0 / (ck * (2.0 * nf + 1.0)) * (vals[k] - parity(n + k) * vals[n])
                })
                .collect();
            SpectralCoeffs::new(BasisFamily::Chebyshev, coeffs)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridgen;
    use approx::assert_abs_diff_eq;

    fn legendre_direct(k: usize, x: f64) -> f64 {
        // Rodrigues-free explicit sum: P_k(x) = 2^-k Σ C(k,i)^2 (x-1)^{k-i} (x+1)^i
        let mut s = 0.0;
        for i in 0..=k {
            let c = binom(k, i);
            s += c * c * (x - 1.0).powi((k - i) as i32) * (x + 1.0).powi(i as i32);
        }
        s / 2f64.powi(k as i32)
    }

    fn binom(n: usize, k: usize) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    #[test]
    fn endpoint_values() {
        for k in 0..12 {
            assert_eq!(eval_basis(BasisFamily::Legendre, k, 1.0), 1.0);
            assert_eq!(eval_basis(BasisFamily::Legendre, k, -1.0), parity(k));
            assert_eq!(eval_basis(BasisFamily::Chebyshev, k, -1.0), parity(k));
        }
        assert_eq!(eval_basis(BasisFamily::Chebyshev, 0, 0.37), 1.0);
        assert_abs_diff_eq!(eval_basis(BasisFamily::Legendre, 2, 0.5), -0.125, epsilon = 1e-16);
    }

    #[test]
    fn recurrence_matches_closed_forms() {
        for k in 0..15 {
            for &x in &[-0.9, -0.31, 0.0, 0.42, 0.77] {
                let t = (k as f64 * f64::acos(x)).cos();
                assert_abs_diff_eq!(eval_basis(BasisFamily::Chebyshev, k, x), t, epsilon = 1e-13);
                assert_abs_diff_eq!(
                    eval_basis(BasisFamily::Legendre, k, x),
                    legendre_direct(k, x),
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn endpoint_derivatives() {
        assert_eq!(eval_basis_deriv_endpoint(BasisFamily::Legendre, 3, 1.0), 6.0);
        assert_eq!(eval_basis_deriv_endpoint(BasisFamily::Chebyshev, 4, -1.0), -16.0);
        assert_eq!(eval_basis_deriv_endpoint(BasisFamily::Legendre, 0, 1.0), 0.0);
        assert_eq!(eval_basis_deriv_endpoint(BasisFamily::Legendre, 0, -1.0), 0.0);
        // compare with coefficient-space derivative
        for fam in [BasisFamily::Legendre, BasisFamily::Chebyshev] {
            for k in 0..10 {
                let d = SpectralCoeffs::unit(fam, k).derivative();
                assert_abs_diff_eq!(d.eval(1.0), eval_basis_deriv_endpoint(fam, k, 1.0), epsilon = 1e-12);
                assert_abs_diff_eq!(d.eval(-1.0), eval_basis_deriv_endpoint(fam, k, -1.0), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn clenshaw_examples() {
        let p3 = SpectralCoeffs::unit(BasisFamily::Legendre, 3);
        assert_abs_diff_eq!(p3.eval(1.0), 1.0, epsilon = 1e-15);
        let c = SpectralCoeffs::new(BasisFamily::Chebyshev, vec![1.0, 1.0]);
        assert_abs_diff_eq!(c.eval(-1.0), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn clenshaw_matches_term_sum() {
        // fixed pseudo-random degree-10 coefficients
        let coeffs: Vec<f64> = (0..11).map(|i| ((i * 37 + 11) % 19) as f64 / 9.5 - 1.0).collect();
        for fam in [BasisFamily::Legendre, BasisFamily::Chebyshev] {
            let p = SpectralCoeffs::new(fam, coeffs.clone());
            let direct: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * eval_basis(fam, k, 0.3))
                .sum();
            assert_abs_diff_eq!(p.eval(0.3), direct, epsilon = 1e-13);
        }
    }

    #[test]
    fn legendre_antiderivative_examples() {
        for k in 1..8 {
            let r = SpectralCoeffs::unit(BasisFamily::Legendre, k).antiderivative(1).unwrap();
            let s = 1.0 / (2 * k + 1) as f64;
            for (i, &c) in r.coeffs.iter().enumerate() {
                let want = if i == k + 1 {
                    s
                } else if i + 1 == k {
                    -s
                } else {
                    0.0
                };
                assert_abs_diff_eq!(c, want, epsilon = 1e-15);
            }
        }
        let t0 = SpectralCoeffs::unit(BasisFamily::Chebyshev, 0).antiderivative(1).unwrap();
        assert_abs_diff_eq!(t0.coeffs[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(t0.coeffs[1], 1.0, epsilon = 1e-15);
        let zero = SpectralCoeffs::zeros(BasisFamily::Legendre, 5);
        for m in 1..4 {
            assert!(zero.antiderivative(m).unwrap().coeffs.iter().all(|&c| c == 0.0));
        }
        assert!(zero.antiderivative(0).is_err());
    }

    #[test]
    fn twice_integration_matches_repeated_once() {
        for fam in [BasisFamily::Legendre, BasisFamily::Chebyshev] {
            for k in 0..12 {
                let p = SpectralCoeffs::unit(fam, k);
                let direct = p.antiderivative(2).unwrap();
                let twice = p.integrate_once().integrate_once();
                for &x in &[-1.0, -0.6, 0.1, 0.8, 1.0] {
                    assert_abs_diff_eq!(direct.eval(x), twice.eval(x), epsilon = 1e-14);
                }
            }
        }
    }

    #[test]
    fn integrals_vanish_where_expected() {
        for k in 0..25 {
            for m in 1..=2 {
                let l = SpectralCoeffs::unit(BasisFamily::Legendre, k).antiderivative(m).unwrap();
                assert_abs_diff_eq!(l.eval(-1.0), 0.0, epsilon = 1e-14);
                if k >= m {
                    assert_abs_diff_eq!(l.eval(1.0), 0.0, epsilon = 1e-14);
                }
                let t = SpectralCoeffs::unit(BasisFamily::Chebyshev, k).antiderivative(m).unwrap();
                assert_abs_diff_eq!(t.eval(-1.0), 0.0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn compact_second_derivative_relation() {
        // P_k = a_k P''_{k-2} + b_k P''_k + a_{k+1} P''_{k+2}
        let a = |k: f64| 1.0 / ((2.0 * k - 1.0) * (2.0 * k + 1.0));
        let b = |k: f64| -2.0 / ((2.0 * k - 1.0) * (2.0 * k + 3.0));
        let dd = |k: usize| {
            SpectralCoeffs::unit(BasisFamily::Legendre, k)
                .derivative()
                .derivative()
        };
        for k in 2..=30 {
            let kf = k as f64;
            let (lo, mid, hi) = (dd(k - 2), dd(k), dd(k + 2));
            for i in 0..50 {
                let x = -1.0 + 2.0 * i as f64 / 49.0;
                let rhs = a(kf) * lo.eval(x) + b(kf) * mid.eval(x) + a(kf + 1.0) * hi.eval(x);
                assert_abs_diff_eq!(eval_basis(BasisFamily::Legendre, k, x), rhs, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn orthogonality_under_lgl_quadrature() {
        let g = gridgen::lgl(40).unwrap();
        let mut vals = vec![0.0; 21];
        let mut gram = vec![vec![0.0; 21]; 21];
        for (&x, &w) in g.nodes().iter().zip(g.weights()) {
            eval_basis_all(BasisFamily::Legendre, x, &mut vals);
            for k in 0..=20 {
                for j in 0..=20 {
                    gram[k][j] += w * vals[k] * vals[j];
                }
            }
        }
        for k in 0..=20 {
            for j in 0..=20 {
                let want = if k == j { BasisFamily::Legendre.norm_sq(k) } else { 0.0 };
                assert_abs_diff_eq!(gram[k][j], want, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn interior_lagrange_is_cardinal() {
        for nodes in [
            gridgen::lgl(3).unwrap(),
            gridgen::lgl(9).unwrap(),
            gridgen::cgl(8).unwrap(),
            gridgen::lgr(7).unwrap(),
            gridgen::cgr(6).unwrap(),
        ] {
            let n = nodes.order();
            let last = if nodes.family().is_lobatto() { n - 1 } else { n };
            for j in 1..=last {
                let l = project_interior_lagrange(&nodes, j).unwrap();
                for i in 1..=last {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert_abs_diff_eq!(l.eval(nodes.nodes()[i]), want, epsilon = 1e-13);
                }
            }
            assert!(project_interior_lagrange(&nodes, 0).is_err());
            assert!(project_interior_lagrange(&nodes, last + 1).is_err());
        }
    }

    #[test]
    fn cgr_top_mode_vanishes() {
        // alpha_{Nj} computed with the same correction is identically zero
        let nodes = gridgen::cgr(4).unwrap();
        let n = 4;
        let x = nodes.nodes()[1];
        let tn = eval_basis(BasisFamily::Chebyshev, n, x);
        let alpha_n = 4.0 / (2.0 * n as f64 + 1.0) * (tn - parity(2 * n) * tn);
        assert_eq!(alpha_n, 0.0);
        let l = project_interior_lagrange(&nodes, 1).unwrap();
        assert_eq!(l.coeffs.len(), n);
    }
}
