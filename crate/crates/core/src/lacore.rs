//! Dense linear algebra used by the solvers and reports.
//!
//! Thin contract over nalgebra: pivoted LU solves, 2-norm condition numbers
//! from the full singular value set, and real eigendecompositions built on
//! the real Schur form.

use nalgebra::{DMatrix, DVector, LU};

use crate::error::{Error, Result};

/// Pivot ratio below which a factorization counts as singular.
const SINGULAR_RATIO: f64 = 1e-15;

/// A reusable LU factorization with a singularity check.
pub struct Factorized {
    lu: LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
}

impl Factorized {
    pub fn new(a: DMatrix<f64>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Dimension(format!(
                "expected a square matrix, got {}x{}",
                a.nrows(),
                a.ncols()
            )));
        }
        if a.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
        }
        let lu = a.lu();
        let u = lu.u();
        let diag = u.diagonal();
        let max = diag.amax();
        let min = diag.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
        if max == 0.0 || min / max < SINGULAR_RATIO {
            let ratio = if max == 0.0 { 0.0 } else { min / max };
            return Err(Error::Singular(ratio));
        }
        Ok(Self { lu })
    }

    pub fn solve(&self, b: &DVector<f64>) -> Result<DVector<f64>> {
        self.lu
            .solve(b)
            .ok_or(Error::Singular(0.0))
    }

    pub fn solve_matrix(&self, b: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        self.lu
            .solve(b)
            .ok_or(Error::Singular(0.0))
    }
}

/// Solves `A x = b` by LU with partial pivoting.
pub fn solve_dense(a: &DMatrix<f64>, b: &DVector<f64>) -> Result<DVector<f64>> {
    if a.nrows() != b.len() {
        return Err(Error::Dimension(format!(
            "matrix has {} rows but right-hand side has {} entries",
            a.nrows(),
            b.len()
        )));
    }
    Factorized::new(a.clone())?.solve(b)
}

/// Singular values, descending.
pub fn singular_values(a: &DMatrix<f64>) -> Vec<f64> {
    let mut s: Vec<f64> = a.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// 2-norm condition number `σ_max/σ_min`; `f64::INFINITY` when `σ_min = 0`.
pub fn cond2(a: &DMatrix<f64>) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "condition number needs a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let s = singular_values(a);
    let (max, min) = (s[0], s[s.len() - 1]);
    if min == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(max / min)
}

/// Real eigenvalues (ascending) with unit-norm column eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenPairs {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
    /// Largest imaginary part that was discarded.
    pub max_imag: f64,
}

impl EigenPairs {
    /// `max_i ‖A v_i - λ_i v_i‖`.
    pub fn max_residual(&self, a: &DMatrix<f64>) -> f64 {
        (0..self.values.len())
            .map(|i| {
                let v = self.vectors.column(i);
                (a * v - v * self.values[i]).norm()
            })
            .fold(0.0, f64::max)
    }
}

fn frobenius(a: &DMatrix<f64>) -> f64 {
    a.norm()
}

/// Eigendecomposition of a matrix whose spectrum is expected to be real.
///
/// Fails with [`Error::ComplexSpectrum`] when some eigenvalue has an imaginary
/// part above `1e-8·‖A‖`.
pub fn eig_real(a: &DMatrix<f64>) -> Result<EigenPairs> {
    if !a.is_square() {
        return Err(Error::Dimension("eigendecomposition needs a square matrix".into()));
    }
    let n = a.nrows();
    let norm = frobenius(a);
    let tol = 1e-8 * norm.max(f64::MIN_POSITIVE);
    let schur = a.clone().schur();
    let complex = schur.complex_eigenvalues();
    let max_imag = complex.iter().fold(0.0_f64, |m, z| m.max(z.im.abs()));
    if max_imag > tol {
        return Err(Error::ComplexSpectrum { max_imag, tol });
    }
    let (q, t) = schur.unpack();

    // A 2x2 block with (numerically) real eigenvalues may survive in the
    // quasi-triangular form; eigenvectors then come from inverse iteration.
    let triangular = (0..n.saturating_sub(1)).all(|k| t[(k + 1, k)].abs() <= f64::EPSILON * norm);

    let mut values: Vec<f64> = if triangular {
        (0..n).map(|i| t[(i, i)]).collect()
    } else {
        complex.iter().map(|z| z.re).collect()
    };

    let mut vectors = DMatrix::zeros(n, n);
    if triangular {
        let small = f64::EPSILON * norm.max(f64::MIN_POSITIVE);
        for i in 0..n {
            let lambda = t[(i, i)];
            let mut y = DVector::zeros(n);
            y[i] = 1.0;
            for k in (0..i).rev() {
                let mut s = 0.0;
                for m in k + 1..=i {
                    s += t[(k, m)] * y[m];
                }
                let mut den = t[(k, k)] - lambda;
                if den.abs() < small {
                    den = small.copysign(den);
                }
                y[k] = -s / den;
            }
            let v = &q * y;
            let v = &v / v.norm();
            vectors.set_column(i, &v);
        }
    } else {
        for (i, &lambda) in values.iter().enumerate() {
            let v = inverse_iteration(a, lambda, norm)?;
            vectors.set_column(i, &v);
        }
    }

    // sort ascending
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| values[x].total_cmp(&values[y]));
    let sorted_vectors = DMatrix::from_fn(n, n, |r, c| vectors[(r, order[c])]);
    values = order.iter().map(|&i| values[i]).collect();
    Ok(EigenPairs {
        values,
        vectors: sorted_vectors,
        max_imag,
    })
}

fn inverse_iteration(a: &DMatrix<f64>, lambda: f64, norm: f64) -> Result<DVector<f64>> {
    let n = a.nrows();
    let shift = lambda + 1e-12 * norm.max(1.0);
    let m = a - DMatrix::identity(n, n) * shift;
    let lu = m.lu();
    let mut v = DVector::from_fn(n, |i, _| 1.0 + (i as f64 * 0.618_033_988_7).fract());
    v /= v.norm();
    for _ in 0..4 {
        let w = lu.solve(&v).ok_or(Error::Singular(0.0))?;
        v = &w / w.norm();
    }
    Ok(v)
}

/// Eigenpairs of the pencil `A x = λ M x`, computed as those of `M⁻¹A`.
/// The returned vectors satisfy `A E = M E Λ`.
pub fn generalized_eig(a: &DMatrix<f64>, m: &DMatrix<f64>) -> Result<EigenPairs> {
    if a.shape() != m.shape() {
        return Err(Error::Dimension(format!(
            "pencil matrices differ in shape: {:?} vs {:?}",
            a.shape(),
            m.shape()
        )));
    }
    let reduced = Factorized::new(m.clone())?.solve_matrix(a)?;
    eig_real(&reduced)
}
