//! Pseudospectral differentiation matrices.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::gridgen::{NodeFamily, NodeSet};

/// `D^(k)` on a node set: `d_ij = l_j^(k)(x_i)`.
#[derive(Debug, Clone)]
pub struct DiffMatrix {
    family: NodeFamily,
    order: usize,
    full: DMatrix<f64>,
}

impl DiffMatrix {
    pub fn family(&self) -> NodeFamily {
        self.family
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn full(&self) -> &DMatrix<f64> {
        &self.full
    }

    pub fn into_full(self) -> DMatrix<f64> {
        self.full
    }

    /// Interior block: rows/columns `1..N` (Lobatto) or `1..=N` (Radau).
    pub fn interior(&self) -> DMatrix<f64> {
        let n = self.full.nrows() - 1;
        let m = if self.family.is_lobatto() { n - 1 } else { n };
        self.full.view((1, 1), (m, m)).into_owned()
    }

    /// `D̃^(2)`: `D^(2)` with its first and last rows replaced by `e_1` and
    /// `e_N`. Lobatto grids only.
    pub fn dtilde_second(&self) -> Result<DMatrix<f64>> {
        if self.order != 2 || !self.family.is_lobatto() {
            return Err(Error::Unsupported(format!(
                "D~(2) needs a second-order matrix on a Lobatto grid, got order {} on {}",
                self.order,
                self.family.name()
            )));
        }
        let mut m = self.full.clone();
        let n = m.nrows() - 1;
        m.row_mut(0).fill(0.0);
        m.row_mut(n).fill(0.0);
        m[(0, 0)] = 1.0;
        m[(n, n)] = 1.0;
        Ok(m)
    }

    /// `D̃`: the first-order matrix with its first row replaced by `e_1`.
    /// Radau grids only.
    pub fn dtilde_first(&self) -> Result<DMatrix<f64>> {
        if self.order != 1 || !self.family.is_radau() {
            return Err(Error::Unsupported(format!(
                "D~ needs a first-order matrix on a Radau grid, got order {} on {}",
                self.order,
                self.family.name()
            )));
        }
        let mut m = self.full.clone();
        m.row_mut(0).fill(0.0);
        m[(0, 0)] = 1.0;
        Ok(m)
    }
}

/// Barycentric weights `w_j = 1/Π_{k≠j}(x_j - x_k)`, scaled so the largest
/// has magnitude one.
pub fn barycentric_weights(x: &[f64]) -> Result<Vec<f64>> {
    let n = x.len();
    // log-magnitudes and signs: the raw products leave f64 range for large n
    let mut logs = vec![0.0; n];
    let mut signs = vec![1.0; n];
    for j in 0..n {
        for k in 0..n {
            if k != j {
                let d = x[j] - x[k];
                if d == 0.0 {
                    return Err(Error::DuplicateNodes(j.min(k), j.max(k)));
                }
                logs[j] -= d.abs().ln();
                if d < 0.0 {
                    signs[j] = -signs[j];
                }
            }
        }
    }
    let top = logs.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v));
    Ok(logs.iter().zip(&signs).map(|(l, s)| s * (l - top).exp()).collect())
}

/// First-order differentiation matrix on arbitrary distinct nodes.
pub fn first_derivative_matrix(x: &[f64]) -> Result<DMatrix<f64>> {
    let w = barycentric_weights(x)?;
    let n = x.len();
    let mut d = DMatrix::zeros(n, n);
    for i in 0..n {
        let mut row_sum = 0.0;
        for j in 0..n {
            if i != j {
                let v = (w[j] / w[i]) / (x[i] - x[j]);
                d[(i, j)] = v;
                row_sum += v;
            }
        }
        // negative sum trick: D·1 = 0 to rounding
        d[(i, i)] = -row_sum;
    }
    Ok(d)
}

/// `D^(k) = D^k` on the given node set.
pub fn psdm(nodes: &NodeSet, k: usize) -> Result<DiffMatrix> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "differentiation order must be at least 1".into(),
        ));
    }
    let n = nodes.order();
    if n < k + 1 {
        return Err(Error::InvalidArgument(format!(
            "order-{k} differentiation needs N >= {}, got N = {n}",
            k + 1
        )));
    }
    let d = first_derivative_matrix(nodes.nodes())?;
    let mut full = d.clone();
    for _ in 1..k {
        full = &d * &full;
    }
    Ok(DiffMatrix {
        family: nodes.family(),
        order: k,
        full,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridgen;
    use crate::orthopoly::{BasisFamily, SpectralCoeffs};
    use approx::assert_abs_diff_eq;
    use nalgebra::DVector;

    #[test]
    fn rows_sum_to_zero() {
        for n in [4, 32, 256] {
            let g = gridgen::cgl(n).unwrap();
            let d = psdm(&g, 1).unwrap();
            let ones = DVector::from_element(n + 1, 1.0);
            let r = d.full() * ones;
            assert!(r.amax() < 5e-10, "N = {n}: {}", r.amax());
        }
    }

    #[test]
    fn lgl_n2_differentiates_square() {
        let g = gridgen::lgl(2).unwrap();
        let d = psdm(&g, 1).unwrap();
        let p = DVector::from_iterator(3, g.nodes().iter().map(|x| x * x));
        let dp = d.full() * p;
        for (i, &x) in g.nodes().iter().enumerate() {
            assert_abs_diff_eq!(dp[i], 2.0 * x, epsilon = 1e-14);
        }
    }

    #[test]
    fn cgl_second_derivative_of_t5() {
        let g = gridgen::cgl(8).unwrap();
        let d2 = psdm(&g, 2).unwrap();
        let t5 = |x: f64| 16.0 * x.powi(5) - 20.0 * x.powi(3) + 5.0 * x;
        let t5pp = |x: f64| 320.0 * x.powi(3) - 120.0 * x;
        let p = DVector::from_iterator(9, g.nodes().iter().map(|&x| t5(x)));
        let r = d2.full() * p;
        for (i, &x) in g.nodes().iter().enumerate() {
            assert_abs_diff_eq!(r[i], t5pp(x), epsilon = 1e-10);
        }
    }

    #[test]
    fn exact_on_polynomials() {
        for (fam, n) in [(NodeFamily::Lgl, 12), (NodeFamily::Cgl, 24), (NodeFamily::Lgr, 10)] {
            let g = fam.build(n).unwrap();
            let basis = fam.basis();
            let coeffs: Vec<f64> = (0..=n).map(|i| ((i * 7 + 3) % 11) as f64 / 5.0 - 1.0).collect();
            let p = SpectralCoeffs::new(basis, coeffs);
            let vals = DVector::from_iterator(n + 1, g.nodes().iter().map(|&x| p.eval(x)));
            let mut dp = p.clone();
            for k in 1..=3 {
                dp = dp.derivative();
                let d = psdm(&g, k).unwrap();
                let r = d.full() * &vals;
                let scale = (n as f64).powi(2 * k as i32);
                for (i, &x) in g.nodes().iter().enumerate() {
                    assert!((r[i] - dp.eval(x)).abs() < 1e-13 * scale, "{fam:?} k={k}");
                }
            }
        }
        let _ = BasisFamily::Legendre;
    }

    #[test]
    fn interior_and_tilde_shapes() {
        let g = gridgen::lgl(2).unwrap();
        let d1 = psdm(&g, 1).unwrap();
        let inn = d1.interior();
        assert_eq!(inn.shape(), (1, 1));
        assert_eq!(inn[(0, 0)], d1.full()[(1, 1)]);
        assert!(psdm(&g, 2).is_err());

        let g = gridgen::lgl(6).unwrap();
        let d2 = psdm(&g, 2).unwrap();
        let t = d2.dtilde_second().unwrap();
        assert_eq!(t[(0, 0)], 1.0);
        assert_eq!(t.row(0).sum(), 1.0);
        assert_eq!(t[(6, 6)], 1.0);
        assert_eq!(t.row(6).sum(), 1.0);
        assert!(d2.dtilde_first().is_err());
        assert!(psdm(&g, 1).unwrap().dtilde_second().is_err());

        let r = gridgen::lgr(5).unwrap();
        let d = psdm(&r, 1).unwrap();
        assert_eq!(d.interior().shape(), (5, 5));
        let t = d.dtilde_first().unwrap();
        let ones = DVector::from_element(6, 1.0);
        let out = t * ones;
        assert_abs_diff_eq!(out[0], 1.0, epsilon = 1e-15);
        assert!(out.rows(1, 5).amax() < 1e-12);
        assert!(d.dtilde_second().is_err());
    }

    #[test]
    fn dtilde_maps_to_boundary_and_curvature() {
        let g = gridgen::lgl(7).unwrap();
        let t = psdm(&g, 2).unwrap().dtilde_second().unwrap();
        // p = x^4 - x
        let p = DVector::from_iterator(8, g.nodes().iter().map(|x| x.powi(4) - x));
        let r = t * p;
        assert_abs_diff_eq!(r[0], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r[7], 0.0, epsilon = 1e-12);
        for i in 1..7 {
            let x = g.nodes()[i];
            assert_abs_diff_eq!(r[i], 12.0 * x * x, epsilon = 1e-11);
        }
    }

    #[test]
    fn duplicate_nodes_rejected() {
        assert!(matches!(
            first_derivative_matrix(&[-1.0, 0.0, 0.0, 1.0]),
            Err(Error::DuplicateNodes(1, 2))
        ));
    }
}
