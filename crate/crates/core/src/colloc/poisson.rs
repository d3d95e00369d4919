//! `Δu - γu = f` on `[-1, 1]²` with `u = 0` on the boundary, by partial
//! diagonalization of the tensor Birkhoff system
//! `U B_inᵗ + B_in U - γ B_in U B_inᵗ = F`.

use nalgebra::{DMatrix, DVector};

use crate::birkhoff::{psim_dirichlet, PsimMatrix};
use crate::diffmat;
use crate::error::{Error, Result};
use crate::gridgen::NodeSet;
use crate::lacore::{self, Factorized};

/// Nodal solution on the full tensor grid (boundary rows/columns are zero).
#[derive(Debug, Clone)]
pub struct Poisson2d {
    pub nodes: Vec<f64>,
    /// `values[(i, j)] = u_N(x_i, y_j)`
    pub values: DMatrix<f64>,
    /// Largest imaginary part discarded from the generalized eigenproblem.
    pub max_imag: f64,
}

impl Poisson2d {
    /// `max |u_N - u|` over the grid.
    pub fn max_error(&self, exact: impl Fn(f64, f64) -> f64) -> f64 {
        let mut e = 0.0_f64;
        for (i, &x) in self.nodes.iter().enumerate() {
            for (j, &y) in self.nodes.iter().enumerate() {
                e = e.max((self.values[(i, j)] - exact(x, y)).abs());
            }
        }
        e
    }
}

fn check(gamma: f64, nodes: &NodeSet) -> Result<()> {
    if !(gamma >= 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidArgument(format!("gamma must be finite and >= 0, got {gamma}")));
    }
    if !nodes.family().is_lobatto() {
        return Err(Error::Unsupported(format!(
            "2D solver needs a Lobatto grid, got {}",
            nodes.family().name()
        )));
    }
    Ok(())
}

fn interior_forcing(f: &impl Fn(f64, f64) -> f64, nodes: &NodeSet) -> DMatrix<f64> {
    let x: Vec<f64> = nodes.interior().map(|i| nodes.nodes()[i]).collect();
    DMatrix::from_fn(x.len(), x.len(), |i, j| f(x[i], x[j]))
}

fn embed(nodes: &NodeSet, inner: &DMatrix<f64>) -> DMatrix<f64> {
    let n1 = nodes.nodes().len();
    let mut full = DMatrix::zeros(n1, n1);
    full.view_mut((1, 1), (n1 - 2, n1 - 2)).copy_from(inner);
    full
}

/// Partial-diagonalization solve.
pub fn solve_poisson2d(gamma: f64, f: impl Fn(f64, f64) -> f64, nodes: &NodeSet) -> Result<Poisson2d> {
    check(gamma, nodes)?;
    let psim = psim_dirichlet(nodes)?;
    solve_with(gamma, f, &psim)
}

/// As [`solve_poisson2d`] on a prebuilt Dirichlet basis.
pub fn solve_with(gamma: f64, f: impl Fn(f64, f64) -> f64, psim: &PsimMatrix) -> Result<Poisson2d> {
    let nodes = psim.nodes();
    check(gamma, nodes)?;
    let b = psim.interior_block(0);
    let m = b.nrows();
    let id = DMatrix::<f64>::identity(m, m);
    let mass = &id - &b * gamma;
    let f_in = interior_forcing(&f, nodes);

    // B E = (I - γB) E Λ
    let eig = lacore::generalized_eig(&b, &mass)?;
    let e = eig.vectors.clone();
    let e_lu = Factorized::new(e.clone())?;
    let mass_lu = Factorized::new(mass)?;
    let g = e_lu.solve_matrix(&mass_lu.solve_matrix(&f_in)?)?;

    // (B + λ_p I) v_p = g_p, v_p and g_p the p-th rows of V and G
    let mut v = DMatrix::zeros(m, m);
    for (p, &lambda) in eig.values.iter().enumerate() {
        let a = &b + &id * lambda;
        let gp = DVector::from_iterator(m, g.row(p).iter().copied());
        let vp = lacore::solve_dense(&a, &gp)?;
        v.row_mut(p).copy_from(&vp.transpose());
    }
    let u = e * v;
    let inner = &b * u * b.transpose();
    Ok(Poisson2d {
        nodes: nodes.nodes().to_vec(),
        values: embed(nodes, &inner),
        max_imag: eig.max_imag,
    })
}

/// Dense Lagrange collocation of the same problem:
/// `(D_in^(2) ⊗ I + I ⊗ D_in^(2) - γ I) vec(U) = vec(F)`.
pub fn poisson2d_kronecker(gamma: f64, f: impl Fn(f64, f64) -> f64, nodes: &NodeSet) -> Result<Poisson2d> {
    check(gamma, nodes)?;
    let d2 = diffmat::psdm(nodes, 2)?.interior();
    let m = d2.nrows();
    let id = DMatrix::<f64>::identity(m, m);
    let a = d2.kronecker(&id) + id.kronecker(&d2) - DMatrix::identity(m * m, m * m) * gamma;
    let f_in = interior_forcing(&f, nodes);
    // row-major vec: index i*m + j
    let rhs = DVector::from_fn(m * m, |k, _| f_in[(k / m, k % m)]);
    let sol = lacore::solve_dense(&a, &rhs)?;
    let inner = DMatrix::from_fn(m, m, |i, j| sol[i * m + j]);
    Ok(Poisson2d {
        nodes: nodes.nodes().to_vec(),
        values: embed(nodes, &inner),
        max_imag: 0.0,
    })
}
