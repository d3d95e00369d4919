use thiserror::Error;

/// Failures raised by node generation, matrix construction and the solvers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{family} grids require N >= {min}, got N = {n}")]
    GridTooSmall {
        family: &'static str,
        min: usize,
        n: usize,
    },

    #[error("Newton iteration for {family} node {index} did not converge after {iterations} steps")]
    NoConvergence {
        family: &'static str,
        index: usize,
        iterations: usize,
    },

    #[error("duplicate interpolation nodes at indices {0} and {1}")]
    DuplicateNodes(usize, usize),

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("mixed boundary operator is degenerate (d = 2a+a- - a+b- + a-b+ = 0); use the Neumann-anchored basis instead")]
    DegenerateMixed,

    #[error("Neumann-anchored basis needs odd N, got N = {0}")]
    NeumannEvenN(usize),

    #[error("matrix is singular to working precision (pivot ratio {0:e})")]
    Singular(f64),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("spectrum is not real: largest imaginary part {max_imag:e} exceeds tolerance {tol:e}")]
    ComplexSpectrum { max_imag: f64, tol: f64 },

    #[error("time stepping blew up at step {step} (t = {t})")]
    Blowup { step: usize, t: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
