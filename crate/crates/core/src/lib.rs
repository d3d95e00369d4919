//! Pseudospectral integration matrices built on Birkhoff interpolation.
//!
//! Node sets (`gridgen`), orthogonal-polynomial coefficient arithmetic
//! (`orthopoly`), differentiation matrices (`diffmat`), Birkhoff bases
//! (`birkhoff`), collocation solvers (`colloc`) and a KdV time stepper
//! (`evolve`).

pub mod birkhoff;
pub mod colloc;
pub mod diffmat;
pub mod error;
pub mod evolve;
pub mod gridgen;
pub mod lacore;
pub mod orthopoly;
pub mod registry;

pub use birkhoff::{bk_matrices, BcVariant, BoundaryFunctional, Endpoint, OddPattern, PsimMatrix};
pub use colloc::{ProblemSpec, Scheme, SolveReport};
pub use diffmat::{psdm, DiffMatrix};
pub use error::{Error, Result};
pub use evolve::{KdvConfig, KdvParams};
pub use gridgen::{NodeFamily, NodeSet};
pub use orthopoly::{BasisFamily, SpectralCoeffs};
