//! Resolvent trace formula and regularized determinants of the twisted
//! Laplacians Delta_n acting on weight-2n forms over a cofinite hyperbolic
//! surface with elliptic points and cusps.

pub mod cli;
pub mod error;
pub mod kernel;
pub mod quad;
pub mod residues;
pub mod scattering;
pub mod surface;
pub mod trace_geom;
pub mod zeta_det;
pub mod special;

pub use error::{Error, Result};
