//! Exact relative (co)homology of maps.
//!
//! Algebraic mapping cones of chain and cochain maps, homology over `Z`, `Q`
//! and `Z/n` through Smith normal form, simplicial mapping cylinders and cones,
//! relative Čech cohomology of cover maps, and cocycle-level classification
//! of relative functions, line bundles and gerbes.

pub mod backend;
pub mod cech;
pub mod chain;
pub mod coeffs;
pub mod error;
pub mod fixtures;
pub mod geo;
pub mod homology;
pub mod lattice;
pub mod matrix;
#[cfg(feature = "random")]
pub mod random;
pub mod simplicial;
pub mod snf;

pub use coeffs::{CoeffRing, Scalar};
pub use error::{Error, Result};
pub use matrix::{IntMatrix, RatMatrix};
