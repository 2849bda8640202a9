//! Physicality and separability of Gaussian (second-moment) states from
//! their covariance matrices, through symplectic invariants.
//!
//! Conventions: interleaved `(x1, p1, ..., xn, pn)` ordering and units in
//! which the vacuum covariance matrix is the identity (`hbar = 2`). A state is
//! physical iff every symplectic eigenvalue is at least 1.

pub mod cli;
pub mod error;
pub mod gallery;
pub mod invariants;
pub mod separability;
pub mod symplectic;
pub mod tolerances;

pub use error::{Error, Result};
pub use tolerances::Tolerances;
