//! Exact analysis of sparse polynomial hypersurfaces in the positive orthant.
//!
//! Everything combinatorial here runs over arbitrary-precision rationals:
//! point configurations and their Gale duals, matroid circuits, face
//! lattices with defectiveness tests, regular triangulations and the
//! combinatorial patchworking construction, exact critical-value solvers
//! in codimension one and two, and closed-form component bounds. A small
//! floating-point tracer ([`trace`]) counts components of bivariate curves
//! numerically for cross-checks against the certified bounds.
//!
//! The crate is library-first; see the `examples/` directory for one
//! runnable walkthrough per capability, and the `fewnomial` binary for a
//! scriptable command-line surface over JSON documents.

// Index loops read better than iterator chains in the pivot-heavy matrix
// code below.
#![allow(clippy::needless_range_loop)]

pub mod bounds;
pub mod cli;
pub mod config;
pub mod critical;
pub mod document;
pub mod faces;
pub mod linalg;
pub mod patchwork;
pub mod trace;

mod error;

pub use config::{GaleDual, MatroidReport, PointConfig, SignedPolynomial};
pub use error::Error;
pub use linalg::{Rat, RationalMatrix, UnivariatePoly};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
