//! Tetrahedron (3-simplex) operators over qubits.
//!
//! The crate builds the known operator families that solve the constant
//! tetrahedron equation
//!
//! ```text
//! R_123 R_145 R_246 R_356 = R_356 R_246 R_145 R_123
//! ```
//!
//! checks them (and their 2-, 4- and 5-simplex relatives) numerically,
//! certifies unitarity, and assembles standard quantum gates as products of
//! tetrahedron operators.
//!
//! Module map:
//! - [`tensalg`]: dense complex matrices and the site-embedding engine.
//! - [`simplex`]: declarative simplex relations and residual checkers.
//! - [`clifford`]: operators built from anticommuting pairs (Cases 1-3).
//! - [`hietarinta`]: Yang-Baxter catalog, lifts `Y⊗M` / `M⊗Y`, gauge
//!   conjugation and the unitary families.
//! - [`unitary`]: unitarity certificates and spectra.
//! - [`gates`]: gate recipes.
//! - [`higher`]: 4- and 5-simplex lifts and signed-word operators.
//! - [`archive`]: text formats for matrices, catalogs and reports.

pub mod archive;
pub mod clifford;
mod error;
pub mod gates;
pub mod hietarinta;
pub mod higher;
pub mod random;
pub mod simplex;
pub mod tensalg;
pub mod unitary;

pub use error::{Error, Result};
pub use tensalg::{c64, ComplexMatrix, EmbeddedOperator, C64};

/// Default relative tolerance for relation and unitarity checks.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Default tolerance for matrix-free (probe based) checks.
pub const MATRIX_FREE_TOL: f64 = 1e-8;
