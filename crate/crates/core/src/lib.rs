//! Birkhoff–James orthogonality, isosceles orthogonality, disjoint supports
//! and norm-parallelism for dense complex matrices under Schatten
//! p-(quasi-)norms and ℓp operator norms, plus a seeded harness that checks
//! the corresponding theorems on random ensembles.

pub mod cmatrix;
pub mod error;
pub mod laws;
pub mod norms;
pub mod ortho;
pub mod parallel;
pub mod search;

pub use cmatrix::{Matrix, C64};
pub use error::{Error, Result};
pub use norms::{NormSpec, RadiusResult, INF};

/// Default relative tolerance of the orthogonality and parallelism predicates.
pub const DEFAULT_TOL: f64 = 1e-7;
