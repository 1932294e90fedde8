//! Zero-inclusion bounds for complex polynomials.
//!
//! Classical disk bounds, companion-matrix block bounds built from the
//! Cartesian decomposition, an independent root finder to check them, and the
//! report layer used by the `zerobound` binary.

pub mod cartesian;
pub mod classical;
pub mod companion;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod report;
pub mod toeplitz;

pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
pub use poly::{Polynomial, RootSet};
