//! Exact verification of antipodal spherical codes obtained by mapping a
//! configuration on `S^d` into the unit sphere of degree-2 harmonics.
//!
//! All inner products are computed in `ℚ(√r)`; float coordinates are only
//! produced for export.

pub mod analysis;
pub mod configurations;
pub mod embedding;
pub mod error;
pub mod harmonics;
pub mod scalars;
pub mod search;

pub use configurations::{GramMatrix, PointConfiguration};
pub use error::{Error, Result};
pub use scalars::{QuadInt, QuadScalar};
