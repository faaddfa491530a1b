//! Exact evaluation of rational symmetric functions built from colored
//! vertex models, with verification suites for their identities.

// Loops over edge states read better with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod identities;
pub mod lattice;
pub mod models;
pub mod report;
pub mod scalar;
pub mod strings;
pub mod symmetrize;
pub mod twisted;

pub use error::{Error, Result};
pub use models::{Model, Variant, WeightTable};
pub use report::VerificationReport;
pub use scalar::{Field, Rational};
pub use strings::{CompositionVector, NString};
