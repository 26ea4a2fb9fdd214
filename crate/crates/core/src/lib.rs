//! Extended twisted generalized Reed-Solomon codes over small finite fields.
//!
//! The crate builds the `[n+2, k]` extended TGRS code generated by
//! [`etgrs::generator_g`], decides MDS/AMDS through symmetric-polynomial
//! conditions on node subsets, certifies non-GRS structure with Schur
//! products, and computes covering radii and deep holes. Every
//! criterion-level verdict can be cross-checked against exhaustive
//! computations in [`code`] and [`covering`].

pub mod code;
pub mod covering;
pub mod error;
pub mod etgrs;
pub mod field;
pub mod matrix;
pub mod report;

pub use code::{CodeClass, DistanceReport, LinearCode};
pub use error::{Error, Result};
pub use field::{Element, Field};
pub use matrix::Matrix;
