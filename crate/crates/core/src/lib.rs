//! Sectorial matrices: Cartesian and sectorial decompositions, Schur
//! complements, and numerical checkers for the determinant and Loewner-order
//! inequalities that hold for matrices whose numerical range lies in a
//! sector `S_α = {z : Re z > 0, |Im z| ≤ Re z · tan α}`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
// `!(x > t)` is used on purpose so that NaN lands on the failing side.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod claim2;
pub mod error;
pub mod generators;
pub mod inequalities;
pub mod linalg;
pub mod matrix;
pub mod report;
pub mod schur;
pub mod sector;

pub use error::{Error, Result};
pub use matrix::{CartesianPair, ComplexMatrix, C64};
pub use report::{InequalityReport, ReportKind};
pub use schur::BlockPartition;
pub use sector::{SectorAngle, SectorialDecomposition};
