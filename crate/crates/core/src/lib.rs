//! Exact products of conjugacy classes in SL₂(ℝ) and PSL₂(ℝ).
//!
//! The crate has two halves that check each other:
//!
//! * a **symbolic engine** ([`set`], [`product`], [`psl`]) that represents
//!   conjugation-invariant subsets of SL₂(ℝ) exactly (rational angle
//!   intervals, parabolic flags, finite/cofinite hyperbolic families) and
//!   computes n-fold class products in closed form, and
//! * a **matrix oracle** ([`matrix`], [`sample`], [`oracle`]) that samples
//!   real 2×2 matrices from the classes, multiplies them, classifies the
//!   results and falsifies the symbolic predictions by soundness, coverage
//!   and trace-envelope checks.
//!
//! The [`cli`] module exposes both halves as the `classprod` binary.

pub mod angle;
pub mod class;
pub mod cli;
pub mod error;
pub mod matrix;
pub mod notation;
pub mod oracle;
pub mod product;
pub mod psl;
pub mod rat;
pub mod sample;
pub mod set;

pub use angle::{Angle, Lambda};
pub use class::{ClassId, Sign};
pub use error::{ClassifyError, MemberError, ParseError};
pub use matrix::{Mat2, Su11Mat, Tolerances};
pub use set::ClassSet;
