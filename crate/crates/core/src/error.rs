//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised while constructing or classifying a matrix.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    /// The matrix does not satisfy `|det - 1| <= det_tol`.
    #[error("matrix is not unimodular: |det - 1| = {excess:.3e} exceeds tolerance {tol:.1e}")]
    NotUnimodular { excess: f64, tol: f64 },
    /// `|trace|` sits within tolerance of 2 but the scalar/parabolic
    /// discrimination is itself inside the tolerance band, so the class
    /// cannot be named without widening the tolerance or using exact input.
    #[error("classification ambiguous near |trace| = 2 (trace = {trace}, discriminant = {discriminant:.3e})")]
    BoundaryAmbiguous { trace: f64, discriminant: f64 },
}

/// Errors raised by membership tests on class sets.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MemberError {
    /// A float-backed angle sits within comparison tolerance of an atom
    /// boundary; the test is undecidable at this precision.
    #[error("float-backed angle {value} lies within {tol:.1e} of a set boundary")]
    FloatAngleUndecidable { value: f64, tol: f64 },
    /// A float-backed hyperbolic parameter sits within comparison tolerance
    /// of a set element.
    #[error("float-backed lambda {value} lies within {tol:.1e} of a set boundary")]
    FloatLambdaUndecidable { value: f64, tol: f64 },
}

/// Parse failure for the class/notation grammar, with a byte position.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError { pos, msg: msg.into() }
    }
}

/// Errors raised when constructing an [`crate::angle::Angle`] or
/// [`crate::angle::Lambda`] outside its domain.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("elliptic angle must lie in ]0,2pi[ minus {{pi}}; got {0} pi")]
    AngleOutOfRange(String),
    #[error("hyperbolic parameter must satisfy |lambda| > 1; got {0}")]
    LambdaOutOfRange(String),
    #[error("{0}")]
    Invalid(String),
}
