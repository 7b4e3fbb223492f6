//! Exact-or-float scalar parameters of conjugacy classes.
//!
//! Elliptic angles are kept in π-units: the class parameter α ∈ ]0,2π[∖{π}
//! is stored as α/π ∈ ]0,2[∖{1}. Grid values and everything the symbolic
//! engine touches are exact rationals; classification of arbitrary numeric
//! input falls back to a float-backed value that supports ordered
//! comparison (enough for membership tests) but is rejected by the exact
//! set operations.

use std::cmp::Ordering;
use std::fmt;

use crate::error::DomainError;
use crate::rat::{rat_to_f64, rat_to_string, Rat};

/// A real scalar that is either an exact rational or a float fallback.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exactish {
    Exact(Rat),
    Approx(f64),
}

impl Exactish {
    pub fn as_f64(self) -> f64 {
        match self {
            Exactish::Exact(r) => rat_to_f64(r),
            Exactish::Approx(v) => v,
        }
    }

    pub fn exact(self) -> Option<Rat> {
        match self {
            Exactish::Exact(r) => Some(r),
            Exactish::Approx(_) => None,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Exactish::Exact(_))
    }
}

impl fmt::Display for Exactish {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exactish::Exact(r) => write!(f, "{}", rat_to_string(*r)),
            Exactish::Approx(v) => write!(f, "~{v:.9}"),
        }
    }
}

/// Elliptic class parameter in π-units, in ]0,2[∖{1}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angle(Exactish);

impl Angle {
    pub fn exact(r: Rat) -> Result<Self, DomainError> {
        if r <= Rat::from_integer(0) || r >= Rat::from_integer(2) || r == Rat::from_integer(1) {
            return Err(DomainError::AngleOutOfRange(rat_to_string(r)));
        }
        Ok(Angle(Exactish::Exact(r)))
    }

    pub fn approx(v: f64) -> Result<Self, DomainError> {
        if !(v > 0.0 && v < 2.0) || v == 1.0 {
            return Err(DomainError::AngleOutOfRange(format!("~{v}")));
        }
        Ok(Angle(Exactish::Approx(v)))
    }

    /// Value in π-units.
    pub fn value(self) -> Exactish {
        self.0
    }

    /// Value in π-units as `f64`.
    pub fn as_f64(self) -> f64 {
        self.0.as_f64()
    }

    /// Value in radians.
    pub fn radians(self) -> f64 {
        self.as_f64() * std::f64::consts::PI
    }

    /// Exact rational π-units, if this angle is exact.
    pub fn exact_value(self) -> Option<Rat> {
        self.0.exact()
    }

    pub fn is_exact(self) -> bool {
        self.0.is_exact()
    }

    /// The exact value, panicking on a float-backed angle. Exact set
    /// arithmetic calls this; float-backed angles are only meaningful in
    /// membership tests.
    pub fn require_exact(self) -> Rat {
        self.exact_value()
            .expect("exact angle required: float-backed angles only support membership tests")
    }

    /// True when the angle lies in ]0,π[, the G⁺ half.
    pub fn in_lower_half(self) -> bool {
        match self.0 {
            Exactish::Exact(r) => r < Rat::from_integer(1),
            Exactish::Approx(v) => v < 1.0,
        }
    }

    /// Image under negation of the underlying class: α ↦ α+π mod 2π.
    pub fn negated(self) -> Angle {
        let one = Rat::from_integer(1);
        let two = Rat::from_integer(2);
        Angle(match self.0 {
            Exactish::Exact(r) => Exactish::Exact(if r < one { r + one } else { r - one }),
            Exactish::Approx(v) => Exactish::Approx(if v < 1.0 { v + 1.0 } else { v - 1.0 }),
        })
        .validated(two)
    }

    /// Image under inversion of the underlying class: α ↦ 2π−α.
    pub fn inverted(self) -> Angle {
        let two = Rat::from_integer(2);
        Angle(match self.0 {
            Exactish::Exact(r) => Exactish::Exact(two - r),
            Exactish::Approx(v) => Exactish::Approx(2.0 - v),
        })
        .validated(two)
    }

    fn validated(self, _two: Rat) -> Angle {
        debug_assert!(self.as_f64() > 0.0 && self.as_f64() < 2.0);
        self
    }

    pub fn cmp_f64(self, other: f64) -> Ordering {
        self.as_f64().partial_cmp(&other).unwrap()
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Hyperbolic class parameter, canonicalized to |λ| > 1 (λ and 1/λ name the
/// same class).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lambda(Exactish);

impl Lambda {
    pub fn exact(r: Rat) -> Result<Self, DomainError> {
        let one = Rat::from_integer(1);
        if r == one || r == -one || r == Rat::from_integer(0) {
            return Err(DomainError::LambdaOutOfRange(rat_to_string(r)));
        }
        let canon = if r.abs() > one { r } else { r.recip() };
        Ok(Lambda(Exactish::Exact(canon)))
    }

    pub fn approx(v: f64) -> Result<Self, DomainError> {
        if v == 0.0 || v.abs() == 1.0 || !v.is_finite() {
            return Err(DomainError::LambdaOutOfRange(format!("~{v}")));
        }
        let canon = if v.abs() > 1.0 { v } else { 1.0 / v };
        Ok(Lambda(Exactish::Approx(canon)))
    }

    pub fn value(self) -> Exactish {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0.as_f64()
    }

    pub fn exact_value(self) -> Option<Rat> {
        self.0.exact()
    }

    pub fn is_exact(self) -> bool {
        self.0.is_exact()
    }

    pub fn require_exact(self) -> Rat {
        self.exact_value()
            .expect("exact lambda required: float-backed lambdas only support membership tests")
    }

    pub fn is_positive(self) -> bool {
        self.as_f64() > 0.0
    }

    /// λ ↦ −λ (the negation image of the class).
    pub fn negated(self) -> Lambda {
        Lambda(match self.0 {
            Exactish::Exact(r) => Exactish::Exact(-r),
            Exactish::Approx(v) => Exactish::Approx(-v),
        })
    }

    /// Class trace λ + 1/λ.
    pub fn trace(self) -> f64 {
        let v = self.as_f64();
        v + 1.0 / v
    }

    /// Equality with the tolerance the products need (exact when both
    /// values are exact).
    pub fn eq_tol(self, other: Lambda, tol: f64) -> bool {
        match (self.0, other.0) {
            (Exactish::Exact(a), Exactish::Exact(b)) => a == b,
            _ => (self.as_f64() - other.as_f64()).abs() <= tol,
        }
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn angle_domain() {
        assert!(Angle::exact(rat(1, 2)).is_ok());
        assert!(Angle::exact(rat(1, 1)).is_err());
        assert!(Angle::exact(rat(0, 1)).is_err());
        assert!(Angle::exact(rat(2, 1)).is_err());
        assert!(Angle::exact(rat(5, 3)).is_ok());
    }

    #[test]
    fn angle_negate_invert() {
        let a = Angle::exact(rat(1, 3)).unwrap();
        assert_eq!(a.negated().exact_value().unwrap(), rat(4, 3));
        assert_eq!(a.inverted().exact_value().unwrap(), rat(5, 3));
        assert_eq!(a.negated().negated(), a);
        assert_eq!(a.inverted().inverted(), a);
    }

    #[test]
    fn lambda_canonicalizes() {
        assert_eq!(Lambda::exact(rat(1, 2)).unwrap().exact_value().unwrap(), rat(2, 1));
        assert_eq!(Lambda::exact(rat(-2, 3)).unwrap().exact_value().unwrap(), rat(-3, 2));
        assert!(Lambda::exact(rat(1, 1)).is_err());
        assert!(Lambda::exact(rat(0, 1)).is_err());
    }
}
