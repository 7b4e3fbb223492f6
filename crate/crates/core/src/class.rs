//! Symbolic names for single conjugacy classes.

use std::fmt;

use crate::angle::{Angle, Lambda};
use crate::rat::{rat_to_string, Rat};

/// A sign, ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn of_f64(v: f64) -> Sign {
        if v < 0.0 {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Pos => 1.0,
            Sign::Neg => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn mul(self, other: Sign) -> Sign {
        if self == other {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

/// Exact symbolic name for one conjugacy class of SL₂(ℝ).
///
/// * `Scalar(s)` — the central classes {I} and {−I};
/// * `Parabolic(eps, delta)` — trace 2ε, orientation δ (the sign of c−b
///   on any representative);
/// * `Elliptic(alpha)` — trace 2cos α with the orientation convention
///   `c·sin α > 0`, α ∈ ]0,2π[∖{π} in π-units;
/// * `Hyperbolic(lambda)` — eigenvalues λ, 1/λ with |λ| > 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassId {
    Scalar(Sign),
    Parabolic(Sign, Sign),
    Elliptic(Angle),
    Hyperbolic(Lambda),
}

impl ClassId {
    pub fn elliptic(r: Rat) -> ClassId {
        ClassId::Elliptic(Angle::exact(r).expect("angle in ]0,2[ minus {1}"))
    }

    pub fn hyperbolic(r: Rat) -> ClassId {
        ClassId::Hyperbolic(Lambda::exact(r).expect("lambda with |lambda| > 1"))
    }

    pub fn is_scalar(self) -> bool {
        matches!(self, ClassId::Scalar(_))
    }

    /// Trace shared by every matrix in the class.
    pub fn trace(self) -> f64 {
        match self {
            ClassId::Scalar(s) => 2.0 * s.as_f64(),
            ClassId::Parabolic(eps, _) => 2.0 * eps.as_f64(),
            ClassId::Elliptic(a) => 2.0 * a.radians().cos(),
            ClassId::Hyperbolic(l) => l.trace(),
        }
    }

    /// Image of the class under m ↦ −m.
    pub fn negated(self) -> ClassId {
        match self {
            ClassId::Scalar(s) => ClassId::Scalar(s.flip()),
            ClassId::Parabolic(eps, delta) => ClassId::Parabolic(eps.flip(), delta.flip()),
            ClassId::Elliptic(a) => ClassId::Elliptic(a.negated()),
            ClassId::Hyperbolic(l) => ClassId::Hyperbolic(l.negated()),
        }
    }

    /// Image of the class under m ↦ m⁻¹.
    pub fn inverted(self) -> ClassId {
        match self {
            ClassId::Scalar(s) => ClassId::Scalar(s),
            ClassId::Parabolic(eps, delta) => ClassId::Parabolic(eps, delta.flip()),
            ClassId::Elliptic(a) => ClassId::Elliptic(a.inverted()),
            ClassId::Hyperbolic(l) => ClassId::Hyperbolic(l),
        }
    }

    pub fn apply_sign(self, s: Sign) -> ClassId {
        match s {
            Sign::Pos => self,
            Sign::Neg => self.negated(),
        }
    }

    /// True when the class is contained in G⁺ (the closure of the positive
    /// hyperbolic family together with the elliptic angles in ]0,π[).
    pub fn in_gplus(self) -> bool {
        match self {
            ClassId::Scalar(s) => s == Sign::Pos,
            ClassId::Parabolic(eps, _) => eps == Sign::Pos,
            ClassId::Elliptic(a) => a.in_lower_half(),
            ClassId::Hyperbolic(l) => l.is_positive(),
        }
    }

    /// Returns `(id, +1)` when the class already lies in G⁺, otherwise
    /// `(negate(id), −1)`. Exactly one branch holds for every class.
    pub fn normalize_to_gplus(self) -> (ClassId, Sign) {
        if self.in_gplus() {
            (self, Sign::Pos)
        } else {
            (self.negated(), Sign::Neg)
        }
    }

    /// Renders the class in the ASCII grammar (`I`, `-I`, `C2[+-]`,
    /// `C3[1/2]`, `C4[3/2]`).
    pub fn atom(self) -> String {
        match self {
            ClassId::Scalar(Sign::Pos) => "I".to_string(),
            ClassId::Scalar(Sign::Neg) => "-I".to_string(),
            ClassId::Parabolic(eps, delta) => format!("C2[{}{}]", eps.symbol(), delta.symbol()),
            ClassId::Elliptic(a) => match a.exact_value() {
                Some(r) => format!("C3[{}]", rat_to_string(r)),
                None => format!("C3[~{:.9}]", a.as_f64()),
            },
            ClassId::Hyperbolic(l) => match l.exact_value() {
                Some(r) => format!("C4[{}]", rat_to_string(r)),
                None => format!("C4[~{:.9}]", l.as_f64()),
            },
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.atom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn negate_rules() {
        let pp = ClassId::Parabolic(Sign::Pos, Sign::Pos);
        assert_eq!(pp.negated(), ClassId::Parabolic(Sign::Neg, Sign::Neg));
        let e = ClassId::elliptic(rat(1, 3));
        assert_eq!(e.negated(), ClassId::elliptic(rat(4, 3)));
        let h = ClassId::hyperbolic(rat(2, 1));
        assert_eq!(h.negated(), ClassId::hyperbolic(rat(-2, 1)));
        for c in [pp, e, h, ClassId::Scalar(Sign::Neg)] {
            assert_eq!(c.negated().negated(), c);
        }
    }

    #[test]
    fn invert_rules() {
        assert_eq!(
            ClassId::Parabolic(Sign::Pos, Sign::Pos).inverted(),
            ClassId::Parabolic(Sign::Pos, Sign::Neg)
        );
        assert_eq!(ClassId::elliptic(rat(1, 2)).inverted(), ClassId::elliptic(rat(3, 2)));
        assert_eq!(ClassId::hyperbolic(rat(2, 1)).inverted(), ClassId::hyperbolic(rat(2, 1)));
    }

    #[test]
    fn gplus_split_is_exclusive() {
        let ids = [
            ClassId::Scalar(Sign::Pos),
            ClassId::Scalar(Sign::Neg),
            ClassId::Parabolic(Sign::Pos, Sign::Neg),
            ClassId::Parabolic(Sign::Neg, Sign::Pos),
            ClassId::elliptic(rat(1, 3)),
            ClassId::elliptic(rat(4, 3)),
            ClassId::hyperbolic(rat(3, 2)),
            ClassId::hyperbolic(rat(-3, 2)),
        ];
        for id in ids {
            assert!(id.in_gplus() ^ id.negated().in_gplus());
            let (n, s) = id.normalize_to_gplus();
            assert!(n.in_gplus());
            assert_eq!(n.apply_sign(s), id);
        }
    }

    #[test]
    fn atom_rendering() {
        assert_eq!(ClassId::Scalar(Sign::Neg).atom(), "-I");
        assert_eq!(ClassId::Parabolic(Sign::Pos, Sign::Neg).atom(), "C2[+-]");
        assert_eq!(ClassId::elliptic(rat(2, 3)).atom(), "C3[2/3]");
        assert_eq!(ClassId::hyperbolic(rat(-3, 2)).atom(), "C4[-3/2]");
    }
}
