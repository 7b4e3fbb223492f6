//! Exact symbolic sets of conjugacy classes and their Boolean algebra.
//!
//! A [`ClassSet`] is a conjugation-invariant subset of SL₂(ℝ), stored
//! component-wise: two scalar flags, four parabolic flags, a canonical list
//! of rational angle intervals for the elliptic part, and a
//! finite-or-cofinite set of parameters for each hyperbolic component. The
//! representation is canonical, so structural equality is set equality.
//!
//! Storage convention for the elliptic part: angles live in π-units on
//! (0,1) ∪ (1,2); the boundary points 0, 1, 2 are never closed and no atom
//! straddles 1. Closures of the paper-style interval notation at 0, π, 2π
//! are not interval data at all — they denote the adjacent parabolic and
//! hyperbolic components and are stored as those flags (see
//! [`bracket_set`]).

use num_traits::Zero;

use crate::angle::{Angle, Lambda};
use crate::class::{ClassId, Sign};
use crate::error::MemberError;
use crate::rat::{rat_to_f64, Rat};

/// Comparison tolerance (π-units for angles, absolute for λ) used when a
/// float-backed parameter meets an exact boundary.
pub const FLOAT_MEMBER_TOL: f64 = 1e-9;

fn one() -> Rat {
    Rat::from_integer(1)
}
fn two() -> Rat {
    Rat::from_integer(2)
}

/// A single angle interval in π-units with independent endpoint closures.
/// Degenerate closed points are allowed. Invariants: `0 <= lo <= hi <= 2`,
/// the special points 0, 1, 2 are never closed, and `lo < 1 < hi` never
/// holds (atoms are split at 1 before storage).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleInterval {
    pub lo: Rat,
    pub hi: Rat,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl AngleInterval {
    pub fn new(lo: Rat, lo_closed: bool, hi: Rat, hi_closed: bool) -> AngleInterval {
        let iv = AngleInterval { lo, hi, lo_closed, hi_closed };
        debug_assert!(iv.well_formed(), "malformed interval {iv:?}");
        iv
    }

    pub fn point(at: Rat) -> AngleInterval {
        AngleInterval::new(at, true, at, true)
    }

    fn well_formed(&self) -> bool {
        let special = |r: Rat| r.is_zero() || r == one() || r == two();
        if self.lo > self.hi || self.lo < Rat::zero() || self.hi > two() {
            return false;
        }
        if self.lo == self.hi && !(self.lo_closed && self.hi_closed) {
            return false;
        }
        if (special(self.lo) && self.lo_closed) || (special(self.hi) && self.hi_closed) {
            return false;
        }
        !(self.lo < one() && self.hi > one())
    }

    fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    pub fn contains(&self, x: Rat) -> bool {
        (self.lo < x || (self.lo == x && self.lo_closed))
            && (x < self.hi || (x == self.hi && self.hi_closed))
    }

    /// Endpoint-swapped reflection x ↦ 2 − x.
    fn reflected(&self) -> AngleInterval {
        AngleInterval::new(two() - self.hi, self.hi_closed, two() - self.lo, self.lo_closed)
    }

    /// Shift by 1 mod 2 (the negation image); atoms never straddle 1 so the
    /// shift stays a single interval.
    fn shifted(&self) -> AngleInterval {
        if self.hi <= one() {
            AngleInterval::new(self.lo + one(), self.lo_closed, self.hi + one(), self.hi_closed)
        } else {
            AngleInterval::new(self.lo - one(), self.lo_closed, self.hi - one(), self.hi_closed)
        }
    }
}

/// Canonical finite union of pairwise-disjoint, non-adjacent angle
/// intervals.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EllipticSet {
    atoms: Vec<AngleInterval>,
}

impl EllipticSet {
    pub fn empty() -> EllipticSet {
        EllipticSet { atoms: Vec::new() }
    }

    /// Full elliptic domain ]0,2π[ ∖ {π}.
    pub fn full() -> EllipticSet {
        EllipticSet {
            atoms: vec![
                AngleInterval::new(Rat::zero(), false, one(), false),
                AngleInterval::new(one(), false, two(), false),
            ],
        }
    }

    /// Normalizes an arbitrary atom list: splits at 1, drops empties,
    /// sorts, merges overlapping and touching intervals.
    pub fn from_atoms(raw: impl IntoIterator<Item = AngleInterval>) -> EllipticSet {
        let mut atoms: Vec<AngleInterval> = Vec::new();
        for iv in raw {
            if iv.is_empty() {
                continue;
            }
            if iv.lo < one() && iv.hi > one() {
                atoms.push(AngleInterval::new(iv.lo, iv.lo_closed, one(), false));
                atoms.push(AngleInterval::new(one(), false, iv.hi, iv.hi_closed));
            } else {
                atoms.push(iv);
            }
        }
        atoms.sort_by(|a, b| {
            a.lo.cmp(&b.lo)
                .then(b.lo_closed.cmp(&a.lo_closed))
                .then(a.hi.cmp(&b.hi))
                .then(b.hi_closed.cmp(&a.hi_closed))
        });
        let mut merged: Vec<AngleInterval> = Vec::new();
        for iv in atoms {
            match merged.last_mut() {
                Some(last)
                    if iv.lo < last.hi
                        || (iv.lo == last.hi && (last.hi_closed || iv.lo_closed)) =>
                {
                    if iv.hi > last.hi || (iv.hi == last.hi && iv.hi_closed) {
                        last.hi = iv.hi;
                        last.hi_closed = iv.hi_closed;
                    }
                }
                _ => merged.push(iv),
            }
        }
        EllipticSet { atoms: merged }
    }

    pub fn atoms(&self) -> &[AngleInterval] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn contains(&self, x: Rat) -> bool {
        self.atoms.iter().any(|iv| iv.contains(x))
    }

    pub fn union(&self, other: &EllipticSet) -> EllipticSet {
        EllipticSet::from_atoms(self.atoms.iter().chain(other.atoms.iter()).copied())
    }

    pub fn intersect(&self, other: &EllipticSet) -> EllipticSet {
        let mut out = Vec::new();
        for a in &self.atoms {
            for b in &other.atoms {
                let (lo, lo_closed) = if a.lo > b.lo {
                    (a.lo, a.lo_closed)
                } else if b.lo > a.lo {
                    (b.lo, b.lo_closed)
                } else {
                    (a.lo, a.lo_closed && b.lo_closed)
                };
                let (hi, hi_closed) = if a.hi < b.hi {
                    (a.hi, a.hi_closed)
                } else if b.hi < a.hi {
                    (b.hi, b.hi_closed)
                } else {
                    (a.hi, a.hi_closed && b.hi_closed)
                };
                if lo < hi || (lo == hi && lo_closed && hi_closed) {
                    out.push(AngleInterval { lo, hi, lo_closed, hi_closed });
                }
            }
        }
        EllipticSet::from_atoms(out)
    }

    /// Complement within the elliptic domain (0,1) ∪ (1,2).
    pub fn complement(&self) -> EllipticSet {
        let mut out = Vec::new();
        // walk each half separately
        for (dom_lo, dom_hi) in [(Rat::zero(), one()), (one(), two())] {
            let mut cur = dom_lo;
            let mut cur_closed = false; // domain boundary open
            for iv in self.atoms.iter().filter(|iv| iv.lo >= dom_lo && iv.hi <= dom_hi) {
                let gap = AngleInterval {
                    lo: cur,
                    lo_closed: cur_closed,
                    hi: iv.lo,
                    hi_closed: !iv.lo_closed,
                };
                if !gap.is_empty() {
                    out.push(gap);
                }
                cur = iv.hi;
                cur_closed = !iv.hi_closed;
            }
            let tail = AngleInterval { lo: cur, lo_closed: cur_closed, hi: dom_hi, hi_closed: false };
            if !tail.is_empty() {
                out.push(tail);
            }
        }
        EllipticSet::from_atoms(out)
    }

    fn negated(&self) -> EllipticSet {
        EllipticSet::from_atoms(self.atoms.iter().map(|iv| iv.shifted()))
    }

    fn inverted(&self) -> EllipticSet {
        EllipticSet::from_atoms(self.atoms.iter().map(|iv| iv.reflected()))
    }

    /// Membership for a float-backed angle, with an undecidability band
    /// around every boundary.
    fn contains_f64(&self, x: f64, tol: f64) -> Result<bool, MemberError> {
        for iv in &self.atoms {
            let lo = rat_to_f64(iv.lo);
            let hi = rat_to_f64(iv.hi);
            if (x - lo).abs() <= tol || (x - hi).abs() <= tol {
                return Err(MemberError::FloatAngleUndecidable { value: x, tol });
            }
            if x > lo && x < hi {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Finite or cofinite set of hyperbolic parameters over one sign component
/// (all values > 1 or all < −1). `Cofinite(vec![])` is the full component.
#[derive(Debug, Clone, PartialEq)]
pub enum HypSet {
    Finite(Vec<Rat>),
    Cofinite(Vec<Rat>),
}

impl HypSet {
    pub fn empty() -> HypSet {
        HypSet::Finite(Vec::new())
    }

    pub fn full() -> HypSet {
        HypSet::Cofinite(Vec::new())
    }

    pub fn single(l: Rat) -> HypSet {
        HypSet::Finite(vec![l])
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, HypSet::Finite(v) if v.is_empty())
    }

    pub fn is_full(&self) -> bool {
        matches!(self, HypSet::Cofinite(v) if v.is_empty())
    }

    fn norm(mut v: Vec<Rat>) -> Vec<Rat> {
        v.sort();
        v.dedup();
        v
    }

    pub fn contains(&self, l: Rat) -> bool {
        match self {
            HypSet::Finite(v) => v.contains(&l),
            HypSet::Cofinite(v) => !v.contains(&l),
        }
    }

    pub fn union(&self, other: &HypSet) -> HypSet {
        match (self, other) {
            (HypSet::Finite(a), HypSet::Finite(b)) => {
                HypSet::Finite(Self::norm(a.iter().chain(b).copied().collect()))
            }
            (HypSet::Finite(a), HypSet::Cofinite(b)) | (HypSet::Cofinite(b), HypSet::Finite(a)) => {
                HypSet::Cofinite(b.iter().filter(|x| !a.contains(x)).copied().collect())
            }
            (HypSet::Cofinite(a), HypSet::Cofinite(b)) => {
                HypSet::Cofinite(a.iter().filter(|x| b.contains(x)).copied().collect())
            }
        }
    }

    pub fn intersect(&self, other: &HypSet) -> HypSet {
        match (self, other) {
            (HypSet::Finite(a), HypSet::Finite(b)) => {
                HypSet::Finite(a.iter().filter(|x| b.contains(x)).copied().collect())
            }
            (HypSet::Finite(a), HypSet::Cofinite(b)) | (HypSet::Cofinite(b), HypSet::Finite(a)) => {
                HypSet::Finite(a.iter().filter(|x| !b.contains(x)).copied().collect())
            }
            (HypSet::Cofinite(a), HypSet::Cofinite(b)) => {
                HypSet::Cofinite(Self::norm(a.iter().chain(b).copied().collect()))
            }
        }
    }

    pub fn complement(&self) -> HypSet {
        match self {
            HypSet::Finite(v) => HypSet::Cofinite(v.clone()),
            HypSet::Cofinite(v) => HypSet::Finite(v.clone()),
        }
    }

    /// λ ↦ −λ, mapping this component onto the other one.
    pub fn negated(&self) -> HypSet {
        match self {
            HypSet::Finite(v) => HypSet::Finite(Self::norm(v.iter().map(|x| -*x).collect())),
            HypSet::Cofinite(v) => HypSet::Cofinite(Self::norm(v.iter().map(|x| -*x).collect())),
        }
    }

    fn contains_f64(&self, x: f64, tol: f64) -> Result<bool, MemberError> {
        let near = |v: &Vec<Rat>| v.iter().any(|r| (rat_to_f64(*r) - x).abs() <= tol);
        match self {
            HypSet::Finite(v) => {
                if near(v) {
                    Err(MemberError::FloatLambdaUndecidable { value: x, tol })
                } else {
                    Ok(false)
                }
            }
            HypSet::Cofinite(v) => {
                if near(v) {
                    Err(MemberError::FloatLambdaUndecidable { value: x, tol })
                } else {
                    Ok(true)
                }
            }
        }
    }
}

/// Conjugation-invariant subset of SL₂(ℝ) in canonical component-wise form.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassSet {
    pub has_i: bool,
    pub has_neg_i: bool,
    /// Parabolic flags indexed by (ε, δ): ++, +−, −+, −−.
    pub par_pp: bool,
    pub par_pm: bool,
    pub par_mp: bool,
    pub par_mm: bool,
    pub ell: EllipticSet,
    /// Hyperbolic parameters λ > 1.
    pub hyp_pos: HypSet,
    /// Hyperbolic parameters λ < −1.
    pub hyp_neg: HypSet,
}

/// Endpoint decoration for [`bracket_set`]: plain open, closed (adjoining
/// the parabolic class at special points), or closed-with-angle-bracket
/// (additionally adjoining a full hyperbolic component).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum End {
    Open,
    Closed,
    Hyp,
}

/// Builds the paper-style decorated interval of elliptic classes.
///
/// At the special endpoints the decoration denotes neighbouring components:
/// `[0` adjoins C2[++], `π]` adjoins C2[-+], `[π` adjoins C2[--], `2π]`
/// adjoins C2[+-]; the angle bracket additionally adjoins C4+ at 0 or 2π
/// and C4− at π. At interior endpoints `Closed` is ordinary interval
/// closure and `Hyp` is invalid.
pub fn bracket_set(lo_end: End, lo: Rat, hi: Rat, hi_end: End) -> ClassSet {
    assert!(lo < hi, "bracket_set needs a nonempty interval");
    let mut s = ClassSet::empty();
    let special = |r: Rat| r.is_zero() || r == one() || r == two();
    let (mut lo_closed, mut hi_closed) = (false, false);
    match (special(lo), lo_end) {
        (_, End::Open) => {}
        (true, closure) => {
            if lo.is_zero() {
                s.par_pp = true;
                if closure == End::Hyp {
                    s.hyp_pos = HypSet::full();
                }
            } else {
                s.par_mm = true;
                if closure == End::Hyp {
                    s.hyp_neg = HypSet::full();
                }
            }
        }
        (false, End::Closed) => lo_closed = true,
        (false, End::Hyp) => panic!("angle-bracket closure only exists at 0, pi, 2pi"),
    }
    match (special(hi), hi_end) {
        (_, End::Open) => {}
        (true, closure) => {
            if hi == one() {
                s.par_mp = true;
                if closure == End::Hyp {
                    s.hyp_neg = HypSet::full();
                }
            } else {
                s.par_pm = true;
                if closure == End::Hyp {
                    s.hyp_pos = HypSet::full();
                }
            }
        }
        (false, End::Closed) => hi_closed = true,
        (false, End::Hyp) => panic!("angle-bracket closure only exists at 0, pi, 2pi"),
    }
    s.ell = EllipticSet::from_atoms([AngleInterval { lo, hi, lo_closed, hi_closed }]);
    s
}

impl ClassSet {
    pub fn empty() -> ClassSet {
        ClassSet {
            has_i: false,
            has_neg_i: false,
            par_pp: false,
            par_pm: false,
            par_mp: false,
            par_mm: false,
            ell: EllipticSet::empty(),
            hyp_pos: HypSet::empty(),
            hyp_neg: HypSet::empty(),
        }
    }

    /// The whole group.
    pub fn full() -> ClassSet {
        ClassSet {
            has_i: true,
            has_neg_i: true,
            par_pp: true,
            par_pm: true,
            par_mp: true,
            par_mm: true,
            ell: EllipticSet::full(),
            hyp_pos: HypSet::full(),
            hyp_neg: HypSet::full(),
        }
    }

    /// G⁺ = closure(C4⁺) ∪ elliptic ]0,π[.
    pub fn gplus() -> ClassSet {
        let mut s = ClassSet::empty();
        s.has_i = true;
        s.par_pp = true;
        s.par_pm = true;
        s.hyp_pos = HypSet::full();
        s.ell = EllipticSet::from_atoms([AngleInterval::new(Rat::zero(), false, one(), false)]);
        s
    }

    /// Topological closure of one full hyperbolic component: the component
    /// itself, the matching scalar and both parabolic classes of that sign.
    pub fn hyperbolic_closure(sign: Sign) -> ClassSet {
        let mut s = ClassSet::empty();
        match sign {
            Sign::Pos => {
                s.has_i = true;
                s.par_pp = true;
                s.par_pm = true;
                s.hyp_pos = HypSet::full();
            }
            Sign::Neg => {
                s.has_neg_i = true;
                s.par_mp = true;
                s.par_mm = true;
                s.hyp_neg = HypSet::full();
            }
        }
        s
    }

    /// The set containing exactly one class. Requires an exact parameter;
    /// float-backed classes only support membership tests.
    pub fn singleton(id: ClassId) -> ClassSet {
        let mut s = ClassSet::empty();
        match id {
            ClassId::Scalar(Sign::Pos) => s.has_i = true,
            ClassId::Scalar(Sign::Neg) => s.has_neg_i = true,
            ClassId::Parabolic(eps, delta) => s.set_par(eps, delta, true),
            ClassId::Elliptic(a) => {
                s.ell = EllipticSet::from_atoms([AngleInterval::point(a.require_exact())]);
            }
            ClassId::Hyperbolic(l) => {
                let v = l.require_exact();
                if v > Rat::zero() {
                    s.hyp_pos = HypSet::single(v);
                } else {
                    s.hyp_neg = HypSet::single(v);
                }
            }
        }
        s
    }

    pub fn par(&self, eps: Sign, delta: Sign) -> bool {
        match (eps, delta) {
            (Sign::Pos, Sign::Pos) => self.par_pp,
            (Sign::Pos, Sign::Neg) => self.par_pm,
            (Sign::Neg, Sign::Pos) => self.par_mp,
            (Sign::Neg, Sign::Neg) => self.par_mm,
        }
    }

    pub fn set_par(&mut self, eps: Sign, delta: Sign, v: bool) {
        match (eps, delta) {
            (Sign::Pos, Sign::Pos) => self.par_pp = v,
            (Sign::Pos, Sign::Neg) => self.par_pm = v,
            (Sign::Neg, Sign::Pos) => self.par_mp = v,
            (Sign::Neg, Sign::Neg) => self.par_mm = v,
        }
    }

    pub fn is_empty(&self) -> bool {
        *self == ClassSet::empty()
    }

    pub fn union(&self, other: &ClassSet) -> ClassSet {
        ClassSet {
            has_i: self.has_i || other.has_i,
            has_neg_i: self.has_neg_i || other.has_neg_i,
            par_pp: self.par_pp || other.par_pp,
            par_pm: self.par_pm || other.par_pm,
            par_mp: self.par_mp || other.par_mp,
            par_mm: self.par_mm || other.par_mm,
            ell: self.ell.union(&other.ell),
            hyp_pos: self.hyp_pos.union(&other.hyp_pos),
            hyp_neg: self.hyp_neg.union(&other.hyp_neg),
        }
    }

    pub fn intersect(&self, other: &ClassSet) -> ClassSet {
        ClassSet {
            has_i: self.has_i && other.has_i,
            has_neg_i: self.has_neg_i && other.has_neg_i,
            par_pp: self.par_pp && other.par_pp,
            par_pm: self.par_pm && other.par_pm,
            par_mp: self.par_mp && other.par_mp,
            par_mm: self.par_mm && other.par_mm,
            ell: self.ell.intersect(&other.ell),
            hyp_pos: self.hyp_pos.intersect(&other.hyp_pos),
            hyp_neg: self.hyp_neg.intersect(&other.hyp_neg),
        }
    }

    pub fn complement(&self) -> ClassSet {
        ClassSet {
            has_i: !self.has_i,
            has_neg_i: !self.has_neg_i,
            par_pp: !self.par_pp,
            par_pm: !self.par_pm,
            par_mp: !self.par_mp,
            par_mm: !self.par_mm,
            ell: self.ell.complement(),
            hyp_pos: self.hyp_pos.complement(),
            hyp_neg: self.hyp_neg.complement(),
        }
    }

    pub fn minus(&self, other: &ClassSet) -> ClassSet {
        self.intersect(&other.complement())
    }

    /// Image under m ↦ −m at class level. Involution.
    pub fn negate(&self) -> ClassSet {
        ClassSet {
            has_i: self.has_neg_i,
            has_neg_i: self.has_i,
            par_pp: self.par_mm,
            par_pm: self.par_mp,
            par_mp: self.par_pm,
            par_mm: self.par_pp,
            ell: self.ell.negated(),
            hyp_pos: self.hyp_neg.negated(),
            hyp_neg: self.hyp_pos.negated(),
        }
    }

    /// Image under m ↦ m⁻¹ at class level. Involution.
    pub fn invert(&self) -> ClassSet {
        ClassSet {
            has_i: self.has_i,
            has_neg_i: self.has_neg_i,
            par_pp: self.par_pm,
            par_pm: self.par_pp,
            par_mp: self.par_mm,
            par_mm: self.par_mp,
            ell: self.ell.inverted(),
            hyp_pos: self.hyp_pos.clone(),
            hyp_neg: self.hyp_neg.clone(),
        }
    }

    pub fn apply_sign(&self, s: Sign) -> ClassSet {
        match s {
            Sign::Pos => self.clone(),
            Sign::Neg => self.negate(),
        }
    }

    /// Exact membership. Float-backed parameters are compared with a
    /// tolerance band and report an error inside the band.
    pub fn member(&self, id: ClassId) -> Result<bool, MemberError> {
        match id {
            ClassId::Scalar(Sign::Pos) => Ok(self.has_i),
            ClassId::Scalar(Sign::Neg) => Ok(self.has_neg_i),
            ClassId::Parabolic(eps, delta) => Ok(self.par(eps, delta)),
            ClassId::Elliptic(a) => match a.exact_value() {
                Some(r) => Ok(self.ell.contains(r)),
                None => self.ell.contains_f64(a.as_f64(), FLOAT_MEMBER_TOL),
            },
            ClassId::Hyperbolic(l) => {
                let side = |exact: &HypSet| -> Result<bool, MemberError> {
                    match l.exact_value() {
                        Some(r) => Ok(exact.contains(r)),
                        None => exact.contains_f64(l.as_f64(), FLOAT_MEMBER_TOL),
                    }
                };
                if l.is_positive() {
                    side(&self.hyp_pos)
                } else {
                    side(&self.hyp_neg)
                }
            }
        }
    }

    /// Membership for exact classes; panics on float-backed input.
    pub fn member_exact(&self, id: ClassId) -> bool {
        self.member(id).expect("exact class id expected")
    }

    /// True when `other` is a subset of `self`.
    pub fn contains_set(&self, other: &ClassSet) -> bool {
        &self.intersect(other) == other
    }

    /// Deterministic representative class, preferring cheap exact probes:
    /// scalars, then parabolics, then elliptic atom endpoints/midpoints,
    /// then small hyperbolic parameters.
    pub fn pick_representative(&self) -> Option<ClassId> {
        if self.has_i {
            return Some(ClassId::Scalar(Sign::Pos));
        }
        if self.has_neg_i {
            return Some(ClassId::Scalar(Sign::Neg));
        }
        for (flag, eps, delta) in [
            (self.par_pp, Sign::Pos, Sign::Pos),
            (self.par_pm, Sign::Pos, Sign::Neg),
            (self.par_mp, Sign::Neg, Sign::Pos),
            (self.par_mm, Sign::Neg, Sign::Neg),
        ] {
            if flag {
                return Some(ClassId::Parabolic(eps, delta));
            }
        }
        if let Some(iv) = self.ell.atoms().first() {
            let v = if iv.lo_closed { iv.lo } else { (iv.lo + iv.hi) / two() };
            return Some(ClassId::Elliptic(Angle::exact(v).expect("atom interior")));
        }
        let probe = |set: &HypSet, sign: i64| -> Option<Rat> {
            match set {
                HypSet::Finite(v) => v.first().copied(),
                HypSet::Cofinite(ex) => (3..)
                    .map(|k| Rat::new(sign * k, 2))
                    .find(|cand| !ex.contains(cand)),
            }
        };
        if !self.hyp_pos.is_empty() {
            return probe(&self.hyp_pos, 1).map(|r| ClassId::Hyperbolic(Lambda::exact(r).unwrap()));
        }
        if !self.hyp_neg.is_empty() {
            return probe(&self.hyp_neg, -1).map(|r| ClassId::Hyperbolic(Lambda::exact(r).unwrap()));
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn ei(lo: (i64, i64), lc: bool, hi: (i64, i64), hc: bool) -> AngleInterval {
        AngleInterval::new(rat(lo.0, lo.1), lc, rat(hi.0, hi.1), hc)
    }

    #[test]
    fn atoms_split_at_one() {
        let s = EllipticSet::from_atoms([AngleInterval {
            lo: rat(1, 2),
            lo_closed: true,
            hi: rat(3, 2),
            hi_closed: false,
        }]);
        assert_eq!(s.atoms().len(), 2);
        assert!(s.contains(rat(3, 4)));
        assert!(s.contains(rat(5, 4)));
        assert!(!s.contains(rat(1, 1)));
    }

    #[test]
    fn union_merges_touching() {
        let a = EllipticSet::from_atoms([ei((1, 4), true, (1, 2), false)]);
        let b = EllipticSet::from_atoms([ei((1, 2), true, (3, 4), true)]);
        let u = a.union(&b);
        assert_eq!(u.atoms(), &[ei((1, 4), true, (3, 4), true)]);
        // both open at the shared endpoint: the point stays excluded
        let c = EllipticSet::from_atoms([ei((1, 4), true, (1, 2), false)]);
        let d = EllipticSet::from_atoms([ei((1, 2), false, (3, 4), true)]);
        assert_eq!(c.union(&d).atoms().len(), 2);
    }

    #[test]
    fn point_atoms_merge_into_neighbours() {
        let a = EllipticSet::from_atoms([ei((1, 3), false, (1, 2), false)]);
        let p = EllipticSet::from_atoms([AngleInterval::point(rat(1, 2))]);
        let u = a.union(&p);
        assert_eq!(u.atoms(), &[ei((1, 3), false, (1, 2), true)]);
    }

    #[test]
    fn complement_roundtrip() {
        let s = EllipticSet::from_atoms([
            ei((1, 6), true, (1, 3), false),
            AngleInterval::point(rat(1, 2)),
            ei((5, 4), false, (7, 4), true),
        ]);
        let c = s.complement();
        assert_eq!(c.complement(), s);
        assert!(c.contains(rat(1, 3)));
        assert!(!c.contains(rat(1, 2)));
        assert!(c.contains(rat(9, 8)));
        // union is the full domain
        assert_eq!(s.union(&c), EllipticSet::full());
    }

    #[test]
    fn hyp_algebra() {
        let a = HypSet::Finite(vec![rat(3, 2), rat(2, 1)]);
        let b = HypSet::Cofinite(vec![rat(2, 1)]);
        assert_eq!(a.union(&b), HypSet::full());
        assert_eq!(a.intersect(&b), HypSet::Finite(vec![rat(3, 2)]));
        assert_eq!(b.complement(), HypSet::Finite(vec![rat(2, 1)]));
        assert!(HypSet::full().contains(rat(7, 2)));
    }

    #[test]
    fn classset_boolean_basics() {
        let g = ClassSet::full();
        let gp = ClassSet::gplus();
        assert_eq!(ClassSet::empty().complement(), g);
        assert!(gp.intersect(&gp.complement()).is_empty());
        assert_eq!(gp.union(&gp.complement()), g);
        assert_eq!(g.minus(&gp), gp.complement());
    }

    #[test]
    fn negate_invert_involutions() {
        let s = bracket_set(End::Hyp, rat(0, 1), rat(1, 2), End::Open)
            .union(&ClassSet::singleton(ClassId::Scalar(Sign::Neg)))
            .union(&ClassSet::singleton(ClassId::hyperbolic(rat(-5, 2))));
        assert_eq!(s.negate().negate(), s);
        assert_eq!(s.invert().invert(), s);
        assert_eq!(s.negate().invert(), s.invert().negate());
        // negate of C2[+-] is C2[-+]
        let pm = ClassSet::singleton(ClassId::Parabolic(Sign::Pos, Sign::Neg));
        assert!(pm.negate().par_mp);
        // gplus negated covers the other half
        assert_eq!(ClassSet::gplus().union(&ClassSet::gplus().negate()), ClassSet::full());
    }

    #[test]
    fn bracket_semantics() {
        // ⟨[0,π] : C4+ ∪ C2[++] ∪ ]0,π[ ∪ C2[-+]
        let s = bracket_set(End::Hyp, rat(0, 1), rat(1, 1), End::Closed);
        assert!(s.hyp_pos.is_full());
        assert!(s.par_pp && s.par_mp);
        assert!(!s.par_pm && !s.par_mm);
        assert!(s.ell.contains(rat(1, 2)));
        assert!(!s.ell.contains(rat(3, 2)));
        assert!(s.hyp_neg.is_empty());
        // [π,2π] : C2[--] ∪ ]π,2π[ ∪ C2[+-]
        let t = bracket_set(End::Closed, rat(1, 1), rat(2, 1), End::Closed);
        assert!(t.par_mm && t.par_pm && !t.par_pp && !t.par_mp);
        // interior closures are interval data
        let u = bracket_set(End::Closed, rat(1, 3), rat(1, 1), End::Hyp);
        assert!(u.ell.contains(rat(1, 3)));
        assert!(u.par_mp && u.hyp_neg.is_full());
    }

    #[test]
    fn member_examples() {
        let s = bracket_set(End::Closed, rat(0, 1), rat(1, 1), End::Closed);
        assert!(s.member_exact(ClassId::Parabolic(Sign::Neg, Sign::Pos)));
        assert!(ClassSet::full()
            .member_exact(ClassId::hyperbolic(rat(7, 2))));
        // float-backed angle near a boundary is undecidable
        let f = ClassId::Elliptic(Angle::approx(0.5 + 1e-12).unwrap());
        let set = bracket_set(End::Open, rat(1, 2), rat(1, 1), End::Open);
        assert!(set.member(f).is_err());
        let f2 = ClassId::Elliptic(Angle::approx(0.75).unwrap());
        assert_eq!(set.member(f2).unwrap(), true);
    }
}
