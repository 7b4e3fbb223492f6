//! The PSL₂(ℝ) quotient: negate-invariant class sets, products and
//! covering numbers.

use crate::class::{ClassId, Sign};
use crate::notation::format_notation;
use crate::product::{product_n, product_set_class, ProductQuery};
use crate::rat::{rat, Rat};
use crate::set::{ClassSet, HypSet};

/// A subset of PSL₂(ℝ) closed under conjugation, stored as its
/// negate-invariant lift to SL₂(ℝ). The identity class Ĩ is present
/// exactly when the lift contains ±I (both, by invariance).
#[derive(Debug, Clone, PartialEq)]
pub struct PslClassSet {
    lift: ClassSet,
}

impl PslClassSet {
    pub fn empty() -> PslClassSet {
        PslClassSet { lift: ClassSet::empty() }
    }

    /// The whole quotient group.
    pub fn full() -> PslClassSet {
        PslClassSet { lift: ClassSet::full() }
    }

    /// Everything except the identity class.
    pub fn full_minus_identity() -> PslClassSet {
        let mut lift = ClassSet::full();
        lift.has_i = false;
        lift.has_neg_i = false;
        PslClassSet { lift }
    }

    /// The image of a single conjugacy class.
    pub fn from_class(id: ClassId) -> PslClassSet {
        project(&ClassSet::singleton(id))
    }

    pub fn lift(&self) -> &ClassSet {
        &self.lift
    }

    pub fn has_identity(&self) -> bool {
        self.lift.has_i
    }

    /// Membership of the image of an SL₂ class.
    pub fn member(&self, id: ClassId) -> bool {
        self.lift.member_exact(id)
    }

    pub fn union(&self, other: &PslClassSet) -> PslClassSet {
        PslClassSet { lift: self.lift.union(&other.lift) }
    }

    /// Notation for the common shapes; everything else renders its lift.
    pub fn notation(&self) -> String {
        if *self == PslClassSet::full() {
            "G~".to_string()
        } else if *self == PslClassSet::full_minus_identity() {
            "G~\\{I~}".to_string()
        } else if self.lift.is_empty() {
            "G~^c".to_string()
        } else {
            format!("[{}]~", format_notation(&self.lift))
        }
    }
}

/// Projection to the quotient: union with the negation image.
pub fn psl2_project(x: &ClassSet) -> PslClassSet {
    PslClassSet { lift: x.union(&x.negate()) }
}

fn project(x: &ClassSet) -> PslClassSet {
    psl2_project(x)
}

/// Decomposes a lift into single classes when it consists of finitely many.
fn finite_classes(x: &ClassSet) -> Option<Vec<ClassId>> {
    let mut out = Vec::new();
    if x.has_i {
        out.push(ClassId::Scalar(Sign::Pos));
    }
    if x.has_neg_i {
        out.push(ClassId::Scalar(Sign::Neg));
    }
    for (flag, e, d) in [
        (x.par_pp, Sign::Pos, Sign::Pos),
        (x.par_pm, Sign::Pos, Sign::Neg),
        (x.par_mp, Sign::Neg, Sign::Pos),
        (x.par_mm, Sign::Neg, Sign::Neg),
    ] {
        if flag {
            out.push(ClassId::Parabolic(e, d));
        }
    }
    for iv in x.ell.atoms() {
        if iv.lo != iv.hi {
            return None;
        }
        out.push(ClassId::elliptic(iv.lo));
    }
    match (&x.hyp_pos, &x.hyp_neg) {
        (HypSet::Finite(a), HypSet::Finite(b)) => {
            for l in a.iter().chain(b) {
                out.push(ClassId::hyperbolic(*l));
            }
        }
        _ => return None,
    }
    Some(out)
}

/// Product in the quotient, computed by lifting, multiplying in SL₂(ℝ) and
/// projecting. Factors after the first must decompose into finitely many
/// classes (single projected classes always do).
pub fn psl2_product(factors: &[PslClassSet]) -> PslClassSet {
    assert!(!factors.is_empty(), "a product needs at least one factor");
    let mut acc = factors[0].lift.clone();
    for f in &factors[1..] {
        let classes = finite_classes(&f.lift)
            .expect("later PSL2 factors must decompose into finitely many classes");
        let mut next = ClassSet::empty();
        for c in classes {
            next = next.union(&product_set_class(&acc, c));
        }
        acc = next;
    }
    project(&acc)
}

/// n-th power of the image of a class in the quotient.
pub fn psl2_power(id: ClassId, n: usize) -> PslClassSet {
    project(&product_n(&ProductQuery::new(vec![id; n])))
}

/// Outcome of the covering-number sweep.
#[derive(Debug, Clone)]
pub struct CoveringReport {
    /// Least n with C̃ⁿ = G̃ for every probed non-trivial class.
    pub cn: u32,
    /// Least n with every n-fold product of probed classes equal to G̃.
    pub ecn: u32,
    /// A probe class whose cube misses part of the quotient, forcing
    /// cn ≥ 4, with the missing piece's notation.
    pub cn_witness: (ClassId, String),
    /// A triple of probe classes whose product misses part of the
    /// quotient, forcing ecn ≥ 4.
    pub ecn_witness: (Vec<ClassId>, String),
}

/// The default probe grid: elliptic angles kπ/12, both positive parabolic
/// orientations and two hyperbolic parameters — one projected
/// representative per class family.
pub fn default_probe_grid() -> Vec<ClassId> {
    let mut probes = Vec::new();
    for k in 1..12 {
        probes.push(ClassId::elliptic(rat(k, 12)));
    }
    probes.push(ClassId::Parabolic(Sign::Pos, Sign::Pos));
    probes.push(ClassId::Parabolic(Sign::Pos, Sign::Neg));
    probes.push(ClassId::hyperbolic(rat(3, 2)));
    probes.push(ClassId::hyperbolic(rat(2, 1)));
    probes
}

/// Computes (cn, ecn) for the quotient over the probe grid and records the
/// worst witnesses. Both numbers are suprema over the probes; the grid
/// covers all class families, and the failing cubes are exactly the
/// elliptic classes whose tripled angle lands strictly between π and 2π.
pub fn covering_numbers(probes: &[ClassId]) -> CoveringReport {
    let full = PslClassSet::full();
    let mut cn = 1;
    let mut cn_witness = None;
    for &c in probes {
        let mut least = None;
        for n in 1..=4 {
            if psl2_power(c, n) == full {
                least = Some(n as u32);
                break;
            }
        }
        let least = least.expect("every class covers the quotient by its fourth power");
        if least > cn {
            cn = least;
            let missing = full.lift.minus(psl2_power(c, (least - 1) as usize).lift());
            cn_witness = Some((c, format_notation(&missing)));
        }
    }
    // ecn: smallest n such that no n-tuple from the grid fails
    let mut ecn = 1;
    let mut ecn_witness = None;
    'outer: for n in (2..=4).rev() {
        for tuple in tuples(probes, n) {
            let prod = psl2_product(&tuple.iter().map(|c| PslClassSet::from_class(*c)).collect::<Vec<_>>());
            if prod != full {
                ecn = n as u32 + 1;
                let missing = full.lift.minus(prod.lift());
                ecn_witness = Some((tuple, format_notation(&missing)));
                break 'outer;
            }
        }
    }
    CoveringReport {
        cn,
        ecn,
        cn_witness: cn_witness.expect("some probe must fail below the covering number"),
        ecn_witness: ecn_witness.expect("some tuple must fail below the extended covering number"),
    }
}

fn tuples(probes: &[ClassId], n: usize) -> Vec<Vec<ClassId>> {
    let mut out: Vec<Vec<ClassId>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                probes.iter().map(move |c| {
                    let mut t2 = t.clone();
                    t2.push(*c);
                    t2
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp() -> ClassId {
        ClassId::Parabolic(Sign::Pos, Sign::Pos)
    }
    fn pm() -> ClassId {
        ClassId::Parabolic(Sign::Pos, Sign::Neg)
    }
    fn e(n: i64, d: i64) -> ClassId {
        ClassId::elliptic(rat(n, d))
    }
    fn h(n: i64, d: i64) -> ClassId {
        ClassId::hyperbolic(rat(n, d))
    }
    fn tprod(ids: &[ClassId]) -> PslClassSet {
        psl2_product(&ids.iter().map(|c| PslClassSet::from_class(*c)).collect::<Vec<_>>())
    }

    #[test]
    fn projection_identifies_negatives() {
        let t = PslClassSet::from_class(e(1, 3));
        assert!(t.member(e(1, 3)));
        assert!(t.member(e(4, 3)));
        assert!(!t.member(e(1, 2)));
        let s = PslClassSet::from_class(ClassId::Scalar(Sign::Neg));
        assert!(s.has_identity());
    }

    #[test]
    fn double_products() {
        assert_eq!(tprod(&[h(2, 1), h(2, 1)]), PslClassSet::full());
        assert_eq!(tprod(&[pp(), pp()]), PslClassSet::full_minus_identity());
        assert_eq!(tprod(&[pm(), pm()]), PslClassSet::full_minus_identity());
        assert_eq!(tprod(&[h(2, 1), e(1, 3)]), PslClassSet::full_minus_identity());
        assert_eq!(tprod(&[h(2, 1), h(3, 2)]), PslClassSet::full_minus_identity());
    }

    #[test]
    fn triple_products() {
        // the listed families are everything-but-identity
        assert_eq!(tprod(&[pp(), pm(), e(1, 3)]), PslClassSet::full_minus_identity());
        assert_eq!(tprod(&[pm(), e(1, 3), e(1, 2)]), PslClassSet::full_minus_identity());
        assert_eq!(tprod(&[pp(), e(1, 2), e(1, 2)]), PslClassSet::full_minus_identity());
        assert_eq!(tprod(&[pp(), e(2, 3), e(2, 3)]), PslClassSet::full_minus_identity());
        assert_eq!(tprod(&[e(1, 2), e(1, 2), e(1, 2)]), PslClassSet::full_minus_identity());
        // any other triple covers the quotient
        assert_eq!(tprod(&[e(1, 12), e(1, 12), e(1, 12)]), PslClassSet::full());
        assert_eq!(tprod(&[pp(), pp(), pp()]), PslClassSet::full());
        assert_eq!(tprod(&[h(2, 1), pp(), pm()]), PslClassSet::full());
    }

    #[test]
    fn quadruples_cover() {
        assert_eq!(tprod(&[e(1, 2); 4]), PslClassSet::full());
        assert_eq!(tprod(&[pp(), pm(), e(5, 12), h(3, 2)]), PslClassSet::full());
    }

    #[test]
    fn covering_is_four_four() {
        let report = covering_numbers(&default_probe_grid());
        assert_eq!((report.cn, report.ecn), (4, 4));
        // a mid-range elliptic witness: the cube misses the identity class
        assert!(matches!(report.cn_witness.0, ClassId::Elliptic(_)));
        // small-angle cubes already cover the quotient
        assert_eq!(psl2_power(e(1, 12), 3), PslClassSet::full());
        assert_ne!(psl2_power(e(5, 12), 3), PslClassSet::full());
        assert_eq!(psl2_power(h(2, 1), 2), PslClassSet::full());
    }
}
