//! Closed-form products of conjugacy classes.
//!
//! Every pairwise row is normalized into G⁺ first (each class or its
//! negative lies there), evaluated against the reconstructed table and the
//! accumulated sign is applied once at the end. Set×class products
//! decompose the set into scalar, parabolic, hyperbolic and
//! elliptic-interval pieces; the elliptic pieces use parameterized unions
//! whose endpoints are the images of the interval endpoints (closed end ⟹
//! attained). n-fold products fold pairwise rows; an independent direct
//! path covers n = 3 and 4 in closed form and the two are cross-checked in
//! the tests.

use crate::angle::Lambda;
use crate::class::{ClassId, Sign};
use crate::rat::{rat_to_string, Rat};
use crate::set::{bracket_set, AngleInterval, ClassSet, End, HypSet};

fn one() -> Rat {
    Rat::from_integer(1)
}
fn two() -> Rat {
    Rat::from_integer(2)
}

/// An ordered list of class factors.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductQuery {
    pub factors: Vec<ClassId>,
}

impl ProductQuery {
    pub fn new(factors: Vec<ClassId>) -> ProductQuery {
        assert!(!factors.is_empty(), "a product needs at least one factor");
        ProductQuery { factors }
    }
}

/// A non-scalar class normalized into G⁺: ε = + parabolics, elliptic
/// angles in ]0,π[, hyperbolic parameters λ > 1.
#[derive(Debug, Clone, Copy, PartialEq)]
enum GplusClass {
    Par(Sign),
    Ell(Rat),
    Hyp(Lambda),
}

fn to_gplus(id: ClassId) -> (GplusClass, Sign) {
    let (n, s) = id.normalize_to_gplus();
    let g = match n {
        ClassId::Parabolic(_, delta) => GplusClass::Par(delta),
        ClassId::Elliptic(a) => GplusClass::Ell(a.require_exact()),
        ClassId::Hyperbolic(l) => GplusClass::Hyp(l),
        ClassId::Scalar(_) => unreachable!("scalars are stripped before table lookup"),
    };
    (g, s)
}

/// Tolerance used for float-backed hyperbolic parameter coincidence.
const LAMBDA_EQ_TOL: f64 = 1e-9;

/// The set {I} ∪ {−I} complemented: every non-scalar class.
fn nonscalar() -> ClassSet {
    let mut s = ClassSet::full();
    s.has_i = false;
    s.has_neg_i = false;
    s
}

/// Pairwise product of two classes normalized into G⁺.
///
/// The elliptic×elliptic, elliptic×parabolic and parabolic×parabolic rows
/// come from the trace-range lemmas combined with the orientation
/// exclusion (a product of a ]0,π]-side class with a positive-hyperbolic
/// closure member never lands on the [π,2π] side); hyperbolic rows hold
/// every trace, with the per-trace class fixed by the same exclusion and
/// scalar membership by inverse/negation coincidence.
fn pair_gplus(x: GplusClass, y: GplusClass) -> ClassSet {
    use GplusClass::*;
    match (x, y) {
        (Par(d1), Par(d2)) => match (d1, d2) {
            (Sign::Pos, Sign::Pos) => bracket_set(End::Closed, Rat::from_integer(0), one(), End::Hyp),
            (Sign::Neg, Sign::Neg) => bracket_set(End::Hyp, one(), two(), End::Closed),
            _ => ClassSet::hyperbolic_closure(Sign::Pos),
        },
        (Ell(a), Par(d)) | (Par(d), Ell(a)) => match d {
            Sign::Pos => bracket_set(End::Open, a, one(), End::Hyp),
            Sign::Neg => bracket_set(End::Hyp, Rat::from_integer(0), a, End::Open),
        },
        (Ell(a), Ell(b)) => {
            let s = a + b;
            if s < one() {
                bracket_set(End::Closed, s, one(), End::Hyp)
            } else if s == one() {
                let mut out = ClassSet::singleton(ClassId::Scalar(Sign::Neg));
                out.hyp_neg = HypSet::full();
                out
            } else {
                bracket_set(End::Hyp, one(), s, End::Closed)
            }
        }
        (Hyp(_), Ell(_)) | (Ell(_), Hyp(_)) | (Hyp(_), Par(Sign::Pos)) | (Par(Sign::Pos), Hyp(_)) => {
            bracket_set(End::Hyp, Rat::from_integer(0), one(), End::Hyp)
        }
        (Hyp(_), Par(Sign::Neg)) | (Par(Sign::Neg), Hyp(_)) => {
            bracket_set(End::Hyp, one(), two(), End::Hyp)
        }
        (Hyp(l), Hyp(m)) => {
            let mut out = nonscalar();
            if l.eq_tol(m, LAMBDA_EQ_TOL) {
                out.has_i = true;
            }
            out
        }
    }
}

/// The exact set {class of AB : A ∈ x, B ∈ y}.
pub fn product_pair(x: ClassId, y: ClassId) -> ClassSet {
    if let ClassId::Scalar(s) = x {
        return ClassSet::singleton(y.apply_sign(s));
    }
    if let ClassId::Scalar(s) = y {
        return ClassSet::singleton(x.apply_sign(s));
    }
    let (gx, sx) = to_gplus(x);
    let (gy, sy) = to_gplus(y);
    pair_gplus(gx, gy).apply_sign(sx.mul(sy))
}

/// Union over α ∈ J of the per-α product with a G⁺ class, where J ⊆ ]0,π[.
/// Endpoints of the per-α results move monotonically with α, so the union
/// is determined by the images of the interval endpoints; a closed
/// parameter end is attained in the image.
fn ell_interval_times(j: AngleInterval, y: GplusClass) -> ClassSet {
    use GplusClass::*;
    debug_assert!(j.hi <= one());
    match y {
        Par(Sign::Pos) => bracket_set(End::Open, j.lo, one(), End::Hyp),
        Par(Sign::Neg) => bracket_set(End::Hyp, Rat::from_integer(0), j.hi, End::Open),
        Hyp(_) => bracket_set(End::Hyp, Rat::from_integer(0), one(), End::Hyp),
        Ell(b) => {
            let split = one() - b;
            let mut acc = ClassSet::empty();
            // piece below the threshold: per-α result [α+b, π]⟩
            let lo1 = j.lo;
            let hi1 = j.hi.min(split);
            let hi1_closed = if j.hi < split { j.hi_closed } else { false };
            if lo1 < hi1 || (lo1 == hi1 && j.lo_closed && hi1_closed) {
                let start = lo1 + b;
                let closed = j.lo_closed;
                acc = acc.union(&bracket_set(
                    if closed { End::Closed } else { End::Open },
                    start,
                    one(),
                    End::Hyp,
                ));
            }
            // the threshold itself: {−I} ∪ C4−
            if j.contains(split) {
                let mut t = ClassSet::singleton(ClassId::Scalar(Sign::Neg));
                t.hyp_neg = HypSet::full();
                acc = acc.union(&t);
            }
            // piece above the threshold: per-α result ⟨[π, α+b]
            let lo2 = j.lo.max(split);
            let lo2_closed = if j.lo > split { j.lo_closed } else { false };
            let hi2 = j.hi;
            if lo2 < hi2 || (lo2 == hi2 && lo2_closed && j.hi_closed) {
                let end = hi2 + b;
                acc = acc.union(&bracket_set(
                    End::Hyp,
                    one(),
                    end,
                    if j.hi_closed { End::Closed } else { End::Open },
                ));
            }
            acc
        }
    }
}

/// Product of a full or cofinite positive hyperbolic family with a G⁺
/// class.
fn hyp_family_times(family: &HypSet, y: GplusClass) -> ClassSet {
    use GplusClass::*;
    if family.is_empty() {
        return ClassSet::empty();
    }
    match y {
        Par(Sign::Pos) | Ell(_) => bracket_set(End::Hyp, Rat::from_integer(0), one(), End::Hyp),
        Par(Sign::Neg) => bracket_set(End::Hyp, one(), two(), End::Hyp),
        Hyp(m) => {
            let mut out = nonscalar();
            let contains_m = match (family, m.exact_value()) {
                (HypSet::Finite(v), Some(r)) => v.contains(&r),
                (HypSet::Cofinite(ex), Some(r)) => !ex.contains(&r),
                (HypSet::Finite(v), None) => {
                    v.iter().any(|r| Lambda::exact(*r).unwrap().eq_tol(m, LAMBDA_EQ_TOL))
                }
                (HypSet::Cofinite(ex), None) => {
                    !ex.iter().any(|r| Lambda::exact(*r).unwrap().eq_tol(m, LAMBDA_EQ_TOL))
                }
            };
            if contains_m {
                out.has_i = true;
            }
            out
        }
    }
}

/// Product of a set with one class: the union over the canonical pieces of
/// the set of per-piece products.
pub fn product_set_class(x: &ClassSet, y: ClassId) -> ClassSet {
    if let ClassId::Scalar(s) = y {
        return x.apply_sign(s);
    }
    let (gy, sy) = to_gplus(y);
    let mut acc = ClassSet::empty();
    if x.has_i {
        acc = acc.union(&ClassSet::singleton(y.apply_sign(sy)));
    }
    if x.has_neg_i {
        acc = acc.union(&ClassSet::singleton(y.apply_sign(sy).negated()));
    }
    for (flag, delta) in [(x.par_pp, Sign::Pos), (x.par_pm, Sign::Neg)] {
        if flag {
            acc = acc.union(&pair_gplus(GplusClass::Par(delta), gy));
        }
    }
    for (flag, delta) in [(x.par_mp, Sign::Neg), (x.par_mm, Sign::Pos)] {
        if flag {
            // C2[-δ'] = −C2[+δ] with δ flipped
            acc = acc.union(&pair_gplus(GplusClass::Par(delta), gy).negate());
        }
    }
    for iv in x.ell.atoms() {
        if iv.hi <= one() {
            acc = acc.union(&ell_interval_times(*iv, gy));
        } else {
            let shifted = AngleInterval::new(iv.lo - one(), iv.lo_closed, iv.hi - one(), iv.hi_closed);
            acc = acc.union(&ell_interval_times(shifted, gy).negate());
        }
    }
    if !x.hyp_pos.is_empty() {
        acc = acc.union(&hyp_family_times(&x.hyp_pos, gy));
    }
    if !x.hyp_neg.is_empty() {
        acc = acc.union(&hyp_family_times(&x.hyp_neg.negated(), gy).negate());
    }
    acc.apply_sign(sy)
}

/// Splits a factor list into its scalar sign and the non-scalar factors.
fn strip_scalars(factors: &[ClassId]) -> (Sign, Vec<ClassId>) {
    let mut sign = Sign::Pos;
    let mut rest = Vec::new();
    for f in factors {
        match f {
            ClassId::Scalar(s) => sign = sign.mul(*s),
            other => rest.push(*other),
        }
    }
    (sign, rest)
}

/// n-fold product, by left-folding the pairwise rows through
/// [`product_set_class`]. Scalar factors fold into a single sign. For five
/// or more non-scalar factors the result is checked to be the whole group.
pub fn product_n(q: &ProductQuery) -> ClassSet {
    let (sign, rest) = strip_scalars(&q.factors);
    if rest.is_empty() {
        return ClassSet::singleton(ClassId::Scalar(sign));
    }
    let mut acc = ClassSet::singleton(rest[0]);
    for c in &rest[1..] {
        acc = product_set_class(&acc, *c);
    }
    let out = acc.apply_sign(sign);
    if rest.len() >= 5 {
        assert_eq!(out, ClassSet::full(), "five or more non-scalar factors must cover the group");
    }
    out
}

/// Closed-form direct path for n ≤ 4 plus the ≥5 ⇒ G rule; must agree with
/// the fold everywhere (cross-checked in the acceptance suite).
pub fn product_n_direct(q: &ProductQuery) -> ClassSet {
    let (sign, rest) = strip_scalars(&q.factors);
    match rest.len() {
        0 => ClassSet::singleton(ClassId::Scalar(sign)),
        1 => ClassSet::singleton(rest[0]).apply_sign(sign),
        2 => product_pair(rest[0], rest[1]).apply_sign(sign),
        3 => triple_direct(rest[0], rest[1], rest[2]).apply_sign(sign),
        4 => {
            // every quadruple of non-scalar classes covers all non-scalar
            // classes; only the scalar memberships remain to decide, and
            // those peel the last factor against the direct triple path
            let mut out = nonscalar();
            let triple = triple_direct(rest[0], rest[1], rest[2]);
            let last = rest[3];
            out.has_i = triple.member_exact(last.inverted());
            out.has_neg_i = triple.member_exact(last.inverted().negated());
            out.apply_sign(sign)
        }
        _ => ClassSet::full(),
    }
}

/// Triple products of non-scalar classes in closed form.
fn triple_direct(c1: ClassId, c2: ClassId, c3: ClassId) -> ClassSet {
    let mut sign = Sign::Pos;
    let mut pars: Vec<Sign> = Vec::new();
    let mut ells: Vec<Rat> = Vec::new();
    let mut hyps: Vec<Lambda> = Vec::new();
    for c in [c1, c2, c3] {
        let (g, s) = to_gplus(c);
        sign = sign.mul(s);
        match g {
            GplusClass::Par(d) => pars.push(d),
            GplusClass::Ell(a) => ells.push(a),
            GplusClass::Hyp(l) => hyps.push(l),
        }
    }
    let core = match hyps.len() {
        h if h >= 2 => ClassSet::full(),
        1 => {
            // X = C4^λ · (x·y): every non-scalar class occurs; ±I by
            // whether ±C4^λ lies in the pair product of the other two
            let others: Vec<ClassId> = pars
                .iter()
                .map(|d| ClassId::Parabolic(Sign::Pos, *d))
                .chain(ells.iter().map(|a| ClassId::elliptic(*a)))
                .collect();
            let p = product_pair(others[0], others[1]);
            let mut out = nonscalar();
            out.has_i = p.member_exact(ClassId::Hyperbolic(hyps[0]));
            out.has_neg_i = p.member_exact(ClassId::Hyperbolic(hyps[0].negated()));
            out
        }
        _ => {
            ells.sort();
            let s: Rat = ells.iter().copied().sum();
            let np = pars.iter().filter(|d| **d == Sign::Pos).count();
            let nm = pars.len() - np;
            match (np, nm, ells.len()) {
                (3, 0, 0) | (0, 3, 0) => {
                    ClassSet::singleton(ClassId::Scalar(Sign::Pos)).complement()
                }
                (2, 1, 0) => {
                    // complement of {−I} ∪ [π,2π[
                    ClassSet::singleton(ClassId::Scalar(Sign::Neg))
                        .union(&bracket_set(End::Closed, one(), two(), End::Open))
                        .complement()
                }
                (1, 2, 0) => ClassSet::singleton(ClassId::Scalar(Sign::Neg))
                    .union(&bracket_set(End::Open, Rat::from_integer(0), one(), End::Closed))
                    .complement(),
                (2, 0, 1) => ClassSet::singleton(ClassId::Scalar(Sign::Pos))
                    .union(&bracket_set(End::Closed, Rat::from_integer(0), s, End::Closed))
                    .complement(),
                (0, 2, 1) => ClassSet::singleton(ClassId::Scalar(Sign::Neg))
                    .union(&bracket_set(End::Closed, s, one(), End::Closed))
                    .complement(),
                (1, 1, 1) => bracket_set(End::Hyp, Rat::from_integer(0), one(), End::Hyp),
                (1, 0, 2) => {
                    if s < one() {
                        ClassSet::singleton(ClassId::Scalar(Sign::Pos))
                            .union(&bracket_set(End::Closed, Rat::from_integer(0), s, End::Closed))
                            .complement()
                    } else {
                        bracket_set(End::Hyp, one(), two(), End::Hyp)
                    }
                }
                (0, 1, 2) => {
                    if s > one() {
                        ClassSet::singleton(ClassId::Scalar(Sign::Pos))
                            .union(&bracket_set(End::Closed, s, two(), End::Closed))
                            .complement()
                    } else {
                        bracket_set(End::Hyp, Rat::from_integer(0), one(), End::Hyp)
                    }
                }
                (0, 0, 3) => {
                    if s < one() {
                        ClassSet::singleton(ClassId::Scalar(Sign::Pos))
                            .union(&bracket_set(End::Closed, Rat::from_integer(0), s, End::Open))
                            .complement()
                    } else if s == one() {
                        ClassSet::singleton(ClassId::Scalar(Sign::Neg))
                            .union(&bracket_set(End::Hyp, one(), two(), End::Hyp))
                    } else if s < two() {
                        bracket_set(End::Hyp, one(), two(), End::Hyp)
                    } else if s == two() {
                        ClassSet::singleton(ClassId::Scalar(Sign::Pos))
                            .union(&bracket_set(End::Hyp, one(), two(), End::Hyp))
                    } else {
                        ClassSet::singleton(ClassId::Scalar(Sign::Neg))
                            .union(&bracket_set(End::Open, s - two(), one(), End::Closed))
                            .complement()
                    }
                }
                _ => unreachable!("three non-scalar factors"),
            }
        }
    };
    core.apply_sign(sign)
}

/// Decides whether sign·I lies in the product: sign·I ∈ c₁⋯cₙ iff
/// sign·cₙ⁻¹ lies in the product of the first n−1 factors.
pub fn scalar_membership(q: &ProductQuery, sign: Sign) -> bool {
    assert!(q.factors.len() >= 2, "scalar membership needs at least two factors");
    let last = *q.factors.last().unwrap();
    let prefix = ProductQuery::new(q.factors[..q.factors.len() - 1].to_vec());
    let target = last.inverted().apply_sign(sign);
    product_n(&prefix).member_exact(target)
}

/// Does the triple product of elliptic classes contain the identity?
pub fn figure1_contains_identity(alpha: ClassId, beta: ClassId, gamma: ClassId) -> bool {
    for c in [alpha, beta, gamma] {
        assert!(matches!(c, ClassId::Elliptic(_)), "figure-1 predicate takes elliptic classes");
    }
    scalar_membership(&ProductQuery::new(vec![alpha, beta, gamma]), Sign::Pos)
}

/// One row of the identity-membership grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Figure1Row {
    pub alpha: Rat,
    pub beta: Rat,
    pub gamma: Rat,
    pub contains_i: bool,
}

/// Angle lattice with the given step inside ]0,2π[∖{π} (π-units).
pub fn angle_grid(step: Rat) -> Vec<Rat> {
    assert!(step > Rat::from_integer(0) && step < two(), "step must lie in ]0,2[");
    let mut out = Vec::new();
    let mut v = step;
    while v < two() {
        if v != one() {
            out.push(v);
        }
        v += step;
    }
    out
}

/// Enumerates the step-lattice over ]0,2π[³ in lexicographic order and
/// reports identity membership of the elliptic triple product.
pub fn figure1_grid(step: Rat) -> Vec<Figure1Row> {
    let axis = angle_grid(step);
    let mut rows = Vec::with_capacity(axis.len().pow(3));
    for &a in &axis {
        for &b in &axis {
            for &g in &axis {
                rows.push(Figure1Row {
                    alpha: a,
                    beta: b,
                    gamma: g,
                    contains_i: figure1_contains_identity(
                        ClassId::elliptic(a),
                        ClassId::elliptic(b),
                        ClassId::elliptic(g),
                    ),
                });
            }
        }
    }
    rows
}

/// The signed-parameter variant: angles in ]−π,π[∖{0}, mapped into the
/// principal parameterization by α ↦ α mod 2π.
pub fn figure1_grid_signed(step: Rat) -> Vec<Figure1Row> {
    assert!(step > Rat::from_integer(0) && step < one());
    let mut axis = Vec::new();
    let mut v = -one() + step;
    while v < one() {
        if v != Rat::from_integer(0) {
            axis.push(v);
        }
        v += step;
    }
    let lift = |v: Rat| if v > Rat::from_integer(0) { v } else { v + two() };
    let mut rows = Vec::with_capacity(axis.len().pow(3));
    for &a in &axis {
        for &b in &axis {
            for &g in &axis {
                rows.push(Figure1Row {
                    alpha: a,
                    beta: b,
                    gamma: g,
                    contains_i: figure1_contains_identity(
                        ClassId::elliptic(lift(a)),
                        ClassId::elliptic(lift(b)),
                        ClassId::elliptic(lift(g)),
                    ),
                });
            }
        }
    }
    rows
}

/// CSV rendering of a figure-1 grid, header `alpha,beta,gamma,contains_I`,
/// angles as rational π-unit strings.
pub fn figure1_csv(rows: &[Figure1Row]) -> String {
    let mut out = String::from("alpha,beta,gamma,contains_I\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            rat_to_string(r.alpha),
            rat_to_string(r.beta),
            rat_to_string(r.gamma),
            r.contains_i
        ));
    }
    out
}

// ---------------------------------------------------------------------
// reconstructed tables

/// One reconstructed table row: the symbolic case, its closed-form result
/// and how the row was pinned down.
#[derive(Debug, Clone)]
pub struct TableRow {
    pub lhs: &'static str,
    pub result: &'static str,
    pub provenance: &'static str,
}

/// The pairwise table over G⁺ (other signs follow by pulling scalars out).
pub fn pair_table() -> Vec<TableRow> {
    vec![
        TableRow {
            lhs: "C2[++] * C2[++]",
            result: "C3[0,1]>",
            provenance: "trace range ]-inf,2] + orientation exclusion; closed end by shared-eigenvector witness",
        },
        TableRow {
            lhs: "C2[++] * C2[+-]",
            result: "{I}|C2[++]|C2[+-]|C4+",
            provenance: "trace range [2,inf[ + one-parameter shear witness family crossing I",
        },
        TableRow {
            lhs: "C2[+-] * C2[+-]",
            result: "C3<[1,2]",
            provenance: "inverse image of the C2[++] square",
        },
        TableRow {
            lhs: "C3[a] * C2[++]      (0<a<1)",
            result: "C3]a,1]>",
            provenance: "trace range ]-inf,2cos(a.pi)[ + orientation exclusion",
        },
        TableRow {
            lhs: "C3[a] * C2[+-]      (0<a<1)",
            result: "C3<[0,a[",
            provenance: "trace range ]2cos(a.pi),inf[ + orientation exclusion",
        },
        TableRow {
            lhs: "C3[a] * C3[b]       (a+b<1)",
            result: "C3[a+b,1]>",
            provenance: "trace range ]-inf,2cos((a+b).pi)] with the boundary class attained at the conjugate-aligned pair",
        },
        TableRow {
            lhs: "C3[a] * C3[b]       (a+b=1)",
            result: "{-I}|C4-",
            provenance: "trace range ]-inf,-2]; the -2 level is the aligned pair, which is -I itself",
        },
        TableRow {
            lhs: "C3[a] * C3[b]       (a+b>1)",
            result: "C3<[1,a+b]",
            provenance: "inverse image of the a+b<1 row",
        },
        TableRow {
            lhs: "C4[l] * C2[++]",
            result: "C3<[0,1]>",
            provenance: "all traces attained; orientation exclusion picks one class per trace",
        },
        TableRow {
            lhs: "C4[l] * C2[+-]",
            result: "C3<[1,2]>",
            provenance: "inverse image of the C4[l]*C2[++] row",
        },
        TableRow {
            lhs: "C4[l] * C3[a]       (0<a<1)",
            result: "C3<[0,1]>",
            provenance: "all traces attained; orientation exclusion picks one class per trace",
        },
        TableRow {
            lhs: "C4[l] * C4[l]",
            result: "{-I}^c",
            provenance: "all traces attained; I from the self-inverse pairing; both orientations by inverse closure",
        },
        TableRow {
            lhs: "C4[l] * C4[m]       (l<>m)",
            result: "G\\{I}\\{-I}",
            provenance: "all traces attained; scalar coincidence impossible; both orientations by inverse closure",
        },
    ]
}

/// The triple table over G⁺.
pub fn triple_table() -> Vec<TableRow> {
    vec![
        TableRow { lhs: "C2[++]^3", result: "{I}^c", provenance: "fold of pair rows" },
        TableRow {
            lhs: "C2[++]^2 * C2[+-]",
            result: "G\\{-I}\\C3[1,2[",
            provenance: "fold of pair rows",
        },
        TableRow {
            lhs: "C2[++] * C2[+-]^2",
            result: "G\\{-I}\\C3]0,1]",
            provenance: "inverse image of the previous row",
        },
        TableRow { lhs: "C2[+-]^3", result: "{I}^c", provenance: "inverse image of C2[++]^3" },
        TableRow {
            lhs: "C3[a] * C2[++]^2",
            result: "G\\{I}\\C3[0,a]",
            provenance: "fold of pair rows",
        },
        TableRow {
            lhs: "C3[a] * C2[+-]^2",
            result: "G\\{-I}\\C3[a,1]",
            provenance: "inverse image of the previous row",
        },
        TableRow {
            lhs: "C3[a] * C2[++] * C2[+-]",
            result: "C3<[0,1]>",
            provenance: "fold of pair rows",
        },
        TableRow {
            lhs: "C3[a] * C3[b] * C2[++]   (a+b<1)",
            result: "G\\{I}\\C3[0,a+b]",
            provenance: "fold of pair rows",
        },
        TableRow {
            lhs: "C3[a] * C3[b] * C2[++]   (a+b>=1)",
            result: "C3<[1,2]>",
            provenance: "fold of pair rows",
        },
        TableRow {
            lhs: "C3[a] * C3[b] * C2[+-]   (a+b>1)",
            result: "G\\{I}\\C3[a+b,2]",
            provenance: "inverse image of the a+b<1 row above",
        },
        TableRow {
            lhs: "C3[a] * C3[b] * C2[+-]   (a+b<=1)",
            result: "C3<[0,1]>",
            provenance: "inverse image of the a+b>=1 row above",
        },
        TableRow {
            lhs: "C3[a]*C3[b]*C3[g]   (s=a+b+g<1)",
            result: "G\\{I}\\C3[0,s[",
            provenance: "fold of pair rows",
        },
        TableRow {
            lhs: "C3[a]*C3[b]*C3[g]   (s=1)",
            result: "{-I}|C3<[1,2]>",
            provenance: "fold of pair rows",
        },
        TableRow {
            lhs: "C3[a]*C3[b]*C3[g]   (1<s<2)",
            result: "C3<[1,2]>",
            provenance: "fold of pair rows",
        },
        TableRow {
            lhs: "C3[a]*C3[b]*C3[g]   (s=2)",
            result: "{I}|C3<[1,2]>",
            provenance: "inverse image of the s=1 row",
        },
        TableRow {
            lhs: "C3[a]*C3[b]*C3[g]   (s>2)",
            result: "G\\{-I}\\C3]s-2,1]",
            provenance: "inverse image of the s<1 row",
        },
        TableRow {
            lhs: "C4[l] * x * y   (x,y non-scalar, not both C4)",
            result: "{I}^c or {-I}^c",
            provenance: "every non-scalar class occurs; +-I iff +-C4[l] lies in x*y",
        },
        TableRow {
            lhs: "C4[l] * C4[m] * x   (x non-scalar)",
            result: "G",
            provenance: "fold of pair rows",
        },
    ]
}

/// Quadruple rules (with representative rows).
pub fn quad_table() -> Vec<TableRow> {
    vec![
        TableRow {
            lhs: "any four non-scalar classes",
            result: "G minus the absent scalars",
            provenance: "triples cover C4; C4 times a non-scalar class covers every non-scalar class; +-I by peeling one factor",
        },
        TableRow {
            lhs: "C2[++]^2 * C2[+-]^2",
            result: "{-I}^c",
            provenance: "scalar membership against the triple table",
        },
        TableRow {
            lhs: "C2[++]^2 * C2[+-] * C3[a]",
            result: "{I}^c",
            provenance: "scalar membership against the triple table",
        },
        TableRow {
            lhs: "C2[++] * C2[+-]^2 * C3[a]",
            result: "{-I}^c",
            provenance: "scalar membership against the triple table",
        },
        TableRow {
            lhs: "C2[++] * C2[+-] * C3[a] * C3[b]",
            result: "{I}^c",
            provenance: "scalar membership against the triple table",
        },
        TableRow {
            lhs: "C2[++]^2 * C3[a] * C3[b]",
            result: "{-I}^c if a+b>=1, else G",
            provenance: "scalar membership against the triple table",
        },
        TableRow {
            lhs: "C2[+-]^2 * C3[a] * C3[b]",
            result: "{-I}^c if a+b<=1, else G",
            provenance: "inverse image of the previous row",
        },
        TableRow {
            lhs: "C3[a]*C3[b]*C3[g]*C2[++]",
            result: "G if a+b+g<1, else {-I}^c",
            provenance: "scalar membership against the triple table",
        },
        TableRow {
            lhs: "C3[a]*C3[b]*C3[g]*C2[+-]",
            result: "G if a+b+g>2, else {I}^c",
            provenance: "inverse image of the previous row",
        },
        TableRow {
            lhs: "C3[a]*C3[b]*C3[g]*C3[d]   (s=a+b+g+d)",
            result: "G if s<=1 or s>=3, else {-I}^c",
            provenance: "scalar membership against the triple table",
        },
    ]
}

/// Renders the full reconstruction, the artifact for reviewing the
/// recovered tables. Byte-stable.
pub fn tables_text() -> String {
    let mut out = String::new();
    out.push_str("# Pairwise products (both factors normalized into G+; signs pulled out)\n");
    for r in pair_table() {
        out.push_str(&format!("{:<34} = {:<28} # {}\n", r.lhs, r.result, r.provenance));
    }
    out.push_str("\n# Triple products (factors in G+)\n");
    for r in triple_table() {
        out.push_str(&format!("{:<34} = {:<28} # {}\n", r.lhs, r.result, r.provenance));
    }
    out.push_str("\n# Quadruple products (factors in G+)\n");
    for r in quad_table() {
        out.push_str(&format!("{:<34} = {:<28} # {}\n", r.lhs, r.result, r.provenance));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_notation;
    use crate::rat::rat;

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
    fn assert_is(set: &ClassSet, notation: &str) {
        let expected = parse_notation(notation).unwrap();
        assert_eq!(set, &expected, "got {}", crate::notation::format_notation(set));
    }

    #[test]
    fn pair_parabolic_squares() {
        assert_is(&product_pair(pp(), pp()), "C3[0,1]>");
        assert_is(&product_pair(pm(), pm()), "C3<[1,2]");
        assert_is(&product_pair(pp(), pm()), "{I}|C2[++]|C2[+-]|C4+");
    }

    #[test]
    fn pair_elliptic_cases() {
        assert_is(&product_pair(e(1, 3), e(1, 3)), "C3[2/3,1]>");
        assert_is(&product_pair(e(1, 2), e(1, 2)), "{-I}|C4-");
        assert_is(&product_pair(e(2, 3), e(2, 3)), "C3<[1,4/3]");
        assert_is(&product_pair(e(1, 3), pp()), "C3]1/3,1]>");
        assert_is(&product_pair(e(1, 3), pm()), "C3<[0,1/3[");
    }

    #[test]
    fn pair_hyperbolic_rows() {
        assert_is(&product_pair(h(2, 1), h(2, 1)), "{-I}^c");
        assert_is(&product_pair(h(2, 1), h(3, 2)), "G\\{I}\\{-I}");
        assert_is(&product_pair(h(2, 1), e(1, 3)), "C3<[0,1]>");
        assert_is(&product_pair(h(2, 1), pp()), "C3<[0,1]>");
        assert_is(&product_pair(h(2, 1), pm()), "C3<[1,2]>");
    }

    #[test]
    fn pair_scalars_act_by_sign() {
        assert_is(&product_pair(ClassId::Scalar(Sign::Neg), e(1, 3)), "C3[4/3]");
        assert_is(
            &product_pair(ClassId::Scalar(Sign::Neg), ClassId::Scalar(Sign::Neg)),
            "{I}",
        );
    }

    #[test]
    fn pair_commutes_and_restores_signs() {
        let grid = [pp(), pm(), e(1, 3), e(5, 4), h(2, 1), h(-3, 2), ClassId::Scalar(Sign::Neg)];
        for &x in &grid {
            for &y in &grid {
                assert_eq!(product_pair(x, y), product_pair(y, x), "{x} * {y}");
                // negation law
                assert_eq!(
                    product_pair(x.negated(), y),
                    product_pair(x, y).negate(),
                    "-({x}) * {y}"
                );
                // inversion anti-automorphism
                assert_eq!(
                    product_pair(x, y).invert(),
                    product_pair(y.inverted(), x.inverted()),
                    "({x} * {y})^-1"
                );
            }
        }
    }

    #[test]
    fn set_class_examples() {
        // interval of elliptics times a parabolic
        let ell = parse_notation("C3]0,1[").unwrap();
        assert_is(&product_set_class(&ell, pm()), "C3<[0,1[");
        assert!(product_set_class(&ClassSet::empty(), pp()).is_empty());
        let band = parse_notation("C3[0,1]>").unwrap();
        assert_is(&product_set_class(&band, pp()), "{I}^c");
    }

    #[test]
    fn triple_products_match_displayed_identities() {
        assert_is(&product_n(&ProductQuery::new(vec![pp(), pp(), pp()])), "{I}^c");
        assert_is(
            &product_n(&ProductQuery::new(vec![pp(), pp(), pm()])),
            "G\\{-I}\\C3[1,2[",
        );
        assert_is(
            &product_n(&ProductQuery::new(vec![e(1, 3), pp(), pm()])),
            "C3<[0,1]>",
        );
        assert_is(
            &product_n(&ProductQuery::new(vec![e(1, 3), e(1, 3), e(1, 3)])),
            "{-I}|C3<[1,2]>",
        );
        assert_is(&product_n(&ProductQuery::new(vec![h(2, 1), pp(), pm()])), "{-I}^c");
        assert_is(&product_n(&ProductQuery::new(vec![h(2, 1), h(2, 1), e(1, 3)])), "G");
    }

    #[test]
    fn quadruple_and_quintuple_products() {
        let four_halves = ProductQuery::new(vec![e(1, 2); 4]);
        assert_is(&product_n(&four_halves), "{-I}^c");
        assert_is(&product_n_direct(&four_halves), "{-I}^c");
        let small = ProductQuery::new(vec![e(1, 6); 4]);
        assert_is(&product_n(&small), "G");
        let five = ProductQuery::new(vec![pp(); 5]);
        assert_is(&product_n(&five), "G");
        assert_is(&product_n_direct(&five), "G");
    }

    #[test]
    fn fold_agrees_with_direct_on_a_small_grid() {
        let grid = [pp(), pm(), e(1, 4), e(1, 2), e(7, 6), h(3, 2), ClassId::Scalar(Sign::Neg)];
        for &a in &grid {
            for &b in &grid {
                for &c in &grid {
                    let q = ProductQuery::new(vec![a, b, c]);
                    assert_eq!(product_n(&q), product_n_direct(&q), "{a} {b} {c}");
                }
            }
        }
    }

    #[test]
    fn scalar_membership_examples() {
        let q = ProductQuery::new(vec![e(1, 3), e(1, 3), e(1, 3), pp()]);
        assert!(scalar_membership(&q, Sign::Pos));
        assert!(!scalar_membership(&q, Sign::Neg));
        let q = ProductQuery::new(vec![h(3, 2), h(3, 2)]);
        assert!(scalar_membership(&q, Sign::Pos));
        assert!(!scalar_membership(&q, Sign::Neg));
    }

    #[test]
    fn figure1_examples() {
        assert!(!figure1_contains_identity(e(1, 2), e(1, 2), e(1, 2)));
        assert!(figure1_contains_identity(e(1, 3), e(1, 3), e(4, 3)));
        assert!(!figure1_contains_identity(e(1, 6), e(1, 6), e(1, 6)));
    }

    #[test]
    fn figure1_grid_shape() {
        let rows = figure1_grid(rat(1, 2));
        // axis = {1/2, 3/2}
        assert_eq!(rows.len(), 8);
        let csv = figure1_csv(&rows);
        assert!(csv.starts_with("alpha,beta,gamma,contains_I\n"));
        assert!(csv.contains("1/2,1/2,1/2,false"));
        let signed = figure1_grid_signed(rat(1, 2));
        assert_eq!(signed.len(), 8);
        // (-1/2,-1/2,-1/2) lifts to (3/2,3/2,3/2): sum 9/2 -> inverse of 3/2 case
        assert!(signed
            .iter()
            .any(|r| r.alpha == rat(-1, 2) && r.beta == rat(-1, 2) && r.gamma == rat(-1, 2)));
    }

    #[test]
    fn tables_rows_match_engine_at_witness_parameters() {
        // instantiate symbolic rows at a = 1/3, b = 1/4, g = 1/5, l = 2, m = 3/2
        let checks: Vec<(Vec<ClassId>, &str)> = vec![
            (vec![pp(), pp()], "C3[0,1]>"),
            (vec![pm(), pm()], "C3<[1,2]"),
            (vec![e(1, 3), pp()], "C3]1/3,1]>"),
            (vec![e(1, 3), pm()], "C3<[0,1/3["),
            (vec![e(1, 3), e(1, 4)], "C3[7/12,1]>"),
            (vec![e(2, 3), e(3, 4)], "C3<[1,17/12]"),
            (vec![h(2, 1), pp()], "C3<[0,1]>"),
            (vec![h(2, 1), pm()], "C3<[1,2]>"),
            (vec![h(2, 1), e(1, 3)], "C3<[0,1]>"),
            (vec![h(2, 1), h(3, 2)], "G\\{I}\\{-I}"),
            (vec![e(1, 3), pp(), pp()], "G\\{I}\\C3[0,1/3]"),
            (vec![e(1, 3), pm(), pm()], "G\\{-I}\\C3[1/3,1]"),
            (vec![e(1, 3), e(1, 4), pp()], "G\\{I}\\C3[0,7/12]"),
            (vec![e(2, 3), e(3, 4), pp()], "C3<[1,2]>"),
            (vec![e(1, 3), e(1, 4), pm()], "C3<[0,1]>"),
            (vec![e(2, 3), e(3, 4), pm()], "G\\{I}\\C3[17/12,2]"),
            (vec![e(1, 8), e(1, 8), e(1, 8)], "G\\{I}\\C3[0,3/8["),
            (vec![e(2, 3), e(2, 3), e(2, 3)], "{I}|C3<[1,2]>"),
            (vec![e(5, 6), e(5, 6), e(5, 6)], "G\\{-I}\\C3]1/2,1]"),
        ];
        for (factors, expected) in checks {
            let q = ProductQuery::new(factors.clone());
            assert_is(&product_n(&q), expected);
            assert_eq!(product_n(&q), product_n_direct(&q), "{factors:?}");
        }
    }
}
