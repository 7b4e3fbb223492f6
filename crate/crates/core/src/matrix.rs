//! Floating-point layer: 2×2 unimodular matrices, classification into the
//! class taxonomy, canonical representatives and the SU(1,1) isomorphism.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::angle::{Angle, Lambda};
use crate::class::{ClassId, Sign};
use crate::error::ClassifyError;
use crate::rat::{rat_to_f64, snap_to_rational};

/// Tolerances and snapping bounds used by the numeric layer.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Band around det = 1 accepted at construction.
    pub det_tol: f64,
    /// Band around |trace| = 2 for the scalar/parabolic/elliptic/hyperbolic
    /// split.
    pub class_tol: f64,
    /// Absolute distance within which a classified angle (radians) or
    /// hyperbolic parameter snaps to a rational.
    pub snap_tol: f64,
    /// Largest denominator tried when snapping angles to p/q·π.
    pub angle_snap_den: i64,
    /// Largest denominator tried when snapping hyperbolic parameters.
    pub lambda_snap_den: i64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            det_tol: 1e-9,
            class_tol: 1e-9,
            snap_tol: 1e-7,
            angle_snap_den: 360,
            lambda_snap_den: 10_000,
        }
    }
}

/// A real 2×2 matrix of determinant 1, row-major entries (a b / c d).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

pub const IDENTITY: Mat2 = Mat2 { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

impl Mat2 {
    /// Checked constructor: rejects matrices outside the determinant band.
    pub fn new(a: f64, b: f64, c: f64, d: f64, det_tol: f64) -> Result<Mat2, ClassifyError> {
        let det = a * d - b * c;
        let excess = (det - 1.0).abs();
        if excess > det_tol {
            return Err(ClassifyError::NotUnimodular { excess, tol: det_tol });
        }
        Ok(Mat2 { a, b, c, d })
    }

    /// Unchecked constructor for matrices that are unimodular by
    /// construction (rotations, shears, products of such).
    pub fn raw(a: f64, b: f64, c: f64, d: f64) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    pub fn rotation(theta: f64) -> Mat2 {
        let (s, c) = theta.sin_cos();
        Mat2 { a: c, b: -s, c: s, d: c }
    }

    pub fn diagonal(l: f64) -> Mat2 {
        Mat2 { a: l, b: 0.0, c: 0.0, d: 1.0 / l }
    }

    pub fn shear(u: f64) -> Mat2 {
        Mat2 { a: 1.0, b: u, c: 0.0, d: 1.0 }
    }

    pub fn scalar(sign: Sign) -> Mat2 {
        let s = sign.as_f64();
        Mat2 { a: s, b: 0.0, c: 0.0, d: s }
    }

    pub fn trace(self) -> f64 {
        self.a + self.d
    }

    pub fn det(self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Exact adjugate inverse; for det = 1 this is the true inverse and
    /// introduces no division error.
    pub fn inv(self) -> Mat2 {
        Mat2 { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn neg(self) -> Mat2 {
        Mat2 { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    pub fn apply(self, v: [f64; 2]) -> [f64; 2] {
        [self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1]]
    }

    pub fn max_abs(self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }

    /// Largest entry of self − other in absolute value.
    pub fn dist(self, other: Mat2) -> f64 {
        (self.a - other.a)
            .abs()
            .max((self.b - other.b).abs())
            .max((self.c - other.c).abs())
            .max((self.d - other.d).abs())
    }

    pub fn entries(self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        Mat2 {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// Oriented area form x ∧ y = x₁y₂ − x₂y₁.
pub fn wedge(x: [f64; 2], y: [f64; 2]) -> f64 {
    x[0] * y[1] - x[1] * y[0]
}

/// An element of SU(1,1): (a b / conj(b) conj(a)) with |a|² − |b|² = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su11Mat {
    pub a: Complex64,
    pub b: Complex64,
}

impl Su11Mat {
    pub fn trace(self) -> Complex64 {
        self.a + self.a.conj()
    }

    /// |a|² − |b|² − 1, the defect against the defining relation.
    pub fn unit_defect(self) -> f64 {
        (self.a.norm_sqr() - self.b.norm_sqr() - 1.0).abs()
    }

    /// Largest entry of A*JA − J where J = diag(1,−1).
    pub fn j_residual(self) -> f64 {
        // rows of the full matrix
        let (a, b) = (self.a, self.b);
        let (c, d) = (b.conj(), a.conj());
        // A* J A with J = diag(1,-1)
        let m11 = a.conj() * a - c.conj() * c - Complex64::new(1.0, 0.0);
        let m12 = a.conj() * b - c.conj() * d;
        let m21 = b.conj() * a - d.conj() * c;
        let m22 = b.conj() * b - d.conj() * d + Complex64::new(1.0, 0.0);
        m11.norm().max(m12.norm()).max(m21.norm()).max(m22.norm())
    }

    pub fn dist(self, other: Su11Mat) -> f64 {
        (self.a - other.a).norm().max((self.b - other.b).norm())
    }

    /// Unordered eigenvalue pair (for diagonalizable elements the spectrum
    /// {a, conj(a)} when b = 0; in general the roots of the characteristic
    /// polynomial).
    pub fn eigenvalues(self) -> (Complex64, Complex64) {
        let tr = self.a + self.a.conj();
        let disc = (tr * tr - Complex64::new(4.0, 0.0)).sqrt();
        ((tr + disc) / 2.0, (tr - disc) / 2.0)
    }
}

impl Mul for Su11Mat {
    type Output = Su11Mat;
    fn mul(self, rhs: Su11Mat) -> Su11Mat {
        Su11Mat {
            a: self.a * rhs.a + self.b * rhs.b.conj(),
            b: self.a * rhs.b + self.b * rhs.a.conj(),
        }
    }
}

/// Conjugation isomorphism onto SU(1,1): A ↦ P⁻¹AP for the fixed
/// P = (1 i / i 1). Preserves traces and products.
pub fn phi(m: Mat2) -> Su11Mat {
    let Mat2 { a, b, c, d } = m;
    Su11Mat {
        a: Complex64::new((a + d) / 2.0, (b - c) / 2.0),
        b: Complex64::new((b + c) / 2.0, (a - d) / 2.0),
    }
}

/// Canonical representative of a class, chosen so that
/// `classify(canonical_rep(id)) == id`.
pub fn canonical_rep(id: ClassId) -> Mat2 {
    match id {
        ClassId::Scalar(s) => Mat2::scalar(s),
        ClassId::Parabolic(eps, delta) => {
            let e = eps.as_f64();
            Mat2 { a: e, b: 0.0, c: delta.as_f64(), d: e }
        }
        ClassId::Elliptic(a) => Mat2::rotation(a.radians()),
        ClassId::Hyperbolic(l) => Mat2::diagonal(l.as_f64()),
    }
}

/// Classifies a unimodular matrix into its conjugacy class.
///
/// Elliptic angles and hyperbolic parameters are snapped to nearby
/// rationals (bounded denominators, see [`Tolerances`]); values that do not
/// snap are carried as float-backed parameters.
pub fn classify(m: Mat2, tol: &Tolerances) -> Result<ClassId, ClassifyError> {
    let det = m.det();
    let excess = (det - 1.0).abs();
    if excess > tol.det_tol {
        return Err(ClassifyError::NotUnimodular { excess, tol: tol.det_tol });
    }
    let t = m.trace();
    let band = tol.class_tol;
    if (t.abs() - 2.0).abs() <= band {
        // scalar or parabolic
        let eps = Sign::of_f64(t);
        let dev = m.dist(Mat2::scalar(eps));
        if dev <= band {
            return Ok(ClassId::Scalar(eps));
        }
        let disc = m.c - m.b;
        if disc.abs() <= band {
            return Err(ClassifyError::BoundaryAmbiguous { trace: t, discriminant: disc });
        }
        return Ok(ClassId::Parabolic(eps, Sign::of_f64(disc)));
    }
    if t.abs() < 2.0 {
        // elliptic: alpha = arccos(t/2) on the c > 0 side, 2pi - arccos on
        // the other; for c = 0 the caption equivalence c·sinα>0 ⟺ b·sinα<0
        // hands the decision to -b.
        let base = (t / 2.0).clamp(-1.0, 1.0).acos();
        let orient = if m.c != 0.0 { m.c } else { -m.b };
        let alpha = if orient > 0.0 { base } else { 2.0 * std::f64::consts::PI - base };
        let units = alpha / std::f64::consts::PI;
        let id = match snap_to_rational(units, tol.angle_snap_den, tol.snap_tol / std::f64::consts::PI) {
            Some(r) => Angle::exact(r).ok().map(ClassId::Elliptic),
            None => None,
        };
        return Ok(id.unwrap_or_else(|| {
            ClassId::Elliptic(Angle::approx(units).expect("angle interior to its band"))
        }));
    }
    // hyperbolic
    let lam = (t + t.signum() * (t * t - 4.0).sqrt()) / 2.0;
    let id = snap_to_rational(lam, tol.lambda_snap_den, tol.snap_tol)
        .filter(|r| rat_to_f64(r.abs()) > 1.0)
        .and_then(|r| Lambda::exact(r).ok())
        .map(ClassId::Hyperbolic);
    Ok(id.unwrap_or_else(|| {
        ClassId::Hyperbolic(Lambda::approx(lam).expect("lambda beyond the parabolic band"))
    }))
}

/// Finds K ∈ SL₂(ℝ) with K·canonical_rep(id)·K⁻¹ = m, given that m belongs
/// to the class `id`. Used by the witness machinery to steer a constructed
/// factorization onto a specific matrix.
pub fn conjugator_to_canonical(m: Mat2, id: ClassId) -> Mat2 {
    match id {
        ClassId::Scalar(_) => IDENTITY,
        ClassId::Elliptic(ang) => {
            let th = ang.radians();
            let (sin, cos) = th.sin_cos();
            // columns f1 = e1, f2 = (m f1 - cos f1)/sin
            let f1 = [1.0, 0.0];
            let mf1 = m.apply(f1);
            let f2 = [(mf1[0] - cos) / sin, (mf1[1]) / sin];
            normalize_columns(f1, f2)
        }
        ClassId::Hyperbolic(l) => {
            let lam = l.as_f64();
            let f1 = eigenvector(m, lam);
            let mut f2 = eigenvector(m, 1.0 / lam);
            if wedge(f1, f2) < 0.0 {
                f2 = [-f2[0], -f2[1]];
            }
            normalize_columns(f1, f2)
        }
        ClassId::Parabolic(eps, delta) => {
            let e = eps.as_f64();
            // eigenline of m
            let v = eigenvector(m, e);
            // any w outside the eigenline, with (m - e)w = coef * v
            let cands = [[1.0, 0.0], [0.0, 1.0]];
            let mut best: Option<([f64; 2], f64)> = None;
            for w in cands {
                let mw = m.apply(w);
                let u = [mw[0] - e * w[0], mw[1] - e * w[1]];
                // coef via the dominant component of v
                let coef = if v[0].abs() >= v[1].abs() { u[0] / v[0] } else { u[1] / v[1] };
                if coef.abs() > best.map_or(0.0, |(_, c)| c.abs()) {
                    best = Some((w, coef));
                }
            }
            let (w, coef) = best.expect("non-scalar parabolic has rank-one nilpotent part");
            let scale = delta.as_f64() / coef;
            let f1 = [scale * w[0], scale * w[1]];
            normalize_columns(f1, v)
        }
    }
}

fn eigenvector(m: Mat2, lam: f64) -> [f64; 2] {
    // kernel of (m - lam): row (a-lam, b) kills (b, lam-a), row (c, d-lam)
    // kills (lam-d, c); take the better-conditioned of the two
    let v1 = [m.b, lam - m.a];
    let v2 = [lam - m.d, m.c];
    let n1 = v1[0].abs() + v1[1].abs();
    let n2 = v2[0].abs() + v2[1].abs();
    let v = if n1 >= n2 { v1 } else { v2 };
    let n = (v[0] * v[0] + v[1] * v[1]).sqrt();
    [v[0] / n, v[1] / n]
}

fn normalize_columns(f1: [f64; 2], f2: [f64; 2]) -> Mat2 {
    let det = wedge(f1, f2);
    debug_assert!(det > 0.0, "orientation-compatible basis expected (det = {det})");
    let s = det.sqrt();
    Mat2 { a: f1[0] / s, b: f2[0] / s, c: f1[1] / s, d: f2[1] / s }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use std::f64::consts::PI;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn classify_parabolic_shear() {
        let m = Mat2::raw(1.0, 0.0, 1.0, 1.0);
        assert_eq!(classify(m, &tol()).unwrap(), ClassId::Parabolic(Sign::Pos, Sign::Pos));
    }

    #[test]
    fn classify_quarter_rotation() {
        let m = Mat2::raw(0.0, -1.0, 1.0, 0.0);
        assert_eq!(classify(m, &tol()).unwrap(), ClassId::elliptic(rat(1, 2)));
    }

    #[test]
    fn classify_diagonal_hyperbolic() {
        let m = Mat2::raw(2.0, 0.0, 0.0, 0.5);
        assert_eq!(classify(m, &tol()).unwrap(), ClassId::hyperbolic(rat(2, 1)));
    }

    #[test]
    fn classify_minus_identity() {
        let m = Mat2::raw(-1.0, 0.0, 0.0, -1.0);
        assert_eq!(classify(m, &tol()).unwrap(), ClassId::Scalar(Sign::Neg));
    }

    #[test]
    fn classify_conjugated_rotation() {
        let k = Mat2::raw(1.0, 0.0, 5.0, 1.0);
        let m = k * Mat2::rotation(PI / 3.0) * k.inv();
        assert_eq!(classify(m, &tol()).unwrap(), ClassId::elliptic(rat(1, 3)));
    }

    #[test]
    fn classify_rejects_non_unimodular() {
        let m = Mat2::raw(2.0, 0.0, 0.0, 1.0);
        assert!(matches!(classify(m, &tol()), Err(ClassifyError::NotUnimodular { .. })));
        assert!(Mat2::new(2.0, 0.0, 0.0, 1.0, 1e-9).is_err());
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge([1.0, 0.0], [0.0, 1.0]), 1.0);
        let m = Mat2::raw(3.0, 1.0, 7.0, 0.0);
        // x ∧ Ax for x = e1 picks out the c entry
        assert_eq!(wedge([1.0, 0.0], m.apply([1.0, 0.0])), 7.0);
        let v = [0.3, -0.7];
        assert_eq!(wedge(v, v), 0.0);
    }

    #[test]
    fn canonical_reps_reclassify() {
        let ids = [
            ClassId::Scalar(Sign::Pos),
            ClassId::Parabolic(Sign::Pos, Sign::Neg),
            ClassId::elliptic(rat(3, 2)),
            ClassId::hyperbolic(rat(2, 1)),
        ];
        for id in ids {
            assert_eq!(classify(canonical_rep(id), &tol()).unwrap(), id);
        }
        // explicit forms from the construction
        let p = canonical_rep(ClassId::Parabolic(Sign::Pos, Sign::Neg));
        assert_eq!(p.entries(), [1.0, 0.0, -1.0, 1.0]);
        let e = canonical_rep(ClassId::elliptic(rat(3, 2)));
        assert!(e.dist(Mat2::raw(0.0, 1.0, -1.0, 0.0)) < 1e-15);
        // orientation constraint c·sin(3π/2) > 0
        assert!(e.c * (1.5 * PI).sin() > 0.0);
    }

    #[test]
    fn phi_identity_and_rotation() {
        let id = phi(IDENTITY);
        assert!((id.a - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(id.b.norm() < 1e-15);
        let alpha = PI / 5.0;
        let q = phi(Mat2::rotation(alpha));
        assert!(q.b.norm() < 1e-15);
        let (l1, l2) = q.eigenvalues();
        let expect = Complex64::new(alpha.cos(), alpha.sin());
        let match_direct = (l1 - expect).norm() < 1e-12 && (l2 - expect.conj()).norm() < 1e-12;
        let match_swapped = (l2 - expect).norm() < 1e-12 && (l1 - expect.conj()).norm() < 1e-12;
        assert!(match_direct || match_swapped);
    }

    #[test]
    fn phi_is_multiplicative() {
        let a = Mat2::rotation(0.7) * Mat2::diagonal(1.3) * Mat2::shear(-0.4);
        let b = Mat2::shear(0.9) * Mat2::rotation(-1.2) * Mat2::diagonal(0.8);
        let lhs = phi(a * b);
        let rhs = phi(a) * phi(b);
        assert!(lhs.dist(rhs) < 1e-14);
        assert!(phi(a).unit_defect() < 1e-14);
        assert!(phi(a).j_residual() < 1e-14);
    }

    #[test]
    fn conjugator_recovers_matrix() {
        let t = tol();
        let k0 = Mat2::rotation(0.9) * Mat2::diagonal(1.7) * Mat2::shear(0.3);
        for id in [
            ClassId::elliptic(rat(2, 3)),
            ClassId::elliptic(rat(7, 5)),
            ClassId::hyperbolic(rat(5, 2)),
            ClassId::hyperbolic(rat(-3, 2)),
            ClassId::Parabolic(Sign::Pos, Sign::Pos),
            ClassId::Parabolic(Sign::Neg, Sign::Neg),
        ] {
            let m = k0 * canonical_rep(id) * k0.inv();
            let k = conjugator_to_canonical(m, id);
            assert!((k.det() - 1.0).abs() < 1e-9);
            let back = k * canonical_rep(id) * k.inv();
            assert!(back.dist(m) < 1e-9, "id {id}: {back} vs {m}");
            let _ = classify(m, &t).unwrap();
        }
    }
}
