//! Seeded random sampling of class representatives.
//!
//! Conjugators are built from Iwasawa-style factors: a rotation with angle
//! uniform on [0,2π), a diagonal boost and a shear with standard-normal
//! parameters. The distribution has full support on SL₂(ℝ) and is cheap to
//! draw; everything is reproducible from an explicit stream.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::class::ClassId;
use crate::matrix::{canonical_rep, Mat2};

/// Derives an independent deterministic stream from a base seed, a role tag
/// and an index (splitmix-style mixing).
pub fn derive_rng(seed: u64, tag: u64, index: u64) -> ChaCha8Rng {
    let mut z = seed ^ tag.rotate_left(17) ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    ChaCha8Rng::seed_from_u64(z)
}

/// A random conjugator K = R(θ)·diag(eˢ,e⁻ˢ)·shear(u).
pub fn random_conjugator<R: Rng>(rng: &mut R) -> Mat2 {
    let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let s: f64 = rng.sample(StandardNormal);
    let u: f64 = rng.sample(StandardNormal);
    Mat2::rotation(theta) * Mat2::diagonal(s.exp()) * Mat2::shear(u)
}

/// Like [`random_conjugator`] with the boost and shear clipped to a bounded
/// range, for checks stated at absolute floating-point tolerances.
pub fn random_conjugator_bounded<R: Rng>(rng: &mut R, bound: f64) -> Mat2 {
    let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let s: f64 = rng.sample::<f64, _>(StandardNormal).clamp(-bound, bound);
    let u: f64 = rng.sample::<f64, _>(StandardNormal).clamp(-bound, bound);
    Mat2::rotation(theta) * Mat2::diagonal(s.exp()) * Mat2::shear(u)
}

/// Inverse of a conjugator built by [`random_conjugator`], composed from
/// the exact factor inverses. Kept as a helper so sampling stays exactly
/// unimodular instead of relying on the generic adjugate of a product.
fn conjugate(k: Mat2, m: Mat2) -> Mat2 {
    k * m * k.inv()
}

/// Draws a random element of the class: K·rep·K⁻¹ for a random K. Scalar
/// classes are fixed by conjugation and come back exactly.
pub fn sample<R: Rng>(id: ClassId, rng: &mut R) -> Mat2 {
    sample_conjugated(id, rng).1
}

/// Like [`sample`], also returning the conjugator that produced the draw.
pub fn sample_conjugated<R: Rng>(id: ClassId, rng: &mut R) -> (Mat2, Mat2) {
    let rep = canonical_rep(id);
    if id.is_scalar() {
        return (crate::matrix::IDENTITY, rep);
    }
    let k = random_conjugator(rng);
    (k, conjugate(k, rep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::Sign;
    use crate::matrix::{classify, Tolerances};
    use crate::rat::rat;

    #[test]
    fn scalar_samples_are_exact() {
        let mut rng = derive_rng(1, 2, 3);
        let m = sample(ClassId::Scalar(Sign::Neg), &mut rng);
        assert_eq!(m.entries(), [-1.0, 0.0, 0.0, -1.0]);
    }

    #[test]
    fn sampling_round_trips_through_classify() {
        let tol = Tolerances::default();
        let mut rng = derive_rng(42, 0, 0);
        let ids = [
            ClassId::elliptic(rat(2, 3)),
            ClassId::elliptic(rat(7, 6)),
            ClassId::hyperbolic(rat(3, 2)),
            ClassId::hyperbolic(rat(-2, 1)),
            ClassId::Parabolic(Sign::Pos, Sign::Neg),
            ClassId::Parabolic(Sign::Neg, Sign::Pos),
        ];
        for id in ids {
            for _ in 0..200 {
                let m = sample(id, &mut rng);
                assert_eq!(classify(m, &tol).unwrap(), id, "sample of {id} reclassifies");
            }
        }
    }

    #[test]
    fn trace_is_a_class_function() {
        let mut rng = derive_rng(7, 7, 7);
        let id = ClassId::hyperbolic(rat(3, 2));
        for _ in 0..100 {
            let m = sample(id, &mut rng);
            assert!((m.trace() - (1.5 + 2.0 / 3.0)).abs() < 1e-9);
        }
    }

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<u64> = {
            let mut r = derive_rng(5, 1, 9);
            (0..8).map(|_| r.gen()).collect()
        };
        let b: Vec<u64> = {
            let mut r = derive_rng(5, 1, 9);
            (0..8).map(|_| r.gen()).collect()
        };
        assert_eq!(a, b);
        let c: Vec<u64> = {
            let mut r = derive_rng(5, 1, 10);
            (0..8).map(|_| r.gen()).collect()
        };
        assert_ne!(a, c);
    }
}
