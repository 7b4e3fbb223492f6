//! Exact rational scalars and snapping helpers.

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::ParseError;

/// Exact rational number. Denominators stay small in this domain (angle
/// grids, snapped classification output, CLI input), so `i64` is plenty.
pub type Rat = Ratio<i64>;

/// Shorthand constructor, `rat(2, 3) = 2/3`.
pub fn rat(num: i64, den: i64) -> Rat {
    Ratio::new(num, den)
}

pub fn rat_to_f64(r: Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Renders `p/q` without spaces; integers drop the denominator.
pub fn rat_to_string(r: Rat) -> String {
    if r.denom() == &1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` with both parts bounded to keep downstream
/// arithmetic far from overflow.
pub fn parse_rat(s: &str, at: usize) -> Result<Rat, ParseError> {
    const BOUND: i64 = 1_000_000;
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: i64 = num_str
        .parse()
        .map_err(|_| ParseError::new(at, format!("expected integer, got `{num_str}`")))?;
    let den: i64 = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| ParseError::new(at, format!("expected integer denominator, got `{d}`")))?,
        None => 1,
    };
    if den == 0 {
        return Err(ParseError::new(at, "zero denominator"));
    }
    if num.abs() > BOUND || den.abs() > BOUND {
        return Err(ParseError::new(at, format!("rational out of range: `{s}`")));
    }
    Ok(Ratio::new(num, den))
}

/// Best rational approximation `p/q` of `x` with `q <= max_den`, by the
/// Stern-Brocot walk (convergents and semiconvergents of the continued
/// fraction expansion).
pub fn best_rational_approx(x: f64, max_den: i64) -> Rat {
    debug_assert!(max_den >= 1);
    if !x.is_finite() {
        return Rat::zero();
    }
    let neg = x < 0.0;
    let x = x.abs();
    // lower bound a/b, upper bound c/d
    let (mut a, mut b, mut c, mut d) = (x.floor() as i64, 1i64, x.floor() as i64 + 1, 1i64);
    let mut best = Ratio::new(a, 1);
    let mut best_err = (x - a as f64).abs();
    let upd = |p: i64, q: i64, best: &mut Rat, best_err: &mut f64| {
        let err = (x - p as f64 / q as f64).abs();
        if err < *best_err {
            *best_err = err;
            *best = Ratio::new(p, q);
        }
    };
    upd(c, d, &mut best, &mut best_err);
    loop {
        // mediant
        let (p, q) = (a + c, b + d);
        if q > max_den {
            break;
        }
        upd(p, q, &mut best, &mut best_err);
        if (p as f64) < x * q as f64 {
            a = p;
            b = q;
        } else if (p as f64) > x * q as f64 {
            c = p;
            d = q;
        } else {
            break; // exact hit
        }
    }
    if neg {
        -best
    } else {
        best
    }
}

/// Snaps `x` to a rational with denominator at most `max_den` when one lies
/// within `tol`; otherwise returns `None`.
pub fn snap_to_rational(x: f64, max_den: i64, tol: f64) -> Option<Rat> {
    let r = best_rational_approx(x, max_den);
    if (x - rat_to_f64(r)).abs() <= tol {
        Some(r)
    } else {
        None
    }
}

/// Sign of a rational as ±1 (0 maps to +1; callers exclude zero).
pub fn rat_sign(r: Rat) -> i64 {
    if r.is_negative() {
        -1
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn approximates_pi_fraction() {
        let x = 1.0 / 3.0;
        assert_eq!(best_rational_approx(x, 360), rat(1, 3));
        let x = 0.49999999998;
        assert_eq!(best_rational_approx(x, 360), rat(1, 2));
    }

    #[test]
    fn snap_respects_tolerance() {
        assert_eq!(snap_to_rational(0.333333333, 360, 1e-7), Some(rat(1, 3)));
        assert_eq!(snap_to_rational(0.3339, 360, 1e-7), None);
        // a value that is exactly representable
        assert_eq!(snap_to_rational(1.5, 10_000, 1e-7), Some(rat(3, 2)));
        assert_eq!(snap_to_rational(-1.5, 10_000, 1e-7), Some(rat(-3, 2)));
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_rat("2/3", 0).unwrap(), rat(2, 3));
        assert_eq!(parse_rat("-3/2", 0).unwrap(), rat(-3, 2));
        assert_eq!(parse_rat("5", 0).unwrap(), rat(5, 1));
        assert!(parse_rat("1/0", 0).is_err());
        assert_eq!(rat_to_string(rat(4, 6)), "2/3");
        assert_eq!(rat_to_string(rat(8, 4)), "2");
    }
}
