//! Parameter normalization for `x^3 - t x^2 - a`.
//!
//! The continued fraction is written in reduced coordinates
//! `t^2 = g1 t2`, `t = g2 t1`, `3a = g1 g2 a*` where `g1 = gcd(t^2, 3a)` and
//! `g2 = gcd(t, 3a / g1)`. Its limit is `x / g2`.
//!
//! Two domain conditions are in play: `|t|^3 > 12a` is enough for the
//! expansion to converge, while the growth and distance bounds require the
//! stronger `12 a* <= |t1 t2|` (equivalently `36a <= |t|^3`).

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// `(t, a)` with `a > 0`, `t != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CubicParams {
    pub t: i64,
    pub a: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ReducedParams {
    pub g1: i64,
    pub g2: i64,
    pub t1: i64,
    pub t2: i64,
    pub a_star: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DomainStatus {
    pub cf_valid: bool,
    pub bounds_valid: bool,
}

/// Flip `(t, a) -> (-t, -a)` when `a < 0`; this maps the dominant root `x`
/// to `-x`.
pub fn normalize(t: i64, a: i64) -> Result<CubicParams> {
    if a == 0 {
        return Err(Error::ZeroConstant);
    }
    if t == 0 {
        return Err(Error::ZeroQuadratic);
    }
    if a > 0 {
        Ok(CubicParams { t, a })
    } else {
        Ok(CubicParams { t: -t, a: -a })
    }
}

/// Map `x^3 + p x + q` to the family via `t = -p`, `a = -q^2`.
pub fn from_depressed_cubic(p: i64, q: i64) -> Result<CubicParams> {
    if q == 0 {
        return Err(Error::ZeroDepressedConstant);
    }
    let a = q
        .checked_mul(q)
        .ok_or_else(|| Error::InvalidArgument(format!("q = {q} overflows q^2")))?;
    normalize(-p, -a)
}

impl CubicParams {
    pub fn new(t: i64, a: i64) -> Result<Self> {
        normalize(t, a)
    }

    pub fn reduce(&self) -> ReducedParams {
        reduce(self)
    }

    pub fn domain(&self) -> DomainStatus {
        check_domain(self)
    }

    /// `|t|^3` as an exact 128-bit integer.
    pub fn abs_t_cubed(&self) -> i128 {
        let t = self.t.unsigned_abs() as i128;
        t * t * t
    }

    pub fn require_cf(&self) -> Result<ReducedParams> {
        if !self.domain().cf_valid {
            return Err(Error::CfDomain { t: self.t, a: self.a });
        }
        Ok(self.reduce())
    }

    pub fn require_bounds(&self) -> Result<ReducedParams> {
        if !self.domain().bounds_valid {
            return Err(Error::BoundsDomain { t: self.t, a: self.a });
        }
        Ok(self.reduce())
    }
}

pub fn reduce(cp: &CubicParams) -> ReducedParams {
    let t = cp.t as i128;
    let three_a = 3 * cp.a as i128;
    let t_sq = t * t;
    let g1 = t_sq.gcd(&three_a);
    let g2 = t.gcd(&(three_a / g1));
    ReducedParams {
        g1: g1 as i64,
        g2: g2 as i64,
        t1: (t / g2) as i64,
        t2: (t_sq / g1) as i64,
        a_star: (three_a / (g1 * g2)) as i64,
    }
}

pub fn check_domain(cp: &CubicParams) -> DomainStatus {
    let rp = reduce(cp);
    DomainStatus {
        cf_valid: cp.abs_t_cubed() > 12 * cp.a as i128,
        bounds_valid: 12 * rp.a_star as i128 <= rp.t1t2().abs(),
    }
}

impl ReducedParams {
    pub fn t1t2(&self) -> i128 {
        self.t1 as i128 * self.t2 as i128
    }

    /// Sign of `t1 t2`, which equals the sign of `t`.
    pub fn positive(&self) -> bool {
        self.t1 > 0
    }

    pub fn abs_t1(&self) -> i64 {
        self.t1.abs()
    }

    /// Parameters of the un-reduced expansion (`g1 = g2 = 1`), i.e. entries
    /// `t^2`, `t`, `3a`.
    pub fn unreduced(cp: &CubicParams) -> ReducedParams {
        ReducedParams {
            g1: 1,
            g2: 1,
            t1: cp.t,
            t2: cp.t * cp.t,
            a_star: 3 * cp.a,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(5, -4).unwrap(), CubicParams { t: -5, a: 4 });
        assert_eq!(normalize(100, 1).unwrap(), CubicParams { t: 100, a: 1 });
        assert_eq!(normalize(-9, 2).unwrap(), CubicParams { t: -9, a: 2 });
        assert!(matches!(normalize(3, 0), Err(Error::ZeroConstant)));
        assert!(matches!(normalize(0, 3), Err(Error::ZeroQuadratic)));
    }

    #[test]
    fn reduce_examples() {
        let r = |t, a| reduce(&normalize(t, a).unwrap());
        let rp = r(100, 1);
        assert_eq!((rp.g1, rp.g2, rp.t1, rp.t2, rp.a_star), (1, 1, 100, 10000, 3));
        let rp = r(6, 2);
        assert_eq!((rp.g1, rp.g2, rp.t1, rp.t2, rp.a_star), (6, 1, 6, 6, 1));
        let rp = r(-9, 2);
        assert_eq!((rp.g1, rp.g2, rp.t1, rp.t2, rp.a_star), (3, 1, -9, 27, 2));
        let rp = r(30, 8);
        assert_eq!((rp.g1, rp.g2, rp.t1, rp.t2, rp.a_star), (12, 2, 15, 75, 1));
    }

    #[test]
    fn domain_examples() {
        let d = check_domain(&normalize(3, 3).unwrap());
        assert!(!d.cf_valid);
        let d = check_domain(&normalize(6, 2).unwrap());
        assert!(d.cf_valid && d.bounds_valid);
        let d = check_domain(&normalize(100, 1).unwrap());
        assert!(d.cf_valid && d.bounds_valid);
    }

    #[test]
    fn depressed_cubic_mapping() {
        assert_eq!(from_depressed_cubic(-100, 1).unwrap(), CubicParams { t: -100, a: 1 });
        assert_eq!(from_depressed_cubic(5, 2).unwrap(), CubicParams { t: 5, a: 4 });
        assert!(from_depressed_cubic(0, 1).is_err());
        assert!(matches!(from_depressed_cubic(3, 0), Err(Error::ZeroDepressedConstant)));
    }

    #[test]
    fn bounds_condition_exhaustive() {
        for t in -200i64..=200 {
            if t == 0 {
                continue;
            }
            for a in 1..=200 {
                let cp = normalize(t, a).unwrap();
                let d = check_domain(&cp);
                assert_eq!(d.bounds_valid, 36 * a as i128 <= cp.abs_t_cubed(), "t={t} a={a}");
                if d.bounds_valid {
                    assert!(d.cf_valid);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn reduction_reassembles(t in -100_000i64..100_000, a in -100_000i64..100_000) {
            prop_assume!(t != 0 && a != 0);
            let cp = normalize(t, a).unwrap();
            let rp = reduce(&cp);
            prop_assert!(cp.a > 0);
            prop_assert!(rp.t2 > 0 && rp.a_star > 0 && rp.g1 > 0 && rp.g2 > 0);
            prop_assert_eq!(rp.t2 as i128 * rp.g1 as i128, cp.t as i128 * cp.t as i128);
            prop_assert_eq!(rp.t1 * rp.g2, cp.t);
            prop_assert_eq!(rp.a_star * rp.g1 * rp.g2, 3 * cp.a);
            prop_assert_eq!(rp.t1.signum(), cp.t.signum());
        }
    }
}
