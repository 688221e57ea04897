//! Certified enclosures of the dominant root of `x^3 - t x^2 - a` and of
//! the quantities measured against it.
//!
//! For `t > 0` the cubic has a single real root, in `(t, t + a/t^2]`. For
//! `t < 0` (with `|t|^3 > 12a`) it has three, `r1 < 2t/3 < r2 < 0 < r3`, and
//! `r1` is the one of largest modulus. In both cases the dominant root sits
//! on a branch where `f` is increasing, so an enclosure `[m, m+1] / 2^F`
//! is certified by the exact signs `f(m/2^F) < 0 < f((m+1)/2^F)` together
//! with the branch condition against `2t/3`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::convergents::ConvergentState;
use crate::error::{Error, Result};
use crate::interval::{Dyadic, Interval};
use crate::params::CubicParams;

pub const START_PREC: u32 = 128;
pub const DEFAULT_PREC_CAP: u32 = 1 << 20;

/// Bits of relative accuracy demanded before a distance or error is
/// reported.
const ACCURACY_BITS: i64 = 40;

#[derive(Clone, Debug, Serialize)]
pub struct CertifiedRoot {
    pub t: i64,
    pub a: i64,
    pub enclosure: Interval,
    /// Number of fractional bits `F`: the enclosure is `[m, m+1] / 2^F`
    /// (or the exact point `m / 2^F`).
    pub precision_bits: u32,
    #[serde(skip)]
    cap: u32,
    #[serde(skip)]
    m: BigInt,
    #[serde(skip)]
    exact: bool,
}

/// `2^{3F} f(m / 2^F) = m^3 - t m^2 2^F - a 2^{3F}`.
fn scaled_f(m: &BigInt, f: u32, t: i64, a: i64) -> BigInt {
    let m2 = m * m;
    &m2 * m - ((&m2 * t) << f as usize) - (BigInt::from(a) << (3 * f as usize))
}

/// `2^{2F} f'(m / 2^F) = 3 m^2 - 2 t m 2^F`.
fn scaled_df(m: &BigInt, f: u32, t: i64) -> BigInt {
    m * m * 3 - ((m * (2 * t)) << f as usize)
}

fn sign(x: &BigInt) -> Ordering {
    x.sign().cmp(&num_bigint::Sign::NoSign)
}

/// Newton with precision doubling; returns `m ~ x 2^F`.
fn newton(t: i64, a: i64, target: u32) -> BigInt {
    let x0 = t as f64 + a as f64 / (t as f64 * t as f64);
    let mut f = 48u32.min(target);
    let d = Dyadic::from_f64(x0).expect("finite start");
    let mut m = d.shifted(f as i64).floor();
    loop {
        for _ in 0..64 {
            let num = scaled_f(&m, f, t, a);
            let den = scaled_df(&m, f, t);
            if den.is_zero() {
                break;
            }
            let step = num.div_floor(&den);
            m -= &step;
            if step.abs() <= BigInt::from(1) {
                break;
            }
        }
        if f == target {
            return m;
        }
        let next = (2 * f).min(target);
        m <<= (next - f) as usize;
        f = next;
    }
}

impl CertifiedRoot {
    fn compute(cp: &CubicParams, bits: u32, cap: u32) -> Result<Self> {
        if !cp.domain().cf_valid {
            return Err(Error::CfDomain { t: cp.t, a: cp.a });
        }
        if bits > cap {
            return Err(Error::PrecisionExhausted {
                bits: cap,
                what: "isolating the dominant root".into(),
            });
        }
        let (t, a) = (cp.t, cp.a);
        let f = bits.max(8);
        let mut m = newton(t, a, f);
        while sign(&scaled_f(&m, f, t, a)) == Ordering::Greater {
            m -= 1;
        }
        let mut exact = false;
        loop {
            match sign(&scaled_f(&(&m + 1), f, t, a)) {
                Ordering::Less => m += 1,
                Ordering::Equal => {
                    m += 1;
                    exact = true;
                    break;
                }
                Ordering::Greater => break,
            }
        }
        if !exact && sign(&scaled_f(&m, f, t, a)) == Ordering::Equal {
            exact = true;
        }
        // Branch certificate: the bracket lies on the increasing branch past
        // the critical point 2t/3 that separates it from the other roots.
        let two_t = BigInt::from(2 * t) << f as usize;
        let on_branch = if t > 0 { &m * 3 > two_t } else { (&m + 1) * 3 < two_t };
        if !on_branch {
            return Err(Error::Internal(format!(
                "root bracket for ({t}, {a}) left the dominant branch"
            )));
        }
        let lo = Dyadic::new(m.clone(), -(f as i64));
        let hi = if exact {
            lo.clone()
        } else {
            Dyadic::new(&m + 1, -(f as i64))
        };
        let prec = f + 64 + 64;
        Ok(CertifiedRoot {
            t,
            a,
            enclosure: Interval::new(lo, hi, prec),
            precision_bits: f,
            cap,
            m,
            exact,
        })
    }

    /// Recompute with at least `bits` fractional bits.
    pub fn refine(&mut self, bits: u32) -> Result<()> {
        if bits <= self.precision_bits {
            return Ok(());
        }
        let cp = CubicParams { t: self.t, a: self.a };
        *self = CertifiedRoot::compute(&cp, bits, self.cap)?;
        Ok(())
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Whether the root is an exact dyadic (hence rational) number.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// `(lo, hi)` as integers over `2^F`.
    fn bracket(&self) -> (BigInt, BigInt) {
        let hi = if self.exact { self.m.clone() } else { &self.m + 1 };
        (self.m.clone(), hi)
    }
}

/// Dominant real root with `precision_bits` fractional bits.
pub fn largest_root(cp: &CubicParams, precision_bits: u32) -> Result<CertifiedRoot> {
    CertifiedRoot::compute(cp, precision_bits, DEFAULT_PREC_CAP)
}

/// Integer root of the cubic, if it has one (the cubic is then reducible).
pub fn integer_root(cp: &CubicParams) -> Option<i64> {
    let r = largest_root(cp, 16).ok()?;
    let lo = r.enclosure.lo().floor();
    [lo.clone(), lo + 1].into_iter().find_map(|c| {
        let c: i64 = c.try_into().ok()?;
        let (c2, t, a) = (c as i128 * c as i128, cp.t as i128, cp.a as i128);
        (c2 * (c as i128 - t) == a).then_some(c)
    })
}

fn relative_ok(iv: &Interval) -> bool {
    if iv.contains_zero() {
        return false;
    }
    let w = iv.width();
    w.is_zero() || iv.lo().abs().mag_exp() - w.mag_exp() >= ACCURACY_BITS
}

fn exhausted(root: &CertifiedRoot, what: &str) -> Error {
    Error::PrecisionExhausted {
        bits: root.cap,
        what: what.into(),
    }
}

/// `|x/g2 - p/q|`, refining the root until sign and magnitude are settled.
pub fn approx_error(root: &mut CertifiedRoot, g2: i64, p: &BigInt, q: &BigInt) -> Result<Interval> {
    if q.is_zero() || g2 <= 0 {
        return Err(Error::InvalidArgument("approx_error needs q != 0 and g2 > 0".into()));
    }
    loop {
        let f = root.precision_bits;
        let (lo, hi) = root.bracket();
        // (q x - g2 p) / (g2 q), over 2^F.
        let shift = (BigInt::from(g2) * p) << f as usize;
        let (a, b) = (q * &lo - &shift, q * &hi - &shift);
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let num = Interval::new(
            Dyadic::new(a, -(f as i64)),
            Dyadic::new(b, -(f as i64)),
            f + 2 * q.bits() as u32 + 64,
        );
        let diff = &num / &Interval::from_int(BigInt::from(g2) * q, num.prec());
        if root.exact && diff.is_point() {
            return Ok(diff.abs());
        }
        if relative_ok(&diff) {
            return Ok(diff.abs());
        }
        if 2 * f > root.cap {
            return Err(exhausted(root, "enclosing |x/g2 - p/q|"));
        }
        root.refine(2 * f)?;
    }
}

/// [`approx_error`] for a convergent state.
pub fn approx_error_state(root: &mut CertifiedRoot, g2: i64, state: &ConvergentState) -> Result<Interval> {
    approx_error(root, g2, &state.p, &state.q)
}

/// `||q x||` for the root `x` itself, refining until the nearest integer is
/// unambiguous and the distance has a certified positive lower bound (or
/// the root is exact and the distance is an exact point).
pub fn dist_nearest_int(q: &BigInt, root: &mut CertifiedRoot) -> Result<Interval> {
    if q.sign() != num_bigint::Sign::Plus {
        return Err(Error::InvalidArgument("dist_nearest_int needs q >= 1".into()));
    }
    loop {
        let f = root.precision_bits;
        let (lo, hi) = root.bracket();
        let (a, b) = (q * &lo, q * &hi);
        // nearest integer to v/2^F is floor((2v + 2^F) / 2^{F+1})
        let half = BigInt::from(1) << f as usize;
        let n_a: BigInt = (&a * 2 + &half) >> (f as usize + 1);
        let n_b: BigInt = (&b * 2 + &half) >> (f as usize + 1);
        if n_a == n_b {
            let nf = &n_a << f as usize;
            let (da, db) = ((&a - &nf).abs(), (&b - &nf).abs());
            let (dlo, dhi) = if da <= db { (da, db) } else { (db, da) };
            // If q x straddles n the distance can approach 0.
            let straddles = a <= nf && nf <= b;
            let dlo = if straddles { BigInt::zero() } else { dlo };
            let prec = f + 64;
            let d = Interval::new(Dyadic::new(dlo, -(f as i64)), Dyadic::new(dhi, -(f as i64)), prec);
            if root.exact && a == b {
                return Ok(d);
            }
            if !straddles && relative_ok(&d) {
                return Ok(d);
            }
        }
        if 2 * f > root.cap {
            return Err(exhausted(root, "enclosing ||q x||"));
        }
        root.refine(2 * f)?;
    }
}

/// `||q x||` computed through `x / g2`: the enclosure of `x` is divided by
/// `g2` with outward rounding and multiplied back.
pub fn dist_nearest_int_via_ratio(q: &BigInt, root: &CertifiedRoot, g2: i64) -> Interval {
    let prec = root.precision_bits + 64 + q.bits() as u32;
    let ratio = root.enclosure.with_prec(prec) / Interval::from_int(g2, prec);
    let qx = ratio * Interval::from_int(BigInt::from(g2) * q, prec);
    let n = qx.mid().add(&Dyadic::new(BigInt::from(1), -1)).floor();
    (qx - Interval::from_int(n, prec)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convergents::Convergents;
    use crate::params::normalize;

    fn cp(t: i64, a: i64) -> CubicParams {
        normalize(t, a).unwrap()
    }

    /// Independent bisection in f64 for a coarse oracle.
    fn bisect(t: f64, a: f64, mut lo: f64, mut hi: f64) -> f64 {
        let f = |x: f64| x * x * (x - t) - a;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn root_examples() {
        let r = largest_root(&cp(100, 1), 20).unwrap();
        assert!(r.enclosure.lo_f64() >= 100.00009 && r.enclosure.hi_f64() <= 100.00011);
        let r = largest_root(&cp(100, 1), 256).unwrap();
        assert!(r.enclosure.contains_f64_within(100.0000999998, 1e-10));
        let r = largest_root(&cp(6, 2), 64).unwrap();
        assert!(r.enclosure.lo_f64() > 6.05 && r.enclosure.hi_f64() < 6.06);
        let r = largest_root(&cp(-100, 1), 64).unwrap();
        assert!(r.enclosure.contains_f64_within(-99.9999, 1e-4));
        assert!(largest_root(&cp(3, 3), 64).is_err());
    }

    #[test]
    fn root_residual_brackets_zero() {
        for (t, a) in [(6, 2), (100, 1), (-9, 2), (7, 2), (14, 3), (-50, 7), (1000, 999)] {
            for bits in [16u32, 128, 1024] {
                let r = largest_root(&cp(t, a), bits).unwrap();
                let x = &r.enclosure;
                let t_iv = Interval::from_int(t, x.prec());
                let a_iv = Interval::from_int(a, x.prec());
                let val = x.powi(3) - &t_iv * &x.square() - a_iv;
                assert!(val.contains_zero(), "({t},{a}) bits={bits}");
                assert!(r.enclosure.width() <= Dyadic::new(BigInt::from(1), -(bits as i64)));
                let oracle = bisect(
                    t as f64,
                    a as f64,
                    t as f64,
                    if t > 0 { t as f64 + 1.0 } else { 2.0 * t as f64 / 3.0 },
                );
                assert!(x.contains_f64_within(oracle, 1e-9 * (t as f64).abs()));
            }
        }
    }

    #[test]
    fn dominant_root_beats_the_others() {
        // t < 0: the other two roots lie in (2t/3, 0) and (0, sqrt(a/|t|)).
        for (t, a) in [(-9i64, 2i64), (-50, 7), (-100, 1)] {
            let r = largest_root(&cp(t, a), 64).unwrap();
            let f = |x: f64| x * x * (x - t as f64) - a as f64;
            let r2 = bisect(t as f64, a as f64, 2.0 * t as f64 / 3.0, 0.0);
            let r3 = {
                let (mut lo, mut hi) = (0.0, (a as f64 / (t as f64).abs()).sqrt() + 1.0);
                for _ in 0..200 {
                    let m = 0.5 * (lo + hi);
                    if f(m) < 0.0 {
                        lo = m
                    } else {
                        hi = m
                    }
                }
                lo
            };
            let x = r.enclosure.to_f64().abs();
            assert!(x > r2.abs() && x > r3.abs());
        }
    }

    #[test]
    fn reducible_cubic_is_exact() {
        // 15^2 (15 - 14) = 225
        assert_eq!(integer_root(&cp(14, 225)), Some(15));
        let r = largest_root(&cp(14, 225), 64).unwrap();
        assert!(r.is_exact());
        assert!(integer_root(&cp(100, 1)).is_none());
    }

    #[test]
    fn approx_error_examples() {
        let c = cp(6, 2);
        let rp = c.reduce();
        let mut root = largest_root(&c, START_PREC).unwrap();
        let e = approx_error(&mut root, rp.g2, &BigInt::from(6), &BigInt::from(1)).unwrap();
        assert!(e.contains_f64_within(0.0545, 5e-4));
        for c in [cp(100, 1), cp(-9, 2), cp(14, 3), cp(30, 8)] {
            let rp = c.reduce();
            let mut root = largest_root(&c, START_PREC).unwrap();
            let mut last: Option<Interval> = None;
            for s in Convergents::new(&rp).take(101).filter(|s| s.n % 4 == 0) {
                let e = approx_error_state(&mut root, rp.g2, &s).unwrap();
                if let Some(prev) = &last {
                    assert!(e.lt(prev).is_true(), "{c:?} n={}", s.n);
                }
                last = Some(e);
            }
        }
    }

    #[test]
    fn distance_examples() {
        let mut root = largest_root(&cp(100, 1), START_PREC).unwrap();
        let d = dist_nearest_int(&BigInt::from(1), &mut root).unwrap();
        assert!(d.contains_f64_within(9.999e-5, 1e-8));
        let mut root = largest_root(&cp(6, 2), START_PREC).unwrap();
        let d = dist_nearest_int(&BigInt::from(1), &mut root).unwrap();
        assert!(d.contains_f64_within(0.0545, 5e-4));
        assert!(dist_nearest_int(&BigInt::from(0), &mut root).is_err());
    }

    #[test]
    fn distance_two_routes_agree() {
        for c in [cp(100, 1), cp(30, 8), cp(-9, 2)] {
            let rp = c.reduce();
            let mut root = largest_root(&c, START_PREC).unwrap();
            for s in Convergents::new(&rp).take(61).filter(|s| s.n % 4 == 0 && s.n > 0) {
                let q = s.q.abs();
                let d = dist_nearest_int(&q, &mut root).unwrap();
                let d2 = dist_nearest_int_via_ratio(&q, &root, rp.g2);
                assert!(d.intersects(&d2), "{c:?} n={}", s.n);
            }
        }
    }

    #[test]
    fn refinement_cap_is_reported() {
        let mut root = largest_root(&cp(100, 1), 16).unwrap().with_cap(64);
        let rp = cp(100, 1).reduce();
        let s = Convergents::new(&rp).nth(40).unwrap();
        let err = approx_error_state(&mut root, rp.g2, &s);
        assert!(matches!(err, Err(Error::PrecisionExhausted { .. })));
    }
}
