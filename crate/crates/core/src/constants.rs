//! Certified enclosures of the constants driving the growth and distance
//! bounds.
//!
//! `c1` depends only on `a*`; `c3`, `c4`, `c5` on `(t1 t2, a*)`; the
//! exponent is `lambda = ln c6 / ln c7` with
//!
//! ```text
//! c6 = c3 / (4 c1),   c7 = 4 c1 / (c3 c5)
//! ```
//!
//! The starred variants replace `c1` by the limiting constant
//! `c2 = c1 exp(sum_{k>=1} 1 / (k (3k-1)))`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{atanh_series, Decision, Interval};
use crate::params::ReducedParams;
use crate::primes::{factorize, Sieve};

pub const MIN_SIEVE: u64 = 100_000;
pub const MIN_SERIES: u64 = 1_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConstOpts {
    /// Output precision in bits; internal work runs at twice this.
    pub prec: u32,
    pub sieve_limit: u64,
    pub series_terms: u64,
    pub max_prec: u32,
    pub max_sieve: u64,
}

impl Default for ConstOpts {
    fn default() -> Self {
        ConstOpts {
            prec: 256,
            sieve_limit: 1_000_000,
            series_terms: 100_000,
            max_prec: 4096,
            max_sieve: 16_000_000,
        }
    }
}

fn sieve_cache() -> &'static Mutex<HashMap<u64, Arc<Sieve>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Sieve>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Shared sieve up to `limit`, built once per process.
pub fn shared_sieve(limit: u64) -> Arc<Sieve> {
    let mut cache = sieve_cache().lock().expect("sieve cache poisoned");
    if let Some(s) = cache.iter().find(|(&l, _)| l >= limit).map(|(_, s)| s.clone()) {
        return s;
    }
    let s = Arc::new(Sieve::new(limit));
    cache.insert(limit, s.clone());
    s
}

fn ln_int(n: u64, prec: u32) -> Interval {
    Interval::from_int(n, prec).ln()
}

/// `sum_{p >= 2^12} ln p / (p (p-1))` over the sieve, at a fixed 128 bits.
///
/// Each log is chained from the previous prime through
/// `ln p = ln q + 2 atanh((p - q) / (p + q))`, whose argument is tiny. The
/// terms sum to below `2^-8`, so 128-bit rounding stays far under the tail
/// bound whatever the requested precision.
fn p2_large(sieve_limit: u64) -> Interval {
    const PREC: u32 = 128;
    static CACHE: OnceLock<Mutex<HashMap<u64, Interval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("p2 cache poisoned").get(&sieve_limit) {
        return v.clone();
    }
    let sieve = shared_sieve(sieve_limit);
    let mut rest = Interval::zero(PREC);
    let mut chain: Option<(u64, Interval)> = None;
    for &p in sieve.primes_le(sieve_limit).iter().filter(|&&p| p >= SMALL_PRIME_CUT) {
        let ln_p = match chain.take() {
            None => ln_int(p, PREC),
            Some((q, ln_q)) => ln_q + atanh_series(&Interval::from_ratio(p - q, p + q, PREC)).shifted(1),
        };
        rest = &rest + &ln_p.div_int(p as u128 * (p as u128 - 1));
        chain = Some((p, ln_p));
    }
    cache
        .lock()
        .expect("p2 cache poisoned")
        .insert(sieve_limit, rest.clone());
    rest
}

const SMALL_PRIME_CUT: u64 = 4096;

/// `sum_{p >= 5} ln p / (p (p-1))`, truncated at `sieve_limit` with the
/// tail `sum_{n > N} ln n / (n (n-1)) <= (1 + 2/N)(ln N + 1) / N` added to
/// the upper endpoint.
pub fn p2_universal(sieve_limit: u64, prec: u32) -> Result<Interval> {
    if sieve_limit < MIN_SIEVE {
        return Err(Error::SieveTooSmall {
            limit: sieve_limit,
            min: MIN_SIEVE,
        });
    }
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Interval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("p2 cache poisoned").get(&(sieve_limit, prec)) {
        return Ok(v.clone());
    }
    let sieve = shared_sieve(sieve_limit);
    let mut head = Interval::zero(prec);
    for &p in sieve.primes_le(SMALL_PRIME_CUT).iter().filter(|&&p| p >= 5) {
        head = &head + &ln_int(p, prec).div_int(p * (p - 1));
    }
    let n = sieve_limit;
    let tail_hi =
        (&ln_int(n, prec) + &Interval::one(prec)) * Interval::from_ratio(n + 2, n, prec) / Interval::from_int(n, prec);
    let sum = &head + &p2_large(sieve_limit).with_prec(prec);
    let v = Interval::new(sum.lo().clone(), sum.hi().add(tail_hi.hi()), prec);
    cache
        .lock()
        .expect("p2 cache poisoned")
        .insert((sieve_limit, prec), v.clone());
    Ok(v)
}

/// Enclosure of `c1(a*)`.
pub fn c1_of(a_star: u64, sieve_limit: u64, prec: u32) -> Result<Interval> {
    if a_star == 0 {
        return Err(Error::InvalidArgument("a* must be positive".into()));
    }
    let wp = 2 * prec;
    let factors = factorize(a_star);
    let mut p1 = Interval::zero(wp);
    let mut p2 = p2_universal(sieve_limit, wp)?;
    if !a_star.is_multiple_of(3) {
        // 3 joins the first set with exponent 0.
        p1 = &p1 + &ln_int(3, wp).div_int(2);
    }
    for &(p, sigma) in factors.iter().filter(|(p, _)| *p != 2) {
        let pp = num_bigint::BigInt::from(p).pow(sigma) * (p - 1);
        p1 = &p1 + &ln_int(p, wp).div_int(pp);
        if p >= 5 {
            p2 = &p2 - &ln_int(p, wp).div_int(p as u128 * (p as u128 - 1));
        }
    }
    let exponent = -(&Interval::one(wp) + &p1 + &p2);
    // 2^{-3/4} or 2^{-7/8}
    let two_pow = if a_star.is_multiple_of(2) {
        (-Interval::ln2(wp).mul_int(3).div_int(4)).exp()
    } else {
        (-Interval::ln2(wp).mul_int(7).div_int(8)).exp()
    };
    Ok((two_pow * exponent.exp()).with_prec(prec))
}

/// `sum_{k >= 1} 1 / (k (3k-1))`, with the tail in `[1/(3(N+1)), 1/(3N)]`.
pub fn tau_series(terms: u64, prec: u32) -> Result<Interval> {
    if terms < MIN_SERIES {
        return Err(Error::SeriesTooShort { terms, min: MIN_SERIES });
    }
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Interval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("tau cache poisoned").get(&(terms, prec)) {
        return Ok(v.clone());
    }
    let mut s = Interval::zero(prec);
    for k in 1..=terms {
        s = &s + &Interval::from_ratio(1, k as u128 * (3 * k as u128 - 1), prec);
    }
    let lo = Interval::from_ratio(1, 3 * (terms as u128 + 1), prec);
    let hi = Interval::from_ratio(1, 3 * terms as u128, prec);
    let v = Interval::new(s.lo().add(lo.lo()), s.hi().add(hi.hi()), prec);
    cache
        .lock()
        .expect("tau cache poisoned")
        .insert((terms, prec), v.clone());
    Ok(v)
}

/// `3 ln 3 / 2 - pi / (2 sqrt 3)`, the closed form of [`tau_series`].
pub fn tau_series_closed_form(prec: u32) -> Interval {
    let three = Interval::from_int(3, prec);
    ln_int(3, prec).mul_int(3).div_int(2) - Interval::pi(prec) / three.sqrt().mul_int(2)
}

pub fn c2_of(a_star: u64, sieve_limit: u64, series_terms: u64, prec: u32) -> Result<Interval> {
    let wp = 2 * prec;
    let c1 = c1_of(a_star, sieve_limit, prec)?.with_prec(wp);
    let gamma = tau_series(series_terms, wp)?.exp();
    Ok((c1 * gamma).with_prec(prec))
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthConstants {
    pub c3: Interval,
    pub c4: Interval,
    pub c5: Interval,
}

fn require_bounds(rp: &ReducedParams) -> Result<()> {
    if 12 * rp.a_star as i128 > rp.t1t2().abs() {
        let t = rp.g2 * rp.t1;
        let a = rp.g1 * rp.g2 * rp.a_star / 3;
        return Err(Error::BoundsDomain { t, a });
    }
    Ok(())
}

/// `|t1 t2| + num/den * a*` as an interval.
fn shifted_x(rp: &ReducedParams, num: i64, den: i64, prec: u32) -> Interval {
    let x = rp.t1t2().abs();
    Interval::from_ratio(den as i128 * x + num as i128 * rp.a_star as i128, den, prec)
}

/// `8 * 2^{1/4} / e`.
fn growth_prefactor(prec: u32) -> Interval {
    let quarter = Interval::ln2(prec).div_int(4).exp();
    quarter.mul_int(8) / Interval::e(prec)
}

pub fn growth_constants(rp: &ReducedParams, prec: u32) -> Result<GrowthConstants> {
    require_bounds(rp)?;
    let wp = 2 * prec;
    let k = growth_prefactor(wp);
    let a = rp.a_star as i128;
    let x = rp.t1t2().abs();
    let (c3, c4, c5) = if rp.positive() {
        (
            &k * &shifted_x(rp, 135, 32, wp).sqrt(),
            &k * &shifted_x(rp, 9, 16, wp).sqrt(),
            Interval::from_ratio(9 * a, 16 * x + 9 * a, wp),
        )
    } else {
        (
            &k * &shifted_x(rp, -27, 32, wp).sqrt(),
            &k * &shifted_x(rp, -3, 1, wp).sqrt(),
            Interval::from_ratio(9 * a, 16 * (x - 3 * a), wp),
        )
    };
    Ok(GrowthConstants {
        c3: c3.with_prec(prec),
        c4: c4.with_prec(prec),
        c5: c5.with_prec(prec),
    })
}

/// `sqrt(64 t1 t2 + 270 a*)` or `sqrt(64 |t1 t2| - 54 a*)`.
fn c67_root(rp: &ReducedParams, prec: u32) -> Interval {
    let x = rp.t1t2().abs();
    let a = rp.a_star as i128;
    let v = if rp.positive() {
        64 * x + 270 * a
    } else {
        64 * x - 54 * a
    };
    Interval::from_int(v, prec).sqrt()
}

/// Closed form of `c6` for a given `c1` (or `c2`).
pub fn c6_closed(rp: &ReducedParams, c: &Interval, prec: u32) -> Interval {
    let two_74 = Interval::ln2(prec).mul_int(7).div_int(4).exp();
    c67_root(rp, prec) / (two_74 * Interval::e(prec) * c.with_prec(prec))
}

/// Closed form of `c7` for a given `c1` (or `c2`).
pub fn c7_closed(rp: &ReducedParams, c: &Interval, prec: u32) -> Interval {
    let x = rp.t1t2().abs();
    let a = rp.a_star as i128;
    let (pow, lin) = if rp.positive() {
        (Interval::ln2(prec).mul_int(7).div_int(4).exp(), 16 * x + 9 * a)
    } else {
        (Interval::ln2(prec).mul_int(23).div_int(4).exp(), x - 3 * a)
    };
    pow * Interval::e(prec) * c.with_prec(prec) * Interval::from_int(lin, prec) / (c67_root(rp, prec).mul_int(9 * a))
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    /// Relative gap between the centres of `c3/(4c1)` and the closed `c6`.
    pub c6_gap: f64,
    pub c7_gap: f64,
    pub overlap: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantsBundle {
    pub rp: ReducedParams,
    pub c1: Interval,
    pub c2: Interval,
    pub c3: Interval,
    pub c4: Interval,
    pub c5: Interval,
    pub c6: Interval,
    pub c7: Interval,
    pub c6_star: Interval,
    pub c7_star: Interval,
    /// `None` unless `c7 > 1` is certified.
    pub lambda: Option<Interval>,
    pub lambda_star: Option<Interval>,
    pub bound_tau: Option<Interval>,
    /// `ln bound_tau`, usable where `bound_tau` itself underflows a double.
    pub ln_bound_tau: Option<Interval>,
    pub q0: Interval,
    pub nontrivial: Decision,
    pub c7_ok: Decision,
    pub cross_check: CrossCheck,
    pub prec: u32,
    pub sieve_limit: u64,
    pub refinements: u32,
}

impl ConstantsBundle {
    /// `lambda + 1`, the exponent of the effective irrationality measure.
    pub fn mu_eff(&self) -> Option<Interval> {
        self.lambda.as_ref().map(|l| l + &Interval::one(l.prec()))
    }
}

fn log_ratio(num: &Interval, den: &Interval) -> Option<Interval> {
    if den.lo() > &crate::interval::Dyadic::from_int(1) && num.lo().signum() > 0 {
        Some(num.ln() / den.ln())
    } else {
        None
    }
}

fn bundle_once(
    rp: &ReducedParams,
    opts: &ConstOpts,
    prec: u32,
    sieve: u64,
    refinements: u32,
) -> Result<ConstantsBundle> {
    let wp = 2 * prec;
    let a = rp.a_star as u64;
    let c1 = c1_of(a, sieve, prec)?.with_prec(wp);
    let c2 = c2_of(a, sieve, opts.series_terms, prec)?.with_prec(wp);
    let g = growth_constants(rp, prec)?;
    let (c3, c4, c5) = (g.c3.with_prec(wp), g.c4.with_prec(wp), g.c5.with_prec(wp));

    let c6 = c6_closed(rp, &c1, wp);
    let c7 = c7_closed(rp, &c1, wp);
    let c6_via = &c3 / &c1.mul_int(4);
    let c7_via = c1.mul_int(4) / (&c3 * &c5);
    let cross_check = CrossCheck {
        c6_gap: c6.rel_center_gap(&c6_via),
        c7_gap: c7.rel_center_gap(&c7_via),
        overlap: c6.intersects(&c6_via) && c7.intersects(&c7_via),
    };
    let c6_star = c6_closed(rp, &c2, wp);
    let c7_star = c7_closed(rp, &c2, wp);

    let lambda = log_ratio(&c6, &c7);
    let lambda_star = log_ratio(&c6_star, &c7_star);
    let t1 = rp.abs_t1() as u64;
    let ln_8t1 = ln_int(8 * t1, wp);
    let ln_bound_tau = lambda.as_ref().map(|l| {
        // ln g2 + ln(ln c7)/2 - ln 8 - 8 ln c6 - lambda ln(8|t1|)
        ln_int(rp.g2 as u64, wp) + c7.ln().ln().div_int(2) - ln_int(8, wp) - c6.ln().mul_int(8) - l * &ln_8t1
    });
    let bound_tau = ln_bound_tau.as_ref().map(|l| l.exp());
    let q0 = c7.powi(4).div_int(8 * t1);
    let nontrivial = c6.lt(&c7.square());
    let c7_ok = c7.gt(&Interval::from_ratio(1, 4, wp).exp());

    let out = |x: Interval| x.with_prec(prec);
    Ok(ConstantsBundle {
        rp: *rp,
        c1: out(c1),
        c2: out(c2),
        c3: out(c3),
        c4: out(c4),
        c5: out(c5),
        c6: out(c6),
        c7: out(c7),
        c6_star: out(c6_star),
        c7_star: out(c7_star),
        lambda: lambda.map(out),
        lambda_star: lambda_star.map(out),
        bound_tau: bound_tau.map(out),
        ln_bound_tau: ln_bound_tau.map(out),
        q0: out(q0),
        nontrivial,
        c7_ok,
        cross_check,
        prec,
        sieve_limit: sieve,
        refinements,
    })
}

/// All constants for `rp`, refining precision and sieve until both
/// decisions are determined or the caps are reached.
pub fn bundle(rp: &ReducedParams, opts: &ConstOpts) -> Result<ConstantsBundle> {
    let (mut prec, mut sieve, mut refinements) = (opts.prec, opts.sieve_limit, 0);
    loop {
        let b = bundle_once(rp, opts, prec, sieve, refinements)?;
        let decided =
            b.nontrivial.is_determined() && b.c7_ok.is_determined() && b.c7.gt(&Interval::one(prec)).is_determined();
        if decided || (prec * 2 > opts.max_prec && sieve * 4 > opts.max_sieve) {
            return Ok(b);
        }
        if prec * 2 <= opts.max_prec {
            prec *= 2;
        }
        if sieve * 4 <= opts.max_sieve {
            sieve *= 4;
        }
        refinements += 1;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Positive,
    Negative,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdCase {
    pub sign: Sign,
    /// `B = 4 / tau^{2/3} + C / (64 a*^3) tau^{4/3}`, `C = 234` or `138`.
    pub b: Interval,
    pub u_min: Interval,
    /// Coefficient `K` with `|t| > K a^{4/3}` sufficient for `c6 < c7^2`,
    /// computed from the common bound `B` of the positive case (`B` for
    /// `C = 234` dominates the one for `C = 138`).
    pub t_threshold_coeff: Interval,
    /// The same coefficient computed from this sign's own `B`.
    pub t_threshold_coeff_own: Interval,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdReport {
    pub a_star: u64,
    pub three_divides: bool,
    pub use_c2: bool,
    pub c: Interval,
    pub threshold_tau: Interval,
    pub positive: ThresholdCase,
    pub negative: ThresholdCase,
}

/// Thresholds on `u` and on `|t| / a^{4/3}` computed from `c(a*)`.
///
/// With `u = B^3` the condition is `16 t^3 > 81 u a^4 / (g1 g2)^3 - 27 a`
/// for `t > 0` and `16 |t|^3 > 81 u a^4 / (g1 g2)^3 + 144 a` for `t < 0`;
/// for `a >= 1` the latter follows from `|t|^3 > (81 u / (16 g^3) + 9) a^4`.
/// `g` is the lower bound on `g1 g2` known from `a*` alone: 3 when `3`
/// does not divide `a*`, else 1.
pub fn thresholds(a_star: u64, use_c2: bool, opts: &ConstOpts) -> Result<ThresholdReport> {
    let prec = opts.prec;
    let wp = 2 * prec;
    let c = if use_c2 {
        c2_of(a_star, opts.sieve_limit, opts.series_terms, prec)?
    } else {
        c1_of(a_star, opts.sieve_limit, prec)?
    }
    .with_prec(wp);
    // 2^{21/4} e^3 c^3 / 81
    let tau = Interval::ln2(wp).mul_int(21).div_int(4).exp() * Interval::e(wp).powi(3) * c.powi(3)
        / Interval::from_int(81, wp);
    let ln_tau = tau.ln();
    let tau_23 = ln_tau.mul_int(2).div_int(3).exp();
    let tau_43 = ln_tau.mul_int(4).div_int(3).exp();
    let three_divides = a_star.is_multiple_of(3);
    let g = if three_divides { 1u64 } else { 3 };
    let a3 = (a_star as u128).pow(3);
    let ratio = Interval::from_ratio(81, 16 * (g as u128).pow(3), wp);
    let b_of = |cc: u64| Interval::from_int(4, wp) / &tau_23 + Interval::from_ratio(cc, 64 * a3, wp) * &tau_43;
    let coeff = |sign: Sign, b: &Interval| {
        let cube = match sign {
            Sign::Positive => &b.powi(3) * &ratio,
            Sign::Negative => &b.powi(3) * &ratio + Interval::from_int(9, wp),
        };
        cube.ln().div_int(3).exp().with_prec(prec)
    };
    let b_pos = b_of(234);
    let b_neg = b_of(138);
    let case = |sign: Sign, b: &Interval| ThresholdCase {
        sign,
        b: b.with_prec(prec),
        u_min: b.powi(3).with_prec(prec),
        t_threshold_coeff: coeff(sign, &b_pos),
        t_threshold_coeff_own: coeff(sign, b),
    };
    Ok(ThresholdReport {
        a_star,
        three_divides,
        use_c2,
        c: c.with_prec(prec),
        threshold_tau: tau.with_prec(prec),
        positive: case(Sign::Positive, &b_pos),
        negative: case(Sign::Negative, &b_neg),
    })
}

/// Class-wide thresholds: the smallest `a*` in each class (1 and 3) gives
/// the largest `B`, since `c(a*)` grows and `C / a*^3` shrinks with `a*`.
pub fn worst_case_thresholds(use_c2: bool, opts: &ConstOpts) -> Result<[ThresholdReport; 2]> {
    Ok([thresholds(1, use_c2, opts)?, thresholds(3, use_c2, opts)?])
}

/// Threshold of the classical irrationality-exponent comparison:
/// `2^{2/3} * 81`.
pub fn wakabayashi_coeff(prec: u32) -> Interval {
    Interval::ln2(prec).mul_int(2).div_int(3).exp().mul_int(81)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{normalize, reduce};

    fn rp(t: i64, a: i64) -> ReducedParams {
        reduce(&normalize(t, a).unwrap())
    }

    const SIEVE: u64 = 1_000_000;

    #[test]
    fn c1_values() {
        let c = c1_of(1, SIEVE, 128).unwrap();
        assert!(c.contains_f64_within(0.0924, 5e-5), "{c}");
        let c3 = c1_of(3, SIEVE, 128).unwrap();
        assert!(c3.contains_f64_within(0.1333, 5e-5), "{c3}");
        assert!(c3.contains_f64_within(0.13329, 1e-5), "{c3}");
        let c6 = c1_of(6, SIEVE, 128).unwrap();
        assert!(c6.gt(&c).is_true());
        assert!(c1_of(1, 10, 128).is_err());
    }

    #[test]
    fn c1_oracle_from_float_sum() {
        // independent f64 evaluation with the sum taken to 2e6
        let sieve = Sieve::new(2_000_000);
        let u: f64 = sieve
            .primes()
            .iter()
            .filter(|&&p| p >= 5)
            .map(|&p| (p as f64).ln() / (p as f64 * (p as f64 - 1.0)))
            .sum();
        let f = |a: u64| {
            let mut s1 = 0.0;
            let mut s2 = u;
            if !a.is_multiple_of(3) {
                s1 += 3f64.ln() / 2.0;
            }
            for (p, e) in factorize(a) {
                if p == 2 {
                    continue;
                }
                s1 += (p as f64).ln() / ((p as f64).powi(e as i32) * (p as f64 - 1.0));
                if p >= 5 {
                    s2 -= (p as f64).ln() / (p as f64 * (p as f64 - 1.0));
                }
            }
            let pre = if a.is_multiple_of(2) {
                2f64.powf(-0.75)
            } else {
                2f64.powf(-0.875)
            };
            pre * (-1.0 - s1 - s2).exp()
        };
        for a in [1u64, 2, 3, 6, 9, 10, 25, 35, 210] {
            let c = c1_of(a, SIEVE, 128).unwrap();
            assert!(c.contains_f64_within(f(a), 1e-8), "a*={a} {c} vs {}", f(a));
        }
    }

    #[test]
    fn tau_series_value() {
        let t = tau_series(100_000, 256).unwrap();
        assert!(t.contains_f64_within(0.74102, 5e-6));
        assert!(t.width().to_f64() < 1e-5);
        assert!(t.intersects(&tau_series_closed_form(256)));
        assert!(tau_series(10, 256).is_err());
    }

    #[test]
    fn c2_values() {
        let c = c2_of(1, SIEVE, 100_000, 128).unwrap();
        assert!(c.contains_f64_within(0.1939, 5e-5), "{c}");
        let c3 = c2_of(3, SIEVE, 100_000, 128).unwrap();
        assert!(c3.contains_f64_within(0.2796, 1e-4), "{c3}");
    }

    #[test]
    fn growth_examples() {
        let r = rp(100, 1);
        let g = growth_constants(&r, 128).unwrap();
        assert!(g.c3.contains_f64_within(3499.9, 0.1), "{}", g.c3);
        assert!(g.c5.contains(&Interval::from_ratio(27, 16_000_027, 256).mid()));
        assert!(g.c4.lt(&g.c3).is_true());
        let r = rp(-9, 2);
        let g = growth_constants(&r, 128).unwrap();
        assert!(g.c4.lt(&g.c3).is_true());
        assert!(growth_constants(&rp(3, 2), 128).is_err());
    }

    #[test]
    fn bundle_example() {
        let b = bundle(&rp(100, 1), &ConstOpts::default()).unwrap();
        // f64 evaluation of the closed forms with c1 = 0.13328
        assert!(b.c6.contains_f64_within(6564.94, 0.1), "{}", b.c6);
        assert!(b.c7.contains_f64_within(90.2664, 0.002), "{}", b.c7);
        let l = b.lambda.clone().unwrap();
        assert!(l.contains_f64_within(1.952, 5e-4), "{l}");
        assert_eq!(b.nontrivial, Decision::True);
        assert_eq!(b.c7_ok, Decision::True);
        assert!(b.q0.contains_f64_within(82988.0, 5.0), "{}", b.q0);
        assert!(b.cross_check.overlap);
        assert!(b.cross_check.c6_gap < 1e-9 && b.cross_check.c7_gap < 1e-9);
        let json = serde_json::to_value(&b).unwrap();
        assert_eq!(json["nontrivial"], "true");
        assert!(json["c6"]["lo"].is_string());
    }

    #[test]
    fn lambda_decreases_with_x() {
        let mut last: Option<Interval> = None;
        for t in [60i64, 100, 200, 400, 1000, 5000, 20000] {
            let b = bundle(&rp(t, 1), &ConstOpts::default()).unwrap();
            let l = b.lambda.unwrap();
            if let Some(prev) = &last {
                assert!(l.lt(prev).is_true(), "t={t}");
            }
            last = Some(l);
        }
    }

    #[test]
    fn threshold_values() {
        let opts = ConstOpts::default();
        let [n3, d3] = worst_case_thresholds(false, &opts).unwrap();
        assert!(n3.positive.b.contains_f64_within(104.895, 5e-3), "{}", n3.positive.b);
        assert!(d3.positive.b.contains_f64_within(50.4268, 5e-3), "{}", d3.positive.b);
        assert!(d3.positive.t_threshold_coeff.contains_f64_within(86.587, 0.005));
        assert!(d3.negative.t_threshold_coeff.contains_f64_within(86.58, 0.02));
        let [n3s, d3s] = worst_case_thresholds(true, &opts).unwrap();
        assert!(n3s.positive.b.contains_f64_within(23.93, 0.005));
        assert!(d3s.positive.b.contains_f64_within(11.47, 0.005));
        assert!(d3s.negative.t_threshold_coeff.contains_f64_within(19.71, 0.01));
        assert!(n3s.negative.t_threshold_coeff.contains_f64_within(13.72, 0.01));
        for r in [&n3, &d3, &n3s, &d3s] {
            assert!(r.negative.b.mid() <= r.positive.b.mid());
            assert!(r.negative.t_threshold_coeff_own.mid() <= r.negative.t_threshold_coeff.mid());
        }
        assert!(wakabayashi_coeff(64).contains_f64_within(128.5795, 1e-4));
    }
}
