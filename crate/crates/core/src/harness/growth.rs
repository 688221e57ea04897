//! Growth of the block denominators `q_{4k}` and the distance from the
//! convergents to `x / g2`.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use super::Verdict;
use crate::certreal::{approx_error, largest_root, START_PREC};
use crate::cf::block_coeffs;
use crate::constants::{bundle, growth_constants, ConstOpts};
use crate::convergents::{reduced, Convergents};
use crate::error::Result;
use crate::interval::{Decision, Interval};
use crate::params::{CubicParams, ReducedParams};

const PREC: u32 = 256;

/// Per-block outcome. `lemma6` and `lemma7` use the branch matching the
/// sign of `t1 t2`.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthRow {
    pub k: usize,
    /// `log10 |q_{4k+4} / q_{4k}|`, for reading only.
    pub log10_ratio: f64,
    pub lemma5: bool,
    pub lemma6: bool,
    pub lemma7: bool,
    pub upper_aggregate: Decision,
    pub lower_aggregate: Decision,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub rp: ReducedParams,
    pub k_max: usize,
    pub branch: &'static str,
    pub rows: Vec<GrowthRow>,
    pub exact_failures: usize,
    pub aggregate_failures: usize,
    pub aggregate_undetermined: usize,
    pub verdict: Verdict,
}

fn sq(x: BigInt) -> BigInt {
    &x * &x
}

/// `(8k+3)(8k+5)(8k+7)(8k+9)`.
fn p4(k: usize) -> BigInt {
    let k = BigInt::from(k);
    (&k * 8 + 3) * (&k * 8 + 5) * (&k * 8 + 7) * (&k * 8 + 9)
}

/// Exact per-block checks on `|q_{4k+4}|` against `|q_{4k}|`, all
/// denominators cleared.
fn block_bounds(rp: &ReducedParams, k: usize, q: &BigInt, q_next: &BigInt) -> (bool, bool, bool) {
    let (q, qn) = (q.abs(), q_next.abs());
    let x = BigInt::from(rp.t1t2());
    let a = BigInt::from(rp.a_star);
    let p = p4(k);
    let lemma5 = qn > (&p * sq(&x + &a * 2) * &q);
    let (lemma6, lemma7) = if rp.positive() {
        (
            &qn * 1024 <= &p * 2 * sq(&x * 32 + &a * 135) * &q,
            &qn * 256 >= &p * 2 * sq(&x * 16 + &a * 9) * &q,
        )
    } else {
        (
            &qn * 1024 <= &p * 2 * sq(&x * 32 + &a * 27) * &q,
            qn >= &p * 2 * sq(&x + &a * 3) * &q,
        )
    };
    (lemma5, lemma6, lemma7)
}

fn ln_big(v: &BigInt, prec: u32) -> Interval {
    Interval::from_int(v.abs(), prec).ln()
}

/// Checks Lemma-type bounds on the block denominators for `1 <= k <= k_max`:
/// exact integer comparisons per block and the aggregate
/// `8k c4^{4k} k^{4k} <= |q_{4k}| <= 16k c3^{4k} k^{4k}` in logarithms.
pub fn verify_growth(rp: &ReducedParams, k_max: usize) -> Result<GrowthReport> {
    let g = growth_constants(rp, PREC)?;
    let (ln_c3, ln_c4) = (g.c3.ln(), g.c4.ln());
    let q: Vec<BigInt> = Convergents::new(rp).step_by(4).take(k_max + 2).map(|s| s.q).collect();

    let rows: Vec<GrowthRow> = (1..=k_max)
        .map(|k| {
            let (lemma5, lemma6, lemma7) = block_bounds(rp, k, &q[k], &q[k + 1]);
            let ln_q = ln_big(&q[k], PREC);
            let ln_k = Interval::from_int(k, PREC).ln();
            let n = 4 * k as i64;
            let upper = Interval::from_int(16 * k, PREC).ln() + (&ln_c3 + &ln_k).mul_int(n);
            let lower = Interval::from_int(8 * k, PREC).ln() + (&ln_c4 + &ln_k).mul_int(n);
            let log10_ratio = (ln_big(&q[k + 1], 64) - ln_big(&q[k], 64)).to_f64() / std::f64::consts::LN_10;
            GrowthRow {
                k,
                log10_ratio,
                lemma5,
                lemma6,
                lemma7,
                upper_aggregate: ln_q.le(&upper),
                lower_aggregate: lower.le(&ln_q),
            }
        })
        .collect();

    let exact_failures = rows.iter().filter(|r| !(r.lemma5 && r.lemma6 && r.lemma7)).count();
    let aggs = || rows.iter().flat_map(|r| [r.upper_aggregate, r.lower_aggregate]);
    let aggregate_failures = aggs().filter(|&d| d == Decision::False).count();
    let aggregate_undetermined = aggs().filter(|&d| d == Decision::Undetermined).count();
    let verdict = if exact_failures + aggregate_failures > 0 {
        Verdict::Fail
    } else if aggregate_undetermined > 0 {
        Verdict::Undetermined
    } else {
        Verdict::Pass
    };
    Ok(GrowthReport {
        rp: *rp,
        k_max,
        branch: if rp.positive() { "t1t2 > 0" } else { "t1t2 < 0" },
        rows,
        exact_failures,
        aggregate_failures,
        aggregate_undetermined,
        verdict,
    })
}

/// Outcome of the polynomial step behind the lower bound for `t1 t2 < 0`.
#[derive(Clone, Debug, Serialize)]
pub struct Lemma7PolyReport {
    pub k_max: usize,
    /// The expansion has no `(t1 t2)^2` term and the stated `a* t1 t2` and
    /// `a*^2` coefficients, for every `k` checked.
    pub expansion_ok: bool,
    /// `12 |c_X| > |c_A|`, which makes the expression positive whenever
    /// `t1 t2 < -12 a*`.
    pub dominance_ok: bool,
    pub first_failure: Option<usize>,
    pub verdict: Verdict,
}

/// Coefficients `(c_X, c_A)` of `c_X a* t1 t2 + c_A a*^2`.
fn lemma7_coeffs(k: usize) -> (BigInt, BigInt) {
    let k = BigInt::from(k);
    let k2: BigInt = &k * &k;
    let k3: BigInt = &k2 * &k;
    let k4: BigInt = &k3 * &k;
    let cubic: BigInt = &k3 * 160 + &k2 * 1532 + &k * 1063 + 196;
    let cx: BigInt = (&k * 8 + 7) * cubic * 6;
    let ca: BigInt = &k4 * 71136 + &k3 * 212976 + &k2 * 227970 + &k * 102633 + 16240;
    (-cx, -ca)
}

/// `a_k11 + 12(8k-3)(12k+1)(3k+1)(8k+7) a* X - 2 P (X + 3a*)^2` with
/// `X = t1 t2`.
fn lemma7_expression(k: usize, x: i64, a: i64) -> BigInt {
    let rp = ReducedParams {
        g1: 1,
        g2: 1,
        t1: x,
        t2: 1,
        a_star: a,
    };
    let a_k11 = block_coeffs(&rp, k).a_k11;
    let kk = BigInt::from(k);
    let (xb, ab) = (BigInt::from(x), BigInt::from(a));
    let mid = (&kk * 8 - 3) * (&kk * 12 + 1) * (&kk * 3 + 1) * (&kk * 8 + 7) * 12 * &ab * &xb;
    a_k11 + mid - p4(k) * 2 * sq(&xb + &ab * 3)
}

/// Grid check of the polynomial identity and sign claim for
/// `1 <= k <= k_max`.
pub fn lemma7_polynomial_check(k_max: usize) -> Lemma7PolyReport {
    let probes: [(i64, i64); 4] = [(1, 0), (0, 1), (1, 1), (-13, 2)];
    let mut expansion_ok = true;
    let mut dominance_ok = true;
    let first_failure = (1..=k_max).find(|&k| {
        let (cx, ca) = lemma7_coeffs(k);
        let expansion = probes.iter().all(|&(x, a)| {
            let expected = &cx * (a * x) + &ca * (a * a);
            lemma7_expression(k, x, a) == expected
        });
        let dominance = cx.is_negative() && cx.abs() * 12 > ca.abs();
        expansion_ok &= expansion;
        dominance_ok &= dominance;
        !(expansion && dominance)
    });
    Lemma7PolyReport {
        k_max,
        expansion_ok,
        dominance_ok,
        first_failure,
        verdict: if first_failure.is_none() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DistanceRow {
    pub k: usize,
    /// `|x/g2 - p_{4k}/q_{4k}|`.
    pub error: Interval,
    /// `|t1| c5^{4k}`.
    pub bound: Interval,
    pub holds: Decision,
    /// `|q*_k| <= 4 sqrt(2k/pi) c6^{4k}`; absent for `k = 0`.
    pub q_envelope: Option<Decision>,
    /// `q*_k |x/g2 - p*_k/q*_k| <= 4|t1| sqrt(k) c7^{-4k}`; absent for `k = 0`.
    pub dx_envelope: Option<Decision>,
    pub root_bits: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistanceReport {
    pub cp: CubicParams,
    pub rp: ReducedParams,
    pub k_max: usize,
    pub rows: Vec<DistanceRow>,
    pub verdict: Verdict,
}

/// Distance from the block convergents to `x / g2` for `0 <= k <= k_max`,
/// with the envelopes on the reduced convergents.
pub fn verify_distance(cp: &CubicParams, k_max: usize, opts: &ConstOpts) -> Result<DistanceReport> {
    let rp = cp.require_bounds()?;
    let b = bundle(&rp, opts)?;
    let prec = b.prec;
    let t1 = Interval::from_int(rp.abs_t1(), prec);
    let pi = Interval::pi(prec);
    let mut root = largest_root(cp, START_PREC)?;
    let mut rows = Vec::with_capacity(k_max + 1);
    for (k, s) in Convergents::new(&rp).step_by(4).take(k_max + 1).enumerate() {
        let error = approx_error(&mut root, rp.g2, &s.p, &s.q)?;
        let n = 4 * k as u32;
        let bound = &t1 * &b.c5.powi(n);
        let holds = error.le(&bound);
        let (q_envelope, dx_envelope) = if k == 0 {
            (None, None)
        } else {
            let r = reduced(&s)?;
            let q_star = Interval::from_int(r.q_star.abs(), prec);
            let kk = Interval::from_int(k, prec);
            let q_bound = (kk.mul_int(2) / &pi).sqrt().mul_int(4) * b.c6.powi(n);
            let err_star = approx_error(&mut root, rp.g2, &r.p_star, &r.q_star)?;
            let dx_bound = (&t1 * &kk.sqrt()).mul_int(4) / b.c7.powi(n);
            (Some(q_star.le(&q_bound)), Some((&q_star * &err_star).le(&dx_bound)))
        };
        rows.push(DistanceRow {
            k,
            error,
            bound,
            holds,
            q_envelope,
            dx_envelope,
            root_bits: root.precision_bits,
        });
    }
    let verdict = rows
        .iter()
        .flat_map(|r| [Some(r.holds), r.q_envelope, r.dx_envelope])
        .flatten()
        .map(Verdict::from_decision)
        .collect();
    Ok(DistanceReport {
        cp: *cp,
        rp,
        k_max,
        rows,
        verdict,
    })
}
