//! Parameter scans of `c6 < c7^2` against the sufficient thresholds
//! `|t| > K a^{4/3}`.
//!
//! With `X = t1 t2`, `A = a*` and `K0 = 2^{7/4} e`, the closed forms give
//! `c6 < c7^2` iff `6561 A^4 R^3 < (K0 c)^6 L^4`, where
//! `R = 64X + 270A`, `L = 16X + 9A` for `X > 0` and
//! `R = 64|X| - 54A`, `L = 16|X| - 48A` for `X < 0`. The sweep decides this
//! with exact integers and one interval per `a*`, falling back to the full
//! constants bundle when the interval is too wide.

use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::Verdict;
use crate::constants::{bundle, c1_of, c2_of, c6_closed, c7_closed, worst_case_thresholds, ConstOpts, ThresholdReport};
use crate::error::{Error, Result};
use crate::interval::{Decision, Dyadic, Interval};
use crate::params::{normalize, CubicParams, ReducedParams};

/// `t` values `lo, lo + step, ..., <= hi`, skipping `0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TGrid {
    pub lo: i64,
    pub hi: i64,
    pub step: u64,
}

impl TGrid {
    pub fn new(lo: i64, hi: i64, step: u64) -> Result<Self> {
        if lo > hi || step == 0 {
            return Err(Error::InvalidArgument(format!("empty t grid {lo}..={hi} step {step}")));
        }
        Ok(TGrid { lo, hi, step })
    }

    pub fn values(&self) -> impl Iterator<Item = i64> + '_ {
        (self.lo..=self.hi).step_by(self.step as usize).filter(|&t| t != 0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRecord {
    pub t: i64,
    pub a: i64,
    pub g1: i64,
    pub g2: i64,
    pub t1: i64,
    pub t2: i64,
    pub a_star: i64,
    /// `"3|a*"` or `"3!|a*"`.
    pub a_star_class: &'static str,
    /// `c6` and `c7` from `c1`, or from `c2` for a starred scan.
    pub c6: Interval,
    pub c7: Interval,
    pub lambda: Option<Interval>,
    pub lambda_star: Option<Interval>,
    pub nontrivial: Decision,
    pub predicted_by_threshold: bool,
}

fn class(rp: &ReducedParams) -> &'static str {
    if rp.a_star % 3 == 0 {
        "3|a*"
    } else {
        "3!|a*"
    }
}

/// Threshold coefficients `K` per class and sign, as exact cubes of the
/// upper ends of their enclosures.
struct Thresholds {
    /// `[3 !| a*, 3 | a*][positive, negative]`.
    cubes: [[Dyadic; 2]; 2],
}

impl Thresholds {
    fn new(reports: &[ThresholdReport; 2], own: bool) -> Self {
        let cube = |iv: &Interval| {
            let h = iv.hi();
            h.mul(h).mul(h)
        };
        let pick = |r: &ThresholdReport| {
            let neg = if own {
                &r.negative.t_threshold_coeff_own
            } else {
                &r.negative.t_threshold_coeff
            };
            [cube(&r.positive.t_threshold_coeff), cube(neg)]
        };
        Thresholds {
            cubes: [pick(&reports[0]), pick(&reports[1])],
        }
    }

    /// `|t| > K a^{4/3}`, certified.
    fn predicts(&self, cp: &CubicParams, rp: &ReducedParams) -> bool {
        let cls = usize::from(rp.a_star % 3 == 0);
        let sgn = usize::from(cp.t < 0);
        let a4 = BigInt::from(cp.a).pow(4);
        Dyadic::from_int(cp.abs_t_cubed()) > self.cubes[cls][sgn].mul(&Dyadic::from_int(a4))
    }
}

fn c_of(a_star: u64, use_c2: bool, opts: &ConstOpts, prec: u32) -> Result<Interval> {
    if use_c2 {
        c2_of(a_star, opts.sieve_limit, opts.series_terms, prec)
    } else {
        c1_of(a_star, opts.sieve_limit, prec)
    }
}

fn cached_c(a_max: i64, use_c2: bool, opts: &ConstOpts, prec: u32) -> Result<BTreeMap<i64, Interval>> {
    (1..=3 * a_max)
        .map(|a| Ok((a, c_of(a as u64, use_c2, opts, prec)?)))
        .collect()
}

fn lambda_of(c6: &Interval, c7: &Interval) -> Option<Interval> {
    (c7.lo() > &Dyadic::from_int(1) && c6.lo().signum() > 0).then(|| c6.ln() / c7.ln())
}

/// Scan over `1 <= a <= a_max` and the `t` grid. Pairs outside the bound
/// domain `12 a* <= |t1 t2|` are skipped.
pub fn scan(a_max: i64, grid: &TGrid, use_c2: bool, opts: &ConstOpts) -> Result<Vec<ScanRecord>> {
    if a_max < 1 {
        return Err(Error::InvalidArgument(format!("a_max = {a_max} must be positive")));
    }
    let prec = opts.prec;
    let c1s = cached_c(a_max, false, opts, prec)?;
    let c2s = cached_c(a_max, true, opts, prec)?;
    let th = Thresholds::new(&worst_case_thresholds(use_c2, opts)?, false);
    let pairs: Vec<(i64, i64)> = (1..=a_max).flat_map(|a| grid.values().map(move |t| (t, a))).collect();
    let records = pairs
        .into_par_iter()
        .filter_map(|(t, a)| {
            let cp = normalize(t, a).ok()?;
            let rp = cp.require_bounds().ok()?;
            let (c1, c2) = (&c1s[&rp.a_star], &c2s[&rp.a_star]);
            let (c6_1, c7_1) = (c6_closed(&rp, c1, prec), c7_closed(&rp, c1, prec));
            let (c6_2, c7_2) = (c6_closed(&rp, c2, prec), c7_closed(&rp, c2, prec));
            let lambda = lambda_of(&c6_1, &c7_1);
            let lambda_star = lambda_of(&c6_2, &c7_2);
            let (c6, c7) = if use_c2 { (c6_2, c7_2) } else { (c6_1, c7_1) };
            Some(ScanRecord {
                t,
                a,
                g1: rp.g1,
                g2: rp.g2,
                t1: rp.t1,
                t2: rp.t2,
                a_star: rp.a_star,
                a_star_class: class(&rp),
                nontrivial: c6.lt(&c7.square()),
                predicted_by_threshold: th.predicts(&cp, &rp),
                c6,
                c7,
                lambda,
                lambda_star,
            })
        })
        .collect();
    Ok(records)
}

#[derive(Serialize)]
struct CsvRow<'a> {
    t: i64,
    a: i64,
    g1: i64,
    g2: i64,
    t1: i64,
    t2: i64,
    a_star: i64,
    c6_lo: String,
    c6_hi: String,
    c7_lo: String,
    c7_hi: String,
    lambda_lo: String,
    lambda_hi: String,
    nontrivial: &'a str,
    predicted: bool,
}

impl ScanRecord {
    /// Writes records as CSV with the fixed column set.
    pub fn write_csv<W: Write>(records: &[ScanRecord], out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for r in records {
            let (llo, lhi) = r
                .lambda
                .as_ref()
                .map_or((String::new(), String::new()), |l| (l.lo_decimal(), l.hi_decimal()));
            w.serialize(CsvRow {
                t: r.t,
                a: r.a,
                g1: r.g1,
                g2: r.g2,
                t1: r.t1,
                t2: r.t2,
                a_star: r.a_star,
                c6_lo: r.c6.lo_decimal(),
                c6_hi: r.c6.hi_decimal(),
                c7_lo: r.c7.lo_decimal(),
                c7_hi: r.c7.hi_decimal(),
                lambda_lo: llo,
                lambda_hi: lhi,
                nontrivial: r.nontrivial.as_str(),
                predicted: r.predicted_by_threshold,
            })?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Exact-integer decision of `c6 < c7^2` given `kappa = (K0 c)^6`.
fn fast_nontrivial(rp: &ReducedParams, kappa: &Interval) -> Decision {
    let x = rp.t1t2().abs();
    let a = rp.a_star as i128;
    let (r, l) = if rp.positive() {
        (64 * x + 270 * a, 16 * x + 9 * a)
    } else {
        (64 * x - 54 * a, 16 * x - 48 * a)
    };
    let lhs = Dyadic::from_int(BigInt::from(r).pow(3) * BigInt::from(a).pow(4) * 6561);
    let l4 = Dyadic::from_int(BigInt::from(l).pow(4));
    if lhs < kappa.lo().mul(&l4) {
        Decision::True
    } else if lhs >= kappa.hi().mul(&l4) {
        Decision::False
    } else {
        Decision::Undetermined
    }
}

fn full_nontrivial(rp: &ReducedParams, use_c2: bool, opts: &ConstOpts) -> Result<Decision> {
    let b = bundle(rp, opts)?;
    Ok(if use_c2 {
        b.c6_star.lt(&b.c7_star.square())
    } else {
        b.nontrivial
    })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ThresholdTally {
    /// Pairs certified above the threshold.
    pub predicted: u64,
    pub certified: u64,
    pub counterexamples: Vec<(i64, i64)>,
    pub undetermined: Vec<(i64, i64)>,
}

impl ThresholdTally {
    fn merge(mut self, other: ThresholdTally) -> ThresholdTally {
        self.predicted += other.predicted;
        self.certified += other.certified;
        self.counterexamples.extend(other.counterexamples);
        self.undetermined.extend(other.undetermined);
        self
    }

    fn verdict(&self) -> Verdict {
        if !self.counterexamples.is_empty() {
            Verdict::Fail
        } else if !self.undetermined.is_empty() {
            Verdict::Undetermined
        } else {
            Verdict::Pass
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub a_max: i64,
    pub t_max: i64,
    pub use_c2: bool,
    /// Coefficients `K` as `[[K+, K-] for 3 !| a*, [K+, K-] for 3 | a*]`.
    pub coefficients: [[f64; 2]; 2],
    pub pairs_in_domain: u64,
    pub fallbacks: u64,
    /// Thresholds with the common `B` for both signs.
    pub published: ThresholdTally,
    /// Thresholds with each sign's own `B`; report only.
    pub own: ThresholdTally,
    /// Fast decisions re-derived through the full bundle on a subsample.
    pub cross_checked: u64,
    pub cross_check_disagreements: Vec<(i64, i64)>,
    pub verdict: Verdict,
}

const CROSS_CHECK_STRIDE: i64 = 9973;

/// Every pair with `1 <= a <= a_max`, `1 <= |t| <= t_max` above its
/// threshold must satisfy `c6 < c7^2` (or the starred analogue).
pub fn sufficiency_sweep(a_max: i64, t_max: i64, use_c2: bool, opts: &ConstOpts) -> Result<SweepReport> {
    if a_max < 1 || t_max < 1 {
        return Err(Error::InvalidArgument("sweep bounds must be positive".into()));
    }
    let prec = 128;
    let reports = worst_case_thresholds(use_c2, opts)?;
    let published = Thresholds::new(&reports, false);
    let own = Thresholds::new(&reports, true);
    let k0 = Interval::ln2(prec).mul_int(7).div_int(4).exp() * Interval::e(prec);
    let kappas: BTreeMap<i64, Interval> = cached_c(a_max, use_c2, opts, prec)?
        .into_iter()
        .map(|(a, c)| (a, (&k0 * &c).powi(6)))
        .collect();

    struct Acc {
        in_domain: u64,
        fallbacks: u64,
        published: ThresholdTally,
        own: ThresholdTally,
        cross: u64,
        disagree: Vec<(i64, i64)>,
    }
    let per_a: Vec<Result<Acc>> = (1..=a_max)
        .into_par_iter()
        .map(|a| {
            let mut acc = Acc {
                in_domain: 0,
                fallbacks: 0,
                published: ThresholdTally::default(),
                own: ThresholdTally::default(),
                cross: 0,
                disagree: Vec::new(),
            };
            for t in (-t_max..=t_max).filter(|&t| t != 0) {
                let cp = CubicParams { t, a };
                let rp = cp.reduce();
                if 12 * rp.a_star as i128 > rp.t1t2().abs() {
                    continue;
                }
                acc.in_domain += 1;
                let (p_pub, p_own) = (published.predicts(&cp, &rp), own.predicts(&cp, &rp));
                if !p_pub && !p_own {
                    continue;
                }
                let mut d = fast_nontrivial(&rp, &kappas[&rp.a_star]);
                if (t + a * t_max) % CROSS_CHECK_STRIDE == 0 {
                    acc.cross += 1;
                    let full = full_nontrivial(&rp, use_c2, opts)?;
                    if d.is_determined() && full.is_determined() && d != full {
                        acc.disagree.push((t, a));
                    }
                }
                if !d.is_determined() {
                    acc.fallbacks += 1;
                    d = full_nontrivial(&rp, use_c2, opts)?;
                }
                for (hit, tally) in [(p_pub, &mut acc.published), (p_own, &mut acc.own)] {
                    if !hit {
                        continue;
                    }
                    tally.predicted += 1;
                    match d {
                        Decision::True => tally.certified += 1,
                        Decision::False => tally.counterexamples.push((t, a)),
                        Decision::Undetermined => tally.undetermined.push((t, a)),
                    }
                }
            }
            Ok(acc)
        })
        .collect();

    let mut report = SweepReport {
        a_max,
        t_max,
        use_c2,
        coefficients: [0, 1].map(|i| {
            [
                reports[i].positive.t_threshold_coeff.to_f64(),
                reports[i].negative.t_threshold_coeff.to_f64(),
            ]
        }),
        pairs_in_domain: 0,
        fallbacks: 0,
        published: ThresholdTally::default(),
        own: ThresholdTally::default(),
        cross_checked: 0,
        cross_check_disagreements: Vec::new(),
        verdict: Verdict::Pass,
    };
    for acc in per_a {
        let acc = acc?;
        report.pairs_in_domain += acc.in_domain;
        report.fallbacks += acc.fallbacks;
        report.published = std::mem::take(&mut report.published).merge(acc.published);
        report.own = std::mem::take(&mut report.own).merge(acc.own);
        report.cross_checked += acc.cross;
        report.cross_check_disagreements.extend(acc.disagree);
    }
    report.verdict = if report.cross_check_disagreements.is_empty() {
        report.published.verdict()
    } else {
        Verdict::Fail
    };
    Ok(report)
}
