//! End-to-end check of the lower bound
//! `||q x|| > bound_tau q^{-lambda} (ln(8|t1| q))^{-lambda-1/2}` for `q >= q0`.
//!
//! Both sides are compared as logarithms. Reduced denominators `q*_k` are
//! always sampled; seeded log-uniform and contiguous samples are optional
//! extras.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::Verdict;
use crate::certreal::{dist_nearest_int, integer_root, largest_root, CertifiedRoot, START_PREC};
use crate::constants::{bundle, ConstOpts, ConstantsBundle};
use crate::convergents::{reduced, Convergents};
use crate::error::{Error, Result};
use crate::interval::{Decision, Dyadic, Interval};
use crate::params::{CubicParams, ReducedParams};

#[derive(Clone, Debug, Serialize)]
pub struct TheoremOpts {
    pub consts: ConstOpts,
    /// Reduced denominators are taken while `|q*_k| <= 10^digit_cap`.
    pub digit_cap: u32,
    /// Number of log-uniform samples in `[q0, 10 q0]`.
    pub random_samples: usize,
    pub seed: u64,
    /// Check every `q` in `[ceil(q0), ceil(q0) + n]` as well.
    pub range: Option<u64>,
}

impl Default for TheoremOpts {
    fn default() -> Self {
        TheoremOpts {
            consts: ConstOpts::default(),
            digit_cap: 60,
            random_samples: 1000,
            seed: 0,
            range: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "strategy", rename_all = "snake_case")]
pub enum QStrategy {
    ReducedDenominator { k: usize },
    Random,
    Range,
}

#[derive(Clone, Debug, Serialize)]
pub struct QSample {
    #[serde(serialize_with = "crate::ser::big")]
    pub q: BigInt,
    pub source: QStrategy,
    /// `ln ||q x||`.
    pub lhs: Option<Interval>,
    /// `ln(bound_tau q^{-lambda} (ln 8|t1|q)^{-lambda-1/2})`.
    pub rhs: Option<Interval>,
    /// `ln(LHS / RHS)` at the interval midpoints.
    pub margin: Option<f64>,
    /// Certified `lhs.lo > rhs.hi`.
    pub pass: Decision,
    /// `q >= q0` is certified; samples outside do not count towards the
    /// verdict.
    pub in_hypothesis: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergentRow {
    pub k: usize,
    #[serde(serialize_with = "crate::ser::big")]
    pub q_star: BigInt,
    pub margin: Option<f64>,
    pub in_hypothesis: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub cp: CubicParams,
    pub rp: ReducedParams,
    pub bundle: ConstantsBundle,
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    pub undetermined: usize,
    pub outside_hypothesis: usize,
    pub convergent_rows: Vec<ConvergentRow>,
    pub q_samples: Vec<QSample>,
    pub verdict: Verdict,
}

struct Rhs {
    ln_tau: Interval,
    lambda: Interval,
    lambda_half: Interval,
    ln_8t1: Interval,
    q0_hi: Dyadic,
    prec: u32,
}

impl Rhs {
    fn eval(&self, q: &BigInt) -> Interval {
        let ln_q = Interval::from_int(q.clone(), self.prec).ln();
        let lnln = (&self.ln_8t1 + &ln_q).ln();
        &self.ln_tau - &(&self.lambda * &ln_q) - &(&self.lambda_half * &lnln)
    }
}

fn check_sample(q: BigInt, source: QStrategy, rhs: &Rhs, base: &CertifiedRoot) -> QSample {
    let in_hypothesis = Dyadic::from_int(q.clone()) >= rhs.q0_hi;
    let mut root = base.clone();
    let mut out = QSample {
        q,
        source,
        lhs: None,
        rhs: None,
        margin: None,
        pass: Decision::Undetermined,
        in_hypothesis,
        error: None,
    };
    match dist_nearest_int(&out.q, &mut root) {
        Ok(d) => {
            let lhs = d.with_prec(rhs.prec).ln();
            let r = rhs.eval(&out.q);
            out.margin = Some((lhs.mid().to_f64()) - r.mid().to_f64());
            out.pass = lhs.gt(&r);
            out.lhs = Some(lhs);
            out.rhs = Some(r);
        }
        Err(e) => out.error = Some(e.to_string()),
    }
    out
}

fn reduced_denominators(rp: &ReducedParams, digit_cap: u32) -> Result<Vec<(usize, BigInt)>> {
    let cap = BigInt::from(10).pow(digit_cap);
    let mut out = Vec::new();
    for s in Convergents::new(rp).step_by(4) {
        let r = reduced(&s)?;
        let q = r.q_star.abs();
        if q > cap {
            break;
        }
        out.push((r.k, q));
    }
    Ok(out)
}

fn random_samples(q0: &Interval, n: usize, seed: u64) -> Vec<BigInt> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = q0.hi().ceil().max(BigInt::one());
    let base = q0.hi().to_f64();
    (0..n)
        .map(|_| {
            let u: f64 = rng.gen();
            let q = Dyadic::from_f64(base * 10f64.powf(u))
                .map(|d| d.floor())
                .unwrap_or_else(|| lo.clone());
            q.max(lo.clone())
        })
        .collect()
}

/// Certifies the lower bound on `||q x||` over the sampled `q`.
pub fn verify_theorem1(cp: &CubicParams, opts: &TheoremOpts) -> Result<TheoremReport> {
    let rp = cp.require_bounds()?;
    if let Some(r) = integer_root(cp) {
        return Err(Error::InvalidArgument(format!(
            "x^3 - {} x^2 - {} has the rational root {r}",
            cp.t, cp.a
        )));
    }
    let b = bundle(&rp, &opts.consts)?;
    if b.c7_ok != Decision::True {
        return Err(Error::C7NotOk(b.c7_ok));
    }
    let (lambda, ln_tau) = match (&b.lambda, &b.ln_bound_tau) {
        (Some(l), Some(t)) => (l.clone(), t.clone()),
        _ => return Err(Error::Internal("lambda undefined although c7 > e^(1/4)".into())),
    };
    let prec = b.prec;
    let rhs = Rhs {
        lambda_half: &lambda + &Interval::from_ratio(1, 2, prec),
        lambda,
        ln_tau,
        ln_8t1: Interval::from_int(8 * rp.abs_t1(), prec).ln(),
        q0_hi: b.q0.hi().clone(),
        prec,
    };

    let mut inputs: Vec<(BigInt, QStrategy)> = reduced_denominators(&rp, opts.digit_cap)?
        .into_iter()
        .map(|(k, q)| (q, QStrategy::ReducedDenominator { k }))
        .collect();
    inputs.extend(
        random_samples(&b.q0, opts.random_samples, opts.seed)
            .into_iter()
            .map(|q| (q, QStrategy::Random)),
    );
    if let Some(n) = opts.range {
        let lo = b.q0.hi().ceil().max(BigInt::one());
        inputs.extend((0..=n).map(|i| (&lo + i, QStrategy::Range)));
    }

    let base = largest_root(cp, START_PREC)?;
    let q_samples: Vec<QSample> = inputs
        .into_par_iter()
        .map(|(q, src)| check_sample(q, src, &rhs, &base))
        .collect();

    let convergent_rows = q_samples
        .iter()
        .filter_map(|s| match s.source {
            QStrategy::ReducedDenominator { k } => Some(ConvergentRow {
                k,
                q_star: s.q.clone(),
                margin: s.margin,
                in_hypothesis: s.in_hypothesis,
            }),
            _ => None,
        })
        .collect();
    let counted: Vec<&QSample> = q_samples.iter().filter(|s| s.in_hypothesis).collect();
    let count = |d: Decision| counted.iter().filter(|s| s.pass == d).count();
    let (passed, failed, undetermined) = (
        count(Decision::True),
        count(Decision::False),
        count(Decision::Undetermined),
    );
    let verdict = counted.iter().map(|s| Verdict::from_decision(s.pass)).collect();
    Ok(TheoremReport {
        cp: *cp,
        rp,
        bundle: b,
        checked: counted.len(),
        passed,
        failed,
        undetermined,
        outside_hypothesis: q_samples.len() - counted.len(),
        convergent_rows,
        q_samples,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::normalize;

    fn small_opts() -> TheoremOpts {
        TheoremOpts {
            digit_cap: 40,
            random_samples: 50,
            ..TheoremOpts::default()
        }
    }

    #[test]
    fn reduced_denominators_are_increasing() {
        let rp = normalize(100, 1).unwrap().reduce();
        let qs = reduced_denominators(&rp, 60).unwrap();
        // q*_1 .. q*_4 have 13, 26, 38 and 52 digits
        assert_eq!(qs.len(), 5);
        assert_eq!(qs[0], (0, BigInt::one()));
        assert!(qs.windows(2).all(|w| w[0].1 < w[1].1));
    }

    #[test]
    fn random_samples_are_seeded_and_in_range() {
        let q0 = Interval::from_int(82_988, 64);
        let a = random_samples(&q0, 200, 7);
        assert_eq!(a, random_samples(&q0, 200, 7));
        assert_ne!(a, random_samples(&q0, 200, 8));
        assert!(a
            .iter()
            .all(|q| *q >= BigInt::from(82_988) && *q <= BigInt::from(829_880)));
    }

    #[test]
    fn theorem_holds_for_100_1() {
        let cp = normalize(100, 1).unwrap();
        let r = verify_theorem1(&cp, &small_opts()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.failed + r.undetermined, 0);
        assert!(r.convergent_rows.iter().any(|c| c.in_hypothesis));
        // q*_0 = 1 lies below q0
        assert!(!r.convergent_rows[0].in_hypothesis);
    }

    #[test]
    fn convergent_rows_up_to_k12() {
        let cp = normalize(100, 1).unwrap();
        let opts = TheoremOpts {
            digit_cap: 170,
            random_samples: 0,
            ..TheoremOpts::default()
        };
        let r = verify_theorem1(&cp, &opts).unwrap();
        assert!(r.convergent_rows.len() >= 13);
        assert!(r.convergent_rows[1..].iter().all(|c| c.in_hypothesis));
        assert_eq!((r.verdict, r.failed, r.undetermined), (Verdict::Pass, 0, 0));
    }

    #[test]
    fn g2_above_one() {
        let cp = normalize(30, 8).unwrap();
        let rp = cp.reduce();
        assert_eq!((rp.g1, rp.g2, rp.a_star), (12, 2, 1));
        let r = verify_theorem1(&cp, &small_opts()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn domain_and_c7_errors() {
        assert!(matches!(
            verify_theorem1(&normalize(3, 3).unwrap(), &small_opts()),
            Err(Error::BoundsDomain { .. })
        ));
        assert!(matches!(
            verify_theorem1(&normalize(6, 2).unwrap(), &small_opts()),
            Err(Error::C7NotOk(_))
        ));
    }

    #[test]
    fn report_is_deterministic() {
        let cp = normalize(100, 1).unwrap();
        let a = serde_json::to_string(&verify_theorem1(&cp, &small_opts()).unwrap()).unwrap();
        let b = serde_json::to_string(&verify_theorem1(&cp, &small_opts()).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
