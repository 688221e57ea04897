//! Growth of `gcd(p_n, q_n)` against `c1` and `c2`, the prime set `K`
//! behind `c2`, and the divisibility profile over a parameter suite.

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use super::Verdict;
use crate::constants::{c1_of, c2_of, shared_sieve, tau_series, ConstOpts};
use crate::convergents::Convergents;
use crate::error::{Error, Result};
use crate::interval::{Decision, Interval};
use crate::modcert::{prop1_check_state, DivisibilityProfile};
use crate::params::ReducedParams;
use crate::primes::Sieve;

/// Largest `n` accepted by [`gcd_growth_profile`].
pub const N_CAP: usize = 5000;

#[derive(Clone, Debug, Serialize)]
pub struct GcdRow {
    pub n: usize,
    pub ln_gcd: f64,
    /// `ln gcd / (n ln n)`.
    pub normalized: f64,
    /// `gcd^{1/n} / n`, to be read against `c1` and `c2`.
    pub ratio: f64,
    /// `gcd >= (c1 n)^n`, for `n >= 8`.
    pub ratio_ge_c1: Option<Decision>,
    /// `gcd >= sqrt(2 pi n) (c1 n)^n`, for `n >= 4`.
    pub lower_bound: Option<Decision>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GcdProfile {
    pub rp: ReducedParams,
    pub n_max: usize,
    pub c1: Interval,
    pub c2: Interval,
    pub rows: Vec<GcdRow>,
    /// `ratio / c2` at `n_max`; report only.
    pub final_ratio_over_c2: f64,
    pub violations: Vec<usize>,
    pub undetermined: Vec<usize>,
    pub verdict: Verdict,
}

/// Table of `gcd(p_n, q_n)` for `1 <= n <= n_max` with certified
/// comparisons against `sqrt(2 pi n) (c1 n)^n`.
pub fn gcd_growth_profile(rp: &ReducedParams, n_max: usize, opts: &ConstOpts) -> Result<GcdProfile> {
    if n_max > N_CAP {
        return Err(Error::InvalidArgument(format!("n_max = {n_max} exceeds {N_CAP}")));
    }
    let prec = opts.prec;
    let a = rp.a_star as u64;
    let c1 = c1_of(a, opts.sieve_limit, prec)?;
    let c2 = c2_of(a, opts.sieve_limit, opts.series_terms, prec)?;
    let ln_c1 = c1.ln();
    let two_pi = Interval::pi(prec).mul_int(2);
    let gcds: Vec<BigInt> = Convergents::new(rp)
        .skip(1)
        .take(n_max)
        .map(|s| s.gcd().abs())
        .collect();

    let rows: Vec<GcdRow> = gcds
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let n = i + 1;
            let ln_g = Interval::from_int(g.clone(), prec).ln();
            let ln_n = Interval::from_int(n, prec).ln();
            let power = (&ln_c1 + &ln_n).mul_int(n as i64);
            let ln_gf = ln_g.to_f64();
            let ln_nf = (n as f64).ln();
            GcdRow {
                n,
                ln_gcd: ln_gf,
                normalized: if n > 1 { ln_gf / (n as f64 * ln_nf) } else { f64::NAN },
                ratio: (ln_gf / n as f64 - ln_nf).exp(),
                ratio_ge_c1: (n >= 8).then(|| ln_g.ge(&power)),
                lower_bound: (n >= 4).then(|| {
                    let rhs = (&two_pi * &Interval::from_int(n, prec)).ln().div_int(2) + &power;
                    ln_g.ge(&rhs)
                }),
            }
        })
        .collect();

    let pick = |d: Decision| -> Vec<usize> {
        rows.iter()
            .filter(|r| r.lower_bound == Some(d) || r.ratio_ge_c1 == Some(d))
            .map(|r| r.n)
            .collect()
    };
    let violations = pick(Decision::False);
    let undetermined = pick(Decision::Undetermined);
    let verdict = if !violations.is_empty() {
        Verdict::Fail
    } else if !undetermined.is_empty() {
        Verdict::Undetermined
    } else {
        Verdict::Pass
    };
    let final_ratio_over_c2 = rows.last().map_or(f64::NAN, |r| r.ratio / c2.to_f64());
    Ok(GcdProfile {
        rp: *rp,
        n_max,
        c1,
        c2,
        rows,
        final_ratio_over_c2,
        violations,
        undetermined,
        verdict,
    })
}

/// The primes in `K = U_{k>=1} (n/k, (3n-2)/(3k-1)]`, multiplied out two
/// ways.
#[derive(Clone, Debug, Serialize)]
pub struct KSetProduct {
    pub n: u64,
    /// Non-empty pieces `(k, floor(n/k), floor((3n-2)/(3k-1)))`.
    pub pieces: Vec<(u64, u64, u64)>,
    #[serde(serialize_with = "crate::ser::big")]
    pub product: BigInt,
    /// Product by prime membership equals the product of primorial ranges.
    pub routes_agree: bool,
    /// `ln(product) / n`; tends to the `c2 / c1` exponent.
    pub ln_product_over_n: f64,
    pub tau: f64,
}

/// Only the least `k > n/p` can place `p` in a piece, since the right end
/// decreases with `k`.
fn in_k_set(p: u64, n: u64) -> bool {
    let k = n / p + 1;
    (3 * k - 1) * p <= 3 * n - 2
}

pub fn k_set_product(n: u64, opts: &ConstOpts) -> Result<KSetProduct> {
    if n == 0 {
        return Err(Error::InvalidArgument("K-set needs n >= 1".into()));
    }
    let top = (3 * n - 2) / 2;
    let sieve = if top <= opts.sieve_limit {
        shared_sieve(opts.sieve_limit)
    } else {
        std::sync::Arc::new(Sieve::new(top))
    };
    let pieces: Vec<(u64, u64, u64)> = (1..=n)
        .map(|k| (k, n / k, (3 * n - 2) / (3 * k - 1)))
        .filter(|&(_, lo, hi)| hi > lo)
        .collect();
    let by_ranges: BigInt = pieces
        .iter()
        .map(|&(_, lo, hi)| sieve.primorial_range(lo, hi))
        .product();
    let product: BigInt = sieve
        .primes_le(top.max(2))
        .iter()
        .filter(|&&p| in_k_set(p, n))
        .map(|&p| BigInt::from(p))
        .product();
    let ln_product = Interval::from_int(product.clone(), 64).ln().to_f64();
    Ok(KSetProduct {
        n,
        pieces,
        routes_agree: by_ranges == product,
        product,
        ln_product_over_n: ln_product / n as f64,
        tau: tau_series(opts.series_terms, 64)?.to_f64(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop1Suite {
    pub n_max: usize,
    pub cases: Vec<ReducedParams>,
    pub checked: usize,
    /// `(case index, n)` pairs where the bound does not divide the gcd.
    pub failures: Vec<(usize, usize)>,
    pub verdict: Verdict,
}

/// Divisibility of `gcd(p_n, q_n)` by the claimed prime powers for every
/// `n <= n_max` and every parameter set.
pub fn prop1_suite(rps: &[ReducedParams], n_max: usize) -> Result<Prop1Suite> {
    let sieve = Sieve::new((2 * n_max as u64 + 1).max((3 * n_max as u64 + 2) / 2).max(2));
    let per_case: Vec<Vec<DivisibilityProfile>> = rps
        .par_iter()
        .map(|rp| {
            Convergents::new(rp)
                .take(n_max + 1)
                .map(|s| prop1_check_state(rp, &s, Some(&sieve)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let failures: Vec<(usize, usize)> = per_case
        .iter()
        .enumerate()
        .flat_map(|(i, profs)| profs.iter().filter(|p| !p.ok).map(move |p| (i, p.n)))
        .collect();
    Ok(Prop1Suite {
        n_max,
        cases: rps.to_vec(),
        checked: per_case.iter().map(Vec::len).sum(),
        verdict: if failures.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        failures,
    })
}
