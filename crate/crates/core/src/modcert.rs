//! Modular certification of the partial quotients and the divisibility
//! exponents of `gcd(p_n, q_n)`.
//!
//! With `gamma_{k,r} = prod beta_i` over `i = k-r, k-r+2, ..., k+r`
//! (`gamma_{k,-1} = 1`), index `k` is eventually `d`-nice from position
//! `k0 = 2` when `d | a_k` and, for `1 <= r <= k-2`,
//!
//! ```text
//! a_{k-r} beta_{k+r} gamma_{k,r-2} = -a_{k+r} gamma_{k,r-1}   (mod d)
//! ```
//!
//! It is `d`-convenient when residues `c_0, c_1, ...` exist with, for
//! `0 <= r <= k-2`, `beta_{k+r+1} = c_{r/2} beta_{k-r}` and
//! `a_{k+r} = -c_{r/2} a_{k-r}` (odd `r`) or `a_{k+r} = -a_{k-r}` (even `r`).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cf::partial_quotient_raw;
use crate::convergents::{state_at, ConvergentState};
use crate::error::{Error, Result};
use crate::matrix::ModMat2;
use crate::params::ReducedParams;
use crate::primes::{factorize, is_prime, valuation, Sieve};

/// `x mod d` in `[0, d)`.
pub fn residue(x: &BigInt, d: u64) -> u64 {
    x.mod_floor(&BigInt::from(d)).to_u64().expect("residue fits in u64")
}

fn res128(x: i128, d: u64) -> u64 {
    x.rem_euclid(d as i128) as u64
}

fn mulm(x: u64, y: u64, d: u64) -> u64 {
    ((x as u128 * y as u128) % d as u128) as u64
}

fn negm(x: u64, d: u64) -> u64 {
    (d - x % d) % d
}

/// `(a_i mod d, beta_i mod d)`.
pub fn pq_mod(rp: &ReducedParams, i: usize, d: u64) -> (u64, u64) {
    let (a, b) = partial_quotient_raw(rp, i);
    (res128(a, d), res128(b, d))
}

/// `C_i mod d`.
pub fn step_mod(rp: &ReducedParams, i: usize, d: u64) -> ModMat2 {
    let (a, b) = pq_mod(rp, i, d);
    ModMat2::new([[a, b], [1 % d, 0]], d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GammaProduct {
    pub k: usize,
    pub r: i64,
    pub d: u64,
    pub value: u64,
}

pub fn gamma_mod(rp: &ReducedParams, k: usize, r: i64, d: u64) -> Result<GammaProduct> {
    if d < 2 {
        return Err(Error::BadModulus(d));
    }
    if r < -1 || r > k as i64 {
        return Err(Error::GammaRange { k, r });
    }
    let mut value = 1 % d;
    if r >= 0 {
        let r = r as usize;
        for i in (k - r..=k + r).step_by(2) {
            value = mulm(value, pq_mod(rp, i, d).1, d);
        }
    }
    Ok(GammaProduct { k, r, d, value })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "r")]
pub enum CertKind {
    Nice,
    Convenient,
    Perfect(usize),
}

/// Which congruence failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Congruence {
    /// `d | a_k`.
    DividesAk,
    /// The `gamma` cross relation at `r`.
    NiceCross,
    /// `c beta_{k-r} = beta_{k+r+1}` has no solution.
    ConvenientBeta,
    /// `-c a_{k-r} = a_{k+r}` (odd `r`) has no solution.
    ConvenientAOdd,
    /// `a_{k+r} = -a_{k-r}` (even `r`).
    ConvenientAEven,
    /// Solutions for `c_{r/2}` from the two relations are disjoint.
    ConvenientInconsistent,
    /// `beta_{k-r} = 0`.
    PerfectBetaLow,
    /// `beta_{k+r+1} = 0`.
    PerfectBetaHigh,
    /// `C_{k+r+1} ... C_{k-r} = 0`.
    PerfectZeroProduct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NiceWitness {
    pub k: usize,
    pub d: u64,
    pub k0: usize,
    pub kind: CertKind,
    pub ok: bool,
    pub c_seq: Vec<u64>,
    pub failures: Vec<(usize, Congruence)>,
}

pub const K0: usize = 2;

/// Solution set `{c : c = res (mod modulus)}`; `None` when empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Coset {
    res: u64,
    modulus: u64,
}

impl Coset {
    fn all() -> Self {
        Coset { res: 0, modulus: 1 }
    }

    /// Solutions of `c * b = a (mod d)`.
    fn solve(b: u64, a: u64, d: u64) -> Option<Coset> {
        let g = b.gcd(&d);
        if !a.is_multiple_of(g) {
            return None;
        }
        let m = d / g;
        if m == 1 {
            return Some(Coset::all());
        }
        let inv = mod_inverse((b / g) % m, m)?;
        Some(Coset {
            res: mulm((a / g) % m, inv, m),
            modulus: m,
        })
    }

    fn intersect(self, o: Coset) -> Option<Coset> {
        let g = self.modulus.gcd(&o.modulus);
        let diff = (o.res as i128 - self.res as i128).rem_euclid(g as i128) as u64;
        if diff != 0 {
            return None;
        }
        let l = self.modulus / g * o.modulus;
        // self.res + self.modulus * s = o.res (mod o.modulus)
        let m2 = o.modulus / g;
        let step = if m2 == 1 {
            0
        } else {
            let delta = (o.res as i128 - self.res as i128).rem_euclid(o.modulus as i128) as u64 / g;
            mulm(delta % m2, mod_inverse((self.modulus / g) % m2, m2)?, m2)
        };
        let res = ((self.res as u128 + self.modulus as u128 * step as u128) % l as u128) as u64;
        Some(Coset { res, modulus: l })
    }
}

fn mod_inverse(x: u64, m: u64) -> Option<u64> {
    let e = (x as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

fn nice_failures(rp: &ReducedParams, k: usize, d: u64, r_max: usize) -> Vec<(usize, Congruence)> {
    let mut failures = Vec::new();
    let (ak, bk) = pq_mod(rp, k, d);
    if ak != 0 {
        failures.push((0, Congruence::DividesAk));
    }
    // gamma_{k,r-2}, gamma_{k,r-1}
    let (mut g_m2, mut g_m1) = (1 % d, bk);
    for r in 1..=r_max.min(k) {
        let (a_lo, b_lo) = pq_mod(rp, k - r, d);
        let (a_hi, b_hi) = pq_mod(rp, k + r, d);
        let lhs = mulm(mulm(a_lo, b_hi, d), g_m2, d);
        let rhs = negm(mulm(a_hi, g_m1, d), d);
        if lhs != rhs {
            failures.push((r, Congruence::NiceCross));
        }
        let g_r = mulm(mulm(g_m2, b_lo, d), b_hi, d);
        g_m2 = g_m1;
        g_m1 = g_r;
    }
    failures
}

fn convenient(rp: &ReducedParams, k: usize, d: u64) -> (Vec<u64>, Vec<(usize, Congruence)>) {
    let mut failures = Vec::new();
    let mut c_seq = Vec::new();
    let mut current = Some(Coset::all());
    let r_max = k - K0;
    for r in 0..=r_max {
        let (a_lo, b_lo) = pq_mod(rp, k - r, d);
        let (a_hi, _) = pq_mod(rp, k + r, d);
        let b_hi1 = pq_mod(rp, k + r + 1, d).1;
        let beta = Coset::solve(b_lo, b_hi1, d);
        if beta.is_none() {
            failures.push((r, Congruence::ConvenientBeta));
        }
        current = match (current, beta) {
            (Some(c), Some(b)) => {
                let next = c.intersect(b);
                if next.is_none() {
                    failures.push((r, Congruence::ConvenientInconsistent));
                }
                next
            }
            _ => None,
        };
        if r % 2 == 1 {
            let a = Coset::solve(negm(a_lo, d), a_hi, d);
            if a.is_none() {
                failures.push((r, Congruence::ConvenientAOdd));
            }
            current = match (current, a) {
                (Some(c), Some(a)) => {
                    let next = c.intersect(a);
                    if next.is_none() {
                        failures.push((r, Congruence::ConvenientInconsistent));
                    }
                    next
                }
                _ => None,
            };
        } else if (a_hi + a_lo) % d != 0 {
            failures.push((r, Congruence::ConvenientAEven));
        }
        if r % 2 == 1 || r == r_max {
            c_seq.push(current.map_or(0, |c| c.res % d));
            current = Some(Coset::all());
        }
    }
    (c_seq, failures)
}

/// Checks `kind` at index `k` modulo `d` from position 2.
pub fn certify(rp: &ReducedParams, k: usize, d: u64, kind: CertKind) -> Result<NiceWitness> {
    if d < 2 {
        return Err(Error::BadModulus(d));
    }
    if k < K0 {
        return Err(Error::InvalidArgument(format!("certify needs k >= {K0}, got {k}")));
    }
    let (c_seq, failures) = match kind {
        CertKind::Nice => (Vec::new(), nice_failures(rp, k, d, k - K0)),
        CertKind::Convenient => convenient(rp, k, d),
        CertKind::Perfect(r) => {
            if r > k {
                return Err(Error::InvalidArgument(format!("perfect radius {r} exceeds k = {k}")));
            }
            let mut f = nice_failures(rp, k, d, (k - K0).max(r));
            if pq_mod(rp, k - r, d).1 != 0 {
                f.push((r, Congruence::PerfectBetaLow));
            }
            if pq_mod(rp, k + r + 1, d).1 != 0 {
                f.push((r, Congruence::PerfectBetaHigh));
            }
            if !window_product(rp, k + r + 1, k - r, d).is_zero() {
                f.push((r, Congruence::PerfectZeroProduct));
            }
            (Vec::new(), f)
        }
    };
    Ok(NiceWitness {
        k,
        d,
        k0: K0,
        kind,
        ok: failures.is_empty(),
        c_seq,
        failures,
    })
}

/// Niceness as granted by convenience: for `d = 2` this also needs
/// `a_k` even.
pub fn nice_from_convenient(rp: &ReducedParams, k: usize, d: u64) -> Result<bool> {
    let w = certify(rp, k, d, CertKind::Convenient)?;
    Ok(w.ok && (d > 2 || pq_mod(rp, k, d).0 == 0))
}

/// `C_hi C_{hi-1} ... C_lo mod d`.
pub fn window_product(rp: &ReducedParams, hi: usize, lo: usize, d: u64) -> ModMat2 {
    let mut acc = ModMat2::identity(d);
    for i in (lo..=hi).rev() {
        acc = acc * step_mod(rp, i, d);
    }
    acc
}

/// Symmetric products `C_{k+r} ... C_{k-r} mod d` for `r = 0..=r_max`,
/// built by multiplying on both sides.
pub fn symmetric_products(rp: &ReducedParams, k: usize, d: u64, r_max: usize) -> Vec<ModMat2> {
    let mut out = Vec::with_capacity(r_max + 1);
    let mut acc = step_mod(rp, k, d);
    out.push(acc);
    for r in 1..=r_max.min(k) {
        acc = step_mod(rp, k + r, d) * acc * step_mod(rp, k - r, d);
        out.push(acc);
    }
    out
}

/// Whether every symmetric product up to `k - 2` is antidiagonal with
/// entries `gamma_{k,r}` and `gamma_{k,r-1}`.
pub fn antidiagonal_holds(rp: &ReducedParams, k: usize, d: u64) -> Result<bool> {
    let prods = symmetric_products(rp, k, d, k.saturating_sub(K0));
    for (r, m) in prods.iter().enumerate() {
        let g = gamma_mod(rp, k, r as i64, d)?.value;
        let g1 = gamma_mod(rp, k, r as i64 - 1, d)?.value;
        if m.m != [[0, g], [g1, 0]] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Claimed exponent of `p` in `gcd(p_n, q_n)`.
pub fn divisibility_exponent(rp: &ReducedParams, p: u64, n: usize) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = n as u64;
    let a = rp.a_star as u64;
    if p == 2 {
        return Ok(if a.is_multiple_of(2) { n / 4 } else { (n + 3) / 8 });
    }
    let sigma = factorize(a).into_iter().find(|&(q, _)| q == p).map_or(0, |(_, e)| e);
    if sigma > 0 {
        let mut total = 0;
        let mut pj = 1u64;
        for _ in 0..sigma {
            pj = match pj.checked_mul(p) {
                Some(v) if v <= 2 * n + 1 => v,
                _ => break,
            };
            total += (2 * n + pj - 1) / (2 * pj);
        }
        return Ok(total);
    }
    if p == 3 {
        return Ok(0);
    }
    Ok((3 * n + p - 2) / (3 * p))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityProfile {
    pub n: usize,
    #[serde(serialize_with = "crate::ser::big")]
    pub prop1_bound: BigInt,
    #[serde(serialize_with = "crate::ser::big")]
    pub actual_gcd: BigInt,
    /// prime -> (claimed, actual)
    #[serde(serialize_with = "crate::ser::prime_map")]
    pub per_prime: BTreeMap<u64, (u64, u64)>,
    pub ok: bool,
}

/// Primes whose claimed exponent can be positive at index `n`: the primes
/// dividing `a*` and those up to the point where every floor vanishes.
fn relevant_primes(rp: &ReducedParams, n: usize, sieve: Option<&Sieve>) -> Vec<u64> {
    // floor((3n+p-2)/(3p)) > 0 iff p <= (3n+2)/2; odd p | a* needs p <= 2n+1.
    let cutoff = (2 * n as u64 + 1).max((3 * n as u64 + 2) / 2).max(2);
    let mut ps: Vec<u64> = match sieve {
        Some(s) if s.limit() >= cutoff => s.primes_le(cutoff).to_vec(),
        _ => Sieve::new(cutoff).primes().to_vec(),
    };
    for (p, _) in factorize(rp.a_star as u64) {
        if p > cutoff {
            ps.push(p);
        }
    }
    ps
}

pub fn prop1_check(rp: &ReducedParams, n: usize) -> Result<DivisibilityProfile> {
    prop1_check_state(rp, &state_at(rp, n), None)
}

/// As [`prop1_check`] for an already computed state.
pub fn prop1_check_state(
    rp: &ReducedParams,
    st: &ConvergentState,
    sieve: Option<&Sieve>,
) -> Result<DivisibilityProfile> {
    let n = st.n;
    let g = st.gcd().abs();
    let mut bound = BigInt::one();
    let mut per_prime = BTreeMap::new();
    for p in relevant_primes(rp, n, sieve) {
        let claimed = divisibility_exponent(rp, p, n)?;
        if claimed == 0 {
            continue;
        }
        bound *= BigInt::from(p).pow(claimed as u32);
        per_prime.insert(p, (claimed, valuation(&g, p)));
    }
    let ok = !g.is_zero() && (&g % &bound).is_zero();
    Ok(DivisibilityProfile {
        n,
        prop1_bound: bound,
        actual_gcd: g,
        per_prime,
        ok,
    })
}
