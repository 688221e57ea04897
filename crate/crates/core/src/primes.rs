//! Prime sieve and small number-theoretic helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Primes up to a fixed limit, shareable read-only.
#[derive(Clone, Debug)]
pub struct Sieve {
    limit: u64,
    primes: Vec<u64>,
}

impl Sieve {
    pub fn new(limit: u64) -> Self {
        let n = limit as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                primes.push(i as u64);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        Sieve { limit, primes }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Primes `p <= x` (requires `x <= limit`).
    pub fn primes_le(&self, x: u64) -> &[u64] {
        assert!(x <= self.limit, "sieve limit {} below {x}", self.limit);
        let end = self.primes.partition_point(|&p| p <= x);
        &self.primes[..end]
    }

    /// Product of the primes in `(lo, hi]`.
    pub fn primorial_range(&self, lo: u64, hi: u64) -> BigInt {
        self.primes_le(hi)
            .iter()
            .filter(|&&p| p > lo)
            .fold(BigInt::one(), |acc, &p| acc * p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorisation by trial division, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Exponent of `p` in `x` (`x != 0`).
pub fn valuation(x: &BigInt, p: u64) -> u64 {
    assert!(!x.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}
