//! The reduced continued fraction of `x / g2`.
//!
//! After the head `a_0 = t1`, partial quotients repeat in blocks of four.
//! With `k = floor(i / 4)`:
//!
//! | `i mod 4` | `beta_i`                 | `a_i`            |
//! |-----------|--------------------------|------------------|
//! | 1         | `(12k+1)(3k+1) a*`       | `(2i+1) t2`      |
//! | 2         | `(12k+5)(3k+2) a*`       | `(2i+1) t1`      |
//! | 3         | `(12k+7)(6k+5) a*`       | `2(2i+1) t2`     |
//! | 0 (i > 0) | `(12k-1)(6k+1) a*`       | `(2i+1) t1`      |
//!
//! `beta_0 = 1` so that `q_0 = 1` and the convergents tend to `x / g2`.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::params::ReducedParams;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialQuotient {
    pub index: usize,
    /// Partial denominator `a_i`.
    #[serde(serialize_with = "crate::ser::big")]
    pub a: BigInt,
    /// Partial numerator `beta_i`.
    #[serde(serialize_with = "crate::ser::big")]
    pub beta: BigInt,
}

/// `(a_i, beta_i)` as machine integers; exact for every index used here
/// (`|a_i| <= 2 (2i+1) t2 < 2^127` while `i < 2^40`).
pub fn partial_quotient_raw(rp: &ReducedParams, i: usize) -> (i128, i128) {
    if i == 0 {
        return (rp.t1 as i128, 1);
    }
    let k = (i / 4) as i128;
    let two_i1 = 2 * i as i128 + 1;
    let (t1, t2, a) = (rp.t1 as i128, rp.t2 as i128, rp.a_star as i128);
    match i % 4 {
        1 => (two_i1 * t2, (12 * k + 1) * (3 * k + 1) * a),
        2 => (two_i1 * t1, (12 * k + 5) * (3 * k + 2) * a),
        3 => (2 * two_i1 * t2, (12 * k + 7) * (6 * k + 5) * a),
        _ => (two_i1 * t1, (12 * k - 1) * (6 * k + 1) * a),
    }
}

pub fn partial_quotient(rp: &ReducedParams, i: usize) -> PartialQuotient {
    let (a, beta) = partial_quotient_raw(rp, i);
    PartialQuotient {
        index: i,
        a: BigInt::from(a),
        beta: BigInt::from(beta),
    }
}

/// `C_i = [[a_i, beta_i], [1, 0]]`.
pub fn step_matrix(rp: &ReducedParams, i: usize) -> Mat2 {
    let pq = partial_quotient(rp, i);
    Mat2::new(pq.a, pq.beta, BigInt::one(), BigInt::from(0))
}

/// Ordered product `C_hi C_{hi-1} ... C_lo` (descending indices).
pub fn descending_product(rp: &ReducedParams, hi: usize, lo: usize) -> Mat2 {
    let mut acc = Mat2::identity();
    for i in (lo..=hi).rev() {
        acc = &acc * &step_matrix(rp, i);
    }
    acc
}

/// Coefficients of the four-step block `C_{4k+4} C_{4k+3} C_{4k+2} C_{4k+1}`
/// and of the three-step inverse used in the `q_{4k}` recurrence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockCoeffs {
    pub k: usize,
    #[serde(serialize_with = "crate::ser::big")]
    pub a_k11: BigInt,
    #[serde(serialize_with = "crate::ser::big")]
    pub a_k12: BigInt,
    /// `p(k) = (8k+5)(8k+9) t1 t2 + 2(36k^2+63k+25) a*`.
    #[serde(serialize_with = "crate::ser::big")]
    pub p_k: BigInt,
    #[serde(serialize_with = "crate::ser::big_opt")]
    d_k: Option<BigInt>,
    #[serde(serialize_with = "crate::ser::big_opt")]
    b_k21: Option<BigInt>,
    #[serde(serialize_with = "crate::ser::big_opt")]
    b_k22: Option<BigInt>,
}

impl BlockCoeffs {
    /// `d = -(12k-7)(12k-5)(12k-1)(3k-1)(6k-1)(6k+1) a*^3`.
    pub fn d_k(&self) -> Result<&BigInt> {
        self.d_k.as_ref().ok_or(Error::BlockIndexZero)
    }

    pub fn b_k21(&self) -> Result<&BigInt> {
        self.b_k21.as_ref().ok_or(Error::BlockIndexZero)
    }

    pub fn b_k22(&self) -> Result<&BigInt> {
        self.b_k22.as_ref().ok_or(Error::BlockIndexZero)
    }
}

/// `p(k)` evaluated at an arbitrary (possibly negative) `k`.
pub fn p_poly(rp: &ReducedParams, k: i64) -> BigInt {
    let k = BigInt::from(k);
    let x = BigInt::from(rp.t1t2());
    let a = BigInt::from(rp.a_star);
    (&k * 8 + 5) * (&k * 8 + 9) * &x + (&k * &k * 36 + &k * 63 + 25) * 2 * &a
}

pub fn block_coeffs(rp: &ReducedParams, k: usize) -> BlockCoeffs {
    let kk = BigInt::from(k);
    let k8 = |c: i64| -> BigInt { &kk * 8 + c };
    let k12 = |c: i64| -> BigInt { &kk * 12 + c };
    let k3 = |c: i64| -> BigInt { &kk * 3 + c };
    let k6 = |c: i64| -> BigInt { &kk * 6 + c };
    let x = BigInt::from(rp.t1t2());
    let a = BigInt::from(rp.a_star);
    let t1 = BigInt::from(rp.t1);

    let a_k11 = k8(3) * k8(5) * k8(7) * k8(9) * 2 * &x * &x
        + k8(5) * k8(7) * (&kk * &kk * 36 + &kk * 55 + 16) * 6 * &a * &x
        + k12(5) * k12(11) * k3(2) * k6(7) * &a * &a;
    let p_k = p_poly(rp, k as i64);
    let a_k12 = k12(1) * k3(1) * k8(7) * 2 * &a * &t1 * &p_k;

    let (d_k, b_k21, b_k22) = if k == 0 {
        (None, None, None)
    } else {
        let d: BigInt = -(k12(-7) * k12(-5) * k12(-1) * k3(-1) * k6(-1) * k6(1) * &a * &a * &a);
        let b21 = -(k12(-5) * k6(-1) * &a) - k8(-3) * k8(-1) * 2 * &x;
        let b22 = k8(-1) * 2 * &t1 * p_poly(rp, k as i64 - 1);
        (Some(d), Some(b21), Some(b22))
    };
    BlockCoeffs {
        k,
        a_k11,
        a_k12,
        p_k,
        d_k,
        b_k21,
        b_k22,
    }
}

/// Explicit product `C_{4k+4} C_{4k+3} C_{4k+2} C_{4k+1}`.
pub fn block_product(rp: &ReducedParams, k: usize) -> Mat2 {
    descending_product(rp, 4 * k + 4, 4 * k + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{normalize, reduce};

    fn rp(t: i64, a: i64) -> ReducedParams {
        reduce(&normalize(t, a).unwrap())
    }

    #[test]
    fn partial_quotient_examples() {
        let r = rp(100, 1);
        let pq = partial_quotient(&r, 1);
        assert_eq!((pq.beta, pq.a), (BigInt::from(3), BigInt::from(30000)));
        let pq = partial_quotient(&r, 3);
        assert_eq!((pq.beta, pq.a), (BigInt::from(105), BigInt::from(140000)));
        let pq = partial_quotient(&r, 4);
        assert_eq!((pq.beta, pq.a), (BigInt::from(231), BigInt::from(900)));
        let pq = partial_quotient(&r, 0);
        assert_eq!((pq.beta, pq.a), (BigInt::from(1), BigInt::from(100)));
    }

    #[test]
    fn step_matrix_examples() {
        let r = rp(100, 1);
        let c1 = step_matrix(&r, 1);
        assert_eq!(c1, Mat2::new(30000.into(), 3.into(), 1.into(), 0.into()));
        assert_eq!(step_matrix(&r, 2).det(), BigInt::from(-30));
        assert_eq!(step_matrix(&r, 0), Mat2::new(100.into(), 1.into(), 1.into(), 0.into()));
    }

    #[test]
    fn block_zero_generic_coefficients() {
        // (eq3) at k = 0: 2*3*5*7*9 = 1890, 6*5*7*16 = 3360, 5*11*2*7 = 770.
        for r in [rp(6, 2), rp(100, 1), rp(-9, 2), rp(14, 3)] {
            let b = block_coeffs(&r, 0);
            let x = BigInt::from(r.t1t2());
            let a = BigInt::from(r.a_star);
            let expect = BigInt::from(1890) * &x * &x + BigInt::from(3360) * &a * &x + BigInt::from(770) * &a * &a;
            assert_eq!(b.a_k11, expect);
            let prod = block_product(&r, 0);
            assert_eq!(prod.m[0][0], b.a_k11);
            assert_eq!(prod.m[0][1], b.a_k12);
            assert_eq!(b.p_k, BigInt::from(45) * &x + BigInt::from(50) * &a);
            assert!(matches!(b.d_k(), Err(Error::BlockIndexZero)));
        }
    }

    #[test]
    fn d_at_one() {
        for r in [rp(6, 2), rp(100, 1), rp(-9, 2)] {
            let a = BigInt::from(r.a_star);
            assert_eq!(*block_coeffs(&r, 1).d_k().unwrap(), BigInt::from(-26950) * &a * &a * &a);
        }
    }

    #[test]
    fn block_identity_and_inverse_rows() {
        for r in [rp(6, 2), rp(100, 1), rp(-9, 2), rp(14, 3), rp(30, 8)] {
            for k in 1..=30 {
                let b = block_coeffs(&r, k);
                let prod = block_product(&r, k);
                assert_eq!(prod.m[0][0], b.a_k11, "k={k}");
                assert_eq!(prod.m[0][1], b.a_k12, "k={k}");
                let three = descending_product(&r, 4 * k, 4 * k - 2);
                assert_eq!(three.det(), *b.d_k().unwrap());
                // d * M^{-1} = adj(M); its second row is (b_k21, b_k22).
                let adj = three.adjugate();
                assert_eq!(adj.m[1][0], *b.b_k21().unwrap());
                assert_eq!(adj.m[1][1], *b.b_k22().unwrap());
                assert_eq!(
                    *b.b_k22().unwrap(),
                    BigInt::from(2 * (8 * k as i64 - 1) * r.t1) * p_poly(&r, k as i64 - 1)
                );
            }
        }
    }
}
