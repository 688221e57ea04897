//! 2x2 matrices over big integers and over `Z/dZ`.

use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mat2 {
    #[serde(serialize_with = "crate::ser::big_mat")]
    pub m: [[BigInt; 2]; 2],
}

impl Mat2 {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        Mat2 { m: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        Mat2::new(BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one())
    }

    pub fn det(&self) -> BigInt {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    /// Adjugate, so that `self * adj = det * I`.
    pub fn adjugate(&self) -> Mat2 {
        Mat2::new(
            self.m[1][1].clone(),
            -&self.m[0][1],
            -&self.m[1][0],
            self.m[0][0].clone(),
        )
    }

    pub fn reduce_mod(&self, d: u64) -> ModMat2 {
        let f = |x: &BigInt| crate::modcert::residue(x, d);
        ModMat2 {
            m: [
                [f(&self.m[0][0]), f(&self.m[0][1])],
                [f(&self.m[1][0]), f(&self.m[1][1])],
            ],
            d,
        }
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, o: &Mat2) -> Mat2 {
        let a = &self.m;
        let b = &o.m;
        Mat2::new(
            &a[0][0] * &b[0][0] + &a[0][1] * &b[1][0],
            &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1],
            &a[1][0] * &b[0][0] + &a[1][1] * &b[1][0],
            &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1],
        )
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        &self * &o
    }
}

/// 2x2 matrix with entries reduced modulo `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModMat2 {
    pub m: [[u64; 2]; 2],
    pub d: u64,
}

impl ModMat2 {
    pub fn identity(d: u64) -> Self {
        ModMat2 {
            m: [[1 % d, 0], [0, 1 % d]],
            d,
        }
    }

    pub fn new(m: [[u64; 2]; 2], d: u64) -> Self {
        ModMat2 {
            m: [[m[0][0] % d, m[0][1] % d], [m[1][0] % d, m[1][1] % d]],
            d,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(|&x| x == 0)
    }
}

impl Mul for ModMat2 {
    type Output = ModMat2;
    fn mul(self, o: ModMat2) -> ModMat2 {
        debug_assert_eq!(self.d, o.d);
        let d = self.d as u128;
        let e = |i: usize, j: usize| -> u64 {
            let s = self.m[i][0] as u128 * o.m[0][j] as u128 + self.m[i][1] as u128 * o.m[1][j] as u128;
            (s % d) as u64
        };
        ModMat2 {
            m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]],
            d: self.d,
        }
    }
}
