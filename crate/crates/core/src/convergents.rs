//! Exact convergents `p_n / q_n` of the reduced expansion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cf::{block_coeffs, partial_quotient_raw};
use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::params::ReducedParams;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergentState {
    pub n: usize,
    #[serde(serialize_with = "crate::ser::big")]
    pub p: BigInt,
    #[serde(serialize_with = "crate::ser::big")]
    pub q: BigInt,
    #[serde(serialize_with = "crate::ser::big")]
    pub p_prev: BigInt,
    #[serde(serialize_with = "crate::ser::big")]
    pub q_prev: BigInt,
}

impl ConvergentState {
    /// `S_n = [[p_n, q_n], [p_{n-1}, q_{n-1}]]`.
    pub fn matrix(&self) -> Mat2 {
        Mat2::new(self.p.clone(), self.q.clone(), self.p_prev.clone(), self.q_prev.clone())
    }

    pub fn gcd(&self) -> BigInt {
        self.p.gcd(&self.q)
    }
}

/// Streaming convergent generator; keeps only the current window.
#[derive(Clone, Debug)]
pub struct Convergents {
    rp: ReducedParams,
    state: Option<ConvergentState>,
}

impl Convergents {
    pub fn new(rp: &ReducedParams) -> Self {
        Convergents { rp: *rp, state: None }
    }
}

impl Iterator for Convergents {
    type Item = ConvergentState;

    fn next(&mut self) -> Option<ConvergentState> {
        let next = match self.state.take() {
            None => ConvergentState {
                n: 0,
                p: BigInt::from(self.rp.t1),
                q: BigInt::one(),
                p_prev: BigInt::one(),
                q_prev: BigInt::zero(),
            },
            Some(s) => {
                let n = s.n + 1;
                let (a, beta) = partial_quotient_raw(&self.rp, n);
                let (a, beta) = (BigInt::from(a), BigInt::from(beta));
                ConvergentState {
                    n,
                    p: &a * &s.p + &beta * &s.p_prev,
                    q: &a * &s.q + &beta * &s.q_prev,
                    p_prev: s.p,
                    q_prev: s.q,
                }
            }
        };
        self.state = Some(next.clone());
        Some(next)
    }
}

/// States for `n = 0..=n_max`.
pub fn iterate(rp: &ReducedParams, n_max: usize) -> Vec<ConvergentState> {
    Convergents::new(rp).take(n_max + 1).collect()
}

/// State at a single index.
pub fn state_at(rp: &ReducedParams, n: usize) -> ConvergentState {
    Convergents::new(rp).nth(n).expect("convergent stream is infinite")
}

/// `p_{4k} / q_{4k}` with the common factor removed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedConvergent {
    pub k: usize,
    #[serde(serialize_with = "crate::ser::big")]
    pub p_star: BigInt,
    #[serde(serialize_with = "crate::ser::big")]
    pub q_star: BigInt,
    #[serde(serialize_with = "crate::ser::big")]
    pub g: BigInt,
}

pub fn reduced(state: &ConvergentState) -> Result<ReducedConvergent> {
    if !state.n.is_multiple_of(4) {
        return Err(Error::NotBlockIndex(state.n));
    }
    let g = state.gcd();
    Ok(ReducedConvergent {
        k: state.n / 4,
        p_star: &state.p / &g,
        q_star: &state.q / &g,
        g,
    })
}

/// Checks the block recurrences linking `q_{4k-4}, q_{4k}, q_{4k+4}` (and the
/// same for `p`):
///
/// * `T_{4k+4} = [[a_k11, a_k12], [1, 0]] S_{4k}`
/// * `q_{4k+4} = a_k11 q_{4k} + (d q_{4k-4} - b_k21 q_{4k}) a_k12 / b_k22`
///
/// The second identity is checked after clearing the denominator `b_k22`.
pub fn verify_block_recurrence(rp: &ReducedParams, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::BlockIndexZero);
    }
    let mut it = Convergents::new(rp);
    let s_prev = it.nth(4 * k - 4).expect("infinite");
    let s_mid = it.nth(3).expect("infinite");
    let s_next = it.nth(3).expect("infinite");
    check_block(rp, k, &s_prev, &s_mid, &s_next)
}

/// Streaming version over `k = 1..=k_max`.
pub fn verify_block_recurrences(rp: &ReducedParams, k_max: usize) -> Result<Vec<bool>> {
    let blocks: Vec<ConvergentState> = Convergents::new(rp)
        .take(4 * (k_max + 1) + 1)
        .filter(|s| s.n % 4 == 0)
        .collect();
    (1..=k_max)
        .map(|k| check_block(rp, k, &blocks[k - 1], &blocks[k], &blocks[k + 1]))
        .collect()
}

fn check_block(
    rp: &ReducedParams,
    k: usize,
    prev: &ConvergentState,
    mid: &ConvergentState,
    next: &ConvergentState,
) -> Result<bool> {
    let b = block_coeffs(rp, k);
    let (d, b21, b22) = (b.d_k()?, b.b_k21()?, b.b_k22()?);
    if b22.is_zero() {
        return Err(Error::Internal(format!("b_k22 = 0 at k = {k}")));
    }
    let eq2 =
        next.p == &b.a_k11 * &mid.p + &b.a_k12 * &mid.p_prev && next.q == &b.a_k11 * &mid.q + &b.a_k12 * &mid.q_prev;
    let eq4 = |x_prev: &BigInt, x_mid: &BigInt, x_next: &BigInt| {
        x_next * b22 == &b.a_k11 * x_mid * b22 + (d * x_prev - b21 * x_mid) * &b.a_k12
    };
    Ok(eq2 && eq4(&prev.q, &mid.q, &next.q) && eq4(&prev.p, &mid.p, &next.p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::descending_product;
    use crate::params::{normalize, reduce};

    fn rp(t: i64, a: i64) -> ReducedParams {
        reduce(&normalize(t, a).unwrap())
    }

    #[test]
    fn hand_recurrence_examples() {
        let r = rp(6, 2);
        let s = iterate(&r, 2);
        assert_eq!((s[0].p.clone(), s[0].q.clone()), (BigInt::from(6), BigInt::from(1)));
        // a_1 = 3 t2 = 18, beta_1 = 1: p_1 = 18*6 + 1, q_1 = 18
        assert_eq!((s[1].p.clone(), s[1].q.clone()), (BigInt::from(109), BigInt::from(18)));
        // a_2 = 5 t1 = 30, beta_2 = 5*2 = 10: p_2 = 30*109 + 10*6, q_2 = 30*18 + 10
        assert_eq!(
            (s[2].p.clone(), s[2].q.clone()),
            (BigInt::from(3330), BigInt::from(550))
        );
    }

    #[test]
    fn reduced_examples() {
        let st = ConvergentState {
            n: 4,
            p: 3330.into(),
            q: 550.into(),
            p_prev: 0.into(),
            q_prev: 0.into(),
        };
        let r = reduced(&st).unwrap();
        assert_eq!((r.p_star, r.q_star, r.g), (333.into(), 55.into(), 10.into()));
        let s0 = state_at(&rp(6, 2), 0);
        let r = reduced(&s0).unwrap();
        assert_eq!((r.p_star, r.q_star, r.g), (6.into(), 1.into(), 1.into()));
        assert!(matches!(reduced(&state_at(&rp(6, 2), 2)), Err(Error::NotBlockIndex(2))));
    }

    #[test]
    fn reduced_are_coprime() {
        let r = rp(100, 1);
        for s in iterate(&r, 80).iter().filter(|s| s.n % 4 == 0) {
            let red = reduced(s).unwrap();
            assert!(red.p_star.gcd(&red.q_star).is_one());
            assert_eq!(&red.q_star * &red.g, s.q);
        }
    }

    #[test]
    fn matrix_form_matches_recurrence() {
        for r in [rp(6, 2), rp(-9, 2), rp(14, 3)] {
            let states = iterate(&r, 200);
            let mut acc = Mat2::identity();
            for (n, s) in states.iter().enumerate() {
                acc = &crate::cf::step_matrix(&r, n) * &acc;
                assert_eq!(acc, s.matrix(), "n={n}");
            }
            assert_eq!(descending_product(&r, 37, 0), states[37].matrix());
        }
    }

    #[test]
    fn block_recurrence_examples() {
        assert!(verify_block_recurrence(&rp(6, 2), 1).unwrap());
        assert!(verify_block_recurrences(&rp(100, 1), 20).unwrap().iter().all(|&b| b));
        assert!(verify_block_recurrences(&rp(-9, 2), 20).unwrap().iter().all(|&b| b));
        assert!(matches!(
            verify_block_recurrence(&rp(6, 2), 0),
            Err(Error::BlockIndexZero)
        ));
    }

    #[test]
    fn negative_parameters_keep_block_sign() {
        let r = rp(-9, 2);
        let blocks: Vec<_> = iterate(&r, 200).into_iter().filter(|s| s.n % 4 == 0).collect();
        for w in blocks.windows(2) {
            assert_eq!(w[0].q.sign(), w[1].q.sign(), "n={}", w[0].n);
        }
    }
}
