//! Side-by-side comparison with the classical bound for `x^3 + p x + q`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::constants::{bundle, wakabayashi_coeff, ConstOpts};
use crate::error::{Error, Result};
use crate::interval::{Decision, Interval};
use crate::params::{from_depressed_cubic, CubicParams, DomainStatus, ReducedParams};

#[derive(Clone, Debug, Serialize)]
pub struct WakReport {
    pub p: i64,
    pub q: i64,
    /// `2^{2/3} 3^4`.
    pub coefficient: Interval,
    /// `|p| > 2^{2/3} 3^4 |q|^{8/3}`, decided exactly as
    /// `|p|^3 > 2^2 3^12 q^8`.
    pub condition_holds: bool,
    /// `2 + (4 ln|q| + 2 ln 108) / (3 ln|p|)`, in the `|x - p/q|` scale.
    pub lambda_w: Option<Interval>,
    pub cp: CubicParams,
    pub rp: ReducedParams,
    pub domain: DomainStatus,
    /// Exponent of the `||q x||` bound.
    pub lambda: Option<Interval>,
    /// `lambda + 1`, the same bound in the `|x - p/q|` scale.
    pub lambda_plus_one: Option<Interval>,
    pub lambda_star: Option<Interval>,
    pub nontrivial: Option<Decision>,
}

pub fn wakabayashi_compare(p: i64, q: i64, opts: &ConstOpts) -> Result<WakReport> {
    if q == 0 {
        return Err(Error::ZeroDepressedConstant);
    }
    let cp = from_depressed_cubic(p, q)?;
    let rp = cp.reduce();
    let domain = cp.domain();
    let prec = opts.prec;
    let lhs = BigInt::from(p.unsigned_abs()).pow(3);
    let rhs = BigInt::from(q.unsigned_abs()).pow(8) * 2_125_764u32;
    let lambda_w = (p.unsigned_abs() >= 2).then(|| {
        let ln = |v: u64| Interval::from_int(v, prec).ln();
        let num = ln(q.unsigned_abs()).mul_int(4) + ln(108).mul_int(2);
        Interval::from_int(2, prec) + num / ln(p.unsigned_abs()).mul_int(3)
    });
    let (lambda, lambda_star, nontrivial) = if domain.bounds_valid {
        let b = bundle(&rp, opts)?;
        (b.lambda, b.lambda_star, Some(b.nontrivial))
    } else {
        (None, None, None)
    };
    Ok(WakReport {
        p,
        q,
        coefficient: wakabayashi_coeff(prec),
        condition_holds: lhs > rhs,
        lambda_w,
        cp,
        rp,
        domain,
        lambda_plus_one: lambda.as_ref().map(|l| l + &Interval::one(l.prec())),
        lambda,
        lambda_star,
        nontrivial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_cube_is_exact() {
        // (2^{2/3} 3^4)^3 = 4 * 531441
        assert_eq!(4 * 3u64.pow(12), 2_125_764);
        let c = wakabayashi_coeff(128);
        assert!(c.contains_f64_within(128.57, 0.01));
        assert!(c.powi(3).contains_f64_within(2_125_764.0, 1e-6));
    }

    #[test]
    fn example_minus_million() {
        let r = wakabayashi_compare(-1_000_000, 1, &ConstOpts::default()).unwrap();
        assert!(r.condition_holds);
        assert!(r.domain.cf_valid && r.domain.bounds_valid);
        assert!(r.lambda_w.as_ref().unwrap().contains_f64_within(2.226, 5e-4));
        assert_eq!((r.cp.t, r.cp.a), (-1_000_000, 1));
        let l = r.lambda.unwrap().to_f64();
        assert!((r.lambda_plus_one.unwrap().to_f64() - l - 1.0).abs() < 1e-12);
    }

    #[test]
    fn condition_boundary() {
        // 128^3 < 2125764 < 129^3
        assert!(
            !wakabayashi_compare(128, 1, &ConstOpts::default())
                .unwrap()
                .condition_holds
        );
        assert!(
            wakabayashi_compare(129, 1, &ConstOpts::default())
                .unwrap()
                .condition_holds
        );
        assert!(matches!(
            wakabayashi_compare(5, 0, &ConstOpts::default()),
            Err(Error::ZeroDepressedConstant)
        ));
    }
}
