//! Outward-rounded interval arithmetic over dyadic rationals.
//!
//! Every endpoint is a dyadic number `m * 2^e` with an arbitrary-precision
//! mantissa. Exact results (sums, products of endpoints) are rounded outward
//! to the interval's working precision, so an interval always encloses the
//! exact value of the expression that produced it. Transcendental functions
//! use series with explicit remainder bounds folded into the enclosure.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Three-valued outcome of a comparison between enclosures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    True,
    False,
    Undetermined,
}

impl Decision {
    pub fn is_true(self) -> bool {
        self == Decision::True
    }

    pub fn is_determined(self) -> bool {
        self != Decision::Undetermined
    }

    pub fn and(self, other: Decision) -> Decision {
        match (self, other) {
            (Decision::False, _) | (_, Decision::False) => Decision::False,
            (Decision::True, Decision::True) => Decision::True,
            _ => Decision::Undetermined,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Decision::True => "true",
            Decision::False => "false",
            Decision::Undetermined => "undetermined",
        }
    }
}

impl From<bool> for Decision {
    fn from(b: bool) -> Self {
        if b {
            Decision::True
        } else {
            Decision::False
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An exact dyadic rational `mant * 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Dyadic::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            Dyadic {
                mant: mant >> tz,
                exp: exp + tz as i64,
            }
        } else {
            Dyadic { mant, exp }
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_int<T: Into<BigInt>>(v: T) -> Self {
        Dyadic::new(v.into(), 0)
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(v: f64) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        if v == 0.0 {
            return Some(Dyadic::zero());
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Some(Dyadic::new(BigInt::from(m) * sign, e))
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Bit length of the mantissa magnitude.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Smallest `E` with `|self| < 2^E` (meaningless for zero).
    pub fn mag_exp(&self) -> i64 {
        self.bits() as i64 + self.exp
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Multiplication by `2^k`, exact.
    pub fn shifted(&self, k: i64) -> Dyadic {
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, i64) {
        let e = self.exp.min(other.exp);
        let a = &self.mant << ((self.exp - e) as usize);
        let b = &other.mant << ((other.exp - e) as usize);
        (a, b, e)
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b, e) = self.aligned(other);
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    /// Round toward negative infinity to at most `prec` significant bits.
    pub fn round_down(&self, prec: u32) -> Dyadic {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        // BigInt `>>` rounds toward negative infinity.
        Dyadic::new(&self.mant >> shift, self.exp + shift as i64)
    }

    /// Round toward positive infinity to at most `prec` significant bits.
    pub fn round_up(&self, prec: u32) -> Dyadic {
        self.neg().round_down(prec).neg()
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << (self.exp as usize)
        } else {
            &self.mant >> ((-self.exp) as usize)
        }
    }

    /// Smallest integer not below the value.
    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }

    /// Approximate value; saturates to 0 or infinity outside the `f64` range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.bits();
        let (m, e) = if bits > 60 {
            let s = bits - 60;
            (&self.mant >> s, self.exp + s as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let m = m.to_f64().unwrap_or(0.0);
        let e = e.clamp(-4000, 4000) as i32;
        // Split the scaling so intermediate powers stay finite.
        m * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
    }

    /// Approximate natural logarithm of `|self|`, valid far outside the `f64` range.
    pub fn ln_abs_f64(&self) -> f64 {
        let bits = self.bits();
        let (m, e) = if bits > 60 {
            let s = bits - 60;
            (&self.mant >> s, self.exp + s as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        m.abs().to_f64().unwrap_or(1.0).ln() + e as f64 * std::f64::consts::LN_2
    }

    /// Directed rounding of `self / other` to `prec` bits.
    pub fn div_round(&self, other: &Dyadic, prec: u32, up: bool) -> Dyadic {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let shift = (prec as i64 + other.bits() as i64 - self.bits() as i64 + 2).max(0);
        let num = &self.mant << (shift as usize);
        let (q, r) = num.div_mod_floor(&other.mant);
        let q = if up && !r.is_zero() { q + 1 } else { q };
        let d = Dyadic::new(q, self.exp - other.exp - shift);
        if up {
            d.round_up(prec)
        } else {
            d.round_down(prec)
        }
    }

    /// Directed rounding of the square root of a non-negative value.
    pub fn sqrt_round(&self, prec: u32, up: bool) -> Dyadic {
        assert!(self.signum() >= 0, "square root of a negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let mut s = (2 * prec as i64 + 4 - self.bits() as i64).max(0);
        if (self.exp - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let m = &self.mant << (s as usize);
        let r = m.sqrt();
        let r = if up && &r * &r != m { r + 1 } else { r };
        let d = Dyadic::new(r, (self.exp - s) / 2);
        if up {
            d.round_up(prec)
        } else {
            d.round_down(prec)
        }
    }

    /// Decimal scientific notation with `digits` significant digits, rounded
    /// down (`up = false`) or up (`up = true`).
    pub fn to_decimal(&self, digits: usize, up: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let digits = digits.max(1);
        let ten = BigInt::from(10);
        let lower = num_traits::pow(ten.clone(), digits - 1);
        let upper = &lower * &ten;
        let mut e10 = (self.ln_abs_f64() / std::f64::consts::LN_10).floor() as i64;
        loop {
            let j = digits as i64 - 1 - e10;
            let mut num = self.mant.clone();
            let mut den = BigInt::one();
            if self.exp >= 0 {
                num <<= self.exp as usize;
            } else {
                den <<= (-self.exp) as usize;
            }
            if j >= 0 {
                num *= num_traits::pow(ten.clone(), j as usize);
            } else {
                den *= num_traits::pow(ten.clone(), (-j) as usize);
            }
            let (q, r) = num.div_mod_floor(&den);
            let n = if up && !r.is_zero() { q + 1 } else { q };
            let mag = n.abs();
            if mag >= upper {
                if mag == upper {
                    let n = n / &ten;
                    return format_sci(&n, e10 + 1);
                }
                e10 += 1;
                continue;
            }
            if mag < lower {
                e10 -= 1;
                continue;
            }
            return format_sci(&n, e10);
        }
    }
}

fn format_sci(n: &BigInt, e10: i64) -> String {
    let s = n.abs().to_string();
    let sign = if n.is_negative() { "-" } else { "" };
    let (head, tail) = s.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{e10}")
    } else {
        format!("{sign}{head}.{tail}e{e10}")
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let (ma, mb) = (self.mag_exp(), other.mag_exp());
        if ma != mb {
            let ord = ma.cmp(&mb);
            return if sa > 0 { ord } else { ord.reverse() };
        }
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(17, false))
    }
}

/// Closed interval `[lo, hi]` with dyadic endpoints and a working precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

/// Digits printed for each endpoint in serialized output.
pub const DECIMAL_DIGITS: usize = 17;

impl Interval {
    /// Minimum working precision accepted by constructors.
    pub const MIN_PREC: u32 = 24;

    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        let prec = prec.max(Self::MIN_PREC);
        Interval {
            lo: lo.round_down(prec),
            hi: hi.round_up(prec),
            prec,
        }
    }

    pub fn point(d: Dyadic, prec: u32) -> Self {
        Interval::new(d.clone(), d, prec)
    }

    pub fn from_int<T: Into<BigInt>>(v: T, prec: u32) -> Self {
        Interval::point(Dyadic::from_int(v), prec)
    }

    /// Enclosure of `num / den`.
    pub fn from_ratio<A: Into<BigInt>, B: Into<BigInt>>(num: A, den: B, prec: u32) -> Self {
        let n = Dyadic::from_int(num);
        let d = Dyadic::from_int(den);
        let prec = prec.max(Self::MIN_PREC);
        Interval {
            lo: n.div_round(&d, prec, false),
            hi: n.div_round(&d, prec, true),
            prec,
        }
    }

    pub fn zero(prec: u32) -> Self {
        Interval::point(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Interval::from_int(1, prec)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Same endpoints re-rounded (outward) for a new working precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        Interval::new(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).shifted(-1)
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64()
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64()
    }

    pub fn contains(&self, d: &Dyadic) -> bool {
        &self.lo <= d && d <= &self.hi
    }

    /// Whether `v` lies in the interval widened by `tol` on each side.
    pub fn contains_f64_within(&self, v: f64, tol: f64) -> bool {
        self.lo_f64() - tol <= v && v <= self.hi_f64() + tol
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Relative gap between the centers of two enclosures.
    pub fn rel_center_gap(&self, other: &Interval) -> f64 {
        let a = self.to_f64();
        let b = other.to_f64();
        (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
    }

    /// Upper bound `E` such that every element has magnitude below `2^E`.
    pub fn mag_exp(&self) -> i64 {
        let a = if self.lo.is_zero() { i64::MIN } else { self.lo.mag_exp() };
        let b = if self.hi.is_zero() { i64::MIN } else { self.hi.mag_exp() };
        a.max(b)
    }

    /// Number of correct leading bits implied by the width (0 when wide).
    pub fn accuracy_bits(&self) -> i64 {
        if self.is_point() {
            return i64::MAX;
        }
        let w = self.width();
        let m = self.lo.abs().max(self.hi.abs());
        if m.is_zero() {
            return 0;
        }
        (m.mag_exp() - w.mag_exp()).max(0)
    }

    pub fn abs(&self) -> Interval {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            -self.clone()
        } else {
            let m = self.lo.abs().max(self.hi.clone());
            Interval::new(Dyadic::zero(), m, self.prec)
        }
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
            self.prec.max(other.prec),
        )
    }

    /// Widen by `rad` on both sides.
    pub fn widen(&self, rad: &Dyadic) -> Interval {
        let r = rad.abs();
        Interval::new(self.lo.sub(&r), self.hi.add(&r), self.prec)
    }

    pub fn mul_int<T: Into<BigInt>>(&self, k: T) -> Interval {
        self * &Interval::from_int(k, self.prec)
    }

    pub fn div_int<T: Into<BigInt>>(&self, k: T) -> Interval {
        self / &Interval::from_int(k, self.prec)
    }

    /// Multiplication by `2^k`.
    pub fn shifted(&self, k: i64) -> Interval {
        Interval {
            lo: self.lo.shifted(k),
            hi: self.hi.shifted(k),
            prec: self.prec,
        }
    }

    pub fn square(&self) -> Interval {
        if self.contains_zero() {
            let a = self.lo.mul(&self.lo);
            let b = self.hi.mul(&self.hi);
            Interval::new(Dyadic::zero(), a.max(b), self.prec)
        } else {
            self * self
        }
    }

    pub fn powi(&self, n: u32) -> Interval {
        let mut result = Interval::one(self.prec);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = base.square();
            }
        }
        result
    }

    pub fn recip(&self) -> Interval {
        &Interval::one(self.prec) / self
    }

    /// Square root; the negative part of the interval (if any) is discarded,
    /// so the result encloses the root of any non-negative element.
    pub fn sqrt(&self) -> Interval {
        assert!(self.hi.signum() >= 0, "square root of a negative interval");
        let lo = if self.lo.signum() < 0 {
            Dyadic::zero()
        } else {
            self.lo.sqrt_round(self.prec, false)
        };
        Interval {
            lo,
            hi: self.hi.sqrt_round(self.prec, true),
            prec: self.prec,
        }
    }

    pub fn exp(&self) -> Interval {
        if self.is_point() {
            return exp_point(&self.lo, self.prec);
        }
        let lo = exp_point(&self.lo, self.prec).lo;
        let hi = exp_point(&self.hi, self.prec).hi;
        Interval::new(lo, hi, self.prec)
    }

    /// Natural logarithm; panics unless the interval is strictly positive.
    pub fn ln(&self) -> Interval {
        assert!(self.lo.signum() > 0, "logarithm of a non-positive interval");
        if self.is_point() {
            return ln_point(&self.lo, self.prec);
        }
        let lo = ln_point(&self.lo, self.prec).lo;
        let hi = ln_point(&self.hi, self.prec).hi;
        Interval::new(lo, hi, self.prec)
    }

    /// `self^y` for a strictly positive base.
    pub fn pow(&self, y: &Interval) -> Interval {
        (&self.ln() * y).exp()
    }

    pub fn pi(prec: u32) -> Interval {
        cached(Constant::Pi, prec, pi_enclosure)
    }

    pub fn ln2(prec: u32) -> Interval {
        cached(Constant::Ln2, prec, |p| {
            let z = Interval::from_ratio(1, 3, p);
            atanh_series(&z).shifted(1)
        })
    }

    pub fn e(prec: u32) -> Interval {
        cached(Constant::E, prec, |p| exp_point(&Dyadic::from_int(1), p))
    }

    /// Certified `self < other`.
    pub fn lt(&self, other: &Interval) -> Decision {
        if self.hi < other.lo {
            Decision::True
        } else if self.lo >= other.hi {
            Decision::False
        } else {
            Decision::Undetermined
        }
    }

    /// Certified `self <= other`.
    pub fn le(&self, other: &Interval) -> Decision {
        if self.hi <= other.lo {
            Decision::True
        } else if self.lo > other.hi {
            Decision::False
        } else {
            Decision::Undetermined
        }
    }

    pub fn gt(&self, other: &Interval) -> Decision {
        other.lt(self)
    }

    pub fn ge(&self, other: &Interval) -> Decision {
        other.le(self)
    }

    pub fn is_positive(&self) -> Decision {
        self.gt(&Interval::zero(self.prec))
    }

    pub fn lo_decimal(&self) -> String {
        self.lo.to_decimal(DECIMAL_DIGITS, false)
    }

    pub fn hi_decimal(&self) -> String {
        self.hi.to_decimal(DECIMAL_DIGITS, true)
    }

    fn binary_prec(&self, other: &Interval) -> u32 {
        self.prec.max(other.prec)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(10);
        write!(
            f,
            "[{}, {}]",
            self.lo.to_decimal(digits, false),
            self.hi.to_decimal(digits, true)
        )
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Interval", 2)?;
        s.serialize_field("lo", &self.lo_decimal())?;
        s.serialize_field("hi", &self.hi_decimal())?;
        s.end()
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -self.clone()
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval::new(self.lo.add(&rhs.lo), self.hi.add(&rhs.hi), self.binary_prec(rhs))
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval::new(self.lo.sub(&rhs.hi), self.hi.sub(&rhs.lo), self.binary_prec(rhs))
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let cands = [
            self.lo.mul(&rhs.lo),
            self.lo.mul(&rhs.hi),
            self.hi.mul(&rhs.lo),
            self.hi.mul(&rhs.hi),
        ];
        let lo = cands.iter().min().cloned().unwrap_or_else(Dyadic::zero);
        let hi = cands.iter().max().cloned().unwrap_or_else(Dyadic::zero);
        Interval::new(lo, hi, self.binary_prec(rhs))
    }
}

impl Div for &Interval {
    type Output = Interval;
    /// Panics when the divisor contains zero.
    fn div(self, rhs: &Interval) -> Interval {
        assert!(!rhs.contains_zero(), "interval division by an interval containing zero");
        let prec = self.binary_prec(rhs);
        let pairs = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let lo = pairs
            .iter()
            .map(|(a, b)| a.div_round(b, prec, false))
            .min()
            .unwrap_or_else(Dyadic::zero);
        let hi = pairs
            .iter()
            .map(|(a, b)| a.div_round(b, prec, true))
            .max()
            .unwrap_or_else(Dyadic::zero);
        Interval { lo, hi, prec }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval { (&self).$m(&rhs) }
        }
        impl $tr<&Interval> for Interval {
            type Output = Interval;
            fn $m(self, rhs: &Interval) -> Interval { (&self).$m(rhs) }
        }
        impl $tr<Interval> for &Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

/// Enclosure of `exp(x)` for a dyadic point.
fn exp_point(x: &Dyadic, prec: u32) -> Interval {
    if x.is_zero() {
        return Interval::one(prec);
    }
    // Reduce to |r| < 2^-10, sum the Taylor series, then square back up.
    let s = (x.mag_exp() + 10).max(0);
    let wp = prec + s as u32 + 40;
    let r = Interval::point(x.shifted(-s), wp);
    let mut sum = Interval::one(wp);
    let mut term = Interval::one(wp);
    let mut j: u64 = 1;
    loop {
        term = (&term * &r).div_int(j);
        sum = &sum + &term;
        if term.mag_exp() < -(wp as i64) - 4 {
            break;
        }
        j += 1;
    }
    // Remaining tail is bounded by the last term since |r| < 2^-10.
    let bound = term.lo.abs().max(term.hi.abs());
    sum = sum.widen(&bound);
    for _ in 0..s {
        sum = sum.square();
    }
    sum.with_prec(prec)
}

/// `atanh(z) = sum z^(2j+1)/(2j+1)` for `0 <= z <= 1/2`, with tail bound.
pub(crate) fn atanh_series(z: &Interval) -> Interval {
    let wp = z.prec;
    let z2 = z.square();
    let mut power = z.clone();
    let mut sum = z.clone();
    let mut j: u64 = 1;
    loop {
        power = &power * &z2;
        let term = power.div_int(2 * j + 1);
        sum = &sum + &term;
        if power.mag_exp() < -(wp as i64) - 4 {
            break;
        }
        j += 1;
    }
    // tail <= z^(2j+3) / ((2j+3)(1 - z^2)) <= 2 z^(2j+3) for z <= 1/2
    let tail = (&power * &z2).shifted(1);
    let bound = tail.hi.abs();
    Interval::new(sum.lo.clone(), sum.hi.add(&bound), wp)
}

/// Enclosure of `ln(x)` for a positive dyadic point.
fn ln_point(x: &Dyadic, prec: u32) -> Interval {
    assert!(x.signum() > 0);
    let b = x.bits() as i64;
    let n = x.exp + b - 1;
    let n_bits = 64 - n.unsigned_abs().leading_zeros();
    // Extra square-root reductions shrink the series argument at high precision.
    let reductions = if prec > 256 {
        ((prec as f64).sqrt() / 2.0) as u32
    } else {
        0
    };
    let wp = prec + n_bits + 2 * reductions + 40;
    let mut y = Interval::point(Dyadic::new(x.mant.clone(), -(b - 1)), wp);
    for _ in 0..reductions {
        y = y.sqrt();
    }
    // z = 1 - 2/(y+1), a single occurrence of y keeps the enclosure tight.
    let z = &Interval::one(wp) - &Interval::from_int(2, wp) / &(&y + &Interval::one(wp));
    let ln_y = atanh_series(&z).shifted(1 + reductions as i64);
    let res = &Interval::ln2(wp).mul_int(n) + &ln_y;
    res.with_prec(prec)
}

/// Machin's formula with alternating-series remainders.
fn pi_enclosure(prec: u32) -> Interval {
    let wp = prec + 32;
    let atan_inv = |m: i64| -> Interval {
        let mm = BigInt::from(m * m);
        let mut den = BigInt::from(m);
        let mut sum = Interval::zero(wp);
        let mut j: u64 = 0;
        loop {
            let term = Interval::from_ratio(1, &den * (2 * j + 1), wp);
            sum = if j.is_multiple_of(2) {
                &sum + &term
            } else {
                &sum - &term
            };
            if term.mag_exp() < -(wp as i64) - 4 {
                break;
            }
            den *= &mm;
            j += 1;
        }
        let next = Interval::from_ratio(1, &den * &mm * (2 * j + 3), wp);
        sum.widen(next.hi())
    };
    let pi = &atan_inv(5).mul_int(16) - &atan_inv(239).mul_int(4);
    pi.with_prec(prec)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Constant {
    Pi,
    Ln2,
    E,
}

fn cached(kind: Constant, prec: u32, compute: impl Fn(u32) -> Interval) -> Interval {
    static CACHE: OnceLock<Mutex<HashMap<(Constant, u32), Interval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&(kind, prec)) {
        return v.clone();
    }
    let v = compute(prec);
    cache.lock().unwrap().insert((kind, prec), v.clone());
    v
}
