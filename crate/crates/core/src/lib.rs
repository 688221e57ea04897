//! Exact continued-fraction machinery for the real root of largest modulus of
//! `x^3 - t x^2 - a`, with certified enclosures of the constants governing
//! its effective irrationality bound.
//!
//! The crate is organised bottom-up:
//!
//! * [`params`] normalises `(t, a)` and computes the reduced coordinates.
//! * [`cf`] generates partial quotients, step matrices and block coefficients.
//! * [`convergents`] evaluates `p_n / q_n` exactly.
//! * [`modcert`] checks the modular symmetry conditions and divisibility of
//!   `gcd(p_n, q_n)`.
//! * [`interval`] is the outward-rounded arithmetic used by everything analytic.
//! * [`constants`] encloses `c1 .. c7`, `lambda`, `tau`, `q0` and thresholds.
//! * [`certreal`] encloses the root itself and distances `||q x||`.
//! * [`harness`] runs the end-to-end verification experiments.

pub mod certreal;
pub mod cf;
pub mod constants;
pub mod convergents;
pub mod error;
pub mod harness;
pub mod interval;
pub mod matrix;
pub mod modcert;
pub mod params;
pub mod primes;
mod ser;

pub use error::{Error, Result};
pub use interval::{Decision, Dyadic, Interval};
pub use params::{CubicParams, DomainStatus, ReducedParams};
