//! Explicit bounds for the error term in the prime number theorem.
//!
//! The crate turns a zero-free region for the Riemann zeta function and a
//! zero-density estimate into certified constants `A, B, C` such that
//! `|psi(x) - x| <= A x (log x)^B exp(-C sqrt(log x))` beyond a threshold,
//! and derives the corresponding bounds for `theta(x)` and `pi(x)`.
// Negated comparisons are used deliberately so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod derived;
pub mod engine;
pub mod error;
pub mod extnum;
pub mod primes;
pub(crate) mod quad;
pub mod regimes;
pub mod zdensity;
pub mod zfr;

pub use error::{Error, Result};
pub use extnum::{ExtReal, Rounding};
