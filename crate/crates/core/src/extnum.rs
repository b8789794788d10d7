//! Nonnegative reals with an extended exponent range.
//!
//! An [`ExtReal`] stores the natural logarithm of its magnitude, so values
//! such as `3.45e-47335` are as easy to carry around as `1.0`. The logarithm
//! is held as an unevaluated sum `log_value + log_residual`; the residual
//! captures what a single `f64` logarithm loses, which makes the conversion
//! from and back to `f64` exact to the last place.
//!
//! Zero is an explicit flag rather than `-inf`, so ordering stays total.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul};

use crate::error::{domain, Result};

#[derive(Clone, Copy, Debug)]
pub struct ExtReal {
    log_value: f64,
    log_residual: f64,
    is_zero: bool,
}

/// Rounding direction used when printing a magnitude in decimal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    Up,
    Nearest,
    Down,
}

// Error-free transformation: a + b = s + e exactly.
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal {
        log_value: 0.0,
        log_residual: 0.0,
        is_zero: true,
    };

    pub const ONE: ExtReal = ExtReal {
        log_value: 0.0,
        log_residual: 0.0,
        is_zero: false,
    };

    /// Saturation sentinel for overflow of the logarithm itself.
    pub const INFINITY: ExtReal = ExtReal {
        log_value: f64::INFINITY,
        log_residual: 0.0,
        is_zero: false,
    };

    /// The value `e^log_value`.
    pub fn exp_of(log_value: f64) -> ExtReal {
        if log_value.is_nan() {
            return ExtReal::INFINITY;
        }
        if log_value == f64::NEG_INFINITY {
            return ExtReal::ZERO;
        }
        ExtReal {
            log_value,
            log_residual: 0.0,
            is_zero: false,
        }
    }

    /// Converts a nonnegative `f64`; negative or NaN inputs are rejected.
    pub fn from_real(v: f64) -> Result<ExtReal> {
        if v.is_nan() || v < 0.0 {
            return Err(domain(format!("ExtReal cannot hold {v}")));
        }
        if v == 0.0 {
            return Ok(ExtReal::ZERO);
        }
        if v.is_infinite() {
            return Ok(ExtReal::INFINITY);
        }
        let mut hi = v.ln();
        let mut e = hi.exp();
        while e.is_infinite() {
            hi = hi.next_down();
            e = hi.exp();
        }
        while e == 0.0 {
            hi = hi.next_up();
            e = hi.exp();
        }
        // to_real reproduces v as e + e * lo, using the same exp(hi).
        let lo = (v - e) / e;
        Ok(ExtReal {
            log_value: hi,
            log_residual: lo,
            is_zero: false,
        })
    }

    /// Converts a value known to be nonnegative. Panics on negative input.
    pub fn from_nonneg(v: f64) -> ExtReal {
        ExtReal::from_real(v).expect("nonnegative input")
    }

    pub fn is_zero(&self) -> bool {
        self.is_zero
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_zero && self.log_value == f64::INFINITY
    }

    /// Natural logarithm; `-inf` for zero.
    pub fn ln(&self) -> f64 {
        if self.is_zero {
            f64::NEG_INFINITY
        } else {
            self.log_value + self.log_residual
        }
    }

    pub fn log10(&self) -> f64 {
        self.ln() / std::f64::consts::LN_10
    }

    /// Leading part of the stored logarithm.
    pub fn log_value(&self) -> f64 {
        if self.is_zero {
            f64::NEG_INFINITY
        } else {
            self.log_value
        }
    }

    /// Nearest `f64`; overflows to `inf` and underflows to `0`.
    pub fn to_real(&self) -> f64 {
        if self.is_zero {
            return 0.0;
        }
        let e = self.log_value.exp();
        if e.is_infinite() || e == 0.0 {
            return e;
        }
        e.mul_add(self.log_residual, e)
    }

    fn from_parts(hi: f64, lo: f64) -> ExtReal {
        if hi.is_nan() || hi == f64::INFINITY {
            return ExtReal::INFINITY;
        }
        if hi == f64::NEG_INFINITY {
            return ExtReal::ZERO;
        }
        let (s, e) = two_sum(hi, lo);
        ExtReal {
            log_value: s,
            log_residual: e,
            is_zero: false,
        }
    }

    /// Raises to a real power. `0^p` is an error for `p < 0`.
    pub fn pow(self, p: f64) -> Result<ExtReal> {
        if self.is_zero {
            return match p.partial_cmp(&0.0) {
                Some(Ordering::Greater) => Ok(ExtReal::ZERO),
                Some(Ordering::Equal) => Ok(ExtReal::ONE),
                _ => Err(domain(format!("0^{p} is undefined"))),
            };
        }
        if self.is_infinite() {
            return Ok(if p > 0.0 {
                ExtReal::INFINITY
            } else if p == 0.0 {
                ExtReal::ONE
            } else {
                ExtReal::ZERO
            });
        }
        let hi = self.log_value * p;
        let err = self.log_value.mul_add(p, -hi);
        Ok(ExtReal::from_parts(hi, err + self.log_residual * p))
    }

    /// Difference `self - other`, or `None` if it would be negative.
    pub fn checked_sub(self, other: ExtReal) -> Option<ExtReal> {
        if other.is_zero {
            return Some(self);
        }
        match self.cmp(&other) {
            Ordering::Less => None,
            Ordering::Equal => Some(ExtReal::ZERO),
            Ordering::Greater => {
                if self.is_infinite() {
                    return Some(ExtReal::INFINITY);
                }
                let d = (other.log_value - self.log_value) + (other.log_residual - self.log_residual);
                let tail = (-d.exp_m1()).ln();
                Some(ExtReal::from_parts(self.log_value, self.log_residual + tail))
            }
        }
    }

    /// Decimal mantissa in `[1, 10)` and exponent, with `sig` significant digits.
    pub fn to_decimal(&self, sig: u32, rounding: Rounding) -> (f64, i64) {
        if self.is_zero {
            return (0.0, 0);
        }
        let l10 = self.log10();
        let mut exp10 = l10.floor();
        let m = 10f64.powf(l10 - exp10);
        let scale = 10f64.powi(sig.max(1) as i32 - 1);
        let scaled = m * scale;
        let mut r = match rounding {
            Rounding::Up => (scaled * (1.0 - 1e-12)).ceil(),
            Rounding::Down => (scaled * (1.0 + 1e-12)).floor(),
            Rounding::Nearest => scaled.round(),
        } / scale;
        if r >= 10.0 {
            r /= 10.0;
            exp10 += 1.0;
        }
        if r < 1.0 {
            r *= 10.0;
            exp10 -= 1.0;
        }
        (r, exp10 as i64)
    }
}

impl PartialEq for ExtReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExtReal {}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero, other.is_zero) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => {
                if self.log_value == other.log_value && self.log_value.is_infinite() {
                    return Ordering::Equal;
                }
                let d = (self.log_value - other.log_value) + (self.log_residual - other.log_residual);
                d.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
            }
        }
    }
}

impl Add for ExtReal {
    type Output = ExtReal;

    fn add(self, rhs: ExtReal) -> ExtReal {
        if self.is_zero {
            return rhs;
        }
        if rhs.is_zero {
            return self;
        }
        let (big, small) = if self >= rhs { (self, rhs) } else { (rhs, self) };
        if big.is_infinite() {
            return ExtReal::INFINITY;
        }
        let d = (small.log_value - big.log_value) + (small.log_residual - big.log_residual);
        ExtReal::from_parts(big.log_value, big.log_residual + d.exp().ln_1p())
    }
}

impl Mul for ExtReal {
    type Output = ExtReal;

    fn mul(self, rhs: ExtReal) -> ExtReal {
        if self.is_zero || rhs.is_zero {
            return ExtReal::ZERO;
        }
        let (s, e) = two_sum(self.log_value, rhs.log_value);
        ExtReal::from_parts(s, e + self.log_residual + rhs.log_residual)
    }
}

impl Div for ExtReal {
    type Output = ExtReal;

    /// Division by zero saturates to the infinity sentinel.
    fn div(self, rhs: ExtReal) -> ExtReal {
        if self.is_zero {
            return ExtReal::ZERO;
        }
        if rhs.is_zero {
            return ExtReal::INFINITY;
        }
        let (s, e) = two_sum(self.log_value, -rhs.log_value);
        ExtReal::from_parts(s, e + self.log_residual - rhs.log_residual)
    }
}

impl std::iter::Sum for ExtReal {
    fn sum<I: Iterator<Item = ExtReal>>(iter: I) -> ExtReal {
        iter.fold(ExtReal::ZERO, |acc, x| acc + x)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero {
            return write!(f, "0");
        }
        if self.is_infinite() {
            return write!(f, "inf");
        }
        let digits = f.precision().unwrap_or(3) as u32;
        let (m, e) = self.to_decimal(digits, Rounding::Nearest);
        write!(f, "{:.*}e{}", digits.saturating_sub(1) as usize, m, e)
    }
}
