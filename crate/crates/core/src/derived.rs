//! Bounds for `theta(x)` and `pi(x) - li(x)` derived from a bound for `psi(x)`.
//!
//! `|theta(x) - x|` picks up the gap `psi(x) - theta(x) < a1 sqrt(x) + a2 x^{1/3}`;
//! `|pi(x) - li(x)|` follows by partial summation, splitting
//! `int_2^x |theta(t) - t| / (t log^2 t) dt` at `599` and `exp(58)`.

use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use crate::engine::{round_up, ArgKind, BoundConstants};
use crate::error::{domain, Error, Result};
use crate::extnum::ExtReal;

/// `log x` beyond which the `psi - theta` gap bound holds.
pub const GAP_MIN_LOG_X: f64 = 58.0;
/// Published ceiling for `int_2^599 |theta(t) - t| / (t log^2 t) dt`.
pub const I1_CEILING: f64 = 5.43;
/// Published ceiling for the same integral over `[599, exp(58)]`.
pub const I2_CEILING: f64 = 7.87e12;
/// Lower end `log x0` of the partial-summation tail.
pub const PI_LOG_X0: f64 = 58.0;
/// Upper end of the grid used to check the `h'` condition before the tail argument.
const HPRIME_GRID_END: f64 = 1e6;
const HPRIME_GRID_POINTS: usize = 10_000;

/// `psi(x) - theta(x) < a1 sqrt(x) + a2 x^{1/3}` for `log x > 58`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThetaPsiGap {
    pub a1: f64,
    pub a2: f64,
    pub min_log_x: f64,
}

impl Default for ThetaPsiGap {
    fn default() -> Self {
        ThetaPsiGap {
            a1: 1.0 + 1.93378e-8,
            a2: 1.01718,
            min_log_x: GAP_MIN_LOG_X,
        }
    }
}

impl ThetaPsiGap {
    /// `log((a1 sqrt(x) + a2 x^{1/3}) / x)`.
    pub fn relative_log(&self, log_x: f64) -> f64 {
        (ExtReal::exp_of(self.a1.ln() - 0.5 * log_x) + ExtReal::exp_of(self.a2.ln() - 2.0 * log_x / 3.0)).ln()
    }
}

/// Theta-bound constants `A1 = A + 0.01` with the same `B`, `C` and range.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThetaConstants {
    pub a1: f64,
    pub b: f64,
    pub c: f64,
    pub x_label: f64,
    pub kind: ArgKind,
    /// `log` of (0.01 envelope / gap) at the left end of the certified range.
    pub gap_log_margin: f64,
}

/// Certifies `0.01 L^b exp(-c w(L)) >= gap(L)` for every `L >= from_log_x`
/// and returns the log-margin at `from_log_x`.
///
/// The margin `log(0.01) + b log L - c w(L) + L/2 - log(a1 + a2)` majorises the
/// gap comparison and is increasing once `c s w(L) / L <= 1/2`; since
/// `w(L)/L` decreases, that is checked once at the left end.
pub fn certify_theta_gap(kind: ArgKind, b: f64, c: f64, from_log_x: f64) -> Result<f64> {
    let gap = ThetaPsiGap::default();
    let l0 = from_log_x.max(gap.min_log_x);
    let s_max = match kind {
        ArgKind::SqrtLog => 0.5,
        ArgKind::VkR => 0.6,
    };
    if !(b >= 0.0) || c * s_max * kind.w(l0) / l0 > 0.5 {
        return Err(Error::Certification(format!(
            "gap margin not increasing from log x = {l0}"
        )));
    }
    let env = 0.01f64.ln() + b * l0.ln() - c * kind.w(l0);
    let majorant = (gap.a1 + gap.a2).ln() - 0.5 * l0;
    let margin = env - majorant;
    if margin < 0.0 {
        return Err(Error::Certification(format!(
            "0.01 envelope below the psi - theta gap at log x = {l0}"
        )));
    }
    Ok(env - gap.relative_log(l0))
}

pub fn theta_constants(psi: &BoundConstants) -> Result<ThetaConstants> {
    if !psi.monotone_certified() {
        return Err(Error::Certification("psi constants are not certified".into()));
    }
    let margin = certify_theta_gap(psi.kind(), psi.b, psi.c, psi.x_label)?;
    Ok(ThetaConstants {
        // keep the printed two/three decimals exact
        a1: ((psi.a + 0.01) * 1e6).round() / 1e6,
        b: psi.b,
        c: psi.c,
        x_label: psi.x_label,
        kind: psi.kind(),
        gap_log_margin: margin,
    })
}

/// `t u'(t)` for the decay argument `u`, as a function of `log t`.
pub fn t_u_prime(kind: ArgKind, log_t: f64) -> f64 {
    match kind {
        ArgKind::SqrtLog => 0.5 / log_t.sqrt(),
        ArgKind::VkR => {
            let ll = log_t.ln();
            (3.0 * ll - 1.0) / (5.0 * log_t.powf(0.4) * ll.powf(1.2))
        }
    }
}

/// Decreasing majorant of [`t_u_prime`].
fn t_u_prime_majorant(kind: ArgKind, log_t: f64) -> f64 {
    match kind {
        ArgKind::SqrtLog => t_u_prime(kind, log_t),
        ArgKind::VkR => 0.6 * log_t.powf(-0.4) * log_t.ln().powf(-0.2),
    }
}

/// Inputs of the partial-summation argument for `pi(x) - li(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PiInputs {
    /// Theta constant `A1`.
    pub a1: f64,
    pub b: f64,
    pub c: f64,
    pub alpha: f64,
    pub kind: ArgKind,
    /// Decimals `A2` is rounded up to.
    pub decimals: i32,
}

impl PiInputs {
    /// `log t - alpha - C t log t u'(t) - log^{B + alpha - 1} t`, which must be `>= 0`
    /// so that `h'(t) >= A1 log^{B-2} t exp(-C u(t))`.
    pub fn hprime_margin(&self, log_t: f64) -> f64 {
        log_t - self.alpha - self.c * log_t * t_u_prime(self.kind, log_t)
            - log_t.powf(self.b + self.alpha - 1.0)
    }

    /// Certifies the `h'` condition for all `log t >= 58`: a grid up to
    /// `log t = 1e6`, then a tail argument dividing by `log t`, where
    /// `1 - alpha/L - C tu'(L)` increases and `L^{B + alpha - 2}` decreases.
    pub fn certify_hprime(&self) -> Result<()> {
        if !(self.b + self.alpha < 2.0) {
            return Err(Error::Certification("B + alpha must be below 2".into()));
        }
        let (lo, hi) = (PI_LOG_X0, HPRIME_GRID_END);
        for i in 0..=HPRIME_GRID_POINTS {
            let l = lo * (hi / lo).powf(i as f64 / HPRIME_GRID_POINTS as f64);
            if self.hprime_margin(l) < 0.0 {
                return Err(Error::Certification(format!(
                    "h' condition fails at log t = {l}"
                )));
            }
        }
        let tail = 1.0 - self.alpha / hi - self.c * t_u_prime_majorant(self.kind, hi)
            - hi.powf(self.b + self.alpha - 2.0);
        if tail < 0.0 {
            return Err(Error::Certification("h' condition tail check fails".into()));
        }
        Ok(())
    }
}

/// `A1 log^{-alpha} x exp(-C u(x))`, the majorant of `I3 / x`, in log domain.
pub fn pi_tail_integral(inputs: &PiInputs, log_x: f64) -> ExtReal {
    ExtReal::exp_of(inputs.a1.ln() - inputs.alpha * log_x.ln() - inputs.c * inputs.kind.w(log_x))
}

/// `int_599^{exp(58)} dt / (8 pi sqrt t)`, the majorant of the middle integral.
pub fn i2_computed() -> f64 {
    (PI_LOG_X0 / 2.0).exp().mul_add(1.0, -599f64.sqrt()) * 2.0 / (8.0 * PI)
}

/// How the `exp(C u(x0))` factor of the third term is read in the
/// Vinogradov–Korobov case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThirdTermReading {
    /// `exp(C u(x0))`, as in the classical case.
    Exponential,
    /// `u(x0)^C`.
    Power,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PiConstants {
    pub inputs: PiInputs,
    pub a2: f64,
    pub a2_unrounded: f64,
    /// `log^{1 - B - alpha} x0`.
    pub second_term: f64,
    /// `(2/log 2 + I1 + I2) log^{1-B} x0 exp(C u(x0)) / (A1 x0)`.
    pub third_term: f64,
    /// The third term under the other reading of the `u(x0)` factor, if relevant.
    pub third_term_alt: Option<f64>,
    /// `A2` computed with the recomputed `I2` in place of its ceiling.
    pub a2_with_computed_i2: f64,
    pub i2_computed: f64,
}

fn third_term(inputs: &PiInputs, i2: f64, reading: ThirdTermReading) -> f64 {
    let l0 = PI_LOG_X0;
    let u0 = inputs.kind.w(l0);
    let factor_log = match reading {
        ThirdTermReading::Exponential => inputs.c * u0,
        ThirdTermReading::Power => inputs.c * u0.ln(),
    };
    let k = 2.0 / LN_2 + I1_CEILING + i2;
    (k.ln() + (1.0 - inputs.b) * l0.ln() + factor_log - inputs.a1.ln() - l0).exp()
}

/// `A2` for `|pi(x) - li(x)| <= A2 x log^{B-1} x exp(-C u(x))`, `log x >= 58`.
pub fn pi_constants(inputs: PiInputs) -> Result<PiConstants> {
    if !(inputs.a1 > 0.0 && inputs.c > 0.0 && inputs.alpha > 0.0) {
        return Err(domain("A1, C and alpha must be positive"));
    }
    inputs.certify_hprime()?;
    let second = PI_LOG_X0.powf(1.0 - inputs.b - inputs.alpha);
    let (third, alt) = match inputs.kind {
        ArgKind::SqrtLog => (third_term(&inputs, I2_CEILING, ThirdTermReading::Exponential), None),
        ArgKind::VkR => (
            third_term(&inputs, I2_CEILING, ThirdTermReading::Power),
            Some(third_term(&inputs, I2_CEILING, ThirdTermReading::Exponential)),
        ),
    };
    let a2_unrounded = inputs.a1 * (1.0 + second + third);
    let a2 = round_up(a2_unrounded, inputs.decimals);
    if let Some(alt) = alt {
        let other = round_up(inputs.a1 * (1.0 + second + alt), inputs.decimals);
        if other != a2 {
            return Err(Error::Consistency(format!(
                "readings of the u(x0) factor disagree: {a2} vs {other}"
            )));
        }
    }
    let i2c = i2_computed();
    let reading = match inputs.kind {
        ArgKind::SqrtLog => ThirdTermReading::Exponential,
        ArgKind::VkR => ThirdTermReading::Power,
    };
    Ok(PiConstants {
        inputs,
        a2,
        a2_unrounded,
        second_term: second,
        third_term: third,
        third_term_alt: alt,
        a2_with_computed_i2: inputs.a1 * (1.0 + second + third_term(&inputs, i2c, reading)),
        i2_computed: i2c,
    })
}

/// Classical `pi` constants from the theta constants of the first table row.
pub fn pi_constants_classical(theta: &ThetaConstants) -> Result<PiConstants> {
    pi_constants(PiInputs {
        a1: theta.a1,
        b: theta.b,
        c: theta.c,
        alpha: 0.45,
        kind: ArgKind::SqrtLog,
        decimals: 2,
    })
}

/// Vinogradov–Korobov `pi` constants for a theta constant `a1`, with
/// `B = 1.801` and `C = 0.1853`.
pub fn pi_constants_vk(a1: f64) -> Result<PiConstants> {
    pi_constants(PiInputs {
        a1,
        b: 1.801,
        c: 0.1853,
        alpha: 0.19,
        kind: ArgKind::VkR,
        decimals: 3,
    })
}
