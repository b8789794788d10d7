//! Explicit zero-free regions for the Riemann zeta function.
//!
//! Each region is a function `nu(t)` such that `zeta(beta + it)` has no zeros
//! with `beta >= 1 - nu(t)`. Every function here takes `log t` as its argument,
//! since the heights involved (up to `exp(54564)` and beyond) overflow `f64`.

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Constant of the classical region.
pub const R0: f64 = 5.5666305;
/// Leading constant of the simplified Ford-type region.
pub const R1: f64 = 3.359;
/// Coefficient of the `log log t / log t` correction in the Ford-type region.
pub const FORD_D: f64 = 8.02;
/// Constant of the Vinogradov–Korobov region.
pub const VK_C: f64 = 57.54;

/// `log(5.45e8)`, the threshold of the unsimplified Ford-type region.
pub fn ford_log_t_min() -> f64 {
    5.45e8f64.ln()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    Classical,
    FordClassical,
    Vk,
}

/// A zero-free region with its validity threshold, expressed in `log t`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ZeroFreeRegion {
    pub kind: RegionKind,
    pub log_t_min: f64,
}

impl ZeroFreeRegion {
    pub fn new(kind: RegionKind) -> Self {
        let log_t_min = match kind {
            RegionKind::Classical => 2f64.ln(),
            RegionKind::FordClassical | RegionKind::Vk => 3f64.ln(),
        };
        ZeroFreeRegion { kind, log_t_min }
    }

    pub fn nu_prime(&self, log_t: f64) -> f64 {
        match self.kind {
            RegionKind::Classical => nu1_prime(log_t),
            RegionKind::FordClassical => nu2_prime(log_t),
            RegionKind::Vk => nu3_prime(log_t),
        }
    }

    pub fn nu(&self, log_t: f64) -> Result<f64> {
        match self.kind {
            RegionKind::Classical => nu1(log_t),
            RegionKind::FordClassical => nu2(log_t),
            RegionKind::Vk => nu3(log_t),
        }
    }
}

fn check_min(log_t: f64, min: f64, what: &str) -> Result<()> {
    if log_t.is_nan() || log_t < min {
        return Err(domain(format!(
            "{what} requires log t >= {min:.6}, got {log_t}"
        )));
    }
    Ok(())
}

/// Classical region `1 / (R0 log t)`, valid for `t >= 2`.
pub fn nu1(log_t: f64) -> Result<f64> {
    check_min(log_t, 2f64.ln(), "nu1")?;
    Ok(1.0 / (R0 * log_t))
}

/// Simplified Ford-type region `(1 - D log log t / log t) / (R1 log t)`,
/// valid for `t >= 3`. May be nonpositive for small `t`.
pub fn nu2(log_t: f64) -> Result<f64> {
    check_min(log_t, 3f64.ln(), "nu2")?;
    Ok((1.0 - FORD_D * log_t.ln() / log_t) / (R1 * log_t))
}

/// Vinogradov–Korobov region `1 / (c log^{2/3} t (log log t)^{1/3})`, valid
/// for `t >= 3`.
pub fn nu3(log_t: f64) -> Result<f64> {
    check_min(log_t, 3f64.ln(), "nu3")?;
    Ok(1.0 / (VK_C * log_t.powf(2.0 / 3.0) * log_t.ln().cbrt()))
}

/// Derivative of [`nu1`] with respect to `log t`.
pub fn nu1_prime(log_t: f64) -> f64 {
    -1.0 / (R0 * log_t * log_t)
}

/// Derivative of [`nu2`] with respect to `log t`.
pub fn nu2_prime(log_t: f64) -> f64 {
    let l = log_t;
    -1.0 / (R1 * l * l) - FORD_D * (1.0 - 2.0 * l.ln()) / (R1 * l * l * l)
}

/// Derivative of [`nu3`] with respect to `log t`.
pub fn nu3_prime(log_t: f64) -> f64 {
    let l = log_t;
    let ll = l.ln();
    -(2.0 + 1.0 / ll) / (3.0 * l * VK_C * l.powf(2.0 / 3.0) * ll.cbrt())
}

/// `J(t) = log t / 6 + log log t + log 0.77`.
pub fn ford_j(log_t: f64) -> Result<f64> {
    check_min(log_t, f64::MIN_POSITIVE, "ford_J")?;
    Ok(log_t / 6.0 + log_t.ln() + 0.77f64.ln())
}

/// The function `R(t)` of the unsimplified Ford-type region
/// `beta >= 1 - 1 / (R(t) log t)`, valid for `t >= 5.45e8`.
pub fn ford_r(log_t: f64) -> Result<f64> {
    check_min(log_t, ford_log_t_min(), "ford_R")?;
    let j = ford_j(log_t)?;
    Ok((j + 0.685 + 0.155 * log_t.ln()) / (log_t * (0.04962 - 0.0196 / (j + 1.15))))
}

/// Largest of the three regions at `log t`.
pub fn nu_envelope(log_t: f64) -> Result<f64> {
    Ok(nu1(log_t)?.max(nu2(log_t)?).max(nu3(log_t)?))
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Crossover {
    pub pair: (RegionKind, RegionKind),
    pub bracket: (f64, f64),
    pub log_t: f64,
}

/// Bisection for a sign change of `f` on `[a, b]`, to `tol` in the argument.
pub(crate) fn bisect<F: Fn(f64) -> Result<f64>>(f: F, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let mut fa = f(a)?;
    let fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Consistency(format!(
            "no sign change on [{a}, {b}] ({fa:e}, {fb:e})"
        )));
    }
    for _ in 0..400 {
        if b - a <= tol {
            break;
        }
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Points where the largest region switches: `nu1 = nu2` and `nu2 = nu3`.
pub fn envelope_crossovers() -> Result<Vec<Crossover>> {
    let tol = 1e-7;
    let b12 = (50.0, 200.0);
    let r12 = bisect(|l| Ok(nu1(l)? - nu2(l)?), b12.0, b12.1, tol)?;
    let b23 = (1000.0, 1e5);
    let r23 = bisect(|l| Ok(nu2(l)? - nu3(l)?), b23.0, b23.1, tol)?;
    Ok(vec![
        Crossover {
            pair: (RegionKind::Classical, RegionKind::FordClassical),
            bracket: b12,
            log_t: r12,
        },
        Crossover {
            pair: (RegionKind::FordClassical, RegionKind::Vk),
            bracket: b23,
            log_t: r23,
        },
    ])
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct LimitingConstants {
    /// Ceiling for the `sqrt(log x)` decay constant from the classical region.
    pub c1_limit: f64,
    /// Ceiling for the `r(x)` decay constant from the Vinogradov–Korobov region.
    pub c2_limit: f64,
}

/// Best decay constants attainable asymptotically from the two region shapes.
pub fn limiting_constants() -> LimitingConstants {
    let c = VK_C;
    LimitingConstants {
        c1_limit: 2.0 / R0.sqrt(),
        c2_limit: (5.0 / (3.0 * c.powi(3))).powf(0.2)
            * (1.5f64.powf(0.4) + (2.0f64 / 3.0).powf(0.6)),
    }
}
