//! Exact prime-counting functions from a sieve, the logarithmic integral,
//! and finite checks of envelope claims over small ranges of `x`.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::quad;

/// Default sieve limit, comfortably above every direct-computation range used here.
pub const DEFAULT_SIEVE_LIMIT: u64 = 10_000_000;

/// Largest sieve we are willing to allocate (one byte per odd number).
pub const MAX_SIEVE_LIMIT: u64 = 4_000_000_000;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_4;

/// Ascending list of all primes up to `limit`, with prefix sums of `log p`.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    theta_prefix: Vec<f64>,
}

/// Which step function is compared with which main term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// `psi(x)` against `x`.
    Psi,
    /// `theta(x)` against `x`.
    Theta,
    /// `pi(x)` against `li(x)`.
    PiLi,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointwiseReport {
    pub quantity: Quantity,
    pub lo: f64,
    pub hi: f64,
    pub checks: usize,
    pub passed: bool,
    /// Smallest `(bound - error) / bound` seen.
    pub worst_margin: f64,
    pub worst_x: f64,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct IntegralEstimate {
    pub value: f64,
    /// Value at half the per-segment resolution.
    pub coarse: f64,
    pub refinement_delta: f64,
}

/// Sieve of Eratosthenes over the odd numbers.
pub fn build_sieve(limit: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(domain(format!("sieve limit {limit} < 2")));
    }
    if limit > MAX_SIEVE_LIMIT {
        return Err(Error::Resource(format!(
            "sieve limit {limit} exceeds budget {MAX_SIEVE_LIMIT}"
        )));
    }
    // index i stands for 2i + 1
    let n = ((limit - 1) / 2 + 1) as usize;
    let mut composite = vec![false; n];
    composite[0] = true;
    let mut i = 1usize;
    while (2 * i + 1) * (2 * i + 1) <= limit as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = (p * p - 1) / 2;
            while j < n {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = vec![2u64];
    primes.extend(
        composite
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(i, _)| 2 * i as u64 + 1),
    );
    let mut theta_prefix = Vec::with_capacity(primes.len());
    let mut acc = 0.0;
    for &p in &primes {
        acc += (p as f64).ln();
        theta_prefix.push(acc);
    }
    Ok(PrimeTable {
        limit,
        primes,
        theta_prefix,
    })
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    fn floor_checked(&self, x: f64) -> Result<u64> {
        if x.is_nan() || x < 0.0 {
            return Err(domain(format!("argument {x} must be nonnegative")));
        }
        if x > self.limit as f64 {
            return Err(Error::Range(format!(
                "{x} is beyond the sieve limit {}",
                self.limit
            )));
        }
        Ok(x.floor() as u64)
    }

    /// Number of primes `<= n`.
    fn count_upto(&self, n: u64) -> usize {
        self.primes.partition_point(|&p| p <= n)
    }

    pub fn pi_count(&self, x: f64) -> Result<u64> {
        Ok(self.count_upto(self.floor_checked(x)?) as u64)
    }

    pub fn theta(&self, x: f64) -> Result<f64> {
        let k = self.count_upto(self.floor_checked(x)?);
        Ok(if k == 0 { 0.0 } else { self.theta_prefix[k - 1] })
    }

    /// Sum of `log p` over prime powers `p^m <= x`.
    pub fn psi(&self, x: f64) -> Result<f64> {
        let n = self.floor_checked(x)?;
        let mut acc = self.theta(x)?;
        for &p in &self.primes {
            if p.saturating_mul(p) > n {
                break;
            }
            let lp = (p as f64).ln();
            let mut q = p * p;
            loop {
                acc += lp;
                match q.checked_mul(p) {
                    Some(next) if next <= n => q = next,
                    _ => break,
                }
            }
        }
        Ok(acc)
    }

    /// Points in `(lo, hi]` where the step function jumps.
    fn jumps(&self, quantity: Quantity, lo: f64, hi: f64) -> Vec<f64> {
        let in_range = |v: u64| (v as f64) > lo && (v as f64) <= hi;
        let mut out: Vec<u64> = self.primes.iter().copied().filter(|&p| in_range(p)).collect();
        if quantity == Quantity::Psi {
            for &p in &self.primes {
                if (p * p) as f64 > hi {
                    break;
                }
                let mut q = p * p;
                while (q as f64) <= hi {
                    if in_range(q) {
                        out.push(q);
                    }
                    q *= p;
                }
            }
            out.sort_unstable();
        }
        out.into_iter().map(|v| v as f64).collect()
    }

    fn step_value(&self, quantity: Quantity, x: f64) -> Result<f64> {
        match quantity {
            Quantity::Psi => self.psi(x),
            Quantity::Theta => self.theta(x),
            Quantity::PiLi => self.pi_count(x).map(|c| c as f64),
        }
    }

    /// Checks `|f(x) - main(x)| <= bound(x)` for every `x` in `[lo, hi]`.
    ///
    /// Between consecutive jumps `f` is constant and the main term increases,
    /// so the error on `[a, b)` is at most the larger of its values at `a` and
    /// at the left limit in `b`; that is compared against the smaller of
    /// `bound(a)` and `bound(b)`.
    pub fn verify_pointwise<B: Fn(f64) -> f64>(
        &self,
        bound: B,
        quantity: Quantity,
        lo: f64,
        hi: f64,
    ) -> Result<PointwiseReport> {
        if !(lo >= 2.0 && hi >= lo) {
            return Err(domain(format!("invalid range [{lo}, {hi}]")));
        }
        if hi > self.limit as f64 {
            return Err(Error::Range(format!(
                "range end {hi} exceeds sieve limit {}",
                self.limit
            )));
        }
        let mut points = vec![lo];
        points.extend(self.jumps(quantity, lo, hi));
        if *points.last().unwrap() < hi {
            points.push(hi);
        }
        let mains = match quantity {
            Quantity::PiLi => li_at_points(&points)?,
            _ => points.clone(),
        };

        let mut report = PointwiseReport {
            quantity,
            lo,
            hi,
            checks: 0,
            passed: true,
            worst_margin: f64::INFINITY,
            worst_x: lo,
        };
        let record = |x: f64, err: f64, b: f64, report: &mut PointwiseReport| {
            report.checks += 1;
            let margin = (b - err) / b;
            if margin < report.worst_margin {
                report.worst_margin = margin;
                report.worst_x = x;
            }
            if !(err <= b) {
                report.passed = false;
            }
        };
        for w in 0..points.len() - 1 {
            let (a, b) = (points[w], points[w + 1]);
            let f = self.step_value(quantity, a)?;
            let bmin = bound(a).min(bound(b));
            record(a, (f - mains[w]).abs(), bmin, &mut report);
            record(b, (f - mains[w + 1]).abs(), bmin, &mut report);
        }
        let last = points.len() - 1;
        let f_hi = self.step_value(quantity, hi)?;
        record(hi, (f_hi - mains[last]).abs(), bound(hi), &mut report);
        Ok(report)
    }

    /// `∫ |theta(t) - t| / (t log^2 t) dt` over `[lo, hi]`, integrated
    /// segment by segment between primes (where `theta` is constant).
    pub fn theta_deviation_integral(&self, lo: f64, hi: f64, panels: usize) -> Result<f64> {
        if !(lo >= 2.0 && hi > lo) {
            return Err(domain(format!("invalid range [{lo}, {hi}]")));
        }
        let mut cuts = vec![lo];
        cuts.extend(self.jumps(Quantity::Theta, lo, hi));
        if *cuts.last().unwrap() < hi {
            cuts.push(hi);
        }
        let mut total = 0.0;
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let c = self.theta(a)?;
            let g = |t: f64| (c - t).abs() / (t * t.ln().powi(2));
            if c > a && c < b {
                total += quad::simpson(g, a, c, panels) + quad::simpson(g, c, b, panels);
            } else {
                total += quad::simpson(g, a, b, panels);
            }
        }
        Ok(total)
    }

    /// The integral over `[2, 599]` that enters the `pi(x)` derivation.
    pub fn integral_i1(&self) -> Result<IntegralEstimate> {
        let coarse = self.theta_deviation_integral(2.0, 599.0, 32)?;
        let value = self.theta_deviation_integral(2.0, 599.0, 64)?;
        Ok(IntegralEstimate {
            value,
            coarse,
            refinement_delta: (value - coarse).abs(),
        })
    }
}

/// Principal-value logarithmic integral `li(x)` for `x > 1`.
///
/// Uses `li(x) = Ei(log x) = gamma + log log x + ∫_0^{log x} (e^u - 1)/u du`,
/// whose integrand is smooth, so the singularity at `t = 1` never appears.
pub fn li(x: f64) -> Result<f64> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(domain(format!("li is evaluated here only for x > 1, got {x}")));
    }
    let y = x.ln();
    let kernel = |u: f64| if u == 0.0 { 1.0 } else { u.exp_m1() / u };
    Ok(EULER_GAMMA + y.ln() + quad::adaptive(kernel, 0.0, y, 1e-15))
}

fn li_at_points(points: &[f64]) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(points.len());
    let mut acc = li(points[0])?;
    out.push(acc);
    for w in points.windows(2) {
        acc += quad::adaptive(|t: f64| 1.0 / t.ln(), w[0], w[1], 1e-14);
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_primes(n: u64) -> Vec<u64> {
        (2..=n)
            .filter(|&k| (2..).take_while(|d| d * d <= k).all(|d| k % d != 0))
            .collect()
    }

    #[test]
    fn sieve_small() {
        let t = build_sieve(10).unwrap();
        assert_eq!(t.primes(), &[2, 3, 5, 7]);
        assert_eq!(build_sieve(2).unwrap().primes(), &[2]);
    }

    #[test]
    fn sieve_matches_trial_division() {
        let t = build_sieve(3000).unwrap();
        assert_eq!(t.primes(), trial_division_primes(3000).as_slice());
        assert_eq!(t.pi_count(599.0).unwrap(), 109);
        assert_eq!(t.pi_count(2657.0).unwrap(), 384);
        assert_eq!(t.pi_count(2.0).unwrap(), 1);
    }

    #[test]
    fn sieve_limits() {
        assert!(matches!(build_sieve(1), Err(Error::Domain(_))));
        assert!(matches!(build_sieve(MAX_SIEVE_LIMIT + 1), Err(Error::Resource(_))));
        let t = build_sieve(100).unwrap();
        assert!(matches!(t.theta(101.0), Err(Error::Range(_))));
    }

    #[test]
    fn chebyshev_values() {
        let t = build_sieve(1000).unwrap();
        let th10: f64 = [2.0f64, 3.0, 5.0, 7.0].iter().map(|p| p.ln()).sum();
        assert!((t.theta(10.0).unwrap() - th10).abs() < 1e-14);
        assert!((t.theta(10.0).unwrap() - 5.347_107_530_717_468).abs() < 1e-12);
        // brute force over all p^m <= 100
        let mut brute = 0.0;
        for p in trial_division_primes(100) {
            let mut q = p;
            while q <= 100 {
                brute += (p as f64).ln();
                q *= p;
            }
        }
        let psi100 = t.psi(100.0).unwrap();
        assert!((psi100 - brute).abs() < 1e-12);
        assert!((psi100 - 94.045_3).abs() < 1e-4);
    }

    #[test]
    fn li_reference_values() {
        // Ramanujan-free oracle: the power series li(x) = gamma + ln ln x + sum y^n/(n n!)
        let series = |x: f64| {
            let y = x.ln();
            let mut term = 1.0;
            let mut sum = 0.0;
            for n in 1..200 {
                term *= y / n as f64;
                sum += term / n as f64;
            }
            EULER_GAMMA + y.ln() + sum
        };
        for x in [2.0, 10.0, 1000.0, 1e6] {
            let v = li(x).unwrap();
            assert!((v - series(x)).abs() / v < 1e-12, "x={x}");
        }
        assert!((li(2.0).unwrap() - 1.045_163_780_117_49).abs() < 1e-10);
        assert!((li(1e6).unwrap() - 78_627.549_159_462_2).abs() < 1e-6);
        assert!(li(1.0).is_err());
    }

    #[test]
    fn li_additivity() {
        for x in [3.0, 50.0, 2657.0] {
            let direct = quad::adaptive(|t: f64| 1.0 / t.ln(), 2.0, x, 1e-14);
            assert!((li(x).unwrap() - li(2.0).unwrap() - direct).abs() < 1e-9);
        }
    }

    #[test]
    fn pointwise_detects_violation() {
        let t = build_sieve(100).unwrap();
        let rep = t.verify_pointwise(|_| 0.5, Quantity::Theta, 2.0, 50.0).unwrap();
        assert!(!rep.passed);
        let rep = t.verify_pointwise(|x| 2.0 * x, Quantity::Theta, 2.0, 50.0).unwrap();
        assert!(rep.passed);
        assert!(rep.checks > 2 * 15);
    }

    #[test]
    fn i1_is_below_published_ceiling() {
        let t = build_sieve(1000).unwrap();
        let est = t.integral_i1().unwrap();
        assert!(est.value > 0.0 && est.value <= 5.43);
        assert!(est.refinement_delta < 1e-3);
    }
}
