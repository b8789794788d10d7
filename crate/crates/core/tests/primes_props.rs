use std::sync::OnceLock;

use pnt_core::primes::{build_sieve, PrimeTable};
use proptest::prelude::*;

const LIMIT: u64 = 1_000_000;

fn table() -> &'static PrimeTable {
    static T: OnceLock<PrimeTable> = OnceLock::new();
    T.get_or_init(|| build_sieve(LIMIT).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn psi_is_sum_of_theta_at_roots(n in 2u64..LIMIT) {
        // half-integers are never prime powers, so no root lands on a prime
        let x = n as f64 + 0.5;
        if x > LIMIT as f64 { return Ok(()); }
        let t = table();
        let mut sum = 0.0;
        let mut k = 1;
        while x.powf(1.0 / k as f64) >= 2.0 {
            sum += t.theta(x.powf(1.0 / k as f64)).unwrap();
            k += 1;
        }
        let psi = t.psi(x).unwrap();
        prop_assert!((psi - sum).abs() <= 1e-9 * psi.max(1.0), "x = {x}: {psi} vs {sum}");
    }

    #[test]
    fn theta_below_psi_and_monotone(a in 2.0f64..1e6, b in 2.0f64..1e6) {
        let t = table();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(t.theta(lo).unwrap() <= t.theta(hi).unwrap());
        prop_assert!(t.pi_count(lo).unwrap() <= t.pi_count(hi).unwrap());
        prop_assert!(t.theta(hi).unwrap() <= t.psi(hi).unwrap());
    }

    #[test]
    fn theta_jumps_by_log_p(i in 0usize..78_000) {
        let t = table();
        let p = t.primes()[i] as f64;
        let jump = t.theta(p).unwrap() - t.theta(p - 0.5).unwrap();
        prop_assert!((jump - p.ln()).abs() < 1e-9 * t.theta(p).unwrap().max(1.0));
    }
}

#[test]
fn known_counts() {
    let t = table();
    assert_eq!(t.pi_count(1e6).unwrap(), 78_498);
    assert_eq!(t.pi_count(100.0).unwrap(), 25);
}
