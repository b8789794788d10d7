use std::sync::OnceLock;

use pnt_core::engine::{
    certify_monotone, envelope_log, envelope_maximizer, epsilon0, table1_bound, vk_bound, ArgKind,
    BoundConstants, EnvelopeTerm, Regime, MEDIUM_HANDOFF_LOG_X, TABLE1, VK_LOG_X0, VK_SIGMA,
};
use pnt_core::regimes::{verify_unimodal, TABLE2};
use pnt_core::zdensity::DensityTable;
use pnt_core::zfr::RegionKind;
use pnt_core::ExtReal;
use proptest::prelude::*;

fn rows() -> &'static [BoundConstants] {
    static R: OnceLock<Vec<BoundConstants>> = OnceLock::new();
    R.get_or_init(|| {
        let t = DensityTable::embedded();
        let mut v: Vec<_> = TABLE1.iter().map(|r| table1_bound(&t, r).unwrap()).collect();
        v.push(vk_bound(&t, VK_LOG_X0, VK_SIGMA).unwrap());
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// The emitted envelope dominates the recomputed `s1 + s2 + s3` beyond `x0`.
    #[test]
    fn envelope_dominates_pipeline(i in 0usize..16, t in 0.0f64..1.0) {
        let b = &rows()[i];
        let l = b.log_x0 * 10f64.powf(3.0 * t);
        let sum = b.pipeline.sum(l).unwrap();
        prop_assert!(sum.ln() <= b.envelope_log(l) + 1e-12 * l, "row {i} at log x = {l}");
    }

    /// A closed-form certificate really means the term is nonincreasing.
    #[test]
    fn closed_form_certificate_is_sound(
        a in -4.0f64..4.0,
        b in -0.5f64..2.0,
        q in 0.0f64..0.01,
        c in -1.0f64..1.0,
        l0 in 20.0f64..5000.0,
        vk in any::<bool>(),
    ) {
        let kind = if vk { ArgKind::VkR } else { ArgKind::SqrtLog };
        let term = EnvelopeTerm { c, q, ..EnvelopeTerm::new(ExtReal::ONE, a, b, kind) };
        if term.decreasing_from_closed_form(l0) {
            let mut prev = term.value(l0);
            for k in 1..=400 {
                let l = l0 * 1000f64.powf(k as f64 / 400.0);
                let v = term.value(l);
                prop_assert!(v.ln() <= prev.ln() + 1e-9 * prev.ln().abs().max(1.0));
                prev = v;
            }
        }
    }

    /// `eps0` is the envelope at the reported point, and no nearby point is larger.
    #[test]
    fn eps0_is_the_supremum(a in 0.01f64..50.0, b in 0.5f64..2.0, c in 0.1f64..1.2, from in 0.5f64..200.0, vk in any::<bool>()) {
        let kind = if vk { ArgKind::VkR } else { ArgKind::SqrtLog };
        let e = epsilon0(kind, a, b, c, from).unwrap();
        let at = envelope_log(kind, a, b, c, e.log_x);
        prop_assert!((e.value.ln() - at).abs() <= 1e-9 * at.abs().max(1.0));
        for f in [0.99, 1.01] {
            let l = e.log_x * f;
            if l >= from {
                prop_assert!(envelope_log(kind, a, b, c, l) <= at + 1e-12 * at.abs().max(1.0));
            }
        }
        prop_assert!(e.log_x >= from);
    }
}

#[test]
fn every_row_is_certified() {
    for b in rows() {
        assert!(b.monotone_certified(), "{:?} at {}", b.regime, b.x_label);
        assert!(certify_monotone(&b.pipeline.terms(), b.log_x0).certified);
        if b.regime == Regime::Medium {
            assert!(b.c < 2.0 / pnt_core::zfr::R0.sqrt());
            assert!(b.log_x0 >= MEDIUM_HANDOFF_LOG_X);
        }
    }
}

#[test]
fn pipelines_are_deterministic() {
    let t = DensityTable::embedded();
    for r in [&TABLE1[0], &TABLE1[8], &TABLE1[12]] {
        let a = table1_bound(&t, r).unwrap();
        let b = table1_bound(&t, r).unwrap();
        assert_eq!(a.a_unrounded.to_bits(), b.a_unrounded.to_bits());
        assert_eq!(a.c_unrounded.to_bits(), b.c_unrounded.to_bits());
        assert_eq!(a.eps0, b.eps0);
    }
}

#[test]
fn vk_maximizer_solves_first_order_condition() {
    let (b, c) = (1.801, 0.1852);
    let m = envelope_maximizer(ArgKind::VkR, b, c).unwrap();
    let s = 0.6 - 0.2 / m.ln();
    assert!((c * s * ArgKind::VkR.w(m) - b).abs() < 1e-9);
}

#[test]
fn unimodality_both_regions() {
    for (l, ..) in TABLE2 {
        let rep = verify_unimodal(RegionKind::FordClassical, l).unwrap();
        assert!(rep.passed, "{rep:?}");
    }
    for l in [VK_LOG_X0, 1e11, 1e13] {
        let rep = verify_unimodal(RegionKind::Vk, l).unwrap();
        assert!(rep.passed, "{rep:?}");
    }
}
