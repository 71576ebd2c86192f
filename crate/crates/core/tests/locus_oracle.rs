mod common;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use conicinv_core::invariants::{fiber_has_real_point, real_locus};
use conicinv_core::models::mk_conic_bundle;
use conicinv_core::{rat, Rat, RatPoly};

use common::{oracle_fiber_real, random_valid_model, ENDPOINT_GUARD};

#[test]
fn exact_locus_agrees_with_inertia_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x10c05);
    for _ in 0..25 {
        let m = random_valid_model(&mut rng);
        let locus = real_locus(&m);
        let ends: Vec<f64> = locus.boundary().iter().map(|x| x.to_f64()).collect();
        for _ in 0..400 {
            let t: f64 = rng.gen_range(-20.0..20.0);
            if ends.iter().any(|e| (e - t).abs() < ENDPOINT_GUARD) {
                continue;
            }
            let exact = locus.contains(&Rat::from_float(t).unwrap());
            assert_eq!(exact, oracle_fiber_real(&m, t), "model {m}, t = {t}, locus {locus}");
        }
    }
}

#[test]
fn fiber_rule_agrees_with_oracle_at_rationals() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let m = random_valid_model(&mut rng);
        for _ in 0..50 {
            let t = rat(rng.gen_range(-400..=400), rng.gen_range(1..=20));
            if m.delta().sign_at(&t) == conicinv_core::Sign::Zero {
                assert!(fiber_has_real_point(&m, &t));
                continue;
            }
            let tf = t.to_f64().unwrap();
            if m.delta().coeffs().is_empty() || common::eval_f64(m.delta(), tf).abs() < 1e-6 {
                continue;
            }
            assert_eq!(
                fiber_has_real_point(&m, &t),
                oracle_fiber_real(&m, tf),
                "model {m}, t = {t}"
            );
        }
    }
}

#[test]
fn locus_structure_on_known_models() {
    let p = |s: &str| s.parse::<RatPoly>().unwrap();
    // x² + y² = −(t²−1)(t²−4) z²: real fibers where (t²−1)(t²−4) ≤ 0
    let m = mk_conic_bundle(p("1"), p("0"), p("1"), p("-(t^2-1)*(t^2-4)")).unwrap();
    let l = real_locus(&m);
    assert_eq!(l.arcs().len(), 2);
    assert!(!l.contains_infinity());
    for (t, inside) in [
        (rat(3, 2), true),
        (rat(-3, 2), true),
        (rat(0, 1), false),
        (rat(5, 2), false),
    ] {
        assert_eq!(l.contains(&t), inside, "t = {t}");
    }
    // B² − 4AC vanishes to first order at 0 and H changes sign there: isolated point
    let m = mk_conic_bundle(p("1"), p("0"), p("t^2+1"), p("-(t-1)*(t+1)")).unwrap();
    assert!(real_locus(&m).isolated_points().is_empty());
    let m = mk_conic_bundle(p("1"), p("t"), p("1"), p("-(t^2-9)")).unwrap();
    let l = real_locus(&m);
    // D = t² − 4 > 0 for |t| > 2 adds the outer arcs, which close up through infinity
    assert!(l.contains_infinity());
    assert!(l.contains(&rat(0, 1)));
    assert!(l.contains(&rat(100, 1)));
}
