mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use conicinv_core::conjugacy::{decide_equivalent, ConjugacyError, FailedCondition, Verdict, Witnesses};
use conicinv_core::family::{corollary_demo, make_sab};
use conicinv_core::invariants::{classify, fixed_curve_cb, genus, real_components, real_locus, ClassLabel, CurveKind};
use conicinv_core::models::{scale, ConicBundleModel};
use conicinv_core::{rat, Rat, RatPoly};

use common::{random_full_circle, random_normal_form, random_valid_model, with_known_real_roots};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn positive_rat() -> impl Strategy<Value = Rat> {
    (1i64..=30, 1i64..=7).prop_map(|(n, d)| rat(n, d))
}

fn witnesses(m1: &ConicBundleModel, m2: &ConicBundleModel) -> Option<Witnesses> {
    let d = decide_equivalent(m1, m2).unwrap();
    assert!(!d.contradiction, "contradiction for {m1} vs {m2}");
    (d.verdict == Verdict::Equivalent).then(|| d.witnesses.expect("equivalent results carry witnesses"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn equivalence_is_reflexive(seed in any::<u64>()) {
        let m = random_normal_form(&mut rng(seed));
        let w = witnesses(&m, &m);
        prop_assert_eq!(w, Some(Witnesses { lambda: rat(1, 1), mu: rat(1, 1) }));
    }

    #[test]
    fn scaling_gives_square_and_linear_witnesses(seed in any::<u64>(), c in positive_rat()) {
        let m = random_normal_form(&mut rng(seed));
        let s = scale(&m, &c).unwrap();
        let w = witnesses(&m, &s);
        prop_assert_eq!(w, Some(Witnesses { lambda: &c * &c, mu: c }));
    }

    #[test]
    fn negative_scaling_leaves_normal_form(seed in any::<u64>(), c in positive_rat()) {
        let m = random_normal_form(&mut rng(seed));
        let s = scale(&m, &-c).unwrap();
        match decide_equivalent(&m, &s) {
            Err(ConjugacyError::NotNormalForm { which, .. }) => prop_assert_eq!(which, 2),
            Ok(d) => prop_assert!(false, "expected an input error, got {}", d),
        }
    }

    #[test]
    fn equivalence_is_symmetric(s1 in any::<u64>(), s2 in any::<u64>(), c in positive_rat(), same in any::<bool>()) {
        let m1 = random_normal_form(&mut rng(s1));
        let m2 = if same { scale(&m1, &c).unwrap() } else { random_normal_form(&mut rng(s2)) };
        let d12 = decide_equivalent(&m1, &m2).unwrap();
        let d21 = decide_equivalent(&m2, &m1).unwrap();
        prop_assert!(!d12.contradiction && !d21.contradiction);
        prop_assert_eq!(d12.verdict, d21.verdict);
        prop_assert_eq!(d12.failed_condition, d21.failed_condition);
        if let (Some(w12), Some(w21)) = (d12.witnesses, d21.witnesses) {
            prop_assert_eq!(w12.lambda * w21.lambda, rat(1, 1));
            prop_assert_eq!(w12.mu * w21.mu, rat(1, 1));
        }
    }

    #[test]
    fn equivalence_is_transitive(seed in any::<u64>(), c1 in positive_rat(), c2 in positive_rat()) {
        let m1 = random_normal_form(&mut rng(seed));
        let m2 = scale(&m1, &c1).unwrap();
        let m3 = scale(&m2, &c2).unwrap();
        let w12 = witnesses(&m1, &m2).unwrap();
        let w23 = witnesses(&m2, &m3).unwrap();
        let w13 = witnesses(&m1, &m3).unwrap();
        prop_assert_eq!(w13.lambda, w12.lambda * w23.lambda);
        prop_assert_eq!(w13.mu, w12.mu * w23.mu);
    }

    #[test]
    fn no_contradiction_on_random_pairs(s1 in any::<u64>(), s2 in any::<u64>()) {
        let m1 = random_normal_form(&mut rng(s1));
        let m2 = random_normal_form(&mut rng(s2));
        let d = decide_equivalent(&m1, &m2).unwrap();
        prop_assert!(!d.contradiction);
        match d.verdict {
            Verdict::Equivalent => prop_assert!(d.witnesses.is_some() && d.failed_condition.is_none()),
            Verdict::NotEquivalent => prop_assert!(d.failed_condition.is_some()),
            Verdict::Undecided => prop_assert!(false, "normal-form pairs are always decided"),
        }
    }

    #[test]
    fn genus_of_even_branch(seed in any::<u64>(), d in 2usize..=5) {
        let mut r = rng(seed);
        let real = 2 * r.gen_range(0..=d);
        let p = with_known_real_roots(&mut r, real, d - real / 2);
        prop_assert_eq!(p.degree(), Some(2 * d));
        prop_assert_eq!(genus(&p).unwrap() as usize, d - 1);
    }

    #[test]
    fn components_are_half_the_real_roots(seed in any::<u64>(), half in 1usize..=4, m in 0usize..=2) {
        let p = with_known_real_roots(&mut rng(seed), 2 * half, m);
        prop_assert_eq!(real_components(&p).unwrap(), half);
    }

    #[test]
    fn rootless_branch_components(seed in any::<u64>(), m in 1usize..=4) {
        let p = with_known_real_roots(&mut rng(seed), 0, m);
        let positive = *p.leading_coeff().unwrap() > rat(0, 1);
        let expect = match (positive, m % 2) {
            (false, _) => 0,
            (true, 0) => 2,
            (true, _) => 1,
        };
        prop_assert_eq!(real_components(&p).unwrap(), expect);
    }

    #[test]
    fn classification_dichotomy(seed in any::<u64>()) {
        let m = random_valid_model(&mut rng(seed));
        let full = real_locus(&m).is_full();
        match classify(&m) {
            Ok(ClassLabel::DeJonquieres { .. }) => prop_assert!(full),
            Ok(ClassLabel::Iskovskikh { d, .. }) => {
                prop_assert!(!full);
                prop_assert_eq!(Some(d), m.h().degree());
            }
            Err(_) => prop_assert!(!full),
        }
    }

    #[test]
    fn normal_forms_classify_as_twisted(seed in any::<u64>()) {
        let m = random_normal_form(&mut rng(seed));
        let curve = fixed_curve_cb(&m);
        let genus = (curve.kind != CurveKind::Rational).then_some(curve.genus);
        prop_assert_eq!(classify(&m).unwrap(), ClassLabel::Iskovskikh { d: m.h().degree().unwrap(), genus });
    }

    #[test]
    fn full_circle_models_are_dejonquieres(seed in any::<u64>()) {
        let m = random_full_circle(&mut rng(seed));
        prop_assert!(real_locus(&m).is_full());
        let is_dj = matches!(classify(&m), Ok(ClassLabel::DeJonquieres { .. }));
        prop_assert!(is_dj);
    }

    #[test]
    fn family_fixed_curve_is_minus_four_f(seed in any::<u64>(), half in 2usize..=3, extra in 0usize..=1) {
        let mut r = rng(seed);
        let f = with_known_real_roots(&mut r, 2 * half, extra + 3 - half);
        let deg = f.degree().unwrap();
        prop_assume!(deg >= 6);
        let (a, b) = loop {
            let a = rat(r.gen_range(-60..=60), r.gen_range(1..=5));
            let b = rat(r.gen_range(-60..=60), r.gen_range(1..=5));
            if a != b && f.sign_at(&a) != conicinv_core::Sign::Zero && f.sign_at(&b) != conicinv_core::Sign::Zero {
                break (a, b);
            }
        };
        let m = make_sab(&f, &a, &b).unwrap();
        let curve = fixed_curve_cb(&m);
        prop_assert_eq!(&curve.branch, &(-f.clone()).primitive());
        prop_assert_eq!(curve.genus as usize, deg / 2 - 1);
        prop_assert_eq!(curve.real_components, half);
    }
}

#[test]
fn family_pairs_share_one_curve() {
    let f: RatPoly = "(t^2-1)*(t^2-4)*(t^2-9)".parse().unwrap();
    let pairs = vec![
        (rat(5, 1), rat(6, 1)),
        (rat(5, 1), rat(7, 1)),
        (rat(6, 1), rat(7, 1)),
        (rat(11, 2), rat(8, 1)),
    ];
    let report = corollary_demo(&f, &pairs).unwrap();
    assert_eq!(report.summary.curves_proportional, pairs.len());
    assert_eq!(report.summary.equivalent, 0);
    assert!(report
        .comparisons
        .iter()
        .all(|c| c.decision.failed_condition == Some(FailedCondition::SignCondition)));
    assert!(report.all_distinct());
}
