use chemocomp_core::oracle::contraction_coefficients;
use chemocomp_core::{check_theorem1, ModelParams};
use proptest::prelude::*;

/// Parameters concentrated around the stability boundary so both verdicts occur.
fn params() -> impl Strategy<Value = ModelParams> {
    (
        (0.0..1.0f64, 0.0..1.0f64),
        (0.3..3.0f64, 0.2..2.0f64, 0.2..2.0f64),
        (0.0..0.8f64, 0.0..0.8f64, 0.5..3.0f64, 0.5..3.0f64),
    )
        .prop_map(|((a1, a2), (d3, alpha, beta), (q1, q2, mu1, mu2))| {
            ModelParams {
                a1,
                a2,
                d3,
                alpha,
                beta,
                mu1,
                mu2,
                ..ModelParams::unit()
            }
            .with_q1(q1)
            .with_q2(q2)
        })
}

proptest! {
    #[test]
    fn weakening_chemotaxis_never_breaks_a_bound(p in params(), f in 0.0..1.0f64) {
        let before = check_theorem1(&p);
        let after = check_theorem1(&ModelParams { chi1: f * p.chi1, ..p });
        for (b, a) in before.bounds().zip(after.bounds()) {
            prop_assert_eq!(b.name, a.name);
            prop_assert!(!b.pass() || a.pass(), "{} flipped to FAIL", b.name);
        }
    }

    #[test]
    fn kappa_matches_its_formula(p in params()) {
        let r = check_theorem1(&p);
        let f1 = p.d3 - 2.0 * p.alpha * p.q1();
        let f2 = p.d3 - 2.0 * p.beta * p.q2();
        match r.kappa {
            Some(k) => {
                prop_assert!(f1 > 0.0 && f2 > 0.0);
                let expected = p.a1 * p.a2 * p.d3 * p.d3 / (f1 * f2);
                prop_assert!((k - expected).abs() <= 4.0 * f64::EPSILON * expected);
                let (c1, c2) = contraction_coefficients(&p).unwrap();
                prop_assert!((c1 * c2 - k).abs() <= 1e-14 * k.max(1e-300));
            }
            None => prop_assert!(!(f1 > 0.0 && f2 > 0.0)),
        }
    }

    #[test]
    fn passing_conditions_contract(p in params()) {
        let r = check_theorem1(&p);
        if r.new_conditions_pass() {
            prop_assert!(r.kappa.unwrap() < 1.0);
        }
        let all = r.q_bounds.iter().all(|b| b.pass()) && r.product_bound.pass();
        prop_assert_eq!(r.new_conditions_pass(), all);
        prop_assert_eq!(
            r.theorem_pass(),
            r.weak_competition.iter().all(|b| b.pass()) && all
        );
    }
}
