use chemocomp_core::{coexistence_steady_state, Grid1D, ModelParams};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = ModelParams> {
    (
        (0.0..0.999f64, 0.0..0.999f64),
        (0.1..5.0f64, 0.1..5.0f64, 0.1..5.0f64),
        (0.0..3.0f64, 0.0..3.0f64, 0.1..5.0f64, 0.1..5.0f64),
    )
        .prop_map(
            |((a1, a2), (alpha, beta, gamma), (chi1, chi2, mu1, mu2))| ModelParams {
                a1,
                a2,
                alpha,
                beta,
                gamma,
                chi1,
                chi2,
                mu1,
                mu2,
                ..ModelParams::unit()
            },
        )
}

proptest! {
    #[test]
    fn kinetics_vanish_at_coexistence(p in params()) {
        let ss = coexistence_steady_state(&p).unwrap();
        // cancellation in 1 - a1 a2 amplifies roundoff
        let tol = 4.0 * f64::EPSILON / (1.0 - p.a1 * p.a2);
        prop_assert!((1.0 - ss.u_star - p.a1 * ss.v_star).abs() <= tol);
        prop_assert!((1.0 - p.a2 * ss.u_star - ss.v_star).abs() <= tol);
        let lhs = p.gamma * ss.w_star;
        let rhs = p.alpha * ss.u_star + p.beta * ss.v_star;
        prop_assert!((lhs - rhs).abs() <= 4.0 * f64::EPSILON * rhs);
        prop_assert!(ss.u_star >= 0.0 && ss.v_star >= 0.0 && ss.w_star >= 0.0);
    }

    #[test]
    fn relative_strengths_are_scale_invariant(p in params(), c in 0.01..100.0f64) {
        let scaled = ModelParams { chi1: c * p.chi1, mu1: c * p.mu1, chi2: c * p.chi2, mu2: c * p.mu2, ..p };
        prop_assert!((scaled.q1() - p.q1()).abs() <= 4.0 * f64::EPSILON * p.q1().max(1e-300));
        prop_assert!((scaled.q2() - p.q2()).abs() <= 4.0 * f64::EPSILON * p.q2().max(1e-300));
        prop_assert!(p.q1().is_finite() && p.q1() >= 0.0);
    }

    #[test]
    fn grid_nodes_span_the_interval(length in 0.01..100.0f64, n in 2usize..5000) {
        let g = Grid1D::new(length, n).unwrap();
        let nodes: Vec<f64> = g.nodes().collect();
        prop_assert_eq!(nodes.len(), n + 1);
        prop_assert_eq!(nodes[0], 0.0);
        prop_assert_eq!(nodes[n], length);
        prop_assert!(g.dx() > 0.0);
        prop_assert!(nodes.windows(2).all(|w| w[1] > w[0]));
    }
}

#[test]
fn strong_competition_has_no_coexistence_state() {
    let p = ModelParams {
        a1: 1.0,
        a2: 1.0,
        ..ModelParams::unit()
    };
    assert!(coexistence_steady_state(&p).is_err());
}
