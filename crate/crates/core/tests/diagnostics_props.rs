use chemocomp_core::{
    coexistence_steady_state, estimate_envelope, verdict, ExtremaSeries, Grid1D, ModelParams,
    State, Tolerances,
};
use proptest::collection::vec;
use proptest::prelude::*;

fn series() -> impl Strategy<Value = ExtremaSeries> {
    vec(
        (
            vec(0.0..3.0f64, 5),
            vec(0.0..3.0f64, 5),
            vec(0.0..3.0f64, 5),
        ),
        1..40,
    )
    .prop_map(|states| {
        let g = Grid1D::new(1.0, 4).unwrap();
        let mut series = ExtremaSeries::new();
        for (k, (u, v, w)) in states.into_iter().enumerate() {
            let mut s = State::new(&g, u, v).unwrap();
            s.w = w;
            s.t = 0.5 * k as f64;
            series.record(&s).unwrap();
        }
        series
    })
}

proptest! {
    #[test]
    fn recorded_extrema_are_ordered(s in series()) {
        prop_assert!(s.times.windows(2).all(|t| t[1] > t[0]));
        for i in 0..s.len() {
            prop_assert!(s.min_u[i] <= s.max_u[i]);
            prop_assert!(s.min_v[i] <= s.max_v[i]);
            prop_assert!(s.min_w[i] <= s.max_w[i]);
        }
    }

    #[test]
    fn envelope_grows_with_the_window(s in series(), a in 0.0..1.0f64, b in 0.0..1.0f64) {
        let (first, last) = s.span().unwrap();
        let inner_start = first + a.min(b) * (last - first);
        let inner_end = first + a.max(b) * (last - first);
        if let Ok(inner) = estimate_envelope(&s, inner_start, inner_end) {
            let outer = estimate_envelope(&s, first, last).unwrap();
            prop_assert!(outer.upper_u >= inner.upper_u && outer.upper_v >= inner.upper_v);
            prop_assert!(outer.lower_u <= inner.lower_u && outer.lower_v <= inner.lower_v);
            prop_assert!(inner.is_ordered());
        }
    }

    #[test]
    fn converged_verdict_meets_its_tolerances(s in series(), homog in 0.0..3.0f64, dist in 0.0..3.0f64) {
        let p = ModelParams { a1: 0.6, a2: 0.4, ..ModelParams::unit() };
        let tol = Tolerances { homog, dist, ..Tolerances::default() };
        let v = verdict(&s, &p, &tol).unwrap();
        if v.converged {
            prop_assert!(v.homogeneity_gap <= homog);
            prop_assert!(v.distances.unwrap().iter().all(|&d| d <= dist));
        }
    }
}

#[test]
fn verdict_on_exact_equilibrium_converges_with_small_residuals() {
    let p = ModelParams {
        a1: 0.6,
        a2: 0.4,
        ..ModelParams::unit()
    }
    .with_q1(0.2)
    .with_q2(0.1);
    let ss = coexistence_steady_state(&p).unwrap();
    let g = Grid1D::new(3.0, 10).unwrap();
    let mut series = ExtremaSeries::new();
    for k in 0..10 {
        let mut s = State::constant(&g, ss.u_star, ss.v_star, ss.w_star);
        s.t = k as f64;
        series.record(&s).unwrap();
    }
    let v = verdict(&series, &p, &Tolerances::default()).unwrap();
    assert!(v.converged, "{}", v.reason);
    assert_eq!(v.residuals_hold, Some(true));
    assert!(v.residuals.unwrap().max_abs() <= 1e-12);
}
