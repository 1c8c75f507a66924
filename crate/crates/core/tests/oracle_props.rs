use chemocomp_core::oracle::{
    envelope_fixed_point, envelope_upper_bounds, logistic_limit, logistic_solution,
};
use chemocomp_core::{
    check_theorem1, coexistence_steady_state, Envelope, LogisticOde, ModelParams,
};
use proptest::prelude::*;

fn ode() -> impl Strategy<Value = LogisticOde> {
    (0.1..2.0f64, -1.0..2.0f64, 0.2..2.0f64, 0.01..3.0f64)
        .prop_map(|(mu, a, b, y0)| LogisticOde::new(mu, a, b, y0))
}

/// Classical RK4 on a fixed step, written independently of the closed form.
fn rk4(ode: &LogisticOde, t: f64, h: f64) -> f64 {
    let n = (t / h).ceil().max(1.0) as usize;
    let h = t / n as f64;
    let f = |y: f64| ode.mu * y * (ode.a - ode.b * y);
    let mut y = ode.y0;
    for _ in 0..n {
        let k1 = f(y);
        let k2 = f(y + 0.5 * h * k1);
        let k3 = f(y + 0.5 * h * k2);
        let k4 = f(y + h * k3);
        y += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
    }
    y
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_matches_rk4(ode in ode(), t in 0.0..50.0f64) {
        let exact = logistic_solution(&ode, t).unwrap();
        let numeric = rk4(&ode, t, 2e-3);
        prop_assert!((exact - numeric).abs() <= 1e-8 * numeric.abs().max(1.0), "{exact} vs {numeric}");
    }

    #[test]
    fn solution_is_monotone_toward_the_limit(ode in ode(), t1 in 0.0..20.0f64, dt in 0.0..20.0f64) {
        let k = ode.a / ode.b;
        let (y1, y2) = (logistic_solution(&ode, t1).unwrap(), logistic_solution(&ode, t1 + dt).unwrap());
        let slack = 1e-14 * y1.max(y2);
        if ode.y0 < k {
            prop_assert!(y2 >= y1 - slack);
        } else {
            prop_assert!(y2 <= y1 + slack);
        }
        let limit = logistic_limit(&ode).unwrap();
        prop_assert!((limit - k.max(0.0)).abs() <= 1e-15 * limit.max(1.0));
    }

    #[test]
    fn fixed_point_is_the_coexistence_state(
        a1 in 0.0..0.999f64,
        a2 in 0.0..0.999f64,
        q1 in 0.0..0.5f64,
        q2 in 0.0..0.5f64,
    ) {
        let p = ModelParams { a1, a2, ..ModelParams::unit() }.with_q1(q1).with_q2(q2);
        let (l1, l2) = envelope_fixed_point(a1, a2).unwrap();
        let ss = coexistence_steady_state(&p).unwrap();
        prop_assert!((l1 - ss.u_star).abs() <= 1e-12 && (l2 - ss.v_star).abs() <= 1e-12);
        if check_theorem1(&p).theorem_pass() {
            let e = Envelope::new(l1, l1, l2, l2);
            prop_assert_eq!(e.gap_u(), 0.0);
            prop_assert!(envelope_upper_bounds(&p, &e).unwrap().max_abs() <= 1e-12);
        }
    }
}
