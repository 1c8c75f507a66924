use chemocomp_core::stepper::{chemotaxis_divergence, laplacian};
use chemocomp_core::{
    coexistence_steady_state, initial_profile, FluxScheme, Grid1D, InitialDataSpec, ModelParams,
    State, Stepper, StepperConfig,
};
use proptest::collection::vec;
use proptest::prelude::*;

fn obs1() -> ModelParams {
    ModelParams {
        mu1: 2.0,
        mu2: 2.0,
        a1: 0.6,
        a2: 0.4,
        ..ModelParams::unit()
    }
    .with_q1(0.2)
    .with_q2(0.1)
}

/// Trapezoid-weighted sum and the matching sum of magnitudes.
fn weighted(f: &[f64], dx: f64) -> (f64, f64) {
    let n = f.len();
    let weight = |i: usize| if i == 0 || i == n - 1 { 0.5 * dx } else { dx };
    f.iter().enumerate().fold((0.0, 0.0), |(s, m), (i, x)| {
        (s + weight(i) * x, m + weight(i) * x.abs())
    })
}

fn field() -> impl Strategy<Value = (Grid1D, Vec<f64>, Vec<f64>)> {
    (0.5..5.0f64, 2usize..300).prop_flat_map(|(len, n)| {
        (
            Just(Grid1D::new(len, n).unwrap()),
            vec(0.0..5.0f64, n + 1),
            vec(-3.0..3.0f64, n + 1),
        )
    })
}

proptest! {
    #[test]
    fn transport_terms_conserve_mass(
        (g, dens, w) in field(),
        chi in 0.0..50.0f64,
        upwind in any::<bool>(),
    ) {
        let scheme = if upwind { FluxScheme::Upwind } else { FluxScheme::Central };
        let div = chemotaxis_divergence(&dens, &w, chi, &g, scheme).unwrap();
        let (sum, mag) = weighted(&div, g.dx());
        prop_assert!(sum.abs() <= 1e-12 * mag.max(1.0), "sum {sum} of {mag}");
        let lap = laplacian(&dens, &g).unwrap();
        let (sum, mag) = weighted(&lap, g.dx());
        prop_assert!(sum.abs() <= 1e-12 * mag.max(1.0));
    }

    #[test]
    fn coexistence_state_is_held(a1 in 0.0..0.95f64, a2 in 0.0..0.95f64, q1 in 0.0..1.0f64) {
        let p = ModelParams { a1, a2, ..ModelParams::unit() }.with_q1(q1).with_q2(0.1);
        let g = Grid1D::new(3.0, 60).unwrap();
        let ss = coexistence_steady_state(&p).unwrap();
        let mut stepper = Stepper::new(p, g, StepperConfig::with_dt(1e-3)).unwrap();
        let mut s = State::constant(&g, ss.u_star, ss.v_star, ss.w_star);
        stepper.step_n(&mut s, 1000).unwrap();
        let drift = s.u.iter().map(|x| (x - ss.u_star).abs())
            .chain(s.v.iter().map(|x| (x - ss.v_star).abs()))
            .fold(0.0, f64::max);
        prop_assert!(drift <= 1e-10);
    }
}

#[test]
fn observation1_stays_nonnegative_without_clipping() {
    let p = obs1();
    let g = Grid1D::new(3.0, 600).unwrap();
    let u0 = initial_profile(
        &"cosine-bump(2, 1.5, 0.6)"
            .parse::<InitialDataSpec>()
            .unwrap(),
        &g,
    )
    .unwrap();
    let v0 = initial_profile(
        &"shifted-parabola(1)".parse::<InitialDataSpec>().unwrap(),
        &g,
    )
    .unwrap();
    let mut s = State::new(&g, u0, v0).unwrap();
    let mut stepper = Stepper::new(p, g, StepperConfig::with_dt(1e-5)).unwrap();
    for _ in 0..1000 {
        stepper.step_n(&mut s, 100).unwrap();
        assert!(
            s.u.iter().chain(&s.v).all(|&x| x >= 0.0),
            "negative density at t = {}",
            s.t
        );
    }
    assert_eq!(stepper.clip_events(), 0);
}

/// `u(., 1)` for observation-1 data on `n` cells with `dt = 0.2222 dx^2`.
fn obs1_at_one(n: usize, steps: u64) -> Vec<f64> {
    let g = Grid1D::new(3.0, n).unwrap();
    let u0 = initial_profile(
        &"cosine-bump(2, 1.5, 0.6)"
            .parse::<InitialDataSpec>()
            .unwrap(),
        &g,
    )
    .unwrap();
    let v0 = initial_profile(
        &"shifted-parabola(1)".parse::<InitialDataSpec>().unwrap(),
        &g,
    )
    .unwrap();
    let mut s = State::new(&g, u0, v0).unwrap();
    let mut stepper = Stepper::new(obs1(), g, StepperConfig::with_dt(1.0 / steps as f64)).unwrap();
    stepper.step_n(&mut s, steps).unwrap();
    s.u
}

#[test]
fn refinement_is_second_order() {
    // dx = 0.03, 0.015, 0.0075 with dt quartered each time
    let coarse = obs1_at_one(100, 5_000);
    let mid = obs1_at_one(200, 20_000);
    let fine = obs1_at_one(400, 80_000);
    let e1 = (0..=100)
        .map(|i| (coarse[i] - mid[2 * i]).abs())
        .fold(0.0, f64::max);
    let e2 = (0..=200)
        .map(|i| (mid[i] - fine[2 * i]).abs())
        .fold(0.0, f64::max);
    let ratio = e1 / e2;
    assert!(
        (2.0..=6.0).contains(&ratio),
        "e1 = {e1:.3e}, e2 = {e2:.3e}, ratio = {ratio:.3}"
    );
}
