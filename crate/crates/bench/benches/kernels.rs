use std::hint::black_box;

use chemocomp_core::{Grid1D, InitialDataSpec, ModelParams, State, Stepper, StepperConfig};
use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

fn large_q_params() -> ModelParams {
    ModelParams {
        mu1: 2.0,
        mu2: 2.0,
        a1: 0.6,
        a2: 0.4,
        ..ModelParams::unit()
    }
    .with_q1(50.0)
    .with_q2(0.1)
}

fn paper_state(g: &Grid1D) -> State {
    let u: InitialDataSpec = "cosine-bump(2, 1.5, 0.6)".parse().unwrap();
    let v: InitialDataSpec = "shifted-parabola(1)".parse().unwrap();
    State::new(g, u.sample(g).unwrap(), v.sample(g).unwrap()).unwrap()
}

fn elliptic(c: &mut Criterion) {
    let g = Grid1D::new(3.0, 600).unwrap();
    let p = large_q_params();
    let s = paper_state(&g);
    let solver = chemocomp_core::EllipticSolver::new(&p, &g).unwrap();
    let mut w = vec![0.0; g.len()];
    c.bench_function("elliptic_cached_601", |b| {
        b.iter(|| {
            solver
                .solve_into(black_box(&s.u), black_box(&s.v), &mut w)
                .unwrap()
        })
    });
    c.bench_function("elliptic_assemble_solve_601", |b| {
        b.iter(|| {
            let sys = chemocomp_core::elliptic::assemble(&p, &g, black_box(&s.u), black_box(&s.v))
                .unwrap();
            chemocomp_core::elliptic::solve(&sys).unwrap()
        })
    });
}

fn stepping(c: &mut Criterion) {
    let g = Grid1D::new(3.0, 600).unwrap();
    let p = large_q_params();
    let mut stepper = Stepper::new(p, g, StepperConfig::with_dt(1e-5)).unwrap();
    c.bench_function("step_x100_601", |b| {
        b.iter_batched(
            || paper_state(&g),
            |mut s| {
                stepper.step_n(&mut s, 100).unwrap();
                s
            },
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, elliptic, stepping);
criterion_main!(benches);
