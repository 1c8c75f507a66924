//! Built-in reference scenarios.

use chemocomp_core::{
    coexistence_steady_state, Grid1D, InitialDataSpec, StepperConfig, Tolerances,
};

use crate::config::{InitialSection, ParamsSection, RunSection, ScenarioConfig};

pub const BUILTINS: [(&str, &str); 4] = [
    (
        "observation1",
        "weak competition, small q: convergence to the coexistence state (t <= 10)",
    ),
    (
        "observation2",
        "q1 = 50: stabilization to a spatially inhomogeneous profile (t <= 7)",
    ),
    (
        "observation3",
        "q1 = 50, early times: transient aggregation with dense extrema sampling on [0, 0.03]",
    ),
    (
        "steadystate-smoke",
        "start at the coexistence state; 10^4 steps must leave it unchanged",
    ),
];

pub fn list_scenarios() -> Vec<(&'static str, &'static str)> {
    BUILTINS.to_vec()
}

fn base_params(q1: f64) -> ParamsSection {
    ParamsSection {
        d1: 1.0,
        d2: 1.0,
        d3: 1.0,
        mu1: 2.0,
        mu2: 2.0,
        chi1: None,
        q1: Some(q1),
        chi2: None,
        q2: Some(0.1),
        a1: 0.6,
        a2: 0.4,
        alpha: 1.0,
        beta: 1.0,
        gamma: 1.0,
    }
}

fn paper_initial() -> InitialSection {
    InitialSection {
        u: InitialDataSpec::CosineBump {
            base: 2.0,
            amplitude: 1.5,
            shift: 0.6,
        },
        v: InitialDataSpec::ShiftedParabola {
            center: 1.0,
            scale: 1.0,
        },
        w: None,
    }
}

fn scenario(
    name: &str,
    q1: f64,
    initial: InitialSection,
    t_end: f64,
    snapshot_times: Vec<f64>,
) -> ScenarioConfig {
    let description = BUILTINS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, d)| d.to_string());
    ScenarioConfig {
        name: Some(name.to_string()),
        description,
        params: base_params(q1),
        grid: Grid1D {
            length: 3.0,
            n_cells: 600,
        },
        stepper: StepperConfig::with_dt(1e-5),
        initial,
        run: RunSection {
            t_end,
            snapshot_times,
            extrema_sample_stride: 100,
            dense_sampling_until: None,
            dense_sample_stride: 1,
            output_dir: None,
        },
        diagnostics: Tolerances::default(),
    }
}

pub fn builtin(name: &str) -> Option<ScenarioConfig> {
    match name {
        // 1, 5000, 15000, 100000, 200000 and 1000000 steps of 1e-5
        "observation1" => Some(scenario(
            name,
            0.2,
            paper_initial(),
            10.0,
            vec![1e-5, 0.05, 0.15, 1.0, 2.0, 10.0],
        )),
        // 60000, 100000, 200000, 700000 steps
        "observation2" => Some(scenario(
            name,
            50.0,
            paper_initial(),
            7.0,
            vec![0.6, 1.0, 2.0, 7.0],
        )),
        // 500, 600, 676, 1400, 13000, 30000 steps
        "observation3" => {
            let mut s = scenario(
                name,
                50.0,
                paper_initial(),
                0.3,
                vec![0.005, 0.006, 0.00676, 0.014, 0.13, 0.3],
            );
            s.run.dense_sampling_until = Some(0.03);
            Some(s)
        }
        "steadystate-smoke" => {
            let p = base_params(0.2).to_model().ok()?;
            let ss = coexistence_steady_state(&p).ok()?;
            let initial = InitialSection {
                u: InitialDataSpec::Constant(ss.u_star),
                v: InitialDataSpec::Constant(ss.v_star),
                w: None,
            };
            Some(scenario(name, 0.2, initial, 0.1, vec![0.0, 0.1]))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listing() {
        let names: Vec<_> = list_scenarios().iter().map(|(n, _)| *n).collect();
        for expected in [
            "observation1",
            "observation2",
            "observation3",
            "steadystate-smoke",
        ] {
            assert!(names.contains(&expected));
        }
        assert!(list_scenarios().iter().all(|(_, d)| !d.is_empty()));
    }

    #[test]
    fn builtins_validate_and_round_trip() {
        for (name, _) in BUILTINS {
            let c = builtin(name).unwrap();
            c.validate().unwrap();
            let again = ScenarioConfig::from_toml(&c.to_toml().unwrap()).unwrap();
            assert_eq!(c, again, "{name}");
        }
        assert!(builtin("nope").is_none());
    }

    #[test]
    fn snapshot_steps_match_reference_counts() {
        let steps = |name| {
            builtin(name)
                .unwrap()
                .schedule()
                .iter()
                .map(|s| s.step)
                .collect::<Vec<_>>()
        };
        assert_eq!(
            steps("observation1"),
            vec![1, 5000, 15000, 100000, 200000, 1000000]
        );
        assert_eq!(steps("observation2"), vec![60000, 100000, 200000, 700000]);
        assert_eq!(
            steps("observation3"),
            vec![500, 600, 676, 1400, 13000, 30000]
        );
    }
}
