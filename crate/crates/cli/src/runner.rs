//! Drives one scenario from initial data to `t_end`.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use chemocomp_core::{
    check_theorem1, initial_profile, verdict, ConditionReport, ConvergenceVerdict, ExtremaSeries,
    Grid1D, State, Stepper, StiffnessMonitor,
};
use serde::Serialize;

use crate::config::ScenarioConfig;
use crate::error::{CliError, Result};
use crate::output::{self, ArtifactWriter};
use crate::svg;

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Overrides `run.output_dir`.
    pub out_dir: Option<PathBuf>,
    pub no_svg: bool,
    /// Keep everything in memory; nothing touches the filesystem.
    pub in_memory: bool,
}

#[derive(Debug, Clone)]
pub struct Snapshot {
    pub requested: f64,
    pub step: u64,
    pub state: State,
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub name: String,
    pub output_dir: Option<PathBuf>,
    pub artifacts: Vec<PathBuf>,
    pub conditions: ConditionReport,
    pub verdict: Option<ConvergenceVerdict>,
    pub snapshots: Vec<Snapshot>,
    pub series: ExtremaSeries,
    pub final_state: State,
    /// Set when the stepper aborted; outputs up to that point are kept.
    pub failure: Option<String>,
    pub steps: u64,
    pub clip_events: u64,
    pub max_monitor: StiffnessMonitor,
    pub elapsed: Duration,
}

impl RunReport {
    pub fn succeeded(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Serialize)]
struct SnapshotEntry<'a> {
    requested: f64,
    time: f64,
    step: u64,
    file: Option<&'a str>,
}

#[derive(Serialize)]
struct Summary<'a> {
    name: &'a str,
    steps: u64,
    final_time: f64,
    failure: Option<&'a str>,
    clip_events: u64,
    peak_u: Option<(f64, f64)>,
    max_monitor: StiffnessMonitor,
    conditions: &'a ConditionReport,
    theorem_pass: bool,
    condition_2012_pass: bool,
    verdict: Option<&'a ConvergenceVerdict>,
    snapshots: Vec<SnapshotEntry<'a>>,
}

fn scenario_name(config: &ScenarioConfig) -> String {
    config
        .name
        .clone()
        .unwrap_or_else(|| "scenario".to_string())
}

fn resolve_out_dir(config: &ScenarioConfig, opts: &RunOptions) -> PathBuf {
    opts.out_dir
        .clone()
        .or_else(|| config.run.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("out").join(scenario_name(config)))
}

pub fn run(config: &ScenarioConfig, opts: &RunOptions) -> Result<RunReport> {
    let started = Instant::now();
    config.validate()?;
    let params = config.model_params()?;
    let grid = Grid1D::new(config.grid.length, config.grid.n_cells)?;
    let conditions = check_theorem1(&params);
    let mut stepper = Stepper::new(params, grid, config.stepper)?;

    let dt = config.stepper.dt;
    let total = config.total_steps();
    let schedule = config.schedule();
    let stride = config.run.extrema_sample_stride;
    let dense_stride = config.run.dense_sample_stride;
    let dense_until = config.run.dense_sampling_until.unwrap_or(f64::NEG_INFINITY);

    let mut state = State::new(
        &grid,
        initial_profile(&config.initial.u, &grid)?,
        initial_profile(&config.initial.v, &grid)?,
    )?;
    stepper.sync_signal(&mut state)?;

    let mut series = ExtremaSeries::new();
    let mut monitor_rows = Vec::new();
    let mut max_monitor = StiffnessMonitor::default();
    let mut snapshots = Vec::new();
    let mut next_snapshot = 0;
    let mut failure = None;

    // step 0
    record(
        &stepper,
        &state,
        &mut series,
        &mut monitor_rows,
        &mut max_monitor,
    )?;
    while next_snapshot < schedule.len() && schedule[next_snapshot].step == 0 {
        snapshots.push(Snapshot {
            requested: schedule[next_snapshot].requested,
            step: 0,
            state: state.clone(),
            file: None,
        });
        next_snapshot += 1;
    }

    for k in 1..=total {
        if let Err(e) = stepper.step(&mut state) {
            failure = Some(e.to_string());
            // densities are from step k-1; bring the signal back in line
            stepper.sync_signal(&mut state)?;
            if series.times.last() != Some(&state.t) {
                record(
                    &stepper,
                    &state,
                    &mut series,
                    &mut monitor_rows,
                    &mut max_monitor,
                )?;
            }
            break;
        }
        state.t = k as f64 * dt;
        let snap = next_snapshot < schedule.len() && schedule[next_snapshot].step == k;
        let dense = state.t <= dense_until && k % dense_stride == 0;
        if snap || dense || k % stride == 0 || k == total {
            stepper.sync_signal(&mut state)?;
            record(
                &stepper,
                &state,
                &mut series,
                &mut monitor_rows,
                &mut max_monitor,
            )?;
        }
        if snap {
            snapshots.push(Snapshot {
                requested: schedule[next_snapshot].requested,
                step: k,
                state: state.clone(),
                file: None,
            });
            next_snapshot += 1;
        }
    }

    let verdict = verdict(&series, &params, &config.diagnostics).ok();
    let name = scenario_name(config);
    let mut report = RunReport {
        name,
        output_dir: None,
        artifacts: Vec::new(),
        conditions,
        verdict,
        snapshots,
        series,
        final_state: state,
        failure,
        steps: stepper.steps_taken(),
        clip_events: stepper.clip_events(),
        max_monitor,
        elapsed: Duration::ZERO,
    };
    if !opts.in_memory {
        write_artifacts(config, opts, &grid, &monitor_rows, &mut report)?;
    }
    report.elapsed = started.elapsed();
    Ok(report)
}

fn record(
    stepper: &Stepper,
    state: &State,
    series: &mut ExtremaSeries,
    monitor_rows: &mut Vec<(f64, StiffnessMonitor)>,
    max_monitor: &mut StiffnessMonitor,
) -> Result<()> {
    series.record(state)?;
    let m = stepper.monitor(state);
    max_monitor.advective_courant = max_monitor.advective_courant.max(m.advective_courant);
    max_monitor.reaction_stiffness = max_monitor.reaction_stiffness.max(m.reaction_stiffness);
    monitor_rows.push((state.t, m));
    Ok(())
}

fn write_artifacts(
    config: &ScenarioConfig,
    opts: &RunOptions,
    grid: &Grid1D,
    monitor_rows: &[(f64, StiffnessMonitor)],
    report: &mut RunReport,
) -> Result<()> {
    let mut out = ArtifactWriter::new(resolve_out_dir(config, opts))?;
    let x: Vec<f64> = grid.nodes().collect();

    out.write("config.toml", &config.to_toml()?)?;
    out.write("conditions.txt", &format!("{}\n", report.conditions))?;
    for (i, snap) in report.snapshots.iter_mut().enumerate() {
        let name = output::snapshot_file_name(i, snap.requested);
        snap.file = Some(out.write(&name, &output::snapshot_csv(grid, &snap.state))?);
        if !opts.no_svg {
            let title = format!("{}: t = {}", report.name, snap.requested);
            out.write(
                &name.replace(".csv", ".svg"),
                &svg::snapshot_svg(&x, &snap.state, &title),
            )?;
        }
    }
    out.write("extrema.csv", &output::extrema_csv(&report.series))?;
    out.write("monitor.csv", &output::monitor_csv(monitor_rows))?;
    if !opts.no_svg {
        let title = format!("{}: spatial maxima", report.name);
        out.write("extrema.svg", &svg::extrema_svg(&report.series, &title))?;
    }

    let file_names: Vec<Option<String>> = report
        .snapshots
        .iter()
        .map(|s| {
            s.file
                .as_ref()
                .and_then(|p| p.file_name())
                .map(|n| n.to_string_lossy().into_owned())
        })
        .collect();
    let summary = Summary {
        name: &report.name,
        steps: report.steps,
        final_time: report.final_state.t,
        failure: report.failure.as_deref(),
        clip_events: report.clip_events,
        peak_u: report
            .series
            .span()
            .and_then(|(a, b)| report.series.peak_u(a, b)),
        max_monitor: report.max_monitor,
        conditions: &report.conditions,
        theorem_pass: report.conditions.theorem_pass(),
        condition_2012_pass: report.conditions.condition_2012_pass(),
        verdict: report.verdict.as_ref(),
        snapshots: report
            .snapshots
            .iter()
            .zip(&file_names)
            .map(|(s, f)| SnapshotEntry {
                requested: s.requested,
                time: s.state.t,
                step: s.step,
                file: f.as_deref(),
            })
            .collect(),
    };
    let json = serde_json::to_string_pretty(&summary).map_err(CliError::from)?;
    out.write("summary.json", &(json + "\n"))?;

    report.output_dir = Some(out.dir().to_path_buf());
    report.artifacts = out.into_paths();
    Ok(())
}
