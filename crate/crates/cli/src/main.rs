use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chemocomp_cli::output::{read_table, Table};
use chemocomp_cli::svg::{self, Curve};
use chemocomp_cli::{list_scenarios, load_scenario, run, CliError, Result, RunOptions};
use clap::{Parser, Subcommand};

/// Simulate and analyse a two-species chemotaxis competition system.
#[derive(Parser)]
#[command(name = "chemocomp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file or built-in scenario and write its artifacts.
    Run {
        /// Path to a TOML scenario or the name of a built-in scenario.
        scenario: String,
        /// Output directory (overrides run.output_dir).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip SVG plots.
        #[arg(long)]
        no_svg: bool,
        /// Override a scenario value, e.g. `params.q1=50`. Repeatable.
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Evaluate the stability conditions of a scenario without running it.
    Check {
        scenario: String,
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        /// Print one CSV header and row instead of the text report.
        #[arg(long)]
        csv: bool,
    },
    /// List the built-in scenarios.
    List,
    /// Plot a snapshot or extrema CSV as SVG.
    Plot {
        csv: PathBuf,
        /// Output file; defaults to the CSV path with an .svg extension.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match dispatch(Cli::parse().command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode> {
    match command {
        Command::List => {
            for (name, description) in list_scenarios() {
                println!("{name:<20} {description}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check {
            scenario,
            overrides,
            csv,
        } => {
            let config = load_scenario(&scenario)?.with_overrides(&overrides)?;
            let report = chemocomp_core::check_theorem1(&config.model_params()?);
            if csv {
                println!("{}", chemocomp_core::ConditionReport::csv_header());
                println!("{}", report.csv_row());
            } else {
                println!("{report}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Run {
            scenario,
            out,
            no_svg,
            overrides,
        } => {
            let config = load_scenario(&scenario)?.with_overrides(&overrides)?;
            let opts = RunOptions {
                out_dir: out,
                no_svg,
                in_memory: false,
            };
            let report = run(&config, &opts)?;
            println!("{}", report.conditions);
            println!();
            println!(
                "steps: {}  final t: {}  wall time: {:.2?}",
                report.steps, report.final_state.t, report.elapsed
            );
            if report.clip_events > 0 {
                println!("positivity clip events: {}", report.clip_events);
            }
            if let Some((t, peak)) = report
                .series
                .span()
                .and_then(|(a, b)| report.series.peak_u(a, b))
            {
                println!("peak max u: {peak:.6} at t = {t:.6}");
            }
            if let Some(v) = &report.verdict {
                println!(
                    "verdict: {} ({})",
                    if v.converged {
                        "converged"
                    } else {
                        "not converged"
                    },
                    v.reason
                );
            }
            if let Some(dir) = &report.output_dir {
                println!("artifacts in {}", dir.display());
            }
            match &report.failure {
                Some(f) => {
                    eprintln!("run aborted: {f}");
                    Ok(ExitCode::from(1))
                }
                None => Ok(ExitCode::SUCCESS),
            }
        }
        Command::Plot { csv, out } => {
            let out = out.unwrap_or_else(|| csv.with_extension("svg"));
            let table = read_table(&csv)?;
            svg::write_svg(&out, &plot_table(&table, &csv)?)?;
            println!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

/// First column is the abscissa; snapshot tables plot every field, extrema
/// tables plot the maxima.
fn plot_table(table: &Table, path: &Path) -> Result<String> {
    if table.header.len() < 2 || table.rows() == 0 {
        return Err(CliError::Config(format!(
            "{}: need a header and at least one row with two columns",
            path.display()
        )));
    }
    let wanted: Vec<usize> = if table.header.iter().any(|h| h.starts_with("max_")) {
        (1..table.header.len())
            .filter(|&i| {
                table.header[i].starts_with("max_u") || table.header[i].starts_with("max_v")
            })
            .collect()
    } else {
        (1..table.header.len()).collect()
    };
    let curves: Vec<Curve<'_>> = wanted
        .iter()
        .enumerate()
        .map(|(k, &i)| Curve {
            label: &table.header[i],
            color: COLORS[k % COLORS.len()],
            xs: &table.columns[0],
            ys: &table.columns[i],
        })
        .collect();
    let title = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(svg::line_plot(&title, &table.header[0], "value", &curves))
}
