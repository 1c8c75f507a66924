//! CSV and text artifacts of a run.
//!
//! Floats are written with `{:.16e}` so files round-trip exactly and two
//! identical runs produce identical bytes.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use chemocomp_core::{ExtremaSeries, Grid1D, State, StiffnessMonitor};

use crate::error::{CliError, Result};

pub const SNAPSHOT_HEADER: [&str; 4] = ["x", "u", "v", "w"];
pub const EXTREMA_HEADER: [&str; 7] = ["t", "max_u", "min_u", "max_v", "min_v", "max_w", "min_w"];
pub const MONITOR_HEADER: [&str; 3] = ["t", "advective_courant", "reaction_stiffness"];

fn join(cols: impl IntoIterator<Item = f64>) -> String {
    cols.into_iter()
        .map(|v| format!("{v:.16e}"))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn snapshot_csv(grid: &Grid1D, s: &State) -> String {
    let mut out = SNAPSHOT_HEADER.join(",");
    out.push('\n');
    for (i, x) in grid.nodes().enumerate() {
        out.push_str(&join([x, s.u[i], s.v[i], s.w[i]]));
        out.push('\n');
    }
    out
}

pub fn extrema_csv(series: &ExtremaSeries) -> String {
    let mut out = EXTREMA_HEADER.join(",");
    out.push('\n');
    for i in 0..series.len() {
        out.push_str(&join(series.row(i)));
        out.push('\n');
    }
    out
}

pub fn monitor_csv(rows: &[(f64, StiffnessMonitor)]) -> String {
    let mut out = MONITOR_HEADER.join(",");
    out.push('\n');
    for (t, m) in rows {
        out.push_str(&join([*t, m.advective_courant, m.reaction_stiffness]));
        out.push('\n');
    }
    out
}

/// File name for the snapshot at `time`; `index` keeps names sorted.
pub fn snapshot_file_name(index: usize, time: f64) -> String {
    format!("snapshot_{index:02}_t{time}.csv")
}

/// A numeric CSV with a header row, as read back by `plot`.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub columns: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<&[f64]> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(&self.columns[i])
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }
}

pub fn read_table(path: &Path) -> Result<Table> {
    let file = fs::File::open(path).map_err(|e| CliError::io(path, e))?;
    let mut reader = csv::Reader::from_reader(file);
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    let mut columns = vec![Vec::new(); header.len()];
    for (line, record) in reader.records().enumerate() {
        let record = record?;
        for (col, field) in columns.iter_mut().zip(record.iter()) {
            let value = field.trim().parse::<f64>().map_err(|_| {
                CliError::Config(format!(
                    "{}: row {}: '{field}' is not a number",
                    path.display(),
                    line + 1
                ))
            })?;
            col.push(value);
        }
    }
    Ok(Table { header, columns })
}

/// Collects written paths so a report can list them.
#[derive(Debug, Default)]
pub struct ArtifactWriter {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl ArtifactWriter {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        Ok(Self {
            dir,
            written: Vec::new(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<PathBuf> {
        let path = self.dir.join(name);
        let mut f = fs::File::create(&path).map_err(|e| CliError::io(&path, e))?;
        f.write_all(contents.as_bytes())
            .map_err(|e| CliError::io(&path, e))?;
        self.written.push(path.clone());
        Ok(path)
    }

    pub fn into_paths(self) -> Vec<PathBuf> {
        self.written
    }
}
