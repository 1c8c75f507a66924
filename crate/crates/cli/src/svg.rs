//! Minimal self-contained SVG line plots.

use std::fmt::Write as _;
use std::path::Path;

use chemocomp_core::{ExtremaSeries, State};

use crate::error::{CliError, Result};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;

pub struct Curve<'a> {
    pub label: &'a str,
    pub color: &'a str,
    pub xs: &'a [f64],
    pub ys: &'a [f64],
}

fn finite_range<'a>(values: impl Iterator<Item = &'a f64>) -> Option<(f64, f64)> {
    values
        .filter(|v| v.is_finite())
        .fold(None, |acc, &v| match acc {
            None => Some((v, v)),
            Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
        })
}

/// Widens a degenerate range so constant data renders as a centred line.
fn padded((lo, hi): (f64, f64)) -> (f64, f64) {
    let span = hi - lo;
    if span <= 1e-12 * lo.abs().max(hi.abs()).max(1.0) {
        let pad = if lo == 0.0 { 1.0 } else { 0.1 * lo.abs() };
        (lo - pad, hi + pad)
    } else {
        (lo - 0.05 * span, hi + 0.05 * span)
    }
}

fn nice_step(span: f64) -> f64 {
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let nice = if norm < 1.5 {
        1.0
    } else if norm < 3.5 {
        2.0
    } else if norm < 7.5 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

fn ticks(lo: f64, hi: f64) -> (Vec<f64>, usize) {
    let step = nice_step(hi - lo);
    let decimals = if step >= 1.0 {
        0
    } else {
        (-step.log10()).ceil() as usize
    };
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    ((first..=last).map(|k| k as f64 * step).collect(), decimals)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Renders curves sharing one pair of axes. Each plot scales its own
/// vertical axis to the data.
pub fn line_plot(title: &str, x_label: &str, y_label: &str, curves: &[Curve<'_>]) -> String {
    let (x0, x1) =
        padded_x(finite_range(curves.iter().flat_map(|c| c.xs.iter())).unwrap_or((0.0, 1.0)));
    let (y0, y1) =
        padded(finite_range(curves.iter().flat_map(|c| c.ys.iter())).unwrap_or((0.0, 1.0)));
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + ph - (y - y0) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="28" text-anchor="middle" font-size="15">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );

    let (xt, xd) = ticks(x0, x1);
    for x in xt {
        let px = sx(x);
        let _ = writeln!(
            s,
            r##"<line x1="{px:.2}" y1="{TOP}" x2="{px:.2}" y2="{:.2}" stroke="#e6e6e6"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{x:.xd$}</text>"##,
            TOP + ph,
            TOP + ph + 18.0
        );
    }
    let (yt, yd) = ticks(y0, y1);
    for y in yt {
        let py = sy(y);
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="#e6e6e6"/><text x="{:.2}" y="{:.2}" text-anchor="end">{y:.yd$}</text>"##,
            LEFT + pw,
            LEFT - 6.0,
            py + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw:.2}" height="{ph:.2}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 15.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">{}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        escape(y_label)
    );

    for c in curves {
        let mut points = String::new();
        for (&x, &y) in c.xs.iter().zip(c.ys) {
            if x.is_finite() && y.is_finite() {
                let _ = write!(points, "{:.2},{:.2} ", sx(x), sy(y));
            }
        }
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>"#,
            c.color,
            points.trim_end()
        );
    }

    for (i, c) in curves.iter().enumerate() {
        let ly = TOP + 16.0 + 18.0 * i as f64;
        let lx = LEFT + pw - 110.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 24.0,
            c.color,
            lx + 30.0,
            ly + 4.0,
            escape(c.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn padded_x((lo, hi): (f64, f64)) -> (f64, f64) {
    if hi > lo {
        (lo, hi)
    } else {
        padded((lo, hi))
    }
}

pub fn snapshot_svg(x: &[f64], s: &State, title: &str) -> String {
    line_plot(
        title,
        "x",
        "u, v, w",
        &[
            Curve {
                label: "u",
                color: "#1f77b4",
                xs: x,
                ys: &s.u,
            },
            Curve {
                label: "v",
                color: "#d62728",
                xs: x,
                ys: &s.v,
            },
            Curve {
                label: "w",
                color: "#2ca02c",
                xs: x,
                ys: &s.w,
            },
        ],
    )
}

pub fn extrema_svg(series: &ExtremaSeries, title: &str) -> String {
    line_plot(
        title,
        "t",
        "spatial maximum",
        &[
            Curve {
                label: "max u",
                color: "#1f77b4",
                xs: &series.times,
                ys: &series.max_u,
            },
            Curve {
                label: "max v",
                color: "#d62728",
                xs: &series.times,
                ys: &series.max_v,
            },
        ],
    )
}

/// Writes `svg` to `path`, creating missing parent directories.
pub fn write_svg(path: &Path, svg: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    std::fs::write(path, svg).map_err(|e| CliError::io(path, e))
}
