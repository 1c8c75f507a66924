//! Spatial extrema histories and convergence scoring.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{coexistence_steady_state, ModelParams, State};
use crate::oracle::{envelope_upper_bounds, Envelope, EnvelopeResiduals};

/// Spatial extrema of `u`, `v`, `w` sampled over time.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ExtremaSeries {
    pub times: Vec<f64>,
    pub max_u: Vec<f64>,
    pub min_u: Vec<f64>,
    pub max_v: Vec<f64>,
    pub min_v: Vec<f64>,
    pub max_w: Vec<f64>,
    pub min_w: Vec<f64>,
}

fn extrema(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}

impl ExtremaSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Appends the extrema of `s`. Sample times must strictly increase.
    pub fn record(&mut self, s: &State) -> Result<()> {
        if let Some(&prev) = self.times.last() {
            if !(s.t > prev) {
                return Err(Error::NonMonotoneTime { prev, t: s.t });
            }
        }
        let (min_u, max_u) = extrema(&s.u);
        let (min_v, max_v) = extrema(&s.v);
        let (min_w, max_w) = extrema(&s.w);
        self.times.push(s.t);
        self.max_u.push(max_u);
        self.min_u.push(min_u);
        self.max_v.push(max_v);
        self.min_v.push(min_v);
        self.max_w.push(max_w);
        self.min_w.push(min_w);
        Ok(())
    }

    /// Row `i` in CSV column order `t,max_u,min_u,max_v,min_v,max_w,min_w`.
    pub fn row(&self, i: usize) -> [f64; 7] {
        [
            self.times[i],
            self.max_u[i],
            self.min_u[i],
            self.max_v[i],
            self.min_v[i],
            self.max_w[i],
            self.min_w[i],
        ]
    }

    pub fn span(&self) -> Option<(f64, f64)> {
        Some((*self.times.first()?, *self.times.last()?))
    }

    /// Largest spatial maximum of `u` over samples with `t` in `[start, end]`.
    pub fn peak_u(&self, start: f64, end: f64) -> Option<(f64, f64)> {
        self.times
            .iter()
            .zip(&self.max_u)
            .filter(|(&t, _)| t >= start && t <= end)
            .fold(None, |best: Option<(f64, f64)>, (&t, &m)| match best {
                Some((_, bm)) if bm >= m => best,
                _ => Some((t, m)),
            })
    }

    /// `max - min` of the field with the largest spread at the last sample.
    pub fn final_homogeneity_gap(&self) -> Option<f64> {
        let i = self.len().checked_sub(1)?;
        Some(
            (self.max_u[i] - self.min_u[i])
                .max(self.max_v[i] - self.min_v[i])
                .max(self.max_w[i] - self.min_w[i]),
        )
    }
}

/// Finite-window surrogate for the asymptotic envelope: the largest maxima
/// and smallest minima over samples with `t` in `[start, end]`.
pub fn estimate_envelope(series: &ExtremaSeries, start: f64, end: f64) -> Result<Envelope> {
    let mut env = Envelope::new(
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
    );
    let mut any = false;
    for (i, &t) in series.times.iter().enumerate() {
        if t < start || t > end {
            continue;
        }
        any = true;
        env.upper_u = env.upper_u.max(series.max_u[i]);
        env.lower_u = env.lower_u.min(series.min_u[i]);
        env.upper_v = env.upper_v.max(series.max_v[i]);
        env.lower_v = env.lower_v.min(series.min_v[i]);
    }
    if !any {
        return Err(Error::EmptyWindow { start, end });
    }
    Ok(env)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Sup-norm distance of each field to the coexistence state.
    #[serde(rename = "tol_dist")]
    pub dist: f64,
    /// Spatial oscillation `max - min` of each field at the final sample.
    #[serde(rename = "tol_homog")]
    pub homog: f64,
    /// Allowed violation of the envelope inequalities.
    #[serde(rename = "tol_resid")]
    pub resid: f64,
    /// Trailing fraction of the recorded span used for the envelope.
    pub window_fraction: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            dist: 1e-2,
            homog: 1e-3,
            resid: 1e-2,
            window_fraction: 0.2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceVerdict {
    pub converged: bool,
    pub reason: String,
    pub window: (f64, f64),
    pub envelope: Envelope,
    /// Sup-norm distances of `(u, v, w)` at the final sample to the
    /// coexistence state; absent when no such state exists.
    pub distances: Option<[f64; 3]>,
    /// Absent when a denominator of the envelope inequalities is nonpositive.
    pub residuals: Option<EnvelopeResiduals>,
    pub residuals_hold: Option<bool>,
    pub homogeneity_gap: f64,
}

fn sup_distance(max: f64, min: f64, target: f64) -> f64 {
    (max - target).abs().max((min - target).abs())
}

pub fn verdict(
    series: &ExtremaSeries,
    p: &ModelParams,
    tol: &Tolerances,
) -> Result<ConvergenceVerdict> {
    let (first, last) = series.span().ok_or(Error::EmptyWindow {
        start: f64::NAN,
        end: f64::NAN,
    })?;
    let start = last - tol.window_fraction * (last - first);
    let envelope = estimate_envelope(series, start, last)?;
    let homogeneity_gap = series.final_homogeneity_gap().unwrap_or(f64::NAN);
    let i = series.len() - 1;
    let distances = coexistence_steady_state(p).ok().map(|ss| {
        [
            sup_distance(series.max_u[i], series.min_u[i], ss.u_star),
            sup_distance(series.max_v[i], series.min_v[i], ss.v_star),
            sup_distance(series.max_w[i], series.min_w[i], ss.w_star),
        ]
    });
    let residuals = envelope_upper_bounds(p, &envelope).ok();
    let residuals_hold = residuals.map(|r| r.hold(tol.resid));

    let homogeneous = homogeneity_gap <= tol.homog;
    let close = distances.is_some_and(|d| d.iter().all(|&x| x <= tol.dist));
    let reason = match (homogeneous, distances) {
        (false, _) => format!(
            "not spatially homogeneous: gap {homogeneity_gap:.3e} > {:.3e}",
            tol.homog
        ),
        (true, None) => "no coexistence steady state for these parameters".to_string(),
        (true, Some(d)) if !close => format!(
            "homogeneous but away from steady state: distances ({:.3e}, {:.3e}, {:.3e}) vs {:.3e}",
            d[0], d[1], d[2], tol.dist
        ),
        (true, Some(_)) => "converged to coexistence steady state".to_string(),
    };
    Ok(ConvergenceVerdict {
        converged: homogeneous && close,
        reason,
        window: (start, last),
        envelope,
        distances,
        residuals,
        residuals_hold,
        homogeneity_gap,
    })
}
