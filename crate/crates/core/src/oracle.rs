//! Scalar comparison ODEs and the envelope inequality system.
//!
//! Every comparison function used for the densities is of logistic type
//!
//! ```text
//! y' = mu * y * (A - B * y),   y(t0) = y0,
//! ```
//!
//! solved here in closed form. The envelope `(L1, l1, L2, l2)` collects the
//! asymptotic spatial maxima and minima of `u` and `v`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogisticOde {
    pub mu: f64,
    pub a: f64,
    pub b: f64,
    pub y0: f64,
    pub t0: f64,
}

impl LogisticOde {
    pub fn new(mu: f64, a: f64, b: f64, y0: f64) -> Self {
        Self {
            mu,
            a,
            b,
            y0,
            t0: 0.0,
        }
    }

    pub fn rhs(&self, y: f64) -> f64 {
        self.mu * y * (self.a - self.b * y)
    }
}

/// `max(A/B, 0)`, the limit of every positive solution.
pub fn logistic_limit(ode: &LogisticOde) -> Result<f64> {
    if !(ode.b > 0.0) {
        return Err(Error::InvalidOde("quadratic coefficient B must be > 0"));
    }
    Ok((ode.a / ode.b).max(0.0))
}

/// Closed-form solution at time `t >= t0`.
pub fn logistic_solution(ode: &LogisticOde, t: f64) -> Result<f64> {
    if !(ode.y0 > 0.0) {
        return Err(Error::InvalidOde("initial value must be > 0"));
    }
    if !(ode.mu > 0.0) {
        return Err(Error::InvalidOde("rate must be > 0"));
    }
    if !(t >= ode.t0) {
        return Err(Error::InvalidOde("t precedes t0"));
    }
    let s = t - ode.t0;
    if ode.a == 0.0 {
        return Ok(ode.y0 / (1.0 + ode.mu * ode.b * ode.y0 * s));
    }
    let k = ode.a / ode.b;
    // y = K / (1 + (K/y0 - 1) e^{-mu A s}), K = A/B
    let e = (-ode.mu * ode.a * s).exp();
    Ok(k / (1.0 + (k / ode.y0 - 1.0) * e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Species {
    First,
    Second,
}

/// Upper comparison function for the global bound on `u` (or `v`):
/// `y' = mu y (1 - (1 - alpha q1 / d3) y)`.
pub fn boundedness_ode(p: &ModelParams, species: Species, y0: f64) -> LogisticOde {
    match species {
        Species::First => LogisticOde::new(p.mu1, 1.0, 1.0 - p.alpha * p.q1() / p.d3, y0),
        Species::Second => LogisticOde::new(p.mu2, 1.0, 1.0 - p.beta * p.q2() / p.d3, y0),
    }
}

/// Asymptotic bound `d3 / (d3 - alpha q1)` on the spatial maximum of `u`
/// (or `d3 / (d3 - beta q2)` for `v`).
pub fn boundedness_limit(p: &ModelParams, species: Species) -> Result<f64> {
    logistic_limit(&boundedness_ode(p, species, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Envelope {
    pub upper_u: f64,
    pub lower_u: f64,
    pub upper_v: f64,
    pub lower_v: f64,
}

impl Envelope {
    pub fn new(upper_u: f64, lower_u: f64, upper_v: f64, lower_v: f64) -> Self {
        Self {
            upper_u,
            lower_u,
            upper_v,
            lower_v,
        }
    }

    pub fn gap_u(&self) -> f64 {
        self.upper_u - self.lower_u
    }

    pub fn gap_v(&self) -> f64 {
        self.upper_v - self.lower_v
    }

    pub fn is_ordered(&self) -> bool {
        self.lower_u <= self.upper_u && self.lower_v <= self.upper_v
    }
}

/// Comparison ODEs on a tail interval, given an envelope. `eps` widens the
/// envelope as in the limiting argument; pass 0 for the limit itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeOdes {
    pub upper_u: LogisticOde,
    pub lower_u: LogisticOde,
    pub upper_v: LogisticOde,
    pub lower_v: LogisticOde,
}

pub fn envelope_odes(p: &ModelParams, e: &Envelope, eps: f64, y0: f64) -> EnvelopeOdes {
    let (q1, q2, d3) = (p.q1(), p.q2(), p.d3);
    let b1 = 1.0 - p.alpha * q1 / d3;
    let b2 = 1.0 - p.beta * q2 / d3;
    let shift1 = (p.a1 + (2.0 - p.beta) * q1 / d3) * eps;
    let shift2 = (p.a2 + (2.0 - p.alpha) * q2 / d3) * eps;
    let a_upper_u = 1.0 - p.alpha * q1 / d3 * e.lower_u - p.a1 * e.lower_v + shift1;
    let a_lower_u = 1.0 - p.alpha * q1 / d3 * e.upper_u - p.a1 * e.upper_v - shift1;
    let a_upper_v = 1.0 - p.a2 * e.lower_u - p.beta * q2 / d3 * e.lower_v + shift2;
    let a_lower_v = 1.0 - p.a2 * e.upper_u - p.beta * q2 / d3 * e.upper_v - shift2;
    EnvelopeOdes {
        upper_u: LogisticOde::new(p.mu1, a_upper_u, b1, y0),
        lower_u: LogisticOde::new(p.mu1, a_lower_u, b1, y0),
        upper_v: LogisticOde::new(p.mu2, a_upper_v, b2, y0),
        lower_v: LogisticOde::new(p.mu2, a_lower_v, b2, y0),
    }
}

/// Signed residuals of the four envelope inequalities
///
/// ```text
/// (d3 - alpha q1) L1 <= d3 - alpha q1 l1 - a1 d3 l2        upper_u <= 0
/// (d3 - beta q2)  L2 <= d3 - a2 d3 l1 - beta q2 l2         upper_v <= 0
/// (d3 - alpha q1) l1 >= d3 - alpha q1 L1 - a1 d3 L2        lower_u >= 0
/// (d3 - beta q2)  l2 >= d3 - a2 d3 L1 - beta q2 L2         lower_v >= 0
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnvelopeResiduals {
    pub upper_u: f64,
    pub upper_v: f64,
    pub lower_u: f64,
    pub lower_v: f64,
}

impl EnvelopeResiduals {
    /// All four inequalities hold up to `tol`.
    pub fn hold(&self, tol: f64) -> bool {
        self.upper_u <= tol && self.upper_v <= tol && self.lower_u >= -tol && self.lower_v >= -tol
    }

    /// Largest violation (0 when all hold).
    pub fn max_violation(&self) -> f64 {
        [self.upper_u, self.upper_v, -self.lower_u, -self.lower_v]
            .into_iter()
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        [self.upper_u, self.upper_v, self.lower_u, self.lower_v]
            .into_iter()
            .fold(0.0, |m, r| m.max(r.abs()))
    }
}

fn positive_factors(p: &ModelParams) -> Result<(f64, f64)> {
    let f1 = p.d3 - p.alpha * p.q1();
    let f2 = p.d3 - p.beta * p.q2();
    if !(f1 > 0.0) {
        return Err(Error::NonpositiveDenominator("d3 - alpha q1"));
    }
    if !(f2 > 0.0) {
        return Err(Error::NonpositiveDenominator("d3 - beta q2"));
    }
    Ok((f1, f2))
}

pub fn envelope_upper_bounds(p: &ModelParams, e: &Envelope) -> Result<EnvelopeResiduals> {
    let (f1, f2) = positive_factors(p)?;
    let (d3, aq1, bq2) = (p.d3, p.alpha * p.q1(), p.beta * p.q2());
    Ok(EnvelopeResiduals {
        upper_u: f1 * e.upper_u - (d3 - aq1 * e.lower_u - p.a1 * d3 * e.lower_v),
        upper_v: f2 * e.upper_v - (d3 - p.a2 * d3 * e.lower_u - bq2 * e.lower_v),
        lower_u: f1 * e.lower_u - (d3 - aq1 * e.upper_u - p.a1 * d3 * e.upper_v),
        lower_v: f2 * e.lower_v - (d3 - p.a2 * d3 * e.upper_u - bq2 * e.upper_v),
    })
}

/// Coefficients `(a1 d3 / (d3 - 2 alpha q1), a2 d3 / (d3 - 2 beta q2))`
/// bounding each envelope gap by the other.
pub fn contraction_coefficients(p: &ModelParams) -> Result<(f64, f64)> {
    let g1 = p.d3 - 2.0 * p.alpha * p.q1();
    let g2 = p.d3 - 2.0 * p.beta * p.q2();
    if !(g1 > 0.0) {
        return Err(Error::NonpositiveDenominator("d3 - 2 alpha q1"));
    }
    if !(g2 > 0.0) {
        return Err(Error::NonpositiveDenominator("d3 - 2 beta q2"));
    }
    Ok((p.a1 * p.d3 / g1, p.a2 * p.d3 / g2))
}

/// Bounds `(L1 - l1, L2 - l2)` implied by the opposite gap.
pub fn contraction_step(p: &ModelParams, e: &Envelope) -> Result<(f64, f64)> {
    let (c1, c2) = contraction_coefficients(p)?;
    Ok((c1 * e.gap_v(), c2 * e.gap_u()))
}

/// Solves `l1 = 1 - a1 l2`, `l2 = 1 - a2 l1` by elimination on the 2x2
/// system `[[1, a1], [a2, 1]] (l1, l2) = (1, 1)` with partial pivoting.
pub fn envelope_fixed_point(a1: f64, a2: f64) -> Result<(f64, f64)> {
    let mut m = [[1.0, a1, 1.0], [a2, 1.0, 1.0]];
    if m[1][0].abs() > m[0][0].abs() {
        m.swap(0, 1);
    }
    let factor = m[1][0] / m[0][0];
    let pivot = m[1][1] - factor * m[0][1];
    if pivot == 0.0 {
        return Err(Error::NoCoexistence { product: a1 * a2 });
    }
    let rhs = m[1][2] - factor * m[0][2];
    let l2 = rhs / pivot;
    let l1 = (m[0][2] - m[0][1] * l2) / m[0][0];
    Ok((l1, l2))
}
