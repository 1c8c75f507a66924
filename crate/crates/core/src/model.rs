//! Model coefficients, the spatial mesh, discrete state and the
//! coexistence equilibrium.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients of the two-species chemotaxis-competition system
///
/// ```text
/// u_t = d1 u'' - chi1 (u w')' + mu1 u (1 - u - a1 v)
/// v_t = d2 v'' - chi2 (v w')' + mu2 v (1 - a2 u - v)
///   0 = d3 w'' + alpha u + beta v - gamma w
/// ```
///
/// with homogeneous Neumann conditions for all three fields.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    pub chi1: f64,
    pub chi2: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub a1: f64,
    pub a2: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl ModelParams {
    /// Unit diffusion, production and decay; no chemotaxis, no competition.
    pub fn unit() -> Self {
        Self {
            d1: 1.0,
            d2: 1.0,
            d3: 1.0,
            chi1: 0.0,
            chi2: 0.0,
            mu1: 1.0,
            mu2: 1.0,
            a1: 0.0,
            a2: 0.0,
            alpha: 1.0,
            beta: 1.0,
            gamma: 1.0,
        }
    }

    /// Relative chemotactic strength of the first species, `chi1 / mu1`.
    pub fn q1(&self) -> f64 {
        self.chi1 / self.mu1
    }

    /// Relative chemotactic strength of the second species, `chi2 / mu2`.
    pub fn q2(&self) -> f64 {
        self.chi2 / self.mu2
    }

    /// Sets `chi1` so that `q1()` returns `q1` for the current `mu1`.
    pub fn with_q1(mut self, q1: f64) -> Self {
        self.chi1 = q1 * self.mu1;
        self
    }

    pub fn with_q2(mut self, q2: f64) -> Self {
        self.chi2 = q2 * self.mu2;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("d1", self.d1),
            ("d2", self.d2),
            ("d3", self.d3),
            ("mu1", self.mu1),
            ("mu2", self.mu2),
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("gamma", self.gamma),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "must be finite and > 0",
                });
            }
        }
        let nonnegative = [
            ("chi1", self.chi1),
            ("chi2", self.chi2),
            ("a1", self.a1),
            ("a2", self.a2),
        ];
        for (name, value) in nonnegative {
            if !(value.is_finite() && value >= 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "must be finite and >= 0",
                });
            }
        }
        Ok(())
    }
}

/// Uniform vertex-centered mesh on `[0, length]` with `n_cells + 1` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid1D {
    pub length: f64,
    pub n_cells: usize,
}

impl Grid1D {
    pub fn new(length: f64, n_cells: usize) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidParameter {
                name: "length",
                value: length,
                reason: "must be finite and > 0",
            });
        }
        if n_cells < 2 {
            return Err(Error::InvalidParameter {
                name: "n_cells",
                value: n_cells as f64,
                reason: "need at least two cells",
            });
        }
        Ok(Self { length, n_cells })
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n_cells as f64
    }

    pub fn len(&self) -> usize {
        self.n_cells + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Coordinate of node `i`. The last node is pinned to `length` exactly.
    pub fn x(&self, i: usize) -> f64 {
        if i == self.n_cells {
            self.length
        } else {
            i as f64 * self.dx()
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |i| self.x(i))
    }

    pub(crate) fn check_len(&self, got: usize) -> Result<()> {
        if got != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got,
            });
        }
        Ok(())
    }
}

/// Nodal values of `(u, v, w)` at time `t`.
///
/// `w` holds the signal from the most recent elliptic solve; after a time
/// step it corresponds to the densities at the start of that step until
/// refreshed (see [`crate::stepper::Stepper::sync_signal`]).
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub t: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub w: Vec<f64>,
}

impl State {
    /// Builds a state with a zero signal; call `sync_signal` to fill `w`.
    pub fn new(grid: &Grid1D, u: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        grid.check_len(u.len())?;
        grid.check_len(v.len())?;
        let w = vec![0.0; grid.len()];
        Ok(Self { t: 0.0, u, v, w })
    }

    pub fn constant(grid: &Grid1D, u: f64, v: f64, w: f64) -> Self {
        let n = grid.len();
        Self {
            t: 0.0,
            u: vec![u; n],
            v: vec![v; n],
            w: vec![w; n],
        }
    }

    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    pub fn check(&self, grid: &Grid1D) -> Result<()> {
        grid.check_len(self.u.len())?;
        grid.check_len(self.v.len())?;
        grid.check_len(self.w.len())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteadyState {
    pub u_star: f64,
    pub v_star: f64,
    pub w_star: f64,
}

/// The spatially constant equilibrium where both species persist.
pub fn coexistence_steady_state(p: &ModelParams) -> Result<SteadyState> {
    let product = p.a1 * p.a2;
    if !(product < 1.0) {
        return Err(Error::NoCoexistence { product });
    }
    let denom = 1.0 - product;
    let u_star = (1.0 - p.a1) / denom;
    let v_star = (1.0 - p.a2) / denom;
    let w_star = (p.alpha * u_star + p.beta * v_star) / p.gamma;
    Ok(SteadyState {
        u_star,
        v_star,
        w_star,
    })
}

/// Closed vocabulary of analytic initial data.
///
/// Textual form (used in scenario files):
///
/// | form                                | value at `x`                          |
/// |-------------------------------------|---------------------------------------|
/// | `cosine-bump(base, amp, shift)`     | `base + amp * cos(pi * (x - shift))`  |
/// | `shifted-parabola(center[, scale])` | `scale * (x - center)^2`              |
/// | `constant(c)`                       | `c`                                   |
/// | `piecewise-constant(split, l, r)`   | `l` for `x < split`, else `r`         |
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialDataSpec {
    CosineBump {
        base: f64,
        amplitude: f64,
        shift: f64,
    },
    ShiftedParabola {
        center: f64,
        scale: f64,
    },
    Constant(f64),
    PiecewiseConstant {
        split: f64,
        left: f64,
        right: f64,
    },
}

impl InitialDataSpec {
    pub fn value_at(&self, x: f64) -> f64 {
        match *self {
            Self::CosineBump {
                base,
                amplitude,
                shift,
            } => base + amplitude * (PI * (x - shift)).cos(),
            Self::ShiftedParabola { center, scale } => scale * (x - center) * (x - center),
            Self::Constant(c) => c,
            Self::PiecewiseConstant { split, left, right } => {
                if x < split {
                    left
                } else {
                    right
                }
            }
        }
    }

    /// Nodal samples on `grid`; rejects data that is negative anywhere.
    pub fn sample(&self, grid: &Grid1D) -> Result<Vec<f64>> {
        let values: Vec<f64> = grid.nodes().map(|x| self.value_at(x)).collect();
        if let Some((i, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v >= 0.0))
        {
            return Err(Error::NegativeInitialData {
                profile: self.to_string(),
                x: grid.x(i),
                value,
            });
        }
        Ok(values)
    }
}

impl fmt::Display for InitialDataSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::CosineBump {
                base,
                amplitude,
                shift,
            } => write!(f, "cosine-bump({base}, {amplitude}, {shift})"),
            Self::ShiftedParabola { center, scale } => {
                write!(f, "shifted-parabola({center}, {scale})")
            }
            Self::Constant(c) => write!(f, "constant({c})"),
            Self::PiecewiseConstant { split, left, right } => {
                write!(f, "piecewise-constant({split}, {left}, {right})")
            }
        }
    }
}

impl FromStr for InitialDataSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let malformed = || Error::MalformedProfile(s.to_string());
        let s_trim = s.trim();
        let open = s_trim.find('(').ok_or_else(malformed)?;
        if !s_trim.ends_with(')') {
            return Err(malformed());
        }
        let name = s_trim[..open].trim();
        let inner = &s_trim[open + 1..s_trim.len() - 1];
        let args = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|a| a.trim().parse::<f64>().map_err(|_| malformed()))
                .collect::<Result<Vec<f64>>>()?
        };
        if args.iter().any(|a| !a.is_finite()) {
            return Err(malformed());
        }
        match (name, args.as_slice()) {
            ("cosine-bump", &[base, amplitude, shift]) => Ok(Self::CosineBump {
                base,
                amplitude,
                shift,
            }),
            ("shifted-parabola", &[center]) => Ok(Self::ShiftedParabola { center, scale: 1.0 }),
            ("shifted-parabola", &[center, scale]) => Ok(Self::ShiftedParabola { center, scale }),
            ("constant", &[c]) => Ok(Self::Constant(c)),
            ("piecewise-constant", &[split, left, right]) => {
                Ok(Self::PiecewiseConstant { split, left, right })
            }
            ("cosine-bump" | "shifted-parabola" | "constant" | "piecewise-constant", _) => {
                Err(malformed())
            }
            _ => Err(Error::UnknownProfile(name.to_string())),
        }
    }
}

/// Samples `spec` on `grid`.
pub fn initial_profile(spec: &InitialDataSpec, grid: &Grid1D) -> Result<Vec<f64>> {
    spec.sample(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

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

    #[test]
    fn steady_state_obs1() {
        let s = coexistence_steady_state(&obs1()).unwrap();
        assert!((s.u_star - 0.4 / 0.76).abs() < 1e-15);
        assert!((s.v_star - 0.6 / 0.76).abs() < 1e-15);
        assert!((s.u_star - 0.526316).abs() < 1e-6);
        assert!((s.v_star - 0.789474).abs() < 1e-6);
        assert!((s.w_star - 1.315789).abs() < 1e-6);
    }

    #[test]
    fn steady_state_competition_free() {
        let s = coexistence_steady_state(&ModelParams::unit()).unwrap();
        assert_eq!((s.u_star, s.v_star, s.w_star), (1.0, 1.0, 2.0));
    }

    #[test]
    fn steady_state_weighted_production() {
        let p = ModelParams {
            a1: 0.5,
            a2: 0.5,
            alpha: 2.0,
            gamma: 2.0,
            ..ModelParams::unit()
        };
        let s = coexistence_steady_state(&p).unwrap();
        assert!((s.u_star - 2.0 / 3.0).abs() < 1e-15);
        assert!((s.v_star - 2.0 / 3.0).abs() < 1e-15);
        assert!((s.w_star - 1.0).abs() < 1e-15);
    }

    #[test]
    fn steady_state_rejects_strong_competition() {
        let p = ModelParams {
            a1: 2.0,
            a2: 0.5,
            ..ModelParams::unit()
        };
        assert!(matches!(
            coexistence_steady_state(&p),
            Err(Error::NoCoexistence { .. })
        ));
    }

    #[test]
    fn q_is_scale_invariant() {
        let p = obs1();
        let c = 7.25;
        let scaled = ModelParams {
            chi1: p.chi1 * c,
            mu1: p.mu1 * c,
            chi2: p.chi2 * c,
            mu2: p.mu2 * c,
            ..p
        };
        assert!((scaled.q1() - p.q1()).abs() < 1e-15);
        assert!((scaled.q2() - p.q2()).abs() < 1e-15);
    }

    #[test]
    fn validate_rejects_bad_values() {
        assert!(ModelParams::unit().validate().is_ok());
        let p = ModelParams {
            d3: 0.0,
            ..ModelParams::unit()
        };
        assert!(p.validate().is_err());
        let p = ModelParams {
            chi1: -1.0,
            ..ModelParams::unit()
        };
        assert!(p.validate().is_err());
    }

    #[test]
    fn grid_nodes() {
        let g = Grid1D::new(3.0, 600).unwrap();
        assert_eq!(g.len(), 601);
        assert!((g.dx() - 0.005).abs() < 1e-15);
        assert_eq!(g.x(0), 0.0);
        assert_eq!(g.x(600), 3.0);
        assert!(Grid1D::new(0.0, 10).is_err());
        assert!(Grid1D::new(1.0, 1).is_err());
    }

    #[test]
    fn profiles() {
        let bump: InitialDataSpec = "cosine-bump(2, 1.5, 0.6)".parse().unwrap();
        assert!((bump.value_at(0.6) - 3.5).abs() < 1e-15);
        assert!((bump.value_at(1.6) - 0.5).abs() < 1e-15);
        let para: InitialDataSpec = "shifted-parabola(1)".parse().unwrap();
        assert_eq!(para.value_at(1.0), 0.0);
        assert_eq!(para.value_at(3.0), 4.0);
        let g = Grid1D::new(1.0, 10).unwrap();
        let c = InitialDataSpec::Constant(0.75).sample(&g).unwrap();
        assert!(c.iter().all(|&x| x == 0.75));
        let pw: InitialDataSpec = "piecewise-constant(0.5, 1, 2)".parse().unwrap();
        assert_eq!(pw.value_at(0.25), 1.0);
        assert_eq!(pw.value_at(0.5), 2.0);
    }

    #[test]
    fn paper_initial_data_extrema() {
        let g = Grid1D::new(3.0, 600).unwrap();
        let u = "cosine-bump(2, 1.5, 0.6)"
            .parse::<InitialDataSpec>()
            .unwrap()
            .sample(&g)
            .unwrap();
        let max = u.iter().cloned().fold(f64::MIN, f64::max);
        let min = u.iter().cloned().fold(f64::MAX, f64::min);
        assert!((max - 3.5).abs() < 1e-12);
        assert!((min - 0.5).abs() < 1e-12);
    }

    #[test]
    fn profile_errors() {
        assert!(matches!(
            "gaussian(1, 2)".parse::<InitialDataSpec>(),
            Err(Error::UnknownProfile(_))
        ));
        assert!(matches!(
            "constant(1, 2)".parse::<InitialDataSpec>(),
            Err(Error::MalformedProfile(_))
        ));
        assert!(matches!(
            "constant 1".parse::<InitialDataSpec>(),
            Err(Error::MalformedProfile(_))
        ));
        let g = Grid1D::new(3.0, 30).unwrap();
        let neg: InitialDataSpec = "cosine-bump(0, 1, 0)".parse().unwrap();
        assert!(matches!(
            neg.sample(&g),
            Err(Error::NegativeInitialData { .. })
        ));
    }

    #[test]
    fn profile_display_round_trips() {
        for s in [
            "cosine-bump(2, 1.5, 0.6)",
            "shifted-parabola(1, 1)",
            "constant(0.5263157894736842)",
            "piecewise-constant(1.5, 0, 3)",
        ] {
            let spec: InitialDataSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            assert_eq!(spec.to_string().parse::<InitialDataSpec>().unwrap(), spec);
        }
    }
}
