//! Explicit Euler time stepping for the two densities.
//!
//! Diffusion and chemotactic drift are discretized together in conservative
//! form. At interface `i+1/2` the flux is
//!
//! ```text
//! G = d (f[i+1] - f[i]) / dx - chi * rho * (w[i+1] - w[i]) / dx
//! ```
//!
//! with `rho` the central average or the upwind donor value. Boundary nodes
//! own half cells and the wall flux is zero, which is the same as mirroring
//! the ghost node (`f[-1] = f[1]`, `w[-1] = w[1]`).

use serde::{Deserialize, Serialize};

use crate::elliptic::EllipticSolver;
use crate::error::{Error, Result};
use crate::model::{Grid1D, ModelParams, State};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FluxScheme {
    #[default]
    Central,
    Upwind,
}

impl std::str::FromStr for FluxScheme {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "central" => Ok(Self::Central),
            "upwind" => Ok(Self::Upwind),
            other => Err(format!("unknown flux scheme `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StepperConfig {
    pub dt: f64,
    pub flux_scheme: FluxScheme,
    /// Set negative densities to zero after each step (and count them).
    pub positivity_clip: bool,
    /// Fraction of the diffusive limit `dx^2 / (2 max(d1, d2))` allowed for `dt`.
    pub cfl_safety: f64,
    /// Skip the diffusive stability check.
    pub allow_unstable_dt: bool,
}

impl Default for StepperConfig {
    fn default() -> Self {
        Self {
            dt: 1e-5,
            flux_scheme: FluxScheme::Central,
            positivity_clip: false,
            cfl_safety: 0.9,
            allow_unstable_dt: false,
        }
    }
}

impl StepperConfig {
    pub fn with_dt(dt: f64) -> Self {
        Self {
            dt,
            ..Self::default()
        }
    }

    /// Largest admissible `dt` for this grid and these diffusion rates.
    pub fn dt_limit(&self, g: &Grid1D, p: &ModelParams) -> f64 {
        let dx = g.dx();
        self.cfl_safety * dx * dx / (2.0 * p.d1.max(p.d2))
    }

    pub fn validate(&self, g: &Grid1D, p: &ModelParams) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidParameter {
                name: "dt",
                value: self.dt,
                reason: "must be finite and > 0",
            });
        }
        if !(self.cfl_safety > 0.0 && self.cfl_safety <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "cfl_safety",
                value: self.cfl_safety,
                reason: "must lie in (0, 1]",
            });
        }
        let limit = self.dt_limit(g, p);
        if !self.allow_unstable_dt && self.dt > limit {
            return Err(Error::StepTooLarge { dt: self.dt, limit });
        }
        Ok(())
    }
}

/// Writes `(G[i+1/2] - G[i-1/2]) / dx` into `out` (boundary rows doubled).
#[inline]
fn flux_balance(
    f: &[f64],
    w: &[f64],
    diffusion: f64,
    chi: f64,
    inv_dx: f64,
    scheme: FluxScheme,
    out: &mut [f64],
) {
    let n = f.len();
    let mut left = 0.0;
    for i in 0..n - 1 {
        let dw = w[i + 1] - w[i];
        let rho = match scheme {
            FluxScheme::Central => 0.5 * (f[i] + f[i + 1]),
            FluxScheme::Upwind => {
                if dw > 0.0 {
                    f[i]
                } else {
                    f[i + 1]
                }
            }
        };
        let right = (diffusion * (f[i + 1] - f[i]) - chi * rho * dw) * inv_dx;
        out[i] = if i == 0 {
            2.0 * right * inv_dx
        } else {
            (right - left) * inv_dx
        };
        left = right;
    }
    out[n - 1] = -2.0 * left * inv_dx;
}

/// Discrete `chi * (dens * w')'` in conservative form.
///
/// The trapezoid-weighted sum of the result is zero for any input.
pub fn chemotaxis_divergence(
    dens: &[f64],
    w: &[f64],
    chi: f64,
    g: &Grid1D,
    scheme: FluxScheme,
) -> Result<Vec<f64>> {
    g.check_len(dens.len())?;
    g.check_len(w.len())?;
    let mut out = vec![0.0; g.len()];
    flux_balance(dens, w, 0.0, chi, 1.0 / g.dx(), scheme, &mut out);
    for x in &mut out {
        *x = -*x;
    }
    Ok(out)
}

/// Three-point Laplacian with mirrored-ghost Neumann ends.
pub fn laplacian(f: &[f64], g: &Grid1D) -> Result<Vec<f64>> {
    g.check_len(f.len())?;
    let mut out = vec![0.0; g.len()];
    flux_balance(f, f, 1.0, 0.0, 1.0 / g.dx(), FluxScheme::Central, &mut out);
    Ok(out)
}

/// Runtime indicators of advective and reaction stiffness, scaled by `dt`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct StiffnessMonitor {
    /// `max |chi * w'| * dt / dx` over both species and all interfaces.
    pub advective_courant: f64,
    /// `max ||J||_inf * dt` over nodes, `J` the kinetic Jacobian.
    pub reaction_stiffness: f64,
}

/// Owns the cached signal solver and step buffers for one simulation.
#[derive(Debug, Clone)]
pub struct Stepper {
    params: ModelParams,
    grid: Grid1D,
    config: StepperConfig,
    solver: EllipticSolver,
    u_next: Vec<f64>,
    v_next: Vec<f64>,
    clip_events: u64,
    steps: u64,
}

impl Stepper {
    pub fn new(params: ModelParams, grid: Grid1D, config: StepperConfig) -> Result<Self> {
        params.validate()?;
        config.validate(&grid, &params)?;
        let solver = EllipticSolver::new(&params, &grid)?;
        let n = grid.len();
        Ok(Self {
            params,
            grid,
            config,
            solver,
            u_next: vec![0.0; n],
            v_next: vec![0.0; n],
            clip_events: 0,
            steps: 0,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn config(&self) -> &StepperConfig {
        &self.config
    }

    pub fn solver(&self) -> &EllipticSolver {
        &self.solver
    }

    /// Number of density entries set to zero by positivity clipping so far.
    pub fn clip_events(&self) -> u64 {
        self.clip_events
    }

    pub fn steps_taken(&self) -> u64 {
        self.steps
    }

    /// Recomputes `w` from the current densities.
    pub fn sync_signal(&self, s: &mut State) -> Result<()> {
        self.solver.solve_into(&s.u, &s.v, &mut s.w)
    }

    /// Advances `s` by one step of size `dt`.
    ///
    /// On a non-finite result the densities are left at their values from
    /// before the step.
    pub fn step(&mut self, s: &mut State) -> Result<()> {
        s.check(&self.grid)?;
        self.sync_signal(s)?;
        let p = &self.params;
        let dt = self.config.dt;
        let inv_dx = 1.0 / self.grid.dx();
        let scheme = self.config.flux_scheme;

        flux_balance(&s.u, &s.w, p.d1, p.chi1, inv_dx, scheme, &mut self.u_next);
        flux_balance(&s.v, &s.w, p.d2, p.chi2, inv_dx, scheme, &mut self.v_next);

        let t_new = s.t + dt;
        for i in 0..s.u.len() {
            let (u, v) = (s.u[i], s.v[i]);
            let un = u + dt * (self.u_next[i] + p.mu1 * u * (1.0 - u - p.a1 * v));
            let vn = v + dt * (self.v_next[i] + p.mu2 * v * (1.0 - p.a2 * u - v));
            if !un.is_finite() {
                return Err(Error::NonFinite {
                    field: "u",
                    index: i,
                    t: t_new,
                });
            }
            if !vn.is_finite() {
                return Err(Error::NonFinite {
                    field: "v",
                    index: i,
                    t: t_new,
                });
            }
            self.u_next[i] = un;
            self.v_next[i] = vn;
        }

        if self.config.positivity_clip {
            for x in self.u_next.iter_mut().chain(self.v_next.iter_mut()) {
                if *x < 0.0 {
                    *x = 0.0;
                    self.clip_events += 1;
                }
            }
        }

        std::mem::swap(&mut s.u, &mut self.u_next);
        std::mem::swap(&mut s.v, &mut self.v_next);
        s.t = t_new;
        self.steps += 1;
        Ok(())
    }

    /// Takes `n` steps.
    pub fn step_n(&mut self, s: &mut State, n: u64) -> Result<()> {
        for _ in 0..n {
            self.step(s)?;
        }
        Ok(())
    }

    /// Stiffness indicators for `s`; `s.w` is expected to be in sync.
    pub fn monitor(&self, s: &State) -> StiffnessMonitor {
        let p = &self.params;
        let dt = self.config.dt;
        let dx = self.grid.dx();
        let chi = p.chi1.max(p.chi2);
        let advective_courant =
            s.w.windows(2)
                .map(|pair| (chi * (pair[1] - pair[0]) / dx).abs() * dt / dx)
                .fold(0.0, f64::max);
        let reaction_stiffness = s
            .u
            .iter()
            .zip(&s.v)
            .map(|(&u, &v)| {
                let row1 = (p.mu1 * (1.0 - 2.0 * u - p.a1 * v)).abs() + (p.mu1 * p.a1 * u).abs();
                let row2 = (p.mu2 * p.a2 * v).abs() + (p.mu2 * (1.0 - p.a2 * u - 2.0 * v)).abs();
                row1.max(row2) * dt
            })
            .fold(0.0, f64::max);
        StiffnessMonitor {
            advective_courant,
            reaction_stiffness,
        }
    }
}

/// One explicit Euler step without a persistent [`Stepper`].
///
/// The returned state carries the signal used for the step.
pub fn step(
    s: &State,
    p: &ModelParams,
    g: &Grid1D,
    cfg: &StepperConfig,
    solver: &EllipticSolver,
) -> Result<State> {
    s.check(g)?;
    let mut next = s.clone();
    solver.solve_into(&s.u, &s.v, &mut next.w)?;
    let inv_dx = 1.0 / g.dx();
    let mut tu = vec![0.0; g.len()];
    let mut tv = vec![0.0; g.len()];
    flux_balance(
        &s.u,
        &next.w,
        p.d1,
        p.chi1,
        inv_dx,
        cfg.flux_scheme,
        &mut tu,
    );
    flux_balance(
        &s.v,
        &next.w,
        p.d2,
        p.chi2,
        inv_dx,
        cfg.flux_scheme,
        &mut tv,
    );
    next.t = s.t + cfg.dt;
    for i in 0..g.len() {
        let (u, v) = (s.u[i], s.v[i]);
        let mut un = u + cfg.dt * (tu[i] + p.mu1 * u * (1.0 - u - p.a1 * v));
        let mut vn = v + cfg.dt * (tv[i] + p.mu2 * v * (1.0 - p.a2 * u - v));
        if !un.is_finite() {
            return Err(Error::NonFinite {
                field: "u",
                index: i,
                t: next.t,
            });
        }
        if !vn.is_finite() {
            return Err(Error::NonFinite {
                field: "v",
                index: i,
                t: next.t,
            });
        }
        if cfg.positivity_clip {
            un = un.max(0.0);
            vn = vn.max(0.0);
        }
        next.u[i] = un;
        next.v[i] = vn;
    }
    Ok(next)
}
