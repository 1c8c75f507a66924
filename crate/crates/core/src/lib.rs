//! Finite-difference laboratory for the two-species chemotaxis-competition
//! system with an elliptic (quasi-stationary) signal on a 1D interval.
//!
//! * [`model`]: coefficients, mesh, state, coexistence equilibrium, initial data
//! * [`conditions`]: stability hypotheses with slack
//! * [`elliptic`]: tridiagonal signal solver
//! * [`stepper`]: explicit Euler update for the densities
//! * [`oracle`]: closed-form comparison ODEs and envelope inequalities
//! * [`diagnostics`]: extrema histories and convergence verdicts

// `!(x > 0.0)` is used on purpose: it rejects NaN along with nonpositive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod conditions;
pub mod diagnostics;
pub mod elliptic;
pub mod error;
pub mod model;
pub mod oracle;
pub mod stepper;

pub use conditions::{check_condition_2012, check_theorem1, Bound, ConditionReport};
pub use diagnostics::{estimate_envelope, verdict, ConvergenceVerdict, ExtremaSeries, Tolerances};
pub use elliptic::{EllipticSolver, TridiagonalSystem};
pub use error::{Error, Result};
pub use model::{
    coexistence_steady_state, initial_profile, Grid1D, InitialDataSpec, ModelParams, State,
    SteadyState,
};
pub use oracle::{Envelope, EnvelopeResiduals, LogisticOde};
pub use stepper::{FluxScheme, Stepper, StepperConfig, StiffnessMonitor};
