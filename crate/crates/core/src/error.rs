//! Error type shared by all solver and utility modules.

use thiserror::Error;

/// Errors produced by partition construction, solvers, and verification runs.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A component's step size does not tile the interval it must cover.
    #[error("component {component} step {step} does not tile slab {slab} of [0, {total_time}]")]
    NonTilingStep {
        component: usize,
        slab: usize,
        step: f64,
        total_time: f64,
    },

    /// Invalid problem data (dimension 0, non-positive final time, ...).
    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    /// Invalid solver or study configuration.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A quadrature rule was requested with an unsupported point count.
    #[error("invalid quadrature rule: {0}")]
    InvalidQuadrature(String),

    /// Polynomial degree outside the range an operator supports.
    #[error("invalid degree {degree} for {operation} (minimum {minimum})")]
    InvalidDegree {
        operation: &'static str,
        degree: usize,
        minimum: usize,
    },

    /// Lagrange basis construction with coincident points.
    #[error("duplicate interpolation points at index {0}")]
    DuplicatePoints(usize),

    /// Evaluation time outside the solution's domain.
    #[error("time {time} outside domain (0, {total_time}] (and not 0)")]
    OutOfDomain { time: f64, total_time: f64 },

    /// Pointwise residual requested exactly at an element node.
    #[error("time {time} is a node of component {component}; use a one-sided query")]
    AtNode { component: usize, time: f64 },

    /// The fixed-point iteration failed to reach the tolerance.
    #[error(
        "fixed-point iteration did not converge on slab {slab}: last update {last_update:.3e} \
         after {iterations} iterations{}",
        .contraction_hint.map(|c| format!(" (K*L_f = {c:.3})")).unwrap_or_default()
    )]
    NonConvergence {
        slab: usize,
        last_update: f64,
        iterations: usize,
        contraction_hint: Option<f64>,
    },

    /// The right-hand side or Jacobian produced a non-finite value.
    #[error("non-finite value from {source_name} at t = {time} (component {component})")]
    NonFinite {
        source_name: &'static str,
        component: usize,
        time: f64,
    },

    /// A convergence study whose fit window is too small to fit an order.
    #[error("study invalid: {0}")]
    InvalidStudy(String),

    /// Singular local system while assembling weight functions or interpolants.
    #[error("singular local system in {0}")]
    SingularSystem(&'static str),

    /// Operation needs data that was not supplied (exact solution, C_f, ...).
    #[error("missing input: {0}")]
    MissingInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
