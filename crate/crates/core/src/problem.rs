//! ODE initial value problem description.

use crate::error::{Error, Result};
use nalgebra::DMatrix;
use std::sync::Arc;

pub type RhsFn = dyn Fn(&[f64], f64, &mut [f64]) + Send + Sync;
pub type JacobianFn = dyn Fn(&[f64], f64, &mut DMatrix<f64>) + Send + Sync;

/// The initial value problem u'(t) = f(u(t), t) on (0, T], u(0) = u0.
#[derive(Clone)]
pub struct OdeProblem {
    dim: usize,
    rhs: Arc<RhsFn>,
    jacobian: Option<Arc<JacobianFn>>,
    u0: Vec<f64>,
    final_time: f64,
    lipschitz_hint: Option<f64>,
}

impl std::fmt::Debug for OdeProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OdeProblem")
            .field("dim", &self.dim)
            .field("u0", &self.u0)
            .field("final_time", &self.final_time)
            .field("has_jacobian", &self.jacobian.is_some())
            .field("lipschitz_hint", &self.lipschitz_hint)
            .finish()
    }
}

impl OdeProblem {
    pub fn new(
        u0: Vec<f64>,
        final_time: f64,
        rhs: impl Fn(&[f64], f64, &mut [f64]) + Send + Sync + 'static,
    ) -> Result<Self> {
        let dim = u0.len();
        if dim == 0 {
            return Err(Error::InvalidProblem("dimension must be positive".into()));
        }
        if !(final_time > 0.0) || !final_time.is_finite() {
            return Err(Error::InvalidProblem(format!(
                "final time {final_time} must be positive and finite"
            )));
        }
        let problem = OdeProblem {
            dim,
            rhs: Arc::new(rhs),
            jacobian: None,
            u0,
            final_time,
            lipschitz_hint: None,
        };
        // f must be finite at the initial state
        let mut probe = vec![0.0; dim];
        (problem.rhs)(&problem.u0, 0.0, &mut probe);
        if probe.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidProblem(
                "f(u0, 0) is not finite".into(),
            ));
        }
        Ok(problem)
    }

    pub fn with_jacobian(
        mut self,
        jacobian: impl Fn(&[f64], f64, &mut DMatrix<f64>) + Send + Sync + 'static,
    ) -> Self {
        self.jacobian = Some(Arc::new(jacobian));
        self
    }

    pub fn with_lipschitz_hint(mut self, l: f64) -> Self {
        self.lipschitz_hint = Some(l);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn u0(&self) -> &[f64] {
        &self.u0
    }

    pub fn final_time(&self) -> f64 {
        self.final_time
    }

    pub fn lipschitz_hint(&self) -> Option<f64> {
        self.lipschitz_hint
    }

    pub fn has_jacobian(&self) -> bool {
        self.jacobian.is_some()
    }

    /// Evaluate f into `out`.
    pub fn rhs(&self, state: &[f64], t: f64, out: &mut [f64]) {
        (self.rhs)(state, t, out);
    }

    /// Evaluate one component of f.
    pub fn rhs_component(&self, state: &[f64], t: f64, i: usize, scratch: &mut [f64]) -> f64 {
        (self.rhs)(state, t, scratch);
        scratch[i]
    }

    /// Jacobian of f at (state, t): analytic if supplied, otherwise central
    /// finite differences with step 1e-7 * (1 + |state_j|) per column.
    pub fn jacobian(&self, state: &[f64], t: f64, out: &mut DMatrix<f64>) -> Result<()> {
        debug_assert_eq!(out.nrows(), self.dim);
        debug_assert_eq!(out.ncols(), self.dim);
        if let Some(j) = &self.jacobian {
            j(state, t, out);
        } else {
            let n = self.dim;
            let mut xp = state.to_vec();
            let mut fp = vec![0.0; n];
            let mut fm = vec![0.0; n];
            for col in 0..n {
                let h = 1e-7 * (1.0 + state[col].abs());
                xp[col] = state[col] + h;
                (self.rhs)(&xp, t, &mut fp);
                xp[col] = state[col] - h;
                (self.rhs)(&xp, t, &mut fm);
                xp[col] = state[col];
                for row in 0..n {
                    out[(row, col)] = (fp[row] - fm[row]) / (2.0 * h);
                }
            }
        }
        for v in out.iter() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    source_name: "jacobian",
                    component: 0,
                    time: t,
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_problems() {
        assert!(OdeProblem::new(vec![], 1.0, |_, _, _| {}).is_err());
        assert!(OdeProblem::new(vec![1.0], 0.0, |_, _, _| {}).is_err());
        assert!(OdeProblem::new(vec![1.0], f64::NAN, |_, _, _| {}).is_err());
    }

    #[test]
    fn rejects_non_finite_initial_rhs() {
        let r = OdeProblem::new(vec![0.0], 1.0, |u, _, f| f[0] = 1.0 / u[0]);
        assert!(r.is_err());
    }

    #[test]
    fn finite_difference_jacobian_matches_analytic() {
        let p = OdeProblem::new(vec![1.0, 2.0], 1.0, |u, _, f| {
            f[0] = u[0] * u[0] + u[1];
            f[1] = -3.0 * u[0];
        })
        .unwrap();
        let mut j = DMatrix::zeros(2, 2);
        p.jacobian(&[1.0, 2.0], 0.0, &mut j).unwrap();
        assert!((j[(0, 0)] - 2.0).abs() < 1e-6);
        assert!((j[(0, 1)] - 1.0).abs() < 1e-6);
        assert!((j[(1, 0)] + 3.0).abs() < 1e-6);
        assert!(j[(1, 1)].abs() < 1e-6);
    }
}
