//! Builtin benchmark problems.

use crate::partition::Ratio;
use crate::problem::OdeProblem;
use nalgebra::DMatrix;
use std::sync::Arc;

pub type ExactFn = dyn Fn(f64) -> Vec<f64> + Send + Sync;

/// A registered problem: the ODE, its exact solution when known, and the
/// default step ratios used by the benchmark runs.
#[derive(Clone)]
pub struct BuiltinProblem {
    pub id: &'static str,
    pub problem: OdeProblem,
    pub exact: Option<Arc<ExactFn>>,
    pub default_ratios: Vec<Ratio>,
    /// Decay rate for the scalar linear problem, when applicable.
    pub decay_rate: Option<f64>,
}

/// Coupled 6-component oscillator on [0, 1] with initial state (0,1,0,2,0,3):
///
///   u1' = u2           u3' = -u2 + 2 u4          u5' = -u2 - 2 u4 + 4 u6
///   u2' = -u1          u4' =  u1 - 2 u3          u6' =  u1 + 2 u3 - 4 u5
///
/// The exact solution stacks sin/cos waves of frequencies 1, 2 and 4, so the
/// natural step ratios are (1, 1, 1/2, 1/2, 1/4, 1/4).
pub fn test6(final_time: f64) -> BuiltinProblem {
    let matrix = [
        [0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 2.0, 0.0, 0.0],
        [1.0, 0.0, -2.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, -2.0, 0.0, 4.0],
        [1.0, 0.0, 2.0, 0.0, -4.0, 0.0],
    ];
    let problem = OdeProblem::new(vec![0.0, 1.0, 0.0, 2.0, 0.0, 3.0], final_time, move |u, _, f| {
        for (row, fr) in matrix.iter().zip(f.iter_mut()) {
            *fr = row.iter().zip(u).map(|(a, x)| a * x).sum();
        }
    })
    .expect("test6 problem is well formed")
    .with_jacobian(move |_, _, j| {
        for (r, row) in matrix.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                j[(r, c)] = *v;
            }
        }
    })
    .with_lipschitz_hint(7.0);
    BuiltinProblem {
        id: "test6",
        problem,
        exact: Some(Arc::new(|t: f64| {
            vec![
                t.sin(),
                t.cos(),
                t.sin() + (2.0 * t).sin(),
                t.cos() + (2.0 * t).cos(),
                t.sin() + (2.0 * t).sin() + (4.0 * t).sin(),
                t.cos() + (2.0 * t).cos() + (4.0 * t).cos(),
            ]
        })),
        default_ratios: vec![
            Ratio::ONE,
            Ratio::ONE,
            Ratio::new(1, 2).unwrap(),
            Ratio::new(1, 2).unwrap(),
            Ratio::new(1, 4).unwrap(),
            Ratio::new(1, 4).unwrap(),
        ],
        decay_rate: None,
    }
}

/// Scalar decay u' = -lambda u, u(0) = 1, with exact solution e^(-lambda t).
pub fn decay(lambda: f64, final_time: f64) -> BuiltinProblem {
    let problem = OdeProblem::new(vec![1.0], final_time, move |u, _, f| f[0] = -lambda * u[0])
        .expect("decay problem is well formed")
        .with_jacobian(move |_, _, j: &mut DMatrix<f64>| j[(0, 0)] = -lambda)
        .with_lipschitz_hint(lambda.abs());
    BuiltinProblem {
        id: "decay",
        problem,
        exact: Some(Arc::new(move |t: f64| vec![(-lambda * t).exp()])),
        default_ratios: vec![Ratio::ONE],
        decay_rate: Some(lambda),
    }
}

/// Look up a builtin problem by id with default parameters (T defaults to 1).
pub fn builtin(id: &str, final_time: f64) -> Option<BuiltinProblem> {
    match id {
        "test6" => Some(test6(final_time)),
        "decay" => Some(decay(1.0, final_time)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test6_exact_solution_satisfies_ode() {
        let b = test6(1.0);
        let exact = b.exact.as_ref().unwrap();
        let h = 1e-6;
        for &t in &[0.2, 0.5, 0.9] {
            let u = exact(t);
            let mut f = vec![0.0; 6];
            b.problem.rhs(&u, t, &mut f);
            let up = exact(t + h);
            let um = exact(t - h);
            for i in 0..6 {
                let du = (up[i] - um[i]) / (2.0 * h);
                assert!((du - f[i]).abs() < 1e-8, "component {i} at t={t}");
            }
        }
    }

    #[test]
    fn test6_final_values() {
        let exact = test6(1.0).exact.unwrap();
        let u = exact(1.0);
        assert!((u[0] - 1.0f64.sin()).abs() < 1e-15);
        assert!((u[3] - (1.0f64.cos() + 2.0f64.cos())).abs() < 1e-15);
        assert!((u[5] - (1.0f64.cos() + 2.0f64.cos() + 4.0f64.cos())).abs() < 1e-15);
    }

    #[test]
    fn decay_exact() {
        let b = decay(2.0, 1.0);
        let exact = b.exact.unwrap();
        assert!((exact(0.5)[0] - (-1.0f64).exp()).abs() < 1e-15);
    }
}
