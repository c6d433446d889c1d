//! Lagrange nodal bases on the reference interval [0, 1].

use crate::error::{Error, Result};

/// A Lagrange cardinal basis on a set of distinct points in [0, 1].
///
/// `values(tau)` returns all cardinal functions L_m(tau), which satisfy
/// L_m(x_r) = delta_{mr}; `derivatives(tau)` returns L_m'(tau).
#[derive(Debug, Clone, PartialEq)]
pub struct LagrangeBasis {
    points: Vec<f64>,
}

impl LagrangeBasis {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        for i in 0..points.len() {
            for j in 0..i {
                if points[i] == points[j] {
                    return Err(Error::DuplicatePoints(i));
                }
            }
        }
        if points.is_empty() {
            return Err(Error::InvalidDegree {
                operation: "lagrange_basis",
                degree: 0,
                minimum: 1,
            });
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Polynomial degree represented by this basis.
    pub fn degree(&self) -> usize {
        self.points.len() - 1
    }

    /// Cardinal function values at `tau`.
    pub fn values(&self, tau: f64) -> Vec<f64> {
        let n = self.points.len();
        let mut out = vec![1.0; n];
        for m in 0..n {
            for r in 0..n {
                if r != m {
                    out[m] *= (tau - self.points[r]) / (self.points[m] - self.points[r]);
                }
            }
        }
        out
    }

    /// Cardinal function derivatives at `tau`.
    pub fn derivatives(&self, tau: f64) -> Vec<f64> {
        let n = self.points.len();
        let mut out = vec![0.0; n];
        for m in 0..n {
            let mut sum = 0.0;
            for r in 0..n {
                if r == m {
                    continue;
                }
                let mut prod = 1.0 / (self.points[m] - self.points[r]);
                for l in 0..n {
                    if l != m && l != r {
                        prod *= (tau - self.points[l]) / (self.points[m] - self.points[l]);
                    }
                }
                sum += prod;
            }
            out[m] = sum;
        }
        out
    }

    /// Evaluate the polynomial with nodal coefficients `coeffs` at `tau`.
    pub fn eval(&self, coeffs: &[f64], tau: f64) -> f64 {
        self.values(tau)
            .iter()
            .zip(coeffs)
            .map(|(l, c)| l * c)
            .sum()
    }

    /// Evaluate the derivative of the polynomial with nodal coefficients `coeffs` at `tau`.
    pub fn eval_deriv(&self, coeffs: &[f64], tau: f64) -> f64 {
        self.derivatives(tau)
            .iter()
            .zip(coeffs)
            .map(|(l, c)| l * c)
            .sum()
    }
}

/// Shifted Legendre polynomial P_r(2 tau - 1) on [0, 1], evaluated by the
/// three-term recurrence. Orthogonal test basis for local Galerkin systems.
pub fn legendre01(r: usize, tau: f64) -> f64 {
    let x = 2.0 * tau - 1.0;
    let mut p0 = 1.0;
    if r == 0 {
        return p0;
    }
    let mut p1 = x;
    for k in 1..r {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Antiderivative int_0^tau P_r(2 s - 1) ds of the shifted Legendre polynomial.
///
/// For r >= 1 this is (P_{r+1} - P_{r-1})(2 tau - 1) / (2 (2 r + 1)); the
/// boundary terms at tau = 0 cancel by parity. For r = 0 it is tau.
pub fn legendre01_antideriv(r: usize, tau: f64) -> f64 {
    if r == 0 {
        return tau;
    }
    (legendre01(r + 1, tau) - legendre01(r - 1, tau)) / (2.0 * (2.0 * r as f64 + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_values() {
        let b = LagrangeBasis::new(vec![0.0, 1.0]).unwrap();
        let v = b.values(0.25);
        assert!((v[0] - 0.75).abs() < 1e-15);
        assert!((v[1] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn cardinal_identity_at_nodes() {
        let b = LagrangeBasis::new(vec![0.0, 0.3, 0.7, 1.0]).unwrap();
        for (m, &x) in b.points().to_vec().iter().enumerate() {
            let v = b.values(x);
            for (r, &vr) in v.iter().enumerate() {
                let expect = if r == m { 1.0 } else { 0.0 };
                assert!((vr - expect).abs() < 1e-13, "L_{r}({x}) = {vr}");
            }
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        // central differences, step 1e-6, tolerance 1e-6
        let b = LagrangeBasis::new(vec![0.0, 0.5, 1.0]).unwrap();
        let tau = 0.5;
        let h = 1e-6;
        let d = b.derivatives(tau);
        let vp = b.values(tau + h);
        let vm = b.values(tau - h);
        for m in 0..3 {
            let fd = (vp[m] - vm[m]) / (2.0 * h);
            assert!((d[m] - fd).abs() < 1e-6, "m = {m}: {} vs {}", d[m], fd);
        }
        // frozen values for the midpoint of the (0, 1/2, 1) basis
        assert!((d[0] - (-1.0)).abs() < 1e-13);
        assert!(d[1].abs() < 1e-13);
        assert!((d[2] - 1.0).abs() < 1e-13);
    }

    #[test]
    fn duplicate_points_rejected() {
        assert!(matches!(
            LagrangeBasis::new(vec![0.0, 0.5, 0.5]),
            Err(Error::DuplicatePoints(2))
        ));
    }

    #[test]
    fn legendre_orthogonality_spot_check() {
        // int_0^1 P_2 P_3 = 0, int_0^1 P_2^2 = 1/5
        let n = 64;
        let mut dot = 0.0;
        let mut nrm = 0.0;
        for s in 0..n {
            let tau = (s as f64 + 0.5) / n as f64;
            dot += legendre01(2, tau) * legendre01(3, tau) / n as f64;
            nrm += legendre01(2, tau) * legendre01(2, tau) / n as f64;
        }
        assert!(dot.abs() < 1e-3);
        assert!((nrm - 0.2).abs() < 1e-3);
    }

    #[test]
    fn legendre_antideriv_derivative_consistency() {
        let h = 1e-6;
        for r in 0..6 {
            for &tau in &[0.1, 0.37, 0.82] {
                let fd = (legendre01_antideriv(r, tau + h) - legendre01_antideriv(r, tau - h))
                    / (2.0 * h);
                assert!((fd - legendre01(r, tau)).abs() < 1e-7);
            }
        }
        for r in 0..6 {
            assert_eq!(legendre01_antideriv(r, 0.0), 0.0);
        }
    }
}
