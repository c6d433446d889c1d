//! Quadrature rules on the reference interval [0, 1].
//!
//! Nodes are seeded from eigenvalues of the symmetric tridiagonal Jacobi
//! matrix of the matching weight and polished by Newton iteration on the
//! defining orthogonal polynomial. Weights come from the analytic
//! Gauss-Legendre formula or, for Lobatto/Radau, from exact integration of
//! the Lagrange cardinals.

use crate::basis::LagrangeBasis;
use crate::error::{Error, Result};
use nalgebra::{DMatrix, SymmetricEigen};

/// Nodes and weights on [0, 1] together with the rule's polynomial exactness.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
    pub exactness_degree: usize,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Integrate `f` over [0, 1].
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Integrate `f` over [a, b].
    pub fn integrate_on(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let k = b - a;
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| k * w * f(a + x * k))
            .sum()
    }

    /// Largest residual of the moment equations int_0^1 tau^m dtau = sum w tau^m
    /// for m up to the stated exactness degree.
    pub fn max_moment_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for m in 0..=self.exactness_degree {
            let approx: f64 = self
                .points
                .iter()
                .zip(&self.weights)
                .map(|(&x, &w)| w * x.powi(m as i32))
                .sum();
            let exact = 1.0 / (m as f64 + 1.0);
            worst = worst.max((approx - exact).abs());
        }
        worst
    }

    /// Text table of the rule, one `point weight` pair per line.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        for (x, w) in self.points.iter().zip(&self.weights) {
            s.push_str(&format!("{x:.16e} {w:.16e}\n"));
        }
        s
    }
}

/// Legendre P_n(x) and its derivative on [-1, 1] via the three-term recurrence.
fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let d = if x.abs() < 1.0 {
        n as f64 * (x * p1 - p0) / (x * x - 1.0)
    } else {
        // P_n'(+-1) = (+-1)^(n-1) n (n+1) / 2
        let sign = if x > 0.0 { 1.0 } else { (-1.0f64).powi(n as i32 - 1) };
        sign * n as f64 * (n as f64 + 1.0) / 2.0
    };
    (p1, d)
}

/// Eigenvalues of the symmetric tridiagonal Jacobi matrix for the weight
/// (1-x)^alpha (1+x)^beta on [-1, 1]; these are the Gauss nodes of that weight.
fn jacobi_matrix_nodes(alpha: f64, beta: f64, m: usize) -> Vec<f64> {
    if m == 0 {
        return Vec::new();
    }
    let mut mat = DMatrix::zeros(m, m);
    let apb = alpha + beta;
    for k in 0..m {
        let kf = k as f64;
        let denom = (2.0 * kf + apb) * (2.0 * kf + apb + 2.0);
        let a = if denom == 0.0 {
            (beta - alpha) / (apb + 2.0)
        } else {
            (beta * beta - alpha * alpha) / denom
        };
        mat[(k, k)] = a;
        if k > 0 {
            let b = 4.0 * kf * (kf + alpha) * (kf + beta) * (kf + apb)
                / ((2.0 * kf + apb).powi(2) * (2.0 * kf + apb + 1.0) * (2.0 * kf + apb - 1.0));
            let off = b.sqrt();
            mat[(k, k - 1)] = off;
            mat[(k - 1, k)] = off;
        }
    }
    let eig = SymmetricEigen::new(mat);
    let mut nodes: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    nodes
}

fn newton_polish(x0: f64, mut f: impl FnMut(f64) -> (f64, f64)) -> f64 {
    let mut x = x0;
    for _ in 0..4 {
        let (v, d) = f(x);
        if d == 0.0 {
            break;
        }
        let step = v / d;
        x -= step;
        if step.abs() < 1e-15 {
            break;
        }
    }
    x
}

fn to_unit(nodes_pm1: &[f64]) -> Vec<f64> {
    nodes_pm1.iter().map(|x| (x + 1.0) / 2.0).collect()
}

/// Weights on [0, 1] by exact integration of the Lagrange cardinals.
fn weights_by_cardinal_integration(points: &[f64]) -> Result<Vec<f64>> {
    let basis = LagrangeBasis::new(points.to_vec())?;
    let g = gauss_rule(points.len().max(1))?;
    let mut w = vec![0.0; points.len()];
    for (&gx, &gw) in g.points.iter().zip(&g.weights) {
        for (ws, v) in w.iter_mut().zip(basis.values(gx)) {
            *ws += gw * v;
        }
    }
    Ok(w)
}

/// Gauss-Legendre rule with `n` points; exact to degree 2n - 1.
pub fn gauss_rule(n: usize) -> Result<QuadratureRule> {
    if n < 1 {
        return Err(Error::InvalidQuadrature(
            "Gauss rule needs at least 1 point".into(),
        ));
    }
    let seeds = jacobi_matrix_nodes(0.0, 0.0, n);
    let mut points = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for s in seeds {
        let x = newton_polish(s, |x| legendre_with_deriv(n, x));
        let (_, d) = legendre_with_deriv(n, x);
        let w = 2.0 / ((1.0 - x * x) * d * d);
        points.push((x + 1.0) / 2.0);
        weights.push(w / 2.0);
    }
    Ok(QuadratureRule {
        points,
        weights,
        exactness_degree: 2 * n - 1,
    })
}

/// Lobatto rule with `n >= 2` points including both endpoints; exact to degree 2n - 3.
pub fn lobatto_rule(n: usize) -> Result<QuadratureRule> {
    if n < 2 {
        return Err(Error::InvalidQuadrature(
            "Lobatto rule needs at least 2 points".into(),
        ));
    }
    let mut nodes = vec![-1.0];
    if n > 2 {
        // interior nodes are the roots of P'_{n-1}, i.e. Gauss-Jacobi(1,1) nodes
        for s in jacobi_matrix_nodes(1.0, 1.0, n - 2) {
            let x = newton_polish(s, |x| {
                let (p, d) = legendre_with_deriv(n - 1, x);
                let m = (n - 1) as f64;
                let dd = (2.0 * x * d - m * (m + 1.0) * p) / (1.0 - x * x);
                (d, dd)
            });
            nodes.push(x);
        }
    }
    nodes.push(1.0);
    let points = to_unit(&nodes);
    let weights = weights_by_cardinal_integration(&points)?;
    Ok(QuadratureRule {
        points,
        weights,
        exactness_degree: 2 * n - 3,
    })
}

/// Right-biased Radau rule with `n >= 1` points including the endpoint 1;
/// exact to degree 2n - 2.
pub fn radau_rule(n: usize) -> Result<QuadratureRule> {
    let left = radau_left_rule(n)?;
    let mut points: Vec<f64> = left.points.iter().rev().map(|x| 1.0 - x).collect();
    let weights: Vec<f64> = left.weights.iter().rev().copied().collect();
    // reflection leaves the fixed endpoint exactly at 1
    if let Some(last) = points.last_mut() {
        *last = 1.0;
    }
    Ok(QuadratureRule {
        points,
        weights,
        exactness_degree: left.exactness_degree,
    })
}

/// Left-biased Radau rule with `n >= 1` points including the endpoint 0;
/// exact to degree 2n - 2.
pub fn radau_left_rule(n: usize) -> Result<QuadratureRule> {
    if n < 1 {
        return Err(Error::InvalidQuadrature(
            "Radau rule needs at least 1 point".into(),
        ));
    }
    let mut nodes = vec![-1.0];
    // free nodes are the roots of the Jacobi(0,1) polynomial of degree n-1
    for s in jacobi_matrix_nodes(0.0, 1.0, n - 1) {
        let x = newton_polish(s, |x| {
            let (pn, dn) = legendre_with_deriv(n, x);
            let (pm, dm) = legendre_with_deriv(n - 1, x);
            (pn + pm, dn + dm)
        });
        nodes.push(x);
    }
    let points = to_unit(&nodes);
    let weights = weights_by_cardinal_integration(&points)?;
    Ok(QuadratureRule {
        points,
        weights,
        exactness_degree: 2 * n - 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn lobatto_two_points() {
        let r = lobatto_rule(2).unwrap();
        assert_eq!(r.points, vec![0.0, 1.0]);
        assert!(close(r.weights[0], 0.5, 1e-15));
        assert!(close(r.weights[1], 0.5, 1e-15));
        assert_eq!(r.exactness_degree, 1);
    }

    #[test]
    fn lobatto_three_points() {
        let r = lobatto_rule(3).unwrap();
        assert!(close(r.points[1], 0.5, 1e-15));
        assert!(close(r.weights[0], 1.0 / 6.0, 1e-15));
        assert!(close(r.weights[1], 2.0 / 3.0, 1e-15));
        assert!(close(r.weights[2], 1.0 / 6.0, 1e-15));
    }

    #[test]
    fn lobatto_four_points() {
        let r = lobatto_rule(4).unwrap();
        let s5 = 5.0f64.sqrt();
        assert!(close(r.points[1], (1.0 - 1.0 / s5) / 2.0, 1e-14));
        assert!(close(r.points[2], (1.0 + 1.0 / s5) / 2.0, 1e-14));
        let expect_w = [1.0 / 12.0, 5.0 / 12.0, 5.0 / 12.0, 1.0 / 12.0];
        for (w, e) in r.weights.iter().zip(expect_w) {
            assert!(close(*w, e, 1e-14));
        }
        assert_eq!(r.exactness_degree, 5);
    }

    #[test]
    fn radau_one_point() {
        let r = radau_rule(1).unwrap();
        assert_eq!(r.points, vec![1.0]);
        assert_eq!(r.weights, vec![1.0]);
        assert_eq!(r.exactness_degree, 0);
    }

    #[test]
    fn radau_two_points() {
        let r = radau_rule(2).unwrap();
        assert!(close(r.points[0], 1.0 / 3.0, 1e-14));
        assert!(close(r.points[1], 1.0, 1e-15));
        assert!(close(r.weights[0], 0.75, 1e-14));
        assert!(close(r.weights[1], 0.25, 1e-14));
    }

    #[test]
    fn radau_three_points() {
        let r = radau_rule(3).unwrap();
        let s6 = 6.0f64.sqrt();
        assert!(close(r.points[0], (4.0 - s6) / 10.0, 1e-14));
        assert!(close(r.points[1], (4.0 + s6) / 10.0, 1e-14));
        assert!(close(r.points[2], 1.0, 1e-15));
        assert!(close(r.weights[0], (16.0 + s6) / 36.0, 1e-14));
        assert!(close(r.weights[1], (16.0 - s6) / 36.0, 1e-14));
        assert!(close(r.weights[2], 1.0 / 9.0, 1e-14));
        assert_eq!(r.exactness_degree, 4);
    }

    #[test]
    fn moment_exactness_all_rules_up_to_eleven() {
        for n in 2..=11 {
            let r = lobatto_rule(n).unwrap();
            assert!(
                r.max_moment_residual() <= 1e-13,
                "lobatto {n}: {}",
                r.max_moment_residual()
            );
            assert!((r.weights.iter().sum::<f64>() - 1.0).abs() <= 1e-14);
        }
        for n in 1..=11 {
            let r = radau_rule(n).unwrap();
            assert!(
                r.max_moment_residual() <= 1e-13,
                "radau {n}: {}",
                r.max_moment_residual()
            );
            assert!((r.weights.iter().sum::<f64>() - 1.0).abs() <= 1e-14);
            let g = gauss_rule(n).unwrap();
            assert!(g.max_moment_residual() <= 1e-13, "gauss {n}");
        }
    }

    #[test]
    fn node_symmetry() {
        for n in 2..=11 {
            let lob = lobatto_rule(n).unwrap();
            for s in 0..n {
                assert!(
                    close(lob.points[s], 1.0 - lob.points[n - 1 - s], 1e-14),
                    "lobatto {n} node {s}"
                );
            }
        }
        for n in 1..=11 {
            let right = radau_rule(n).unwrap();
            let left = radau_left_rule(n).unwrap();
            for s in 0..n {
                assert!(
                    close(right.points[s], 1.0 - left.points[n - 1 - s], 1e-14),
                    "radau {n} node {s}"
                );
            }
        }
    }

    #[test]
    fn invalid_point_counts() {
        assert!(lobatto_rule(1).is_err());
        assert!(lobatto_rule(0).is_err());
        assert!(radau_rule(0).is_err());
        assert!(gauss_rule(0).is_err());
    }

    #[test]
    fn integrate_on_interval() {
        let g = gauss_rule(3).unwrap();
        // int_1^2 x^4 dx = 31/5
        let v = g.integrate_on(1.0, 2.0, |x| x.powi(4));
        assert!(close(v, 31.0 / 5.0, 1e-13));
    }
}
