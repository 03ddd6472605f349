//! Gauss–Hermite rules for the weight `e^(-y²)`.
//!
//! Nodes start from the eigenvalues of the Hermite Jacobi matrix
//! (Golub–Welsch) and are polished by Newton steps on `ψ_n`. Weights use
//! the Christoffel–Darboux form `w_i = e^(-y_i²) / (n ψ_{n-1}(y_i)²)`,
//! which keeps full relative accuracy in the tails where eigenvector
//! components underflow.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::hermite::hermite_functions;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussHermiteRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    // w_i e^(y_i²), for integrands that already contain the Gaussian
    scaled_weights: Vec<f64>,
}

pub fn gauss_hermite_rule(order: usize) -> Result<GaussHermiteRule> {
    GaussHermiteRule::new(order)
}

impl GaussHermiteRule {
    pub fn new(order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidSpec(format!(
                "Gauss-Hermite order must be >= 2, got {order}"
            )));
        }
        let n = order;
        let mut jacobi = DMatrix::<f64>::zeros(n, n);
        for k in 1..n {
            let b = (k as f64 / 2.0).sqrt();
            jacobi[(k, k - 1)] = b;
            jacobi[(k - 1, k)] = b;
        }
        let eig = SymmetricEigen::try_new(jacobi, f64::EPSILON, 10_000).ok_or(Error::ConvergenceFailure { order })?;
        let mut nodes: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        nodes.sort_by(f64::total_cmp);

        let mut psi = vec![0.0; n + 1];
        let nf = n as f64;
        for y in nodes.iter_mut() {
            for _ in 0..3 {
                hermite_functions(*y, &mut psi);
                let d = (2.0 * nf).sqrt() * psi[n - 1] - *y * psi[n];
                if d == 0.0 {
                    break;
                }
                let step = psi[n] / d;
                *y -= step;
                if step.abs() <= 1e-16 * y.abs().max(1.0) {
                    break;
                }
            }
        }
        for i in 0..n / 2 {
            let m = 0.5 * (nodes[n - 1 - i] - nodes[i]);
            nodes[i] = -m;
            nodes[n - 1 - i] = m;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }

        let mut weights = Vec::with_capacity(n);
        let mut scaled_weights = Vec::with_capacity(n);
        for &y in &nodes {
            hermite_functions(y, &mut psi[..n]);
            let sw = (nf * psi[n - 1] * psi[n - 1]).recip();
            scaled_weights.push(sw);
            weights.push(sw * (-y * y).exp());
        }
        Ok(Self {
            nodes,
            weights,
            scaled_weights,
        })
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `∫ f(y) e^(-y²) dy`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&y, &w)| w * f(y)).sum()
    }

    /// `∫ f(a) da` for an integrand carrying its own factor `e^(-scale·a²)`.
    pub fn integrate_moment_1d<F: FnMut(f64) -> f64>(&self, mut f: F, scale: f64) -> f64 {
        let s = scale.sqrt();
        let sum: f64 = self
            .nodes
            .iter()
            .zip(&self.scaled_weights)
            .map(|(&y, &w)| w * f(y / s))
            .sum();
        sum / s
    }

    pub(crate) fn scaled_weights(&self) -> &[f64] {
        &self.scaled_weights
    }
}

/// `∬ f(a, b) da db` for an integrand carrying `e^(-scale(a² + b²))`,
/// by the tensor-product rule.
pub fn integrate_moment_2d<F: FnMut(f64, f64) -> f64>(mut f: F, rule: &GaussHermiteRule, gaussian_scale: f64) -> f64 {
    let s = gaussian_scale.sqrt();
    let mut total = 0.0;
    for (&ya, &wa) in rule.nodes().iter().zip(rule.scaled_weights()) {
        let a = ya / s;
        let row: f64 = rule
            .nodes()
            .iter()
            .zip(rule.scaled_weights())
            .map(|(&yb, &wb)| wb * f(a, yb / s))
            .sum();
        total += wa * row;
    }
    total / gaussian_scale
}
