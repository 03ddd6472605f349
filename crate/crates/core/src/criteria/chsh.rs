//! Maximal CHSH value under pseudo-Pauli observables.
//!
//! The pseudo-spin operators pair the Fock levels `(2k, 2k+1)` of each
//! mode. Optimizing the four measurement directions in closed form gives
//! `2√(u₁ + u₂)` with `u₁ ≥ u₂` the two largest eigenvalues of `TᵀT`.

use std::collections::BTreeMap;

use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Criterion, CriterionResult};
use crate::state::FockState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PseudoPauli {
    X,
    Y,
    Z,
}

impl PseudoPauli {
    pub const ALL: [PseudoPauli; 3] = [PseudoPauli::X, PseudoPauli::Y, PseudoPauli::Z];

    /// `σ|n⟩ = factor · |m⟩`.
    pub fn apply(self, n: usize) -> (usize, Complex64) {
        let even = n.is_multiple_of(2);
        let partner = if even { n + 1 } else { n - 1 };
        match self {
            PseudoPauli::X => (partner, Complex64::new(1.0, 0.0)),
            PseudoPauli::Y => (partner, Complex64::new(0.0, if even { 1.0 } else { -1.0 })),
            PseudoPauli::Z => (n, Complex64::new(if even { 1.0 } else { -1.0 }, 0.0)),
        }
    }
}

/// `t[i][j] = ⟨Ψ| σ_i ⊗ σ_j |Ψ⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    pub t: [[f64; 3]; 3],
}

impl CorrelationMatrix {
    fn matrix(&self) -> Matrix3<f64> {
        Matrix3::from_fn(|i, j| self.t[i][j])
    }

    /// Eigenvalues of `TᵀT`, descending.
    pub fn gram_eigenvalues(&self) -> [f64; 3] {
        let t = self.matrix();
        let mut ev: Vec<f64> = (t.transpose() * t)
            .symmetric_eigenvalues()
            .iter()
            .map(|v| v.max(0.0))
            .collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        [ev[0], ev[1], ev[2]]
    }
}

pub fn correlation_matrix(state: &FockState) -> CorrelationMatrix {
    let coeffs: BTreeMap<(usize, usize), Complex64> = state.terms().iter().map(|t| ((t.n1, t.n2), t.amp)).collect();
    let mut t = [[0.0; 3]; 3];
    for (i, si) in PseudoPauli::ALL.iter().enumerate() {
        for (j, sj) in PseudoPauli::ALL.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (&(n1, n2), &amp) in &coeffs {
                let (m1, f1) = si.apply(n1);
                let (m2, f2) = sj.apply(n2);
                if let Some(bra) = coeffs.get(&(m1, m2)) {
                    acc += bra.conj() * amp * f1 * f2;
                }
            }
            t[i][j] = acc.re;
        }
    }
    CorrelationMatrix { t }
}

pub fn chsh_max(state: &FockState) -> CriterionResult {
    let corr = correlation_matrix(state);
    let u = corr.gram_eigenvalues();
    let value = 2.0 * (u[0] + u[1]).sqrt();
    let mut components = BTreeMap::new();
    for (k, uk) in u.iter().enumerate() {
        components.insert(format!("t_singular_{}", k + 1), uk.sqrt());
    }
    CriterionResult::new(Criterion::Chsh, value, components, false)
}
