//! Physicists' Hermite polynomials and the normalized Hermite functions
//! `ψ_n(y) = (2^n n! √π)^(-1/2) H_n(y) e^(-y²/2)`.
//!
//! The functions are generated by their own three-term recurrence so the
//! Gaussian factor is carried along and nothing overflows for large `n`.

/// π^(-1/4).
pub const PI_POW_NEG_QUARTER: f64 = 0.751_125_544_464_942_5;

/// `H_n(y)` by upward recurrence `H_{k+1} = 2y H_k - 2k H_{k-1}`.
pub fn hermite(n: usize, y: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * y;
    for k in 1..n {
        let next = 2.0 * y * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Fills `out[k] = ψ_k(y)` for `k < out.len()`.
pub fn hermite_functions(y: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = PI_POW_NEG_QUARTER * (-0.5 * y * y).exp();
    if out.len() > 1 {
        out[1] = std::f64::consts::SQRT_2 * y * out[0];
    }
    for k in 1..out.len().saturating_sub(1) {
        let kf = k as f64;
        out[k + 1] = (2.0 / (kf + 1.0)).sqrt() * y * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
    }
}

/// `ψ_n(y)` alone.
pub fn hermite_function(n: usize, y: f64) -> f64 {
    let mut buf = vec![0.0; n + 1];
    hermite_functions(y, &mut buf);
    buf[n]
}

/// Monomial coefficients of `H_n`, lowest degree first.
pub fn hermite_coefficients(n: usize) -> Vec<f64> {
    let mut prev = vec![1.0];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![0.0, 2.0];
    for k in 1..n {
        let mut next = vec![0.0; k + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += 2.0 * c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= 2.0 * k as f64 * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// A fixed-order Hermite evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HermiteEval {
    order: usize,
}

impl HermiteEval {
    pub fn new(order: usize) -> Self {
        Self { order }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self, y: f64) -> f64 {
        hermite(self.order, y)
    }

    /// Normalized Hermite function `ψ_n(y)`.
    pub fn function(&self, y: f64) -> f64 {
        hermite_function(self.order, y)
    }
}
