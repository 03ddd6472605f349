//! Two-mode wavefunctions as finite superpositions of Fock products
//! `Σ c_{n1 n2} φ(n1, a) φ(n2, b)`, evaluated in either quadrature.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermite::{hermite_coefficients, hermite_functions};
use crate::quad::{GaussHermiteRule, QuadratureSpec, DENSITY_FLOOR};
use crate::units::{Domain, UnitSystem};

/// Amplitudes with modulus below this are dropped on construction.
pub const AMPLITUDE_CUTOFF: f64 = 1e-15;
const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockTerm {
    pub n1: usize,
    pub n2: usize,
    pub amp: Complex64,
}

impl FockTerm {
    pub fn new(n1: usize, n2: usize, amp: impl Into<Complex64>) -> Self {
        Self {
            n1,
            n2,
            amp: amp.into(),
        }
    }
}

/// A normalized two-mode state. Terms are kept sorted by `(n1, n2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FockState {
    terms: Vec<FockTerm>,
    max_n: usize,
}

impl FockState {
    pub fn new(terms: impl IntoIterator<Item = FockTerm>) -> Result<Self> {
        let mut map: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
        for t in terms {
            if !(t.amp.re.is_finite() && t.amp.im.is_finite()) {
                return Err(Error::InvalidState(format!(
                    "non-finite amplitude on ({}, {})",
                    t.n1, t.n2
                )));
            }
            if map.insert((t.n1, t.n2), t.amp).is_some() {
                return Err(Error::InvalidState(format!("duplicate term ({}, {})", t.n1, t.n2)));
            }
        }
        let terms: Vec<FockTerm> = map
            .into_iter()
            .filter(|(_, amp)| amp.norm() >= AMPLITUDE_CUTOFF)
            .map(|((n1, n2), amp)| FockTerm { n1, n2, amp })
            .collect();
        if terms.is_empty() {
            return Err(Error::InvalidState("state has no terms".into()));
        }
        let norm: f64 = terms.iter().map(|t| t.amp.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("squared norm is {norm}, expected 1")));
        }
        let max_n = terms.iter().map(|t| t.n1.max(t.n2)).max().unwrap_or(0);
        Ok(Self { terms, max_n })
    }

    pub fn terms(&self) -> &[FockTerm] {
        &self.terms
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn amplitude_of(&self, n1: usize, n2: usize) -> Complex64 {
        self.terms
            .iter()
            .find(|t| t.n1 == n1 && t.n2 == n2)
            .map_or(Complex64::new(0.0, 0.0), |t| t.amp)
    }

    /// The same state with the two modes exchanged.
    pub fn swap_modes(&self) -> Self {
        let mut terms: Vec<FockTerm> = self
            .terms
            .iter()
            .map(|t| FockTerm {
                n1: t.n2,
                n2: t.n1,
                amp: t.amp,
            })
            .collect();
        terms.sort_by_key(|t| (t.n1, t.n2));
        Self {
            terms,
            max_n: self.max_n,
        }
    }

    /// The single Fock product this state reduces to, if any.
    pub fn as_fock_product(&self) -> Option<(usize, usize)> {
        match self.terms.as_slice() {
            [t] => Some((t.n1, t.n2)),
            _ => None,
        }
    }

    pub fn amplitude(&self, a: f64, b: f64, dom: Domain, units: &UnitSystem) -> Complex64 {
        self.section(a, dom, units).amplitude(b)
    }

    /// `|Ψ(a, b)|²`.
    pub fn joint_density(&self, a: f64, b: f64, dom: Domain, units: &UnitSystem) -> f64 {
        self.amplitude(a, b, dom, units).norm_sqr()
    }

    /// `∫ |Ψ(a, b)|² db`, in closed form by orthonormality of mode two.
    pub fn marginal_density(&self, a: f64, dom: Domain, units: &UnitSystem) -> f64 {
        self.section(a, dom, units).weight()
    }

    /// Conditional mean of mode two given mode one at `a`.
    pub fn conditional_mean(&self, a: f64, dom: Domain, units: &UnitSystem, spec: &QuadratureSpec) -> Result<f64> {
        spec.validate()?;
        let rule = GaussHermiteRule::new(spec.gh_order.max(self.max_n + 2))?;
        self.section(a, dom, units).conditional_mean(&rule)
    }

    /// The amplitude of mode two with mode one fixed at `a`.
    pub fn section(&self, a: f64, dom: Domain, units: &UnitSystem) -> Section {
        let kappa = units.kappa(dom);
        let mut psi = vec![0.0; self.max_n + 1];
        hermite_functions(kappa.sqrt() * a, &mut psi);
        let root = kappa.powf(0.25);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.max_n + 1];
        for t in &self.terms {
            coeffs[t.n2] += t.amp * phase(t.n1 + t.n2, dom) * (root * psi[t.n1]);
        }
        Section {
            coeffs,
            kappa,
            sqrt_kappa: kappa.sqrt(),
            root,
            point: a,
        }
    }
}

/// `(-i)^n` for momentum, 1 for position.
fn phase(n: usize, dom: Domain) -> Complex64 {
    match dom {
        Domain::Position => Complex64::new(1.0, 0.0),
        Domain::Momentum => match n % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, -1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, 1.0),
        },
    }
}

/// `φ(n, x)`.
pub fn eigenfunction_x(n: usize, x: f64, units: &UnitSystem) -> f64 {
    let kappa = units.kappa(Domain::Position);
    kappa.powf(0.25) * crate::hermite::hermite_function(n, kappa.sqrt() * x)
}

/// Fourier transform of `φ(n, ·)` with kernel `(2π)^(-1/2) e^(-ipx)`.
pub fn eigenfunction_p(n: usize, p: f64, units: &UnitSystem) -> Complex64 {
    let kappa = units.kappa(Domain::Momentum);
    phase(n, Domain::Momentum) * (kappa.powf(0.25) * crate::hermite::hermite_function(n, kappa.sqrt() * p))
}

/// `cos θ |0,0⟩ + sin θ |1,1⟩`.
pub fn make_psi(theta: f64) -> Result<FockState> {
    two_term(theta, (0, 0), (1, 1))
}

/// `cos θ |0,1⟩ + sin θ |1,0⟩`.
pub fn make_psi_prime(theta: f64) -> Result<FockState> {
    two_term(theta, (0, 1), (1, 0))
}

fn two_term(theta: f64, first: (usize, usize), second: (usize, usize)) -> Result<FockState> {
    if !theta.is_finite() {
        return Err(Error::InvalidArgument(format!("theta must be finite, got {theta}")));
    }
    let (s, c) = theta.sin_cos();
    FockState::new([FockTerm::new(first.0, first.1, c), FockTerm::new(second.0, second.1, s)])
}

/// Mode-two amplitude `b ↦ Ψ(a, b)` at fixed `a`, stored as coefficients
/// on the mode-two eigenfunctions (momentum phases folded in).
#[derive(Debug, Clone)]
pub struct Section {
    coeffs: Vec<Complex64>,
    kappa: f64,
    sqrt_kappa: f64,
    // κ^(1/4), the eigenfunction normalization
    root: f64,
    point: f64,
}

impl Section {
    pub fn amplitude(&self, b: f64) -> Complex64 {
        let mut psi = [0.0; 8];
        let mut heap;
        let psi: &mut [f64] = if self.coeffs.len() <= psi.len() {
            &mut psi[..self.coeffs.len()]
        } else {
            heap = vec![0.0; self.coeffs.len()];
            &mut heap
        };
        hermite_functions(self.sqrt_kappa * b, psi);
        self.coeffs
            .iter()
            .zip(psi.iter())
            .map(|(c, &p)| c * p)
            .sum::<Complex64>()
            * self.root
    }

    pub fn density(&self, b: f64) -> f64 {
        self.amplitude(b).norm_sqr()
    }

    /// Marginal density of mode one at this section's point.
    pub fn weight(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `∫ b |Ψ(a, b)|² db`, exact when `rule.order() > max_n`.
    pub fn first_moment(&self, rule: &GaussHermiteRule) -> f64 {
        rule.integrate_moment_1d(|b| b * self.density(b), self.kappa)
    }

    /// `∫ b² |Ψ(a, b)|² db`, exact when `rule.order() > max_n`.
    pub fn second_moment(&self, rule: &GaussHermiteRule) -> f64 {
        rule.integrate_moment_1d(|b| b * b * self.density(b), self.kappa)
    }

    pub fn conditional_mean(&self, rule: &GaussHermiteRule) -> Result<f64> {
        let w = self.weight();
        if w <= DENSITY_FLOOR {
            return Err(Error::DegenerateMarginal {
                point: self.point,
                value: w,
            });
        }
        Ok(self.first_moment(rule) / w)
    }

    /// Real zeros of `b ↦ Ψ(a, b)` with `|b|` below `half_width` natural
    /// lengths, ascending.
    pub fn zeros(&self, half_width: f64) -> Vec<f64> {
        // Ψ(a, b) = e^(-y²/2) Σ_k c_k N_k H_k(y), y = √κ b
        let degree = self.coeffs.len() - 1;
        let mut poly = vec![Complex64::new(0.0, 0.0); degree + 1];
        let mut norm = crate::hermite::PI_POW_NEG_QUARTER;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                norm /= (2.0 * k as f64).sqrt();
            }
            for (i, h) in hermite_coefficients(k).into_iter().enumerate() {
                poly[i] += c * (norm * h);
            }
        }
        let scale = poly.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return Vec::new();
        }
        let lead = *poly.iter().max_by(|x, y| x.norm().total_cmp(&y.norm())).unwrap();
        let rot = lead.conj() / lead.norm();
        let re: Vec<f64> = poly.iter().map(|c| (c * rot).re).collect();
        let im: Vec<f64> = poly.iter().map(|c| (c * rot).im).collect();
        let imag_scale = im.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let roots = real_roots(&re, -half_width, half_width);
        roots
            .into_iter()
            .filter(|&y| {
                imag_scale <= 1e-12 * scale
                    || eval_poly(&im, y).abs() <= 1e-9 * scale * (1.0 + y.abs()).powi(degree as i32)
            })
            .map(|y| y / self.sqrt_kappa)
            .collect()
    }
}

fn eval_poly(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Real roots of a real polynomial (lowest degree first) inside `[lo, hi]`,
/// isolated between the roots of its derivative and refined by bisection.
fn real_roots(p: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let scale = p.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut len = p.len();
    while len > 0 && p[len - 1].abs() <= 1e-13 * scale {
        len -= 1;
    }
    let p = &p[..len];
    match len {
        0 | 1 => return Vec::new(),
        2 => {
            let r = -p[0] / p[1];
            return if r >= lo && r <= hi { vec![r] } else { Vec::new() };
        }
        _ => {}
    }
    let deriv: Vec<f64> = p.iter().enumerate().skip(1).map(|(i, c)| i as f64 * c).collect();
    let mut knots = vec![lo];
    knots.extend(real_roots(&deriv, lo, hi));
    knots.push(hi);

    let mut roots: Vec<f64> = Vec::new();
    let push = |r: f64, roots: &mut Vec<f64>| {
        if roots
            .last()
            .is_none_or(|&last| (r - last).abs() > 1e-12 * (1.0 + r.abs()))
        {
            roots.push(r);
        }
    };
    for w in knots.windows(2) {
        let (mut x0, mut x1) = (w[0], w[1]);
        let (mut v0, v1) = (eval_poly(p, x0), eval_poly(p, x1));
        let magnitude = p
            .iter()
            .enumerate()
            .map(|(i, c)| c.abs() * x0.abs().powi(i as i32))
            .sum::<f64>();
        if v0.abs() <= 1e-14 * magnitude {
            push(x0, &mut roots);
            continue;
        }
        if v0.signum() == v1.signum() || v1 == 0.0 {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (x0 + x1);
            if mid <= x0 || mid >= x1 {
                break;
            }
            let vm = eval_poly(p, mid);
            if vm == 0.0 {
                x0 = mid;
                x1 = mid;
                break;
            }
            if vm.signum() == v0.signum() {
                x0 = mid;
                v0 = vm;
            } else {
                x1 = mid;
            }
        }
        push(0.5 * (x0 + x1), &mut roots);
    }
    if eval_poly(p, hi) == 0.0 {
        push(hi, &mut roots);
    }
    roots
}

/// Sampled densities of one domain on a uniform square grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityGrid {
    pub domain: Domain,
    pub axis: Vec<f64>,
    /// `joint[i * n + j] = |Ψ(axis[i], axis[j])|²`.
    pub joint: Vec<f64>,
    /// Marginal of mode one on `axis`.
    pub marginal: Vec<f64>,
}

impl DensityGrid {
    /// Samples `n × n` points over `[-half_width, half_width]` natural lengths.
    pub fn sample(state: &FockState, dom: Domain, units: &UnitSystem, half_width: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(
                "density grid needs at least 2 points per axis".into(),
            ));
        }
        let extent = half_width * units.length(dom);
        let step = 2.0 * extent / (n - 1) as f64;
        let axis: Vec<f64> = (0..n).map(|i| -extent + step * i as f64).collect();
        let mut joint = Vec::with_capacity(n * n);
        let mut marginal = Vec::with_capacity(n);
        for &a in &axis {
            let s = state.section(a, dom, units);
            marginal.push(s.weight());
            joint.extend(axis.iter().map(|&b| s.density(b)));
        }
        Ok(Self {
            domain: dom,
            axis,
            joint,
            marginal,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn units() -> UnitSystem {
        UnitSystem::default()
    }

    #[test]
    fn constructors() {
        let s = make_psi(0.0).unwrap();
        assert_eq!(s.terms(), &[FockTerm::new(0, 0, 1.0)]);
        let s = make_psi(FRAC_PI_4).unwrap();
        assert!((s.amplitude_of(0, 0).re - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((s.amplitude_of(1, 1).re - 0.5f64.sqrt()).abs() < 1e-15);
        let s = make_psi(FRAC_PI_2).unwrap();
        assert_eq!(s.as_fock_product(), Some((1, 1)));
        assert_eq!(make_psi_prime(0.0).unwrap().as_fock_product(), Some((0, 1)));
        assert_eq!(make_psi_prime(FRAC_PI_2).unwrap().as_fock_product(), Some((1, 0)));
        let s = make_psi_prime(FRAC_PI_4).unwrap();
        let norm: f64 = s.terms().iter().map(|t| t.amp.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-15);
        assert_eq!(s.max_n(), 1);
        assert!(make_psi(f64::NAN).is_err());
    }

    #[test]
    fn invalid_states() {
        assert!(FockState::new([FockTerm::new(0, 0, 0.5)]).is_err());
        assert!(FockState::new([FockTerm::new(0, 0, 0.6), FockTerm::new(0, 0, 0.8)]).is_err());
        assert!(FockState::new(Vec::new()).is_err());
        assert!(FockState::new([FockTerm::new(0, 0, 1e-16)]).is_err());
        let s = FockState::new([FockTerm::new(3, 0, 0.6), FockTerm::new(0, 2, Complex64::new(0.0, 0.8))]).unwrap();
        assert_eq!(s.max_n(), 3);
    }

    #[test]
    fn eigenfunction_values() {
        assert_eq!(eigenfunction_x(1, 0.0, &units()), 0.0);
        assert!((eigenfunction_x(0, 0.0, &units()) - PI.powf(-0.25)).abs() < 1e-15);
        assert!((eigenfunction_x(0, 0.0, &units()) - 0.751126).abs() < 1e-6);
        let p0 = eigenfunction_p(0, 0.0, &units());
        assert!((p0.re - PI.powf(-0.25)).abs() < 1e-15 && p0.im == 0.0);
        // φ₁ in momentum is -i times a real odd function
        let p1 = eigenfunction_p(1, 0.7, &units());
        assert_eq!(p1.re, 0.0);
        assert!(p1.im < 0.0);
    }

    #[test]
    fn position_density_closed_form() {
        let u = units();
        for &theta in &[0.0, 0.4, 1.3, 2.9] {
            let s = make_psi(theta).unwrap();
            let (sn, c) = f64::sin_cos(theta);
            for &(x1, x2) in &[(0.0, 0.0), (0.3, -1.2), (1.7, 0.9), (-2.0, -0.4)] {
                let expect = (c + 2.0 * x1 * x2 * sn).powi(2) * (-(x1 * x1 + x2 * x2)).exp() / PI;
                let got = s.joint_density(x1, x2, Domain::Position, &u);
                assert!((got - expect).abs() < 1e-14, "theta={theta}");
                // momentum carries the opposite sign on the sin term
                let expect_p = (c - 2.0 * x1 * x2 * sn).powi(2) * (-(x1 * x1 + x2 * x2)).exp() / PI;
                let got_p = s.joint_density(x1, x2, Domain::Momentum, &u);
                assert!((got_p - expect_p).abs() < 1e-14);
            }
            for &x1 in &[0.0, 0.8, -1.9] {
                let expect = (c * c + 2.0 * x1 * x1 * sn * sn) * (-x1 * x1).exp() / PI.sqrt();
                assert!((s.marginal_density(x1, Domain::Position, &u) - expect).abs() < 1e-14);
                assert!((s.marginal_density(x1, Domain::Momentum, &u) - expect).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn momentum_amplitude_sign_at_quarter_turn() {
        // θ = π/2: Ψ(p1, p2) = -(2/√π) p1 p2 e^{-(p1²+p2²)/2}
        let s = make_psi(FRAC_PI_2).unwrap();
        let (p1, p2) = (0.6, 1.1);
        let amp = s.amplitude(p1, p2, Domain::Momentum, &units());
        let expect = -2.0 / PI.sqrt() * p1 * p2 * (-(p1 * p1 + p2 * p2) / 2.0).exp();
        assert!((amp.re - expect).abs() < 1e-15 && amp.im.abs() < 1e-15);
    }

    #[test]
    fn zeros_of_sections() {
        let u = units();
        let theta: f64 = 0.9;
        let (sn, c) = theta.sin_cos();
        let s = make_psi(theta).unwrap();
        let a = 0.8;
        let z = s.section(a, Domain::Position, &u).zeros(8.0);
        assert_eq!(z.len(), 1);
        assert!((z[0] + c / (2.0 * sn * a)).abs() < 1e-12);
        let zp = s.section(a, Domain::Momentum, &u).zeros(8.0);
        assert!((zp[0] - c / (2.0 * sn * a)).abs() < 1e-12);
        assert!(s.section(0.0, Domain::Position, &u).zeros(8.0).is_empty());

        let sp = make_psi_prime(theta).unwrap();
        let z = sp.section(a, Domain::Momentum, &u).zeros(8.0);
        assert!((z[0] + sn * a / c).abs() < 1e-12);
    }

    #[test]
    fn zeros_of_higher_sections() {
        // Ψ = |0,2⟩: section ∝ H₂(y), zeros at ±1/√2
        let s = FockState::new([FockTerm::new(0, 2, 1.0)]).unwrap();
        let z = s.section(0.3, Domain::Position, &units()).zeros(8.0);
        assert_eq!(z.len(), 2);
        assert!((z[0] + 0.5f64.sqrt()).abs() < 1e-12 && (z[1] - 0.5f64.sqrt()).abs() < 1e-12);
        // genuinely complex sections vanish nowhere on the real line
        let s = FockState::new([FockTerm::new(0, 0, 0.6), FockTerm::new(0, 1, Complex64::new(0.0, 0.8))]).unwrap();
        assert!(s.section(0.3, Domain::Position, &units()).zeros(8.0).is_empty());
    }

    #[test]
    fn conditional_mean_edges() {
        let u = units();
        let spec = QuadratureSpec::default();
        let s = make_psi(0.0).unwrap();
        assert!(s.conditional_mean(1.3, Domain::Position, &u, &spec).unwrap().abs() < 1e-15);
        let sp = make_psi_prime(PI / 3.0).unwrap();
        assert!(sp.conditional_mean(0.0, Domain::Position, &u, &spec).unwrap().abs() < 1e-15);
        let far = s.conditional_mean(40.0, Domain::Position, &u, &spec);
        assert!(matches!(far, Err(Error::DegenerateMarginal { .. })));
    }

    #[test]
    fn density_grid_shape() {
        let s = make_psi(0.5).unwrap();
        let g = DensityGrid::sample(&s, Domain::Position, &units(), 4.0, 9).unwrap();
        assert_eq!(g.axis.len(), 9);
        assert_eq!(g.joint.len(), 81);
        assert_eq!(g.axis[4], 0.0);
        assert!(g.joint.iter().all(|&v| v >= 0.0));
        assert!(DensityGrid::sample(&s, Domain::Position, &units(), 4.0, 1).is_err());
    }
}
