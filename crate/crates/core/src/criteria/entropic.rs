//! Conditional differential entropies against the `ln(πe)` bound.

use std::collections::BTreeMap;

use super::{Criterion, CriterionResult, Estimate};
use crate::error::Result;
use crate::hermite::hermite_function;
use crate::quad::{integrate_entropy_1d_on, integrate_entropy_2d_sections, GaussHermiteRule, QuadratureSpec, Section};
use crate::state::FockState;
use crate::units::{Domain, UnitSystem};

/// `ln(πe)`.
pub const LN_PI_E: f64 = 1.0 + 1.144_729_885_849_400_2;

/// Entropy of `ψ_n(y)²` in natural units (`κ = 1`).
pub fn fock_entropy(n: usize, spec: &QuadratureSpec) -> Result<Estimate> {
    if n == 0 {
        return Ok(Estimate {
            value: 0.5 * LN_PI_E,
            flagged: false,
        });
    }
    let zeros = if n == 1 {
        vec![0.0]
    } else {
        GaussHermiteRule::new(n)?.nodes().to_vec()
    };
    let l = spec.half_width;
    let r = integrate_entropy_1d_on(|y| hermite_function(n, y).powi(2), -l, l, &zeros, spec);
    Ok(Estimate {
        value: r.value,
        flagged: r.flagged,
    })
}

/// Average conditional entropy `h(B₂|B₁) = -∬ P ln P + ∫ P(a) ln P(a) da`.
pub fn conditional_entropy(
    state: &FockState,
    dom: Domain,
    units: &UnitSystem,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    spec.validate()?;
    let kappa = units.kappa(dom);
    if let Some((_, n2)) = state.as_fock_product() {
        let h = fock_entropy(n2, spec)?;
        return Ok(Estimate {
            value: h.value - 0.5 * kappa.ln(),
            flagged: h.flagged,
        });
    }
    let extent = spec.half_width * units.length(dom);
    let joint = integrate_entropy_2d_sections(
        (-extent, extent),
        &[0.0],
        (-extent, extent),
        |a| {
            let s = state.section(a, dom, units);
            let breakpoints = s.zeros(spec.half_width);
            Section {
                density: move |b| s.density(b),
                breakpoints,
            }
        },
        spec,
    );
    let marginal = integrate_entropy_1d_on(|a| state.marginal_density(a, dom, units), -extent, extent, &[0.0], spec);
    Ok(Estimate {
        value: joint.value - marginal.value,
        flagged: joint.flagged || marginal.flagged,
    })
}

/// `ln(πe) - h(X₂|X₁) - h(P₂|P₁)`.
pub fn entropic_value(state: &FockState, units: &UnitSystem, spec: &QuadratureSpec) -> Result<CriterionResult> {
    let hx = conditional_entropy(state, Domain::Position, units, spec)?;
    let hp = conditional_entropy(state, Domain::Momentum, units, spec)?;
    let value = match state.as_fock_product() {
        // the ln κ shifts cancel exactly for product states
        Some((_, n2)) => LN_PI_E - 2.0 * fock_entropy(n2, spec)?.value,
        None => LN_PI_E - hx.value - hp.value,
    };
    let mut components = BTreeMap::new();
    components.insert("h_x2_given_x1".to_string(), hx.value);
    components.insert("h_p2_given_p1".to_string(), hp.value);
    Ok(CriterionResult::new(
        Criterion::Entropic,
        value,
        components,
        hx.flagged || hp.flagged,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::make_psi;
    use std::f64::consts::{E, FRAC_PI_2, PI};

    #[test]
    fn constant() {
        assert!((LN_PI_E - (PI * E).ln()).abs() < 1e-15);
    }

    #[test]
    fn ground_and_first_excited() {
        let spec = QuadratureSpec::default();
        assert_eq!(fock_entropy(0, &spec).unwrap().value, 0.5 * LN_PI_E);
        // frozen from an independent mpmath quadrature
        let h1 = fock_entropy(1, &spec).unwrap();
        assert!(!h1.flagged);
        assert!((h1.value - 1.342_727_788_386_18).abs() < 1e-11);
    }

    #[test]
    fn product_values_exact() {
        let u = UnitSystem::default();
        let spec = QuadratureSpec::default();
        let r = entropic_value(&make_psi(0.0).unwrap(), &u, &spec).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(!r.violated);
        let r = entropic_value(&make_psi(FRAC_PI_2).unwrap(), &u, &spec).unwrap();
        assert!((r.value + 0.540_725_690_922_957).abs() < 1e-10);
    }
}
