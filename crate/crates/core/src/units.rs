//! Natural units and the position/momentum tag.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Oscillator units with ħ = 1. Only the product m·ω is configurable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitSystem {
    m_omega: f64,
}

impl UnitSystem {
    pub fn new(m_omega: f64) -> Result<Self> {
        if !(m_omega.is_finite() && m_omega > 0.0) {
            return Err(Error::InvalidUnits(m_omega));
        }
        Ok(Self { m_omega })
    }

    pub const fn hbar(&self) -> f64 {
        1.0
    }

    pub const fn m_omega(&self) -> f64 {
        self.m_omega
    }

    /// Inverse squared length scale of the eigenfunctions in `dom`:
    /// mω/ħ for positions and ħ/mω for momenta.
    pub fn kappa(&self, dom: Domain) -> f64 {
        match dom {
            Domain::Position => self.m_omega / self.hbar(),
            Domain::Momentum => self.hbar() / self.m_omega,
        }
    }

    /// Natural length of `dom`, 1/√κ.
    pub fn length(&self, dom: Domain) -> f64 {
        self.kappa(dom).sqrt().recip()
    }
}

impl Default for UnitSystem {
    fn default() -> Self {
        Self { m_omega: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Position,
    Momentum,
}

impl Domain {
    pub const ALL: [Domain; 2] = [Domain::Position, Domain::Momentum];
}
