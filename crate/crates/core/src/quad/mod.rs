//! Numerical integration: Gauss–Hermite rules for Gaussian moment integrals
//! and adaptive Gauss–Kronrod panels for entropy integrands.

mod adaptive;
mod entropy;
mod gauss_hermite;
mod spec;

pub use adaptive::{integrate_adaptive, Integral};
pub use entropy::{
    integrate_entropy_1d, integrate_entropy_1d_on, integrate_entropy_2d, integrate_entropy_2d_sections, neg_xlogx,
    Section, DENSITY_FLOOR,
};
pub use gauss_hermite::{gauss_hermite_rule, integrate_moment_2d, GaussHermiteRule};
pub use spec::QuadratureSpec;
