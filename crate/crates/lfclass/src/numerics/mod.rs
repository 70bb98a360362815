//! Special-function and quadrature substrate.
//!
//! Complex log-gamma and digamma, the Hurwitz zeta function with analytic
//! continuation (Euler-Maclaurin with tail correction), and adaptive
//! quadrature including the `1/cosh(pi t)`-weighted line integral that the
//! convexity machinery consumes.

mod gamma;
mod hurwitz;
pub mod quad;

pub use gamma::{digamma, log_gamma, polygamma};
pub use hurwitz::{hurwitz_zeta, riemann_zeta};
pub(crate) use hurwitz::{hurwitz_zeta_any, hurwitz_zeta_reg, hurwitz_zeta_reg_jet};
pub use quad::{integrate, integrate_cosh_weight, QuadratureResult};

/// Natural log of pi.
pub(crate) const LN_PI: f64 = 1.144_729_885_849_400_2;
/// Natural log of 2*pi.
pub(crate) const LN_TWO_PI: f64 = 1.837_877_066_409_345_3;
