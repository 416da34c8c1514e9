//! Special functions and quadrature used by the analysis engine.
//!
//! Everything here is built from elementary floating-point functions.

mod erf;
mod gamma;
mod lambert;
pub mod quad;
mod zeta;

pub use erf::{erf, erfc};
pub use gamma::gamma_real;
pub use lambert::lambert_w0;
pub use quad::{adaptive_integrate, adaptive_integrate_points, Integral};
pub use zeta::{dirichlet_eta, polylog_neg_arg, riemann_zeta};
