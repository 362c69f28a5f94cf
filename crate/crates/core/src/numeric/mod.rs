//! Shared numerical kernels: bracketed root finding, Gauss-Legendre
//! quadrature, and the regularized incomplete beta function.

mod betainc;
mod quad;
mod root;

pub use betainc::{ln_beta, ln_gamma, reg_inc_beta};
pub use quad::{gauss_legendre, integrate_rule, GaussRule};
pub use root::{bisect, scan_sign_changes};
