//! Numerical substrate for the analytic pipeline: generalized hypergeometric
//! functions on the interference-CF parameter families, gamma-family helpers,
//! the error function, and adaptive quadrature for finite and semi-infinite
//! oscillatory-decaying integrals.

mod dd;
mod gamma;
mod hyper;
mod quad;

pub use gamma::{erf, erfc, gamma_p, gamma_q, gamma_pos, ln_gamma};
pub use hyper::{hyp1f1, hyp1f2, hyp2f2};
pub use quad::{integrate_finite, integrate_semi_infinite, QuadratureConfig};
