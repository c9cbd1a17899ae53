//! Special functions: Gamma, Gauss and generalized hypergeometric functions,
//! analytic continuation and connection formulas.

pub mod connection;
pub mod continuation;
pub mod gamma;
pub mod hyp2f1;
pub mod pfq;

pub use gamma::{digamma, gamma, ln_gamma, rgamma};
pub use hyp2f1::{hyp2f1, hyp2f1_reg, hyp2f1_side, Hyp2F1Params, Side};
