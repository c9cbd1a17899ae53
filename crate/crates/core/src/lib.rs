//! Fractional calculus in the complex domain.
//!
//! The crate works with functions `F(t)` analytic in a tube around the positive
//! real axis and their Laplace images `P(zeta) = zeta * int_0^inf e^{-zeta t} F(t) dt`.
//! On Taylor coefficients the fractional derivative and integral of order `alpha`
//! act as `f_k -> f_k Gamma(alpha+k+1)/k!` and its reciprocal.
//!
//! Modules:
//! - [`series`]: truncated power series and growth estimates
//! - [`special`]: Gamma, hypergeometric functions, continuation and jumps
//! - [`contour`]: the tube boundary contour and adaptive path quadrature
//! - [`frac`]: fractional operators (coefficient, contour and H1 forms)
//! - [`laplace`]: Laplace and Borel transforms, remainders, Gevrey bounds
//! - [`monodromy`]: perturbed Whittaker equations, Borel duals and monodromy checks

pub mod contour;
pub mod error;
pub mod frac;
pub mod laplace;
pub mod monodromy;
pub mod precision;
pub mod series;
pub mod special;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use series::PowerSeries;
