//! Two-dimensional generalized Bessel functions
//!
//! ```text
//! J_n^{p,q}(u, v) = (1/2π) ∫_{−π}^{π} exp(i(u sin pt + v sin qt − nt)) dt
//! ```
//!
//! evaluated by a product series of ordinary Bessel functions, by spectral
//! quadrature and, in their regimes, by stationary-phase and saddle-point
//! formulas. The [`relations`] module exposes residuals of the classical
//! identities so they can be certified numerically, and [`small`] provides
//! exact small-argument expansions.

pub mod asymptotic;
pub mod bessel;
pub mod error;
pub mod eval;
pub mod index;
pub mod quadrature;
pub mod relations;
pub mod series;
pub mod small;

pub use bessel::{bessel_j, bessel_row, BesselRow};
pub use error::{Error, Result};
pub use eval::{eval, eval_with_info, Evaluation, Route};
pub use index::{canonicalize, solve_diophantine, CanonicalIndex, DiophantineSolution, Index};
pub use quadrature::{eval_param_quadrature, eval_quadrature, eval_quadrature_auto, QuadratureResult};
pub use series::{eval_param, eval_series, SeriesResult};

pub use num_complex::Complex64;
