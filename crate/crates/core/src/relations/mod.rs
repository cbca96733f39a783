//! Residuals of the identities satisfied by `J_n^{p,q}`.
//!
//! Each function returns "left side minus right side", which vanishes
//! exactly in exact arithmetic; tests and the CLI identity suite compare the
//! magnitude against a tolerance.

mod graf;
mod pde;
pub mod shift;
mod sums;
mod symmetry;

pub use graf::{graf_residual, GrafResidual};
pub use pde::{
    pde_residual_coupled, pde_residual_decoupled_pm1, pde_residual_schroedinger,
    pde_residual_wave, pde_scale,
};
pub use sums::{
    addition_residual, default_bilinear_k, kapteyn_sum, sum_rule_phase12, sum_rule_squares,
    sum_rule_total, KapteynResult,
};
pub use symmetry::{
    negation_residual, pq_odd_residual, q_even_residual, reduction_residual, swap_residual,
};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::eval::eval;
use crate::index::Index;
use crate::series::eval_param;

/// Tolerance used when the relations need a parameterized value.
pub(crate) const PARAM_TOLERANCE: f64 = 1e-14;

fn check_step(h: f64) -> Result<()> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Domain(format!("step h must be positive, got {h}")));
    }
    Ok(())
}

/// `2 ∂_u J_n − (J_{n−p} − J_{n+p})` with `∂_u` by central difference.
pub fn derivative_residual_u(idx: Index, u: f64, v: f64, h: f64) -> Result<f64> {
    check_step(h)?;
    let d = (eval(idx, u + h, v)? - eval(idx, u - h, v)?) / (2.0 * h);
    let rule = eval(idx.with_n(idx.n - idx.p), u, v)? - eval(idx.with_n(idx.n + idx.p), u, v)?;
    Ok(2.0 * d - rule)
}

/// `2 ∂_v J_n − (J_{n−q} − J_{n+q})` with `∂_v` by central difference.
pub fn derivative_residual_v(idx: Index, u: f64, v: f64, h: f64) -> Result<f64> {
    check_step(h)?;
    let d = (eval(idx, u, v + h)? - eval(idx, u, v - h)?) / (2.0 * h);
    let rule = eval(idx.with_n(idx.n - idx.q), u, v)? - eval(idx.with_n(idx.n + idx.q), u, v)?;
    Ok(2.0 * d - rule)
}

/// `pu(J_{n−p} + J_{n+p}) + qv(J_{n−q} + J_{n+q}) − 2n J_n`.
pub fn recurrence_residual(idx: Index, u: f64, v: f64) -> Result<f64> {
    let Index { n, p, q } = idx;
    let j = |m: i64| eval(idx.with_n(m), u, v);
    Ok(p as f64 * u * (j(n - p)? + j(n + p)?) + q as f64 * v * (j(n - q)? + j(n + q)?)
        - 2.0 * n as f64 * j(n)?)
}

/// Tolerance scale for [`recurrence_residual`]: `1 + |n| + |p u| + |q v|`.
pub fn recurrence_scale(idx: Index, u: f64, v: f64) -> f64 {
    1.0 + idx.n.abs() as f64 + (idx.p as f64 * u).abs() + (idx.q as f64 * v).abs()
}

/// Residuals of `2∂_u J = J_{n−1} − J_{n+1}` and
/// `2∂_v J = e^{iδ} J_{n−q} − e^{−iδ} J_{n+q}` for `J = J_n^{1,q}(u, v; e^{iδ})`.
pub fn param_derivative_residuals(
    n: i64,
    q: i64,
    u: f64,
    v: f64,
    delta: f64,
    h: f64,
) -> Result<(Complex64, Complex64)> {
    check_step(h)?;
    let tau = Complex64::from_polar(1.0, delta);
    let idx = Index::new(n, 1, q)?;
    let j = |m: i64, u: f64, v: f64| -> Result<Complex64> {
        Ok(eval_param(idx.with_n(m), u, v, tau, PARAM_TOLERANCE)?.value)
    };
    let du = (j(n, u + h, v)? - j(n, u - h, v)?) / (2.0 * h);
    let dv = (j(n, u, v + h)? - j(n, u, v - h)?) / (2.0 * h);
    let ru = du * 2.0 - (j(n - 1, u, v)? - j(n + 1, u, v)?);
    let rv = dv * 2.0 - (tau * j(n - q, u, v)? - tau.conj() * j(n + q, u, v)?);
    Ok((ru, rv))
}
