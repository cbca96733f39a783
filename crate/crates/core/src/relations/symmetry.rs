//! Symmetry residuals. Both sides go through the product series directly,
//! bypassing the sign bookkeeping of [`crate::canonicalize`], so that the
//! relations are tested rather than assumed.

use crate::error::{Error, Result};
use crate::eval::{eval, EVAL_TOLERANCE};
use crate::index::Index;
use crate::series::eval_series;

fn series(idx: Index, u: f64, v: f64) -> Result<f64> {
    Ok(eval_series(idx, u, v, EVAL_TOLERANCE)?.value)
}

fn parity(n: i64) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `J_n^{p,q}(u, v) − J_n^{q,p}(v, u)`.
pub fn swap_residual(idx: Index, u: f64, v: f64) -> Result<f64> {
    Ok(series(idx, u, v)? - series(idx.swapped(), v, u)?)
}

/// `J_{−n}^{p,q}(u, v) − J_n^{p,q}(−u, −v)`.
pub fn negation_residual(idx: Index, u: f64, v: f64) -> Result<f64> {
    Ok(series(idx.with_n(-idx.n), u, v)? - series(idx, -u, -v)?)
}

/// `J_n^{p,q}(−u, v) − (−1)^n J_n^{p,q}(u, v)` for odd `p` and even `q`.
pub fn q_even_residual(idx: Index, u: f64, v: f64) -> Result<f64> {
    if idx.p % 2 == 0 || idx.q % 2 != 0 {
        return Err(Error::InvalidIndex(format!("needs p odd and q even, got {idx}")));
    }
    Ok(series(idx, -u, v)? - parity(idx.n) * series(idx, u, v)?)
}

/// `J_n^{p,q}(−u, −v) − (−1)^n J_n^{p,q}(u, v)` for odd `p` and `q`.
pub fn pq_odd_residual(idx: Index, u: f64, v: f64) -> Result<f64> {
    if idx.p % 2 == 0 || idx.q % 2 == 0 {
        return Err(Error::InvalidIndex(format!("needs p and q odd, got {idx}")));
    }
    Ok(series(idx, -u, -v)? - parity(idx.n) * series(idx, u, v)?)
}

/// `J_n^{μp,μq}(u, v)` by the product series minus its reduced form:
/// zero when `μ ∤ n`, else `J_{n/μ}^{p,q}(u, v)`.
pub fn reduction_residual(idx: Index, mu: i64, u: f64, v: f64) -> Result<f64> {
    if mu < 1 {
        return Err(Error::Domain(format!("reduction factor must be positive, got {mu}")));
    }
    let scaled = Index::new(idx.n, mu * idx.p, mu * idx.q)?;
    let lhs = series(scaled, u, v)?;
    let rhs = if idx.n % mu == 0 {
        eval(idx.with_n(idx.n / mu), u, v)?
    } else {
        0.0
    };
    Ok(lhs - rhs)
}
