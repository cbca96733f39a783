//! Dispatching evaluator for `J_n^{p,q}(u, v)`.

use crate::bessel::bessel_j;
use crate::error::Result;
use crate::index::{canonicalize, Index};
use crate::series::{check_arguments, eval_series};

/// Tolerance used by [`eval`] for the product series.
pub const EVAL_TOLERANCE: f64 = 1e-12;

/// Which path produced a value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Route {
    /// Identically zero by the gcd reduction, or `n != 0` at the origin.
    Zero,
    /// `u = 0`, or the origin with `n = 0`: a single ordinary Bessel function of `v`.
    AxisU,
    /// `v = 0`: a single ordinary Bessel function of `u`.
    AxisV,
    /// `|p| = |q| = 1`: `J_n(u ± v)`.
    EqualIndices,
    Series { terms_used: usize, tail_bound: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub route: Route,
}

/// `J_n^{p,q}(u, v)`.
pub fn eval(idx: Index, u: f64, v: f64) -> Result<f64> {
    eval_with_info(idx, u, v).map(|e| e.value)
}

/// [`eval`] together with the path taken.
pub fn eval_with_info(idx: Index, u: f64, v: f64) -> Result<Evaluation> {
    check_arguments(u, v)?;
    let c = canonicalize(idx);
    if c.is_zero {
        return Ok(Evaluation {
            value: 0.0,
            route: Route::Zero,
        });
    }
    let Index { n, p, q } = c.base;
    let sign = c.sign as f64;
    let (value, route) = if u == 0.0 {
        if n % q == 0 {
            (bessel_j(n / q, v)?, Route::AxisU)
        } else {
            (0.0, Route::Zero)
        }
    } else if v == 0.0 {
        if n % p == 0 {
            (bessel_j(n / p, u)?, Route::AxisV)
        } else {
            (0.0, Route::Zero)
        }
    } else if p == 1 && q.abs() == 1 {
        (bessel_j(n, u + q as f64 * v)?, Route::EqualIndices)
    } else {
        let r = eval_series(c.base, u, v, EVAL_TOLERANCE)?;
        (
            r.value,
            Route::Series {
                terms_used: r.terms_used,
                tail_bound: r.tail_bound,
            },
        )
    };
    Ok(Evaluation {
        value: sign * value,
        route,
    })
}
