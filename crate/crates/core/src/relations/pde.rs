use num_complex::Complex64;

use super::shift::ShiftExpr;
use super::PARAM_TOLERANCE;
use crate::error::{Error, Result};
use crate::eval::eval;
use crate::index::Index;
use crate::series::eval_param;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn real(c: f64) -> Complex64 {
    Complex64::new(c, 0.0)
}

fn eval_real(expr: &ShiftExpr, idx: Index, u: f64, v: f64) -> Result<f64> {
    let z = expr.eval(idx.n, u, v, |m| Ok(real(eval(idx.with_n(m), u, v)?)))?;
    Ok(z.re)
}

/// Tolerance scale for the second-order PDE residuals:
/// `(1 + |n| + |p u| + |q v|)²`.
pub fn pde_scale(idx: Index, u: f64, v: f64) -> f64 {
    let s = 1.0 + idx.n.abs() as f64 + (idx.p as f64 * u).abs() + (idx.q as f64 * v).abs();
    s * s
}

/// `(∂_u² − ∂_v²) J_n^{1,1}(u, v)` with both derivatives from the shift rules.
pub fn pde_residual_wave(n: i64, u: f64, v: f64) -> Result<f64> {
    let idx = Index::new(n, 1, 1)?;
    let j = ShiftExpr::identity(1, 1, ONE);
    let op = j.d_u().d_u().sub(&j.d_v().d_v());
    eval_real(&op, idx, u, v)
}

/// `i ∂_v J + 2 ∂_u² J + J` for `J = J_n^{1,2}(u, v; i)`.
pub fn pde_residual_schroedinger(n: i64, u: f64, v: f64) -> Result<Complex64> {
    let idx = Index::new(n, 1, 2)?;
    let i = Complex64::new(0.0, 1.0);
    let j = ShiftExpr::identity(1, 2, i);
    let op = j.d_v().scale(i).add(&j.d_u().d_u().scale(real(2.0))).add(&j);
    op.eval(n, u, v, |m| {
        Ok(eval_param(idx.with_n(m), u, v, i, PARAM_TOLERANCE)?.value)
    })
}

/// `[θ² + p²u² + q²v² − n²] J_n + pq·uv·(J_{n−p+q} + J_{n+p−q})` with
/// `θ = pu∂_u + qv∂_v` applied twice as an operator.
pub fn pde_residual_coupled(idx: Index, u: f64, v: f64) -> Result<f64> {
    let Index { n, p, q } = idx;
    let j = ShiftExpr::identity(p, q, ONE);
    let theta = |e: &ShiftExpr| {
        e.d_u()
            .mul_u()
            .scale(real(p as f64))
            .add(&e.d_v().mul_v().scale(real(q as f64)))
    };
    let pf = p as f64;
    let qf = q as f64;
    let op = theta(&theta(&j))
        .add(&j.mul_u().mul_u().scale(real(pf * pf)))
        .add(&j.mul_v().mul_v().scale(real(qf * qf)))
        .add(&j.scale(real(-(n as f64) * n as f64)))
        .add(
            &j.shift_index(q - p)
                .add(&j.shift_index(p - q))
                .mul_u()
                .mul_v()
                .scale(real(pf * qf)),
        );
    eval_real(&op, idx, u, v)
}

/// `[E² + (u ± v)² − n²] J_n^{1,±1}(u, v)` with `E = u∂_u + v∂_v` applied
/// twice as an operator.
pub fn pde_residual_decoupled_pm1(n: i64, sign: i32, u: f64, v: f64) -> Result<f64> {
    if sign != 1 && sign != -1 {
        return Err(Error::Domain(format!("sign must be ±1, got {sign}")));
    }
    let idx = Index::new(n, 1, sign as i64)?;
    let j = ShiftExpr::identity(1, sign as i64, ONE);
    let euler = |e: &ShiftExpr| e.d_u().mul_u().add(&e.d_v().mul_v());
    let s = sign as f64;
    let op = euler(&euler(&j))
        .add(&j.mul_u().mul_u())
        .add(&j.mul_u().mul_v().scale(real(2.0 * s)))
        .add(&j.mul_v().mul_v())
        .add(&j.scale(real(-(n as f64) * n as f64)));
    eval_real(&op, idx, u, v)
}
