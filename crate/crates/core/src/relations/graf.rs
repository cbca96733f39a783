use num_complex::Complex64;

use crate::bessel::bessel_j;
use crate::error::{Error, Result};
use crate::eval::eval;
use crate::index::Index;

/// Residual of the Graf-type addition theorem for `p = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrafResidual {
    pub residual: Complex64,
    /// Set when a prefactor ratio `(x2 − x1/τ')/(x2 − x1τ')` crosses the
    /// negative real axis for some `τ' = e^{iθ'}` with `θ'` between 0 and `θ`.
    pub branch_crossed: bool,
}

const BRANCH_SAMPLES: usize = 256;

/// Combined argument and prefactor root for one Graf factor.
///
/// With `τ` unimodular, `g² = (x2 − x1τ)(x2 − x1/τ) = |x2 − x1τ|²`. The root
/// `g = |x2 − x1τ|` is paired with `s = (x2 − x1/τ)/g`, whose powers give
/// `[(x2 − x1/τ)/(x2 − x1τ)]^{m/2}`. Flipping the sign of `g` flips `s`
/// too and leaves `s^m J_m(g)` unchanged, so no branch choice remains.
fn graf_pair(x1: f64, x2: f64, tau: Complex64) -> (f64, Complex64) {
    let forward = Complex64::new(x2, 0.0) - tau * x1;
    let g = forward.norm();
    if g == 0.0 {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    (g, forward.conj() / g)
}

fn graf_term(m: i64, g: f64, s: Complex64) -> Result<Complex64> {
    let j = bessel_j(m, g)?;
    if j == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(s.powi(m as i32) * j)
}

fn crosses_negative_axis(x1: f64, x2: f64, angle: f64) -> bool {
    // The ratio conj(z)/z with z = x2 − x1 e^{iθ'} is negative real exactly
    // when Re z = 0.
    let re = |i: usize| x2 - x1 * (angle * i as f64 / BRANCH_SAMPLES as f64).cos();
    (1..=BRANCH_SAMPLES).any(|i| (re(i - 1) > 0.0) != (re(i) > 0.0))
}

/// `Σ_ℓ τ^ℓ J_ℓ^{1,q}(u1,v1) J_{n+ℓ}^{1,q}(u2,v2)` minus
/// `Σ_ℓ s_u^{n−qℓ} s_v^ℓ J_{n−qℓ}(g_u) J_ℓ(g_v)`, both over `|ℓ| <= K`,
/// with `τ = e^{iθ}`, `g_u = g(u1, u2; τ)` and `g_v = g(v1, v2; τ^q)`.
#[allow(clippy::too_many_arguments)]
pub fn graf_residual(
    n: i64,
    q: i64,
    u1: f64,
    v1: f64,
    u2: f64,
    v2: f64,
    theta: f64,
    k: usize,
) -> Result<GrafResidual> {
    if k == 0 {
        return Err(Error::Domain("truncation K must be positive".into()));
    }
    if !theta.is_finite() {
        return Err(Error::Domain(format!("theta must be finite, got {theta}")));
    }
    let idx = Index::new(n, 1, q)?;
    let k = k as i64;
    let tau = Complex64::from_polar(1.0, theta);

    let mut lhs = Complex64::new(0.0, 0.0);
    for l in -k..=k {
        let a = eval(idx.with_n(l), u1, v1)?;
        if a == 0.0 {
            continue;
        }
        let b = eval(idx.with_n(n + l), u2, v2)?;
        lhs += Complex64::from_polar(1.0, theta * l as f64) * (a * b);
    }

    let (gu, su) = graf_pair(u1, u2, tau);
    let (gv, sv) = graf_pair(v1, v2, Complex64::from_polar(1.0, theta * q as f64));
    let mut rhs = Complex64::new(0.0, 0.0);
    for l in -k..=k {
        let b = graf_term(l, gv, sv)?;
        if b == Complex64::new(0.0, 0.0) {
            continue;
        }
        rhs += graf_term(n - q * l, gu, su)? * b;
    }

    let branch_crossed =
        crosses_negative_axis(u1, u2, theta) || crosses_negative_axis(v1, v2, theta * q as f64);
    Ok(GrafResidual {
        residual: lhs - rhs,
        branch_crossed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn examples() {
        let r = graf_residual(0, 2, 1.0, 0.5, 2.0, 1.0, PI / 3.0, 50).unwrap();
        assert!(r.residual.norm() <= 1e-9);
        assert!(!r.branch_crossed);
        let r = graf_residual(2, 3, 0.5, 0.2, 1.5, 0.8, PI / 4.0, 50).unwrap();
        assert!(r.residual.norm() <= 1e-9);
    }

    #[test]
    fn orthogonality_at_zero_angle() {
        for n in [1, 2, 5] {
            let r = graf_residual(n, 2, 1.3, 0.4, 1.3, 0.4, 0.0, 50).unwrap();
            assert!(r.residual.norm() <= 1e-10, "n={n}: {}", r.residual);
        }
        let r = graf_residual(0, 3, 1.3, 0.4, 1.3, 0.4, 0.0, 50).unwrap();
        assert!(r.residual.norm() <= 1e-10);
    }

    #[test]
    fn branch_flag() {
        // u2 − u1 cos θ' changes sign on the way from 0 to θ.
        let r = graf_residual(1, 2, 2.0, 0.3, 1.0, 0.5, 2.5, 50).unwrap();
        assert!(r.branch_crossed);
        assert!(r.residual.norm() <= 1e-9);
    }
}
