//! Trapezoidal evaluation of the defining integral
//! `(1/2π)∫_{−π}^{π} exp(i(u sin pt + v sin qt − nt)) dt`.
//!
//! The integrand is periodic and entire, so the equispaced rule converges
//! geometrically once the node count exceeds the integrand's Fourier width.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::index::Index;

/// Smallest node count accepted.
pub const MIN_NODES: usize = 16;

/// Real value of the integral plus the imaginary part as a diagnostic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Imaginary part of the computed integral; zero in exact arithmetic.
    pub residual: f64,
    pub nodes: usize,
}

fn check_nodes(nodes: usize) -> Result<()> {
    if nodes < MIN_NODES {
        return Err(Error::Domain(format!(
            "quadrature needs at least {MIN_NODES} nodes, got {nodes}"
        )));
    }
    Ok(())
}

fn trapezoid(nodes: usize, phase: impl Fn(f64) -> f64) -> Complex64 {
    let h = 2.0 * PI / nodes as f64;
    let mut re = 0.0;
    let mut im = 0.0;
    for j in 0..nodes {
        let t = -PI + j as f64 * h;
        let (s, c) = phase(t).sin_cos();
        re += c;
        im += s;
    }
    Complex64::new(re, im) / nodes as f64
}

/// `J_n^{p,q}(u, v)` by the trapezoidal rule on `nodes` points.
pub fn eval_quadrature(idx: Index, u: f64, v: f64, nodes: usize) -> Result<QuadratureResult> {
    check_nodes(nodes)?;
    let (n, p, q) = (idx.n as f64, idx.p as f64, idx.q as f64);
    let z = trapezoid(nodes, |t| u * (p * t).sin() + v * (q * t).sin() - n * t);
    Ok(QuadratureResult {
        value: z.re,
        residual: z.im,
        nodes,
    })
}

/// Node count that resolves the integrand to rounding level.
///
/// Next power of two above both `8(|u|+|v|+|n|+10)` and twice the
/// integrand's Fourier width `p|u| + q|v| + |n|` plus a margin.
pub fn auto_nodes(idx: Index, u: f64, v: f64) -> usize {
    let n = idx.n.unsigned_abs() as f64;
    let basic = 8.0 * (u.abs() + v.abs() + n + 10.0);
    let width = idx.p.unsigned_abs() as f64 * u.abs() + idx.q.unsigned_abs() as f64 * v.abs() + n;
    let needed = basic.max(2.0 * width + 64.0).ceil() as usize;
    needed.next_power_of_two()
}

/// [`eval_quadrature`] with [`auto_nodes`].
pub fn eval_quadrature_auto(idx: Index, u: f64, v: f64) -> Result<QuadratureResult> {
    eval_quadrature(idx, u, v, auto_nodes(idx, u, v))
}

/// `J_n^{1,q}(u, v; e^{iδ}) = (1/2π)∫ exp(i(u sin t + v sin(qt + δ) − nt)) dt`.
pub fn eval_param_quadrature(
    n: i64,
    q: i64,
    u: f64,
    v: f64,
    delta: f64,
    nodes: usize,
) -> Result<Complex64> {
    check_nodes(nodes)?;
    let (nf, qf) = (n as f64, q as f64);
    Ok(trapezoid(nodes, |t| u * t.sin() + v * (qf * t + delta).sin() - nf * t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::bessel_j;

    fn idx(n: i64, p: i64, q: i64) -> Index {
        Index::new(n, p, q).unwrap()
    }

    #[test]
    fn examples() {
        let r = eval_quadrature(idx(0, 1, 1), 0.0, 0.0, 64).unwrap();
        assert_eq!(r.value, 1.0);
        let r = eval_quadrature(idx(2, 3, 3), 0.7, 0.5, 512).unwrap();
        assert!(r.value.abs() < 1e-12);
        let r = eval_quadrature(idx(3, 3, 3), 0.7, 0.5, 512).unwrap();
        assert!((r.value - bessel_j(1, 1.2).unwrap()).abs() < 1e-13);
        assert!(r.residual.abs() < 1e-12);
    }

    #[test]
    fn param_examples() {
        let z = eval_param_quadrature(0, 2, 0.0, 0.0, 0.7, 64).unwrap();
        assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let z = eval_param_quadrature(2, 2, 1.0, 1.0, 0.0, 1024).unwrap();
        let r = eval_quadrature(idx(2, 1, 2), 1.0, 1.0, 1024).unwrap();
        assert!((z.re - r.value).abs() < 1e-14);
        assert!(z.im.abs() < 1e-12);
    }

    #[test]
    fn too_few_nodes() {
        assert!(eval_quadrature(idx(0, 1, 2), 0.0, 0.0, 8).is_err());
        assert!(eval_param_quadrature(0, 2, 0.0, 0.0, 0.0, 15).is_err());
    }

    #[test]
    fn auto_nodes_resolve_large_arguments() {
        let i = idx(-17, 3, 5);
        let (u, v) = (25.0, -28.0);
        let a = eval_quadrature_auto(i, u, v).unwrap();
        let b = eval_quadrature(i, u, v, 4 * a.nodes).unwrap();
        assert!((a.value - b.value).abs() < 1e-13);
        assert!(a.residual.abs() < 1e-12);
    }
}
