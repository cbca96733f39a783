use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::eval::eval;
use crate::index::Index;
use crate::series::MAX_SERIES_ARGUMENT;

fn check_k(k: usize) -> Result<i64> {
    if k == 0 {
        return Err(Error::Domain("truncation K must be positive".into()));
    }
    Ok(k as i64)
}

fn upper(p: i64, q: i64) -> Result<Index> {
    Index::new(0, p, q)
}

/// `Σ_{n=−K..K} J_n^{p,q}(u, v) − 1`.
pub fn sum_rule_total(p: i64, q: i64, u: f64, v: f64, k: usize) -> Result<f64> {
    let k = check_k(k)?;
    let idx = upper(p, q)?;
    let mut s = 0.0;
    for n in -k..=k {
        s += eval(idx.with_n(n), u, v)?;
    }
    Ok(s - 1.0)
}

/// `Σ_{n=−K..K} (J_n^{p,q}(u, v))² − 1`.
pub fn sum_rule_squares(p: i64, q: i64, u: f64, v: f64, k: usize) -> Result<f64> {
    let k = check_k(k)?;
    let idx = upper(p, q)?;
    let mut s = 0.0;
    for n in -k..=k {
        let j = eval(idx.with_n(n), u, v)?;
        s += j * j;
    }
    Ok(s - 1.0)
}

/// `Σ_{n=−K..K} iⁿ J_n^{1,2}(u, v) − e^{iu}`.
pub fn sum_rule_phase12(u: f64, v: f64, k: usize) -> Result<Complex64> {
    let k = check_k(k)?;
    let idx = upper(1, 2)?;
    let mut s = Complex64::new(0.0, 0.0);
    for n in -k..=k {
        let j = eval(idx.with_n(n), u, v)?;
        let w = match n.rem_euclid(4) {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        s += w * j;
    }
    Ok(s - Complex64::from_polar(1.0, u))
}

/// Outcome of the adaptive Kapteyn sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KapteynResult {
    /// `Σ_{n=−K..K} J_n^{p,q}(nu, nv) − 1/(1 − pu − qv)`.
    pub residual: f64,
    /// The `K` at which the partial sums settled.
    pub terms: usize,
}

const KAPTEYN_STEP_TOL: f64 = 1e-10;
const KAPTEYN_SETTLE: usize = 4;

/// Kapteyn series `Σ_n J_n^{p,q}(nu, nv) = 1/(1 − pu − qv)`, valid for
/// `|pu| + |qv| < 1`.
///
/// `K` grows until the partial sum changes by less than `1e−10` for four
/// consecutive steps, up to `k_max`.
pub fn kapteyn_sum(p: i64, q: i64, u: f64, v: f64, k_max: usize) -> Result<KapteynResult> {
    let idx = upper(p, q)?;
    let rate = (p as f64 * u).abs() + (q as f64 * v).abs();
    if !(rate < 1.0) {
        return Err(Error::Domain(format!(
            "Kapteyn series needs |pu| + |qv| < 1, got {rate}"
        )));
    }
    let reachable = (MAX_SERIES_ARGUMENT / u.abs().max(v.abs()).max(1e-300)).floor();
    let k_max = (k_max as f64).min(reachable) as i64;
    let closed = 1.0 / (1.0 - p as f64 * u - q as f64 * v);

    let mut s = 1.0; // n = 0 term: J_0(0, 0)
    let mut settled = 0usize;
    let mut last_step = f64::INFINITY;
    for k in 1..=k_max {
        let kf = k as f64;
        let step = eval(idx.with_n(k), kf * u, kf * v)? + eval(idx.with_n(-k), -kf * u, -kf * v)?;
        s += step;
        last_step = step.abs();
        if last_step < KAPTEYN_STEP_TOL {
            settled += 1;
            if settled == KAPTEYN_SETTLE {
                return Ok(KapteynResult {
                    residual: s - closed,
                    terms: k as usize,
                });
            }
        } else {
            settled = 0;
        }
    }
    Err(Error::ToleranceNotMet {
        requested: KAPTEYN_STEP_TOL,
        achieved: last_step,
    })
}

/// `⌈p|u1| + q|v1| + p|u2| + q|v2|⌉ + 50`, wide enough for both factors of a
/// bilinear sum.
pub fn default_bilinear_k(p: i64, q: i64, u1: f64, v1: f64, u2: f64, v2: f64) -> usize {
    let (p, q) = (p.abs() as f64, q.abs() as f64);
    (p * u1.abs() + q * v1.abs() + p * u2.abs() + q * v2.abs()).ceil() as usize + 50
}

/// `J_n(u1+u2, v1+v2) − Σ_{k=−K..K} J_{n−k}(u1, v1) J_k(u2, v2)`.
pub fn addition_residual(
    idx: Index,
    u1: f64,
    v1: f64,
    u2: f64,
    v2: f64,
    k: usize,
) -> Result<f64> {
    let k = check_k(k)?;
    let lhs = eval(idx, u1 + u2, v1 + v2)?;
    let mut s = 0.0;
    for m in -k..=k {
        let right = eval(idx.with_n(m), u2, v2)?;
        if right == 0.0 {
            continue;
        }
        s += eval(idx.with_n(idx.n - m), u1, v1)? * right;
    }
    Ok(lhs - s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(n: i64, p: i64, q: i64) -> Index {
        Index::new(n, p, q).unwrap()
    }

    #[test]
    fn sum_rule_examples() {
        assert_eq!(sum_rule_total(1, 2, 0.0, 0.0, 10).unwrap(), 0.0);
        assert!(sum_rule_total(1, 2, 3.0, 1.5, 60).unwrap().abs() <= 1e-10);
        assert!(sum_rule_total(2, 3, 5.0, -4.0, 80).unwrap().abs() <= 1e-10);
        assert_eq!(sum_rule_squares(1, 2, 0.0, 0.0, 10).unwrap(), 0.0);
        assert!(sum_rule_squares(1, 3, 2.0, 2.0, 60).unwrap().abs() <= 1e-10);
        assert!(sum_rule_squares(1, 2, 10.0, 5.0, 80).unwrap().abs() <= 1e-10);
        assert!(sum_rule_phase12(0.0, 0.0, 10).unwrap().norm() <= 1e-15);
        assert!(sum_rule_phase12(1.0, 0.7, 60).unwrap().norm() <= 1e-10);
        assert!(sum_rule_phase12(-2.5, 4.0, 80).unwrap().norm() <= 1e-10);
    }

    #[test]
    fn kapteyn_examples() {
        let r = kapteyn_sum(1, 2, 0.0, 0.0, 1000).unwrap();
        assert_eq!(r.residual, 0.0);
        let r = kapteyn_sum(1, 2, 0.1, 0.2, 1000).unwrap();
        assert!(r.residual.abs() <= 1e-8, "{r:?}");
        let r = kapteyn_sum(1, 3, 0.05, 0.1, 1000).unwrap();
        assert!(r.residual.abs() <= 1e-8, "{r:?}");
    }

    #[test]
    fn kapteyn_domain_boundary() {
        assert!(matches!(kapteyn_sum(1, 2, 0.5, 0.25, 1000), Err(Error::Domain(_))));
        assert!(matches!(kapteyn_sum(1, 2, -0.2, 0.4, 1000), Err(Error::Domain(_))));
        assert!(kapteyn_sum(1, 2, 0.2, 0.3, 1000).is_ok());
    }

    #[test]
    fn kapteyn_needs_more_terms_near_the_boundary() {
        let near = kapteyn_sum(1, 2, 0.3, 0.3, 5000).unwrap();
        let far = kapteyn_sum(1, 2, 0.1, 0.1, 5000).unwrap();
        assert!(near.terms > far.terms);
    }

    #[test]
    fn addition_examples() {
        let r = addition_residual(idx(0, 1, 2), 1.2, -0.7, -1.2, 0.7, 60).unwrap();
        assert!(r.abs() <= 1e-12);
        let r = addition_residual(idx(3, 1, 2), 1.0, 0.5, 0.7, -0.2, 60).unwrap();
        assert!(r.abs() <= 1e-10);
        let r = addition_residual(idx(1, 2, 3), 0.0, 0.0, 2.0, 1.0, 60).unwrap();
        assert!(r.abs() <= 1e-15);
    }
}
