use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use crate::error::{Error, Result};

/// Relative width of the excluded band around `v = ±u/2`.
pub const DIVERGENCE_GUARD: f64 = 0.05;

/// True within `0.05·|(u, v)|` of either line `v = ±u/2`.
pub fn in_divergence_zone_12(u: f64, v: f64) -> bool {
    let r = u.hypot(v);
    let scale = (1.25f64).sqrt();
    let d = (v - 0.5 * u).abs().min((v + 0.5 * u).abs()) / scale;
    d < DIVERGENCE_GUARD * r
}

fn hankel_leading(n: i64, x: f64) -> f64 {
    let a = x.abs();
    let val = (2.0 / (PI * a)).sqrt() * (a - n as f64 * FRAC_PI_2 - FRAC_PI_4).cos();
    if x < 0.0 && n % 2 != 0 {
        -val
    } else {
        val
    }
}

/// Stationary-phase approximation of `J_n^{1,2}(u, v)` for `|u|, |v| ≫ |n|`.
///
/// Each admissible root `c_± = (−u/v ± √((u/v)² + 32))/8` of `cos t` adds
/// `√(2/(π|φ''|)) cos(φ ∓ n arccos c − π/4)`.
pub fn asym_large_args_12(n: i64, u: f64, v: f64) -> Result<f64> {
    if !(u.is_finite() && v.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument ({u}, {v})")));
    }
    if u == 0.0 && v == 0.0 {
        return Err(Error::Regime("large-argument form needs (u, v) != (0, 0)".into()));
    }
    if v == 0.0 {
        return Ok(hankel_leading(n, u));
    }
    if in_divergence_zone_12(u, v) {
        return Err(Error::DivergenceZone(format!(
            "({u}, {v}) is within {DIVERGENCE_GUARD}·|(u,v)| of v = ±u/2"
        )));
    }
    if v < 0.0 {
        return asym_large_args_12(-n, -u, -v);
    }
    let w = u / v;
    let s = (w * w + 32.0).sqrt();
    let nf = n as f64;
    let mut total = 0.0;
    if -2.0 * v < u {
        let c = (-w + s) / 8.0;
        let sn = (1.0 - c * c).max(0.0).sqrt();
        let phi = (u + 2.0 * v * c) * sn;
        let curv = (u + 8.0 * v * c) * sn;
        total += (2.0 / (PI * curv.abs())).sqrt() * (phi - nf * c.acos() - FRAC_PI_4).cos();
    }
    if u < 2.0 * v {
        let c = (-w - s) / 8.0;
        let sn = (1.0 - c * c).max(0.0).sqrt();
        let phi = -(u + 2.0 * v * c) * sn;
        let curv = (u + 8.0 * v * c) * sn;
        total += (2.0 / (PI * curv.abs())).sqrt() * (phi + nf * c.acos() - FRAC_PI_4).cos();
    }
    Ok(total)
}

/// Leading behaviour for `v → ∞` at fixed `n` and `u`:
/// `√(2/πv)·cos(v − (n+1)π/4)·cos(u/√2)` for even `n`,
/// `−√(2/πv)·sin(v − (n+1)π/4)·sin(u/√2)` for odd `n`.
pub fn asym_limit_v_12(n: i64, u: f64, v: f64) -> Result<f64> {
    if !(v > 0.0 && v.is_finite() && u.is_finite()) {
        return Err(Error::Domain(format!("need finite u and v > 0, got ({u}, {v})")));
    }
    let amp = (2.0 / (PI * v)).sqrt();
    let arg = v - (n as f64 + 1.0) * FRAC_PI_4;
    Ok(if n % 2 == 0 {
        amp * arg.cos() * (u / SQRT_2).cos()
    } else {
        -amp * arg.sin() * (u / SQRT_2).sin()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{bessel_j, eval, Index};

    fn exact(n: i64, u: f64, v: f64) -> f64 {
        eval(Index::new(n, 1, 2).unwrap(), u, v).unwrap()
    }

    #[test]
    fn v_zero_is_the_bessel_asymptote() {
        for &(n, x) in &[(0, 50.0), (3, 80.0), (3, -80.0), (2, -60.0)] {
            let a = asym_large_args_12(n, x, 0.0).unwrap();
            let b = bessel_j(n, x).unwrap();
            assert!((a - b).abs() < 0.1 * (2.0 / (PI * x.abs())).sqrt(), "{n} {x}: {a} vs {b}");
        }
    }

    #[test]
    fn divergence_zone_is_refused() {
        assert!(matches!(asym_large_args_12(0, 20.0, 10.0), Err(Error::DivergenceZone(_))));
        assert!(matches!(asym_large_args_12(0, -20.0, 10.0), Err(Error::DivergenceZone(_))));
        assert!(matches!(asym_large_args_12(1, 19.5, 10.0), Err(Error::DivergenceZone(_))));
        assert!(asym_large_args_12(0, 5.0, 10.0).is_ok());
    }

    #[test]
    fn line_at_v_ten() {
        // Median relative error over the points where |J| > 0.02.
        for n in [0, 1] {
            let mut errs = Vec::new();
            for i in 0..=300 {
                let u = -15.0 + 0.1 * i as f64;
                let e = exact(n, u, 10.0);
                if e.abs() <= 0.02 {
                    continue;
                }
                let a = asym_large_args_12(n, u, 10.0).unwrap();
                errs.push(((a - e) / e).abs());
            }
            errs.sort_by(|a, b| a.total_cmp(b));
            let median = errs[errs.len() / 2];
            assert!(median < 0.02, "n={n}: median {median}");
        }
    }

    #[test]
    fn single_point_accuracy() {
        let e = exact(0, 5.0, 10.0);
        let a = asym_large_args_12(0, 5.0, 10.0).unwrap();
        assert!(((a - e) / e).abs() < 0.05, "{a} vs {e}");
    }

    #[test]
    fn negative_v_uses_the_mirror() {
        let a = asym_large_args_12(2, 7.0, -30.0).unwrap();
        let b = asym_large_args_12(-2, -7.0, 30.0).unwrap();
        assert_eq!(a, b);
        let e = exact(2, 7.0, -30.0);
        assert!((a - e).abs() < 0.02);
    }

    #[test]
    fn limit_form_approaches_exact() {
        for &(n, u) in &[(0, 1.0), (1, 1.5), (2, -0.7), (3, 2.0)] {
            let v = 400.0;
            let a = asym_limit_v_12(n, u, v).unwrap();
            let e = exact(n, u, v);
            assert!((a - e).abs() < 0.1 * (2.0 / (PI * v)).sqrt(), "{n} {u}: {a} vs {e}");
        }
        assert!(asym_limit_v_12(0, 1.0, -3.0).is_err());
        assert_eq!(asym_limit_v_12(1, 0.0, 50.0).unwrap(), 0.0);
        let want = (2.0 / (100.0 * PI)).sqrt() * (100.0 - FRAC_PI_4).cos();
        assert!((asym_limit_v_12(0, 0.0, 100.0).unwrap() - want).abs() < 1e-15);
        let e = exact(0, 2.0, 200.0);
        let a = asym_limit_v_12(0, 2.0, 200.0).unwrap();
        assert!(e.abs() <= 0.02 || ((a - e) / e).abs() < 0.02, "{a} vs {e}");
    }

    #[test]
    fn both_branches_on_the_v_axis() {
        let e = exact(1, 0.0, 10.0);
        let a = asym_large_args_12(1, 0.0, 10.0).unwrap();
        assert!((a - e).abs() < 0.02, "{a} vs {e}");
        // Far out along u the form reduces to the ordinary Bessel asymptote.
        let a = asym_large_args_12(0, 400.0, 1.0).unwrap();
        let b = asym_large_args_12(0, 400.0, 0.0).unwrap();
        assert!((a - b).abs() < 0.01);
    }
}
