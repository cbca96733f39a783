use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative half-width of the excluded band around the turning point `n = q|v|`.
pub const TURNING_GUARD: f64 = 0.02;

/// Nodal lines are reported for `|u|` up to this value.
pub const NODAL_WINDOW: f64 = 50.0;

struct Checked {
    n: f64,
    p: f64,
    q: f64,
    u: f64,
    v: f64,
    /// `n / (q|v|)`
    ratio: f64,
}

fn check(n: i64, p: i64, q: i64, u: f64, v: f64) -> Result<Checked> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidIndex(format!("zero upper index: p={p}, q={q}")));
    }
    if !(u.is_finite() && v.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument ({u}, {v})")));
    }
    // J_n^{p,q}(u, v) = J_{−n}^{p,q}(−u, −v). The caller has already folded
    // the sign of q into v.
    let (mut n, mut u, mut v) = (n as f64, u, v);
    if n < 0.0 {
        n = -n;
        u = -u;
        v = -v;
    }
    let (p, q) = (p as f64, q.unsigned_abs() as f64);
    if v == 0.0 {
        return Err(Error::Regime("large-order forms need v != 0".into()));
    }
    let ratio = n / (q * v.abs());
    if (ratio - 1.0).abs() < TURNING_GUARD {
        return Err(Error::DivergenceZone(format!(
            "n/(q|v|) = {ratio} is within {TURNING_GUARD} of the turning point"
        )));
    }
    Ok(Checked { n, p, q, u, v, ratio })
}

fn fold_q(q: i64, v: f64) -> f64 {
    // sin(−|q| t) = −sin(|q| t): a negative q flips the sign of v.
    if q < 0 {
        -v
    } else {
        v
    }
}

/// Stationary-phase form for `n < q|v|`, summing the `2q` real points
/// `±t_s` with `t_s = (θ₀ + 2πs)/q` and `cos θ₀ = n/(qv)`.
pub fn asym_large_vn_real(n: i64, p: i64, q: i64, u: f64, v: f64) -> Result<f64> {
    let c = check(n, p, q, u, fold_q(q, v))?;
    if c.ratio >= 1.0 {
        return Err(Error::Regime(format!(
            "real-saddle form needs n < q|v|, got n/(q|v|) = {}",
            c.ratio
        )));
    }
    let Checked { n, p, q, u, v, .. } = c;
    let theta0 = (n / (q * v)).acos();
    let sin0 = theta0.sin();
    let amp = (2.0 / (PI * q * q * v.abs() * sin0)).sqrt();
    let shift = v.signum() * FRAC_PI_4;
    if p == 1.0 && q == 2.0 && v > 0.0 {
        let t0 = theta0 / 2.0;
        let arg = v * sin0 - n * t0 - shift;
        let value = if (n as i64) % 2 == 0 {
            2.0 * (u * t0.sin()).cos() * arg.cos()
        } else {
            -2.0 * (u * t0.sin()).sin() * arg.sin()
        };
        return Ok(amp * value);
    }
    let qi = q as i64;
    let mut sum = 0.0;
    for s in -qi..=qi {
        let t = (theta0 + 2.0 * PI * s as f64) / q;
        if t > -PI && t <= PI {
            sum += (u * (p * t).sin() + v * sin0 - n * t - shift).cos();
        }
    }
    Ok(amp * sum)
}

/// Saddle-point form for `n > q|v|`, through the saddles `x_s + iy` with
/// `y = −arccosh(n/(q|v|))/q`.
pub fn asym_large_vn_complex(n: i64, p: i64, q: i64, u: f64, v: f64) -> Result<f64> {
    let c = check(n, p, q, u, fold_q(q, v))?;
    if c.ratio <= 1.0 {
        return Err(Error::Regime(format!(
            "complex-saddle form needs n > q|v|, got n/(q|v|) = {}",
            c.ratio
        )));
    }
    let Checked { n, p, q, u, v, ratio } = c;
    let y = -ratio.acosh() / q;
    let sh = (v * (q * y).sinh()).abs();
    let ni = n as i64;
    if p == 1.0 && q == 2.0 {
        let big_y = -y;
        let a = (sh - n * big_y).exp() / (2.0 * PI * sh).sqrt();
        return Ok(if v < 0.0 {
            a * (u * big_y.cosh() - n * FRAC_PI_2).cos()
        } else if ni % 2 == 0 {
            a * (u * big_y.sinh()).cosh()
        } else {
            a * (u * big_y.sinh()).sinh()
        });
    }
    let pref = (sh - n * y.abs()).exp() / (2.0 * PI * q * q * sh).sqrt();
    let offset = if v > 0.0 { 0.0 } else { PI };
    let qi = q as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    for s in -qi..=qi {
        let x = (offset + 2.0 * PI * s as f64) / q;
        if x > -PI && x <= PI + 1e-12 {
            let t = Complex64::new(x, y);
            let weight = Complex64::from_polar(1.0, -n * x);
            sum += weight * (Complex64::i() * u * (t * p).sin()).exp();
        }
    }
    Ok(pref * sum.re)
}

/// Picks the real or complex saddle form from the sign of `q|v| − n`.
pub fn asym_large_vn(n: i64, p: i64, q: i64, u: f64, v: f64) -> Result<f64> {
    let real = (n.unsigned_abs() as f64) < (q.unsigned_abs() as f64) * v.abs();
    if real {
        asym_large_vn_real(n, p, q, u, v)
    } else {
        asym_large_vn_complex(n, p, q, u, v)
    }
}

/// Predicted zeros in `u` of `J_n^{1,2}(u, v)` at fixed `v`, for `|u| ≤ 50`.
///
/// With `k = √(1/2 − n/(4v))`: for `n < 2|v|` the zeros are
/// `u·k = (2j+1)π/2` (even `n`) or `u·k = jπ` (odd `n`); for `n > 2|v|` and
/// `v < 0` they are `u·k = (2j+1+n)π/2`.
pub fn nodal_lines_large_vn(n: i64, v: f64) -> Result<Vec<f64>> {
    if n < 0 {
        return Err(Error::Domain(format!("need n >= 0, got {n}")));
    }
    if v == 0.0 || !v.is_finite() {
        return Err(Error::Regime(format!("nodal estimate needs finite v != 0, got {v}")));
    }
    let nf = n as f64;
    let turning = 2.0 * v.abs();
    if nf == turning {
        return Err(Error::Regime(format!("n = 2|v| = {nf} is the turning point")));
    }
    if nf > turning && v > 0.0 {
        return Err(Error::Regime(format!(
            "no oscillation in u for n > 2v with v > 0 (n={n}, v={v})"
        )));
    }
    let k = (0.5 - nf / (4.0 * v)).sqrt();
    let phase = |j: i64| -> f64 {
        if nf > turning {
            (2 * j + 1 + n) as f64 * FRAC_PI_2
        } else if n % 2 == 0 {
            (2 * j + 1) as f64 * FRAC_PI_2
        } else {
            j as f64 * PI
        }
    };
    let jmax = (NODAL_WINDOW * k / PI).ceil() as i64 + n + 2;
    let mut zeros: Vec<f64> = (-jmax - n - 2..=jmax)
        .map(|j| phase(j) / k)
        .filter(|u| u.abs() <= NODAL_WINDOW)
        .collect();
    zeros.sort_by(|a, b| a.total_cmp(b));
    zeros.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    Ok(zeros)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{eval, Index};

    fn exact(n: i64, p: i64, q: i64, u: f64, v: f64) -> f64 {
        eval(Index::new(n, p, q).unwrap(), u, v).unwrap()
    }

    fn sign_changes(n: i64, v: f64, lo: f64, hi: f64) -> Vec<f64> {
        let step = 0.01;
        let mut out = Vec::new();
        let mut a = lo;
        let mut fa = exact(n, 1, 2, a, v);
        while a < hi {
            let b = a + step;
            let fb = exact(n, 1, 2, b, v);
            if (fa > 0.0) != (fb > 0.0) {
                out.push(0.5 * (a + b));
            }
            a = b;
            fa = fb;
        }
        out
    }

    #[test]
    fn real_regime_matches_the_general_sum() {
        // The (1,2) product form and the generic sum must coincide.
        for &(n, u) in &[(30, 3.0), (31, -2.5), (0, 7.0)] {
            let product = asym_large_vn_real(n, 1, 2, u, 64.0).unwrap();
            let theta0 = (n as f64 / 128.0).acos();
            let amp = (2.0 / (PI * 4.0 * 64.0 * theta0.sin())).sqrt();
            let mut sum = 0.0;
            for t in [theta0 / 2.0, theta0 / 2.0 - PI] {
                sum += (u * t.sin() + 64.0 * theta0.sin() - n as f64 * t - FRAC_PI_4).cos();
            }
            assert!((product - amp * sum).abs() < 1e-14);
        }
    }

    #[test]
    fn real_regime_accuracy() {
        for &(n, u, v) in &[(30, 2.0, 64.0), (30, -4.0, 64.0), (10, 1.0, -40.0)] {
            let a = asym_large_vn_real(n, 1, 2, u, v).unwrap();
            let e = exact(n, 1, 2, u, v);
            assert!((a - e).abs() < 0.02, "{n} {u} {v}: {a} vs {e}");
        }
        // Ordinary Bessel limit: u = 0, q = 1.
        let a = asym_large_vn_real(20, 1, 1, 0.0, 60.0).unwrap();
        assert!((a - crate::bessel_j(20, 60.0).unwrap()).abs() < 0.01);
    }

    #[test]
    fn complex_regime_is_debye_for_ordinary_bessel() {
        for &(n, x) in &[(40, 20.0), (40, -20.0), (41, -20.0)] {
            let a = asym_large_vn_complex(n, 1, 1, 0.0, x).unwrap();
            let e = crate::bessel_j(n, x).unwrap();
            assert!(((a - e) / e).abs() < 0.02, "{n} {x}: {a} vs {e}");
        }
    }

    #[test]
    fn complex_closed_forms_match_general_sum() {
        // Evaluate the generic saddle sum by hand for (1,2).
        for &(n, u, v) in &[(30, 3.0, -12.0), (30, 2.0, 12.0), (31, 1.5, 12.0)] {
            let closed = asym_large_vn_complex(n, 1, 2, u, v).unwrap();
            let y: f64 = -(n as f64 / 24.0).acosh() / 2.0;
            let sh = (v * (2.0 * y).sinh()).abs();
            let pref = (sh - n as f64 * y.abs()).exp() / (8.0 * PI * sh).sqrt();
            let xs: [f64; 2] = if v > 0.0 { [0.0, PI] } else { [-FRAC_PI_2, FRAC_PI_2] };
            let mut sum = Complex64::new(0.0, 0.0);
            for x in xs {
                let t = Complex64::new(x, y);
                sum += Complex64::from_polar(1.0, -(n as f64) * x) * (Complex64::i() * u * t.sin()).exp();
            }
            let general = pref * sum.re;
            assert!((closed - general).abs() <= 1e-12 * general.abs().max(1e-300), "{closed} vs {general}");
        }
    }

    #[test]
    fn regimes_and_guards() {
        assert!(matches!(asym_large_vn_real(30, 1, 2, 0.0, 10.0), Err(Error::Regime(_))));
        assert!(matches!(asym_large_vn_complex(30, 1, 2, 0.0, 64.0), Err(Error::Regime(_))));
        assert!(matches!(asym_large_vn(30, 1, 2, 0.0, 15.1), Err(Error::DivergenceZone(_))));
        assert!(matches!(asym_large_vn(30, 1, 2, 0.0, -14.9), Err(Error::DivergenceZone(_))));
        assert!(asym_large_vn(30, 1, 2, 0.0, 16.0).is_ok());
        assert!(matches!(asym_large_vn(3, 1, 2, 0.0, 0.0), Err(Error::Regime(_))));
    }

    #[test]
    fn small_n_agrees_with_large_argument_form() {
        let a = asym_large_vn_real(0, 1, 2, 3.0, 10.0).unwrap();
        let b = crate::asymptotic::asym_large_args_12(0, 3.0, 10.0).unwrap();
        assert!((a - b).abs() < 0.02, "{a} vs {b}");
    }

    #[test]
    fn odd_n_vanishes_on_the_v_axis() {
        assert_eq!(asym_large_vn_real(31, 1, 2, 0.0, 64.0).unwrap(), 0.0);
        assert_eq!(asym_large_vn_complex(31, 1, 2, 0.0, 12.0).unwrap(), 0.0);
    }

    #[test]
    fn negative_n_mirrors() {
        let a = asym_large_vn(-30, 1, 2, 2.0, -64.0).unwrap();
        let b = asym_large_vn(30, 1, 2, -2.0, 64.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn nodal_examples() {
        let z = nodal_lines_large_vn(30, 64.0).unwrap();
        let k = (0.5f64 - 30.0 / 256.0).sqrt();
        assert!(z.iter().any(|&u| (u - FRAC_PI_2 / k).abs() < 1e-12));
        assert!(z.iter().all(|u| u.abs() <= NODAL_WINDOW));
        assert!(matches!(nodal_lines_large_vn(30, 12.0), Err(Error::Regime(_))));
        assert!(matches!(nodal_lines_large_vn(30, 15.0), Err(Error::Regime(_))));
        assert!(matches!(nodal_lines_large_vn(30, 0.0), Err(Error::Regime(_))));
        // Odd n puts a zero on the v axis.
        assert!(nodal_lines_large_vn(31, 64.0).unwrap().contains(&0.0));
    }

    #[test]
    fn nodal_predictions_near_exact_zeros() {
        for &(n, v) in &[(30, 64.0), (30, -12.0), (29, 64.0), (4, -30.0)] {
            let exact_zeros = sign_changes(n, v, -10.5, 10.5);
            for u in nodal_lines_large_vn(n, v).unwrap().into_iter().filter(|u| u.abs() < 10.0) {
                let d = exact_zeros.iter().map(|z| (z - u).abs()).fold(f64::INFINITY, f64::min);
                assert!(d < 0.15, "n={n} v={v}: predicted {u}, nearest exact {d} away");
            }
        }
    }
}
