//! Ordinary Bessel functions `J_n(x)` of integer order.
//!
//! Values are produced a whole row at a time. Orders up to roughly
//! `|x| + 12·|x|^(1/3)` come from a single downward (Miller) recurrence that
//! is normalized with `J_0² + 2 Σ J_k² = 1`; the sign is fixed by
//! `J_0 + 2 Σ J_2k = 1`. Higher orders, where `J_k` decays monotonically,
//! are obtained from backward continued-fraction ratios anchored at the last
//! Miller value. Both stages depend only on the argument and on the highest
//! order requested, so a row and a single-order call agree entry by entry.

use crate::error::{Error, Result};

/// Largest supported `|x|`.
pub const MAX_ARGUMENT: f64 = 1e6;
/// Largest supported `|order|`.
pub const MAX_ORDER: i64 = 100_000;

/// Magnitudes below this are flushed to zero.
pub const UNDERFLOW: f64 = 1e-300;

const RESCALE_AT: f64 = 1e100;
const SMALL_ARGUMENT: f64 = 1e-8;

/// A contiguous block of `J_m(x)` for `order_min <= m <= order_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct BesselRow {
    order_min: i64,
    order_max: i64,
    argument: f64,
    values: Vec<f64>,
}

impl BesselRow {
    pub fn order_min(&self) -> i64 {
        self.order_min
    }

    pub fn order_max(&self) -> i64 {
        self.order_max
    }

    pub fn argument(&self) -> f64 {
        self.argument
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `J_order(x)` if `order` lies inside the row.
    pub fn get(&self, order: i64) -> Option<f64> {
        if order < self.order_min || order > self.order_max {
            return None;
        }
        Some(self.values[(order - self.order_min) as usize])
    }

    /// Like [`BesselRow::get`] but returns zero outside the stored range.
    ///
    /// Only meaningful for rows built wide enough that every omitted order is
    /// negligible, which is how the series evaluators size them.
    pub(crate) fn get_or_zero(&self, order: i64) -> f64 {
        self.get(order).unwrap_or(0.0)
    }
}

fn check_domain(order: i64, x: f64) -> Result<()> {
    if !x.is_finite() || x.abs() > MAX_ARGUMENT {
        return Err(Error::Domain(format!(
            "Bessel argument {x} outside |x| <= {MAX_ARGUMENT:e}"
        )));
    }
    if order.abs() > MAX_ORDER {
        return Err(Error::Domain(format!(
            "Bessel order {order} outside |n| <= {MAX_ORDER}"
        )));
    }
    Ok(())
}

/// `J_order(x)` for integer order.
pub fn bessel_j(order: i64, x: f64) -> Result<f64> {
    check_domain(order, x)?;
    let m = order.unsigned_abs() as usize;
    let row = nonneg_row(m, x.abs());
    Ok(apply_parity(row[m], order, x))
}

/// `J_m(x)` for every `m` in `order_min..=order_max`.
pub fn bessel_row(order_min: i64, order_max: i64, x: f64) -> Result<BesselRow> {
    if order_min > order_max {
        return Err(Error::Domain(format!(
            "empty order range {order_min}..={order_max}"
        )));
    }
    check_domain(order_min, x)?;
    check_domain(order_max, x)?;
    Ok(row_unchecked(order_min, order_max, x))
}

/// Row builder for callers that already validated the range.
pub(crate) fn row_unchecked(order_min: i64, order_max: i64, x: f64) -> BesselRow {
    let top = order_min.unsigned_abs().max(order_max.unsigned_abs()) as usize;
    let base = nonneg_row(top, x.abs());
    let values = (order_min..=order_max)
        .map(|m| apply_parity(base[m.unsigned_abs() as usize], m, x))
        .collect();
    BesselRow {
        order_min,
        order_max,
        argument: x,
        values,
    }
}

/// Order window beyond which `J_m(x)` is negligible for the series evaluators.
pub(crate) fn negligible_order(x: f64) -> i64 {
    let a = x.abs();
    (a.ceil() + 40.0 + (15.0 * a.cbrt()).ceil()) as i64
}

#[inline]
fn apply_parity(value: f64, order: i64, x: f64) -> f64 {
    // J_{-m}(x) = (-1)^m J_m(x) and J_m(-x) = (-1)^m J_m(x).
    let odd = order.rem_euclid(2) == 1;
    let flips = (odd && order < 0) as u8 + (odd && x < 0.0) as u8;
    if flips % 2 == 1 {
        -value
    } else {
        value
    }
}

/// `J_0(x) ..= J_max(x)` for `x >= 0`.
fn nonneg_row(max: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; max + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    if x < SMALL_ARGUMENT {
        small_argument_row(&mut out, x);
        return out;
    }

    let cbrt = x.cbrt();
    let body_max = x.ceil() as usize + (12.0 * cbrt).ceil() as usize;
    let start = body_max + 25;
    let keep = max.min(body_max);

    // Downward recurrence f_{k-1} = (2k/x) f_k - f_{k+1}, f_{start+1} = 0.
    let mut f_next = 0.0f64;
    let mut f = 1e-30f64;
    let mut squares = 0.0f64;
    let mut even_sum = 0.0f64;
    for k in (1..=start).rev() {
        if k <= keep {
            out[k] = f;
        }
        squares += 2.0 * f * f;
        if k % 2 == 0 {
            even_sum += 2.0 * f;
        }
        let f_prev = (2.0 * k as f64 / x) * f - f_next;
        f_next = f;
        f = f_prev;
        if f.abs() > RESCALE_AT {
            let s = 1.0 / RESCALE_AT;
            f *= s;
            f_next *= s;
            squares *= s * s;
            even_sum *= s;
            for v in out.iter_mut().take(keep + 1).skip(k) {
                *v *= s;
            }
        }
    }
    out[0] = f;
    squares += f * f;
    even_sum += f;

    let norm = even_sum.signum() / squares.sqrt();
    for v in out.iter_mut().take(keep + 1) {
        *v = flush(*v * norm);
    }

    if max > body_max {
        continuation_tail(&mut out, body_max, x, cbrt);
    }
    out
}

/// Fills `out[body_max+1..]` from backward ratios `r_k = J_k / J_{k+1}`.
fn continuation_tail(out: &mut [f64], body_max: usize, x: f64, cbrt: f64) {
    let max = out.len() - 1;
    let top = max.min(first_underflow_order(body_max, x).saturating_sub(1));
    if top > body_max {
        let start = top + 30 + (12.0 * cbrt).ceil() as usize;
        let mut ratios = vec![0.0; top - body_max];
        let mut r = 2.0 * (start + 1) as f64 / x;
        for k in (body_max..start).rev() {
            r = 2.0 * (k + 1) as f64 / x - 1.0 / r;
            if k < top {
                ratios[k - body_max] = r;
            }
        }
        let mut value = out[body_max];
        for k in body_max..top {
            value = flush(value / ratios[k - body_max]);
            out[k + 1] = value;
            if value == 0.0 {
                break;
            }
        }
    }
    // Anything past `top` is below UNDERFLOW by the (x/2)^k / k! bound.
}

/// Smallest order `k > body_max` with `(x/2)^k / k! < UNDERFLOW`.
fn first_underflow_order(body_max: usize, x: f64) -> usize {
    let log_half = (x / 2.0).ln();
    let limit = UNDERFLOW.ln() - 1.0;
    let mut k = body_max + 1;
    let mut log_bound = k as f64 * log_half - ln_factorial(k);
    while log_bound >= limit {
        k += 1;
        log_bound += log_half - (k as f64).ln();
    }
    k
}

fn small_argument_row(out: &mut [f64], x: f64) {
    // J_k(x) = (x/2)^k / k! * (1 - (x/2)^2/(k+1) + ...); two terms are exact
    // to rounding for x < 1e-8.
    let h = x / 2.0;
    let h2 = h * h;
    let mut lead = 1.0f64;
    for (k, v) in out.iter_mut().enumerate() {
        if k > 0 {
            lead *= h / k as f64;
        }
        if lead < UNDERFLOW {
            break;
        }
        *v = flush(lead * (1.0 - h2 / (k as f64 + 1.0)));
    }
}

#[inline]
fn flush(v: f64) -> f64 {
    if v.abs() < UNDERFLOW {
        0.0
    } else {
        v.clamp(-1.0, 1.0)
    }
}

fn ln_factorial(n: usize) -> f64 {
    if n < 32 {
        return (2..=n).map(|k| (k as f64).ln()).sum();
    }
    let x = n as f64;
    (x + 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + 1.0 / (12.0 * x)
        - 1.0 / (360.0 * x * x * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    /// Trapezoidal rule for (1/2π) ∫ cos(x sin t − n t) dt; spectrally exact
    /// once the node count exceeds |x| + |n| by a few dozen.
    fn quadrature_oracle(n: i64, x: f64, nodes: usize) -> f64 {
        let h = 2.0 * PI / nodes as f64;
        let mut s = 0.0;
        for j in 0..nodes {
            let t = -PI + j as f64 * h;
            s += (x * t.sin() - n as f64 * t).cos();
        }
        s / nodes as f64
    }

    fn oracle(n: i64, x: f64) -> f64 {
        let nodes = 2 * (x.abs() as usize + n.unsigned_abs() as usize) + 128;
        quadrature_oracle(n, x, nodes)
    }

    #[test]
    fn values_at_zero() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(3, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j(-3, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn first_zero_of_j0() {
        // Bisection on the quadrature oracle, independent of the recurrence.
        let (mut a, mut b) = (2.0f64, 3.0f64);
        for _ in 0..80 {
            let m = 0.5 * (a + b);
            if quadrature_oracle(0, a, 256) * quadrature_oracle(0, m, 256) <= 0.0 {
                b = m;
            } else {
                a = m;
            }
        }
        let x0 = 0.5 * (a + b);
        assert!((x0 - 2.404_825_557_695_773).abs() < 1e-12);
        assert!(bessel_j(0, x0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn order_five_at_ten_matches_quadrature() {
        let reference = quadrature_oracle(5, 10.0, 4096);
        assert!((bessel_j(5, 10.0).unwrap() - reference).abs() < 1e-12);
        // Frozen from the quadrature oracle.
        assert!((reference - (-0.234_061_528_186_793_6)).abs() < 1e-14);
    }

    #[test]
    fn absolute_accuracy_against_quadrature() {
        for &x in &[0.3, 1.0, 2.5, 7.0, 19.9, 33.3, 64.0, 150.0, 1000.0] {
            for n in [0i64, 1, 2, 5, 9, 17, 30, 61, 120] {
                let got = bessel_j(n, x).unwrap();
                let want = oracle(n, x);
                assert!((got - want).abs() < 1e-13, "J_{n}({x}): {got} vs {want}");
            }
        }
    }

    #[test]
    fn relative_accuracy_in_decay_region() {
        // Far beyond the turning point the power series converges quickly
        // and gives an independent relative reference.
        fn power_series(n: u32, x: f64) -> f64 {
            let h = x / 2.0;
            let mut term = (0..n).fold(1.0, |acc, k| acc * h / (k + 1) as f64);
            let mut sum = term;
            for k in 1..60 {
                term *= -h * h / (k as f64 * (n + k) as f64);
                sum += term;
            }
            sum
        }
        for &(n, x) in &[(20u32, 1.0), (40, 3.0), (60, 5.0), (90, 0.5), (30, 0.01)] {
            let got = bessel_j(n as i64, x).unwrap();
            let want = power_series(n, x);
            assert!(((got - want) / want).abs() < 1e-12, "J_{n}({x})");
        }
    }

    #[test]
    fn large_argument_and_order() {
        let v = bessel_j(0, 1e6).unwrap();
        // Hankel asymptotics: sqrt(2/(pi x)) cos(x - pi/4) with O(1/x) correction.
        let x = 1e6f64;
        let approx = (2.0 / (PI * x)).sqrt() * (x - PI / 4.0).cos();
        assert!((v - approx).abs() < 1e-8);
        assert_eq!(bessel_j(100_000, 1.0).unwrap(), 0.0);
        let w = bessel_j(800, 900.0).unwrap();
        assert!((w - oracle(800, 900.0)).abs() < 1e-13);
    }

    #[test]
    fn tiny_arguments() {
        assert!((bessel_j(1, 1e-12).unwrap() - 5e-13).abs() < 1e-28);
        assert_eq!(bessel_j(0, 1e-200).unwrap(), 1.0);
        assert_eq!(bessel_j(2, 1e-200).unwrap(), 0.0);
        let v = bessel_j(3, 2e-8).unwrap();
        assert!((v - (1e-8f64).powi(3) / 6.0).abs() < 1e-40);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(bessel_j(0, 2e6), Err(Error::Domain(_))));
        assert!(matches!(bessel_j(200_000, 1.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_j(0, f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(bessel_row(3, 2, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn row_examples() {
        let row = bessel_row(-2, 2, 0.0).unwrap();
        assert_eq!(row.values(), &[0.0, 0.0, 1.0, 0.0, 0.0]);

        let row = bessel_row(0, 10, 1.0).unwrap();
        for k in 0..=10 {
            assert_eq!(row.get(k).unwrap(), bessel_j(k, 1.0).unwrap());
        }

        let row = bessel_row(0, 50, 5.0).unwrap();
        let at50 = row.get(50).unwrap();
        assert!(at50.abs() < 1e-30);
        // The quadrature oracle resolves only down to rounding level.
        assert!((at50 - oracle(50, 5.0)).abs() < 1e-15);
        for k in 16..50 {
            let (a, b) = (row.get(k).unwrap().abs(), row.get(k + 1).unwrap().abs());
            assert!(b < a / 3.0, "order {k}: no superexponential decay");
        }
    }

    #[test]
    fn row_matches_single_calls_across_tail_boundary() {
        for &x in &[0.7, 5.0, 12.0, 40.0] {
            let row = bessel_row(-90, 90, x).unwrap();
            for m in -90..=90 {
                let single = bessel_j(m, x).unwrap();
                let entry = row.get(m).unwrap();
                let ulp = f64::EPSILON * single.abs();
                assert!((single - entry).abs() <= ulp, "J_{m}({x}) {single} vs {entry}");
            }
        }
    }

    proptest! {
        #[test]
        fn bounded_by_one(n in -200i64..200, x in -500.0f64..500.0) {
            prop_assert!(bessel_j(n, x).unwrap().abs() <= 1.0);
        }

        #[test]
        fn parity_is_exact(n in -60i64..60, x in -80.0f64..80.0) {
            let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            prop_assert_eq!(bessel_j(-n, x).unwrap(), sign * bessel_j(n, x).unwrap());
            prop_assert_eq!(bessel_j(n, -x).unwrap(), sign * bessel_j(n, x).unwrap());
        }

        #[test]
        fn three_term_recurrence(n in -50i64..=50, x in -50.0f64..50.0) {
            prop_assume!(x.abs() > 1e-3);
            let row = bessel_row(n - 1, n + 1, x).unwrap();
            let (a, b, c) = (row.get(n - 1).unwrap(), row.get(n).unwrap(), row.get(n + 1).unwrap());
            let residual = a + c - 2.0 * n as f64 / x * b;
            prop_assert!(residual.abs() <= 1e-10 * b.abs().max(1.0));
        }

        #[test]
        fn sum_of_squares_is_one(x in -50.0f64..50.0) {
            let k = x.abs().ceil() as i64 + 40;
            let row = bessel_row(-k, k, x).unwrap();
            let s: f64 = row.values().iter().map(|v| v * v).sum();
            prop_assert!((s - 1.0).abs() < 1e-12);
        }
    }
}
