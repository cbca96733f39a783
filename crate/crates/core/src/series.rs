//! Product-series evaluation `Σ_k J_{M−qk}(u) J_{N+pk}(v) τ^k`.

use num_complex::Complex64;

use crate::bessel::{negligible_order, row_unchecked, BesselRow};
use crate::error::{Error, Result};
use crate::index::{solve_diophantine, Index};

/// Largest supported `|u|`, `|v|` for the series evaluators.
pub const MAX_SERIES_ARGUMENT: f64 = 1e4;
/// Smallest tolerance the series evaluators accept.
pub const MIN_TOLERANCE: f64 = 1e-14;

const CONSECUTIVE_SMALL: usize = 3;
const MAX_EXTENSION: usize = 100_000;

/// Outcome of a truncated product series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult<T> {
    pub value: T,
    pub terms_used: usize,
    /// Bound on the discarded tail.
    pub tail_bound: f64,
}

/// `J_n^{p,q}(u, v)` by the product series.
pub fn eval_series(idx: Index, u: f64, v: f64, tol: f64) -> Result<SeriesResult<f64>> {
    let r = product_series(idx, u, v, Complex64::new(1.0, 0.0), tol)?;
    Ok(SeriesResult {
        value: r.value.re,
        terms_used: r.terms_used,
        tail_bound: r.tail_bound,
    })
}

/// `J_n^{p,q}(u, v; τ)` by the product series.
///
/// `τ` must be unimodular or real with `0 < |τ| <= 1`. The value depends on
/// the Diophantine representative through an overall power of `τ`; the one
/// chosen by [`solve_diophantine`] is used, which for `p = 1` gives the
/// function whose integral representation is
/// `(1/2π)∫ exp(i(u sin t + v sin(qt + δ) − nt)) dt` at `τ = e^{iδ}`.
pub fn eval_param(
    idx: Index,
    u: f64,
    v: f64,
    tau: Complex64,
    tol: f64,
) -> Result<SeriesResult<Complex64>> {
    check_tau(tau)?;
    product_series(idx, u, v, tau, tol)
}

pub(crate) fn is_unimodular(tau: Complex64) -> bool {
    (tau.norm() - 1.0).abs() <= 1e-12
}

fn check_tau(tau: Complex64) -> Result<()> {
    if !(tau.re.is_finite() && tau.im.is_finite()) {
        return Err(Error::Domain(format!("tau must be finite, got {tau}")));
    }
    if is_unimodular(tau) {
        return Ok(());
    }
    if tau.im == 0.0 && tau.re != 0.0 && tau.re.abs() <= 1.0 {
        return Ok(());
    }
    Err(Error::Domain(format!(
        "tau must be unimodular or real with 0 < |tau| <= 1, got {tau}"
    )))
}

pub(crate) fn check_arguments(u: f64, v: f64) -> Result<()> {
    for (name, x) in [("u", u), ("v", v)] {
        if !x.is_finite() || x.abs() > MAX_SERIES_ARGUMENT {
            return Err(Error::Domain(format!(
                "{name} = {x} outside |{name}| <= {MAX_SERIES_ARGUMENT:e}"
            )));
        }
    }
    Ok(())
}

/// A Bessel row that widens itself on demand.
struct GrowingRow {
    x: f64,
    row: BesselRow,
}

impl GrowingRow {
    fn new(x: f64) -> Self {
        let l = negligible_order(x);
        GrowingRow {
            x,
            row: row_unchecked(-l, l, x),
        }
    }

    fn reach(&self) -> i64 {
        self.row.order_max()
    }

    fn get(&mut self, m: i64) -> f64 {
        if m.abs() > self.reach() {
            let l = (2 * m.abs()).min(crate::bessel::MAX_ORDER);
            if m.abs() > l {
                return 0.0;
            }
            self.row = row_unchecked(-l, l, self.x);
        }
        self.row.get_or_zero(m)
    }

    /// Upper bound for `|J_k(x)|` over all `|k| >= |m|` on the far side of
    /// the turning point, where `|J_k|` decreases with `|k|`.
    fn decay_bound(&mut self, m: i64) -> f64 {
        if (m.abs() as f64) <= self.x.abs() + 1.0 {
            1.0
        } else {
            self.get(m).abs()
        }
    }
}

fn tau_power(tau: Complex64, k: i64) -> Complex64 {
    if tau.im == 0.0 && tau.re == 1.0 {
        Complex64::new(1.0, 0.0)
    } else if is_unimodular(tau) {
        Complex64::from_polar(1.0, tau.arg() * k as f64)
    } else {
        tau.powi(k as i32)
    }
}

/// Inclusive `k` range where `|base + step·k| <= reach`.
fn k_window(base: i64, step: i64, reach: i64) -> (i64, i64) {
    // base + step·k ∈ [−reach, reach]
    let (a, b) = ((-reach - base) as f64 / step as f64, (reach - base) as f64 / step as f64);
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    (lo.ceil() as i64, hi.floor() as i64)
}

fn product_series(
    idx: Index,
    u: f64,
    v: f64,
    tau: Complex64,
    tol: f64,
) -> Result<SeriesResult<Complex64>> {
    check_arguments(u, v)?;
    if !(tol >= MIN_TOLERANCE) || !tol.is_finite() {
        return Err(Error::Domain(format!(
            "tolerance {tol:e} below the supported minimum {MIN_TOLERANCE:e}"
        )));
    }
    if idx.p == 0 || idx.q == 0 {
        return Err(Error::InvalidIndex(format!("zero upper index in {idx}")));
    }
    let mu = idx.gcd();
    if idx.n % mu != 0 {
        return Ok(SeriesResult {
            value: Complex64::new(0.0, 0.0),
            terms_used: 0,
            tail_bound: 0.0,
        });
    }
    let reduced = Index {
        n: idx.n / mu,
        p: idx.p / mu,
        q: idx.q / mu,
    };
    let sol = solve_diophantine(reduced)?;
    let (p, q) = (reduced.p, reduced.q);

    let mut ru = GrowingRow::new(u);
    let mut rv = GrowingRow::new(v);

    // Orders of the u factor: M − qk; of the v factor: N + pk.
    let (ua, ub) = k_window(sol.M, -q, ru.reach());
    let (va, vb) = k_window(sol.N, p, rv.reach());
    let (mut k_lo, mut k_hi) = (ua.max(va), ub.min(vb));
    if k_lo > k_hi {
        let centre = 0.5 * (sol.M as f64 / q as f64 - sol.N as f64 / p as f64);
        k_lo = centre.round() as i64;
        k_hi = k_lo;
    }

    let mut sum = Complex64::new(0.0, 0.0);
    let mut terms = 0usize;
    let term = |k: i64, ru: &mut GrowingRow, rv: &mut GrowingRow| {
        let a = sol.M - q * k;
        let b = sol.N + p * k;
        let w = tau_power(tau, k);
        let t = w * (ru.get(a) * rv.get(b));
        let bound = ru.decay_bound(a) * rv.decay_bound(b) * w.norm();
        (t, bound)
    };

    let mut lower = Vec::new();
    for k in k_lo..=k_hi {
        let (t, _) = term(k, &mut ru, &mut rv);
        sum += t;
        terms += 1;
    }

    let threshold = tol / 100.0;
    let mut tail = 0.0;
    for dir in [-1i64, 1] {
        let mut k = if dir < 0 { k_lo - 1 } else { k_hi + 1 };
        let mut small = 0usize;
        lower.clear();
        let mut steps = 0usize;
        loop {
            let (t, bound) = term(k, &mut ru, &mut rv);
            sum += t;
            terms += 1;
            lower.push(bound);
            if bound < threshold {
                small += 1;
            } else {
                small = 0;
            }
            if small == CONSECUTIVE_SMALL {
                break;
            }
            steps += 1;
            if steps >= MAX_EXTENSION {
                let achieved = 10.0 * lower.iter().rev().take(CONSECUTIVE_SMALL).sum::<f64>();
                return Err(Error::ToleranceNotMet {
                    requested: tol,
                    achieved,
                });
            }
            k += dir;
        }
        tail += 10.0 * lower.iter().rev().take(CONSECUTIVE_SMALL).sum::<f64>();
    }

    if tail > tol {
        return Err(Error::ToleranceNotMet {
            requested: tol,
            achieved: tail,
        });
    }
    Ok(SeriesResult {
        value: sum,
        terms_used: terms,
        tail_bound: tail,
    })
}
