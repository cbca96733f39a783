use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `|g''|` below this marks a stationary point as coalescing.
pub const DEGENERATE_CURVATURE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    RealStationary,
    ComplexSaddle,
}

/// A critical point of `g(t) = u sin pt + v sin qt − nt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPoint {
    /// Real part in `(−π, π]`.
    pub t: Complex64,
    /// `g(t)`.
    pub phase: Complex64,
    /// `g''(t)`.
    pub second_derivative: Complex64,
    pub kind: PointKind,
    /// `|g''(t)| < 1e−8`: the point is coalescing with a neighbour.
    pub degenerate: bool,
}

struct Phase {
    n: f64,
    p: f64,
    q: f64,
    u: f64,
    v: f64,
}

impl Phase {
    fn g(&self, t: Complex64) -> Complex64 {
        (t * self.p).sin() * self.u + (t * self.q).sin() * self.v - t * self.n
    }

    fn d1(&self, t: f64) -> f64 {
        self.p * self.u * (self.p * t).cos() + self.q * self.v * (self.q * t).cos() - self.n
    }

    fn d2(&self, t: Complex64) -> Complex64 {
        -(t * self.p).sin() * (self.p * self.p * self.u) - (t * self.q).sin() * (self.q * self.q * self.v)
    }

    fn point(&self, t: Complex64, kind: PointKind) -> StationaryPoint {
        let second_derivative = self.d2(t);
        StationaryPoint {
            t,
            phase: self.g(t),
            second_derivative,
            kind,
            degenerate: second_derivative.norm() < DEGENERATE_CURVATURE,
        }
    }
}

/// Power-basis coefficients of the Chebyshev polynomial `T_k`.
fn chebyshev(k: usize) -> Vec<f64> {
    let mut prev = vec![1.0];
    if k == 0 {
        return prev;
    }
    let mut cur = vec![0.0, 1.0];
    for _ in 1..k {
        let mut next = vec![0.0; cur.len() + 1];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] += 2.0 * c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs.iter().enumerate().skip(1).map(|(i, &c)| i as f64 * c).collect()
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Real roots of a polynomial in `[lo, hi]`, isolated between the roots of
/// its derivative.
fn real_roots(coeffs: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let mut c = coeffs.to_vec();
    while c.len() > 1 && *c.last().unwrap() == 0.0 {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    if c.len() == 2 {
        let r = -c[0] / c[1];
        return if (lo..=hi).contains(&r) { vec![r] } else { Vec::new() };
    }
    let mut knots = vec![lo];
    knots.extend(real_roots(&derivative(&c), lo, hi));
    knots.push(hi);
    let f = |x: f64| horner(&c, x);
    let mut roots: Vec<f64> = Vec::new();
    for w in knots.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (f(a), f(b));
        if fa == 0.0 {
            roots.push(a);
        } else if fb != 0.0 && (fa > 0.0) != (fb > 0.0) {
            roots.push(bisect(f, a, b));
        }
    }
    if f(hi) == 0.0 {
        roots.push(hi);
    }
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-15);
    roots
}

/// Newton polish of a root of `g'` in `t`, kept only if it improves.
fn polish(phase: &Phase, t0: f64) -> f64 {
    let mut t = t0;
    let mut r = phase.d1(t).abs();
    for _ in 0..4 {
        let d2 = phase.d2(Complex64::new(t, 0.0)).re;
        if d2 == 0.0 {
            break;
        }
        let next = t - phase.d1(t) / d2;
        let rn = phase.d1(next).abs();
        if !(rn < r) || (next - t).abs() > 1e-3 {
            break;
        }
        t = next;
        r = rn;
    }
    t
}

fn real_points(phase: &Phase) -> Vec<StationaryPoint> {
    // g'(t) = pu T_|p|(c) + qv T_|q|(c) − n with c = cos t.
    let (pa, qa) = (phase.p.abs() as usize, phase.q.abs() as usize);
    let mut poly = vec![0.0; pa.max(qa) + 1];
    for (i, c) in chebyshev(pa).into_iter().enumerate() {
        poly[i] += phase.p * phase.u * c;
    }
    for (i, c) in chebyshev(qa).into_iter().enumerate() {
        poly[i] += phase.q * phase.v * c;
    }
    poly[0] -= phase.n;

    let roots = if pa == 1 && qa == 2 && phase.v != 0.0 {
        closed_form_12(phase)
    } else {
        real_roots(&poly, -1.0, 1.0)
    };

    let mut ts = Vec::new();
    for c in roots {
        let t = c.clamp(-1.0, 1.0).acos();
        if t == 0.0 || t == PI {
            ts.push(t);
        } else {
            ts.push(polish(phase, t));
            ts.push(polish(phase, -t));
        }
    }
    ts.sort_by(|a, b| a.total_cmp(b));
    ts.dedup_by(|a, b| (*a - *b).abs() <= 1e-13);
    ts.into_iter()
        .map(|t| phase.point(Complex64::new(t, 0.0), PointKind::RealStationary))
        .collect()
}

/// `c_± = −u/(8v) ± √((u/8v)² + 1/2 + n/(4v))` for `(p, q) = (1, 2)`.
fn closed_form_12(phase: &Phase) -> Vec<f64> {
    // Written for q = ±2: the quadratic is 4qv c² + pu c − (qv + n) = 0 with p = ±1.
    let a = 2.0 * phase.q * phase.v;
    let b = phase.p * phase.u;
    let c0 = -(phase.q * phase.v + phase.n);
    let disc = b * b - 4.0 * a * c0;
    if disc < 0.0 {
        return Vec::new();
    }
    let s = disc.sqrt();
    let mut out = Vec::new();
    for r in [(-b + s) / (2.0 * a), (-b - s) / (2.0 * a)] {
        if r.abs() <= 1.0 {
            out.push(r);
        }
    }
    out
}

/// Real stationary points of `g(t) = u sin pt + v sin qt − nt` in `(−π, π]`,
/// sorted by `t`. They come in `±t` pairs, except at `t = 0` and `t = π`.
pub fn stationary_points(n: i64, p: i64, q: i64, u: f64, v: f64) -> Result<Vec<StationaryPoint>> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidIndex(format!("zero upper index: p={p}, q={q}")));
    }
    if !(u.is_finite() && v.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument ({u}, {v})")));
    }
    if u == 0.0 && v == 0.0 {
        return if n == 0 {
            Err(Error::Degenerate("every t is stationary at (u, v) = (0, 0)".into()))
        } else {
            Ok(Vec::new())
        };
    }
    let phase = Phase {
        n: n as f64,
        p: p as f64,
        q: q as f64,
        u,
        v,
    };
    Ok(real_points(&phase))
}

/// Real stationary points of `u sin pt + v sin qt` (no `−nt` term).
pub fn stationary_points_uv(p: i64, q: i64, u: f64, v: f64) -> Result<Vec<StationaryPoint>> {
    stationary_points(0, p, q, u, v)
}

/// Complex saddle points `x_s + iy` of `v sin qt − nt` for `n > q|v|`,
/// on the side of the real axis that the steepest-descent path uses.
pub fn saddle_points_large_vn(n: i64, q: i64, v: f64) -> Result<Vec<StationaryPoint>> {
    if q == 0 {
        return Err(Error::InvalidIndex("q must be nonzero".into()));
    }
    let ratio = n as f64 / (q as f64 * v).abs();
    if !(v != 0.0 && ratio > 1.0) {
        return Err(Error::Regime(format!(
            "saddle points need n > q|v|, got n={n}, q={q}, v={v}"
        )));
    }
    let qa = q.abs() as f64;
    let y = -ratio.acosh() / qa;
    let phase = Phase {
        n: n as f64,
        p: 1.0,
        q: q as f64,
        u: 0.0,
        v,
    };
    // cos(q t) = n/(qv) > 0 puts qx on multiples of 2π, < 0 on odd multiples of π.
    let offset = if q as f64 * v > 0.0 { 0.0 } else { PI };
    let mut points = Vec::new();
    for s in -(q.abs())..=q.abs() {
        let x = (offset + 2.0 * PI * s as f64) / qa;
        if x > -PI && x <= PI + 1e-15 {
            let mut pt = phase.point(Complex64::new(x, y), PointKind::ComplexSaddle);
            pt.t = Complex64::new(x.min(PI), y);
            points.push(pt);
        }
    }
    Ok(points)
}
