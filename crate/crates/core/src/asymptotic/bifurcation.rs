use num_integer::Integer;

use crate::error::{Error, Result};

/// The line `v = slope·u + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub slope: f64,
    pub intercept: f64,
}

impl Line {
    /// Euclidean distance from `(u, v)` to the line.
    pub fn distance(&self, u: f64, v: f64) -> f64 {
        (v - self.slope * u - self.intercept).abs() / (1.0 + self.slope * self.slope).sqrt()
    }
}

/// Axis-aligned ellipse `((u−cu)/au)² + ((v−cv)/av)² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    pub cu: f64,
    pub cv: f64,
    pub au: f64,
    pub av: f64,
}

impl Ellipse {
    /// `((u−cu)/au)² + ((v−cv)/av)² − 1`: negative inside.
    pub fn level(&self, u: f64, v: f64) -> f64 {
        let x = (u - self.cu) / self.au;
        let y = (v - self.cv) / self.av;
        x * x + y * y - 1.0
    }
}

/// Curves in the `(u, v)` plane where real stationary points coalesce.
#[derive(Debug, Clone, PartialEq)]
pub struct BifurcationSet {
    pub lines: Vec<Line>,
    pub ellipse: Option<Ellipse>,
}

impl BifurcationSet {
    /// Distance to the nearest line; the ellipse is measured along the
    /// radial level-set gap scaled by its smaller semi-axis.
    pub fn distance(&self, u: f64, v: f64) -> f64 {
        let mut d = self
            .lines
            .iter()
            .map(|l| l.distance(u, v))
            .fold(f64::INFINITY, f64::min);
        if let Some(e) = self.ellipse {
            let r = (e.level(u, v) + 1.0).sqrt();
            d = d.min((r - 1.0).abs() * e.au.min(e.av));
        }
        d
    }
}

/// Bifurcation lines of `u sin pt + v sin qt` through the origin.
///
/// One of `p`, `q` even gives `v = ±pu/q`. Both odd, with `p = 2j+1` and
/// `q = 2k+1`, gives `v = −pu/q` and `v = −(−1)^{j+k} p²u/q²`.
pub fn bifurcation_lines(p: i64, q: i64) -> Result<BifurcationSet> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidIndex(format!("zero upper index: p={p}, q={q}")));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::InvalidIndex(format!("p={p} and q={q} are not coprime")));
    }
    let (pf, qf) = (p as f64, q as f64);
    let mut slopes = if p.is_even() || q.is_even() {
        vec![pf / qf, -pf / qf]
    } else {
        let j = (p - 1).div_euclid(2);
        let k = (q - 1).div_euclid(2);
        let sign = if (j + k).is_even() { 1.0 } else { -1.0 };
        vec![-pf / qf, -sign * pf * pf / (qf * qf)]
    };
    slopes.dedup();
    Ok(BifurcationSet {
        lines: slopes
            .into_iter()
            .map(|slope| Line { slope, intercept: 0.0 })
            .collect(),
        ellipse: None,
    })
}

/// Bifurcation set of `u sin t + v sin 2t − nt`: the lines `v = (n ± u)/2`
/// and the ellipse centred at `(0, −n/4)` with semi-axes `(√2·n, n/4)`.
pub fn bifurcation_set_large_n(n: i64) -> Result<BifurcationSet> {
    if n <= 0 {
        return Err(Error::Domain(format!("need n > 0, got {n}")));
    }
    let nf = n as f64;
    Ok(BifurcationSet {
        lines: vec![
            Line { slope: 0.5, intercept: nf / 2.0 },
            Line { slope: -0.5, intercept: nf / 2.0 },
        ],
        ellipse: Some(Ellipse {
            cu: 0.0,
            cv: -nf / 4.0,
            au: std::f64::consts::SQRT_2 * nf,
            av: nf / 4.0,
        }),
    })
}

/// Discriminant of the quadratic in `u` obtained by substituting the line
/// into the ellipse, divided by the square of its leading coefficient times
/// the semi-axis product. Zero means tangency.
pub fn line_ellipse_discriminant(line: Line, e: Ellipse) -> f64 {
    // ((u−cu)/au)² + ((m u + b − cv)/av)² − 1 = A u² + B u + C
    let (m, b0) = (line.slope, line.intercept - e.cv);
    let (ia, ib) = (1.0 / (e.au * e.au), 1.0 / (e.av * e.av));
    let a = ia + m * m * ib;
    let b = -2.0 * e.cu * ia + 2.0 * m * b0 * ib;
    let c = e.cu * e.cu * ia + b0 * b0 * ib - 1.0;
    (b * b - 4.0 * a * c) / (a * a * e.au * e.av)
}

/// Sector of the `(u, v)` plane for `(p, q) = (1, 2)` at fixed `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorLabel {
    I,
    II,
    III,
    IV,
    V,
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionClass {
    pub label: SectorLabel,
    pub real_stationary_count: usize,
}

/// Counts the real stationary points of `u sin t + v sin 2t − nt` from the
/// closed-form roots `c_± = −u/(8v) ± √((u/8v)² + 1/2 + n/(4v))` of
/// `cos t`, and names the sector.
pub fn classify_region(n: i64, u: f64, v: f64) -> Result<RegionClass> {
    if v == 0.0 || !v.is_finite() || !u.is_finite() {
        return Err(Error::Domain(format!("classification needs finite v != 0, got ({u}, {v})")));
    }
    let h = u / (8.0 * v);
    let disc = h * h + 0.5 + n as f64 / (4.0 * v);
    let mut count = 0;
    if disc >= 0.0 {
        let s = disc.sqrt();
        for c in [-h + s, -h - s] {
            if c.abs() < 1.0 {
                count += 2;
            }
        }
    }
    let label = match count {
        4 if v > 0.0 => SectorLabel::I,
        4 => SectorLabel::II,
        2 if u > 0.0 => SectorLabel::IV,
        2 => SectorLabel::III,
        _ => SectorLabel::V,
    };
    Ok(RegionClass {
        label,
        real_stationary_count: count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotic::stationary_points;

    #[test]
    fn lines_for_small_pairs() {
        let s = bifurcation_lines(1, 2).unwrap();
        assert_eq!(s.lines.iter().map(|l| l.slope).collect::<Vec<_>>(), vec![0.5, -0.5]);
        let s = bifurcation_lines(1, 1).unwrap();
        assert_eq!(s.lines.len(), 1);
        assert_eq!(s.lines[0].slope, -1.0);
        let s = bifurcation_lines(1, 3).unwrap();
        assert_eq!(s.lines.iter().map(|l| l.slope).collect::<Vec<_>>(), vec![-1.0 / 3.0, 1.0 / 9.0]);
        assert!(bifurcation_lines(2, 4).is_err());
    }

    #[test]
    fn lines_are_where_stationary_points_merge() {
        // Just either side of each line the number of real stationary points jumps.
        for &(p, q) in &[(1, 2), (1, 3), (2, 3), (3, 5), (2, 5)] {
            for line in bifurcation_lines(p, q).unwrap().lines {
                for u in [0.7, -1.3] {
                    let v = line.slope * u;
                    let lo = stationary_points(0, p, q, u, v - 1e-4).unwrap().len();
                    let hi = stationary_points(0, p, q, u, v + 1e-4).unwrap().len();
                    assert_ne!(lo, hi, "(p,q)=({p},{q}) line slope {}", line.slope);
                }
            }
        }
    }

    #[test]
    fn large_n_set_for_thirty() {
        let s = bifurcation_set_large_n(30).unwrap();
        let e = s.ellipse.unwrap();
        assert_eq!((e.cu, e.cv, e.av), (0.0, -7.5, 7.5));
        assert!((e.au - 30.0 * std::f64::consts::SQRT_2).abs() < 1e-12);
        for line in &s.lines {
            assert!(line_ellipse_discriminant(*line, e).abs() < 1e-12);
        }
        // Tangency at u = ∓4n/3, v = −n/6.
        assert!(e.level(-40.0, -5.0).abs() < 1e-12);
        assert!((s.lines[0].slope * -40.0 + s.lines[0].intercept + 5.0).abs() < 1e-12);
    }

    #[test]
    fn classification_examples() {
        let c = classify_region(30, 0.0, 40.0).unwrap();
        assert_eq!((c.label, c.real_stationary_count), (SectorLabel::I, 4));
        let c = classify_region(30, 0.0, -5.0).unwrap();
        assert_eq!((c.label, c.real_stationary_count), (SectorLabel::V, 0));
        let c = classify_region(30, 100.0, 0.1).unwrap();
        assert_eq!((c.label, c.real_stationary_count), (SectorLabel::IV, 2));
        let c = classify_region(30, -100.0, 0.1).unwrap();
        assert_eq!((c.label, c.real_stationary_count), (SectorLabel::III, 2));
        let c = classify_region(30, 0.0, -12.0).unwrap();
        assert_eq!(c.real_stationary_count, 0);
        let c = classify_region(30, 0.0, -40.0).unwrap();
        assert_eq!((c.label, c.real_stationary_count), (SectorLabel::II, 4));
        assert!(classify_region(30, 1.0, 0.0).is_err());
    }

    #[test]
    fn classification_matches_root_count() {
        let set = bifurcation_set_large_n(30).unwrap();
        let mut checked = 0;
        for i in 0..41 {
            for j in 0..41 {
                let u = -100.0 + 5.0 * i as f64;
                let v = -50.0 + 2.5 * j as f64 + 0.01;
                if set.distance(u, v) < 1.5 {
                    continue;
                }
                let c = classify_region(30, u, v).unwrap();
                let direct = stationary_points(30, 1, 2, u, v).unwrap().len();
                assert_eq!(c.real_stationary_count, direct, "({u}, {v})");
                checked += 1;
            }
        }
        assert!(checked > 1000);
    }
}
