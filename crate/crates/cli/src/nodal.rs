use std::collections::BTreeMap;
use std::io::Write;

use gb2d::{eval, Index, Result};
use rayon::prelude::*;

use crate::grid::GridSpec;

/// Crossings are refined until the bracketing segment is this short.
pub const POSITION_TOLERANCE: f64 = 1e-8;

/// A cell edge: horizontal from node `(i, j)` to `(i+1, j)`, or vertical
/// from `(i, j)` to `(i, j+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Edge {
    H(usize, usize),
    V(usize, usize),
}

pub type Polyline = Vec<(f64, f64)>;

fn positive(x: f64) -> bool {
    x >= 0.0
}

/// Zero of `f` on the segment `a → b`, bisected to [`POSITION_TOLERANCE`].
fn refine(f: &impl Fn(f64, f64) -> Result<f64>, a: (f64, f64), b: (f64, f64)) -> Result<(f64, f64)> {
    let at = |s: f64| (a.0 + s * (b.0 - a.0), a.1 + s * (b.1 - a.1));
    let len = (b.0 - a.0).hypot(b.1 - a.1);
    let sa = positive(f(a.0, a.1)?);
    let (mut lo, mut hi) = (0.0, 1.0);
    while (hi - lo) * len > POSITION_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        let (u, v) = at(mid);
        if positive(f(u, v)?) == sa {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(at(0.5 * (lo + hi)))
}

/// Zero contours of `J_n^{p,q}` over the grid by marching squares.
///
/// Open contours start at the window boundary; closed ones repeat their
/// first point at the end. Output order is deterministic.
pub fn trace(idx: Index, spec: GridSpec) -> Result<Vec<Polyline>> {
    let f = move |u: f64, v: f64| eval(idx, u, v);
    let (nu, nv) = (spec.u.count, spec.v.count);
    let node = |i: usize, j: usize| (spec.u.point(i), spec.v.point(j));
    let values = (0..spec.len())
        .into_par_iter()
        .map(|k| {
            let (u, v) = spec.point(k);
            f(u, v)
        })
        .collect::<Result<Vec<f64>>>()?;
    let sign = |i: usize, j: usize| positive(values[j * nu + i]);

    let mut edges = Vec::new();
    for j in 0..nv {
        for i in 0..nu {
            if i + 1 < nu && sign(i, j) != sign(i + 1, j) {
                edges.push(Edge::H(i, j));
            }
            if j + 1 < nv && sign(i, j) != sign(i, j + 1) {
                edges.push(Edge::V(i, j));
            }
        }
    }
    let points = edges
        .par_iter()
        .map(|&e| match e {
            Edge::H(i, j) => refine(&f, node(i, j), node(i + 1, j)),
            Edge::V(i, j) => refine(&f, node(i, j), node(i, j + 1)),
        })
        .collect::<Result<Vec<_>>>()?;
    let crossing: BTreeMap<Edge, (f64, f64)> = edges.into_iter().zip(points).collect();

    // Segments per cell, linking the crossed edges.
    let mut links: BTreeMap<Edge, Vec<Edge>> = BTreeMap::new();
    let mut link = |a: Edge, b: Edge| {
        links.entry(a).or_default().push(b);
        links.entry(b).or_default().push(a);
    };
    for j in 0..nv.saturating_sub(1) {
        for i in 0..nu.saturating_sub(1) {
            let (bottom, top) = (Edge::H(i, j), Edge::H(i, j + 1));
            let (left, right) = (Edge::V(i, j), Edge::V(i + 1, j));
            let cut: Vec<Edge> = [bottom, right, top, left]
                .into_iter()
                .filter(|e| crossing.contains_key(e))
                .collect();
            match cut.len() {
                2 => link(cut[0], cut[1]),
                4 => {
                    // Saddle cell: the centre decides which corners connect.
                    let (u0, v0) = node(i, j);
                    let (u1, v1) = node(i + 1, j + 1);
                    let centre = positive(f(0.5 * (u0 + u1), 0.5 * (v0 + v1))?);
                    if centre == sign(i, j) {
                        link(bottom, right);
                        link(top, left);
                    } else {
                        link(bottom, left);
                        link(right, top);
                    }
                }
                _ => {}
            }
        }
    }

    let mut used: BTreeMap<Edge, bool> = links.keys().map(|&e| (e, false)).collect();
    let mut lines = Vec::new();
    let walk = |start: Edge, used: &mut BTreeMap<Edge, bool>| -> Polyline {
        let mut line = vec![crossing[&start]];
        used.insert(start, true);
        let mut cur = start;
        loop {
            let next = links[&cur].iter().copied().find(|e| !used[e]);
            match next {
                Some(e) => {
                    used.insert(e, true);
                    line.push(crossing[&e]);
                    cur = e;
                }
                None => {
                    if links[&cur].contains(&start) && line.len() > 2 {
                        line.push(crossing[&start]);
                    }
                    return line;
                }
            }
        }
    };
    let ends: Vec<Edge> = links.iter().filter(|(_, l)| l.len() == 1).map(|(&e, _)| e).collect();
    for e in ends {
        if !used[&e] {
            lines.push(walk(e, &mut used));
        }
    }
    let rest: Vec<Edge> = links.keys().copied().collect();
    for e in rest {
        if !used[&e] {
            lines.push(walk(e, &mut used));
        }
    }
    Ok(lines)
}

/// One `u v` pair per line, polylines separated by a blank line.
pub fn write_polylines(lines: &[Polyline], out: &mut dyn Write) -> std::io::Result<()> {
    for (k, line) in lines.iter().enumerate() {
        if k > 0 {
            writeln!(out)?;
        }
        for (u, v) in line {
            writeln!(out, "{u} {v}")?;
        }
    }
    Ok(())
}
