use std::io::Write;

use crate::grid::FieldGrid;

/// Error statistics over the points where both methods produced a value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub points: usize,
    /// Points where either value is NaN (divergence zones).
    pub excluded: usize,
    pub max_abs_err: f64,
    pub median_abs_err: f64,
    /// Over points with `|exact|` above the floor.
    pub max_rel_err: f64,
    pub median_rel_err: f64,
}

fn median(mut xs: Vec<f64>) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.sort_by(|a, b| a.total_cmp(b));
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    }
}

/// Writes `u,v,exact,approx,abs_err,rel_err` rows and a closing `#` summary line.
pub fn write_comparison(
    exact: &FieldGrid,
    approx: &FieldGrid,
    rel_floor: f64,
    out: &mut dyn Write,
) -> std::io::Result<Summary> {
    writeln!(out, "u,v,exact,approx,abs_err,rel_err")?;
    let mut abs_errs = Vec::new();
    let mut rel_errs = Vec::new();
    let mut excluded = 0;
    for (k, (&e, &a)) in exact.values.iter().zip(&approx.values).enumerate() {
        let (u, v) = exact.spec.point(k);
        let abs_err = (a - e).abs();
        let rel_err = abs_err / e.abs();
        writeln!(out, "{u},{v},{e},{a},{abs_err},{rel_err}")?;
        if abs_err.is_nan() {
            excluded += 1;
            continue;
        }
        abs_errs.push(abs_err);
        if e.abs() > rel_floor {
            rel_errs.push(rel_err);
        }
    }
    let max = |xs: &[f64]| xs.iter().copied().fold(f64::NAN, f64::max);
    let summary = Summary {
        points: exact.values.len(),
        excluded,
        max_abs_err: max(&abs_errs),
        median_abs_err: median(abs_errs),
        max_rel_err: max(&rel_errs),
        median_rel_err: median(rel_errs),
    };
    writeln!(
        out,
        "# points={} excluded={} max_abs_err={:.6e} median_abs_err={:.6e} max_rel_err={:.6e} median_rel_err={:.6e}",
        summary.points,
        summary.excluded,
        summary.max_abs_err,
        summary.median_abs_err,
        summary.max_rel_err,
        summary.median_rel_err
    )?;
    Ok(summary)
}
