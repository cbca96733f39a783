use std::io::Write;

use rayon::prelude::*;

use crate::args::WindowArgs;
use crate::error::CliError;
use crate::method::Evaluator;

/// Equally spaced samples from `min` to `max`, both included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn single(value: f64) -> Self {
        Axis {
            min: value,
            max: value,
            count: 1,
        }
    }

    pub fn point(&self, i: usize) -> f64 {
        if self.count == 1 {
            self.min
        } else if i + 1 == self.count {
            self.max
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.count - 1) as f64
        }
    }

    fn from_flags(name: &str, range: Option<(f64, f64)>, fixed: Option<f64>, count: usize) -> Result<Self, CliError> {
        match (range, fixed) {
            (Some((min, max)), None) => {
                if count < 2 {
                    return Err(CliError::Usage(format!("--n{name} must be at least 2, got {count}")));
                }
                Ok(Axis { min, max, count })
            }
            (None, Some(x)) if x.is_finite() => Ok(Axis::single(x)),
            (None, Some(x)) => Err(CliError::Usage(format!("--{name} must be finite, got {x}"))),
            _ => Err(CliError::Usage(format!("one of --{name}-range or --{name} is required"))),
        }
    }
}

/// The sampled rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub u: Axis,
    pub v: Axis,
}

impl GridSpec {
    pub fn from_window(w: &WindowArgs) -> Result<Self, CliError> {
        Ok(GridSpec {
            u: Axis::from_flags("u", w.u_range, w.u, w.nu)?,
            v: Axis::from_flags("v", w.v_range, w.v, w.nv)?,
        })
    }

    pub fn len(&self) -> usize {
        self.u.count * self.v.count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(u, v)` of the `k`-th sample in v-outer, u-inner order.
    pub fn point(&self, k: usize) -> (f64, f64) {
        (self.u.point(k % self.u.count), self.v.point(k / self.u.count))
    }
}

/// Sampled values in v-outer, u-inner order, with `v` ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    pub spec: GridSpec,
    pub values: Vec<f64>,
    /// Largest finite `|value|`.
    pub max_abs: f64,
}

/// Runs `f` on a pool of `workers` threads, or the global pool if `None`.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match workers {
        None => Ok(f()),
        Some(0) => Err(CliError::Usage("--workers must be positive".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot start {n} workers: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Evaluates every grid point. Regime and divergence-zone failures become
/// NaN; any other failure aborts with the first one in grid order.
pub fn sample(spec: GridSpec, eval: &Evaluator, workers: Option<usize>) -> Result<FieldGrid, CliError> {
    let results: Vec<gb2d::Result<f64>> = with_workers(workers, || {
        (0..spec.len())
            .into_par_iter()
            .map(|k| {
                let (u, v) = spec.point(k);
                match eval.value(u, v) {
                    Err(e) if e.is_regime() => Ok(f64::NAN),
                    other => other,
                }
            })
            .collect()
    })?;
    let values = results.into_iter().collect::<gb2d::Result<Vec<f64>>>()?;
    let max_abs = values
        .iter()
        .filter(|x| x.is_finite())
        .fold(0.0f64, |m, x| m.max(x.abs()));
    Ok(FieldGrid { spec, values, max_abs })
}

pub fn write_csv(grid: &FieldGrid, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "u,v,value")?;
    for (k, value) in grid.values.iter().enumerate() {
        let (u, v) = grid.spec.point(k);
        writeln!(out, "{u},{v},{value}")?;
    }
    Ok(())
}

/// Grey level `round(127.5·(1 + value/max_abs))`; NaN and an all-zero grid map to 128.
pub fn pgm_pixel(value: f64, max_abs: f64) -> u8 {
    if !value.is_finite() || max_abs == 0.0 {
        return 128;
    }
    (127.5 * (1.0 + value / max_abs)).round().clamp(0.0, 255.0) as u8
}

/// Binary PGM, rows from `v_max` down to `v_min`.
pub fn write_pgm(grid: &FieldGrid, out: &mut dyn Write) -> std::io::Result<()> {
    let (nu, nv) = (grid.spec.u.count, grid.spec.v.count);
    write!(out, "P5\n{nu} {nv}\n255\n")?;
    let mut row = vec![0u8; nu];
    for j in (0..nv).rev() {
        for (i, px) in row.iter_mut().enumerate() {
            *px = pgm_pixel(grid.values[j * nu + i], grid.max_abs);
        }
        out.write_all(&row)?;
    }
    Ok(())
}
