//! Library side of the `gb2d` command-line tool: argument types, grid
//! sampling and export, method comparison, nodal tracing and the identity
//! suite. `main.rs` only parses arguments and maps errors to exit codes.

pub mod args;
pub mod check;
pub mod compare;
pub mod error;
pub mod grid;
pub mod method;
pub mod nodal;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use gb2d::{asymptotic, small, Index};

use args::{Cli, Command, CompareArgs, EvalArgs, Format, GridArgs, IndexArgs, Method, NodalArgs};
pub use error::CliError;
use grid::GridSpec;
use method::Evaluator;

fn index(a: &IndexArgs) -> Result<Index, CliError> {
    Ok(Index::new(a.n, a.p, a.q)?)
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(path.display().to_string(), e))
}

/// Writes through `f` to `path`, or to `stdout` when there is no path.
fn emit<T>(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    f: impl FnOnce(&mut dyn Write) -> std::io::Result<T>,
) -> Result<T, CliError> {
    match path {
        Some(p) => {
            let mut w = create(p)?;
            let t = f(&mut w).map_err(|e| CliError::io(p.display().to_string(), e))?;
            w.flush().map_err(|e| CliError::io(p.display().to_string(), e))?;
            Ok(t)
        }
        None => f(stdout).map_err(|e| CliError::io("<stdout>", e)),
    }
}

/// Executes a parsed command line, writing its primary output to `stdout`.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Eval(a) => cmd_eval(&a, stdout),
        Command::Grid(a) => cmd_grid(&a),
        Command::Compare(a) => cmd_compare(&a, stdout),
        Command::Nodal(a) => cmd_nodal(&a, stdout),
        Command::Check(a) => check::cmd_check(&a, stdout),
    }
}

fn cmd_eval(a: &EvalArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let idx = index(&a.index)?;
    let ev = Evaluator::new(a.method.method, idx, &a.method)?;
    let io = |e| CliError::io("<stdout>", e);
    if ev.is_complex() {
        let z = ev.complex(a.u, a.v)?;
        writeln!(out, "{:.14e} {:.14e}", z.re, z.im).map_err(io)?;
        return Ok(());
    }
    let value = ev.value(a.u, a.v)?;
    writeln!(out, "{value:.14e}").map_err(io)?;
    match a.method.method {
        Method::Exact => {
            let info = match a.method.tol {
                Some(tol) => {
                    let s = gb2d::eval_series(idx, a.u, a.v, tol)?;
                    format!("# series terms={} tail_bound={:.3e}", s.terms_used, s.tail_bound)
                }
                None => match gb2d::eval_with_info(idx, a.u, a.v)?.route {
                    gb2d::Route::Series { terms_used, tail_bound } => {
                        format!("# series terms={terms_used} tail_bound={tail_bound:.3e}")
                    }
                    route => format!("# closed form ({route:?})"),
                },
            };
            writeln!(out, "{info}").map_err(io)?;
        }
        Method::Quadrature => {
            let nodes = a.method.nodes.unwrap_or_else(|| gb2d::quadrature::auto_nodes(idx, a.u, a.v));
            writeln!(out, "# quadrature nodes={nodes}").map_err(io)?;
        }
        _ => {}
    }
    Ok(())
}

fn with_extension(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

type FieldWriter = fn(&grid::FieldGrid, &mut dyn Write) -> std::io::Result<()>;

fn cmd_grid(a: &GridArgs) -> Result<(), CliError> {
    let idx = index(&a.index)?;
    let spec = GridSpec::from_window(&a.window)?;
    let ev = Evaluator::new(a.method.method, idx, &a.method)?;
    let field = grid::sample(spec, &ev, a.window.workers)?;
    let (ext, writer): (&str, FieldWriter) = match a.format {
        Format::Csv => ("csv", grid::write_csv),
        Format::Pgm => ("pgm", grid::write_pgm),
    };
    let path = with_extension(&a.out, ext);
    emit(Some(&path), &mut std::io::sink(), |w| writer(&field, w))
}

fn cmd_compare(a: &CompareArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let idx = index(&a.index)?;
    let spec = GridSpec::from_window(&a.window)?;
    let approx = Evaluator::new(a.method.method, idx, &a.method)?;
    let reference = Evaluator::new(a.against, idx, &a.method)?;
    let exact = grid::sample(spec, &reference, a.window.workers)?;
    let approx = grid::sample(spec, &approx, a.window.workers)?;
    emit(a.out.as_deref(), stdout, |w| {
        compare::write_comparison(&exact, &approx, a.rel_floor, w).map(|_| ())
    })
}

/// `# predicted` annotations from the small-argument and large-order estimates.
pub fn predictions(idx: Index, spec: GridSpec, predict_v: Option<f64>) -> Vec<String> {
    let mut lines = Vec::new();
    if idx.p == 1 && idx.q >= 1 && idx.n >= 0 {
        if let Ok(Some(slope)) = small::small_nodal_slope(idx.n, idx.q) {
            lines.push(format!("# predicted small-argument nodal line v = {slope} u"));
        }
    }
    if (idx.p, idx.q) == (1, 2) && idx.n >= 0 {
        let v = predict_v.unwrap_or(0.5 * (spec.v.min + spec.v.max));
        if let Ok(us) = asymptotic::nodal_lines_large_vn(idx.n, v) {
            let us: Vec<String> = us
                .into_iter()
                .filter(|u| (spec.u.min..=spec.u.max).contains(u))
                .map(|u| u.to_string())
                .collect();
            lines.push(format!("# predicted large-order nodal u at v={v}: {}", us.join(" ")));
        }
    }
    lines
}

fn cmd_nodal(a: &NodalArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let idx = index(&a.index)?;
    let spec = GridSpec::from_window(&a.window)?;
    if spec.u.count < 2 || spec.v.count < 2 {
        return Err(CliError::Usage("nodal tracing needs --u-range and --v-range".into()));
    }
    let lines = grid::with_workers(a.window.workers, || nodal::trace(idx, spec))??;
    let notes = predictions(idx, spec, a.predict_v);
    emit(a.out.as_deref(), stdout, |w| {
        for n in &notes {
            writeln!(w, "{n}")?;
        }
        nodal::write_polylines(&lines, w)
    })
}
