use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "gb2d", version, about = "Evaluate and explore the two-dimensional Bessel functions J_n^{p,q}(u, v)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate at a single point
    Eval(EvalArgs),
    /// Sample a rectangle and write CSV or PGM
    Grid(GridArgs),
    /// Tabulate an approximation against a reference on a grid
    Compare(CompareArgs),
    /// Trace zero contours of the exact function
    Nodal(NodalArgs),
    /// Run the randomized identity suite
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Product series (or quadrature for parameterized values)
    #[value(name = "exact")]
    Exact,
    /// Trapezoidal rule on the integral representation
    #[value(name = "quadrature")]
    Quadrature,
    /// Stationary phase for large |u|, |v| with (p, q) = (1, 2)
    #[value(name = "asym_large_args")]
    AsymLargeArgs,
    /// Stationary phase or saddle point for large n and v
    #[value(name = "asym_large_vn")]
    AsymLargeVn,
    /// Truncated power series around the origin
    #[value(name = "small_poly")]
    SmallPoly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Pgm,
}

#[derive(Debug, Clone, Args)]
pub struct IndexArgs {
    /// Lower index n
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
    /// Upper index p
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub p: i64,
    /// Upper index q
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    pub q: i64,
}

#[derive(Debug, Clone, Args)]
pub struct MethodArgs {
    #[arg(long, value_enum, default_value_t = Method::Exact)]
    pub method: Method,
    /// Phase δ of the parameterized function J_n^{1,q}(u, v; e^{iδ})
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    /// Series tolerance for the exact method
    #[arg(long)]
    pub tol: Option<f64>,
    /// Quadrature node count (chosen automatically if absent)
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Total order of the small-argument polynomial
    #[arg(long, default_value_t = 30)]
    pub order: u32,
}

#[derive(Debug, Clone, Args)]
pub struct WindowArgs {
    /// u interval as MIN,MAX
    #[arg(long = "u-range", value_parser = parse_range, allow_hyphen_values = true, conflicts_with = "u")]
    pub u_range: Option<(f64, f64)>,
    /// Fixed u (a single column)
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<f64>,
    /// v interval as MIN,MAX
    #[arg(long = "v-range", value_parser = parse_range, allow_hyphen_values = true, conflicts_with = "v")]
    pub v_range: Option<(f64, f64)>,
    /// Fixed v (a single row)
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<f64>,
    /// Samples along u
    #[arg(long, default_value_t = 101)]
    pub nu: usize,
    /// Samples along v
    #[arg(long, default_value_t = 101)]
    pub nv: usize,
    /// Worker threads (defaults to the available parallelism)
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub index: IndexArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub u: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub v: f64,
    #[command(flatten)]
    pub method: MethodArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[command(flatten)]
    pub index: IndexArgs,
    #[command(flatten)]
    pub window: WindowArgs,
    #[command(flatten)]
    pub method: MethodArgs,
    /// Output path prefix; the extension follows the format
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub index: IndexArgs,
    #[command(flatten)]
    pub window: WindowArgs,
    #[command(flatten)]
    pub method: MethodArgs,
    /// Reference method for the `exact` column
    #[arg(long, value_enum, default_value_t = Method::Exact)]
    pub against: Method,
    /// Points with |exact| at or below this are left out of relative-error statistics
    #[arg(long, default_value_t = 0.0)]
    pub rel_floor: f64,
    /// Output file (standard output if absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct NodalArgs {
    #[command(flatten)]
    pub index: IndexArgs,
    #[command(flatten)]
    pub window: WindowArgs,
    /// v at which large-order nodal u-values are predicted (window centre if absent)
    #[arg(long, allow_hyphen_values = true)]
    pub predict_v: Option<f64>,
    /// Output file (standard output if absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    /// Seed for the per-identity random streams
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Run a single identity
    #[arg(long)]
    pub only: Option<String>,
    /// Random draws per identity
    #[arg(long, default_value_t = 25)]
    pub draws: usize,
    /// Worker threads; the report does not depend on this
    #[arg(long)]
    pub workers: Option<usize>,
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected MIN,MAX, got {s:?}"))?;
    let lo: f64 = a.trim().parse().map_err(|e| format!("bad MIN {a:?}: {e}"))?;
    let hi: f64 = b.trim().parse().map_err(|e| format!("bad MAX {b:?}: {e}"))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(format!("need finite MIN < MAX, got {lo},{hi}"));
    }
    Ok((lo, hi))
}
