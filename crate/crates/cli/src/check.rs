use std::f64::consts::PI;
use std::io::Write;

use gb2d::relations::{
    addition_residual, default_bilinear_k, derivative_residual_u, derivative_residual_v,
    graf_residual, kapteyn_sum, negation_residual, param_derivative_residuals,
    pde_residual_coupled, pde_residual_decoupled_pm1, pde_residual_schroedinger,
    pde_residual_wave, pde_scale, pq_odd_residual, q_even_residual, recurrence_residual,
    reduction_residual, sum_rule_phase12, sum_rule_squares, sum_rule_total, swap_residual,
};
use gb2d::{eval_quadrature_auto, eval_series, Index, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::args::CheckArgs;
use crate::error::CliError;
use crate::grid::with_workers;

/// Coprime upper-index pairs the suite draws from.
const PAIRS: [(i64, i64); 6] = [(1, 2), (1, 3), (2, 3), (1, 5), (3, 5), (2, 1)];

/// One identity: a residual computed per random draw and its tolerance.
struct Identity {
    name: &'static str,
    tolerance: f64,
    residual: fn(&mut ChaCha8Rng) -> Result<Option<f64>>,
}

/// Outcome of one identity over all its draws.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub name: &'static str,
    pub max_residual: f64,
    pub tolerance: f64,
    /// Draws that produced a residual; the rest were skipped as off-domain.
    pub draws: usize,
    pub error: Option<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.max_residual <= self.tolerance
    }
}

fn pair(rng: &mut ChaCha8Rng) -> (i64, i64) {
    PAIRS[rng.gen_range(0..PAIRS.len())]
}

fn sym(rng: &mut ChaCha8Rng, r: f64) -> f64 {
    rng.gen_range(-r..=r)
}

fn index(rng: &mut ChaCha8Rng, n_max: i64) -> Index {
    let (p, q) = pair(rng);
    Index::new(rng.gen_range(-n_max..=n_max), p, q).expect("nonzero upper indices")
}

/// Truncation for the sums over `n`: about 20 orders past each argument,
/// scaled by the upper indices.
fn sum_k(p: i64, q: i64, u: f64, v: f64) -> usize {
    (p.abs() as f64 * (u.abs() + 20.0) + q.abs() as f64 * (v.abs() + 20.0)).ceil() as usize
}

fn some(x: f64) -> Result<Option<f64>> {
    Ok(Some(x.abs()))
}

const IDENTITIES: &[Identity] = &[
    Identity {
        name: "series_vs_quadrature",
        tolerance: 1e-10,
        residual: |rng| {
            let idx = index(rng, 40);
            let (u, v) = (sym(rng, 30.0), sym(rng, 30.0));
            some(eval_series(idx, u, v, 1e-13)?.value - eval_quadrature_auto(idx, u, v)?.value)
        },
    },
    Identity {
        name: "sum_rule_total",
        tolerance: 1e-10,
        residual: |rng| {
            let (p, q) = pair(rng);
            let (u, v) = (sym(rng, 10.0), sym(rng, 10.0));
            some(sum_rule_total(p, q, u, v, sum_k(p, q, u, v))?)
        },
    },
    Identity {
        name: "sum_rule_squares",
        tolerance: 1e-10,
        residual: |rng| {
            let (p, q) = pair(rng);
            let (u, v) = (sym(rng, 10.0), sym(rng, 10.0));
            some(sum_rule_squares(p, q, u, v, sum_k(p, q, u, v))?)
        },
    },
    Identity {
        name: "sum_rule_phase",
        tolerance: 1e-10,
        residual: |rng| {
            let (u, v) = (sym(rng, 10.0), sym(rng, 10.0));
            Ok(Some(sum_rule_phase12(u, v, sum_k(1, 2, u, v))?.norm()))
        },
    },
    Identity {
        name: "kapteyn",
        tolerance: 1e-8,
        residual: |rng| {
            let (p, q) = pair(rng);
            // Keep |pu| + |qv| <= 0.6 so the series settles quickly.
            let budget = 0.6 * rng.gen::<f64>();
            let share = rng.gen::<f64>();
            let u = budget * share / p as f64 * if rng.gen() { 1.0 } else { -1.0 };
            let v = budget * (1.0 - share) / q as f64 * if rng.gen() { 1.0 } else { -1.0 };
            let fixed = kapteyn_sum(1, 2, 0.1, 0.2, 5000)?.residual.abs();
            Ok(Some(fixed.max(kapteyn_sum(p, q, u, v, 5000)?.residual.abs())))
        },
    },
    Identity {
        name: "addition",
        tolerance: 1e-10,
        residual: |rng| {
            let idx = index(rng, 10);
            let (u1, v1, u2, v2) = (sym(rng, 4.0), sym(rng, 4.0), sym(rng, 4.0), sym(rng, 4.0));
            let k = default_bilinear_k(idx.p, idx.q, u1, v1, u2, v2);
            some(addition_residual(idx, u1, v1, u2, v2, k)?)
        },
    },
    Identity {
        name: "recurrence",
        tolerance: 1e-9,
        residual: |rng| {
            let idx = index(rng, 25);
            some(recurrence_residual(idx, sym(rng, 20.0), sym(rng, 20.0))?)
        },
    },
    Identity {
        name: "derivative_u",
        tolerance: 1e-8,
        residual: |rng| {
            let idx = index(rng, 15);
            some(derivative_residual_u(idx, sym(rng, 10.0), sym(rng, 10.0), 1e-5)?)
        },
    },
    Identity {
        name: "derivative_v",
        tolerance: 1e-8,
        residual: |rng| {
            let idx = index(rng, 15);
            some(derivative_residual_v(idx, sym(rng, 10.0), sym(rng, 10.0), 1e-5)?)
        },
    },
    Identity {
        name: "param_derivative",
        tolerance: 1e-8,
        residual: |rng| {
            let n = rng.gen_range(-10..=10);
            let q = rng.gen_range(1..=4);
            let delta = sym(rng, PI);
            let (ru, rv) = param_derivative_residuals(n, q, sym(rng, 6.0), sym(rng, 6.0), delta, 1e-5)?;
            Ok(Some(ru.norm().max(rv.norm())))
        },
    },
    Identity {
        name: "symmetry_swap",
        tolerance: 1e-12,
        residual: |rng| {
            let idx = index(rng, 20);
            some(swap_residual(idx, sym(rng, 15.0), sym(rng, 15.0))?)
        },
    },
    Identity {
        name: "symmetry_negation",
        tolerance: 1e-12,
        residual: |rng| {
            let idx = index(rng, 20);
            some(negation_residual(idx, sym(rng, 15.0), sym(rng, 15.0))?)
        },
    },
    Identity {
        name: "symmetry_q_even",
        tolerance: 1e-12,
        residual: |rng| {
            let (p, q) = [(1, 2), (3, 2), (1, 4), (5, 2)][rng.gen_range(0..4)];
            let idx = Index::new(rng.gen_range(-20..=20), p, q)?;
            some(q_even_residual(idx, sym(rng, 15.0), sym(rng, 15.0))?)
        },
    },
    Identity {
        name: "symmetry_pq_odd",
        tolerance: 1e-12,
        residual: |rng| {
            let (p, q) = [(1, 1), (1, 3), (3, 5), (1, 5)][rng.gen_range(0..4)];
            let idx = Index::new(rng.gen_range(-20..=20), p, q)?;
            some(pq_odd_residual(idx, sym(rng, 15.0), sym(rng, 15.0))?)
        },
    },
    Identity {
        name: "reduction",
        tolerance: 1e-12,
        residual: |rng| {
            let idx = index(rng, 20);
            let mu = rng.gen_range(2..=4);
            some(reduction_residual(idx, mu, sym(rng, 15.0), sym(rng, 15.0))?)
        },
    },
    Identity {
        name: "pde_wave",
        tolerance: 1e-10,
        residual: |rng| {
            let n = rng.gen_range(-12..=12);
            let (u, v) = (sym(rng, 6.0), sym(rng, 6.0));
            let scale = pde_scale(Index::new(n, 1, 1)?, u, v);
            some(pde_residual_wave(n, u, v)? / scale)
        },
    },
    Identity {
        name: "pde_schroedinger",
        tolerance: 1e-10,
        residual: |rng| {
            let n = rng.gen_range(-12..=12);
            let (u, v) = (sym(rng, 6.0), sym(rng, 6.0));
            let scale = pde_scale(Index::new(n, 1, 2)?, u, v);
            Ok(Some(pde_residual_schroedinger(n, u, v)?.norm() / scale))
        },
    },
    Identity {
        name: "pde_coupled",
        tolerance: 1e-10,
        residual: |rng| {
            let idx = index(rng, 12);
            let (u, v) = (sym(rng, 6.0), sym(rng, 6.0));
            some(pde_residual_coupled(idx, u, v)? / pde_scale(idx, u, v))
        },
    },
    Identity {
        name: "pde_decoupled",
        tolerance: 1e-10,
        residual: |rng| {
            let n = rng.gen_range(-12..=12);
            let sign = if rng.gen() { 1 } else { -1 };
            let (u, v) = (sym(rng, 6.0), sym(rng, 6.0));
            let scale = pde_scale(Index::new(n, 1, sign as i64)?, u, v);
            some(pde_residual_decoupled_pm1(n, sign, u, v)? / scale)
        },
    },
    Identity {
        name: "graf",
        tolerance: 1e-9,
        residual: |rng| {
            let n = rng.gen_range(-5..=5);
            let q = rng.gen_range(1..=3);
            let (u1, v1) = (rng.gen_range(0.1..3.0), rng.gen_range(0.1..3.0));
            let (u2, v2) = (rng.gen_range(0.1..3.0), rng.gen_range(0.1..3.0));
            let theta = sym(rng, PI);
            let k = default_bilinear_k(1, q, u1, v1, u2, v2);
            let r = graf_residual(n, q, u1, v1, u2, v2, theta, k)?;
            // Draws whose prefactor branch would need continuation are skipped.
            Ok((!r.branch_crossed).then(|| r.residual.norm()))
        },
    },
];

/// Names accepted by `--only`, in report order.
pub fn identity_names() -> Vec<&'static str> {
    IDENTITIES.iter().map(|i| i.name).collect()
}

fn run_identity(position: usize, id: &Identity, seed: u64, draws: usize) -> IdentityReport {
    // Each identity owns a stream, so --only reproduces the full run's numbers.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(position as u64);
    let mut max_residual = 0.0f64;
    let mut used = 0;
    let mut error = None;
    for _ in 0..draws {
        match (id.residual)(&mut rng) {
            Ok(Some(r)) => {
                max_residual = if r.is_nan() { f64::NAN } else { max_residual.max(r) };
                used += 1;
            }
            Ok(None) => {}
            Err(e) => {
                error = Some(e.to_string());
                break;
            }
        }
    }
    IdentityReport {
        name: id.name,
        max_residual,
        tolerance: id.tolerance,
        draws: used,
        error,
    }
}

/// Runs the suite (or the identity named by `only`) deterministically.
pub fn run_suite(seed: u64, draws: usize, only: Option<&str>) -> std::result::Result<Vec<IdentityReport>, CliError> {
    let selected: Vec<(usize, &Identity)> = IDENTITIES
        .iter()
        .enumerate()
        .filter(|(_, id)| only.is_none_or(|name| id.name == name))
        .collect();
    if selected.is_empty() {
        return Err(CliError::Usage(format!(
            "unknown identity {:?}; choose from {}",
            only.unwrap_or_default(),
            identity_names().join(", ")
        )));
    }
    Ok(selected
        .par_iter()
        .map(|&(pos, id)| run_identity(pos, id, seed, draws))
        .collect())
}

pub fn write_report(reports: &[IdentityReport], seed: u64, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "{:<22} {:>12} {:>10} {:>6}  status", "identity", "max_residual", "tolerance", "draws")?;
    for r in reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        write!(
            out,
            "{:<22} {:>12.3e} {:>10.1e} {:>6}  {status}",
            r.name, r.max_residual, r.tolerance, r.draws
        )?;
        match &r.error {
            Some(e) => writeln!(out, " ({e})")?,
            None => writeln!(out)?,
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    writeln!(out, "seed {seed}: {} passed, {failed} failed", reports.len() - failed)
}

pub fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> std::result::Result<(), CliError> {
    if a.draws == 0 {
        return Err(CliError::Usage("--draws must be positive".into()));
    }
    let reports = with_workers(a.workers, || run_suite(a.seed, a.draws, a.only.as_deref()))??;
    write_report(&reports, a.seed, out).map_err(|e| CliError::io("<stdout>", e))?;
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        return Err(CliError::CheckFailed {
            failed,
            total: reports.len(),
        });
    }
    Ok(())
}
