//! Index triples `(n, p, q)`, their canonical form, and the Diophantine
//! decomposition `n = p·M + q·N` that drives the product series.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest supported `|p|` and `|q|`.
pub const MAX_UPPER_INDEX: i64 = 10_000;
/// Largest supported `|n|`.
pub const MAX_LOWER_INDEX: i64 = 100_000;

/// The index triple of `J_n^{p,q}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Index {
    pub n: i64,
    pub p: i64,
    pub q: i64,
}

impl Index {
    pub fn new(n: i64, p: i64, q: i64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidIndex(format!(
                "upper indices must be nonzero, got p={p}, q={q}"
            )));
        }
        if p.abs() > MAX_UPPER_INDEX || q.abs() > MAX_UPPER_INDEX {
            return Err(Error::InvalidIndex(format!(
                "upper indices limited to {MAX_UPPER_INDEX}, got p={p}, q={q}"
            )));
        }
        if n.abs() > MAX_LOWER_INDEX {
            return Err(Error::InvalidIndex(format!(
                "lower index limited to {MAX_LOWER_INDEX}, got n={n}"
            )));
        }
        Ok(Index { n, p, q })
    }

    /// Same upper indices, different lower index.
    pub fn with_n(self, n: i64) -> Self {
        Index { n, ..self }
    }

    /// `J_n^{q,p}`; `J_n^{p,q}(u,v) = J_n^{q,p}(v,u)`.
    pub fn swapped(self) -> Self {
        Index {
            n: self.n,
            p: self.q,
            q: self.p,
        }
    }

    pub fn gcd(&self) -> i64 {
        self.p.gcd(&self.q)
    }

    pub fn is_coprime(&self) -> bool {
        self.gcd() == 1
    }
}

impl std::fmt::Display for Index {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(n={}, p={}, q={})", self.n, self.p, self.q)
    }
}

/// `J_n^{p,q}(u,v) = sign · J_{base}(u,v)`, or identically zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonicalIndex {
    pub base: Index,
    pub sign: i8,
    pub is_zero: bool,
    pub reduction_factor: i64,
}

/// Reduces by `gcd(p, q)` and removes a negative `p` (and a negative `q`
/// when exactly one upper index is even).
///
/// Rules used, all from shifting or reflecting the integration variable:
/// `J_n^{μp,μq} = J_{n/μ}^{p,q}` (zero unless `μ | n`),
/// `J_n^{-p,-q} = J_{-n}^{p,q}`,
/// `J_n^{p,-q} = (-1)^n J_n^{p,q}` for even `p`,
/// `J_n^{p,-q} = (-1)^n J_{-n}^{p,q}` for even `q`.
/// With both upper indices odd a negative `q` is kept.
pub fn canonicalize(idx: Index) -> CanonicalIndex {
    let mu = idx.gcd();
    if idx.n % mu != 0 {
        return CanonicalIndex {
            base: idx,
            sign: 1,
            is_zero: true,
            reduction_factor: mu,
        };
    }
    let (mut n, mut p, mut q) = (idx.n / mu, idx.p / mu, idx.q / mu);
    if p < 0 {
        n = -n;
        p = -p;
        q = -q;
    }
    let mut sign = 1i8;
    if q < 0 && (p % 2 == 0 || q % 2 == 0) {
        if n % 2 != 0 {
            sign = -1;
        }
        if q % 2 == 0 {
            n = -n;
        }
        q = -q;
    }
    CanonicalIndex {
        base: Index { n, p, q },
        sign,
        is_zero: false,
        reduction_factor: mu,
    }
}

/// A particular solution of `n = p·M + q·N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[allow(non_snake_case)]
pub struct DiophantineSolution {
    pub M: i64,
    pub N: i64,
}

/// Deterministic solution of `n = p·M + q·N` for coprime `p, q`.
///
/// For `|p| = 1` this is `(n·p, 0)`, the representative that makes the
/// parameterized series match its integral representation. Otherwise the
/// solution with the smallest `|M|` is returned, ties going to `M >= 0`.
pub fn solve_diophantine(idx: Index) -> Result<DiophantineSolution> {
    let Index { n, p, q } = idx;
    if p == 0 || q == 0 || !idx.is_coprime() {
        return Err(Error::InvalidIndex(format!(
            "Diophantine solve needs coprime nonzero upper indices, got {idx}"
        )));
    }
    if p.abs() == 1 {
        return Ok(DiophantineSolution { M: n * p, N: 0 });
    }
    let eg = (p as i128).extended_gcd(&(q as i128));
    // eg.gcd is ±1 and p·x + q·y = gcd.
    let m0 = eg.x * eg.gcd * n as i128;
    let period = (q as i128).abs();
    let low = m0.rem_euclid(period);
    let high = low - period;
    let m = if low <= -high { low } else { high };
    let rest = n as i128 - p as i128 * m;
    debug_assert_eq!(rest % q as i128, 0);
    Ok(DiophantineSolution {
        M: m as i64,
        N: (rest / q as i128) as i64,
    })
}
