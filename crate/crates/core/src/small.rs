//! Small-argument expansion of `J_n^{p,q}(u, v)`.
//!
//! Expanding both exponentials of the generating function gives
//!
//! ```text
//! J_n^{p,q}(u, v) = Σ_{ℓ,m} a_{ℓ,m} (u/2)^ℓ (v/2)^m,
//! a_{ℓ,m} = Σ_{f,g} (−1)^{(ℓ−f)+(m−g)} / (f! (ℓ−f)! g! (m−g)!)
//! ```
//!
//! where the inner sum runs over `0 <= f <= ℓ`, `0 <= g <= m` with
//! `n = p(2f − ℓ) + q(2g − m)`. Coefficients are kept as exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::index::Index;

/// Largest total order accepted by [`expand`].
pub const MAX_EXPANSION_ORDER: u32 = 40;

fn factorials(up_to: u32) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(up_to as usize + 1);
    let mut f = BigInt::one();
    out.push(f.clone());
    for k in 1..=up_to {
        f *= k;
        out.push(f.clone());
    }
    out
}

fn coeff_with(l: u32, m: u32, idx: Index, fact: &[BigInt]) -> BigRational {
    let Index { n, p, q } = idx;
    let mut acc = BigRational::zero();
    for f in 0..=l {
        // q(2g − m) = n − p(2f − ℓ)
        let rest = n - p * (2 * f as i64 - l as i64);
        if rest % q != 0 {
            continue;
        }
        let twice_g = rest / q + m as i64;
        if twice_g < 0 || twice_g % 2 != 0 || twice_g / 2 > m as i64 {
            continue;
        }
        let g = (twice_g / 2) as u32;
        let denom = &fact[f as usize] * &fact[(l - f) as usize] * &fact[g as usize]
            * &fact[(m - g) as usize];
        let mut term = BigRational::new(BigInt::one(), denom);
        if ((l - f) + (m - g)) % 2 == 1 {
            term = -term;
        }
        acc += term;
    }
    acc
}

/// The coefficient `a_{ℓ,m}` of `(u/2)^ℓ (v/2)^m` in `J_n^{p,q}(u, v)`.
pub fn coeff_a(l: u32, m: u32, idx: Index) -> BigRational {
    coeff_with(l, m, idx, &factorials(l.max(m)))
}

/// One monomial `coefficient · u^u_exp · v^v_exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub u_exp: u32,
    pub v_exp: u32,
    pub coefficient: BigRational,
}

/// A truncated small-argument expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyExpansion {
    /// Nonzero terms, ordered by total degree and then by `u_exp`.
    pub terms: Vec<Monomial>,
    pub max_total_order: u32,
}

impl PolyExpansion {
    pub fn eval(&self, u: f64, v: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let c = t.coefficient.to_f64().unwrap_or(f64::NAN);
                c * u.powi(t.u_exp as i32) * v.powi(t.v_exp as i32)
            })
            .sum()
    }

    /// Lowest total degree present, if any term is.
    pub fn lowest_order(&self) -> Option<u32> {
        self.terms.first().map(|t| t.u_exp + t.v_exp)
    }

    pub fn coefficient(&self, u_exp: u32, v_exp: u32) -> BigRational {
        self.terms
            .iter()
            .find(|t| t.u_exp == u_exp && t.v_exp == v_exp)
            .map(|t| t.coefficient.clone())
            .unwrap_or_else(BigRational::zero)
    }
}

/// All terms `a_{ℓ,m} u^ℓ v^m / 2^{ℓ+m}` with `ℓ + m <= max_total_order`.
pub fn expand(idx: Index, max_total_order: u32) -> Result<PolyExpansion> {
    if max_total_order > MAX_EXPANSION_ORDER {
        return Err(Error::Domain(format!(
            "expansion order {max_total_order} exceeds {MAX_EXPANSION_ORDER}"
        )));
    }
    let fact = factorials(max_total_order);
    let mut terms = Vec::new();
    for total in 0..=max_total_order {
        for l in 0..=total {
            let m = total - l;
            let a = coeff_with(l, m, idx, &fact);
            if a.is_zero() {
                continue;
            }
            let scale = BigInt::one() << (total as usize);
            terms.push(Monomial {
                u_exp: l,
                v_exp: m,
                coefficient: a / BigRational::from_integer(scale),
            });
        }
    }
    Ok(PolyExpansion {
        terms,
        max_total_order,
    })
}

/// Exponent tuple of one lowest-order term: `u` enters as
/// `(u/2)^{α+β}` with `α − β` harmonics of `p`, likewise `v` with `σ, ζ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermIndices {
    pub alpha: u32,
    pub beta: u32,
    pub sigma: u32,
    pub zeta: u32,
}

impl TermIndices {
    pub fn order(&self) -> u32 {
        self.alpha + self.beta + self.sigma + self.zeta
    }

    fn mirrored(self) -> Self {
        TermIndices {
            alpha: self.beta,
            beta: self.alpha,
            sigma: self.zeta,
            zeta: self.sigma,
        }
    }
}

/// Lowest-order term(s) of `J_n^{1,q}` near the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeadingTerm {
    pub alpha: u32,
    pub beta: u32,
    pub sigma: u32,
    pub zeta: u32,
    /// Two tuples of the same minimal order contribute.
    pub two_term: bool,
    pub companion: Option<TermIndices>,
}

impl LeadingTerm {
    pub fn primary(&self) -> TermIndices {
        TermIndices {
            alpha: self.alpha,
            beta: self.beta,
            sigma: self.sigma,
            zeta: self.zeta,
        }
    }

    pub fn order(&self) -> u32 {
        self.primary().order()
    }

    /// `(ν, μ)` with `q = 2ν + 1`, `n = μq + ν + 1` in the two-term case.
    pub fn nu_mu(&self) -> Option<(u32, u32)> {
        // primary (ν+1, 0, μ, 0) and companion (0, ν, μ+1, 0), or their mirror images
        let c = self.companion?;
        Some((c.alpha + c.beta, self.sigma + self.zeta))
    }
}

fn leading_nonneg(n: u64, q: u64) -> (TermIndices, Option<TermIndices>) {
    let r = n % q;
    let mu = n / q;
    let t = |alpha: u64, beta: u64, sigma: u64| TermIndices {
        alpha: alpha as u32,
        beta: beta as u32,
        sigma: sigma as u32,
        zeta: 0,
    };
    if r == 0 {
        (t(0, 0, mu), None)
    } else if 2 * r < q + 1 {
        (t(r, 0, mu), None)
    } else if 2 * r > q + 1 {
        (t(0, q - r, mu + 1), None)
    } else {
        let nu = (q - 1) / 2;
        (t(nu + 1, 0, mu), Some(t(0, nu, mu + 1)))
    }
}

/// Branch selection for the lowest-order term of `J_n^{1,q}`, `q >= 2`.
///
/// Negative `n` is mirrored from `|n|` by exchanging `α ↔ β` and `σ ↔ ζ`.
pub fn leading_term(n: i64, q: i64) -> Result<LeadingTerm> {
    if q < 2 {
        return Err(Error::InvalidIndex(format!("leading_term needs q >= 2, got {q}")));
    }
    let (mut a, mut b) = leading_nonneg(n.unsigned_abs(), q as u64);
    if n < 0 {
        a = a.mirrored();
        b = b.map(TermIndices::mirrored);
    }
    Ok(LeadingTerm {
        alpha: a.alpha,
        beta: a.beta,
        sigma: a.sigma,
        zeta: a.zeta,
        two_term: b.is_some(),
        companion: b,
    })
}

/// Slope `v/u` of the nodal line of `J_n^{1,q}` at the origin when two
/// lowest-order terms compete, `−(−1)^ν (μ+1)/(ν+1)`.
///
/// The two-term leading form is
/// `u^ν v^μ / (2^{ν+μ+1} ν! μ!) · (u/(ν+1) + (−1)^ν v/(μ+1))`.
pub fn small_nodal_slope(n: i64, q: i64) -> Result<Option<f64>> {
    if n < 0 {
        return Err(Error::Domain(format!("small_nodal_slope needs n >= 0, got {n}")));
    }
    let lt = leading_term(n, q)?;
    Ok(lt.nu_mu().map(|(nu, mu)| {
        let sign = if nu % 2 == 0 { 1.0 } else { -1.0 };
        -sign * (mu as f64 + 1.0) / (nu as f64 + 1.0)
    }))
}

/// Lowest-order terms of `J_n^{1,q}` from [`leading_term`], as a polynomial.
pub fn leading_polynomial(n: i64, q: i64) -> Result<PolyExpansion> {
    let lt = leading_term(n, q)?;
    let order = lt.order();
    let full = expand(Index::new(n, 1, q)?, order)?;
    let terms: Vec<_> = full
        .terms
        .into_iter()
        .filter(|t| t.u_exp + t.v_exp == order)
        .collect();
    Ok(PolyExpansion {
        terms,
        max_total_order: order,
    })
}

/// `|a|` as a float, for ratio tests.
pub fn magnitude(c: &BigRational) -> f64 {
    c.abs().to_f64().unwrap_or(f64::INFINITY)
}
