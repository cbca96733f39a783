//! Exact differential algebra on the lower index.
//!
//! An expression is a finite sum `Σ c · u^a v^b J_{n+s}` where `J_m` stands
//! for `J_m^{p,q}(u, v; e^{iδ})`. Derivatives act through the shift rules
//! `2∂_u J_m = J_{m−p} − J_{m+p}` and
//! `2∂_v J_m = e^{iδ} J_{m−q} − e^{−iδ} J_{m+q}`,
//! so a differential operator applied to `J_n` becomes a finite combination
//! of neighbouring `J_m` with polynomial coefficients.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftExpr {
    p: i64,
    q: i64,
    phase: Complex64,
    /// (power of u, power of v, index shift) → coefficient.
    terms: BTreeMap<(u32, u32, i64), Complex64>,
}

impl ShiftExpr {
    /// The expression `J_n` itself, with `phase = e^{iδ}`.
    pub fn identity(p: i64, q: i64, phase: Complex64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((0, 0, 0), Complex64::new(1.0, 0.0));
        ShiftExpr { p, q, phase, terms }
    }

    fn empty_like(&self) -> Self {
        ShiftExpr {
            p: self.p,
            q: self.q,
            phase: self.phase,
            terms: BTreeMap::new(),
        }
    }

    fn push(&mut self, key: (u32, u32, i64), c: Complex64) {
        let slot = self.terms.entry(key).or_insert(Complex64::new(0.0, 0.0));
        *slot += c;
        if *slot == Complex64::new(0.0, 0.0) {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, i64), &Complex64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn d_u(&self) -> Self {
        let mut out = self.empty_like();
        for (&(a, b, s), &c) in &self.terms {
            if a > 0 {
                out.push((a - 1, b, s), c * a as f64);
            }
            out.push((a, b, s - self.p), c * 0.5);
            out.push((a, b, s + self.p), -c * 0.5);
        }
        out
    }

    pub fn d_v(&self) -> Self {
        let mut out = self.empty_like();
        for (&(a, b, s), &c) in &self.terms {
            if b > 0 {
                out.push((a, b - 1, s), c * b as f64);
            }
            out.push((a, b, s - self.q), c * self.phase * 0.5);
            out.push((a, b, s + self.q), -c * self.phase.conj() * 0.5);
        }
        out
    }

    pub fn mul_u(&self) -> Self {
        self.map_keys(|(a, b, s)| (a + 1, b, s))
    }

    pub fn mul_v(&self) -> Self {
        self.map_keys(|(a, b, s)| (a, b + 1, s))
    }

    /// Multiplies by `J_{m+shift}/J_m`, i.e. relabels the lower index.
    pub fn shift_index(&self, shift: i64) -> Self {
        self.map_keys(|(a, b, s)| (a, b, s + shift))
    }

    fn map_keys(&self, f: impl Fn((u32, u32, i64)) -> (u32, u32, i64)) -> Self {
        let mut out = self.empty_like();
        for (&k, &c) in &self.terms {
            out.push(f(k), c);
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = self.empty_like();
        for (&k, &c) in &self.terms {
            out.push(k, c * factor);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, &c) in &other.terms {
            out.push(k, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Evaluates at `(u, v)` with `j(m)` supplying `J_m`; each distinct
    /// index is requested once.
    pub fn eval(
        &self,
        n: i64,
        u: f64,
        v: f64,
        mut j: impl FnMut(i64) -> Result<Complex64>,
    ) -> Result<Complex64> {
        let mut cache: BTreeMap<i64, Complex64> = BTreeMap::new();
        let mut sum = Complex64::new(0.0, 0.0);
        for (&(a, b, s), &c) in &self.terms {
            let m = n + s;
            let value = match cache.get(&m) {
                Some(&z) => z,
                None => {
                    let z = j(m)?;
                    cache.insert(m, z);
                    z
                }
            };
            sum += c * u.powi(a as i32) * v.powi(b as i32) * value;
        }
        Ok(sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_derivative_rule() {
        let one = Complex64::new(1.0, 0.0);
        let e = ShiftExpr::identity(1, 1, one).d_u().d_u();
        let got: Vec<_> = e.terms().map(|(&k, &c)| (k, c.re)).collect();
        assert_eq!(got, vec![((0, 0, -2), 0.25), ((0, 0, 0), -0.5), ((0, 0, 2), 0.25)]);
    }

    #[test]
    fn product_rule() {
        let one = Complex64::new(1.0, 0.0);
        // ∂_u (u J) = J + u ∂_u J
        let lhs = ShiftExpr::identity(1, 2, one).mul_u().d_u();
        let rhs = ShiftExpr::identity(1, 2, one).add(&ShiftExpr::identity(1, 2, one).d_u().mul_u());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn wave_operator_cancels_for_equal_indices() {
        let one = Complex64::new(1.0, 0.0);
        let j = ShiftExpr::identity(1, 1, one);
        assert!(j.d_u().d_u().sub(&j.d_v().d_v()).is_zero());
    }
}
