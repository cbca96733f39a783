use gb2d::small::{expand, PolyExpansion};
use gb2d::{asymptotic, Complex64, Error, Index, Result};

use crate::args::{Method, MethodArgs};

const PARAM_TOLERANCE: f64 = 1e-12;

/// A configured way of producing values of `J_n^{p,q}` at points.
pub struct Evaluator {
    method: Method,
    idx: Index,
    tol: Option<f64>,
    nodes: Option<usize>,
    delta: Option<f64>,
    poly: Option<PolyExpansion>,
}

impl Evaluator {
    pub fn new(method: Method, idx: Index, args: &MethodArgs) -> Result<Self> {
        if args.delta.is_some() && !matches!(method, Method::Exact | Method::Quadrature) {
            return Err(Error::Domain(
                "--delta is only available for the exact and quadrature methods".into(),
            ));
        }
        if args.delta.is_some() && method == Method::Quadrature && idx.p != 1 {
            return Err(Error::Domain(format!(
                "parameterized quadrature needs p = 1, got {idx}"
            )));
        }
        if method == Method::AsymLargeArgs && (idx.p, idx.q) != (1, 2) {
            return Err(Error::Domain(format!(
                "asym_large_args is defined for (p, q) = (1, 2), got {idx}"
            )));
        }
        let poly = match method {
            Method::SmallPoly => Some(expand(idx, args.order)?),
            _ => None,
        };
        Ok(Evaluator {
            method,
            idx,
            tol: args.tol,
            nodes: args.nodes,
            delta: args.delta,
            poly,
        })
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn is_complex(&self) -> bool {
        self.delta.is_some()
    }

    fn nodes_for(&self, u: f64, v: f64) -> usize {
        self.nodes
            .unwrap_or_else(|| gb2d::quadrature::auto_nodes(self.idx, u, v))
    }

    /// Value at `(u, v)`; the real part for parameterized functions.
    pub fn value(&self, u: f64, v: f64) -> Result<f64> {
        if self.delta.is_some() {
            return self.complex(u, v).map(|z| z.re);
        }
        let idx = self.idx;
        match self.method {
            Method::Exact => match self.tol {
                Some(tol) => Ok(gb2d::eval_series(idx, u, v, tol)?.value),
                None => gb2d::eval(idx, u, v),
            },
            Method::Quadrature => Ok(gb2d::eval_quadrature(idx, u, v, self.nodes_for(u, v))?.value),
            Method::AsymLargeArgs => asymptotic::asym_large_args_12(idx.n, u, v),
            Method::AsymLargeVn => asymptotic::asym_large_vn(idx.n, idx.p, idx.q, u, v),
            Method::SmallPoly => Ok(self.poly.as_ref().expect("built in new").eval(u, v)),
        }
    }

    /// Complex value; real methods return a zero imaginary part.
    pub fn complex(&self, u: f64, v: f64) -> Result<Complex64> {
        let Some(delta) = self.delta else {
            return self.value(u, v).map(|x| Complex64::new(x, 0.0));
        };
        let idx = self.idx;
        match self.method {
            Method::Quadrature => {
                gb2d::eval_param_quadrature(idx.n, idx.q, u, v, delta, self.nodes_for(u, v))
            }
            _ => {
                let tau = Complex64::from_polar(1.0, delta);
                let tol = self.tol.unwrap_or(PARAM_TOLERANCE);
                Ok(gb2d::eval_param(idx, u, v, tau, tol)?.value)
            }
        }
    }
}
