use thiserror::Error;

/// Errors raised by the evaluators, identity checks and asymptotic formulas.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the supported range of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An index triple violates its invariants (zero upper index, non-coprime pair where one is required).
    #[error("invalid index: {0}")]
    InvalidIndex(String),

    /// A truncated series could not certify the requested tolerance.
    #[error("tolerance {requested:e} not met, achieved tail bound {achieved:e}")]
    ToleranceNotMet { requested: f64, achieved: f64 },

    /// An asymptotic formula was requested outside its regime of validity.
    #[error("regime error: {0}")]
    Regime(String),

    /// The point lies in the neighbourhood of a coalescence set where the
    /// primitive approximation diverges.
    #[error("divergence zone: {0}")]
    DivergenceZone(String),

    /// Degenerate input such as (u, v) = (0, 0) for a stationary-point search.
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

impl Error {
    /// True for errors that signal an asymptotic approximation is not applicable
    /// at the requested point (as opposed to bad input).
    pub fn is_regime(&self) -> bool {
        matches!(self, Error::Regime(_) | Error::DivergenceZone(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
