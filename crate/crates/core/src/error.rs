use std::fmt;

use thiserror::Error;

/// Which gamma factor of the cosine constant hit its pole.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleFactor {
    /// Γ(β + 1 − p/2): the cosine/Bessel transition.
    BetaPlusOneMinusHalfP,
    /// Γ(1 − p/2): the cosine/Airy transition.
    OneMinusHalfP,
}

impl fmt::Display for PoleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PoleFactor::BetaPlusOneMinusHalfP => f.write_str("Gamma(beta + 1 - p/2)"),
            PoleFactor::OneMinusHalfP => f.write_str("Gamma(1 - p/2)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole error: {factor} is not finite (argument {argument} <= 0)")]
    Pole { factor: PoleFactor, argument: f64 },

    #[error("divergence error: {constant} requires {requirement}")]
    Divergence {
        constant: &'static str,
        requirement: String,
    },

    #[error("tolerance error: {what} reached {achieved:e}, requested {requested:e}")]
    Tolerance {
        what: String,
        achieved: f64,
        requested: f64,
    },

    #[error("overflow error: {0}")]
    Overflow(String),
}

impl Error {
    /// Short machine-readable name, printed by the command line front end.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DomainError",
            Error::Pole { .. } => "PoleError",
            Error::Divergence { .. } => "DivergenceError",
            Error::Tolerance { .. } => "ToleranceError",
            Error::Overflow(_) => "OverflowError",
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
