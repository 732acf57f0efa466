//! Log-gamma, real-order Bessel J and the Airy function Ai.
//!
//! Everything here is a pure function of its arguments.

mod airy;
mod bessel;
mod gamma;
pub(crate) mod roots;

use serde::{Deserialize, Serialize};

pub use airy::{airy_a, airy_ai, airy_ai_zero, airy_ai_zeros};
pub use bessel::{bessel_j, bessel_j_zeros};
pub use gamma::{gamma, log_gamma};

pub(crate) use bessel::{bessel_j_unchecked, BesselZeros};
pub(crate) use gamma::log_gamma_unchecked;

use crate::error::{Error, Result};

/// Absolute and relative tolerance pair requested from numerical integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Accuracy {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Accuracy {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Result<Self> {
        if !(abs_tol > 0.0 && rel_tol > 0.0) {
            return Err(Error::domain(format!(
                "tolerances must be strictly positive, got abs={abs_tol}, rel={rel_tol}"
            )));
        }
        Ok(Accuracy { abs_tol, rel_tol })
    }

    /// Target absolute error for a quantity of the given magnitude.
    pub fn target(&self, magnitude: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * magnitude.abs())
    }
}

impl Default for Accuracy {
    fn default() -> Self {
        Accuracy {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
        }
    }
}
