//! Weighted L_p-norms of orthonormal Laguerre polynomials, computed by
//! quadrature and by their large-degree asymptotics, and the Rényi entropies
//! of D-dimensional harmonic oscillator states built on top of them.

// `!(x > 0.0)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Reference values keep all published digits.
#![allow(clippy::excessive_precision)]

pub mod acceptance;
pub mod constants;
pub mod entropy;
pub mod error;
pub mod laguerre;
pub mod norms;
pub mod quad;
pub mod special;

pub use error::{Error, PoleFactor, Result};
pub use special::Accuracy;
