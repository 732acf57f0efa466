//! The three leading-order coefficients of the norm asymptotics: the closed
//! form cosine constant and the two moment integrals of Bessel and Airy
//! functions.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, PoleFactor, Result};
use crate::quad::{sum_power_law_series, tanh_sinh, tanh_sinh_from_origin, GaussLegendre, SeriesLimit};
use crate::special::{airy_ai, airy_ai_zero, bessel_j_unchecked, log_gamma_unchecked, Accuracy, BesselZeros};

/// Inputs of the moment integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantRequest {
    pub alpha: f64,
    pub beta: f64,
    pub p: f64,
    pub accuracy: Accuracy,
}

/// Panel integrals are computed this much tighter than the requested
/// tolerance so that their rounding does not eat the budget of the tail.
const PANEL_SAFETY: f64 = 1e-2;
const MIN_PANELS: usize = 64;
const MAX_PANELS: usize = 16_384;

/// C(β, p) = 2^{β+1}/π^{p+1/2} · Γ(β+1−p/2)Γ(1−p/2)Γ(p+1/2) / (Γ(β+2−p)Γ(1+p)).
pub fn cosine_constant(beta: f64, p: f64) -> Result<f64> {
    if !(p > 0.0) || !p.is_finite() || !beta.is_finite() {
        return Err(Error::domain(format!(
            "cosine constant needs p > 0 and finite beta, got beta={beta}, p={p}"
        )));
    }
    let first = beta + 1.0 - 0.5 * p;
    let second = 1.0 - 0.5 * p;
    // at β = 0, p = 2 both factors blow up; the Airy-side one is reported
    if second <= 0.0 {
        return Err(Error::Pole {
            factor: PoleFactor::OneMinusHalfP,
            argument: second,
        });
    }
    if first <= 0.0 {
        return Err(Error::Pole {
            factor: PoleFactor::BetaPlusOneMinusHalfP,
            argument: first,
        });
    }
    // β + 2 − p is the sum of the two arguments above, hence positive
    let ln = (beta + 1.0) * 2f64.ln() - (p + 0.5) * PI.ln()
        + log_gamma_unchecked(first)
        + log_gamma_unchecked(second)
        + log_gamma_unchecked(p + 0.5)
        - log_gamma_unchecked(beta + 2.0 - p)
        - log_gamma_unchecked(1.0 + p);
    Ok(ln.exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum CacheKey {
    Bessel([u64; 5]),
    Airy([u64; 3]),
}

type Cache = RwLock<HashMap<CacheKey, f64>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn cached(key: CacheKey, compute: impl FnOnce() -> Result<f64>) -> Result<f64> {
    if let Some(v) = cache().read().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return Ok(*v);
    }
    let value = compute()?;
    cache().write().unwrap_or_else(|e| e.into_inner()).insert(key, value);
    Ok(value)
}

/// Number of memoized moment integrals.
pub fn cache_len() -> usize {
    cache().read().unwrap_or_else(|e| e.into_inner()).len()
}

/// Drops all memoized moment integrals.
pub fn clear_cache() {
    cache().write().unwrap_or_else(|e| e.into_inner()).clear();
}

fn tolerance_error(what: String, limit: SeriesLimit, requested: f64) -> Error {
    Error::Tolerance {
        what,
        achieved: limit.error,
        requested,
    }
}

/// C_B(α, β, p) = 2 ∫_0^∞ t^{2β+1} |J_α(2t)|^{2p} dt.
///
/// Requires 2pα + 2β + 1 > −1 (origin) and 2β + 1 − p < −1 (infinity).
pub fn bessel_constant(alpha: f64, beta: f64, p: f64, acc: &Accuracy) -> Result<f64> {
    if !(p > 0.0) || !p.is_finite() || !beta.is_finite() || !alpha.is_finite() {
        return Err(Error::domain(format!(
            "bessel constant needs finite alpha, beta and p > 0, got ({alpha}, {beta}, {p})"
        )));
    }
    if alpha < -0.5 {
        return Err(Error::domain(format!(
            "bessel constant needs alpha >= -1/2, got {alpha}"
        )));
    }
    if !(2.0 * p * alpha + 2.0 * beta + 1.0 > -1.0) {
        return Err(Error::Divergence {
            constant: "C_B",
            requirement: format!("2p*alpha + 2beta + 1 > -1 (got {})", 2.0 * p * alpha + 2.0 * beta + 1.0),
        });
    }
    if !(2.0 * beta + 1.0 - p < -1.0) {
        return Err(Error::Divergence {
            constant: "C_B",
            requirement: format!("2beta + 1 - p < -1 (got {})", 2.0 * beta + 1.0 - p),
        });
    }
    let key = CacheKey::Bessel([alpha, beta, p, acc.abs_tol, acc.rel_tol].map(f64::to_bits));
    cached(key, || bessel_moment(alpha, beta, p, acc))
}

/// 2^{−2β−1} ∫_0^∞ u^{2β+1}|J_α(u)|^{2p} du, summed panel by panel between
/// the zeros of J_α.
fn bessel_moment(alpha: f64, beta: f64, p: f64, acc: &Accuracy) -> Result<f64> {
    let power = 2.0 * beta + 1.0;
    // log form: u^{power} alone overflows near the origin when power is very negative
    let integrand = |u: f64| {
        let j = bessel_j_unchecked(alpha, u);
        if j == 0.0 {
            0.0
        } else {
            (power * u.ln() + 2.0 * p * j.abs().ln()).exp()
        }
    };
    let origin_exponent = power + 2.0 * p * alpha;
    let decay = p - power;
    let panel_rel = acc.rel_tol * PANEL_SAFETY;
    let mut zeros = BesselZeros::new(alpha)?;
    let mut left = 0.0;
    let term = |k: usize| {
        let right = zeros.next().expect("Bessel zeros never run out");
        let v = if k == 0 {
            tanh_sinh_from_origin(integrand, right, origin_exponent, panel_rel, 0.0).value
        } else {
            tanh_sinh(integrand, left, right, panel_rel, 0.0).value
        };
        left = right;
        v
    };
    let scale = (-power * 2f64.ln()).exp();
    match sum_power_law_series(
        term,
        decay,
        1.0,
        acc.rel_tol,
        acc.abs_tol / scale,
        MIN_PANELS,
        MAX_PANELS,
    ) {
        Ok(limit) => Ok(scale * limit.value),
        Err(limit) => Err(tolerance_error(
            format!("C_B({alpha}, {beta}, {p}) tail extrapolation"),
            SeriesLimit {
                error: scale * limit.error,
                ..limit
            },
            acc.target(scale * limit.value),
        )),
    }
}

/// C_A(p) = ∫_ℝ [2π 2^{−1/3} Ai²(−t 2^{1/3}/2)]^p dt, finite for p > 2.
pub fn airy_constant(p: f64, acc: &Accuracy) -> Result<f64> {
    if !p.is_finite() || !(p > 2.0) {
        return Err(Error::Divergence {
            constant: "C_A",
            requirement: format!("p > 2 (got {p})"),
        });
    }
    let key = CacheKey::Airy([p, acc.abs_tol, acc.rel_tol].map(f64::to_bits));
    cached(key, || airy_moment(p, acc, AiryPanels::ZeroAligned))
}

/// How the oscillatory side of the Airy moment is cut into panels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AiryPanels {
    /// One panel per pair of consecutive zeros of Ai, with a fitted remainder.
    ZeroAligned,
    /// A uniform Gauss–Legendre grid up to a fixed zero, then the fitted remainder.
    UniformGrid,
}

/// Panels beyond this zero are summed by extrapolation in the uniform variant.
const UNIFORM_GRID_ZEROS: usize = 32;

/// C_A(p) computed with the chosen panelization; not cached. Exposed so
/// the two panelizations can be compared.
pub fn airy_constant_with(p: f64, acc: &Accuracy, panels: AiryPanels) -> Result<f64> {
    if !p.is_finite() || !(p > 2.0) {
        return Err(Error::Divergence {
            constant: "C_A",
            requirement: format!("p > 2 (got {p})"),
        });
    }
    airy_moment(p, acc, panels)
}

/// With s = −t·2^{−2/3}: C_A = 2^{2/3} ∫_ℝ [2^{2/3} π Ai²(s)]^p ds.
fn airy_moment(p: f64, acc: &Accuracy, panels: AiryPanels) -> Result<f64> {
    let amplitude = 2f64.powf(2.0 / 3.0) * PI;
    let integrand = |s: f64| {
        let a = airy_ai(s);
        (amplitude * a * a).powf(p)
    };
    let panel_rel = acc.rel_tol * PANEL_SAFETY;

    // decaying side: unit panels until the contribution is negligible
    let mut decaying = 0.0;
    let mut s = 0.0;
    loop {
        let v = tanh_sinh(integrand, s, s + 1.0, panel_rel, 0.0).value;
        decaying += v;
        s += 1.0;
        if v <= 1e-17 * decaying {
            break;
        }
    }

    let decay = (p + 1.0) / 3.0;
    let oscillatory = match panels {
        AiryPanels::ZeroAligned => {
            let mut right = 0.0;
            let term = |k: usize| {
                let left = airy_ai_zero(k + 1);
                let v = tanh_sinh(integrand, left, right, panel_rel, 0.0).value;
                right = left;
                v
            };
            sum_power_law_series(term, decay, 1.0, acc.rel_tol, acc.abs_tol, MIN_PANELS, MAX_PANELS)
        }
        AiryPanels::UniformGrid => {
            let last = airy_ai_zero(UNIFORM_GRID_ZEROS);
            let rule = GaussLegendre::new(20);
            let width = 0.05;
            let cells = (-last / width).ceil() as usize;
            let h = -last / cells as f64;
            let head: f64 = (0..cells)
                .map(|i| rule.integrate(integrand, last + i as f64 * h, last + (i + 1) as f64 * h))
                .sum();
            let mut right = last;
            let term = |k: usize| {
                let left = airy_ai_zero(UNIFORM_GRID_ZEROS + k + 1);
                let v = tanh_sinh(integrand, left, right, panel_rel, 0.0).value;
                right = left;
                v
            };
            // a fit window well away from the offset keeps the power-law fit conditioned
            sum_power_law_series(
                term,
                decay,
                (UNIFORM_GRID_ZEROS + 1) as f64,
                acc.rel_tol,
                acc.abs_tol,
                4 * UNIFORM_GRID_ZEROS,
                MAX_PANELS,
            )
            .map(|l| SeriesLimit {
                value: l.value + head,
                ..l
            })
        }
    };
    let scale = 2f64.powf(2.0 / 3.0);
    match oscillatory {
        Ok(limit) => Ok(scale * (decaying + limit.value)),
        Err(limit) => Err(tolerance_error(
            format!("C_A({p}) tail extrapolation"),
            SeriesLimit {
                error: scale * limit.error,
                ..limit
            },
            acc.target(scale * (decaying + limit.value)),
        )),
    }
}
