//! Orthonormal Laguerre polynomials with their weight folded in, the
//! large-degree models for each zone of the real axis, and zero location.

use std::f64::consts::{FRAC_PI_4, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::roots::bracket_root;
use crate::special::{airy_a, bessel_j_unchecked, log_gamma_unchecked};

/// Degree and weight parameter of L_n^{(α)}, with N = n + (α+1)/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaguerreParams {
    n: usize,
    alpha: f64,
    big_n: f64,
}

/// Largest degree accepted by the evaluators.
pub const MAX_DEGREE: usize = 1_000_000;
/// Smallest degree for which the asymptotic models are offered.
pub const MIN_ASYMPTOTIC_DEGREE: usize = 50;

impl LaguerreParams {
    pub fn new(n: usize, alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) || !alpha.is_finite() {
            return Err(Error::domain(format!("alpha must exceed -1, got {alpha}")));
        }
        if n > MAX_DEGREE {
            return Err(Error::domain(format!("degree {n} exceeds {MAX_DEGREE}")));
        }
        Ok(LaguerreParams {
            n,
            alpha,
            big_n: n as f64 + 0.5 * (alpha + 1.0),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn big_n(&self) -> f64 {
        self.big_n
    }

    /// ln ‖L_n^{(α)}‖² = ln Γ(n+α+1) − ln Γ(n+1).
    pub fn log_norm_squared(&self) -> f64 {
        let n = self.n as f64;
        log_gamma_unchecked(n + self.alpha + 1.0) - log_gamma_unchecked(n + 1.0)
    }

    /// Right end 4n + 2α + 2 of the oscillatory interval.
    pub fn soft_edge(&self) -> f64 {
        4.0 * self.big_n
    }

    /// Scale of the soft-edge variable: x = 4N − 2(2n/3)^{1/3} t.
    pub fn edge_width(&self) -> f64 {
        2.0 * (2.0 * self.n as f64 / 3.0).cbrt()
    }

    /// The soft-edge variable t at abscissa x.
    pub fn edge_variable(&self, x: f64) -> f64 {
        (self.soft_edge() - x) / self.edge_width()
    }
}

/// A number stored as `value · e^{log_scale}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedValue {
    pub value: f64,
    pub log_scale: f64,
}

impl WeightedValue {
    fn folded(mantissa: f64, log_scale: f64) -> Self {
        if mantissa == 0.0 {
            return WeightedValue {
                value: 0.0,
                log_scale: 0.0,
            };
        }
        let total = mantissa.abs().ln() + log_scale;
        if total.abs() < 700.0 {
            WeightedValue {
                value: mantissa * log_scale.exp(),
                log_scale: 0.0,
            }
        } else {
            WeightedValue {
                value: mantissa,
                log_scale,
            }
        }
    }

    /// The represented number; underflows to 0 or overflows to ±∞ when the
    /// exponent is out of range.
    pub fn to_f64(self) -> f64 {
        if self.log_scale == 0.0 {
            self.value
        } else {
            self.value * self.log_scale.exp()
        }
    }

    /// ln |value · e^{log_scale}|.
    pub fn ln_abs(self) -> f64 {
        self.value.abs().ln() + self.log_scale
    }
}

/// Whether the recurrence may rescale its iterates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Scaling {
    /// Carry the weight and any growth of the iterates in a separate exponent.
    #[default]
    Logarithmic,
    /// Plain floating point; overflow or underflow is reported as an error.
    Disabled,
}

const RESCALE_AT: f64 = 1.942_426_395_241_255_8e130; // e^300

/// √(x^α e^{−x}) · L̂_n^{(α)}(x), with L̂ the orthonormal Laguerre polynomial.
pub fn orthonormal_weighted(params: &LaguerreParams, x: f64) -> Result<WeightedValue> {
    orthonormal_weighted_with(params, x, Scaling::Logarithmic)
}

/// [`orthonormal_weighted`] with an explicit overflow policy.
pub fn orthonormal_weighted_with(params: &LaguerreParams, x: f64, scaling: Scaling) -> Result<WeightedValue> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("x must be positive and finite, got {x}")));
    }
    let alpha = params.alpha;
    let log_start = 0.5 * (alpha * x.ln() - x - log_gamma_unchecked(alpha + 1.0));
    match scaling {
        Scaling::Logarithmic => {
            let (mantissa, log_growth) = recurrence(params.n, alpha, x, true);
            Ok(WeightedValue::folded(mantissa, log_start + log_growth))
        }
        Scaling::Disabled => {
            let weight = log_start.exp();
            let (poly, _) = recurrence(params.n, alpha, x, false);
            let value = weight * poly;
            let lost = weight == 0.0 || !weight.is_finite() || !poly.is_finite();
            if lost || (value == 0.0 && poly != 0.0) || !value.is_finite() {
                return Err(Error::Overflow(format!(
                    "weighted Laguerre value at n={}, x={x} is outside double range without log scaling",
                    params.n
                )));
            }
            Ok(WeightedValue { value, log_scale: 0.0 })
        }
    }
}

/// Runs the orthonormal three-term recurrence from L̂_0 = 1 (the Γ factor is
/// applied by the caller). Returns the mantissa and accumulated ln-growth.
fn recurrence(n: usize, alpha: f64, x: f64, rescale: bool) -> (f64, f64) {
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut log_growth = 0.0;
    for k in 0..n {
        let kf = k as f64;
        let back = (kf * (kf + alpha)).sqrt();
        let forward = ((kf + 1.0) * (kf + 1.0 + alpha)).sqrt();
        let next = ((2.0 * kf + alpha + 1.0 - x) * cur - back * prev) / forward;
        prev = cur;
        cur = next;
        if rescale && cur.abs() > RESCALE_AT {
            let s = cur.abs();
            cur /= s;
            prev /= s;
            log_growth += s.ln();
        }
    }
    (cur, log_growth)
}

/// The four zones of the positive axis used by the asymptotic models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    BesselZone,
    OscillatoryZone,
    AiryZone,
    GrowingZone,
}

/// Zone boundaries. `theta` sets the start n^{1/3+θ} of the growing model
/// beyond 4n, `epsilon` pulls the oscillatory model's right end to (4−ε)n,
/// `t_max` bounds the soft-edge variable, and `hilb_c` / `hilb_cap` are the
/// constants c and C in the two-branch Hilb error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZoneConfig {
    pub theta: f64,
    pub epsilon: f64,
    pub t_max: f64,
    pub hilb_c: f64,
    pub hilb_cap: f64,
}

impl Default for ZoneConfig {
    fn default() -> Self {
        ZoneConfig {
            theta: 0.1,
            epsilon: 0.05,
            t_max: 12.0,
            hilb_c: 1.0,
            hilb_cap: 1.0,
        }
    }
}

impl ZoneConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.theta > 0.0
            && self.epsilon > 0.0
            && self.epsilon < 4.0
            && self.t_max > 0.0
            && self.hilb_c > 0.0
            && self.hilb_cap > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!("invalid zone configuration {self:?}")))
        }
    }

    /// Right end 4N·n^{−1/3} of the Bessel zone.
    pub fn bessel_zone_end(&self, params: &LaguerreParams) -> f64 {
        params.soft_edge() * (params.n as f64).powf(-1.0 / 3.0)
    }

    /// Domain of the oscillatory model.
    pub fn oscillatory_domain(&self, params: &LaguerreParams) -> (f64, f64) {
        let n = params.n as f64;
        (self.hilb_c / n, (4.0 - self.epsilon) * n)
    }

    /// Left end of the edge zone (t = t_max).
    pub fn airy_zone_start(&self, params: &LaguerreParams) -> f64 {
        params.soft_edge() - params.edge_width() * self.t_max
    }

    /// Start of the growing model, 4n + n^{1/3+θ}.
    pub fn growing_start(&self, params: &LaguerreParams) -> f64 {
        let n = params.n as f64;
        4.0 * n + n.powf(1.0 / 3.0 + self.theta)
    }

    pub fn region(&self, params: &LaguerreParams, x: f64) -> Region {
        let t = params.edge_variable(x);
        if t.abs() <= self.t_max {
            Region::AiryZone
        } else if t < -self.t_max {
            Region::GrowingZone
        } else if x <= self.bessel_zone_end(params) {
            Region::BesselZone
        } else {
            Region::OscillatoryZone
        }
    }
}

fn require_asymptotic_degree(params: &LaguerreParams, model: &str) -> Result<()> {
    if params.n < MIN_ASYMPTOTIC_DEGREE {
        return Err(Error::domain(format!(
            "{model} model needs n >= {MIN_ASYMPTOTIC_DEGREE}, got {}",
            params.n
        )));
    }
    Ok(())
}

/// Hilb (Bessel-function) model of the weighted orthonormal value:
/// √(Γ(n+α+1)/n!) · N^{−α/2} · J_α(2√(Nx)).
pub fn hilb_eval(params: &LaguerreParams, zones: &ZoneConfig, x: f64) -> Result<f64> {
    require_asymptotic_degree(params, "Hilb")?;
    let end = zones.bessel_zone_end(params);
    if !(x > 0.0 && x <= end) {
        return Err(Error::domain(format!("x = {x} is outside the Bessel zone (0, {end}]")));
    }
    if params.alpha < -0.5 {
        return Err(Error::domain("Hilb model needs alpha >= -1/2"));
    }
    let big_n = params.big_n;
    let scale = (0.5 * params.log_norm_squared() - 0.5 * params.alpha * big_n.ln()).exp();
    Ok(scale * bessel_j_unchecked(params.alpha, 2.0 * (big_n * x).sqrt()))
}

/// Bound on the Hilb model error for the orthonormal value, the two-branch
/// estimate with unit constants divided by ‖L_n^{(α)}‖.
pub fn hilb_error_bound(params: &LaguerreParams, zones: &ZoneConfig, x: f64) -> f64 {
    let n = params.n as f64;
    let alpha = params.alpha;
    let raw = if x < zones.hilb_c / n {
        x.powf(0.5 * alpha + 2.0) * n.powf(alpha)
    } else {
        x.powf(1.25) * n.powf(0.5 * alpha - 0.75)
    };
    raw * (-0.5 * params.log_norm_squared()).exp()
}

/// Phase of the oscillatory model:
/// ½√(x(4N−x)) − 2N·arccos√(x/4N) + 3π/4.
pub fn oscillatory_phase(params: &LaguerreParams, x: f64) -> f64 {
    let four_n = params.soft_edge();
    let ratio = (x / four_n).clamp(0.0, 1.0);
    0.5 * (x * (four_n - x)).max(0.0).sqrt() - 0.5 * four_n * ratio.sqrt().acos() + 3.0 * FRAC_PI_4
}

/// Oscillatory model of the squared weighted orthonormal value:
/// n^α n!/Γ(n+α+1) · 2 sin²Φ(x) / (π √(x(4N−x))).
pub fn pr_oscillatory_eval(params: &LaguerreParams, zones: &ZoneConfig, x: f64) -> Result<f64> {
    require_asymptotic_degree(params, "oscillatory")?;
    let (lo, hi) = zones.oscillatory_domain(params);
    if !(x >= lo && x <= hi) {
        return Err(Error::domain(format!(
            "x = {x} is outside the oscillatory zone [{lo}, {hi}]"
        )));
    }
    let n = params.n as f64;
    let prefactor = (params.alpha * n.ln() - params.log_norm_squared()).exp();
    let s = oscillatory_phase(params, x).sin();
    Ok(prefactor * 2.0 * s * s / (PI * (x * (params.soft_edge() - x)).sqrt()))
}

/// Soft-edge (Airy) model of the weighted orthonormal value:
/// (−1)^n π^{−1} 2^{−α−1/3} 3^{1/3} n^{−1/3} A(t) x^{α/2} / ‖L‖.
pub fn pr_airy_eval(params: &LaguerreParams, zones: &ZoneConfig, x: f64) -> Result<f64> {
    require_asymptotic_degree(params, "Airy")?;
    let t = params.edge_variable(x);
    if !(t.abs() <= zones.t_max) || !(x > 0.0) {
        return Err(Error::domain(format!(
            "x = {x} (t = {t}) is outside the edge zone |t| <= {}",
            zones.t_max
        )));
    }
    let n = params.n as f64;
    let alpha = params.alpha;
    let sign = if params.n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let log_mag = -PI.ln() - (alpha + 1.0 / 3.0) * 2f64.ln() + 3f64.ln() / 3.0 - n.ln() / 3.0 + 0.5 * alpha * x.ln()
        - 0.5 * params.log_norm_squared();
    Ok(sign * log_mag.exp() * airy_a(t))
}

/// Growing-zone model beyond the soft edge, x = 4N cosh²φ:
/// ½(−1)^n (π sinh φ)^{−1/2} x^{−1/4} n^{α/2−1/4} e^{N(2φ − sinh 2φ)} / ‖L‖.
pub fn pr_growing_eval(params: &LaguerreParams, zones: &ZoneConfig, x: f64) -> Result<f64> {
    Ok(pr_growing_log(params, zones, x)?.to_f64())
}

/// [`pr_growing_eval`] in log-scaled form, for tail bounds far beyond the edge.
pub fn pr_growing_log(params: &LaguerreParams, zones: &ZoneConfig, x: f64) -> Result<WeightedValue> {
    require_asymptotic_degree(params, "growing")?;
    let start = zones.growing_start(params);
    if !(x >= start) || !x.is_finite() {
        return Err(Error::domain(format!(
            "x = {x} is below the growing zone start {start}"
        )));
    }
    let n = params.n as f64;
    let big_n = params.big_n;
    let phi = (x / params.soft_edge()).sqrt().acosh();
    let sign = if params.n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let log_mag = -2f64.ln() - 0.5 * (PI * phi.sinh()).ln() - 0.25 * x.ln() + (0.5 * params.alpha - 0.25) * n.ln()
        - 0.5 * params.log_norm_squared()
        + big_n * (2.0 * phi - (2.0 * phi).sinh());
    Ok(WeightedValue::folded(sign, log_mag))
}

/// Number of zeros of L_n^{(α)} below x (a Sturm count on the Jacobi matrix).
fn zeros_below(params: &LaguerreParams, x: f64) -> usize {
    let alpha = params.alpha;
    let mut count = 0;
    let mut d = 1.0;
    for k in 0..params.n {
        let kf = k as f64;
        let diag = 2.0 * kf + alpha + 1.0 - x;
        d = if k == 0 { diag } else { diag - kf * (kf + alpha) / d };
        if d == 0.0 {
            d = -f64::EPSILON * (diag.abs() + 1.0);
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Solves Φ(x) = target on (0, 4N) by bisection (Φ is increasing).
fn invert_phase(params: &LaguerreParams, target: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, params.soft_edge());
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if oscillatory_phase(params, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All n zeros of L_n^{(α)}, increasing.
///
/// Each zero is seeded from the oscillatory phase, isolated with Sturm
/// counts and polished by regula falsi on the weighted value.
pub fn locate_zeros(params: &LaguerreParams) -> Vec<f64> {
    let n = params.n;
    let four_n = params.soft_edge();
    (0..n)
        .into_par_iter()
        .map(|i| {
            // the (n−i)-th zero counted from the right sits near Φ = −(n−1−i)π
            let seed = invert_phase(params, -((n - 1 - i) as f64) * PI);
            let step =
                (0.5 * PI * (seed * (four_n - seed)).max(1e-300).sqrt() / params.big_n).clamp(1e-12 * four_n, four_n);
            let mut lo = seed;
            let mut hi = seed;
            let mut width = step;
            while lo > 0.0 && zeros_below(params, lo) > i {
                lo = (seed - width).max(0.0);
                width *= 2.0;
            }
            width = step;
            while zeros_below(params, hi) <= i {
                hi = seed + width;
                width *= 2.0;
            }
            // shrink until exactly one zero is enclosed
            loop {
                let (below_lo, below_hi) = (zeros_below(params, lo), zeros_below(params, hi));
                if below_lo == i && below_hi == i + 1 {
                    break;
                }
                let mid = 0.5 * (lo + hi);
                if zeros_below(params, mid) <= i {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            refine_zero(params, lo.max(f64::MIN_POSITIVE), hi)
        })
        .collect()
}

fn refine_zero(params: &LaguerreParams, lo: f64, hi: f64) -> f64 {
    // scale by the value at the left end so the polish works on O(1) numbers
    let reference = orthonormal_weighted(params, lo).map(|v| v.ln_abs()).unwrap_or(0.0);
    let f = |x: f64| match orthonormal_weighted(params, x) {
        Ok(v) if v.value != 0.0 => v.value.signum() * (v.ln_abs() - reference).exp(),
        _ => 0.0,
    };
    let (fa, fb) = (f(lo), f(hi));
    if fa == 0.0 {
        return lo;
    }
    if fb == 0.0 || fa * fb > 0.0 {
        // the sign test is inconclusive at extreme magnitudes; the Sturm
        // bracket itself is the answer to within its width
        return 0.5 * (lo + hi);
    }
    bracket_root(f, lo, hi, fa, fb)
}
