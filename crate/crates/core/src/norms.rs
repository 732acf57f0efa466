//! The weighted L_p-norm
//! N = ∫_0^∞ ([L̂_n^{(α)}(x)]² x^α e^{−x})^p x^β dx,
//! by quadrature and by its large-n leading term.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::{airy_constant, bessel_constant, cosine_constant};
use crate::error::{Error, Result};
use crate::laguerre::{locate_zeros, orthonormal_weighted, LaguerreParams};
use crate::quad::{tanh_sinh, tanh_sinh_from_origin};
use crate::special::{log_gamma_unchecked, Accuracy};

/// Equality tolerance for branch points such as p = p*.
pub const BRANCH_TOL: f64 = 1e-12;

/// Parameters of the norm integral, derived from an oscillator state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormSpec {
    pub n: usize,
    pub l: usize,
    pub dim: f64,
    pub p: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// α = l + D/2 − 1 and β = (p − 1)(1 − D/2).
pub fn make_spec(n: usize, l: usize, dim: f64, p: f64) -> Result<NormSpec> {
    if !(dim >= 0.0) || !dim.is_finite() {
        return Err(Error::domain(format!("dimension must be finite and >= 0, got {dim}")));
    }
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::domain(format!("p must be positive and finite, got {p}")));
    }
    let alpha = l as f64 + 0.5 * dim - 1.0;
    let beta = (p - 1.0) * (1.0 - 0.5 * dim);
    if !(alpha > -1.0) {
        return Err(Error::domain(format!(
            "alpha = {alpha} must exceed -1 (l={l}, D={dim})"
        )));
    }
    if !(beta + p * alpha > -1.0) {
        return Err(Error::domain(format!(
            "beta + p*alpha = {} must exceed -1 for the integral to converge at the origin",
            beta + p * alpha
        )));
    }
    Ok(NormSpec {
        n,
        l,
        dim,
        p,
        alpha,
        beta,
    })
}

impl NormSpec {
    /// Power of x at the origin: the integrand behaves like x^{pα+β}.
    pub fn origin_exponent(&self) -> f64 {
        self.p * self.alpha + self.beta
    }
}

/// Which asymptotic formula governs the norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Cosine,
    CosineBesselTransition,
    Bessel,
    CosineAiryTransition,
    Airy,
    AiryBesselTie,
    /// D = 2, p = 2: both transitions contribute at the same order.
    DualTransition,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Cosine => "cosine",
            Branch::CosineBesselTransition => "cosine-bessel",
            Branch::Bessel => "bessel",
            Branch::CosineAiryTransition => "cosine-airy",
            Branch::Airy => "airy",
            Branch::AiryBesselTie => "airy-bessel-tie",
            Branch::DualTransition => "dual-transition",
        }
    }
}

/// Base of the power law in n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PowerBase {
    N,
    TwoN,
    FourN,
}

impl PowerBase {
    pub fn at(self, n: f64) -> f64 {
        match self {
            PowerBase::N => n,
            PowerBase::TwoN => 2.0 * n,
            PowerBase::FourN => 4.0 * n,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Regime {
    pub branch: Branch,
    /// D/(D−1) for D > 2, otherwise 2.
    pub p_star: f64,
    /// (3D−2)/(3D−4), only for 4/3 < D < 2.
    pub p_tilde: Option<f64>,
    pub exponent: f64,
    pub base: PowerBase,
    pub has_log: bool,
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= BRANCH_TOL * a.abs().max(b.abs()).max(1.0)
}

/// Selects the asymptotic branch for the spec's (D, p).
pub fn classify(spec: &NormSpec) -> Regime {
    let (dim, p, beta) = (spec.dim, spec.p, spec.beta);
    let cosine_exponent = (1.0 - p) * dim / 2.0;
    let regime = |branch, p_star, p_tilde, exponent: f64, base| Regime {
        branch,
        p_star,
        p_tilde,
        // constancy loci such as D = 2p/(p−1) must report exactly zero
        exponent: if exponent.abs() <= BRANCH_TOL * dim.max(p).max(1.0) {
            0.0
        } else {
            exponent
        },
        base,
        has_log: matches!(
            branch,
            Branch::CosineBesselTransition | Branch::CosineAiryTransition | Branch::DualTransition
        ),
    };
    if dim > 2.0 && !near(dim, 2.0) {
        let p_star = dim / (dim - 1.0);
        return if near(p, p_star) {
            regime(Branch::CosineBesselTransition, p_star, None, -p / 2.0, PowerBase::N)
        } else if p < p_star {
            regime(Branch::Cosine, p_star, None, cosine_exponent, PowerBase::TwoN)
        } else {
            regime(Branch::Bessel, p_star, None, (p - 1.0) * dim / 2.0 - p, PowerBase::N)
        };
    }
    if near(dim, 2.0) {
        return if near(p, 2.0) {
            regime(Branch::DualTransition, 2.0, None, -1.0, PowerBase::N)
        } else if p < 2.0 {
            regime(Branch::Cosine, 2.0, None, cosine_exponent, PowerBase::TwoN)
        } else {
            regime(Branch::Bessel, 2.0, None, -1.0, PowerBase::N)
        };
    }
    let p_tilde = (dim > 4.0 / 3.0 && !near(dim, 4.0 / 3.0)).then(|| (3.0 * dim - 2.0) / (3.0 * dim - 4.0));
    let airy_exponent = (1.0 - 2.0 * p) / 3.0 + beta;
    if near(p, 2.0) {
        return regime(
            Branch::CosineAiryTransition,
            2.0,
            p_tilde,
            -(1.0 - beta),
            PowerBase::FourN,
        );
    }
    if p < 2.0 {
        return regime(Branch::Cosine, 2.0, p_tilde, cosine_exponent, PowerBase::TwoN);
    }
    match p_tilde {
        Some(pt) if near(p, pt) => regime(Branch::AiryBesselTie, 2.0, p_tilde, -beta - 1.0, PowerBase::N),
        Some(pt) if p > pt => regime(Branch::Bessel, 2.0, p_tilde, -beta - 1.0, PowerBase::N),
        _ => regime(Branch::Airy, 2.0, p_tilde, airy_exponent, PowerBase::FourN),
    }
}

/// How the leading term relates to the true norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Caveat {
    /// model · (1 + o(1)).
    RelativeOneTerm,
    /// coefficient · base^exponent · (ln n + O(1)) with the O(1) unknown.
    LogWithUnknownO1,
}

impl Caveat {
    pub fn as_str(self) -> &'static str {
        match self {
            Caveat::RelativeOneTerm => "1+o(1)",
            Caveat::LogWithUnknownO1 => "ln n + O(1)",
        }
    }
}

/// Leading-order model coefficient · base(n)^exponent · (ln n)^{0 or 1}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticNorm {
    pub regime: Regime,
    pub coefficient: f64,
    pub exponent: f64,
    pub has_log: bool,
    pub caveat: Caveat,
}

impl AsymptoticNorm {
    pub fn model(&self, n: f64) -> f64 {
        let power = self.coefficient * self.regime.base.at(n).powf(self.exponent);
        if self.has_log {
            power * n.ln()
        } else {
            power
        }
    }

    /// exact / (coefficient · base^exponent), minus ln n on log branches.
    /// Bounded in n on log branches, tends to 1 otherwise.
    pub fn compensated(&self, n: f64, exact: f64) -> f64 {
        let scaled = exact / (self.coefficient * self.regime.base.at(n).powf(self.exponent));
        if self.has_log {
            scaled - n.ln()
        } else {
            scaled
        }
    }
}

/// The leading large-n term of the norm for the spec's branch.
pub fn norm_asymptotic(spec: &NormSpec, acc: &Accuracy) -> Result<AsymptoticNorm> {
    if spec.n < 2 {
        return Err(Error::domain(format!("asymptotic norm needs n >= 2, got {}", spec.n)));
    }
    let regime = classify(spec);
    let (alpha, beta, p) = (spec.alpha, spec.beta, spec.p);
    let coefficient = match regime.branch {
        Branch::Cosine => cosine_constant(beta, p)?,
        Branch::CosineBesselTransition => {
            2.0 * (log_gamma_unchecked(p + 0.5) - log_gamma_unchecked(p + 1.0) - (p + 0.5) * PI.ln()).exp()
        }
        Branch::Bessel => bessel_constant(alpha, beta, p, acc)?,
        Branch::CosineAiryTransition | Branch::DualTransition => 1.0 / (PI * PI),
        Branch::Airy => airy_constant(p, acc)? / PI.powf(p),
        Branch::AiryBesselTie => {
            let airy_exponent = (1.0 - 2.0 * p) / 3.0 + beta;
            airy_constant(p, acc)? / PI.powf(p) * 4f64.powf(airy_exponent) + bessel_constant(alpha, beta, p, acc)?
        }
    };
    Ok(AsymptoticNorm {
        regime,
        coefficient,
        exponent: regime.exponent,
        has_log: regime.has_log,
        caveat: if regime.has_log {
            Caveat::LogWithUnknownO1
        } else {
            Caveat::RelativeOneTerm
        },
    })
}

/// Outcome of the norm quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub panels_used: usize,
    pub certified: bool,
}

/// Tail panels stop once one contributes less than this share of the total.
const TAIL_NEGLIGIBLE: f64 = 1e-18;
const MAX_TAIL_PANELS: usize = 200;

/// N by quadrature; `Err(Tolerance)` when the error estimate misses `acc`.
pub fn norm_exact(spec: &NormSpec, acc: &Accuracy) -> Result<QuadratureResult> {
    let result = integrate_norm(spec, acc)?;
    if result.certified {
        Ok(result)
    } else {
        Err(Error::Tolerance {
            what: format!(
                "norm quadrature at n={}, alpha={}, beta={}, p={}",
                spec.n, spec.alpha, spec.beta, spec.p
            ),
            achieved: result.abs_error_estimate,
            requested: acc.target(result.value),
        })
    }
}

/// The quadrature behind [`norm_exact`], returned even when not certified.
///
/// Panels run between consecutive zeros of L_n^{(α)}, where the integrand is
/// smooth and of one sign. The first panel removes the x^{pα+β} behaviour at
/// the origin. Beyond the last zero, panels of doubling width continue until
/// negligible, and the remainder is bounded from the local logarithmic decay
/// rate and added to the error estimate.
pub fn integrate_norm(spec: &NormSpec, acc: &Accuracy) -> Result<QuadratureResult> {
    let params = LaguerreParams::new(spec.n, spec.alpha)?;
    let (p, beta) = (spec.p, spec.beta);
    let log_integrand = |x: f64| -> f64 {
        match orthonormal_weighted(&params, x) {
            Ok(v) => 2.0 * p * v.ln_abs() + beta * x.ln(),
            Err(_) => f64::NEG_INFINITY,
        }
    };
    let integrand = |x: f64| log_integrand(x).exp();

    let zeros = locate_zeros(&params);
    let mut cuts = Vec::with_capacity(zeros.len() + 1);
    cuts.extend_from_slice(&zeros);
    if cuts.is_empty() {
        // n = 0: the integrand x^{pα+β} e^{−px} peaks at (pα+β)/p
        cuts.push((2.0 * spec.origin_exponent() / p).max(1.0));
    }
    let panel_rel = 0.5 * acc.rel_tol;
    let panel_abs = 0.25 * acc.abs_tol / (cuts.len() + MAX_TAIL_PANELS) as f64;
    let origin_exponent = spec.origin_exponent();

    let body: Vec<(f64, f64)> = (0..cuts.len())
        .into_par_iter()
        .map(|i| {
            let est = if i == 0 {
                tanh_sinh_from_origin(integrand, cuts[0], origin_exponent, panel_rel, panel_abs)
            } else {
                tanh_sinh(integrand, cuts[i - 1], cuts[i], panel_rel, panel_abs)
            };
            (est.value, est.error)
        })
        .collect();
    let mut value: f64 = body.iter().map(|b| b.0).sum();
    let mut error: f64 = body.iter().map(|b| b.1).sum();
    let mut panels = body.len();

    let last = *cuts.last().expect("at least one cut");
    let mut width = if cuts.len() >= 2 {
        last - cuts[cuts.len() - 2]
    } else {
        last
    };
    if spec.n > 0 {
        width = width.max(params.edge_width());
    }
    let mut left = last;
    let mut remainder_bound = f64::INFINITY;
    for _ in 0..MAX_TAIL_PANELS {
        let right = left + width;
        let est = tanh_sinh(integrand, left, right, panel_rel, panel_abs);
        value += est.value;
        error += est.error;
        panels += 1;
        left = right;
        width *= 2.0;
        if est.value <= TAIL_NEGLIGIBLE * value {
            // ∫_R^∞ f ≤ f(R)/κ when ln f is concave and decreasing beyond R
            let h = 1e-3 * left;
            let slope = (log_integrand(left + h) - log_integrand(left - h)) / (2.0 * h);
            let f_right = integrand(left);
            if f_right == 0.0 {
                remainder_bound = 0.0;
                break;
            }
            if slope < 0.0 {
                remainder_bound = 2.0 * f_right / -slope;
                break;
            }
        }
    }
    error += remainder_bound;
    let certified = error.is_finite() && error <= acc.target(value) && value > 0.0;
    Ok(QuadratureResult {
        value,
        abs_error_estimate: error,
        panels_used: panels,
        certified,
    })
}

/// One line of a convergence table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub exact: f64,
    pub model: f64,
    /// exact / model.
    pub ratio: f64,
    /// exact / (coefficient · base^exponent) − ln n, on log branches only.
    pub log_residual: Option<f64>,
}

/// Exact norms against the leading term along a grid of degrees.
pub fn convergence_report(l: usize, dim: f64, p: f64, n_grid: &[usize], acc: &Accuracy) -> Result<Vec<ConvergenceRow>> {
    if n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("degree grid must be strictly ascending"));
    }
    n_grid
        .iter()
        .map(|&n| {
            let spec = make_spec(n, l, dim, p)?;
            let exact = norm_exact(&spec, acc)?.value;
            let asym = norm_asymptotic(&spec, acc)?;
            let model = asym.model(n as f64);
            Ok(ConvergenceRow {
                n,
                exact,
                model,
                ratio: exact / model,
                log_residual: asym.has_log.then(|| asym.compensated(n as f64, exact)),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n0_closed_form(spec: &NormSpec) -> f64 {
        let s = spec.origin_exponent() + 1.0;
        (log_gamma_unchecked(s) - s * spec.p.ln() - spec.p * log_gamma_unchecked(spec.alpha + 1.0)).exp()
    }

    #[test]
    fn spec_parameters() {
        let s = make_spec(50, 0, 3.0, 2.0).unwrap();
        assert_eq!((s.alpha, s.beta), (0.5, -0.5));
        let s = make_spec(7, 0, 2.0, 3.7).unwrap();
        assert_eq!((s.alpha, s.beta), (0.0, 0.0));
        let s = make_spec(0, 2, 4.0, 3.0).unwrap();
        assert_eq!((s.alpha, s.beta), (3.0, -2.0));
        assert!(make_spec(0, 0, 0.0, 1.0).is_err());
    }

    #[test]
    fn classifier_examples() {
        let r = classify(&make_spec(50, 0, 3.0, 2.0).unwrap());
        assert_eq!(r.branch, Branch::Bessel);
        assert!((r.exponent + 0.5).abs() < 1e-15);
        let r = classify(&make_spec(50, 0, 2.0, 2.0).unwrap());
        assert_eq!(r.branch, Branch::DualTransition);
        assert!(r.has_log && r.exponent == -1.0);
        let r = classify(&make_spec(50, 0, 1.0, 3.0).unwrap());
        assert_eq!(r.branch, Branch::Airy);
        assert!((r.exponent + 2.0 / 3.0).abs() < 1e-15);
        let r = classify(&make_spec(50, 0, 1.5, 5.0).unwrap());
        assert_eq!(r.branch, Branch::AiryBesselTie);
        assert!((r.p_tilde.unwrap() - 5.0).abs() < 1e-12);
        let r = classify(&make_spec(50, 0, 4.0, 2.0).unwrap());
        assert_eq!(r.exponent, 0.0);
    }

    #[test]
    fn half_dimensional_airy_bessel_ordering() {
        assert_eq!(classify(&make_spec(9, 0, 1.5, 3.0).unwrap()).branch, Branch::Airy);
        assert_eq!(classify(&make_spec(9, 0, 1.5, 6.0).unwrap()).branch, Branch::Bessel);
        assert_eq!(
            classify(&make_spec(9, 0, 1.5, 2.0).unwrap()).branch,
            Branch::CosineAiryTransition
        );
        assert_eq!(classify(&make_spec(9, 0, 1.0, 1.5).unwrap()).branch, Branch::Cosine);
    }

    #[test]
    fn asymptotic_examples() {
        let acc = Accuracy::default();
        let a = norm_asymptotic(&make_spec(100, 0, 3.0, 2.0).unwrap(), &acc).unwrap();
        assert!((a.model(100.0) - 0.1 / PI).abs() < 1e-11);
        let a = norm_asymptotic(&make_spec(100, 0, 4.0, 2.0).unwrap(), &acc).unwrap();
        assert!((2.0 * a.model(77.0) - 0.4053).abs() < 5e-4);
        assert_eq!(a.model(77.0), a.model(1e5));
        let a = norm_asymptotic(&make_spec(100, 3, 2.0, 1.0).unwrap(), &acc).unwrap();
        assert!((a.model(100.0) - 1.0).abs() < 1e-12);
        assert!(norm_asymptotic(&make_spec(1, 0, 3.0, 2.0).unwrap(), &acc).is_err());
    }

    #[test]
    fn ground_state_closed_form() {
        let acc = Accuracy::default();
        let spec = make_spec(0, 0, 3.0, 2.0).unwrap();
        let got = norm_exact(&spec, &acc).unwrap().value;
        assert!((got - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-10 * got);
        for &(l, dim, p) in &[(0, 2.0, 0.5), (1, 3.0, 3.0), (3, 6.0, 0.3), (0, 1.0, 2.5)] {
            let spec = make_spec(0, l, dim, p).unwrap();
            let got = norm_exact(&spec, &acc).unwrap().value;
            let want = n0_closed_form(&spec);
            assert!(((got - want) / want).abs() < 1e-10, "{spec:?}: {got} vs {want}");
        }
    }

    #[test]
    fn unit_order_is_normalization() {
        let acc = Accuracy::default();
        for &(n, l, dim) in &[(7, 1, 3.0), (20, 0, 2.0), (5, 3, 6.0)] {
            let r = norm_exact(&make_spec(n, l, dim, 1.0).unwrap(), &acc).unwrap();
            assert!((r.value - 1.0).abs() < 1e-10, "{n},{l},{dim}: {}", r.value);
            assert!(r.certified && r.abs_error_estimate <= acc.target(r.value));
        }
    }

    #[test]
    fn same_parameters_give_identical_norms() {
        let acc = Accuracy::default();
        let a = norm_exact(&make_spec(12, 1, 2.0, 1.0).unwrap(), &acc).unwrap();
        let b = norm_exact(&make_spec(12, 0, 4.0, 1.0).unwrap(), &acc).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }
}
