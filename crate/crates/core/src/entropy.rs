//! Entropic moments, Rényi entropies and disequilibrium of stationary states
//! of the D-dimensional isotropic harmonic oscillator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laguerre::{locate_zeros, orthonormal_weighted, LaguerreParams};
use crate::norms::{classify, make_spec, norm_asymptotic, norm_exact, Branch, Caveat, NormSpec, QuadratureResult};
use crate::quad::{tanh_sinh, tanh_sinh_from_origin};
use crate::special::Accuracy;

/// Quantum numbers (n, l), dimension D and oscillator strength λ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorState {
    pub n: usize,
    pub l: usize,
    pub dim: f64,
    pub lambda: f64,
}

impl OscillatorState {
    pub fn new(n: usize, l: usize, dim: f64, lambda: f64) -> Result<Self> {
        if !(dim >= 1.0) || !dim.is_finite() {
            return Err(Error::domain(format!("dimension must be finite and >= 1, got {dim}")));
        }
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::domain(format!(
                "oscillator strength must be positive, got {lambda}"
            )));
        }
        if dim == 1.0 && l != 0 {
            return Err(Error::domain("a one-dimensional state has l = 0"));
        }
        Ok(OscillatorState { n, l, dim, lambda })
    }

    pub fn spec(&self, p: f64) -> Result<NormSpec> {
        make_spec(self.n, self.l, self.dim, p)
    }
}

/// E = λ(2n + l + D/2).
pub fn energy(state: &OscillatorState) -> f64 {
    state.lambda * (2.0 * state.n as f64 + state.l as f64 + 0.5 * state.dim)
}

/// ρ(r) = 2λ^{D/2} x^{1−D/2} x^α e^{−x} [L̂_n^{(α)}(x)]² at x = λr².
pub fn radial_density(state: &OscillatorState, r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain(format!("radius must be positive, got {r}")));
    }
    let params = LaguerreParams::new(state.n, state.l as f64 + 0.5 * state.dim - 1.0)?;
    let x = state.lambda * r * r;
    let w = orthonormal_weighted(&params, x)?;
    let log = 0.5 * state.dim * state.lambda.ln() + (1.0 - 0.5 * state.dim) * x.ln() + 2.0 * w.ln_abs();
    Ok(2.0 * log.exp())
}

/// ∫_0^∞ ρ(r) r^{D−1} dr by panels between the radial nodes, which should be 1.
pub fn radial_normalization(state: &OscillatorState, acc: &Accuracy) -> Result<QuadratureResult> {
    let params = LaguerreParams::new(state.n, state.l as f64 + 0.5 * state.dim - 1.0)?;
    let lambda = state.lambda;
    let dim = state.dim;
    let f = |r: f64| radial_density(state, r).map_or(0.0, |rho| rho * r.powf(dim - 1.0));
    let mut cuts: Vec<f64> = locate_zeros(&params).iter().map(|x| (x / lambda).sqrt()).collect();
    let spread = (energy(state) / lambda).sqrt();
    if cuts.is_empty() {
        cuts.push(spread);
    }
    // ρ r^{D−1} ∝ r^{2l+D−1} at the origin
    let origin = 2.0 * state.l as f64 + dim - 1.0;
    let rel = 0.5 * acc.rel_tol;
    let mut value = 0.0;
    let mut error = 0.0;
    let mut panels = 0;
    for (i, &right) in cuts.iter().enumerate() {
        let est = if i == 0 {
            tanh_sinh_from_origin(f, right, origin, rel, 0.0)
        } else {
            tanh_sinh(f, cuts[i - 1], right, rel, 0.0)
        };
        value += est.value;
        error += est.error;
        panels += 1;
    }
    // beyond the last node the density decays like a Gaussian in r
    let mut left = *cuts.last().expect("at least one cut");
    let mut width = spread.max(1.0 / lambda.sqrt()) * 0.25;
    loop {
        let est = tanh_sinh(f, left, left + width, rel, 0.0);
        value += est.value;
        error += est.error;
        panels += 1;
        left += width;
        width *= 1.5;
        if est.value <= 1e-20 * value || panels > 400 {
            break;
        }
    }
    Ok(QuadratureResult {
        value,
        abs_error_estimate: error,
        panels_used: panels,
        certified: error <= acc.target(value),
    })
}

/// How a quantity is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    Exact,
    Asymptotic,
    /// Exact up to [`AUTO_EXACT_MAX_N`], asymptotic above.
    Auto,
}

/// Largest degree evaluated exactly under [`Method::Auto`].
pub const AUTO_EXACT_MAX_N: usize = 200;

impl Method {
    pub fn resolve(self, n: usize) -> Method {
        match self {
            Method::Auto if n <= AUTO_EXACT_MAX_N => Method::Exact,
            Method::Auto => Method::Asymptotic,
            m => m,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Asymptotic => "asymptotic",
            Method::Auto => "auto",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quantity {
    Wp,
    Renyi,
    Power,
    Disequilibrium,
}

impl Quantity {
    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::Wp => "wp",
            Quantity::Renyi => "renyi",
            Quantity::Power => "power",
            Quantity::Disequilibrium => "diseq",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyResult {
    pub quantity: Quantity,
    pub value: f64,
    /// Exact or Asymptotic, never Auto.
    pub method: Method,
    /// Branch of the norm asymptotics for the state and order.
    pub branch: Branch,
    /// Set for asymptotic values only.
    pub caveat: Option<Caveat>,
}

/// N_{n,l}(D, p) together with how it was obtained.
fn norm_value(
    state: &OscillatorState,
    p: f64,
    method: Method,
    acc: &Accuracy,
) -> Result<(f64, Method, Branch, Option<Caveat>)> {
    let spec = state.spec(p)?;
    let branch = classify(&spec).branch;
    match method.resolve(state.n) {
        Method::Exact => Ok((norm_exact(&spec, acc)?.value, Method::Exact, branch, None)),
        _ => {
            let asym = norm_asymptotic(&spec, acc)?;
            Ok((
                asym.model(state.n as f64),
                Method::Asymptotic,
                branch,
                Some(asym.caveat),
            ))
        }
    }
}

/// W_p = 2^{p−1} λ^{D(p−1)/2} N_{n,l}(D, p).
pub fn entropic_moment(state: &OscillatorState, p: f64, method: Method, acc: &Accuracy) -> Result<EntropyResult> {
    let (norm, method, branch, caveat) = norm_value(state, p, method, acc)?;
    let log_prefactor = (p - 1.0) * (std::f64::consts::LN_2 + 0.5 * state.dim * state.lambda.ln());
    Ok(EntropyResult {
        quantity: Quantity::Wp,
        value: log_prefactor.exp() * norm,
        method,
        branch,
        caveat,
    })
}

fn require_not_unit(p: f64) -> Result<()> {
    if p == 1.0 {
        return Err(Error::domain("Renyi quantities need p != 1"));
    }
    Ok(())
}

/// R_p = ln(W_p)/(1 − p).
pub fn renyi_entropy(state: &OscillatorState, p: f64, method: Method, acc: &Accuracy) -> Result<EntropyResult> {
    require_not_unit(p)?;
    let w = entropic_moment(state, p, method, acc)?;
    Ok(EntropyResult {
        quantity: Quantity::Renyi,
        value: w.value.ln() / (1.0 - p),
        ..w
    })
}

/// N_p = exp(R_p) = ½ λ^{−D/2} N^{1/(1−p)}.
pub fn renyi_power(state: &OscillatorState, p: f64, method: Method, acc: &Accuracy) -> Result<EntropyResult> {
    let r = renyi_entropy(state, p, method, acc)?;
    Ok(EntropyResult {
        quantity: Quantity::Power,
        value: r.value.exp(),
        ..r
    })
}

/// W_2, the inverse of the second-order entropy power.
pub fn disequilibrium(state: &OscillatorState, method: Method, acc: &Accuracy) -> Result<EntropyResult> {
    let w = entropic_moment(state, 2.0, method, acc)?;
    Ok(EntropyResult {
        quantity: Quantity::Disequilibrium,
        ..w
    })
}

/// Dispatches on `quantity`; `p` is ignored for the disequilibrium.
pub fn evaluate(
    state: &OscillatorState,
    quantity: Quantity,
    p: f64,
    method: Method,
    acc: &Accuracy,
) -> Result<EntropyResult> {
    match quantity {
        Quantity::Wp => entropic_moment(state, p, method, acc),
        Quantity::Renyi => renyi_entropy(state, p, method, acc),
        Quantity::Power => renyi_power(state, p, method, acc),
        Quantity::Disequilibrium => disequilibrium(state, method, acc),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn state(n: usize, l: usize, dim: f64) -> OscillatorState {
        OscillatorState::new(n, l, dim, 1.0).unwrap()
    }

    #[test]
    fn energies() {
        assert_eq!(energy(&state(0, 0, 3.0)), 1.5);
        assert_eq!(energy(&state(50, 0, 2.0)), 101.0);
        assert_eq!(energy(&OscillatorState::new(1, 2, 4.0, 2.0).unwrap()), 12.0);
    }

    #[test]
    fn rejects_orbital_motion_in_one_dimension() {
        assert!(OscillatorState::new(3, 1, 1.0, 1.0).is_err());
        assert!(OscillatorState::new(3, 0, 1.0, 1.0).is_ok());
        assert!(OscillatorState::new(3, 0, 3.0, 0.0).is_err());
    }

    #[test]
    fn ground_state_density() {
        let s = state(0, 0, 3.0);
        for &r in &[0.1f64, 0.7, 1.5, 3.0] {
            let want = 4.0 / PI.sqrt() * (-r * r).exp();
            assert!((radial_density(&s, r).unwrap() - want).abs() < 1e-14);
        }
    }

    #[test]
    fn densities_are_normalized() {
        let acc = Accuracy::default();
        for &(n, l, dim) in &[(0, 0, 3.0), (5, 1, 3.0), (20, 0, 2.0)] {
            let r = radial_normalization(&state(n, l, dim), &acc).unwrap();
            assert!((r.value - 1.0).abs() < 1e-10, "{n},{l},{dim}: {}", r.value);
        }
    }

    #[test]
    fn ground_state_moments() {
        let acc = Accuracy::default();
        let s = state(0, 0, 3.0);
        let w = entropic_moment(&s, 2.0, Method::Exact, &acc).unwrap();
        assert!((w.value - 2.0 / (2.0 * PI).sqrt()).abs() < 1e-10);
        let r = renyi_entropy(&s, 2.0, Method::Exact, &acc).unwrap();
        assert!((r.value - 0.225_791_352_644_727_4).abs() < 1e-9);
        let d = disequilibrium(&s, Method::Auto, &acc).unwrap();
        assert_eq!(d.method, Method::Exact);
        assert_eq!(d.value, w.value);
    }

    #[test]
    fn rydberg_disequilibrium() {
        let acc = Accuracy::default();
        let d = disequilibrium(&state(400, 0, 3.0), Method::Asymptotic, &acc).unwrap();
        assert!((d.value - 2.0 / PI / 20.0).abs() < 1e-11);
        let d = disequilibrium(&state(50, 0, 4.0), Method::Asymptotic, &acc).unwrap();
        assert!((d.value - 0.4053).abs() < 5e-4);
        assert_eq!(d.caveat, Some(Caveat::RelativeOneTerm));
    }

    #[test]
    fn unit_order_moment_and_rejection() {
        let acc = Accuracy::default();
        let w = entropic_moment(&state(9, 2, 3.0), 1.0, Method::Exact, &acc).unwrap();
        assert!((w.value - 1.0).abs() < 1e-10);
        assert!(renyi_entropy(&state(9, 2, 3.0), 1.0, Method::Exact, &acc).is_err());
    }

    #[test]
    fn auto_switches_at_threshold() {
        assert_eq!(Method::Auto.resolve(200), Method::Exact);
        assert_eq!(Method::Auto.resolve(201), Method::Asymptotic);
        assert_eq!(Method::Exact.resolve(10_000), Method::Exact);
    }
}
