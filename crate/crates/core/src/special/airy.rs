use std::f64::consts::{FRAC_PI_4, PI};

use super::bessel::bessel_j_unchecked;
use super::roots::bracket_root;

/// Ai(0) = 1 / (3^{2/3} Γ(2/3))
pub(crate) const AI0: f64 = 0.355_028_053_887_817_24;
/// −Ai'(0) = 1 / (3^{1/3} Γ(1/3))
pub(crate) const MINUS_AIP0: f64 = 0.258_819_403_792_806_8;

const MACLAURIN_MAX: f64 = 5.0;
const OSCILLATORY_ASYMPTOTIC_MIN: f64 = 8.0;

/// Airy function Ai(x) for real x.
///
/// Maclaurin series on [−5, 5], the exponentially decaying expansion for
/// x > 5, the Bessel representation (√z/3)(J_{1/3}(ζ) + J_{−1/3}(ζ)) for
/// z = −x in (5, 8] and the oscillatory expansion beyond.
pub fn airy_ai(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.abs() <= MACLAURIN_MAX {
        maclaurin(x)
    } else if x > 0.0 {
        decaying(x)
    } else if -x <= OSCILLATORY_ASYMPTOTIC_MIN {
        let z = -x;
        let zeta = 2.0 / 3.0 * z * z.sqrt();
        z.sqrt() / 3.0 * (bessel_j_unchecked(1.0 / 3.0, zeta) + bessel_j_unchecked(-1.0 / 3.0, zeta))
    } else {
        oscillatory(-x)
    }
}

/// Airy function normalized as A(t) = π 3^{−1/3} Ai(−3^{−1/3} t), the bounded
/// solution of A″(t) + (t/3) A(t) = 0 used by the soft-edge Laguerre model.
pub fn airy_a(t: f64) -> f64 {
    let c = 3f64.cbrt();
    PI / c * airy_ai(-t / c)
}

fn maclaurin(x: f64) -> f64 {
    let x3 = x * x * x;
    let mut f = 1.0;
    let mut g = x;
    let mut tf = 1.0;
    let mut tg = x;
    for k in 0..200 {
        let k3 = 3.0 * k as f64;
        tf *= x3 / ((k3 + 2.0) * (k3 + 3.0));
        tg *= x3 / ((k3 + 3.0) * (k3 + 4.0));
        f += tf;
        g += tg;
        if tf.abs() < 1e-18 * f.abs().max(1.0) && tg.abs() < 1e-18 * g.abs().max(1.0) {
            break;
        }
    }
    AI0 * f - MINUS_AIP0 * g
}

/// u_k coefficients of the Airy asymptotic expansions.
fn u_coefficients() -> [f64; 40] {
    let mut u = [0.0; 40];
    u[0] = 1.0;
    for k in 1..40 {
        let kf = k as f64;
        u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
    }
    u
}

fn decaying(x: f64) -> f64 {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let u = u_coefficients();
    let mut sum = 1.0;
    let mut pow = 1.0;
    let mut last = f64::INFINITY;
    for uk in u.iter().skip(1) {
        pow /= -zeta;
        let term = uk * pow;
        if term.abs() >= last {
            break;
        }
        last = term.abs();
        sum += term;
        if term.abs() < 1e-17 {
            break;
        }
    }
    (-zeta).exp() / (2.0 * PI.sqrt() * x.powf(0.25)) * sum
}

fn oscillatory(z: f64) -> f64 {
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    let u = u_coefficients();
    let mut p = 1.0;
    let mut q = 0.0;
    let mut pow = 1.0;
    let mut last = f64::INFINITY;
    for (k, uk) in u.iter().enumerate().skip(1) {
        pow /= zeta;
        let term = uk * pow;
        if term.abs() >= last {
            break;
        }
        last = term.abs();
        // P = u0 − u2/ζ² + u4/ζ⁴ …, Q = u1/ζ − u3/ζ³ + …
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let phase = zeta - FRAC_PI_4;
    (phase.cos() * p + phase.sin() * q) / (PI.sqrt() * z.powf(0.25))
}

/// Asymptotic location of the k-th zero of Ai (k ≥ 1).
fn zero_estimate(k: usize) -> f64 {
    let t = 3.0 * PI * (4.0 * k as f64 - 1.0) / 8.0;
    let t2 = 1.0 / (t * t);
    -t.powf(2.0 / 3.0) * (1.0 + 5.0 / 48.0 * t2 - 5.0 / 36.0 * t2 * t2 + 77125.0 / 82944.0 * t2 * t2 * t2)
}

/// The k-th zero of Ai (k ≥ 1, a_1 ≈ −2.338), refined from the asymptotic
/// estimate inside a sign-changing bracket.
pub fn airy_ai_zero(k: usize) -> f64 {
    assert!(k >= 1, "Airy zeros are numbered from 1");
    let seed = zero_estimate(k);
    let half_gap = 0.5 * PI / seed.abs().sqrt();
    let mut width = 0.25 * half_gap;
    loop {
        let (a, b) = (seed - width, seed + width);
        let (fa, fb) = (airy_ai(a), airy_ai(b));
        if fa * fb <= 0.0 {
            if fa == 0.0 {
                return a;
            }
            if fb == 0.0 {
                return b;
            }
            return bracket_root(airy_ai, a, b, fa, fb);
        }
        width *= 1.5;
        assert!(width < 2.0 * half_gap, "no Airy zero bracket near {seed}");
    }
}

/// The first `count` zeros of Ai, in decreasing order (a_1 > a_2 > …).
pub fn airy_ai_zeros(count: usize) -> Vec<f64> {
    (1..=count).map(airy_ai_zero).collect()
}
