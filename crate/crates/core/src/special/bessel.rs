use std::f64::consts::PI;

use super::gamma::log_gamma_unchecked;
use super::roots::bracket_root;
use crate::error::{Error, Result};

const SERIES_MAX_X: f64 = 5.0;
const HANKEL_MIN_X: f64 = 30.0;

/// Bessel function of the first kind J_ν(x) for real order ν ≥ −1/2 and x ≥ 0.
///
/// Three evaluation routes are used:
/// * the power series when x ≤ 5 or when its terms are monotone (x² ≤ 4(ν+1)),
/// * Steed's continued-fraction method for moderate x,
/// * the Hankel large-argument expansion once x ≥ max(30, ν²).
///
/// Orders in [−1/2, 0) away from the series zone go through the reflection
/// J_{−μ} = cos(μπ) J_μ − sin(μπ) Y_μ.
pub fn bessel_j(order: f64, x: f64) -> Result<f64> {
    if !(order >= -0.5) || !order.is_finite() {
        return Err(Error::domain(format!("bessel_j requires order >= -1/2, got {order}")));
    }
    if !(x >= 0.0) || x.is_nan() {
        return Err(Error::domain(format!("bessel_j requires x >= 0, got {x}")));
    }
    Ok(bessel_j_unchecked(order, x))
}

pub(crate) fn bessel_j_unchecked(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 {
            1.0
        } else if nu > 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
    }
    if x.is_infinite() {
        return 0.0;
    }
    if x <= SERIES_MAX_X || x * x <= 4.0 * (nu + 1.0) {
        return series(nu, x);
    }
    if x >= HANKEL_MIN_X && x >= nu * nu {
        return hankel(nu, x);
    }
    if nu >= 0.0 {
        steed_jy(nu, x).0
    } else {
        let mu = -nu;
        let (j, y) = steed_jy(mu, x);
        (mu * PI).cos() * j - (mu * PI).sin() * y
    }
}

/// Σ (−1)^k (x/2)^{ν+2k} / (k! Γ(ν+k+1)), valid for ν > −1.
pub(crate) fn series(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = (nu * half.ln() - log_gamma_unchecked(nu + 1.0)).exp();
    let q = -half * half;
    let mut sum = term;
    for k in 1..500 {
        let kf = k as f64;
        term *= q / (kf * (nu + kf));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Hankel expansion J_ν(x) = √(2/(πx)) (P cos χ − Q sin χ), χ = x − νπ/2 − π/4,
/// summed until the terms stop decreasing.
pub(crate) fn hankel(nu: f64, x: f64) -> f64 {
    let (p, q) = hankel_pq(nu, x);
    let chi = x - (0.5 * nu + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

fn hankel_pq(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    // a_k = Π_{j=1..k} (μ − (2j−1)²) / (k! (8x)^k)
    let mut a = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        a *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        if a.abs() > last || a == 0.0 {
            break;
        }
        last = a.abs();
        // signs: P = a0 − a2 + a4 …, Q = a1 − a3 + …
        match k % 4 {
            0 => p += a,
            1 => q += a,
            2 => p -= a,
            _ => q -= a,
        }
        if a.abs() < 1e-17 {
            break;
        }
    }
    (p, q)
}

/// J_ν(x) and Y_ν(x) for ν ≥ 0 and x ≥ 2 by Steed's method
/// (continued fraction for J'/J, complex continued fraction for p + iq).
pub(crate) fn steed_jy(nu: f64, x: f64) -> (f64, f64) {
    const EPS: f64 = 1e-16;
    const FPMIN: f64 = 1e-300;
    const MAXIT: usize = 1_000_000;
    debug_assert!(nu >= 0.0 && x >= 2.0);

    let nl = (nu - x + 1.5).floor().max(0.0) as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: f = J'_ν / J_ν
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            break;
        }
    }

    // downward recurrence to order μ
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    // CF2: p + iq
    let mut a = 0.25 - xmu2;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fact = a * xi / (p * p + q * q);
    let mut cr = br + q * fact;
    let mut ci = bi + p * fact;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let mut temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for i in 2..MAXIT {
        a += 2.0 * (i - 1) as f64;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fact = a / (cr * cr + ci * ci);
        cr = br + cr * fact;
        ci = bi - ci * fact;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di /= -den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() < EPS {
            break;
        }
    }
    let gam = (p - f) / q;
    let rjmu = (w / ((p - f) * gam + q)).sqrt().copysign(rjl);
    let mut rymu = rjmu * gam;
    let rymup = rymu * (p + q / gam);
    let mut ry1 = xmu * xi * rymu - rymup;

    let scale = rjmu / rjl;
    let rj = rjl1 * scale;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    (rj, rymu)
}

/// The first `count` positive zeros of J_ν, ν ≥ −1/2, in increasing order.
pub fn bessel_j_zeros(order: f64, count: usize) -> Result<Vec<f64>> {
    Ok(BesselZeros::new(order)?.take(count).collect())
}

/// Positive zeros of J_ν in increasing order, found by stepping along the
/// axis and refining each sign change.
#[derive(Debug, Clone)]
pub(crate) struct BesselZeros {
    order: f64,
    a: f64,
    fa: f64,
}

impl BesselZeros {
    pub(crate) fn new(order: f64) -> Result<Self> {
        if !(order >= -0.5) {
            return Err(Error::domain(format!(
                "Bessel zeros require order >= -1/2, got {order}"
            )));
        }
        // no zeros below max(ν, 0)
        let a = order.max(0.0) + 1e-3;
        Ok(BesselZeros {
            order,
            a,
            fa: bessel_j_unchecked(order, a),
        })
    }
}

impl Iterator for BesselZeros {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        // consecutive zeros are more than 2.4 apart, so a 0.5 step cannot skip one
        const STEP: f64 = 0.5;
        let order = self.order;
        let f = |z: f64| bessel_j_unchecked(order, z);
        loop {
            let b = self.a + STEP;
            let fb = f(b);
            let (a, fa) = (self.a, self.fa);
            self.a = b;
            self.fa = fb;
            if fa == 0.0 {
                return Some(a);
            }
            if fa * fb < 0.0 {
                return Some(bracket_root(f, a, b, fa, fb));
            }
        }
    }
}

/// McMahon's large-zero approximation, used as a cross-check in tests.
#[allow(dead_code)]
pub(crate) fn mcmahon_zero(nu: f64, k: usize) -> f64 {
    let b = (k as f64 + 0.5 * nu - 0.25) * PI;
    let mu = 4.0 * nu * nu;
    let e = 8.0 * b;
    b - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e.powi(3))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j(nu: f64, x: f64) -> f64 {
        bessel_j(nu, x).unwrap()
    }

    #[test]
    fn trivial_values() {
        assert_eq!(j(0.0, 0.0), 1.0);
        assert_eq!(j(2.5, 0.0), 0.0);
        assert!(j(0.5, PI).abs() < 1e-15);
    }

    #[test]
    fn order_one_at_two_matches_direct_series() {
        // direct summation of the defining series, frozen
        assert!((j(1.0, 2.0) - 0.576_724_807_756_873_4).abs() < 1e-12);
    }

    // 30-digit reference values, frozen
    const REFERENCE: &[(f64, f64, f64)] = &[
        (0.0, 1.0, 0.765_197_686_557_966_55),
        (0.0, 15.0, -0.014_224_472_826_780_773),
        (0.0, 25.0, 0.096_266_783_275_958_116),
        (0.0, 100.0, 0.019_985_850_304_223_122),
        (0.5, 20.0, 0.162_880_763_855_029_87),
        (1.0, 13.0, -0.070_318_052_121_778_371),
        (1.0 / 3.0, 10.0, -0.186_145_167_048_695_76),
        (2.5, 17.0, 0.193_510_752_086_261_41),
        (7.3, 18.5, 0.030_024_673_256_910_193),
        (14.0, 28.0, -0.130_856_007_202_797_08),
        (14.0, 60.0, 0.041_439_024_273_130_117),
        (14.0, 250.0, 0.007_567_682_349_131_854_2),
        (-0.25, 3.0, -0.387_506_654_010_610_38),
        (-0.25, 40.0, -0.041_481_122_770_854_005),
        (-0.5, 20.0, 0.072_806_904_785_061_849),
        (40.0, 30.0, 3.612_023_608_896_585_3e-4),
    ];

    #[test]
    fn matches_extended_precision_reference() {
        for &(nu, x, want) in REFERENCE {
            let got = j(nu, x);
            let err = (got - want).abs();
            let tol = if x <= 30.0 { 1e-10 * want.abs().max(1e-3) } else { 1e-10 };
            assert!(err < tol, "J_{nu}({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn half_order_closed_form() {
        let mut x = 0.1;
        while x <= 100.0 {
            let want = (2.0 / (PI * x)).sqrt() * x.sin();
            let got = j(0.5, x);
            assert!(
                (got - want).abs() <= 1e-10 * want.abs().max(1e-6),
                "x={x} got={got} want={want}"
            );
            x += 0.37;
        }
    }

    #[test]
    fn minus_half_order_closed_form() {
        for &x in &[0.3, 2.0, 11.9, 12.1, 25.0, 31.0, 77.0] {
            let want = (2.0 / (PI * x)).sqrt() * x.cos();
            assert!((j(-0.5, x) - want).abs() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn recurrence_residual_on_grid() {
        for &nu in &[0.5, 1.0, 2.5] {
            let mut x = 0.5;
            while x <= 50.0 {
                let r = j(nu - 1.0, x) + j(nu + 1.0, x) - 2.0 * nu / x * j(nu, x);
                assert!(r.abs() < 1e-9, "nu={nu} x={x} r={r}");
                x += 0.25;
            }
        }
    }

    #[test]
    fn crossover_points_are_continuous() {
        for &nu in &[0.0, 0.5, 1.0, 3.7, 9.0] {
            let lo = series(nu, SERIES_MAX_X);
            let hi = steed_jy(nu, SERIES_MAX_X).0;
            assert!((lo - hi).abs() < 1e-12, "series/steed nu={nu}");
            let x = HANKEL_MIN_X.max(nu * nu);
            let a = steed_jy(nu, x).0;
            let b = hankel(nu, x);
            assert!((a - b).abs() < 1e-12, "steed/hankel nu={nu}");
        }
    }

    #[test]
    fn zeros_are_sign_changes_and_close_to_mcmahon() {
        let zs = bessel_j_zeros(0.0, 20).unwrap();
        assert!((zs[0] - 2.404_825_557_695_773).abs() < 1e-12);
        for (k, z) in zs.iter().enumerate() {
            assert!(j(0.0, *z).abs() < 1e-13);
            if k >= 5 {
                assert!((z - mcmahon_zero(0.0, k + 1)).abs() < 1e-5);
            }
        }
        let zs = bessel_j_zeros(0.5, 10).unwrap();
        for (k, z) in zs.iter().enumerate() {
            assert!((z - (k as f64 + 1.0) * PI).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_order() {
        assert!(bessel_j(-0.6, 1.0).is_err());
        assert!(bessel_j(1.0, -1.0).is_err());
    }
}
