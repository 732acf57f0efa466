//! Checks against independent references: exact rational arithmetic for the
//! polynomial, quadrature identities for orthonormality, and direct series.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use rydberg_renyi::laguerre::{locate_zeros, orthonormal_weighted, LaguerreParams};
use rydberg_renyi::quad::{tanh_sinh, tanh_sinh_from_origin};
use rydberg_renyi::special::{airy_ai, bessel_j, log_gamma};

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// L_n^{(α)}(x) = Σ_k (−1)^k x^k/k! · Π_{j=k+1}^{n}(j+α)/(n−k)!, exactly.
fn laguerre_exact(n: u32, alpha: &BigRational, x: &BigRational) -> BigRational {
    let mut sum = BigRational::zero();
    for k in 0..=n {
        let mut c = BigRational::one();
        for j in (k + 1)..=n {
            c *= BigRational::from_integer(BigInt::from(j)) + alpha;
            c /= BigRational::from_integer(BigInt::from(j - k));
        }
        let mut xk = BigRational::one();
        for i in 1..=k {
            xk *= x;
            xk /= BigRational::from_integer(BigInt::from(i));
        }
        let term = c * xk;
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

#[test]
fn recurrence_matches_exact_rational_series() {
    let alpha = rational(1, 2);
    for &(n, x_num, x_den) in &[(50u32, 100i64, 1i64), (50, 7, 2), (30, 123, 1), (80, 1, 10)] {
        let x = rational(x_num, x_den);
        let poly = laguerre_exact(n, &alpha, &x);
        // ‖L‖² = Γ(n+3/2)/n! = Γ(3/2)·Π_{j=1}^{n}(j+1/2)/j
        let mut norm_sq = BigRational::one();
        for j in 1..=n {
            norm_sq *= BigRational::from_integer(BigInt::from(j)) + &alpha;
            norm_sq /= BigRational::from_integer(BigInt::from(j));
        }
        let xf = x_num as f64 / x_den as f64;
        let poly_f = poly.to_f64().unwrap();
        let gamma_three_halves = std::f64::consts::PI.sqrt() / 2.0;
        let want =
            poly_f * (0.5 * (0.5 * xf.ln() - xf)).exp() / (norm_sq.to_f64().unwrap() * gamma_three_halves).sqrt();
        let got = orthonormal_weighted(&LaguerreParams::new(n as usize, 0.5).unwrap(), xf)
            .unwrap()
            .to_f64();
        assert!(((got - want) / want).abs() < 1e-9, "n={n}, x={xf}: {got} vs {want}");
    }
}

#[test]
fn lowest_degrees_in_closed_form() {
    // L_1^{(0)}(x) = 1 − x, ‖L_1^{(0)}‖ = 1
    let p = LaguerreParams::new(1, 0.0).unwrap();
    for &x in &[0.3f64, 1.7, 9.0] {
        let want = (1.0 - x) * (-x / 2.0).exp();
        assert!((orthonormal_weighted(&p, x).unwrap().to_f64() - want).abs() < 1e-14);
    }
}

/// ∫_0^∞ f over panels between the zeros of the higher degree, plus a tail.
fn integrate_product(n: usize, m: usize, alpha: f64) -> f64 {
    let pn = LaguerreParams::new(n, alpha).unwrap();
    let pm = LaguerreParams::new(m, alpha).unwrap();
    let f = |x: f64| orthonormal_weighted(&pn, x).unwrap().to_f64() * orthonormal_weighted(&pm, x).unwrap().to_f64();
    let top = if n >= m { pn } else { pm };
    let mut cuts = locate_zeros(&top);
    if cuts.is_empty() {
        cuts.push(1.0);
    }
    let mut total = tanh_sinh_from_origin(f, cuts[0], alpha, 1e-13, 1e-17).value;
    for w in cuts.windows(2) {
        total += tanh_sinh(f, w[0], w[1], 1e-13, 1e-17).value;
    }
    let mut left = *cuts.last().unwrap();
    let mut width = 2.0;
    while left < 4.0 * top.big_n() + 200.0 {
        total += tanh_sinh(f, left, left + width, 1e-13, 1e-17).value;
        left += width;
        width *= 1.3;
    }
    total
}

#[test]
fn orthonormality_under_quadrature() {
    for &alpha in &[0.5, 1.0, 3.0] {
        for &n in &[0usize, 1, 5, 20, 100] {
            let v = integrate_product(n, n, alpha);
            assert!((v - 1.0).abs() < 1e-8, "n={n}, alpha={alpha}: {v}");
        }
        for &(n, m) in &[(0usize, 1usize), (5, 20), (20, 21), (3, 100)] {
            let v = integrate_product(n, m, alpha);
            assert!(v.abs() < 1e-8, "({n},{m}), alpha={alpha}: {v}");
        }
    }
}

#[test]
fn exactly_n_sign_changes_below_the_edge() {
    for &(n, alpha) in &[(7usize, 0.5), (60, 1.0), (150, 3.0)] {
        let p = LaguerreParams::new(n, alpha).unwrap();
        let four_n = p.soft_edge();
        let grid = 40 * n;
        let mut changes = 0;
        let mut last = orthonormal_weighted(&p, four_n / grid as f64 * 0.5)
            .unwrap()
            .value
            .signum();
        for i in 1..grid {
            let x = four_n * (i as f64 + 0.5) / grid as f64;
            let s = orthonormal_weighted(&p, x).unwrap().value.signum();
            if s != last {
                changes += 1;
                last = s;
            }
        }
        assert_eq!(changes, n, "n={n}");
    }
}

#[test]
fn bessel_series_reference() {
    // Σ (−1)^k (x/2)^{2k+ν} / (k! Γ(k+ν+1)) summed directly
    let series = |nu: f64, x: f64| {
        (0..60)
            .map(|k| {
                let kf = k as f64;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * ((2.0 * kf + nu) * (x / 2.0).ln()
                    - log_gamma(kf + 1.0).unwrap()
                    - log_gamma(kf + nu + 1.0).unwrap())
                .exp()
            })
            .sum::<f64>()
    };
    assert!((bessel_j(1.0, 2.0).unwrap() - 0.576_724_807_8).abs() < 1e-10);
    for &(nu, x) in &[(1.0, 2.0), (0.5, 3.3), (2.5, 7.0), (4.0, 10.0)] {
        let want = series(nu, x);
        assert!(((bessel_j(nu, x).unwrap() - want) / want).abs() < 1e-10, "J_{nu}({x})");
    }
}

#[test]
fn airy_first_zero_by_bisection() {
    let (mut lo, mut hi) = (-3.0, -2.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if airy_ai(lo) * airy_ai(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    assert!((0.5 * (lo + hi) + 2.338_107_410_5).abs() < 1e-9);
}
