/// Refines a sign-changing bracket [a, b] (fa·fb < 0) with the Illinois
/// variant of regula falsi, falling back to bisection when it stalls.
pub(crate) fn bracket_root<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, mut fa: f64, mut fb: f64) -> f64 {
    debug_assert!(fa * fb <= 0.0);
    let mut side = 0i8;
    for _ in 0..200 {
        let width = (b - a).abs();
        if width <= 4.0 * f64::EPSILON * a.abs().max(b.abs()) {
            break;
        }
        let mut c = (a * fb - b * fa) / (fb - fa);
        if !(c > a.min(b) && c < a.max(b)) {
            c = 0.5 * (a + b);
        }
        let fc = f(c);
        if fc == 0.0 {
            return c;
        }
        if fc * fb < 0.0 {
            a = b;
            fa = fb;
            b = c;
            fb = fc;
            side = 0;
        } else {
            b = c;
            fb = fc;
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        }
        // guard against slow one-sided convergence
        if (b - a).abs() > 0.5 * width {
            let m = 0.5 * (a + b);
            let fm = f(m);
            if fm == 0.0 {
                return m;
            }
            if fm * fb < 0.0 {
                a = m;
                fa = fm;
            } else {
                b = m;
                fb = fm;
            }
            side = 0;
        }
    }
    if fa.abs() < fb.abs() {
        a
    } else {
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_simple_roots() {
        let r = bracket_root(|x| x * x - 2.0, 0.0, 3.0, -2.0, 7.0);
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
        let r = bracket_root(f64::cos, 1.0, 2.0, 1f64.cos(), 2f64.cos());
        assert!((r - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        // a flat, one-sided function exercises the bisection guard
        let r = bracket_root(|x| x.powi(9) - 1.0, 0.0, 5.0, -1.0, 5f64.powi(9) - 1.0);
        assert!((r - 1.0).abs() < 1e-13);
    }
}
