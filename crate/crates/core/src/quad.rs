//! Quadrature building blocks: double-exponential panels, Gauss–Legendre
//! rules and extrapolation of slowly convergent panel sums.

use std::f64::consts::{FRAC_PI_2, PI};

/// Result of integrating one panel.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PanelEstimate {
    pub value: f64,
    pub error: f64,
    pub evals: usize,
}

const TS_MAX_LEVEL: u32 = 9;
const TS_MIN_LEVEL: u32 = 3;
const TS_T_MAX: f64 = 3.6;

/// Tanh–sinh quadrature of `f` over the finite interval [a, b].
///
/// Abscissas are generated as distances from the nearer endpoint, so
/// integrable endpoint singularities are never sampled at the endpoint
/// itself. Levels are refined until two successive estimates differ by less
/// than `max(rel_tol·|I|, abs_tol)`; that difference is reported as the error.
pub fn tanh_sinh<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> PanelEstimate {
    if a == b {
        return PanelEstimate::default();
    }
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut evals = 1;
    // level 0, h = 1: includes the centre point
    let mut sum = FRAC_PI_2 * f(mid);
    let mut h = 1.0;
    {
        let mut t = h;
        while t <= TS_T_MAX {
            let (s, n) = ts_pair(&mut f, a, b, half, t);
            sum += s;
            evals += n;
            t += h;
        }
    }
    let mut estimate = half * h * sum;
    let mut error = f64::INFINITY;
    for level in 1..=TS_MAX_LEVEL {
        h *= 0.5;
        let mut t = h;
        while t <= TS_T_MAX {
            let (s, n) = ts_pair(&mut f, a, b, half, t);
            sum += s;
            evals += n;
            t += 2.0 * h;
        }
        let next = half * h * sum;
        error = (next - estimate).abs();
        estimate = next;
        if level >= TS_MIN_LEVEL && error <= (rel_tol * estimate.abs()).max(abs_tol) {
            break;
        }
    }
    PanelEstimate {
        value: estimate,
        error,
        evals,
    }
}

/// Tanh–sinh over [0, b] for an integrand behaving like x^{exponent} at the
/// origin. A negative exponent is removed by x = v^k with k(1 + exponent) ≥ 1,
/// which leaves a bounded integrand.
pub fn tanh_sinh_from_origin<F: FnMut(f64) -> f64>(
    mut f: F,
    b: f64,
    exponent: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> PanelEstimate {
    if exponent >= 0.0 {
        return tanh_sinh(f, 0.0, b, rel_tol, abs_tol);
    }
    let k = (1.0 / (1.0 + exponent)).ceil().max(2.0);
    let ki = k as i32;
    tanh_sinh(
        |v| k * v.powi(ki - 1) * f(v.powi(ki)),
        0.0,
        b.powf(1.0 / k),
        rel_tol,
        abs_tol,
    )
}

/// Weighted contribution of the symmetric pair of nodes at ±t (without the
/// h·(b−a)/2 factor). Returns the sum and the number of evaluations.
#[inline]
fn ts_pair<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, half: f64, t: f64) -> (f64, usize) {
    let u = FRAC_PI_2 * t.sinh();
    let e = (-2.0 * u).exp();
    // sech²(u) = 4e^{−2u}/(1+e^{−2u})²
    let w = FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
    if w == 0.0 {
        return (0.0, 0);
    }
    // distance of the node from the nearer endpoint: (b−a)/(1+e^{2u})
    let delta = 2.0 * half * e / (1.0 + e);
    let mut s = 0.0;
    let mut n = 0;
    let xl = a + delta;
    if xl > a && xl < b {
        s += w * f(xl);
        n += 1;
    }
    let xr = b - delta;
    if xr < b && xr > a {
        s += w * f(xr);
        n += 1;
    }
    (s, n)
}

/// Gauss–Legendre rule on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1);
        let m = order;
        let mut nodes = vec![0.0; m];
        let mut weights = vec![0.0; m];
        for i in 0..m.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(m, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(m, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[m - 1 - i] = x;
            weights[i] = w;
            weights[m - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
            * half
    }
}

fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Limit of a convergent series together with a certified error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesLimit {
    pub value: f64,
    pub error: f64,
    pub terms_used: usize,
    /// Fraction of `value` that came from the extrapolated remainder.
    pub tail_share: f64,
}

const TAIL_ORDERS: [usize; 2] = [5, 7];
const MAX_TAIL_SHARE: f64 = 0.99;

/// Sums `Σ_{k≥0} term(k)` whose terms behave like
/// `(k+offset)^{−decay} · Σ_i c_i (k+offset)^{−i}` for large k, with
/// `decay > 1` and `offset ≥ 1`.
///
/// The first M terms are added directly. The coefficients c_i are fitted to
/// the last half of them and the remainder is summed in closed form with
/// Hurwitz zeta values. Two fit orders and two truncation depths (M and M/2)
/// give four estimates; their spread is the error. M doubles from
/// `min_terms` until the spread meets the tolerance. `Err` carries the best
/// attempt when `max_terms` is exhausted or the remainder dominates the sum.
pub fn sum_power_law_series<F: FnMut(usize) -> f64>(
    mut term: F,
    decay: f64,
    offset: f64,
    rel_tol: f64,
    abs_tol: f64,
    min_terms: usize,
    max_terms: usize,
) -> Result<SeriesLimit, SeriesLimit> {
    let mut best = SeriesLimit {
        value: f64::NAN,
        error: f64::INFINITY,
        terms_used: 0,
        tail_share: 1.0,
    };
    if !(decay > 1.0) {
        return Err(best);
    }
    let mut terms: Vec<f64> = Vec::new();
    let mut m = min_terms.max(64);
    while m <= max_terms {
        while terms.len() < m {
            let k = terms.len();
            terms.push(term(k));
        }
        let mut estimates = [0.0; 4];
        let mut share = 0.0;
        for (d, &depth) in [m, m / 2].iter().enumerate() {
            let head: f64 = terms[..depth].iter().sum();
            for (o, &order) in TAIL_ORDERS.iter().enumerate() {
                let tail = fitted_tail(&terms[..depth], decay, offset, order);
                estimates[2 * d + o] = head + tail;
                if d == 0 && o == 1 {
                    share = (tail / (head + tail)).abs();
                }
            }
        }
        let value = estimates[1];
        let spread = estimates.iter().map(|e| (e - value).abs()).fold(0.0, f64::max);
        let error = if value.is_finite() && spread.is_finite() {
            spread.max(8.0 * f64::EPSILON * value.abs())
        } else {
            f64::INFINITY
        };
        let current = SeriesLimit {
            value,
            error,
            terms_used: m,
            tail_share: share,
        };
        if error.is_finite() && (best.value.is_nan() || error < best.error) {
            best = current;
        }
        if error <= (rel_tol * value.abs()).max(abs_tol) {
            return if share <= MAX_TAIL_SHARE {
                Ok(current)
            } else {
                Err(current)
            };
        }
        m *= 2;
    }
    Err(best)
}

/// Remainder Σ_{k≥len} of a power-law model of degree `order` in 1/k,
/// least-squares fitted to the last half of `terms`.
fn fitted_tail(terms: &[f64], decay: f64, offset: f64, order: usize) -> f64 {
    let len = terms.len();
    let lo = len / 2;
    let cols = order + 1;
    assert!(len - lo >= 2 * cols, "fit window too short for order {order}");
    let scale = len as f64 + offset;
    // rows: (k+offset)^{decay} a_k = Σ c_i y^i, with y = scale/(k+offset) ∈ (1, 2]
    let mut rows = Vec::with_capacity(len - lo);
    let mut rhs = Vec::with_capacity(len - lo);
    for (k, &a) in terms.iter().enumerate().skip(lo) {
        let kp = k as f64 + offset;
        let y = scale / kp;
        let mut pw = 1.0;
        rows.push(
            (0..cols)
                .map(|_| {
                    let v = pw;
                    pw *= y;
                    v
                })
                .collect::<Vec<_>>(),
        );
        rhs.push(a * kp.powf(decay));
    }
    let coeffs = least_squares(rows, rhs);
    // Σ_{k≥len} (k+offset)^{−decay−i} scale^i = scale^i ζ(decay+i, len+offset)
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| c * scale.powi(i as i32) * hurwitz_zeta(decay + i as f64, scale))
        .sum()
}

/// Least-squares solution of an overdetermined system by Householder QR.
#[allow(clippy::needless_range_loop)] // column-major Householder steps read clearer with indices
fn least_squares(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let m = a.len();
    let n = a[0].len();
    for col in 0..n {
        let norm = (col..m).map(|r| a[r][col] * a[r][col]).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if a[col][col] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (col..m).map(|r| a[r][col]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        for c in col..n {
            let dot: f64 = (col..m).map(|r| v[r - col] * a[r][c]).sum();
            let f = 2.0 * dot / vnorm2;
            for r in col..m {
                a[r][c] -= f * v[r - col];
            }
        }
        let dot: f64 = (col..m).map(|r| v[r - col] * b[r]).sum();
        let f = 2.0 * dot / vnorm2;
        for r in col..m {
            b[r] -= f * v[r - col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for c in row + 1..n {
            s -= a[row][c] * x[c];
        }
        x[row] = s / a[row][row];
    }
    x
}

// B_{2k} / (2k)!
const EULER_MACLAURIN: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
];

/// Hurwitz zeta ζ(s, a) = Σ_{k≥0} (a+k)^{−s} for s > 1, a > 0.
pub(crate) fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    let mut direct = 0.0;
    let mut b = a;
    while b < 16.0 {
        direct += b.powf(-s);
        b += 1.0;
    }
    let mut sum = direct + b.powf(1.0 - s) / (s - 1.0) + 0.5 * b.powf(-s);
    // rising factorial s(s+1)…(s+2k−2) times b^{−s−2k+1}
    let mut rising = s;
    let mut pw = b.powf(-s - 1.0);
    for (k, c) in EULER_MACLAURIN.iter().enumerate() {
        sum += c * rising * pw;
        let kk = 2.0 * k as f64;
        rising *= (s + kk + 1.0) * (s + kk + 2.0);
        pw /= b * b;
    }
    sum
}
