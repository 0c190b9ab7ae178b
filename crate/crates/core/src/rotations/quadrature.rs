//! One-dimensional rules used for the continuous rotation sets.

use std::f64::consts::{PI, TAU};

/// Trapezoidal rule on the periodic interval `[0, 2π)`: nodes `2πk/n`, each
/// with weight `1/n`. Exact for trigonometric polynomials of degree `< n`.
pub fn periodic(n: usize) -> Vec<(f64, f64)> {
    (0..n).map(|k| (TAU * k as f64 / n as f64, 1.0 / n as f64)).collect()
}

/// Gauss-Legendre nodes on `[-1, 1]` with weights normalized to sum to 1,
/// i.e. a rule for the uniform density on `[-1, 1]`. Exact for polynomials of
/// degree `< 2n`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w / 2.0));
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
