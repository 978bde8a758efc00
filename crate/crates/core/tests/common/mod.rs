//! Independent oracles for integration tests. Nothing here calls into the
//! library's quadrature engine.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Composite Simpson rule with `n` (rounded up to even) subintervals.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + k as f64 * h);
    }
    s * h / 3.0
}

/// Composite 5-point Gauss–Legendre on `n` equal panels.
pub fn gauss_legendre(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    const X: [f64; 5] = [
        0.0,
        0.538_469_310_105_683_1,
        -0.538_469_310_105_683_1,
        0.906_179_845_938_664,
        -0.906_179_845_938_664,
    ];
    const W: [f64; 5] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
        0.236_926_885_056_189_1,
    ];
    let h = (b - a) / n as f64;
    let mut total = 0.0;
    for k in 0..n {
        let mid = a + (k as f64 + 0.5) * h;
        let mut panel = 0.0;
        for (x, w) in X.iter().zip(W.iter()) {
            panel += w * f(mid + 0.5 * h * x);
        }
        total += 0.5 * h * panel;
    }
    total
}

/// Sine integral `Si(x)` by the power series (small x) or Gauss–Legendre.
pub fn si(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if x < 0.0 {
        return -si(-x);
    }
    if x <= 4.0 {
        let mut term = x;
        let mut sum = x;
        let mut k = 0usize;
        loop {
            k += 1;
            term *= -x * x / ((2 * k) as f64 * (2 * k + 1) as f64);
            let add = term / (2 * k + 1) as f64;
            sum += add;
            if add.abs() < 1e-18 {
                return sum;
            }
        }
    }
    let panels = (x * 4.0).ceil() as usize + 8;
    si(4.0) + gauss_legendre(|t| t.sin() / t, 4.0, x, panels)
}

/// Cosine integral `Ci(x) = γ + ln x + ∫_0^x (cos t − 1)/t dt`, `x > 0`.
pub fn ci(x: f64) -> f64 {
    assert!(x > 0.0);
    let g = |t: f64| {
        if t.abs() < 1e-4 {
            -t / 2.0 + t * t * t / 24.0
        } else {
            (t.cos() - 1.0) / t
        }
    };
    let panels = (x * 4.0).ceil() as usize + 8;
    EULER_GAMMA + x.ln() + gauss_legendre(g, 0.0, x, panels)
}

/// `∫_0^∞ cos(u)/(a+u) du = −Ci(a)cos a − (Si(a) − π/2) sin a`, `a > 0`.
pub fn cos_over_shift(a: f64) -> f64 {
    -ci(a) * a.cos() - (si(a) - PI / 2.0) * a.sin()
}

pub fn assert_close(actual: f64, expected: f64, tol: f64, what: &str) {
    assert!(
        (actual - expected).abs() <= tol,
        "{what}: got {actual:.17e}, expected {expected:.17e}, |diff| = {:.3e} > {tol:.1e}",
        (actual - expected).abs()
    );
}
