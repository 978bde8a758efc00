mod common;

use std::f64::consts::PI;

use common::{assert_close, gauss_legendre, si};
use finv_core::quadrature::{
    integrate_finite, integrate_finite_with_breaks, integrate_oscillatory, principal_value, sinc_integral, HalfLine, Tolerance,
};
use finv_core::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn re(f: impl Fn(f64) -> f64) -> impl Fn(f64) -> Complex64 {
    move |x| Complex64::new(f(x), 0.0)
}

#[test]
fn finite_examples() {
    let tol = Tolerance::default();
    let one = integrate_finite(re(|_| 1.0), 0.0, 1.0, &tol).unwrap();
    assert_close(one.value.re, 1.0, 1e-12, "constant");
    assert!(one.evaluations > 0 && one.converged);
    let period = integrate_finite(Complex64::cis, 0.0, 2.0 * PI, &tol).unwrap();
    assert!(period.value.norm() < 1e-10);
    let arctan = integrate_finite(re(|x| 1.0 / (1.0 + x * x)), 0.0, 1.0, &tol).unwrap();
    assert_close(arctan.value.re, 1f64.atan(), 1e-12, "arctan");
    assert_close(1f64.atan(), PI / 4.0, 1e-16, "oracle");
}

#[test]
fn converged_outcomes_respect_their_tolerance() {
    let tol = Tolerance::new(1e-9, 1e-9, 500).unwrap();
    for (a, b) in [(0.0, 1.0), (-3.0, 7.0), (0.5, 40.0)] {
        let o = integrate_finite(|x| Complex64::cis(3.0 * x) / (1.0 + x * x), a, b, &tol).unwrap();
        assert!(o.error_estimate >= 0.0);
        if o.converged {
            assert!(o.error_estimate <= tol.target(o.value.norm()));
        }
    }
}

#[test]
fn nan_integrand_is_an_error() {
    let r = integrate_finite(re(|x| if x > 0.5 { f64::NAN } else { x }), 0.0, 1.0, &Tolerance::default());
    assert!(matches!(r, Err(Error::InvalidIntegrand { .. })));
}

#[test]
fn budget_exhaustion_is_reported_not_raised() {
    let tol = Tolerance::new(1e-14, 1e-14, 1).unwrap();
    let o = integrate_finite(re(|x| (50.0 * x).sin() * x.sqrt()), 0.0, 10.0, &tol).unwrap();
    assert!(!o.converged);
}

#[test]
fn invalid_tolerances() {
    assert!(Tolerance::new(0.0, 1e-10, 10).is_err());
    assert!(Tolerance::new(1e-10, -1.0, 10).is_err());
    assert!(Tolerance::new(1e-10, 1e-10, 0).is_err());
}

#[test]
fn oscillatory_examples() {
    let tol = Tolerance::default();
    let tail = integrate_oscillatory(re(|t| 1.0 / t), 1.0, HalfLine::From(PI), &tol).unwrap();
    assert_close(tail.value.im, PI / 2.0 - si(PI), 1e-9, "sine tail");
    let damped = integrate_oscillatory(re(|t| (-t).exp()), 1.0, HalfLine::From(0.0), &tol).unwrap();
    assert!((damped.value - Complex64::new(0.5, 0.5)).norm() < 1e-9);
    let inv_sq = integrate_oscillatory(re(|t| 1.0 / (t * t)), 5.0, HalfLine::From(1.0), &tol).unwrap();
    assert!(inv_sq.value.norm() <= 1.0);
}

#[test]
fn oscillatory_lower_half_line_mirrors_upper() {
    let tol = Tolerance::default();
    let up = integrate_oscillatory(re(|t| 1.0 / t), 2.0, HalfLine::From(1.0), &tol).unwrap();
    let down = integrate_oscillatory(re(|t| -1.0 / t), 2.0, HalfLine::UpTo(-1.0), &tol).unwrap();
    assert!((up.value - down.value.conj()).norm() < 1e-9);
}

#[test]
fn oscillatory_rejects_growth_and_zero_frequency() {
    let tol = Tolerance::default();
    let grow = integrate_oscillatory(re(|t| t), 1.0, HalfLine::From(0.0), &tol);
    assert!(matches!(grow, Err(Error::DivergenceSuspected { .. })));
    assert!(integrate_oscillatory(re(|t| 1.0 / t), 0.0, HalfLine::From(1.0), &tol).is_err());
}

#[test]
fn oscillatory_agrees_with_finite_prefix_plus_tail() {
    let tol = Tolerance::default();
    let amp = |t: f64| Complex64::new(1.0 / (1.0 + t), 0.0);
    let whole = integrate_oscillatory(amp, 3.0, HalfLine::From(0.0), &tol).unwrap();
    let head = integrate_finite(|t| amp(t) * Complex64::cis(3.0 * t), 0.0, 20.0, &tol).unwrap();
    let tail = integrate_oscillatory(amp, 3.0, HalfLine::From(20.0), &tol).unwrap();
    let diff = (whole.value - head.value - tail.value).norm();
    assert!(diff < 1e-8, "{diff:e}");
}

#[test]
fn principal_value_examples() {
    let tol = Tolerance::default();
    let odd = principal_value(re(|_| 1.0), 0.0, -1.0, 1.0, &tol).unwrap();
    assert!(odd.value.norm() < 1e-12);
    let flat = principal_value(re(|x| x), 0.0, -1.0, 1.0, &tol).unwrap();
    assert_close(flat.value.re, 2.0, 1e-12, "phi = x");
    let r = 100.0;
    let osc = principal_value(Complex64::cis, 0.0, -r, r, &tol).unwrap();
    assert!(osc.value.re.abs() < 1e-9);
    assert_close(osc.value.im, 2.0 * si(r), 1e-8, "2i Si(100)");
}

#[test]
fn principal_value_domain_and_warning() {
    let tol = Tolerance::default();
    assert!(matches!(principal_value(re(|_| 1.0), 2.0, -1.0, 1.0, &tol), Err(Error::Domain(_))));
    let step = principal_value(re(|x| if x < 0.0 { 0.0 } else { 1.0 }), 0.0, -1.0, 2.0, &tol).unwrap();
    assert!(step.discontinuity_warning);
    let smooth = principal_value(re(f64::cos), 0.0, -1.0, 2.0, &tol).unwrap();
    assert!(!smooth.discontinuity_warning);
}

#[test]
fn sinc_integral_examples() {
    assert_close(sinc_integral(f64::INFINITY).unwrap(), PI / 2.0, 1e-8, "Si(inf)");
    assert_eq!(sinc_integral(0.0).unwrap(), 0.0);
    assert!(sinc_integral(1e-12).unwrap().abs() < 1e-11);
    let oracle = gauss_legendre(|x| if x == 0.0 { 1.0 } else { x.sin() / x }, 0.0, PI, 64);
    assert_close(sinc_integral(PI).unwrap(), oracle, 1e-12, "Si(pi)");
    assert_close(oracle, 1.851_937_051_982_466, 1e-12, "Si(pi) reference digits");
    assert!(sinc_integral(-1.0).is_err());
}

#[test]
fn sinc_integral_monotone_then_damped() {
    let head: Vec<f64> = (0..=20).map(|k| sinc_integral(PI * k as f64 / 20.0).unwrap()).collect();
    assert!(head.windows(2).all(|w| w[0] < w[1]));
    let gaps: Vec<f64> = (1..=12).map(|k| (sinc_integral(PI * k as f64).unwrap() - PI / 2.0).abs()).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn linearity(alpha in -3.0f64..3.0, beta in -3.0f64..3.0, a in -4.0f64..0.0, len in 0.1f64..6.0) {
        let tol = Tolerance::default();
        let b = a + len;
        let f = |x: f64| Complex64::new((-x * x).exp(), x.sin());
        let g = |x: f64| Complex64::new(x.abs(), 0.0);
        // The kink of |x| is declared, as the quadrature contract requires.
        let kink = [0.0];
        let fg = integrate_finite_with_breaks(|x| f(x) * alpha + g(x) * beta, a, b, &kink, &tol).unwrap();
        let fo = integrate_finite_with_breaks(f, a, b, &kink, &tol).unwrap();
        let go = integrate_finite_with_breaks(g, a, b, &kink, &tol).unwrap();
        let slack = fg.error_estimate + alpha.abs() * fo.error_estimate + beta.abs() * go.error_estimate + 1e-12;
        let gap = (fg.value - (fo.value * alpha + go.value * beta)).norm();
        prop_assert!(gap <= slack, "gap {gap:e} slack {slack:e}");
    }

    #[test]
    fn additivity(a in -5.0f64..0.0, m in 0.0f64..1.0, len in 0.5f64..8.0) {
        let tol = Tolerance::default();
        let b = a + len;
        let mid = a + m * len;
        let f = |x: f64| Complex64::cis(2.0 * x) / (1.0 + x * x);
        let whole = integrate_finite(f, a, b, &tol).unwrap();
        let left = integrate_finite(f, a, mid, &tol).unwrap();
        let right = integrate_finite(f, mid, b, &tol).unwrap();
        let slack = whole.error_estimate + left.error_estimate + right.error_estimate + 1e-12;
        prop_assert!((whole.value - left.value - right.value).norm() <= slack);
    }

    #[test]
    fn even_phi_has_zero_principal_value(c in -2.0f64..2.0, h in 0.1f64..3.0, k in 0.1f64..4.0) {
        let tol = Tolerance::default();
        let phi = |x: f64| Complex64::new((k * (x - c)).cos() + (x - c).powi(2), 0.0);
        let o = principal_value(phi, c, c - h, c + h, &tol).unwrap();
        prop_assert!(o.value.norm() < 1e-10);
    }
}
