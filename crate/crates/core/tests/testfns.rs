mod common;

use std::f64::consts::PI;

use common::{assert_close, gauss_legendre, simpson};
use finv_core::testfns::{
    bump, catalog, catalog_info, gaussian, laplace, lookup, monomial, monomial_transform, norms, rect, tent,
    Support, TestFunction, BUMP_L1,
};
use finv_core::Error;
use proptest::prelude::*;

#[test]
fn catalog_contents() {
    let ids: Vec<String> = catalog().into_iter().map(|f| f.id).collect();
    for want in ["rect", "laplace", "gaussian", "tent", "bump", "monomial0", "monomial1", "monomial2"] {
        assert!(ids.iter().any(|i| i == want), "missing {want}");
    }
    let info = catalog_info();
    assert!(info.iter().any(|f| f.dimension == 2 && f.id == "gaussian_gaussian"));
    assert!(info.iter().any(|f| f.dimension == 2 && f.id == "quadform"));
    assert!(matches!(lookup("nope"), Err(Error::UnknownFunction(_))));
}

#[test]
fn rect_examples() {
    let r = rect();
    assert_eq!(r.transform(0.0).unwrap().re, 2.0);
    assert!(r.transform(PI).unwrap().norm() < 1e-15);
    assert!(!r.satisfies_inversion_hypotheses());
    assert!(!r.fprime_in_l1);
}

#[test]
fn laplace_transform_at_zero_is_its_l1_norm() {
    let l = laplace();
    assert_eq!(l.transform(0.0).unwrap().re, 2.0);
    // ∫ e^{−|x|} by an independent rule on a truncated window.
    let oracle = 2.0 * simpson(|x| (-x).exp(), 0.0, 40.0, 20_000);
    assert_close(oracle, 2.0, 1e-9, "oracle");
    assert_eq!(l.l1_norm, 2.0);
}

#[test]
fn norm_examples() {
    let cases: [(TestFunction, f64, f64, f64); 3] = [
        (laplace(), 2.0, 1.0, 2.0),
        (tent(), 1.0, 1.0, 2.0),
        (gaussian(), (2.0 * PI).sqrt(), 1.0, 2.0),
    ];
    for (f, l1, sup, dl1) in cases {
        let n = norms(&f).unwrap();
        assert_close(n.l1_norm, l1, 1e-8 * l1, &f.id);
        assert_close(n.sup_norm, sup, 1e-8, &f.id);
        assert_close(n.deriv_l1_norm.unwrap(), dl1, 1e-8 * dl1, &f.id);
    }
    let gauss_oracle = gauss_legendre(|x| (-0.5 * x * x).exp(), -12.0, 12.0, 200);
    assert_close(gauss_oracle, (2.0 * PI).sqrt(), 1e-12, "gaussian oracle");
    let bump_oracle = gauss_legendre(|x| (-1.0 / (1.0 - x * x)).exp(), -1.0, 1.0, 400);
    assert_close(bump_oracle, BUMP_L1, 1e-12, "bump oracle");
}

#[test]
fn every_catalog_entry_has_consistent_metadata() {
    for f in catalog() {
        assert!(norms(&f).is_ok(), "{}", f.id);
    }
}

#[test]
fn wrong_metadata_is_rejected() {
    let liar = tent().with_norms(3.0, 1.0, Some(2.0));
    assert!(matches!(norms(&liar), Err(Error::MetadataInconsistency { .. })));
    let divergent = TestFunction::new("recip", |x| 1.0 / (1.0 + x.abs())).with_flags(true, true, true);
    assert!(matches!(norms(&divergent), Err(Error::MetadataInconsistency { .. })));
    let flagged_out = TestFunction::new("one", |_| 1.0).with_flags(true, false, false);
    assert!(matches!(norms(&flagged_out), Err(Error::Precondition(_))));
}

#[test]
fn bounded_support_implies_integrable() {
    for f in catalog() {
        if matches!(f.support, Support::Interval { .. }) {
            assert!(f.f_in_l1, "{}", f.id);
        }
    }
}

#[test]
fn monomial_transform_against_quadrature() {
    for n in 0..4u32 {
        for s in [0.0, 0.3, 1.0, 2.5, 17.0] {
            let (x1, x2) = (-0.5, 1.5);
            let re = gauss_legendre(|t| t.powi(n as i32) * (s * t).cos(), x1, x2, 200);
            let im = -gauss_legendre(|t| t.powi(n as i32) * (s * t).sin(), x1, x2, 200);
            let got = monomial_transform(n, x1, x2, s);
            assert!((got.re - re).abs() < 1e-12 && (got.im - im).abs() < 1e-12, "n={n} s={s}");
        }
    }
    let m = monomial(2, 0.0, 1.0);
    assert!(!m.is_abs_cont);
    assert_close(m.l1_norm, 1.0 / 3.0, 1e-15, "∫t²");
}

#[test]
fn derivative_consistency_on_smooth_pieces() {
    for f in catalog() {
        if !f.has_derivative() {
            continue;
        }
        let kinks = f.breaks();
        for k in 0..40 {
            let x = -2.95 + 0.15 * k as f64;
            if kinks.iter().any(|b| (x - b).abs() < 0.02) {
                continue;
            }
            let d = f.deriv(x).unwrap();
            for h in [1e-3, 1e-4] {
                let fd = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
                // O(h²) truncation plus rounding O(ε/h); the bump has large third derivatives.
                let slack = 50.0 * h * h + 1e-10 / h;
                assert!((fd - d).abs() <= slack, "{} at {x}, h={h}: {fd} vs {d}", f.id);
            }
        }
    }
}

#[test]
fn hypothesis_satisfying_entries_decay() {
    for f in catalog().into_iter().filter(TestFunction::satisfies_inversion_hypotheses) {
        for x in [10.0, 50.0, 100.0] {
            let d = |t: f64| f.deriv(t).unwrap().abs();
            let tail = simpson(d, x / 2.0, x / 2.0 + 200.0, 20_000) + simpson(d, -x / 2.0 - 200.0, -x / 2.0, 20_000);
            let bound = f.l1_norm / x + tail + f.sup_norm / x.sqrt();
            assert!(f.eval(x).abs() <= bound && f.eval(-x).abs() <= bound, "{} at {x}", f.id);
        }
        assert!(f.eval(100.0).abs() < 1e-12);
    }
}

#[test]
fn bump_is_smooth_and_compact() {
    let b = bump();
    assert_eq!(b.eval(1.0), 0.0);
    assert_eq!(b.eval(-1.0), 0.0);
    assert!(b.eval(0.999) > 0.0);
    assert_close(b.sup_norm, (-1f64).exp(), 1e-15, "bump sup");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transform_bounded_by_l1_norm(idx in 0usize..8, s in -200.0f64..200.0) {
        let f = &catalog()[idx];
        if let Some(t) = f.transform(s) {
            prop_assert!(t.norm() <= f.l1_norm * (1.0 + 1e-12));
        }
    }

    #[test]
    fn restriction_agrees_inside_and_vanishes_outside(x1 in -3.0f64..0.0, len in 0.5f64..4.0, u in -6.0f64..6.0) {
        let g = gaussian();
        let x2 = x1 + len;
        let r = g.restricted(x1, x2).unwrap();
        let expect = if (x1..=x2).contains(&u) { g.eval(u) } else { 0.0 };
        prop_assert_eq!(r.eval(u), expect);
        prop_assert!(r.f_in_l1 && !r.is_abs_cont);
    }

    #[test]
    fn plus_is_pointwise(u in -5.0f64..5.0, s in -10.0f64..10.0) {
        let sum = laplace().plus(&tent(), "lt").unwrap();
        prop_assert_eq!(sum.eval(u), laplace().eval(u) + tent().eval(u));
        let t = sum.transform(s).unwrap() - laplace().transform(s).unwrap() - tent().transform(s).unwrap();
        prop_assert!(t.norm() < 1e-15);
    }
}
