//! Numerical Fourier transform `f̂(s) = ∫ e^{−isx} f(x) dx`, a decay-bound
//! verifier for absolutely continuous `f` with `f, f′ ∈ L¹`, and a
//! Riemann–Lebesgue probe.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{
    integrate_oscillatory, integrate_panels, integrate_real, panel_edges, HalfLine, QuadratureOutcome, Tolerance,
};
use crate::testfns::{Support, TestFunction};

/// Numerical `f̂(s)`.
///
/// Bounded support is integrated directly on panels no wider than half an
/// oscillation. Unbounded support is truncated at the smallest radius whose
/// stored tail bound is below `tol.absolute / 10`; for `s ≠ 0` the two tails
/// are then added by oscillatory quadrature, for `s = 0` the tail bound is
/// folded into the error estimate. The relative tolerance is measured
/// against `max(|f̂(s)|, ‖f‖₁)`.
pub fn fourier_transform(f: &TestFunction, s: f64, tol: &Tolerance) -> Result<QuadratureOutcome> {
    tol.validate()?;
    if !f.f_in_l1 {
        return Err(Error::Precondition(format!("`{}` is not flagged as integrable", f.id)));
    }
    if !s.is_finite() {
        return Err(Error::Domain(format!("frequency must be finite, got {s}")));
    }
    let (lo, hi, tail_mass) = f.integration_domain(tol.absolute / 10.0)?;
    let integrand = |x: f64| Complex64::cis(-s * x) * f.eval(x);
    let width = if s == 0.0 { hi - lo } else { (PI / s.abs()).max(0.25) };
    let edges = panel_edges(lo, hi, width);
    let core_tol = tol.with_absolute(tol.absolute / 2.0);
    let mut out = integrate_panels(integrand, &edges, &f.breaks(), &core_tol)?;

    if matches!(f.support, Support::All) {
        if s == 0.0 {
            out = out.with_extra_error(tail_mass);
        } else {
            let tail_tol = tol.with_absolute(tol.absolute / 8.0);
            let amp = |x: f64| Complex64::new(f.eval(x), 0.0);
            let right = integrate_oscillatory(amp, -s, HalfLine::From(hi), &tail_tol)?;
            let left = integrate_oscillatory(amp, -s, HalfLine::UpTo(lo), &tail_tol)?;
            out = out.combine(right).combine(left);
        }
    }
    // |f̂| ≤ ‖f‖₁ sets the natural scale for the relative part of the target;
    // near zeros of f̂ the value itself would demand sub-rounding accuracy.
    out.converged = out.error_estimate <= tol.target(out.value.norm().max(f.l1_norm));
    Ok(out)
}

/// `|f̂(s)|` at each requested frequency.
pub fn riemann_lebesgue_probe(f: &TestFunction, s_values: &[f64], tol: &Tolerance) -> Result<Vec<f64>> {
    if s_values.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Domain("probe frequencies must be strictly increasing".into()));
    }
    s_values
        .iter()
        .map(|&s| fourier_transform(f, s, tol).map(|o| o.value.norm()))
        .collect()
}

/// The two decay bounds on `|f(x)|` for `x > 1` together with the value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayCheck {
    pub x: f64,
    /// `‖f‖₁/x + ‖f′‖₁`
    pub bound1: f64,
    /// `‖f‖₁/x + ∫_{√x}^{x} |f′| + ‖f‖_∞/√x`
    pub bound2: f64,
    /// `|f(x)|`
    pub value: f64,
}

impl DecayCheck {
    pub fn holds(&self) -> bool {
        self.value <= self.bound1 && self.value <= self.bound2
    }
}

/// Evaluate both decay bounds at `x > 1` using the stored norms and a
/// quadrature of `|f′|` over `[√x, x]`.
pub fn decay_check(f: &TestFunction, x: f64) -> Result<DecayCheck> {
    if !f.satisfies_inversion_hypotheses() {
        return Err(Error::Precondition(format!(
            "`{}` is not absolutely continuous with f, f' integrable",
            f.id
        )));
    }
    if !(x > 1.0) || !x.is_finite() {
        return Err(Error::Domain(format!("decay_check needs finite x > 1, got {x}")));
    }
    let deriv_l1 = f
        .deriv_l1_norm
        .ok_or_else(|| Error::Precondition(format!("`{}` has no derivative norm", f.id)))?;
    let root = x.sqrt();
    let tol = Tolerance::new(1e-13, 1e-12, 4000)?;
    let middle = integrate_real(
        |t| f.deriv(t).map(f64::abs).unwrap_or(0.0),
        root,
        x,
        &f.breaks(),
        &tol,
    )?;
    let head = f.l1_norm / x;
    Ok(DecayCheck {
        x,
        bound1: head + deriv_l1,
        bound2: head + middle.value.re + f.sup_norm / root,
        value: f.eval(x).abs(),
    })
}
