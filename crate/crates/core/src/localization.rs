//! Inversion from the restriction of `f` to an interval around `x`, the
//! interval form of the ODE reconstruction, and the closed-form monomial
//! example split into its boundary and principal parts.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inversion::{invert_at_with, ode_integral, InversionReport, InvertOptions, TransformCache, TruncationLadder};
use crate::perron::ComplexParameter;
use crate::quadrature::{sinc_integral, QuadratureOutcome, Tolerance};
use crate::testfns::TestFunction;

fn check_interior(x1: f64, x: f64, x2: f64) -> Result<()> {
    if !(x1 < x && x < x2) || !x1.is_finite() || !x2.is_finite() {
        return Err(Error::Precondition(format!(
            "x = {x} must lie strictly inside ({x1}, {x2})"
        )));
    }
    Ok(())
}

/// Inversion at `x` using only `f` on `[x1, x2]`.
///
/// `f` must be absolutely continuous on the interval, which is accepted
/// when it is flagged absolutely continuous on the line or carries a
/// derivative evaluator. Values outside `[x1, x2]` are discarded before the
/// transform is taken; the reference is `f(x)`.
pub fn localize_invert(
    f: &TestFunction,
    x1: f64,
    x2: f64,
    x: f64,
    ladder: &TruncationLadder,
    tol: &Tolerance,
) -> Result<InversionReport> {
    localize_invert_with(f, x1, x2, x, ladder, tol, &TransformCache::new())
}

/// [`localize_invert`] sharing a transform cache across calls on the same
/// restriction.
pub fn localize_invert_with(
    f: &TestFunction,
    x1: f64,
    x2: f64,
    x: f64,
    ladder: &TruncationLadder,
    tol: &Tolerance,
    cache: &TransformCache,
) -> Result<InversionReport> {
    check_interior(x1, x, x2)?;
    if !(f.is_abs_cont || f.has_derivative()) {
        return Err(Error::Precondition(format!(
            "`{}` is not known to be absolutely continuous on [{x1}, {x2}]",
            f.id
        )));
    }
    let g = f.restricted(x1, x2)?;
    let opts = InvertOptions {
        override_hypotheses: true,
        numeric_transform: false,
    };
    let report = invert_at_with(&g, x, ladder, tol, opts, cache)?;
    Ok(report.with_reference(Some(f.eval(x))))
}

/// `Si(y) = ∫_0^y sin(s)/s ds` for any real `y`.
pub fn si(y: f64) -> Result<f64> {
    if y < 0.0 {
        return sinc_integral(-y).map(|v| -v);
    }
    sinc_integral(y)
}

/// Truncated inversion integral of the indicator of `[x1, x2]` at `x`:
/// `(1/π)[Si(R(x2 − x)) + Si(R(x − x1))]`.
pub fn unit_partial(x1: f64, x2: f64, x: f64, r: f64) -> Result<f64> {
    check_interior(x1, x, x2)?;
    Ok((si(r * (x2 - x))? + si(r * (x - x1))?) / PI)
}

/// `f(x)` rebuilt from `f(x1)` and `g = f′ − iwf` on `[x1, x]`:
/// `e^{iwx} ∫_{x1}^{x} e^{−iwt} g(t) dt + f(x1) e^{iw(x−x1)}`.
pub fn ode_reconstruct_interval(
    f: &TestFunction,
    w: ComplexParameter,
    x1: f64,
    x: f64,
    tol: &Tolerance,
) -> Result<QuadratureOutcome> {
    tol.validate()?;
    if !f.has_derivative() {
        return Err(Error::Precondition(format!("`{}` has no derivative", f.id)));
    }
    if !(w.eta > 0.0) {
        return Err(Error::Domain(format!("w must have positive imaginary part, got {w}")));
    }
    if !(x1 <= x) || !x1.is_finite() || !x.is_finite() {
        return Err(Error::Precondition(format!("need finite x1 <= x, got x1 = {x1}, x = {x}")));
    }
    let start = (Complex64::i() * w.as_complex() * (x - x1)).exp() * f.eval(x1);
    if x == x1 {
        return Ok(QuadratureOutcome::exact(start));
    }
    let integral = ode_integral(f, w, x1, x, x, tol)?;
    Ok(integral.combine(QuadratureOutcome::exact(start)))
}

/// The two parts of `∫_{−R}^{R} e^{ixs} f̂(s) ds` for `f = tⁿ` on `[x1, x2]`
/// after `n` integrations by parts. Their sum is that integral exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonomialTerms {
    /// Sum of evaluated boundary brackets; tends to 0.
    pub boundary: Complex64,
    /// `xⁿ [2 Si(R(x2 − x)) + 2 Si(R(x − x1))]`; tends to `2π xⁿ`.
    pub principal: Complex64,
}

impl MonomialTerms {
    pub fn total(&self) -> Complex64 {
        self.boundary + self.principal
    }
}

/// `dᵐ/dsᵐ [(e^{−isx2} − e^{−isx1}) / s]` by the Leibniz rule.
fn phi_derivative(m: u32, x1: f64, x2: f64, s: f64) -> Complex64 {
    let mut total = Complex64::default();
    let mut binom = 1.0;
    for j in 0..=m {
        let q = m - j;
        // dᵠ/dsᵠ s⁻¹ = (−1)ᵠ q! s^{−(q+1)}
        let factorial: f64 = (1..=q).map(f64::from).product();
        let inv = if q.is_multiple_of(2) { 1.0 } else { -1.0 } * factorial / s.powi(q as i32 + 1);
        let osc = Complex64::new(0.0, -x2).powu(j) * Complex64::cis(-s * x2)
            - Complex64::new(0.0, -x1).powu(j) * Complex64::cis(-s * x1);
        total += osc * (binom * inv);
        binom = binom * f64::from(m - j) / f64::from(j + 1);
    }
    total
}

/// Boundary and principal parts of the monomial example at finite `R`.
pub fn monomial_example(n: u32, x: f64, x1: f64, x2: f64, r: f64) -> Result<MonomialTerms> {
    check_interior(x1, x, x2)?;
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("R must be positive and finite, got {r}")));
    }
    let i = Complex64::i();
    let lead = i.powu(n + 1);
    let mut boundary = Complex64::default();
    for k in 1..=n {
        let m = n - k;
        let bracket = Complex64::cis(x * r) * phi_derivative(m, x1, x2, r)
            - Complex64::cis(-x * r) * phi_derivative(m, x1, x2, -r);
        boundary += Complex64::new(0.0, -x).powu(k - 1) * bracket;
    }
    let principal = x.powi(n as i32) * 2.0 * (si(r * (x2 - x))? + si(r * (x - x1))?);
    Ok(MonomialTerms {
        boundary: lead * boundary,
        principal: Complex64::new(principal, 0.0),
    })
}

/// Peak `|boundary|` over `R' ∈ [R, R + span]` sampled at `samples` points.
pub fn boundary_envelope(n: u32, x: f64, x1: f64, x2: f64, r: f64, span: f64, samples: usize) -> Result<f64> {
    let samples = samples.max(2);
    let mut peak: f64 = 0.0;
    for k in 0..samples {
        let rr = r + span * k as f64 / (samples - 1) as f64;
        peak = peak.max(monomial_example(n, x, x1, x2, rr)?.boundary.norm());
    }
    Ok(peak)
}
