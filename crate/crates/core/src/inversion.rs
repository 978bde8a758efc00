//! Principal-value inversion `f(x) = (1/2π) lim_R ∫_{−R}^{R} e^{ixs} f̂(s) ds`,
//! its Dirichlet-kernel form, and the first-order ODE reconstruction.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::acceleration::{guarded_extrapolation, iterated_average, pairwise_average};
use crate::error::{Error, Result};
use crate::perron::ComplexParameter;
use crate::quadrature::{integrate_finite_with_breaks, integrate_panels, panel_edges, sinc, QuadratureOutcome, Tolerance};
use crate::testfns::{Support, TestFunction};
use crate::transform::fourier_transform;

/// How the `R → ∞` limit is estimated from the ladder partials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Acceleration {
    /// Last partial as is.
    None,
    /// Mean of the last two partials.
    PairwiseAveraging,
    /// Repeated neighbour averaging over all partials.
    IteratedAveraging,
    /// Aitken step on the last three partials, applied only when the
    /// difference ratios are consistent; otherwise the last partial.
    #[default]
    Extrapolation,
}

impl Acceleration {
    pub fn apply(&self, seq: &[Complex64]) -> Complex64 {
        match self {
            Acceleration::None => seq.last().copied().unwrap_or_default(),
            Acceleration::PairwiseAveraging => pairwise_average(seq),
            Acceleration::IteratedAveraging => iterated_average(seq),
            Acceleration::Extrapolation => guarded_extrapolation(seq),
        }
    }
}

impl fmt::Display for Acceleration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Acceleration::None => "none",
            Acceleration::PairwiseAveraging => "pairwise-averaging",
            Acceleration::IteratedAveraging => "iterated-averaging",
            Acceleration::Extrapolation => "extrapolation",
        })
    }
}

impl FromStr for Acceleration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" => Ok(Acceleration::None),
            "pairwise" | "pairwise-averaging" => Ok(Acceleration::PairwiseAveraging),
            "iterated" | "iterated-averaging" => Ok(Acceleration::IteratedAveraging),
            "extrapolation" | "aitken" => Ok(Acceleration::Extrapolation),
            other => Err(Error::Parse(format!("unknown acceleration policy `{other}`"))),
        }
    }
}

/// Increasing truncation radii plus an acceleration policy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationLadder {
    radii: Vec<f64>,
    pub acceleration: Acceleration,
}

/// Radii used when none are given.
pub const DEFAULT_RADII: [f64; 6] = [25.0, 50.0, 100.0, 200.0, 400.0, 800.0];

impl TruncationLadder {
    /// Radii must be finite, positive and strictly increasing; any policy
    /// other than `None` needs at least four of them.
    pub fn new(radii: Vec<f64>, acceleration: Acceleration) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::InvalidLadder("no radii".into()));
        }
        if let Some(r) = radii.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
            return Err(Error::InvalidLadder(format!("radius {r} is not a positive finite number")));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidLadder("radii must be strictly increasing".into()));
        }
        if acceleration != Acceleration::None && radii.len() < 4 {
            return Err(Error::InvalidLadder(format!(
                "acceleration `{acceleration}` needs at least 4 radii, got {}",
                radii.len()
            )));
        }
        Ok(Self { radii, acceleration })
    }

    /// A single radius, no acceleration.
    pub fn single(r: f64) -> Result<Self> {
        Self::new(vec![r], Acceleration::None)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn max_radius(&self) -> f64 {
        *self.radii.last().expect("ladder is never empty")
    }

    pub fn with_acceleration(mut self, acceleration: Acceleration) -> Result<Self> {
        self.acceleration = acceleration;
        Self::new(self.radii, acceleration)
    }

    /// Parse a comma-separated radius list.
    pub fn parse(list: &str, acceleration: Acceleration) -> Result<Self> {
        let radii = list
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| Error::Parse(format!("radius `{t}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(radii, acceleration)
    }
}

impl Default for TruncationLadder {
    fn default() -> Self {
        Self::new(DEFAULT_RADII.to_vec(), Acceleration::default()).expect("default ladder is valid")
    }
}

/// One truncation radius of an inversion run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartialRow {
    pub r: f64,
    pub value: Complex64,
    pub abs_error: Option<f64>,
    /// Analytic bound on `|value − f(x)|`, when the transform tail is known.
    pub bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InversionReport {
    pub function: String,
    pub x: f64,
    pub partials: Vec<PartialRow>,
    pub acceleration: Acceleration,
    pub accelerated: Complex64,
    pub reference: Option<f64>,
    pub abs_error: Option<f64>,
    /// Accumulated quadrature error estimate of the largest partial.
    pub error_estimate: f64,
    pub converged: bool,
}

impl InversionReport {
    pub(crate) fn assemble(
        function: &str,
        x: f64,
        ladder: &TruncationLadder,
        values: Vec<(f64, Complex64, Option<f64>)>,
        reference: Option<f64>,
        error_estimate: f64,
        converged: bool,
    ) -> Self {
        let seq: Vec<Complex64> = values.iter().map(|v| v.1).collect();
        let accelerated = ladder.acceleration.apply(&seq);
        let partials = values
            .into_iter()
            .map(|(r, value, bound)| PartialRow {
                r,
                value,
                abs_error: reference.map(|f| (value - f).norm()),
                bound,
            })
            .collect();
        Self {
            function: function.to_string(),
            x,
            partials,
            acceleration: ladder.acceleration,
            accelerated,
            reference,
            abs_error: reference.map(|f| (accelerated - f).norm()),
            error_estimate,
            converged,
        }
    }

    /// Replace the reference value and recompute every error column.
    pub fn with_reference(mut self, reference: Option<f64>) -> Self {
        self.reference = reference;
        self.abs_error = reference.map(|f| (self.accelerated - f).norm());
        for row in &mut self.partials {
            row.abs_error = reference.map(|f| (row.value - f).norm());
        }
        self
    }

    /// Error of the last raw partial against the reference.
    pub fn last_partial_error(&self) -> Option<f64> {
        self.partials.last().and_then(|p| p.abs_error)
    }
}

/// Thread-safe memo of `f̂(s)` keyed by the bit pattern of `s`.
#[derive(Debug, Default)]
pub struct TransformCache {
    map: Mutex<HashMap<u64, Complex64>>,
}

impl TransformCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.lock().map(|m| m.len()).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get_or_insert(&self, s: f64, compute: impl FnOnce() -> Result<Complex64>) -> Result<Complex64> {
        let key = s.to_bits();
        if let Some(v) = self.map.lock().ok().and_then(|m| m.get(&key).copied()) {
            return Ok(v);
        }
        let v = compute()?;
        if let Ok(mut m) = self.map.lock() {
            m.insert(key, v);
        }
        Ok(v)
    }
}

/// Options for [`invert_at_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct InvertOptions {
    /// Run even when the inversion hypotheses are not flagged (demo use).
    pub override_hypotheses: bool,
    /// Ignore a stored closed-form transform and integrate numerically.
    pub numeric_transform: bool,
}

/// [`invert_at_with`] with default options.
pub fn invert_at(f: &TestFunction, x: f64, ladder: &TruncationLadder, tol: &Tolerance) -> Result<InversionReport> {
    invert_at_with(f, x, ladder, tol, InvertOptions::default(), &TransformCache::new())
}

/// Truncated inversion integrals at every ladder radius.
///
/// The outer integral is accumulated shell by shell over `[R_{k−1}, R_k]`,
/// folding `±s` together, on panels no wider than `π/(|x| + extent)` where
/// `extent` bounds the support. The reference is `f(x)` only when the
/// hypotheses hold.
pub fn invert_at_with(
    f: &TestFunction,
    x: f64,
    ladder: &TruncationLadder,
    tol: &Tolerance,
    opts: InvertOptions,
    cache: &TransformCache,
) -> Result<InversionReport> {
    tol.validate()?;
    if !x.is_finite() {
        return Err(Error::Domain(format!("x must be finite, got {x}")));
    }
    let hypotheses = f.satisfies_inversion_hypotheses();
    if !hypotheses && !opts.override_hypotheses {
        return Err(Error::Precondition(format!(
            "`{}` does not satisfy the inversion hypotheses; set the override to run it as a demo",
            f.id
        )));
    }
    if !f.f_in_l1 {
        return Err(Error::Precondition(format!("`{}` is not integrable", f.id)));
    }
    let r_max = ladder.max_radius();
    let inner_tol = tol.with_absolute(tol.absolute * PI / r_max.max(1.0));
    let closed = !opts.numeric_transform && f.has_transform();
    let transform_converged = AtomicBool::new(true);
    let worst_inner = Mutex::new(0.0f64);
    let fhat = |s: f64| -> Result<Complex64> {
        if closed {
            return Ok(f.transform(s).expect("checked has_transform"));
        }
        cache.get_or_insert(s, || {
            let o = fourier_transform(f, s, &inner_tol)?;
            if !o.converged {
                transform_converged.store(false, Ordering::Relaxed);
            }
            if let Ok(mut w) = worst_inner.lock() {
                *w = w.max(o.error_estimate);
            }
            Ok(o.value)
        })
    };

    let extent = f.support.extent().unwrap_or(1.0);
    let width = PI / (x.abs() + extent).max(1.0);
    let mut running = QuadratureOutcome::zero();
    let mut rows = Vec::with_capacity(ladder.radii().len());
    let mut lower = 0.0;
    for &r in ladder.radii() {
        let shell = shell_integral(&fhat, x, lower, r, width, tol)?;
        running = running.combine(shell);
        lower = r;
        let bound = if hypotheses { f.transform_tail_bound(r).map(|t| t / (2.0 * PI)) } else { None };
        rows.push((r, running.value / (2.0 * PI), bound));
    }
    let reference = hypotheses.then(|| f.eval(x));
    let converged = running.converged && transform_converged.load(Ordering::Relaxed);
    // An error ε in every f̂ value moves the largest partial by at most
    // ε·2R/(2π).
    let inner = worst_inner.into_inner().unwrap_or(0.0) * r_max / PI;
    Ok(InversionReport::assemble(
        &f.id,
        x,
        ladder,
        rows,
        reference,
        running.error_estimate / (2.0 * PI) + inner,
        converged,
    ))
}

/// `∫_{a ≤ |s| ≤ b} e^{ixs} f̂(s) ds` with the two signs folded.
fn shell_integral(
    fhat: &(dyn Fn(f64) -> Result<Complex64> + Sync),
    x: f64,
    a: f64,
    b: f64,
    width: f64,
    tol: &Tolerance,
) -> Result<QuadratureOutcome> {
    // Errors from the transform are parked here because the quadrature
    // integrand must be infallible; NaN forces an early exit.
    let failure: Mutex<Option<Error>> = Mutex::new(None);
    let integrand = |s: f64| -> Complex64 {
        let pair = fhat(s).and_then(|p| fhat(-s).map(|m| (p, m)));
        match pair {
            Ok((plus, minus)) => Complex64::cis(x * s) * plus + Complex64::cis(-x * s) * minus,
            Err(e) => {
                if let Ok(mut slot) = failure.lock() {
                    slot.get_or_insert(e);
                }
                Complex64::new(f64::NAN, 0.0)
            }
        }
    };
    let edges = panel_edges(a, b, width);
    let out = integrate_panels(integrand, &edges, &[], tol);
    if let Some(e) = failure.into_inner().ok().flatten() {
        return Err(e);
    }
    out
}

/// Dirichlet-kernel form `(1/π) ∫ f(t + x) sin(Rt)/t dt`.
///
/// Integrated on panels of width `π/R` over the (truncated) support shifted
/// by `x`; `sin(Rt)/t` is evaluated as `R·sinc(Rt)` so `t = 0` is regular.
pub fn invert_dirichlet(f: &TestFunction, x: f64, r: f64, tol: &Tolerance) -> Result<QuadratureOutcome> {
    tol.validate()?;
    if !f.f_in_l1 {
        return Err(Error::Precondition(format!("`{}` is not integrable", f.id)));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("R must be positive and finite, got {r}")));
    }
    let (lo, hi, tail_mass) = f.integration_domain(tol.absolute / 10.0)?;
    let (a, b) = (lo - x, hi - x);
    let mut breaks: Vec<f64> = f.kinks.iter().map(|k| k - x).collect();
    breaks.push(0.0);
    let edges = panel_edges(a, b, PI / r);
    let integrand = |t: f64| Complex64::new(f.eval(t + x) * r * sinc(r * t), 0.0);
    let out = integrate_panels(integrand, &edges, &breaks, tol)?.scale(Complex64::new(1.0 / PI, 0.0));
    // Beyond the truncation radius |sin(Rt)/t| ≤ 1/(X − |x|) for X > |x| + 1.
    let tail = if matches!(f.support, Support::All) {
        tail_mass / (lo.abs().min(hi.abs()) - x.abs()).max(1.0) / PI
    } else {
        0.0
    };
    Ok(out.with_extra_error(tail))
}

/// `∫_{−∞}^{x} e^{iw(x−t)} g(t) dt` with `g = f′ − iwf`; equals `f(x)`
/// for every `w` with positive imaginary part.
pub fn ode_reconstruct(f: &TestFunction, w: ComplexParameter, x: f64, tol: &Tolerance) -> Result<QuadratureOutcome> {
    tol.validate()?;
    if !f.has_derivative() {
        return Err(Error::Precondition(format!("`{}` has no derivative", f.id)));
    }
    if !f.satisfies_inversion_hypotheses() {
        return Err(Error::Precondition(format!(
            "`{}` is not absolutely continuous with f, f' integrable",
            f.id
        )));
    }
    if !(w.eta > 0.0) {
        return Err(Error::Domain(format!("w must have positive imaginary part, got {w}")));
    }
    // e^{−η(x−t)} weights the history; start where the discarded part is
    // below a tenth of the tolerance.
    let mass = f.deriv_l1_norm.unwrap_or(f.sup_norm) + w.modulus() * f.l1_norm;
    let reach = ((mass.max(1e-300) * 10.0 / tol.absolute).ln().max(1.0)) / w.eta;
    let (mut lo, mut hi) = (x - reach, x);
    if let Support::Interval { lo: s_lo, hi: s_hi } = f.support {
        lo = lo.max(s_lo);
        hi = hi.min(s_hi);
    }
    if lo >= hi {
        return Ok(QuadratureOutcome::exact(Complex64::default()));
    }
    ode_integral(f, w, lo, hi, x, tol)
}

/// `∫_{lo}^{hi} e^{iw(x−t)} (f′(t) − iw f(t)) dt`.
pub(crate) fn ode_integral(
    f: &TestFunction,
    w: ComplexParameter,
    lo: f64,
    hi: f64,
    x: f64,
    tol: &Tolerance,
) -> Result<QuadratureOutcome> {
    let wc = w.as_complex();
    let i = Complex64::i();
    let integrand = |t: f64| {
        let g = Complex64::new(f.deriv(t).unwrap_or(0.0), 0.0) - i * wc * f.eval(t);
        (i * wc * (x - t)).exp() * g
    };
    let mut breaks = f.breaks();
    breaks.retain(|b| (lo..=hi).contains(b));
    integrate_finite_with_breaks(integrand, lo, hi, &breaks, tol)
}
