//! Adaptive Gauss–Kronrod quadrature, oscillatory half-line integration and
//! symmetric principal values.
//!
//! All integrands are complex valued; real integrands are wrapped by the
//! `*_real` helpers. A non-finite integrand value is a caller error and is
//! reported as [`Error::InvalidIntegrand`], never skipped.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::acceleration::iterated_average;
use crate::error::{Error, Result};

// 15-point Kronrod abscissae on [-1, 1]; odd indices are the 7-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Requested accuracy for a quadrature call.
///
/// A call converges when its error estimate is at most
/// `max(absolute, relative * |value|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub absolute: f64,
    pub relative: f64,
    pub max_subdivisions: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            absolute: 1e-10,
            relative: 1e-10,
            max_subdivisions: 2000,
        }
    }
}

impl Tolerance {
    pub fn new(absolute: f64, relative: f64, max_subdivisions: usize) -> Result<Self> {
        let tol = Self {
            absolute,
            relative,
            max_subdivisions,
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.absolute > 0.0 && self.absolute.is_finite()) {
            return Err(Error::InvalidTolerance(format!(
                "absolute must be positive, got {}",
                self.absolute
            )));
        }
        if !(self.relative > 0.0 && self.relative.is_finite()) {
            return Err(Error::InvalidTolerance(format!(
                "relative must be positive, got {}",
                self.relative
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidTolerance(
                "max_subdivisions must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Error target for an integral of the given magnitude.
    pub fn target(&self, magnitude: f64) -> f64 {
        self.absolute.max(self.relative * magnitude)
    }

    /// Same tolerance with the absolute part divided by `parts`.
    pub fn split(&self, parts: usize) -> Self {
        Self {
            absolute: self.absolute / parts.max(1) as f64,
            ..*self
        }
    }

    pub fn with_absolute(&self, absolute: f64) -> Self {
        Self { absolute, ..*self }
    }
}

/// Result of one integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureOutcome {
    pub value: Complex64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub subdivisions: usize,
    pub converged: bool,
    /// Set by [`principal_value`] when the numerator looks discontinuous at
    /// the pole.
    #[serde(default)]
    pub discontinuity_warning: bool,
}

impl QuadratureOutcome {
    /// Neutral element for [`QuadratureOutcome::combine`].
    pub fn zero() -> Self {
        Self {
            value: Complex64::new(0.0, 0.0),
            error_estimate: 0.0,
            evaluations: 0,
            subdivisions: 0,
            converged: true,
            discontinuity_warning: false,
        }
    }

    /// An exactly known value (no quadrature performed).
    pub fn exact(value: Complex64) -> Self {
        Self {
            value,
            ..Self::zero()
        }
    }

    /// Sum of two independent integrals.
    pub fn combine(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
            subdivisions: self.subdivisions + other.subdivisions,
            converged: self.converged && other.converged,
            discontinuity_warning: self.discontinuity_warning || other.discontinuity_warning,
        }
    }

    /// Multiply the value by a constant, scaling the error by its modulus.
    pub fn scale(self, factor: Complex64) -> Self {
        Self {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.norm(),
            ..self
        }
    }

    /// Add an extra error contribution (e.g. a truncation bound).
    pub fn with_extra_error(self, extra: f64) -> Self {
        Self {
            error_estimate: self.error_estimate + extra,
            ..self
        }
    }
}

impl std::iter::Sum for QuadratureOutcome {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), Self::combine)
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn checked<F: Fn(f64) -> Complex64>(f: &F, x: f64) -> Result<Complex64> {
    let v = f(x);
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidIntegrand { x })
    }
}

/// One 7/15-point Gauss–Kronrod pass over `[a, b]`, returning the Kronrod
/// value and a QUADPACK-style rescaled error estimate.
fn gauss_kronrod<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Result<(Complex64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = checked(f, center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut fvals = [(Complex64::default(), Complex64::default()); 7];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let f1 = checked(f, center - dx)?;
        let f2 = checked(f, center + dx)?;
        kronrod += (f1 + f2) * w;
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
        fvals[j] = (f1, f2);
    }
    let mean = kronrod * 0.5;
    let mut resasc = WGK[7] * (fc - mean).norm();
    let mut resabs = WGK[7] * fc.norm();
    for (j, &(f1, f2)) in fvals.iter().enumerate() {
        resasc += WGK[j] * ((f1 - mean).norm() + (f2 - mean).norm());
        resabs += WGK[j] * (f1.norm() + f2.norm());
    }
    let value = kronrod * half;
    resasc *= half.abs();
    resabs *= half.abs();
    let mut err = ((kronrod - gauss) * half).norm();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Ok((value, err))
}

/// Adaptive quadrature of `f` over `[a, b]`.
///
/// ```
/// use finv_core::quadrature::{integrate_finite, Tolerance};
/// use num_complex::Complex64;
/// let out = integrate_finite(|x| Complex64::new(x * x, 0.0), 0.0, 3.0, &Tolerance::default()).unwrap();
/// assert!((out.value.re - 9.0).abs() < 1e-12);
/// ```
pub fn integrate_finite<F>(f: F, a: f64, b: f64, tol: &Tolerance) -> Result<QuadratureOutcome>
where
    F: Fn(f64) -> Complex64,
{
    integrate_finite_with_breaks(f, a, b, &[], tol)
}

/// Adaptive quadrature with an initial subdivision at `breaks` (kinks, jumps).
/// Break points outside `(a, b)` are ignored.
pub fn integrate_finite_with_breaks<F>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    tol: &Tolerance,
) -> Result<QuadratureOutcome>
where
    F: Fn(f64) -> Complex64,
{
    tol.validate()?;
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(Error::InvalidInterval { a, b });
    }
    let mut edges = vec![a];
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    edges.extend(inner);
    edges.push(b);

    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Segment> = Vec::new();
    let mut evaluations = 0;
    let min_width = (b - a) * 1e-18;
    for w in edges.windows(2) {
        let (value, error) = gauss_kronrod(&f, w[0], w[1])?;
        evaluations += 15;
        heap.push(Segment {
            a: w[0],
            b: w[1],
            value,
            error,
        });
    }

    let total = |heap: &BinaryHeap<Segment>, frozen: &[Segment]| {
        let mut v = Complex64::default();
        let mut e = 0.0;
        for s in heap.iter().chain(frozen.iter()) {
            v += s.value;
            e += s.error;
        }
        (v, e)
    };

    let (mut value, mut error) = total(&heap, &frozen);
    let mut converged = error <= tol.target(value.norm());
    while !converged {
        if heap.len() + frozen.len() >= tol.max_subdivisions {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        let width = worst.b - worst.a;
        if width <= 64.0 * f64::EPSILON * worst.a.abs().max(worst.b.abs())
            || width <= min_width
            || mid <= worst.a
            || mid >= worst.b
        {
            frozen.push(worst);
            continue;
        }
        let (v1, e1) = gauss_kronrod(&f, worst.a, mid)?;
        let (v2, e2) = gauss_kronrod(&f, mid, worst.b)?;
        evaluations += 30;
        value += v1 + v2 - worst.value;
        error += e1 + e2 - worst.error;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
        converged = error.max(0.0) <= tol.target(value.norm());
    }
    // Running sums drift; recompute before reporting.
    let (value, error) = total(&heap, &frozen);
    Ok(QuadratureOutcome {
        value,
        error_estimate: error,
        evaluations,
        subdivisions: heap.len() + frozen.len(),
        converged: error <= tol.target(value.norm()),
        discontinuity_warning: false,
    })
}

/// Real-valued convenience wrapper for [`integrate_finite_with_breaks`].
pub fn integrate_real<F>(f: F, a: f64, b: f64, breaks: &[f64], tol: &Tolerance) -> Result<QuadratureOutcome>
where
    F: Fn(f64) -> f64,
{
    integrate_finite_with_breaks(|x| Complex64::new(f(x), 0.0), a, b, breaks, tol)
}

/// Integrate over consecutive panels `edges[i]..edges[i+1]`, each with its own
/// adaptive budget, in parallel. The absolute tolerance is shared evenly
/// across panels; convergence is decided on the summed error. Zero-width
/// panels are skipped.
pub fn integrate_panels<F>(f: F, edges: &[f64], breaks: &[f64], tol: &Tolerance) -> Result<QuadratureOutcome>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    if edges.len() < 2 {
        return Ok(QuadratureOutcome::zero());
    }
    let panel_tol = tol.split(edges.len() - 1);
    let run = |w: &[f64]| -> Result<QuadratureOutcome> {
        if w[1] <= w[0] {
            return Ok(QuadratureOutcome::zero());
        }
        integrate_finite_with_breaks(&f, w[0], w[1], breaks, &panel_tol)
    };
    let outcomes: Vec<QuadratureOutcome> = if edges.len() > 32 {
        edges.par_windows(2).map(run).collect::<Result<_>>()?
    } else {
        edges.windows(2).map(run).collect::<Result<_>>()?
    };
    // Per-panel absolute budgets may sit below the rounding floor, so the
    // summed error against the whole-range target also counts as success.
    let mut total: QuadratureOutcome = outcomes.into_iter().sum();
    total.converged |= total.error_estimate <= tol.target(total.value.norm());
    Ok(total)
}

/// Panel edges covering `[a, b]` with panels no wider than `width`.
pub fn panel_edges(a: f64, b: f64, width: f64) -> Vec<f64> {
    if b <= a {
        return vec![a, b];
    }
    let n = ((b - a) / width).ceil().max(1.0) as usize;
    let h = (b - a) / n as f64;
    let mut edges: Vec<f64> = (0..n).map(|k| a + k as f64 * h).collect();
    edges.push(b);
    edges
}

/// A half-line of integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HalfLine {
    /// `[a, ∞)`
    From(f64),
    /// `(−∞, b]`
    UpTo(f64),
}

const CELL_BATCH: usize = 16;
const MIN_CELLS: usize = 48;
const AVERAGING_WINDOW: usize = 25;
const DIVERGENCE_WINDOW: usize = 32;

/// `∫ amplitude(t) e^{iωt} dt` over a half-line.
///
/// The half-line is cut into half-period cells `[t_k, t_k + π/|ω|]`; the cell
/// sums alternate in sign for a slowly varying amplitude, so the partial sums
/// are accelerated by iterated averaging. Convergence requires the change in
/// the accelerated value between batches to be at most `tol.absolute`.
pub fn integrate_oscillatory<F>(
    amplitude: F,
    omega: f64,
    half_line: HalfLine,
    tol: &Tolerance,
) -> Result<QuadratureOutcome>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    tol.validate()?;
    if omega == 0.0 || !omega.is_finite() {
        return Err(Error::Domain(format!("omega must be finite and non-zero, got {omega}")));
    }
    match half_line {
        HalfLine::From(a) => oscillatory_upper(&amplitude, omega, a, tol),
        HalfLine::UpTo(b) => {
            let reflected = |u: f64| amplitude(-u);
            oscillatory_upper(&reflected, -omega, -b, tol)
        }
    }
}

fn oscillatory_upper<F>(amplitude: &F, omega: f64, a: f64, tol: &Tolerance) -> Result<QuadratureOutcome>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    if !a.is_finite() {
        return Err(Error::InvalidInterval { a, b: f64::INFINITY });
    }
    let h = PI / omega.abs();
    let max_cells = tol.max_subdivisions.max(MIN_CELLS + CELL_BATCH);
    let cell_tol = tol.with_absolute(tol.absolute / 64.0);
    let integrand = |t: f64| amplitude(t) * Complex64::cis(omega * t);

    let mut partials: Vec<Complex64> = Vec::new();
    let mut magnitudes: Vec<f64> = Vec::new();
    let mut running = Complex64::default();
    let mut cells_error = 0.0;
    let mut evaluations = 0;
    let mut subdivisions = 0;
    let mut cells_converged = true;
    let mut previous: Option<Complex64> = None;
    let mut tail = f64::INFINITY;
    let mut estimate = Complex64::default();

    while partials.len() < max_cells {
        let start = partials.len();
        let batch: Vec<QuadratureOutcome> = (start..start + CELL_BATCH)
            .into_par_iter()
            .map(|k| {
                let lo = a + k as f64 * h;
                integrate_finite(integrand, lo, lo + h, &cell_tol)
            })
            .collect::<Result<_>>()?;
        for cell in batch {
            running += cell.value;
            cells_error += cell.error_estimate;
            evaluations += cell.evaluations;
            subdivisions += cell.subdivisions;
            cells_converged &= cell.converged;
            partials.push(running);
            magnitudes.push(cell.value.norm());
        }
        let n = partials.len();
        if n >= 2 * DIVERGENCE_WINDOW {
            let recent = magnitudes[n - 1].max(magnitudes[n - 2]);
            let older = magnitudes[n - 1 - DIVERGENCE_WINDOW].max(magnitudes[n - 2 - DIVERGENCE_WINDOW]);
            if recent > tol.absolute && recent >= 0.999 * older {
                return Err(Error::DivergenceSuspected { cells: n });
            }
        }
        if n < MIN_CELLS {
            continue;
        }
        estimate = iterated_average(&partials[n - AVERAGING_WINDOW..]);
        if let Some(prev) = previous {
            tail = (estimate - prev).norm();
            if tail <= tol.absolute {
                break;
            }
        }
        previous = Some(estimate);
    }

    let error_estimate = cells_error + if tail.is_finite() { tail } else { 0.0 };
    Ok(QuadratureOutcome {
        value: estimate,
        error_estimate,
        evaluations,
        subdivisions,
        converged: cells_converged && tail <= tol.absolute && error_estimate <= tol.target(estimate.norm()),
        discontinuity_warning: false,
    })
}

/// Cauchy principal value of `∫_a^b φ(x)/(x − c) dx` for `a < c < b`.
///
/// The symmetric neighbourhood of the pole is folded onto one side,
/// `∫_0^h (φ(c+u) − φ(c−u))/u du`, which has no singularity for continuous
/// `φ`; the remaining one-sided piece is regular.
pub fn principal_value<F>(phi: F, c: f64, a: f64, b: f64, tol: &Tolerance) -> Result<QuadratureOutcome>
where
    F: Fn(f64) -> Complex64,
{
    tol.validate()?;
    if !(a < c && c < b) || !c.is_finite() {
        return Err(Error::Domain(format!(
            "pole {c} must lie strictly inside ({a}, {b})"
        )));
    }
    let h = (c - a).min(b - c);
    let delta = (1e-9 * c.abs().max(1.0)).min(0.5 * h);
    let right = checked(&phi, c + delta)?;
    let left = checked(&phi, c - delta)?;
    let jump = (right - left).norm();
    let warning = jump > 1e-4 * right.norm().max(left.norm()).max(1.0);

    let folded = |u: f64| (phi(c + u) - phi(c - u)) / u;
    let mut out = integrate_finite(folded, 0.0, h, tol)?;
    // Compare rounded endpoints: a remainder that collapses to a point is dropped.
    if c + h < b {
        let rest = integrate_finite(|x| phi(x) / (x - c), c + h, b, tol)?;
        out = out.combine(rest);
    } else if a < c - h {
        let rest = integrate_finite(|x| phi(x) / (x - c), a, c - h, tol)?;
        out = out.combine(rest);
    }
    out.discontinuity_warning = warning;
    Ok(out)
}

/// `sin(x)/x` with the removable singularity filled in.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// `∫_0^R sin(x)/x dx`, with `R = f64::INFINITY` allowed (limit `π/2`).
pub fn sinc_integral(r: f64) -> Result<f64> {
    sinc_integral_outcome(r).map(|o| o.value.re)
}

/// [`sinc_integral`] with the full quadrature diagnostics.
pub fn sinc_integral_outcome(r: f64) -> Result<QuadratureOutcome> {
    if r.is_nan() || r < 0.0 {
        return Err(Error::Domain(format!("sinc_integral requires R >= 0, got {r}")));
    }
    if r == 0.0 {
        return Ok(QuadratureOutcome::zero());
    }
    let tol = Tolerance::default();
    let real_sinc = |x: f64| Complex64::new(sinc(x), 0.0);
    if r.is_infinite() {
        let head = integrate_finite(real_sinc, 0.0, PI, &tol)?;
        let tail = integrate_oscillatory(|t| Complex64::new(1.0 / t, 0.0), 1.0, HalfLine::From(PI), &tol)?;
        let tail_im = QuadratureOutcome {
            value: Complex64::new(tail.value.im, 0.0),
            ..tail
        };
        return Ok(head.combine(tail_im));
    }
    let edges = panel_edges(0.0, r, PI);
    integrate_panels(real_sinc, &edges, &[], &tol)
}
