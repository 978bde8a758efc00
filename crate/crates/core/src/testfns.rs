//! Catalog of test functions with derivatives, closed-form transforms where
//! known, and the hypothesis flags of the inversion theorem.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_real, sinc, Tolerance};

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type ComplexFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// Where a function can be non-zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Support {
    All,
    Interval { lo: f64, hi: f64 },
}

impl Support {
    pub fn is_bounded(&self) -> bool {
        matches!(self, Support::Interval { .. })
    }

    pub fn contains(&self, x: f64) -> bool {
        match *self {
            Support::All => true,
            Support::Interval { lo, hi } => lo <= x && x <= hi,
        }
    }

    /// `max(|lo|, |hi|)` for bounded support.
    pub fn extent(&self) -> Option<f64> {
        match *self {
            Support::All => None,
            Support::Interval { lo, hi } => Some(lo.abs().max(hi.abs())),
        }
    }
}

/// Envelope of `|f|` used to budget truncation of infinite-support integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decay {
    /// `|f(x)| ≤ scale · e^{−rate|x|}`
    Exponential { scale: f64, rate: f64 },
    /// `|f(x)| ≤ scale · e^{−rate x²}`
    Gaussian { scale: f64, rate: f64 },
    Unknown,
}

impl Decay {
    /// Upper bound on `∫_{|x|>X} |f|`.
    pub fn tail_mass(&self, x: f64) -> Option<f64> {
        match *self {
            Decay::Exponential { scale, rate } => Some(2.0 * scale * (-rate * x).exp() / rate),
            Decay::Gaussian { scale, rate } => {
                if x <= 0.0 {
                    Some(f64::INFINITY)
                } else {
                    Some(scale * (-rate * x * x).exp() / (rate * x))
                }
            }
            Decay::Unknown => None,
        }
    }

    /// Upper bound on `|f(x)|` for `|x| ≥ X`.
    pub fn envelope(&self, x: f64) -> Option<f64> {
        match *self {
            Decay::Exponential { scale, rate } => Some(scale * (-rate * x.abs()).exp()),
            Decay::Gaussian { scale, rate } => Some(scale * (-rate * x * x).exp()),
            Decay::Unknown => None,
        }
    }

    /// Smallest `X ≥ 1` (to bisection accuracy) with `tail_mass(X) < threshold`.
    pub fn truncation_radius(&self, threshold: f64) -> Option<f64> {
        let tail = |x: f64| self.tail_mass(x).unwrap_or(f64::INFINITY);
        self.tail_mass(1.0)?;
        let mut hi = 1.0;
        while tail(hi) >= threshold {
            hi *= 2.0;
            if hi > 1e8 {
                return None;
            }
        }
        let mut lo = hi / 2.0;
        if tail(lo) < threshold {
            return Some(lo.max(1.0));
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if tail(mid) < threshold {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    }
}

/// A real function of one variable with the metadata the inversion
/// machinery needs.
#[derive(Clone)]
pub struct TestFunction {
    pub id: String,
    pub description: String,
    eval: RealFn,
    deriv: Option<RealFn>,
    second_deriv: Option<RealFn>,
    transform: Option<ComplexFn>,
    transform_tail: Option<RealFn>,
    pub support: Support,
    pub decay: Decay,
    /// Points where `f` or `f′` is not smooth.
    pub kinks: Vec<f64>,
    pub is_abs_cont: bool,
    pub f_in_l1: bool,
    pub fprime_in_l1: bool,
    pub l1_norm: f64,
    pub sup_norm: f64,
    pub deriv_l1_norm: Option<f64>,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("id", &self.id)
            .field("support", &self.support)
            .field("kinks", &self.kinks)
            .field("is_abs_cont", &self.is_abs_cont)
            .field("f_in_l1", &self.f_in_l1)
            .field("fprime_in_l1", &self.fprime_in_l1)
            .finish_non_exhaustive()
    }
}

/// Serializable summary of a catalog entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionInfo {
    pub id: String,
    pub dimension: u8,
    pub description: String,
    pub support: Option<Support>,
    pub kinks: Vec<f64>,
    pub is_abs_cont: bool,
    pub f_in_l1: bool,
    pub fprime_in_l1: bool,
    pub l1_norm: Option<f64>,
    pub sup_norm: Option<f64>,
    pub deriv_l1_norm: Option<f64>,
    pub has_derivative: bool,
    pub has_transform: bool,
}

impl TestFunction {
    /// A function with conservative metadata: unbounded support, unknown
    /// decay, no hypothesis flags. Refine with the `with_*` setters.
    pub fn new(id: impl Into<String>, eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            id: id.into(),
            description: String::new(),
            eval: Arc::new(eval),
            deriv: None,
            second_deriv: None,
            transform: None,
            transform_tail: None,
            support: Support::All,
            decay: Decay::Unknown,
            kinks: Vec::new(),
            is_abs_cont: false,
            f_in_l1: false,
            fprime_in_l1: false,
            l1_norm: 0.0,
            sup_norm: 0.0,
            deriv_l1_norm: None,
        }
    }

    pub fn with_description(mut self, d: impl Into<String>) -> Self {
        self.description = d.into();
        self
    }

    pub fn with_derivative(mut self, d: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.deriv = Some(Arc::new(d));
        self
    }

    pub fn with_second_derivative(mut self, d: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.second_deriv = Some(Arc::new(d));
        self
    }

    pub fn with_transform(mut self, t: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        self.transform = Some(Arc::new(t));
        self
    }

    /// Bound on `∫_{|s|>R} |f̂(s)| ds` as a function of `R`.
    pub fn with_transform_tail(mut self, t: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.transform_tail = Some(Arc::new(t));
        self
    }

    pub fn with_support(mut self, support: Support) -> Self {
        self.support = support;
        self
    }

    pub fn with_decay(mut self, decay: Decay) -> Self {
        self.decay = decay;
        self
    }

    pub fn with_kinks(mut self, kinks: impl Into<Vec<f64>>) -> Self {
        self.kinks = kinks.into();
        self.kinks.sort_by(f64::total_cmp);
        self.kinks.dedup();
        self
    }

    pub fn with_flags(mut self, is_abs_cont: bool, f_in_l1: bool, fprime_in_l1: bool) -> Self {
        self.is_abs_cont = is_abs_cont;
        self.f_in_l1 = f_in_l1;
        self.fprime_in_l1 = fprime_in_l1;
        self
    }

    pub fn with_norms(mut self, l1: f64, sup: f64, deriv_l1: Option<f64>) -> Self {
        self.l1_norm = l1;
        self.sup_norm = sup;
        self.deriv_l1_norm = deriv_l1;
        self
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn deriv(&self, x: f64) -> Option<f64> {
        self.deriv.as_ref().map(|d| d(x))
    }

    pub fn second_deriv(&self, x: f64) -> Option<f64> {
        self.second_deriv.as_ref().map(|d| d(x))
    }

    pub fn has_derivative(&self) -> bool {
        self.deriv.is_some()
    }

    pub fn has_transform(&self) -> bool {
        self.transform.is_some()
    }

    /// Closed-form `f̂(s)` when one is known.
    pub fn transform(&self, s: f64) -> Option<Complex64> {
        self.transform.as_ref().map(|t| t(s))
    }

    pub fn transform_tail_bound(&self, r: f64) -> Option<f64> {
        self.transform_tail.as_ref().map(|t| t(r))
    }

    pub(crate) fn eval_fn(&self) -> RealFn {
        self.eval.clone()
    }

    pub(crate) fn deriv_fn(&self) -> Option<RealFn> {
        self.deriv.clone()
    }

    /// Absolutely continuous with `f, f′ ∈ L¹`.
    pub fn satisfies_inversion_hypotheses(&self) -> bool {
        self.is_abs_cont && self.f_in_l1 && self.fprime_in_l1
    }

    /// Interval carrying all but `threshold` of `∫|f|`, plus the discarded
    /// mass bound.
    pub fn integration_domain(&self, threshold: f64) -> Result<(f64, f64, f64)> {
        match self.support {
            Support::Interval { lo, hi } => Ok((lo, hi, 0.0)),
            Support::All => {
                let x = self.decay.truncation_radius(threshold).ok_or_else(|| {
                    Error::Precondition(format!("`{}` has unbounded support and no decay metadata", self.id))
                })?;
                let tail = self.decay.tail_mass(x).unwrap_or(0.0);
                Ok((-x, x, tail))
            }
        }
    }

    /// Break points for quadrature on `[lo, hi]`: kinks, support ends and 0.
    pub fn breaks(&self) -> Vec<f64> {
        let mut b = self.kinks.clone();
        if let Support::Interval { lo, hi } = self.support {
            b.push(lo);
            b.push(hi);
        }
        b.push(0.0);
        b.sort_by(f64::total_cmp);
        b.dedup();
        b
    }

    /// `f` restricted to `[x1, x2]` and set to zero elsewhere.
    ///
    /// The closed-form transform survives only when the original support
    /// already lies inside `[x1, x2]`; norms are recomputed numerically.
    pub fn restricted(&self, x1: f64, x2: f64) -> Result<TestFunction> {
        if !(x1 < x2) || !x1.is_finite() || !x2.is_finite() {
            return Err(Error::InvalidInterval { a: x1, b: x2 });
        }
        let inside = match self.support {
            Support::Interval { lo, hi } => x1 <= lo && hi <= x2,
            Support::All => false,
        };
        if inside {
            let mut same = self.clone();
            same.id = format!("{}|[{x1},{x2}]", self.id);
            return Ok(same);
        }
        let (lo, hi) = match self.support {
            Support::Interval { lo, hi } => (lo.max(x1), hi.min(x2)),
            Support::All => (x1, x2),
        };
        if lo >= hi {
            return Err(Error::Domain(format!(
                "`{}` vanishes on [{x1}, {x2}]",
                self.id
            )));
        }
        let eval = self.eval.clone();
        let mut out = TestFunction::new(format!("{}|[{x1},{x2}]", self.id), move |x| {
            if (x1..=x2).contains(&x) {
                eval(x)
            } else {
                0.0
            }
        })
        .with_description(format!("{} restricted to [{x1}, {x2}]", self.id))
        .with_support(Support::Interval { lo, hi })
        .with_decay(Decay::Unknown);
        if let Some(d) = self.deriv.clone() {
            out = out.with_derivative(move |x| if (x1..=x2).contains(&x) { d(x) } else { 0.0 });
        }
        let mut kinks: Vec<f64> = self.kinks.iter().copied().filter(|k| (lo..=hi).contains(k)).collect();
        kinks.push(lo);
        kinks.push(hi);
        out = out.with_kinks(kinks);
        let ends_vanish = self.eval(lo) == 0.0 && self.eval(hi) == 0.0;
        let ac = self.is_abs_cont && ends_vanish;
        let has_deriv = out.deriv.is_some();
        out = out.with_flags(ac, true, ac && has_deriv);
        out.fill_numerical_norms()
    }

    /// Pointwise sum. Kinks are merged, flags are combined with `and`,
    /// transforms are added when both are known, norms are recomputed.
    pub fn plus(&self, other: &TestFunction, id: impl Into<String>) -> Result<TestFunction> {
        let (e1, e2) = (self.eval.clone(), other.eval.clone());
        let mut out = TestFunction::new(id, move |x| e1(x) + e2(x))
            .with_description(format!("{} + {}", self.id, other.id));
        if let (Some(d1), Some(d2)) = (self.deriv.clone(), other.deriv.clone()) {
            out = out.with_derivative(move |x| d1(x) + d2(x));
        }
        if let (Some(t1), Some(t2)) = (self.transform.clone(), other.transform.clone()) {
            out = out.with_transform(move |s| t1(s) + t2(s));
        }
        out.support = match (self.support, other.support) {
            (Support::Interval { lo: a, hi: b }, Support::Interval { lo: c, hi: d }) => {
                Support::Interval { lo: a.min(c), hi: b.max(d) }
            }
            _ => Support::All,
        };
        // Bounded support needs no decay envelope; unbounded support with
        // unknown decay poisons the sum.
        let unbounded_unknown = |f: &TestFunction| !f.support.is_bounded() && f.decay == Decay::Unknown;
        out.decay = if unbounded_unknown(self) || unbounded_unknown(other) {
            Decay::Unknown
        } else {
            slower_decay(self.decay, other.decay)
        };
        let mut kinks = self.kinks.clone();
        kinks.extend(other.kinks.iter().copied());
        if let Support::Interval { lo, hi } = self.support {
            kinks.extend([lo, hi]);
        }
        if let Support::Interval { lo, hi } = other.support {
            kinks.extend([lo, hi]);
        }
        let has_deriv = out.deriv.is_some();
        out = out.with_kinks(kinks).with_flags(
            self.is_abs_cont && other.is_abs_cont,
            self.f_in_l1 && other.f_in_l1,
            self.fprime_in_l1 && other.fprime_in_l1 && has_deriv,
        );
        out.fill_numerical_norms()
    }

    fn fill_numerical_norms(mut self) -> Result<Self> {
        let n = compute_norms(&self)?;
        self.l1_norm = n.l1_norm;
        self.sup_norm = n.sup_norm;
        self.deriv_l1_norm = n.deriv_l1_norm;
        Ok(self)
    }

    pub fn info(&self) -> FunctionInfo {
        FunctionInfo {
            id: self.id.clone(),
            dimension: 1,
            description: self.description.clone(),
            support: Some(self.support),
            kinks: self.kinks.clone(),
            is_abs_cont: self.is_abs_cont,
            f_in_l1: self.f_in_l1,
            fprime_in_l1: self.fprime_in_l1,
            l1_norm: Some(self.l1_norm),
            sup_norm: Some(self.sup_norm),
            deriv_l1_norm: self.deriv_l1_norm,
            has_derivative: self.has_derivative(),
            has_transform: self.has_transform(),
        }
    }
}

fn slower_decay(a: Decay, b: Decay) -> Decay {
    match (a, b) {
        (Decay::Unknown, d) | (d, Decay::Unknown) => d,
        (Decay::Exponential { scale: s1, rate: r1 }, Decay::Exponential { scale: s2, rate: r2 }) => {
            Decay::Exponential { scale: s1 + s2, rate: r1.min(r2) }
        }
        (Decay::Gaussian { scale: s1, rate: r1 }, Decay::Gaussian { scale: s2, rate: r2 }) => {
            Decay::Gaussian { scale: s1 + s2, rate: r1.min(r2) }
        }
        (e @ Decay::Exponential { .. }, Decay::Gaussian { scale, .. })
        | (Decay::Gaussian { scale, .. }, e @ Decay::Exponential { .. }) => {
            // Coarse: fold the gaussian into the exponential envelope.
            if let Decay::Exponential { scale: s, rate } = e {
                Decay::Exponential { scale: s + scale * (rate * rate).exp(), rate }
            } else {
                unreachable!()
            }
        }
    }
}

/// Numerically computed norms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Norms {
    pub l1_norm: f64,
    pub sup_norm: f64,
    pub deriv_l1_norm: Option<f64>,
}

const NORM_RELATIVE: f64 = 1e-8;

/// Recompute `‖f‖₁`, `‖f‖_∞` and `‖f′‖₁` by quadrature and compare with the
/// stored metadata to `1e-8` relative.
pub fn norms(f: &TestFunction) -> Result<Norms> {
    if !f.f_in_l1 {
        return Err(Error::Precondition(format!("`{}` is not flagged as integrable", f.id)));
    }
    let n = compute_norms(f)?;
    let check = |name: &str, stored: f64, computed: f64| -> Result<()> {
        let scale = stored.abs().max(computed.abs()).max(f64::MIN_POSITIVE);
        if (stored - computed).abs() > NORM_RELATIVE * scale {
            return Err(Error::MetadataInconsistency {
                id: f.id.clone(),
                detail: format!("{name}: stored {stored}, computed {computed}"),
            });
        }
        Ok(())
    };
    check("l1_norm", f.l1_norm, n.l1_norm)?;
    check("sup_norm", f.sup_norm, n.sup_norm)?;
    if let (Some(stored), Some(computed)) = (f.deriv_l1_norm, n.deriv_l1_norm) {
        check("deriv_l1_norm", stored, computed)?;
    }
    Ok(n)
}

fn compute_norms(f: &TestFunction) -> Result<Norms> {
    let tol = Tolerance::new(1e-13, 1e-12, 4000)?;
    let breaks = f.breaks();
    let (lo, hi) = match (f.support, f.decay) {
        (Support::All, Decay::Unknown) => divergence_window(f, &breaks, &tol)?,
        _ => {
            let (lo, hi, _) = f.integration_domain(1e-14)?;
            (lo, hi)
        }
    };
    let l1 = integrate_real(|x| f.eval(x).abs(), lo, hi, &breaks, &tol)?.value.re;
    let deriv_l1 = match &f.deriv {
        Some(d) => Some(integrate_real(|x| d(x).abs(), lo, hi, &breaks, &tol)?.value.re),
        None => None,
    };
    let sup = sup_norm(|x| f.eval(x), lo, hi, &breaks);
    Ok(Norms {
        l1_norm: l1,
        sup_norm: sup,
        deriv_l1_norm: deriv_l1,
    })
}

/// Grow a symmetric window until `∫|f|` stabilizes; failure means the
/// function is not integrable in practice.
fn divergence_window(f: &TestFunction, breaks: &[f64], tol: &Tolerance) -> Result<(f64, f64)> {
    let mut w = 8.0;
    let mut prev = integrate_real(|x| f.eval(x).abs(), -w, w, breaks, tol)?.value.re;
    for _ in 0..20 {
        let next_w = 2.0 * w;
        let shell = integrate_real(|x| f.eval(x).abs(), -next_w, -w, breaks, tol)?.value.re
            + integrate_real(|x| f.eval(x).abs(), w, next_w, breaks, tol)?.value.re;
        let total = prev + shell;
        w = next_w;
        if shell <= 1e-12 * total.max(1e-300) {
            return Ok((-w, w));
        }
        prev = total;
    }
    Err(Error::MetadataInconsistency {
        id: f.id.clone(),
        detail: format!("∫|f| keeps growing out to |x| = {w}; flagged integrable but appears divergent"),
    })
}

fn sup_norm(f: impl Fn(f64) -> f64, lo: f64, hi: f64, breaks: &[f64]) -> f64 {
    const GRID: usize = 4000;
    let mut pts: Vec<f64> = (0..=GRID).map(|k| lo + (hi - lo) * k as f64 / GRID as f64).collect();
    pts.extend(breaks.iter().copied().filter(|b| (lo..=hi).contains(b)));
    pts.sort_by(f64::total_cmp);
    let (best_idx, mut best) = pts
        .iter()
        .enumerate()
        .map(|(i, &x)| (i, f(x).abs()))
        .fold((0, 0.0), |acc, v| if v.1 > acc.1 { v } else { acc });
    // Golden-section refinement between the neighbours of the best sample.
    let (mut a, mut b) = (pts[best_idx.saturating_sub(1)], pts[(best_idx + 1).min(pts.len() - 1)]);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    for _ in 0..100 {
        if f(c).abs() > f(d).abs() {
            b = d;
        } else {
            a = c;
        }
        c = b - g * (b - a);
        d = a + g * (b - a);
    }
    best = best.max(f(0.5 * (a + b)).abs());
    best
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Indicator of `[−1, 1]`. Its transform `2 sin(s)/s` is not integrable and
/// the function is not absolutely continuous on the line.
pub fn rect() -> TestFunction {
    TestFunction::new("rect", |x| if x.abs() <= 1.0 { 1.0 } else { 0.0 })
        .with_description("indicator of [-1, 1]")
        .with_transform(|s| Complex64::new(2.0 * sinc(s), 0.0))
        .with_support(Support::Interval { lo: -1.0, hi: 1.0 })
        .with_kinks([-1.0, 1.0])
        .with_flags(false, true, false)
        .with_norms(2.0, 1.0, None)
}

pub fn laplace() -> TestFunction {
    TestFunction::new("laplace", |x| (-x.abs()).exp())
        .with_description("exp(-|x|)")
        .with_derivative(|x| -sign(x) * (-x.abs()).exp())
        .with_transform(|s| Complex64::new(2.0 / (1.0 + s * s), 0.0))
        .with_transform_tail(|r| 2.0 * (PI - 2.0 * r.atan()))
        .with_decay(Decay::Exponential { scale: 1.0, rate: 1.0 })
        .with_kinks([0.0])
        .with_flags(true, true, true)
        .with_norms(2.0, 1.0, Some(2.0))
}

pub fn gaussian() -> TestFunction {
    let root_two_pi = (2.0 * PI).sqrt();
    TestFunction::new("gaussian", |x| (-0.5 * x * x).exp())
        .with_description("exp(-x^2/2)")
        .with_derivative(|x| -x * (-0.5 * x * x).exp())
        .with_second_derivative(|x| (x * x - 1.0) * (-0.5 * x * x).exp())
        .with_transform(move |s| Complex64::new(root_two_pi * (-0.5 * s * s).exp(), 0.0))
        .with_transform_tail(move |r| 2.0 * root_two_pi * (-0.5 * r * r).exp() / r)
        .with_decay(Decay::Gaussian { scale: 1.0, rate: 0.5 })
        .with_flags(true, true, true)
        .with_norms(root_two_pi, 1.0, Some(2.0))
}

pub fn tent() -> TestFunction {
    TestFunction::new("tent", |x| (1.0 - x.abs()).max(0.0))
        .with_description("max(0, 1 - |x|)")
        .with_derivative(|x| if x.abs() < 1.0 { -sign(x) } else { 0.0 })
        .with_transform(|s| {
            let h = sinc(0.5 * s);
            Complex64::new(h * h, 0.0)
        })
        .with_transform_tail(|r| 8.0 / r)
        .with_support(Support::Interval { lo: -1.0, hi: 1.0 })
        .with_kinks([-1.0, 0.0, 1.0])
        .with_flags(true, true, true)
        .with_norms(1.0, 1.0, Some(2.0))
}

/// `∫_{−1}^{1} e^{−1/(1−x²)} dx`.
pub const BUMP_L1: f64 = 0.443_993_816_168_079_4;

/// The C^∞ bump `e^{−1/(1−x²)}` on `(−1, 1)`.
pub fn bump() -> TestFunction {
    bump_on(-1.0, 1.0, "bump")
}

/// The standard bump rescaled to `(lo, hi)`.
pub fn bump_on(lo: f64, hi: f64, id: &str) -> TestFunction {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let eval = move |x: f64| {
        let u = (x - c) / h;
        if u.abs() < 1.0 {
            (-1.0 / (1.0 - u * u)).exp()
        } else {
            0.0
        }
    };
    let deriv = move |x: f64| {
        let u = (x - c) / h;
        if u.abs() < 1.0 {
            let q = 1.0 - u * u;
            -2.0 * u / (q * q) * (-1.0 / q).exp() / h
        } else {
            0.0
        }
    };
    TestFunction::new(id, eval)
        .with_description(format!("smooth bump exp(-1/(1-u^2)) on ({lo}, {hi})"))
        .with_derivative(deriv)
        .with_support(Support::Interval { lo, hi })
        .with_flags(true, true, true)
        .with_norms(BUMP_L1 * h, (-1f64).exp(), Some(2.0 * (-1f64).exp()))
}

/// `∫_{x1}^{x2} tⁿ e^{−ist} dt` in closed form: a power series for `|s| ≤ 1`,
/// upward integration-by-parts recurrence otherwise.
pub fn monomial_transform(n: u32, x1: f64, x2: f64, s: f64) -> Complex64 {
    if s.abs() <= 1.0 {
        let mut sum = Complex64::default();
        let mut coef = Complex64::new(1.0, 0.0); // (−is)^k / k!
        for k in 0..200u32 {
            let p = (n + k + 1) as i32;
            let term = coef * ((x2.powi(p) - x1.powi(p)) / p as f64);
            sum += term;
            if k > 4 && term.norm() < 1e-18 * sum.norm().max(1e-300) {
                break;
            }
            coef *= Complex64::new(0.0, -s) / (k + 1) as f64;
        }
        return sum;
    }
    let e = |t: f64| Complex64::cis(-s * t);
    let minus_is = Complex64::new(0.0, -s);
    let mut acc = (e(x2) - e(x1)) / minus_is;
    for m in 1..=n {
        let boundary = (e(x2) * x2.powi(m as i32) - e(x1) * x1.powi(m as i32)) / minus_is;
        acc = boundary - acc * (m as f64) / minus_is;
    }
    acc
}

/// `tⁿ` on `[x1, x2]`, zero elsewhere. Absolutely continuous on the interval
/// but not on the line.
pub fn monomial(n: u32, x1: f64, x2: f64) -> TestFunction {
    let inside = move |x: f64| (x1..=x2).contains(&x);
    let m = n as i32;
    let l1 = if x1 >= 0.0 {
        (x2.powi(m + 1) - x1.powi(m + 1)) / (m + 1) as f64
    } else {
        f64::NAN
    };
    let sup = x1.abs().powi(m).max(x2.abs().powi(m));
    let deriv_l1 = if x1 >= 0.0 { x2.powi(m) - x1.powi(m) } else { f64::NAN };
    let mut f = TestFunction::new(format!("monomial{n}"), move |x| if inside(x) { x.powi(m) } else { 0.0 })
        .with_description(format!("t^{n} on [{x1}, {x2}]"))
        .with_derivative(move |x| if inside(x) && m > 0 { m as f64 * x.powi(m - 1) } else { 0.0 })
        .with_transform(move |s| monomial_transform(n, x1, x2, s))
        .with_support(Support::Interval { lo: x1, hi: x2 })
        .with_kinks([x1, x2])
        .with_flags(false, true, false)
        .with_norms(l1, sup, Some(deriv_l1));
    if x1 < 0.0 {
        // Norms for sign-changing intervals are filled in numerically.
        f = f.fill_numerical_norms().expect("monomial norms on a bounded interval");
    }
    f
}

/// All one-dimensional catalog entries.
pub fn catalog() -> Vec<TestFunction> {
    vec![
        rect(),
        laplace(),
        gaussian(),
        tent(),
        bump(),
        monomial(0, 0.0, 1.0),
        monomial(1, 0.0, 1.0),
        monomial(2, 0.0, 1.0),
    ]
}

/// Look up a one-dimensional catalog entry by id.
pub fn lookup(id: &str) -> Result<TestFunction> {
    catalog()
        .into_iter()
        .find(|f| f.id == id)
        .ok_or_else(|| Error::UnknownFunction(id.to_string()))
}

/// Metadata for every catalog entry, one- and two-dimensional.
pub fn catalog_info() -> Vec<FunctionInfo> {
    let mut v: Vec<FunctionInfo> = catalog().iter().map(TestFunction::info).collect();
    v.extend(crate::multivar::catalog2d().iter().map(|f| f.info()));
    v
}
