//! Two-dimensional transforms and inversion by iterated one-dimensional
//! quadrature, the double-integral ODE reconstruction, mixed-partial checks
//! and rectangle increments.
//!
//! Every entry integrates over a fixed box outside which `f` and its
//! partials are below `1e-16` in mass.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, Mutex};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inversion::{Acceleration, InversionReport, TruncationLadder};
use crate::perron::ComplexParameter;
use crate::quadrature::{integrate_panels, panel_edges, QuadratureOutcome, Tolerance};
use crate::testfns::{gaussian, laplace, FunctionInfo, Support, TestFunction};

pub type RealFn2 = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
pub type ComplexFn2 = Arc<dyn Fn(f64, f64) -> Complex64 + Send + Sync>;

/// A function on the plane with its first partials and mixed partial.
#[derive(Clone)]
pub struct TestFunction2D {
    pub id: String,
    pub description: String,
    eval: RealFn2,
    fx: Option<RealFn2>,
    fy: Option<RealFn2>,
    fxy: Option<RealFn2>,
    transform: Option<ComplexFn2>,
    /// Integration box `[lo, hi]` per axis.
    pub box_x: (f64, f64),
    pub box_y: (f64, f64),
    /// Points where some partial is discontinuous, per axis.
    pub kinks_x: Vec<f64>,
    pub kinks_y: Vec<f64>,
    pub is_c2: bool,
    pub f_in_l1: bool,
    pub fx_in_l1: bool,
    pub fy_in_l1: bool,
    pub fxy_in_l1: bool,
    pub l1_norm: f64,
    pub sup_norm: f64,
}

impl std::fmt::Debug for TestFunction2D {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TestFunction2D")
            .field("id", &self.id)
            .field("box_x", &self.box_x)
            .field("box_y", &self.box_y)
            .field("is_c2", &self.is_c2)
            .finish_non_exhaustive()
    }
}

/// Extra width added to a factor's truncation interval so that partials,
/// which carry polynomial factors, are also negligible outside.
const BOX_MARGIN: f64 = 2.0;

fn factor_box(f: &TestFunction) -> Result<(f64, f64)> {
    let (lo, hi, _) = f.integration_domain(1e-17)?;
    Ok(match f.support {
        Support::All => (lo - BOX_MARGIN, hi + BOX_MARGIN),
        Support::Interval { .. } => (lo, hi),
    })
}

impl TestFunction2D {
    /// `u ⊗ v`, `(x, y) ↦ u(x) v(y)`. Both factors need derivatives.
    pub fn product(u: &TestFunction, v: &TestFunction) -> Result<Self> {
        let (Some(du), Some(dv)) = (u.deriv_fn(), v.deriv_fn()) else {
            return Err(Error::Precondition(format!(
                "product `{}` x `{}` needs both derivatives",
                u.id, v.id
            )));
        };
        let (eu, ev) = (u.eval_fn(), v.eval_fn());
        let transform: Option<ComplexFn2> = if u.has_transform() && v.has_transform() {
            let (tu, tv) = (u.clone(), v.clone());
            Some(Arc::new(move |s, t| {
                tu.transform(s).unwrap_or_default() * tv.transform(t).unwrap_or_default()
            }))
        } else {
            None
        };
        let (e1, e2) = (eu.clone(), ev.clone());
        let (e3, d3) = (ev.clone(), du.clone());
        let (e4, d4) = (eu.clone(), dv.clone());
        Ok(Self {
            id: format!("{}_{}", u.id, v.id),
            description: format!("{}(x) * {}(y)", u.id, v.id),
            eval: Arc::new(move |x, y| e1(x) * e2(y)),
            fx: Some(Arc::new(move |x, y| d3(x) * e3(y))),
            fy: Some(Arc::new(move |x, y| e4(x) * d4(y))),
            fxy: Some(Arc::new(move |x, y| du(x) * dv(y))),
            transform,
            box_x: factor_box(u)?,
            box_y: factor_box(v)?,
            kinks_x: u.kinks.clone(),
            kinks_y: v.kinks.clone(),
            is_c2: u.kinks.is_empty() && v.kinks.is_empty(),
            f_in_l1: u.f_in_l1 && v.f_in_l1,
            fx_in_l1: u.fprime_in_l1 && v.f_in_l1,
            fy_in_l1: u.f_in_l1 && v.fprime_in_l1,
            fxy_in_l1: u.fprime_in_l1 && v.fprime_in_l1,
            l1_norm: u.l1_norm * v.l1_norm,
            sup_norm: u.sup_norm * v.sup_norm,
        })
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (self.eval)(x, y)
    }

    pub fn fx(&self, x: f64, y: f64) -> Option<f64> {
        self.fx.as_ref().map(|g| g(x, y))
    }

    pub fn fy(&self, x: f64, y: f64) -> Option<f64> {
        self.fy.as_ref().map(|g| g(x, y))
    }

    pub fn fxy(&self, x: f64, y: f64) -> Option<f64> {
        self.fxy.as_ref().map(|g| g(x, y))
    }

    pub fn has_partials(&self) -> bool {
        self.fx.is_some() && self.fy.is_some() && self.fxy.is_some()
    }

    pub fn has_transform(&self) -> bool {
        self.transform.is_some()
    }

    pub fn transform(&self, s: f64, t: f64) -> Option<Complex64> {
        self.transform.as_ref().map(|g| g(s, t))
    }

    /// `f, f_x, f_y, f_xy ∈ L¹(R²)`.
    pub fn satisfies_inversion_hypotheses(&self) -> bool {
        self.f_in_l1 && self.fx_in_l1 && self.fy_in_l1 && self.fxy_in_l1
    }

    pub fn info(&self) -> FunctionInfo {
        FunctionInfo {
            id: self.id.clone(),
            dimension: 2,
            description: self.description.clone(),
            support: None,
            kinks: self.kinks_x.iter().chain(&self.kinks_y).copied().collect(),
            is_abs_cont: self.is_c2,
            f_in_l1: self.f_in_l1,
            fprime_in_l1: self.fx_in_l1 && self.fy_in_l1 && self.fxy_in_l1,
            l1_norm: Some(self.l1_norm),
            sup_norm: Some(self.sup_norm),
            deriv_l1_norm: None,
            has_derivative: self.has_partials(),
            has_transform: self.has_transform(),
        }
    }
}

/// `e^{−x²/2} e^{−y²/2}`
pub fn gauss_gauss() -> TestFunction2D {
    TestFunction2D::product(&gaussian(), &gaussian()).expect("catalog factors carry derivatives")
}

/// `e^{−x²/2} e^{−|y|}`
pub fn gauss_laplace() -> TestFunction2D {
    TestFunction2D::product(&gaussian(), &laplace()).expect("catalog factors carry derivatives")
}

/// `e^{−(x² + xy + y²)}`, transform `(2π/√3) e^{−(s² − st + t²)/3}`.
pub fn quadform() -> TestFunction2D {
    let q = |x: f64, y: f64| (-(x * x + x * y + y * y)).exp();
    let norm = 2.0 * PI / 3f64.sqrt();
    TestFunction2D {
        id: "quadform".into(),
        description: "exp(-(x^2 + x y + y^2))".into(),
        eval: Arc::new(q),
        fx: Some(Arc::new(move |x, y| -(2.0 * x + y) * q(x, y))),
        fy: Some(Arc::new(move |x, y| -(x + 2.0 * y) * q(x, y))),
        fxy: Some(Arc::new(move |x, y| ((2.0 * x + y) * (x + 2.0 * y) - 1.0) * q(x, y))),
        transform: Some(Arc::new(move |s, t| {
            Complex64::new(norm * (-(s * s - s * t + t * t) / 3.0).exp(), 0.0)
        })),
        // Smallest eigenvalue of the form is 1/2, as for the gaussian factor.
        box_x: (-10.0, 10.0),
        box_y: (-10.0, 10.0),
        kinks_x: Vec::new(),
        kinks_y: Vec::new(),
        is_c2: true,
        f_in_l1: true,
        fx_in_l1: true,
        fy_in_l1: true,
        fxy_in_l1: true,
        l1_norm: norm,
        sup_norm: 1.0,
    }
}

/// The two-dimensional catalog.
pub fn catalog2d() -> Vec<TestFunction2D> {
    vec![gauss_gauss(), gauss_laplace(), quadform()]
}

pub fn lookup2d(id: &str) -> Result<TestFunction2D> {
    catalog2d()
        .into_iter()
        .find(|f| f.id == id)
        .ok_or_else(|| Error::UnknownFunction(id.to_string()))
}

/// Which variable the inner quadrature runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntegrationOrder {
    /// Inner in `v`, outer in `u`.
    #[default]
    InnerV,
    InnerU,
}

fn oscillation_width(freq: f64, span: f64) -> f64 {
    if freq == 0.0 {
        span
    } else {
        (PI / freq.abs()).max(0.25)
    }
}

/// Numerical `f̂(s, t) = ∫∫ e^{−i(su + tv)} f(u, v) dv du` by iterated
/// quadrature over the integration box; the inner tolerance is a tenth of
/// the outer one.
pub fn fourier2d(f: &TestFunction2D, s: f64, t: f64, tol: &Tolerance) -> Result<QuadratureOutcome> {
    fourier2d_ordered(f, s, t, tol, IntegrationOrder::InnerV)
}

pub fn fourier2d_ordered(
    f: &TestFunction2D,
    s: f64,
    t: f64,
    tol: &Tolerance,
    order: IntegrationOrder,
) -> Result<QuadratureOutcome> {
    tol.validate()?;
    if !f.f_in_l1 {
        return Err(Error::Precondition(format!("`{}` is not flagged as integrable", f.id)));
    }
    if !(s.is_finite() && t.is_finite()) {
        return Err(Error::Domain(format!("frequencies must be finite, got ({s}, {t})")));
    }
    // (outer box, outer freq, outer kinks, inner ...) with the integrand
    // always written as f(outer, inner) after a possible swap.
    let swap = order == IntegrationOrder::InnerU;
    let (ob, of, ok, ib, inf, ik) = if swap {
        (f.box_y, t, &f.kinks_y, f.box_x, s, &f.kinks_x)
    } else {
        (f.box_x, s, &f.kinks_x, f.box_y, t, &f.kinks_y)
    };
    let value = |a: f64, b: f64| if swap { f.eval(b, a) } else { f.eval(a, b) };
    let inner_tol = Tolerance {
        absolute: tol.absolute / 10.0,
        relative: tol.relative / 10.0,
        ..*tol
    };
    let inner_edges = panel_edges(ib.0, ib.1, oscillation_width(inf, ib.1 - ib.0));
    let inner_ok = AtomicBool::new(true);
    let worst = Mutex::new(0.0f64);
    let failure: Mutex<Option<Error>> = Mutex::new(None);
    let outer = |a: f64| -> Complex64 {
        let inner = integrate_panels(|b| Complex64::cis(-inf * b) * value(a, b), &inner_edges, ik, &inner_tol);
        match inner {
            Ok(o) => {
                if !o.converged {
                    inner_ok.store(false, Ordering::Relaxed);
                }
                if let Ok(mut w) = worst.lock() {
                    *w = w.max(o.error_estimate);
                }
                Complex64::cis(-of * a) * o.value
            }
            Err(e) => {
                if let Ok(mut slot) = failure.lock() {
                    slot.get_or_insert(e);
                }
                Complex64::new(f64::NAN, 0.0)
            }
        }
    };
    let outer_edges = panel_edges(ob.0, ob.1, oscillation_width(of, ob.1 - ob.0));
    let out = integrate_panels(outer, &outer_edges, ok, tol);
    if let Some(e) = failure.into_inner().ok().flatten() {
        return Err(e);
    }
    let out = out?;
    let inner_err = worst.into_inner().unwrap_or(0.0) * (ob.1 - ob.0);
    let mut out = out.with_extra_error(inner_err);
    out.converged = out.error_estimate <= tol.target(out.value.norm().max(f.l1_norm))
        && inner_ok.load(Ordering::Relaxed);
    Ok(out)
}

/// Which truncation limit is taken first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LimitOrder {
    /// `lim_{R₁} lim_{R₂}`: the `t` radius is accelerated first.
    #[default]
    InnerT,
    /// `lim_{R₂} lim_{R₁}`.
    InnerS,
}

/// Truncated double integrals
/// `P[i][j] = (2π)^{−2} ∫_{|s|≤R₁ᵢ} ∫_{|t|≤R₂ⱼ} e^{i(xs+yt)} f̂(s, t) dt ds`
/// together with an error estimate and a convergence flag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartialGrid {
    pub r1: Vec<f64>,
    pub r2: Vec<f64>,
    pub values: Vec<Vec<Complex64>>,
    pub error_estimate: f64,
    pub converged: bool,
}

type InnerMemo = Mutex<HashMap<u64, Arc<Vec<Complex64>>>>;

/// All truncated double integrals on the ladder grid.
///
/// For each outer node `s` the `t` ladder is integrated once, shell by
/// shell with `±t` folded, and memoised; each `R₂` column then drives its
/// own outer quadrature, accumulated over `R₁` shells.
pub fn truncated_inversion2d(
    f: &TestFunction2D,
    x: f64,
    y: f64,
    r1: &[f64],
    r2: &[f64],
    tol: &Tolerance,
) -> Result<PartialGrid> {
    tol.validate()?;
    if !(x.is_finite() && y.is_finite()) {
        return Err(Error::Domain(format!("point must be finite, got ({x}, {y})")));
    }
    let Some(fhat) = f.transform.clone() else {
        return Err(Error::Precondition(format!("`{}` has no closed-form transform", f.id)));
    };
    for radii in [r1, r2] {
        TruncationLadder::new(radii.to_vec(), Acceleration::None)?;
    }
    let inner_tol = Tolerance {
        absolute: tol.absolute / 10.0,
        relative: tol.relative / 10.0,
        ..*tol
    };
    let inner_width = PI / (y.abs() + 1.0);
    let outer_width = PI / (x.abs() + 1.0);
    let memo: InnerMemo = Mutex::new(HashMap::new());
    let inner_ok = AtomicBool::new(true);
    let worst = Mutex::new(0.0f64);
    let failure: Mutex<Option<Error>> = Mutex::new(None);

    let inner_ladder = |s: f64| -> Result<Arc<Vec<Complex64>>> {
        if let Some(v) = memo.lock().ok().and_then(|m| m.get(&s.to_bits()).cloned()) {
            return Ok(v);
        }
        let mut acc = Complex64::default();
        let mut out = Vec::with_capacity(r2.len());
        let mut lower = 0.0;
        for &r in r2 {
            let g = |t: f64| Complex64::cis(y * t) * fhat(s, t) + Complex64::cis(-y * t) * fhat(s, -t);
            let o = integrate_panels(g, &panel_edges(lower, r, inner_width), &[], &inner_tol)?;
            if !o.converged {
                inner_ok.store(false, Ordering::Relaxed);
            }
            if let Ok(mut w) = worst.lock() {
                *w = w.max(o.error_estimate);
            }
            acc += o.value;
            out.push(acc);
            lower = r;
        }
        let out = Arc::new(out);
        if let Ok(mut m) = memo.lock() {
            m.insert(s.to_bits(), out.clone());
        }
        Ok(out)
    };

    let scale = 1.0 / (4.0 * PI * PI);
    let mut values = vec![vec![Complex64::default(); r2.len()]; r1.len()];
    let mut outer_err: f64 = 0.0;
    let mut outer_ok = true;
    for j in 0..r2.len() {
        let integrand = |s: f64| -> Complex64 {
            match inner_ladder(s).and_then(|p| inner_ladder(-s).map(|m| (p, m))) {
                Ok((p, m)) => Complex64::cis(x * s) * p[j] + Complex64::cis(-x * s) * m[j],
                Err(e) => {
                    if let Ok(mut slot) = failure.lock() {
                        slot.get_or_insert(e);
                    }
                    Complex64::new(f64::NAN, 0.0)
                }
            }
        };
        let mut running = QuadratureOutcome::zero();
        let mut lower = 0.0;
        for (i, &r) in r1.iter().enumerate() {
            let shell = integrate_panels(integrand, &panel_edges(lower, r, outer_width), &[], tol);
            if let Some(e) = failure.lock().ok().and_then(|mut s| s.take()) {
                return Err(e);
            }
            running = running.combine(shell?);
            values[i][j] = running.value * scale;
            lower = r;
        }
        outer_err = outer_err.max(running.error_estimate);
        outer_ok &= running.converged;
    }
    // An error ε in every inner value moves an outer integral by ≤ 2R₁ε.
    let inner_err = worst.into_inner().unwrap_or(0.0) * 2.0 * r1.last().copied().unwrap_or(0.0) * r2.len() as f64;
    Ok(PartialGrid {
        r1: r1.to_vec(),
        r2: r2.to_vec(),
        values,
        error_estimate: (outer_err + inner_err) * scale,
        converged: outer_ok && inner_ok.load(Ordering::Relaxed),
    })
}

/// Iterated-limit inversion at `(x, y)`.
///
/// Rows of the report are indexed by the outer radius; each row holds the
/// inner limit already accelerated with the inner ladder's policy. The
/// outer ladder's policy then produces the reported value.
pub fn invert2d_at(
    f: &TestFunction2D,
    x: f64,
    y: f64,
    ladder1: &TruncationLadder,
    ladder2: &TruncationLadder,
    tol: &Tolerance,
) -> Result<InversionReport> {
    invert2d_ordered(f, x, y, ladder1, ladder2, tol, LimitOrder::InnerT)
}

pub fn invert2d_ordered(
    f: &TestFunction2D,
    x: f64,
    y: f64,
    ladder1: &TruncationLadder,
    ladder2: &TruncationLadder,
    tol: &Tolerance,
    order: LimitOrder,
) -> Result<InversionReport> {
    if !f.satisfies_inversion_hypotheses() {
        return Err(Error::Precondition(format!(
            "`{}` needs f, f_x, f_y and f_xy in L1",
            f.id
        )));
    }
    let grid = truncated_inversion2d(f, x, y, ladder1.radii(), ladder2.radii(), tol)?;
    // (radius, inner-accelerated value, no analytic bound)
    type Row = (f64, Complex64, Option<f64>);
    let (outer, rows): (&TruncationLadder, Vec<Row>) = match order {
        LimitOrder::InnerT => (
            ladder1,
            grid.values
                .iter()
                .zip(&grid.r1)
                .map(|(row, &r)| (r, ladder2.acceleration.apply(row), None))
                .collect(),
        ),
        LimitOrder::InnerS => (
            ladder2,
            (0..grid.r2.len())
                .map(|j| {
                    let col: Vec<Complex64> = grid.values.iter().map(|row| row[j]).collect();
                    (grid.r2[j], ladder1.acceleration.apply(&col), None)
                })
                .collect(),
        ),
    };
    Ok(InversionReport::assemble(
        &f.id,
        x,
        outer,
        rows,
        Some(f.eval(x, y)),
        grid.error_estimate,
        grid.converged,
    ))
}

/// `e^{iw(x+y)} ∫_{−∞}^{x} ∫_{−∞}^{y} e^{−iw(s+t)} g(s, t) dt ds` with
/// `g = f_xy − iw(f_x + f_y) − w² f`; equals `f(x, y)` when `Im w > 0`.
///
/// The weight `e^{−η(x−s)} e^{−η(y−t)}` never exceeds one, so the lower
/// limits are the integration box.
pub fn pde_reconstruct2d(
    f: &TestFunction2D,
    w: ComplexParameter,
    x: f64,
    y: f64,
    tol: &Tolerance,
) -> Result<QuadratureOutcome> {
    tol.validate()?;
    let (Some(fx), Some(fy), Some(fxy)) = (f.fx.clone(), f.fy.clone(), f.fxy.clone()) else {
        return Err(Error::Precondition(format!("`{}` lacks partial derivatives", f.id)));
    };
    if !(w.eta > 0.0) {
        return Err(Error::Domain(format!("w must have positive imaginary part, got {w}")));
    }
    if !(x.is_finite() && y.is_finite()) {
        return Err(Error::Domain(format!("point must be finite, got ({x}, {y})")));
    }
    let wc = w.as_complex();
    let iw = Complex64::i() * wc;
    let g = |s: f64, t: f64| fxy(s, t) - iw * (fx(s, t) + fy(s, t)) - wc * wc * f.eval(s, t);
    let (lo_x, lo_y) = (f.box_x.0.min(x), f.box_y.0.min(y));
    let inner_tol = Tolerance {
        absolute: tol.absolute / 10.0,
        relative: tol.relative / 10.0,
        ..*tol
    };
    let inner_edges = panel_edges(lo_y, y, 1.0);
    let failure: Mutex<Option<Error>> = Mutex::new(None);
    let worst = Mutex::new(0.0f64);
    let outer = |s: f64| -> Complex64 {
        let inner = integrate_panels(
            |t| (-iw * ((s - x) + (t - y))).exp() * g(s, t),
            &inner_edges,
            &f.kinks_y,
            &inner_tol,
        );
        match inner {
            Ok(o) => {
                if let Ok(mut m) = worst.lock() {
                    *m = m.max(o.error_estimate);
                }
                o.value
            }
            Err(e) => {
                if let Ok(mut slot) = failure.lock() {
                    slot.get_or_insert(e);
                }
                Complex64::new(f64::NAN, 0.0)
            }
        }
    };
    let out = integrate_panels(outer, &panel_edges(lo_x, x, 1.0), &f.kinks_x, tol);
    if let Some(e) = failure.into_inner().ok().flatten() {
        return Err(e);
    }
    Ok(out?.with_extra_error(worst.into_inner().unwrap_or(0.0) * (x - lo_x)))
}

/// Largest `|f_xy − f_yx|` over the grid, each side a central difference of
/// the opposite first partial; without partial evaluators both sides are
/// nested differences of `f` taken in opposite orders.
pub fn mixed_partial_check(f: &TestFunction2D, grid: &[(f64, f64)], h: f64) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Domain(format!("step must be positive, got {h}")));
    }
    let d = 2.0 * h;
    let dx = |x: f64, y: f64| match &f.fx {
        Some(g) => g(x, y),
        None => (f.eval(x + h, y) - f.eval(x - h, y)) / d,
    };
    let dy = |x: f64, y: f64| match &f.fy {
        Some(g) => g(x, y),
        None => (f.eval(x, y + h) - f.eval(x, y - h)) / d,
    };
    Ok(grid
        .iter()
        .map(|&(x, y)| {
            let f_xy = (dx(x, y + h) - dx(x, y - h)) / d;
            let f_yx = (dy(x + h, y) - dy(x - h, y)) / d;
            (f_xy - f_yx).abs()
        })
        .fold(0.0, f64::max))
}

/// `F(x₁,y₁) − F(x₂,y₁) − F(x₁,y₂) + F(x₂,y₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RectangleIncrement {
    pub value: f64,
    /// Zero-area rectangle; `value` is then exactly 0.
    pub degenerate: bool,
}

pub fn rectangle_increment(f: &TestFunction2D, x1: f64, y1: f64, x2: f64, y2: f64) -> Result<RectangleIncrement> {
    rectangle_increment_of(|x, y| f.eval(x, y), x1, y1, x2, y2)
}

/// [`rectangle_increment`] for any function of two variables.
pub fn rectangle_increment_of(
    f: impl Fn(f64, f64) -> f64,
    x1: f64,
    y1: f64,
    x2: f64,
    y2: f64,
) -> Result<RectangleIncrement> {
    if [x1, y1, x2, y2].iter().any(|v| !v.is_finite()) || x1 > x2 || y1 > y2 {
        return Err(Error::Precondition(format!(
            "need finite x1 <= x2, y1 <= y2; got [{x1}, {x2}] x [{y1}, {y2}]"
        )));
    }
    if x1 == x2 || y1 == y2 {
        return Ok(RectangleIncrement { value: 0.0, degenerate: true });
    }
    Ok(RectangleIncrement {
        value: f(x1, y1) - f(x2, y1) - f(x1, y2) + f(x2, y2),
        degenerate: false,
    })
}
