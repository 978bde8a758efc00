//! The contour-integral representation of the Heaviside step:
//!
//! `(1/2πi) ∫_{−∞}^{∞} e^{ipz}/(z − w) dz = e^{ipw} H(p)` for `Im w > 0`.
//!
//! The real-axis integral is evaluated at finite `R` and compared against the
//! residue value; the gap is controlled by [`semicircle_bound`], the estimate
//! on the arc integral obtained from Jordan's inequality.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{
    integrate_finite, integrate_finite_with_breaks, integrate_panels, panel_edges, QuadratureOutcome,
    Tolerance,
};

/// The shift `w = ξ + iη` with `η > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexParameter {
    pub xi: f64,
    pub eta: f64,
}

impl ComplexParameter {
    pub fn new(xi: f64, eta: f64) -> Result<Self> {
        if !xi.is_finite() || !eta.is_finite() {
            return Err(Error::Domain(format!("w = {xi} + {eta}i must be finite")));
        }
        if eta <= 0.0 {
            return Err(Error::Domain(format!(
                "w must lie in the upper half-plane, got imaginary part {eta}"
            )));
        }
        Ok(Self { xi, eta })
    }

    /// `w = i`, the default shift.
    pub fn i() -> Self {
        Self { xi: 0.0, eta: 1.0 }
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.xi, self.eta)
    }

    pub fn modulus(&self) -> f64 {
        self.xi.hypot(self.eta)
    }
}

impl Default for ComplexParameter {
    fn default() -> Self {
        Self::i()
    }
}

impl fmt::Display for ComplexParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.xi, self.eta)
    }
}

impl FromStr for ComplexParameter {
    type Err = Error;

    /// Accepts `a+bi`, `a-bi`, `bi`, `i`, `a+i` (whitespace ignored).
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("cannot parse complex parameter `{s}`"));
        let body = t.strip_suffix('i').ok_or_else(bad)?;
        // Split at the last sign that is not the leading one or part of an exponent.
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        let coef = |c: &str| -> Result<f64> {
            match c {
                "" | "+" => Ok(1.0),
                "-" => Ok(-1.0),
                _ => c.parse::<f64>().map_err(|_| bad()),
            }
        };
        let (re, im) = match split {
            Some(k) => (body[..k].parse::<f64>().map_err(|_| bad())?, coef(&body[k..])?),
            None => (0.0, coef(body)?),
        };
        Self::new(re, im)
    }
}

/// `H(p)`: 1 for `p > 0`, 1/2 at 0, 0 for `p < 0`.
pub fn heaviside(p: f64) -> f64 {
    if p > 0.0 {
        1.0
    } else if p == 0.0 {
        0.5
    } else {
        0.0
    }
}

/// A sampled value of `e^{ipw} H(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeavisideValue {
    pub p: f64,
    pub value: Complex64,
}

impl HeavisideValue {
    pub fn at(p: f64, w: ComplexParameter) -> Self {
        Self {
            p,
            value: heaviside_reference(p, w),
        }
    }
}

/// The residue side of the identity, `e^{ipw} H(p)`. `H(0) = 1/2` exactly.
pub fn heaviside_reference(p: f64, w: ComplexParameter) -> Complex64 {
    let h = heaviside(p);
    if h == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    (Complex64::i() * p * w.as_complex()).exp() * h
}

/// `(1/2πi) ∫_{−R}^{R} e^{ipx}/(x − w) dx` along the real axis.
///
/// Requires `R > 2|w|`. For `p ≠ 0` the interval is cut into panels of width
/// `π/max(|p|, 1)`; for `p = 0` the integrand does not oscillate and a single
/// adaptive call with a break at `ξ` is used.
pub fn heaviside_kernel(p: f64, w: ComplexParameter, r: f64) -> Result<QuadratureOutcome> {
    heaviside_kernel_with(p, w, r, &Tolerance::default())
}

pub fn heaviside_kernel_with(p: f64, w: ComplexParameter, r: f64, tol: &Tolerance) -> Result<QuadratureOutcome> {
    if !p.is_finite() {
        return Err(Error::Domain(format!("p must be finite, got {p}")));
    }
    if !(r.is_finite() && r > 2.0 * w.modulus()) {
        return Err(Error::Precondition(format!(
            "R = {r} must exceed 2|w| = {}",
            2.0 * w.modulus()
        )));
    }
    let wc = w.as_complex();
    let integrand = |x: f64| Complex64::cis(p * x) / (Complex64::new(x, 0.0) - wc);
    let raw = if p == 0.0 {
        integrate_finite_with_breaks(integrand, -r, r, &[w.xi], tol)?
    } else {
        let edges = panel_edges(-r, r, PI / p.abs().max(1.0));
        integrate_panels(integrand, &edges, &[], tol)?
    };
    Ok(raw.scale(Complex64::new(0.0, -1.0 / (2.0 * PI))))
}

/// Bound on the arc integral `|I_R|` over the half-circle of radius `R`:
/// `(2/(1 − |w|/R)) · (π/(2pR)) · (1 − e^{−pR})`, which never exceeds
/// `2π/(pR)`.
pub fn semicircle_bound(p: f64, r: f64, w_modulus: f64) -> Result<f64> {
    if !(p > 0.0) || p.is_infinite() {
        return Err(Error::Domain(format!("semicircle_bound requires p > 0, got {p}")));
    }
    if !(w_modulus >= 0.0) || !(r.is_finite() && r > 2.0 * w_modulus) {
        return Err(Error::Domain(format!(
            "semicircle_bound requires R > 2|w|, got R = {r}, |w| = {w_modulus}"
        )));
    }
    let pr = p * r;
    Ok(2.0 / (1.0 - w_modulus / r) * (PI / (2.0 * pr)) * (-(-pr).exp_m1()))
}

/// Closed form of `∫_{−R}^{R} dx/((x − ξ) − iη)`:
/// `½ log[((1−ξ/R)² + (η/R)²)/((1+ξ/R)² + (η/R)²)] + i[atan((R−ξ)/η) + atan((R+ξ)/η)]`.
/// Tends to `iπ` as `R → ∞`.
pub fn pv_zero_closed_form(w: ComplexParameter, r: f64) -> Result<Complex64> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("R must be positive, got {r}")));
    }
    let (xi, eta) = (w.xi, w.eta);
    let q = (xi * xi + eta * eta) / (r * r);
    // ln(1 ∓ 2ξ/R + |w|²/R²), written with ln_1p to keep accuracy at large R.
    let log_ratio = 0.5 * ((-2.0 * xi / r + q).ln_1p() - (2.0 * xi / r + q).ln_1p());
    let angle = ((r - xi) / eta).atan() + ((r + xi) / eta).atan();
    Ok(Complex64::new(log_ratio, angle))
}

/// The two arc integrals compared by Jordan's inequality, for `a = pR > 0`:
/// `(∫_0^{π/2} e^{−2aθ/π} dθ, ∫_0^{π/2} e^{−a sin θ} dθ)`. The first dominates
/// the second because `sin θ ≥ 2θ/π` on `[0, π/2]`.
pub fn jordan_arc_integrals(a: f64) -> Result<(f64, f64)> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain(format!("pR must be positive, got {a}")));
    }
    let tol = Tolerance::default();
    let linear = integrate_finite(|t| Complex64::new((-2.0 * a * t / PI).exp(), 0.0), 0.0, PI / 2.0, &tol)?;
    let sine = integrate_finite(|t| Complex64::new((-a * t.sin()).exp(), 0.0), 0.0, PI / 2.0, &tol)?;
    Ok((linear.value.re, sine.value.re))
}
