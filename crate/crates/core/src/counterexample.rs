//! A continuous integrable function on `[0, π]` whose truncated inversion
//! integrals at the origin do not tend to `f(0) = 0`.
//!
//! Piece `k` is `a_k sin(n_k t)` on `[π/n_k, π/n_{k−1}]` with `a_k = 1/k²`,
//! `N_k = 2^{k³}` and `n_k = N_1⋯N_k = 2^{e_k}`, `e_k = (k(k+1)/2)²`. Every
//! `n_k` is a power of two, so exact arithmetic reduces to exponent
//! bookkeeping plus big rationals for the sums.

use std::f64::consts::{LN_2, PI};

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{
    integrate_finite, integrate_oscillatory, integrate_panels, panel_edges, HalfLine, QuadratureOutcome, Tolerance,
};
use crate::testfns::{Support, TestFunction};

/// Largest `e_k` for which `π/n_k` is a normal double.
const MAX_FLOAT_EXPONENT: u64 = 1000;

/// Depth cap for direct quadrature of `J_k`; piece 3 alone has ~2²⁶ periods.
pub const DIRECT_JK_MAX_DEPTH: u32 = 2;

/// Truncation of the construction to its first `depth` pieces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleSpec {
    pub depth: u32,
}

impl CounterexampleSpec {
    pub fn new(depth: u32) -> Result<Self> {
        if depth == 0 {
            return Err(Error::Domain("depth must be at least 1".into()));
        }
        Ok(Self { depth })
    }

    /// `a_k = 1/k²`
    pub fn a(k: u32) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(u64::from(k) * u64::from(k)))
    }

    pub fn a_f64(k: u32) -> f64 {
        1.0 / (f64::from(k) * f64::from(k))
    }

    /// `log₂ N_k = k³`
    pub fn log2_big_n(k: u32) -> u64 {
        u64::from(k).pow(3)
    }

    /// `N_k = 2^{k³}`
    pub fn big_n(k: u32) -> BigUint {
        BigUint::one() << Self::log2_big_n(k)
    }

    /// `log₂ n_k = Σ_{j≤k} j³ = (k(k+1)/2)²`
    pub fn log2_n(k: u32) -> u64 {
        let t = u64::from(k) * (u64::from(k) + 1) / 2;
        t * t
    }

    /// `n_k = N_1⋯N_k`, `n_0 = 1`
    pub fn n(k: u32) -> BigUint {
        BigUint::one() << Self::log2_n(k)
    }

    /// `n_k` as a product, independent of the closed exponent.
    pub fn n_by_product(k: u32) -> BigUint {
        (1..=k).fold(BigUint::one(), |acc, j| acc * Self::big_n(j))
    }
}

/// `sin(πr)`, exact at multiples of 1/2.
fn sin_pi(r: f64) -> f64 {
    let r = r.rem_euclid(2.0);
    let (r, sign) = if r >= 1.0 { (r - 1.0, -1.0) } else { (r, 1.0) };
    let r = if r > 0.5 { 1.0 - r } else { r };
    if r == 0.0 {
        return 0.0;
    }
    if r == 0.5 {
        return sign;
    }
    sign * (PI * r).sin()
}

/// Piece index `k` with `π/n_k ≤ t ≤ π/n_{k−1}`, if any, for `t ≤ π`.
fn piece_for_float(t: f64, depth: u32) -> Option<u32> {
    if !(t > 0.0 && t <= PI) {
        return None;
    }
    (1..=depth).find(|&k| {
        let lo = libm_ldexp(PI, -(CounterexampleSpec::log2_n(k) as i32));
        t >= lo
    })
}

fn libm_ldexp(x: f64, e: i32) -> f64 {
    // Two steps keep intermediate powers of two inside the normal range.
    let half = e / 2;
    x * 2f64.powi(half) * 2f64.powi(e - half)
}

/// Evaluation of the truncated construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counterexample {
    pub spec: CounterexampleSpec,
}

impl Counterexample {
    /// `f(t)` for a double `t`. `n_k t` is formed by exact power-of-two
    /// scaling; depths whose breakpoints underflow are a precision error.
    pub fn try_eval(&self, t: f64) -> Result<f64> {
        if !t.is_finite() {
            return Err(Error::Domain(format!("t must be finite, got {t}")));
        }
        let Some(k) = piece_for_float(t, self.spec.depth) else {
            return Ok(0.0);
        };
        let e = CounterexampleSpec::log2_n(k);
        if e > MAX_FLOAT_EXPONENT {
            return Err(Error::Precision(format!(
                "piece {k} needs n_k = 2^{e}, beyond double range; use eval_pi_multiple"
            )));
        }
        Ok(CounterexampleSpec::a_f64(k) * libm_ldexp(t, e as i32).sin())
    }

    /// [`Self::try_eval`] with precision failures mapped to NaN.
    pub fn eval(&self, t: f64) -> f64 {
        self.try_eval(t).unwrap_or(f64::NAN)
    }

    /// `f(πq)` for rational `q`, with `n_k q mod 2` reduced exactly.
    pub fn eval_pi_multiple(&self, q: &BigRational) -> Result<f64> {
        let zero = BigRational::zero();
        if q <= &zero || q > &BigRational::one() {
            return Ok(0.0);
        }
        for k in 1..=self.spec.depth {
            let lo = BigRational::new(BigInt::one(), BigInt::from(CounterexampleSpec::n(k)));
            if q >= &lo {
                let prod = q * BigRational::from_integer(BigInt::from(CounterexampleSpec::n(k)));
                let two = BigRational::from_integer(BigInt::from(2));
                let reduced = &prod - (&prod / &two).floor() * &two;
                let r = reduced
                    .to_f64()
                    .ok_or_else(|| Error::Precision("reduced argument not representable".into()))?;
                return Ok(CounterexampleSpec::a_f64(k) * sin_pi(r));
            }
        }
        Ok(0.0)
    }

    fn deriv(&self, t: f64) -> f64 {
        match piece_for_float(t, self.spec.depth) {
            Some(k) if CounterexampleSpec::log2_n(k) <= MAX_FLOAT_EXPONENT => {
                let e = CounterexampleSpec::log2_n(k) as i32;
                CounterexampleSpec::a_f64(k) * libm_ldexp(1.0, e) * libm_ldexp(t, e).cos()
            }
            Some(_) => f64::NAN,
            None => 0.0,
        }
    }
}

/// The truncated construction as a catalog-style function.
///
/// At finite depth the function is piecewise smooth, hence absolutely
/// continuous with `‖f′‖₁` equal to the variation partial sum; the flags
/// say so. The obstruction only appears in the limit.
pub fn build(spec: CounterexampleSpec) -> TestFunction {
    let c = Counterexample { spec };
    let depth = spec.depth;
    let lo = libm_ldexp(PI, -(CounterexampleSpec::log2_n(depth).min(1074) as i32));
    let l1: f64 = (1..=depth)
        .map(|k| {
            let big_n = 2f64.powi(CounterexampleSpec::log2_big_n(k).min(1023) as i32);
            let n_k = 2f64.powi(CounterexampleSpec::log2_n(k).min(1023) as i32);
            CounterexampleSpec::a_f64(k) * (big_n - 1.0) * 2.0 / n_k
        })
        .sum();
    let variation = variation_partial_sum(depth).to_f64().unwrap_or(f64::INFINITY);
    let kinks: Vec<f64> = (0..=depth)
        .map(|k| libm_ldexp(PI, -(CounterexampleSpec::log2_n(k).min(1074) as i32)))
        .collect();
    TestFunction::new(format!("counterexample{depth}"), move |t| c.eval(t))
        .with_description(format!("a_k sin(n_k t) on [pi/n_k, pi/n_(k-1)], k <= {depth}"))
        .with_derivative(move |t| c.deriv(t))
        .with_support(Support::Interval { lo, hi: PI })
        .with_kinks(kinks)
        .with_flags(true, true, true)
        .with_norms(l1, 1.0, Some(variation))
}

/// `2 Σ_{k≤K} (N_k − 1)/k²`, exactly.
pub fn variation_partial_sum(depth: u32) -> BigRational {
    let mut total = BigRational::zero();
    for k in 1..=depth {
        let big_n = BigRational::from_integer(BigInt::from(CounterexampleSpec::big_n(k)));
        total += (big_n - BigRational::one()) * CounterexampleSpec::a(k);
    }
    total * BigRational::from_integer(BigInt::from(2))
}

/// `∫_a^b cos(t)/t dt` for `0 < a < b` on panels of width `π`.
pub fn cos_over_t(a: f64, b: f64, tol: &Tolerance) -> Result<QuadratureOutcome> {
    if !(a > 0.0 && a < b) || !b.is_finite() {
        return Err(Error::InvalidInterval { a, b });
    }
    let edges = panel_edges(a, b, PI);
    integrate_panels(|t| Complex64::new(t.cos() / t, 0.0), &edges, &[], tol)
}

/// `∫_0^∞ cos(u)/(y + u) du` for `y > 0` (equal to `∫_y^∞ cos t/t dt` when
/// `y` is a multiple of `2π`).
fn shifted_cos_tail(y: f64, tol: &Tolerance) -> Result<QuadratureOutcome> {
    if y > ASYMPTOTIC_FROM {
        return Ok(auxiliary_g_asymptotic(y));
    }
    integrate_oscillatory(|u| Complex64::new(1.0 / (y + u), 0.0), 1.0, HalfLine::From(0.0), tol)
        .map(|o| QuadratureOutcome { value: Complex64::new(o.value.re, 0.0), ..o })
}

/// Beyond this the asymptotic series is accurate to rounding.
const ASYMPTOTIC_FROM: f64 = 200.0;

/// `∫_0^∞ cos(u)/(y + u) du ~ Σ_j (−1)^j (2j+1)!/y^{2j+2}`, truncated at
/// its smallest term, which also bounds the error.
fn auxiliary_g_asymptotic(y: f64) -> QuadratureOutcome {
    let inv2 = 1.0 / (y * y);
    let mut term = inv2;
    let mut sum = 0.0;
    let mut j = 0u32;
    loop {
        let next = -term * f64::from((2 * j + 2) * (2 * j + 3)) * inv2;
        sum += term;
        if next.abs() >= term.abs() || next.abs() <= f64::EPSILON * sum.abs() {
            return QuadratureOutcome::exact(Complex64::new(sum, 0.0)).with_extra_error(next.abs());
        }
        term = next;
        j += 1;
    }
}

/// The constant bounding every `|∫_x^y cos t/t dt|` with `π/2 ≤ x < y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossTermConstant {
    pub value: f64,
    pub error_estimate: f64,
    /// `lim_{x→∞} ∫_{π/2}^{x} cos t/t dt`
    pub limit: f64,
}

/// Lobes needed before the alternating envelope pins the extrema.
const LOBES: usize = 8;

/// `C = max G − min G` with `G(x) = ∫_{π/2}^{x} cos t/t dt`.
///
/// `G` has its extrema at odd multiples of `π/2`; the lobe integrals
/// alternate in sign with decreasing magnitude, so after the first few
/// lobes every later extremum and the limit lie between two earlier ones.
pub fn cross_term_constant() -> Result<CrossTermConstant> {
    let tol = Tolerance::new(1e-14, 1e-13, 2000)?;
    let mut g = vec![0.0];
    let mut err = 0.0;
    for j in 0..LOBES {
        let a = (2 * j + 1) as f64 * PI / 2.0;
        let lobe = integrate_finite(|t| Complex64::new(t.cos() / t, 0.0), a, a + PI, &tol)?;
        err += lobe.error_estimate;
        g.push(g.last().copied().unwrap_or(0.0) + lobe.value.re);
    }
    let start = (2 * LOBES + 1) as f64 * PI / 2.0;
    let tail = integrate_oscillatory(|t| Complex64::new(1.0 / t, 0.0), 1.0, HalfLine::From(start), &Tolerance::default())?;
    let limit = g.last().copied().unwrap_or(0.0) + tail.value.re;
    let max = g.iter().copied().fold(limit, f64::max);
    let min = g.iter().copied().fold(limit, f64::min);
    Ok(CrossTermConstant {
        value: max - min,
        error_estimate: err + tail.error_estimate,
        limit,
    })
}

/// The `m = k` term of `J_k`, split as `log_part + cosint_part`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MainTerm {
    pub k: u32,
    /// `(a_k/2) log N_k = (k log 2)/2`
    pub log_part: f64,
    /// `−(a_k/2) ∫_{2π}^{2πN_k} cos t/t dt`
    pub cosint_part: f64,
    pub error_estimate: f64,
}

impl MainTerm {
    pub fn total(&self) -> f64 {
        self.log_part + self.cosint_part
    }
}

/// Main term of `J_k`. The cosine integral is split at `2π` and `2πN_k`
/// into two shifted tails `∫_0^∞ cos u/(y + u) du`, avoiding huge
/// arguments; past `y ≈ 10^300` the far tail is below the smallest double.
pub fn jk_main_term(k: u32) -> Result<MainTerm> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let a = CounterexampleSpec::a_f64(k);
    let log_part = a / 2.0 * CounterexampleSpec::log2_big_n(k) as f64 * LN_2;
    let tol = Tolerance::default();
    let head = shifted_cos_tail(2.0 * PI, &tol)?;
    let e = CounterexampleSpec::log2_big_n(k);
    let (far, far_err) = if e <= 1000 {
        let o = shifted_cos_tail(2.0 * PI * 2f64.powi(e as i32), &tol)?;
        (o.value.re, o.error_estimate)
    } else {
        // 0 < g(y) < 1/y² < 2^{−2000}
        (0.0, 0.0)
    };
    Ok(MainTerm {
        k,
        log_part,
        cosint_part: -a / 2.0 * (head.value.re - far),
        error_estimate: a / 2.0 * (head.error_estimate + far_err),
    })
}

/// `C Σ_{m≤K, m≠k} a_m`, bounding the cross terms of `J_k`.
pub fn jk_cross_bound(k: u32, depth: u32, c: f64) -> Result<f64> {
    if k == 0 || k > depth {
        return Err(Error::Domain(format!("need 1 <= k <= K, got k = {k}, K = {depth}")));
    }
    Ok(c * (1..=depth).filter(|&m| m != k).map(CounterexampleSpec::a_f64).sum::<f64>())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertificateRow {
    pub k: u32,
    pub log_part: f64,
    pub cross_bound: f64,
    /// `log_part − (a_k/2) C − cross_bound`
    pub lower_bound: f64,
}

/// Lower bounds on `J_k` for `k ≤ K`; they grow like `(k log 2)/2`.
pub fn jk_growth_certificate(depth: u32) -> Result<Vec<CertificateRow>> {
    if depth == 0 {
        return Err(Error::Domain("depth must be at least 1".into()));
    }
    let c = cross_term_constant()?.value;
    (1..=depth)
        .map(|k| {
            let log_part = CounterexampleSpec::a_f64(k) / 2.0 * CounterexampleSpec::log2_big_n(k) as f64 * LN_2;
            let cross = jk_cross_bound(k, depth, c)?;
            Ok(CertificateRow {
                k,
                log_part,
                cross_bound: cross,
                lower_bound: log_part - CounterexampleSpec::a_f64(k) / 2.0 * c - cross,
            })
        })
        .collect()
}

/// Slope of the certificate between its last two rows.
pub fn certificate_slope(rows: &[CertificateRow]) -> Option<f64> {
    match rows {
        [.., a, b] => Some((b.lower_bound - a.lower_bound) / f64::from(b.k - a.k)),
        _ => None,
    }
}

/// `J_k` split into the main term and exactly evaluated cross terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JkDecomposition {
    pub k: u32,
    pub depth: u32,
    pub main: MainTerm,
    /// `(m, term)` for `m ≠ k`
    pub cross: Vec<(u32, f64)>,
    pub total: f64,
    pub error_estimate: f64,
}

fn float_n(k: u32) -> f64 {
    2f64.powi(CounterexampleSpec::log2_n(k) as i32)
}

/// Main term plus cross terms of `J_k` over pieces `m ≤ depth`, each cross
/// term reduced to two cosine integrals.
pub fn jk_decomposition(k: u32, depth: u32) -> Result<JkDecomposition> {
    if k == 0 || k > depth || depth > DIRECT_JK_MAX_DEPTH + 8 {
        return Err(Error::Domain(format!("need 1 <= k <= K (small), got k = {k}, K = {depth}")));
    }
    let tol = Tolerance::default();
    let main = jk_main_term(k)?;
    let nk = float_n(k);
    let mut cross = Vec::new();
    let mut err = main.error_estimate;
    for m in (1..=depth).filter(|&m| m != k) {
        let (nm, nm1) = (float_n(m), float_n(m - 1));
        let diff = (nk - nm).abs();
        let sum = nk + nm;
        let lower = cos_over_t(PI * diff / nm, PI * diff / nm1, &tol)?;
        let upper = cos_over_t(PI * sum / nm, PI * sum / nm1, &tol)?;
        let a = CounterexampleSpec::a_f64(m);
        cross.push((m, a / 2.0 * (lower.value.re - upper.value.re)));
        err += a / 2.0 * (lower.error_estimate + upper.error_estimate);
    }
    let total = main.total() + cross.iter().map(|c| c.1).sum::<f64>();
    Ok(JkDecomposition {
        k,
        depth,
        main,
        cross,
        total,
        error_estimate: err,
    })
}

/// `J_k = ∫ f(t) sin(n_k t)/t dt` by direct quadrature over pieces
/// `m ≤ depth`, on panels no wider than a quarter period of the faster
/// factor. `depth` is capped at `max_depth`.
pub fn direct_jk(k: u32, depth: u32, max_depth: u32) -> Result<QuadratureOutcome> {
    if depth > max_depth {
        return Err(Error::Precondition(format!(
            "direct J_k quadrature is capped at depth {max_depth}, got {depth}"
        )));
    }
    if k == 0 || k > depth {
        return Err(Error::Domain(format!("need 1 <= k <= K, got k = {k}, K = {depth}")));
    }
    let tol = Tolerance::new(1e-12, 1e-12, 2000)?;
    let nk = float_n(k);
    let mut total = QuadratureOutcome::zero();
    for m in 1..=depth {
        let (nm, nm1) = (float_n(m), float_n(m - 1));
        let a = CounterexampleSpec::a_f64(m);
        let integrand = move |t: f64| Complex64::new(a * (nm * t).sin() * (nk * t).sin() / t, 0.0);
        let edges = panel_edges(PI / nm, PI / nm1, PI / (2.0 * (nk + nm)));
        total = total.combine(integrate_panels(integrand, &edges, &[], &tol)?);
    }
    Ok(total)
}
