//! Sequence acceleration for oscillating or algebraically converging partial
//! sums.
//!
//! Two families live here: repeated neighbour averaging (the Euler-style
//! transformation used on alternating cell sums), and a guarded geometric
//! extrapolation that handles monotone `O(1/R)` partials where averaging
//! makes things worse.

use num_complex::Complex64;

/// Relative agreement required between consecutive difference ratios.
const RATIO_AGREEMENT: f64 = 0.1;

/// Average consecutive entries repeatedly until one value remains.
///
/// For an alternating sequence of partial sums whose terms vary smoothly this
/// is the Euler transformation applied to the tail. Empty input yields zero.
pub fn iterated_average(seq: &[Complex64]) -> Complex64 {
    if seq.is_empty() {
        return Complex64::new(0.0, 0.0);
    }
    let mut level: Vec<Complex64> = seq.to_vec();
    while level.len() > 1 {
        level = level.windows(2).map(|w| (w[0] + w[1]) * 0.5).collect();
    }
    level[0]
}

/// Mean of the last two entries (one Euler step). Falls back to the single
/// entry when only one is available.
pub fn pairwise_average(seq: &[Complex64]) -> Complex64 {
    match seq {
        [] => Complex64::new(0.0, 0.0),
        [only] => *only,
        [.., a, b] => (*a + *b) * 0.5,
    }
}

/// Guarded Aitken extrapolation on the last three entries.
///
/// Extrapolation is applied only when the recent difference ratios agree (a
/// geometric error signature, e.g. `c/R` partials on a doubling ladder give a
/// ratio of 1/2). Up to three consecutive ratios are compared, each within
/// 10% of the newest. Otherwise the last entry is returned unchanged.
pub fn guarded_extrapolation(seq: &[Complex64]) -> Complex64 {
    let n = seq.len();
    let last = seq.last().copied().unwrap_or_default();
    if n < 3 {
        return last;
    }
    let scale = 1.0 + last.norm();
    let diffs: Vec<Complex64> = seq[n.saturating_sub(5)..].windows(2).map(|w| w[1] - w[0]).collect();
    if diffs.iter().any(|d| d.norm() <= 1e-14 * scale) {
        return last;
    }
    let ratios: Vec<Complex64> = diffs.windows(2).map(|w| w[1] / w[0]).collect();
    let rho = *ratios.last().expect("at least one ratio");
    // Ratio must be (nearly) real and strictly inside the unit disc.
    if rho.im.abs() > 0.05 * rho.norm() || rho.re.abs() >= 0.95 {
        return last;
    }
    if ratios.iter().any(|r| (r - rho).norm() > RATIO_AGREEMENT * rho.norm()) {
        return last;
    }
    let r = rho.re;
    let d = *diffs.last().expect("at least one difference");
    last + d * (r / (1.0 - r))
}
