//! Closed-form capacities and mutual information of the noisy protocol.
//!
//! Everything here depends on the state only through the surviving coherence
//! magnitude `x = |κ_A|^{2(1+K)}` seen by Bob's measurement (equal stage
//! durations, equal marginal variances).

use std::f64::consts::LN_2;

use super::encoding::SchemeKind;
use crate::error::{check_range, Result};
use crate::quantum::binary_entropy;

/// Below this distance from 1, the three-state formula switches to its limit.
pub const LIMIT_TOL: f64 = 1e-12;

/// Surviving coherence magnitude |κ_A|^{2(1+K)} after both noise stages.
///
/// Uses `0⁰ = 1`, so K = −1 gives 1 for every |κ_A|, including zero.
pub fn effective_visibility(kappa_abs: f64, k: f64) -> Result<f64> {
    check_range("kappa_abs", kappa_abs, 0.0, 1.0, "[0, 1]")?;
    check_range("k", k, -1.0, 1.0, "[-1, 1]")?;
    let exponent = 2.0 * (1.0 + k);
    if exponent == 0.0 {
        if kappa_abs == 0.0 {
            log::warn!("effective_visibility at kappa_abs = 0, k = -1: taking 0^0 = 1");
        }
        return Ok(1.0);
    }
    Ok(kappa_abs.powf(exponent))
}

/// Capacity with noise on Alice's side only: 2 − H((1 + |κ_A|)/2).
pub fn capacity_pre_encoding(kappa_abs: f64) -> Result<f64> {
    check_range("kappa_abs", kappa_abs, 0.0, 1.0, "[0, 1]")?;
    Ok(2.0 - binary_entropy((1.0 + kappa_abs) / 2.0)?)
}

/// Capacity when Bob adds correlated noise of equal duration:
/// 2 − H((1 + |κ_A|^{2(1+K)})/2).
pub fn capacity_bob_noise(kappa_abs: f64, k: f64) -> Result<f64> {
    let m = effective_visibility(kappa_abs, k)?;
    Ok(2.0 - binary_entropy((1.0 + m) / 2.0)?)
}

/// Three-state mutual information at coherence `x`, natural-log form, before the offset.
pub(crate) fn i3_of_visibility(x: f64) -> f64 {
    if 1.0 - x < LIMIT_TOL {
        return 3f64.log2();
    }
    (2.0 * x * x.atanh() + (-27.0 / 4.0 * (-1.0 + x)).ln() + (1.0 + x).ln()) / 8f64.ln()
}

/// Four-state mutual information at coherence `x`, before the offset.
pub(crate) fn i4_of_visibility(x: f64) -> f64 {
    let lower = if x >= 1.0 { 0.0 } else { (1.0 - x) * (2.0 - 2.0 * x).ln() };
    (lower + (1.0 + x) * (2.0 + 2.0 * x).ln()) / (2.0 * LN_2)
}

pub(crate) fn mi_of_visibility(kind: SchemeKind, x: f64) -> f64 {
    match kind {
        SchemeKind::ThreeState => i3_of_visibility(x),
        SchemeKind::FourState => i4_of_visibility(x),
    }
}

fn check_offset(s: f64) -> Result<()> {
    check_range("s", s, 0.0, f64::MAX, "[0, inf)")
}

/// Mutual information of three-state encoding in bits, minus the
/// imperfection offset `s` and floored at zero.
pub fn closed_form_i3(kappa_abs: f64, k: f64, s: f64) -> Result<f64> {
    check_offset(s)?;
    let x = effective_visibility(kappa_abs, k)?;
    Ok((i3_of_visibility(x) - s).max(0.0))
}

/// Mutual information of four-state encoding in bits, minus `s`, floored at zero.
pub fn closed_form_i4(kappa_abs: f64, k: f64, s: f64) -> Result<f64> {
    check_offset(s)?;
    let x = effective_visibility(kappa_abs, k)?;
    Ok((i4_of_visibility(x) - s).max(0.0))
}

/// [`closed_form_i3`] or [`closed_form_i4`] by scheme.
pub fn closed_form_mi(kind: SchemeKind, kappa_abs: f64, k: f64, s: f64) -> Result<f64> {
    match kind {
        SchemeKind::ThreeState => closed_form_i3(kappa_abs, k, s),
        SchemeKind::FourState => closed_form_i4(kappa_abs, k, s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn visibility_conventions() {
        assert_eq!(effective_visibility(0.3, -1.0).unwrap(), 1.0);
        assert_eq!(effective_visibility(0.0, -1.0).unwrap(), 1.0);
        assert_eq!(effective_visibility(0.0, -0.5).unwrap(), 0.0);
        assert_eq!(effective_visibility(0.5, 0.0).unwrap(), 0.25);
        for k in [-1.0, -0.3, 0.0, 0.8, 1.0] {
            assert_eq!(effective_visibility(1.0, k).unwrap(), 1.0);
        }
        assert!(effective_visibility(1.1, 0.0).is_err());
        assert!(effective_visibility(0.5, -1.1).is_err());
    }

    #[test]
    fn pre_encoding_capacity() {
        assert_eq!(capacity_pre_encoding(1.0).unwrap(), 2.0);
        assert_eq!(capacity_pre_encoding(0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(capacity_pre_encoding(0.6065).unwrap(), 1.2845, epsilon = 2e-4);
        assert_abs_diff_eq!(capacity_pre_encoding(0.6065).unwrap(), 1.284_619_720_496_422_7, epsilon = 1e-12);
    }

    #[test]
    fn bob_noise_capacity() {
        assert_eq!(capacity_bob_noise(0.163, -1.0).unwrap(), 2.0);
        for k in [-0.7, 0.0, 0.5] {
            assert_eq!(capacity_bob_noise(1.0, k).unwrap(), 2.0);
        }
        for kappa in [0.1, 0.4, 0.8] {
            assert_abs_diff_eq!(
                capacity_bob_noise(kappa, 0.0).unwrap(),
                capacity_pre_encoding(kappa * kappa).unwrap(),
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn three_state_endpoints() {
        assert_abs_diff_eq!(closed_form_i3(0.5, -1.0, 0.0).unwrap(), 3f64.log2(), epsilon = 1e-15);
        assert_abs_diff_eq!(
            closed_form_i3(0.0, 0.0, 0.0).unwrap(),
            (27.0f64 / 4.0).ln() / 8f64.ln(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(closed_form_i3(0.0, 0.0, 0.0).unwrap(), 0.918_295_834_054_489_7, epsilon = 1e-15);
        assert_abs_diff_eq!(closed_form_i3(0.163, -1.0, 0.0749).unwrap(), 1.510_062_500_721_156, epsilon = 1e-12);
    }

    #[test]
    fn three_state_formula_approaches_its_limit() {
        let near = i3_of_visibility(1.0 - 1e-9);
        assert!((near - 3f64.log2()).abs() < 1e-7);
    }

    #[test]
    fn four_state_endpoints() {
        assert_eq!(closed_form_i4(1.0, 0.0, 0.0).unwrap(), 2.0);
        assert_abs_diff_eq!(closed_form_i4(0.0, 0.0, 0.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(closed_form_i4(0.163, -0.99995, 0.0975).unwrap(), 1.9012, epsilon = 5e-4);
    }

    #[test]
    fn offset_is_floored_at_zero() {
        assert_eq!(closed_form_i4(0.0, 0.0, 1.5).unwrap(), 0.0);
        assert_eq!(closed_form_i3(0.2, 0.0, 5.0).unwrap(), 0.0);
        assert!(closed_form_i3(0.2, 0.0, -0.1).is_err());
    }
}
