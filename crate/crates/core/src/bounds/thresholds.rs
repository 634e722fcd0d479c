//! Explicit thresholds on `N` beyond which the cut-off estimates hold.

use crate::error::{domain, Result};

/// `C(τ) = 2/(τ√5) (2 + sqrt(2 + 9τ²))`.
pub fn threshold_c(tau: f64) -> Result<f64> {
    check_tau(tau)?;
    Ok(2.0 / (tau * 5f64.sqrt()) * (2.0 + (2.0 + 9.0 * tau * tau).sqrt()))
}

/// `D(τ) = 2/τ + 2τ + sqrt(3τ²/2 + 3)`.
pub fn threshold_d(tau: f64) -> Result<f64> {
    check_tau(tau)?;
    Ok(2.0 / tau + 2.0 * tau + (1.5 * tau * tau + 3.0).sqrt())
}

/// `Q(τ) = τ⁴/28 + 2τ³ - 8τ² + 59τ - 76`, defined for `τ > 7/4`.
pub fn threshold_q(tau: f64) -> Result<f64> {
    if !(tau > 1.75 && tau.is_finite()) {
        return Err(domain(format!("Q(τ) requires τ > 7/4, got {tau}")));
    }
    Ok(tau.powi(4) / 28.0 + 2.0 * tau.powi(3) - 8.0 * tau * tau + 59.0 * tau - 76.0)
}

/// Smallest admissible `N` for the free wreath walk: `Q(τ)/(4τ - 7)`.
pub fn wreath_threshold(tau: f64) -> Result<f64> {
    Ok(threshold_q(tau)? / (4.0 * tau - 7.0))
}

fn check_tau(tau: f64) -> Result<()> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(domain(format!("τ must be positive, got {tau}")));
    }
    Ok(())
}
