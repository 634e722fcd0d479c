//! Means of the lower-bound witness characters under the `k`-th convolution
//! power of each walk. Values can be astronomically large, so they are
//! returned as [`LogScalar`].

use crate::error::{domain, Result};
use crate::numerics::{wallis_ratio, LogScalar};

fn check_k(k: f64) -> Result<()> {
    if !(k >= 0.0 && k.is_finite()) {
        return Err(domain(format!("k = {k} must be a non-negative number")));
    }
    Ok(())
}

/// `h(φ^{*k}(χ_{u ⊗ ū}))` for the free unitary walk with parameter `N - τ`:
/// `(N² - 1) (((N-τ)² - 1)/(N² - 1))^k`.
pub fn chi2_expectation_unitary(n: u64, tau: f64, k: f64) -> Result<LogScalar> {
    check_k(k)?;
    let nf = n as f64;
    let t = nf - tau;
    if !(tau >= 0.0 && t * t > 1.0 && n >= 2) {
        return Err(domain(format!(
            "need 0 <= τ and (N-τ)^2 > 1, got N = {n}, τ = {tau}"
        )));
    }
    let a = nf * nf - 1.0;
    // ((N-τ)^2 - 1)/(N^2 - 1) = 1 - τ(2N - τ)/(N^2 - 1)
    let log_ratio = (-tau * (2.0 * nf - tau) / a).ln_1p();
    Ok(LogScalar::from_ln(a.ln() + k * log_ratio))
}

/// `φ^{*k}(χ_2)` for the free wreath walk: `(N - 1)((N - τ - 1)/(N - 1))^k`.
pub fn chi2_expectation_wreath(n: u64, tau: f64, k: f64) -> Result<LogScalar> {
    check_k(k)?;
    let nf = n as f64;
    if !(tau >= 0.0 && nf - tau - 1.0 > 0.0) {
        return Err(domain(format!(
            "need 0 <= τ < N - 1, got N = {n}, τ = {tau}"
        )));
    }
    Ok(LogScalar::from_ln(
        (nf - 1.0).ln() + k * (-tau / (nf - 1.0)).ln_1p(),
    ))
}

/// `φ(χ)` for the witness `χ = χ_u + χ_ū` under the Porod mixture:
/// `2(N - 2 W_{N+1}/W_{N-1}) = 2(N - 2N/(N+1))`.
pub fn mixture_phi_chi(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(domain(format!("N = {n} must be at least 2")));
    }
    let nf = n as f64;
    Ok(2.0 * (nf - 2.0 * wallis_ratio(n - 1, 1)))
}

/// `φ^{*k}(χ) = 2N (φ(χ)/(2N))^k` for the Porod mixture.
pub fn chi_expectation_mixture(n: u64, k: f64) -> Result<LogScalar> {
    check_k(k)?;
    let phi = mixture_phi_chi(n)?;
    let nf = n as f64;
    let c = phi / (2.0 * nf);
    Ok(LogScalar::from_ln((2.0 * nf).ln() + k * c.ln()))
}
