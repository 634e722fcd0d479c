//! Geometric majorants for the terms of the Fourier series and the tail sums
//! built from them.

use crate::error::Result;
use crate::numerics::{log_add_exp, q_of, T_MARGIN};

/// Per-block majorant `|u_n(t)|^{2k} u_n(s)^{2-2k} <= r x^{n-1}` for `n >= 1`,
/// stored as logs.
///
/// For `t > 2`, `|u_n(t)| <= q_t^{-n} / (1 - q_t^2)`; for `t <= 2` the bound
/// `|u_n(t)| <= n + 1 <= 2^n` is used. The denominator uses
/// `s q_s^{1-n} <= u_n(s) <= q_s^{-n}/(1 - q_s^2)`, picking the side that
/// matches the sign of `2 - 2k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Majorant {
    pub log_r: f64,
    pub log_x: f64,
}

impl Majorant {
    pub fn new(t: f64, s: f64, k: f64) -> Result<Self> {
        let (la_t, lb_t) = if t > 2.0 + T_MARGIN {
            let q = q_of(t)?;
            (-q.ln() - (-q * q).ln_1p(), -q.ln())
        } else {
            (2f64.ln(), 2f64.ln())
        };
        let qs = q_of(s)?;
        let lb_s = -qs.ln();
        let la_s = if k <= 1.0 {
            -qs.ln() - (-qs * qs).ln_1p()
        } else {
            s.ln()
        };
        let e = 2.0 - 2.0 * k;
        Ok(Self {
            log_r: 2.0 * k * la_t + e * la_s,
            log_x: 2.0 * k * lb_t + e * lb_s,
        })
    }
}

/// `ln Σ_{j >= j0} C(j+d-1, d-1) y^j` for `d >= 1` and `ln y < 0`.
///
/// Terms are added explicitly until they are negligible; the remainder is then
/// bounded by a geometric series using the fact that the ratio of consecutive
/// terms, `y (j+d)/(j+1)`, decreases in `j`. Returns `None` when `y >= 1`.
pub fn log_negbin_tail(d: u32, log_y: f64, j0: u64) -> Option<f64> {
    if !(log_y < 0.0) {
        return None;
    }
    if log_y == f64::NEG_INFINITY {
        return Some(if j0 == 0 { 0.0 } else { f64::NEG_INFINITY });
    }
    let df = f64::from(d);
    let mut log_term: f64 = (1..d)
        .map(|i| ((j0 as f64 + f64::from(i)) / f64::from(i)).ln())
        .sum::<f64>()
        + j0 as f64 * log_y;
    let mut sum = f64::NEG_INFINITY;
    let mut j = j0 as f64;
    for _ in 0..10_000_000u64 {
        sum = log_add_exp(sum, log_term);
        let log_ratio = ((j + df) / (j + 1.0)).ln() + log_y;
        if log_ratio < 0.0 {
            // Remainder <= term * ρ / (1 - ρ).
            let rem = log_term + log_ratio - (-log_ratio.exp()).ln_1p();
            if rem < sum - 40.0 {
                return Some(log_add_exp(sum, rem));
            }
        }
        log_term += log_ratio;
        j += 1.0;
    }
    // Only reachable for y extremely close to 1; fall back to the bound at j.
    let log_ratio = ((j + df) / (j + 1.0)).ln() + log_y;
    if log_ratio < 0.0 {
        let rem = log_term - (-log_ratio.exp()).ln_1p();
        Some(log_add_exp(sum, rem))
    } else {
        None
    }
}

/// `ln Σ_{j >= j0} y^j`.
pub fn log_geometric_tail(log_y: f64, j0: u64) -> Option<f64> {
    if !(log_y < 0.0) {
        return None;
    }
    Some(j0 as f64 * log_y - (-log_y.exp()).ln_1p())
}
