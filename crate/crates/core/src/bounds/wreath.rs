use super::tail::{log_geometric_tail, log_negbin_tail, Majorant};
use super::unitary::{binomial, block_logs};
use super::{BoundInterval, TruncationConfig};
use crate::error::{domain, Result};
use crate::numerics::{log_add_exp, LogScalar};
use crate::structures::{log_group_sum_abs_pow, FiniteGroup, GroupState};

/// `A_k` for the free wreath walk with parameter `N - τ` and group state `ψ`.
///
/// Words with `p >= 1` letters contribute
/// `|ψ(γ_1⋯γ_p)|^{2k} Π f(s_i)`; summing over `γ ∈ Γ^p` gives
/// `|Γ|^{p-1} Σ_g |ψ(g)|^{2k}` times a convolution of odd (end) and even
/// (interior) block series, computed exactly up to the truncation.
pub fn a_k_wreath(
    n: u64,
    tau: f64,
    group: &FiniteGroup,
    psi: &GroupState,
    k: f64,
    tc: &TruncationConfig,
) -> Result<BoundInterval> {
    if n < 5 {
        return Err(domain(format!("N = {n} must be at least 5")));
    }
    if !(k >= 0.0 && k.is_finite()) {
        return Err(domain(format!("k = {k} must be a non-negative number")));
    }
    if !(tau >= 0.0 && tau <= n as f64) {
        return Err(domain(format!("τ = {tau} must lie in [0, N]")));
    }
    let t = (n as f64 - tau).sqrt();
    let s = (n as f64).sqrt();
    let mmax = tc.max_total as usize;
    let log_f = block_logs(t, s, k, tc.max_total)?;
    let m = group.order();

    // p = 0: even characters χ_2, χ_4, ...
    let mut partial = f64::NEG_INFINITY;
    for i in (2..=mmax).step_by(2) {
        partial = log_add_exp(partial, log_f[i]);
    }
    let mut terms: u128 = (mmax / 2) as u128;

    let odd: Vec<f64> = (0..=mmax)
        .map(|i| {
            if i % 2 == 1 {
                log_f[i]
            } else {
                f64::NEG_INFINITY
            }
        })
        .collect();
    let even: Vec<f64> = (0..=mmax)
        .map(|i| {
            if i >= 2 && i % 2 == 0 {
                log_f[i]
            } else {
                f64::NEG_INFINITY
            }
        })
        .collect();
    // lead = odd * even^{p-1}, the words before the closing odd block.
    let mut lead = odd.clone();
    for p in 1..=tc.max_p {
        if 2 * p as usize > mmax {
            break;
        }
        if p > 1 {
            lead = log_convolve(&lead, &even);
        }
        let closed = log_convolve(&lead, &odd);
        let series = closed
            .iter()
            .fold(f64::NEG_INFINITY, |acc, &v| log_add_exp(acc, v));
        let group_part = log_group_sum_abs_pow(group, psi, p, 2.0 * k);
        partial = log_add_exp(partial, group_part + series);
        let budget = ((mmax - 2 * p as usize) / 2) as u128;
        terms += (m as u128).pow(p) * binomial(budget + u128::from(p) + 1, u128::from(p) + 1);
    }

    let (tail, certificate) = wreath_tail(t, s, k, group, psi, tc)?;
    Ok(BoundInterval {
        partial: LogScalar::from_ln(partial),
        tail,
        terms_used: terms,
        estimated: false,
        certificate,
    })
}

fn log_convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let len = a.len();
    let mut out = vec![f64::NEG_INFINITY; len];
    for (i, &x) in a.iter().enumerate() {
        if x == f64::NEG_INFINITY {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            if y != f64::NEG_INFINITY {
                out[i + j] = log_add_exp(out[i + j], x + y);
            }
        }
    }
    out
}

/// With `f(s) <= r x^{s-1}` and `K = Σ_g |ψ(g)|^{2k}`:
/// * `p = 0` words beyond the truncation: `r x Σ_{n_0 >= J_0} x^{2n_0}`;
/// * `1 <= p <= P`: `|Γ|^{p-1} K r^{p+1} x^{p-1} Σ_{J >= J_p} C(J+p, p) x^{2J}`;
/// * `p > P`: `K E² Σ_{j >= P} (|Γ| I)^j` with `E = r/(1-x²)`, `I = r x/(1-x²)`.
fn wreath_tail(
    t: f64,
    s: f64,
    k: f64,
    group: &FiniteGroup,
    psi: &GroupState,
    tc: &TruncationConfig,
) -> Result<(Option<LogScalar>, String)> {
    let maj = Majorant::new(t, s, k)?;
    let (lr, lx) = (maj.log_r, maj.log_x);
    if lx >= 0.0 {
        return Ok((None, format!("none: block ratio x = e^{lx:.6} >= 1")));
    }
    let ly = 2.0 * lx;
    let l1my = (-ly.exp()).ln_1p();
    let lm = (group.order() as f64).ln();
    let lk = log_group_sum_abs_pow(group, psi, 1, 2.0 * k);
    let l_e = lr - l1my;
    let l_i = lr + lx - l1my;
    if lm + l_i >= 0.0 {
        return Ok((
            None,
            format!("none: |Γ| r x/(1-x²) = e^{:.6} >= 1", lm + l_i),
        ));
    }
    let mmax = u64::from(tc.max_total);
    let pmax = u64::from(tc.max_p);
    let mut tail = lr + lx + log_negbin_tail(1, ly, mmax / 2).expect("x < 1");
    for p in 1..=pmax {
        let j0 = if mmax < 2 * p {
            0
        } else {
            (mmax - 2 * p) / 2 + 1
        };
        let sp = (p - 1) as f64 * lm + lk;
        let lt = log_negbin_tail(p as u32 + 1, ly, j0).expect("x < 1");
        tail = log_add_exp(tail, sp + (p + 1) as f64 * lr + (p - 1) as f64 * lx + lt);
    }
    let far = lk + 2.0 * l_e + log_geometric_tail(lm + l_i, pmax).expect("checked above");
    tail = log_add_exp(tail, far);
    Ok((
        Some(LogScalar::from_ln(tail)),
        format!("geometric majorant: ln r = {lr:.6}, ln x = {lx:.6}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_zero_counts_dimensions() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let psi = GroupState::haar(&z2);
        let tc = TruncationConfig::new(1, 3).unwrap();
        let b = a_k_wreath(9, 2.0, &z2, &psi, 0.0, &tc).unwrap();
        // χ_2 (dim 8) and χ_1 γ χ_1 for both γ (dim 9 each).
        let expect = 64.0 + 2.0 * 81.0;
        assert!((b.partial.to_f64() / expect - 1.0).abs() < 1e-12);
        assert_eq!(b.terms_used, 3);
    }

    #[test]
    fn haar_state_drops_nontrivial_products() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let psi = GroupState::haar(&z3);
        let tc = TruncationConfig::new(1, 2).unwrap();
        let (n, tau, k) = (30u64, 2.0, 5.0);
        let b = a_k_wreath(n, tau, &z3, &psi, k, &tc).unwrap();
        let f1 = 30f64 * (28f64 / 30.0).powf(k);
        let f2 = 29f64.powi(2) * (27f64 / 29.0).powf(2.0 * k);
        // Only γ = e survives among χ_1 γ χ_1.
        let expect = f2 + f1 * f1;
        assert!((b.partial.to_f64() / expect - 1.0).abs() < 1e-12);
    }
}
