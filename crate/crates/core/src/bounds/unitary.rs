use super::tail::{log_geometric_tail, log_negbin_tail, Majorant};
use super::{BoundInterval, TruncationConfig};
use crate::error::{domain, Result};
use crate::numerics::{log_add_exp, log_u, LogScalar};
use crate::repr::log_abs_ratio;
use crate::structures::CircleMeasure;

/// `ln(|u_n(t)|^{2k} u_n(s)^{2-2k})` for `n = 0..=m`; entry 0 is unused.
pub fn block_logs(t: f64, s: f64, k: f64, m: u32) -> Result<Vec<f64>> {
    let mut out = vec![f64::NEG_INFINITY; m as usize + 1];
    for n in 1..=u64::from(m) {
        let (lr, sign) = log_abs_ratio(n, t, s)?;
        let ls = log_u(s, n)?;
        out[n as usize] = if sign == 0 {
            if k == 0.0 {
                2.0 * ls
            } else {
                f64::NEG_INFINITY
            }
        } else {
            2.0 * k * lr + 2.0 * ls
        };
    }
    Ok(out)
}

/// `A_k = Σ_α d_α² |φ̂(α)|^{2k}` for the free unitary walk with parameter `t`
/// and phase law `ν`, as an exact truncated sum plus a certified tail.
///
/// The explicit part is a dynamic programme over `(Σ n_i, ε_i, partial
/// exponent)`, which visits every word with at most `max_p` blocks and total
/// length at most `max_total` without listing them.
pub fn a_k_unitary(
    n: u64,
    t: f64,
    nu: &CircleMeasure,
    k: f64,
    tc: &TruncationConfig,
) -> Result<BoundInterval> {
    if n < 3 {
        return Err(domain(format!("N = {n} must be at least 3")));
    }
    if !(k >= 0.0 && k.is_finite()) {
        return Err(domain(format!("k = {k} must be a non-negative number")));
    }
    if !(t >= 0.0 && t <= n as f64) {
        return Err(domain(format!("parameter t = {t} must lie in [0, N]")));
    }
    let s = n as f64;
    let pmax = tc.max_p as usize;
    let mmax = tc.max_total as usize;
    let log_f = block_logs(t, s, k, tc.max_total)?;

    // Weight |m_ε|^{2k} for ε in [-pmax, pmax], with 0^0 = 1.
    let width = 2 * pmax + 1;
    let log_w: Vec<f64> = (0..width)
        .map(|i| {
            if k == 0.0 {
                0.0
            } else {
                2.0 * k * nu.moment(i as i64 - pmax as i64).norm().ln()
            }
        })
        .collect();

    // State (s, ε_i, E_i) with E_i = [ε_0]_- + ε_1 + ... + ε_{i-1}.
    let idx = |sum: usize, e: i8, acc: i64| -> usize {
        (sum * 2 + usize::from(e > 0)) * width + (acc + pmax as i64) as usize
    };
    let size = (mmax + 1) * 2 * width;
    let mut cur = vec![f64::NEG_INFINITY; size];
    for eps0 in [-1i8, 1] {
        let acc0 = i64::from(eps0.min(0));
        for (nb, &lf) in log_f.iter().enumerate().skip(1) {
            let e1 = if nb % 2 == 0 { -eps0 } else { eps0 };
            let i = idx(nb, e1, acc0);
            cur[i] = log_add_exp(cur[i], lf);
        }
    }
    let mut partial = f64::NEG_INFINITY;
    for p in 1..=pmax {
        // Close every word with exactly p blocks.
        for sum in p..=mmax {
            for e in [-1i8, 1] {
                for a in 0..width {
                    let v = cur[idx(sum, e, a as i64 - pmax as i64)];
                    if v == f64::NEG_INFINITY {
                        continue;
                    }
                    let eps = a as i64 - pmax as i64 + i64::from(e.max(0));
                    let w = log_w[(eps + pmax as i64) as usize];
                    partial = log_add_exp(partial, v + w);
                }
            }
        }
        if p == pmax {
            break;
        }
        let mut next = vec![f64::NEG_INFINITY; size];
        for sum in p..mmax {
            for e in [-1i8, 1] {
                for a in 0..width {
                    let acc = a as i64 - pmax as i64;
                    let v = cur[idx(sum, e, acc)];
                    if v == f64::NEG_INFINITY {
                        continue;
                    }
                    let acc2 = acc + i64::from(e);
                    for (nb, &lf) in log_f.iter().enumerate().take(mmax - sum + 1).skip(1) {
                        let e2 = if nb % 2 == 0 { -e } else { e };
                        let j = idx(sum + nb, e2, acc2);
                        next[j] = log_add_exp(next[j], v + lf);
                    }
                }
            }
        }
        cur = next;
    }

    let terms_used: u128 = (1..=pmax)
        .map(|p| 2 * binomial(mmax as u128, p as u128))
        .sum();
    let (tail, certificate) = unitary_tail(t, s, k, tc)?;
    Ok(BoundInterval {
        partial: LogScalar::from_ln(partial),
        tail,
        terms_used,
        estimated: false,
        certificate,
    })
}

/// Majorant of every word outside the truncation:
/// `2 Σ_{p > P} ρ^p + 2 Σ_{p <= P} r^p Σ_{j > M-p} C(j+p-1, p-1) x^j`
/// with `ρ = r/(1-x)`.
fn unitary_tail(
    t: f64,
    s: f64,
    k: f64,
    tc: &TruncationConfig,
) -> Result<(Option<LogScalar>, String)> {
    let maj = Majorant::new(t, s, k)?;
    let (lr, lx) = (maj.log_r, maj.log_x);
    if lx >= 0.0 {
        return Ok((None, format!("none: block ratio x = e^{lx:.6} >= 1")));
    }
    let log_rho = lr - (-lx.exp()).ln_1p();
    if log_rho >= 0.0 {
        return Ok((
            None,
            format!("none: word-length ratio r/(1-x) = e^{log_rho:.6} >= 1"),
        ));
    }
    let ln2 = 2f64.ln();
    let pmax = u64::from(tc.max_p);
    let mmax = u64::from(tc.max_total);
    let mut tail = ln2 + log_geometric_tail(log_rho, pmax + 1).expect("ρ < 1");
    for p in 1..=pmax {
        let j0 = mmax - p + 1;
        let lt = log_negbin_tail(p as u32, lx, j0).expect("x < 1");
        tail = log_add_exp(tail, ln2 + p as f64 * lr + lt);
    }
    Ok((
        Some(LogScalar::from_ln(tail)),
        format!("geometric majorant: ln r = {lr:.6}, ln x = {lx:.6}"),
    ))
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_zero_partial_counts_dimensions() {
        // With k = 0 every word contributes d², whatever ν is.
        let tc = TruncationConfig::new(2, 3).unwrap();
        let b = a_k_unitary(5, 5.0, &CircleMeasure::Haar, 0.0, &tc).unwrap();
        // Words: [1],[2],[3],[1,1],[1,2],[2,1], each with two ε_0.
        let d = |n: f64| -> f64 {
            match n as u32 {
                1 => 5.0,
                2 => 24.0,
                3 => 115.0,
                _ => unreachable!(),
            }
        };
        let expect = 2.0
            * (d(1.0).powi(2)
                + d(2.0).powi(2)
                + d(3.0).powi(2)
                + (d(1.0) * d(1.0)).powi(2)
                + 2.0 * (d(1.0) * d(2.0)).powi(2));
        assert!((b.partial.to_f64() / expect - 1.0).abs() < 1e-12);
        assert_eq!(b.terms_used, 12);
        assert!(b.tail.is_none());
    }

    #[test]
    fn haar_measure_kills_nonzero_exponents() {
        let tc = TruncationConfig::new(1, 2).unwrap();
        let k = 3.0;
        let b = a_k_unitary(10, 9.0, &CircleMeasure::Haar, k, &tc).unwrap();
        // Only [2] (exponent 0, twice) survives.
        let ratio = (9.0f64 * 9.0 - 1.0) / 99.0;
        let expect = 2.0 * 99f64.powi(2) * ratio.powf(2.0 * k);
        assert!((b.partial.to_f64() / expect - 1.0).abs() < 1e-12);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(47, 11), 17_417_133_617);
        assert_eq!(binomial(3, 5), 0);
    }
}
