//! Chebyshev-type dimension functions `u_n(t)`, the root `q(t)`, and Wallis
//! integrals.
//!
//! `u_n` satisfies `u_0 = 1`, `u_1 = t`, `u_{n+1} = t u_n - u_{n-1}`. For
//! `t > 2` write `t = q + 1/q` with `0 < q < 1`; then
//! `u_n(t) = q^{-n} (1 - q^{2n+2}) / (1 - q^2)`.

use super::logscalar::LogScalar;
use crate::error::{domain, Result};

/// Parameters must exceed `2 + T_MARGIN` to be treated as "strictly above 2".
pub const T_MARGIN: f64 = 1e-9;

/// Above this value of `n ln t` the recurrence is abandoned for the closed form.
const RECURRENCE_LOG_LIMIT: f64 = 600.0;

fn check_t(t: f64) -> Result<()> {
    if t.is_finite() && t > 2.0 + T_MARGIN {
        Ok(())
    } else {
        Err(domain(format!("parameter t = {t} must exceed 2")))
    }
}

/// `sqrt(t^2 - 4)` computed as `sqrt((t-2)(t+2))`.
fn disc(t: f64) -> f64 {
    ((t - 2.0) * (t + 2.0)).sqrt()
}

/// The root `q(t) = (t - sqrt(t^2-4))/2` in `(0, 1)`.
pub fn q_of(t: f64) -> Result<f64> {
    check_t(t)?;
    Ok(2.0 / (t + disc(t)))
}

/// `q(t)` extended continuously to `t = 2`, where it equals 1.
pub fn q_closed(t: f64) -> Result<f64> {
    if !(t >= 2.0 && t.is_finite()) {
        return Err(domain(format!("q is defined for t >= 2, got {t}")));
    }
    Ok(2.0 / (t + disc(t)))
}

/// `ln u_n(t)` from the closed form.
pub fn log_u(t: f64, n: u64) -> Result<f64> {
    let q = q_of(t)?;
    Ok(log_u_from_q(q.ln(), n))
}

fn log_u_from_q(lq: f64, n: u64) -> f64 {
    let nf = n as f64;
    -nf * lq + (-((2.0 * nf + 2.0) * lq).exp()).ln_1p() - (-(2.0 * lq).exp()).ln_1p()
}

/// `u_n(t)` for `t > 2`.
pub fn u_n(t: f64, n: u64) -> Result<LogScalar> {
    check_t(t)?;
    if (n as f64) * t.ln() < RECURRENCE_LOG_LIMIT {
        let (mut a, mut b) = (1.0, t);
        if n == 0 {
            return Ok(LogScalar::ONE);
        }
        for _ in 1..n {
            let c = t * b - a;
            a = b;
            b = c;
        }
        Ok(LogScalar::from_f64(b))
    } else {
        Ok(LogScalar::from_ln(log_u(t, n)?))
    }
}

/// `[u_0(t), ..., u_{nmax}(t)]` for `t > 2`.
pub fn u_seq(t: f64, nmax: u64) -> Result<Vec<LogScalar>> {
    check_t(t)?;
    let lq = q_of(t)?.ln();
    let lt = t.ln();
    let mut out = Vec::with_capacity(nmax as usize + 1);
    let (mut a, mut b) = (1.0, t);
    for n in 0..=nmax {
        if (n as f64) * lt < RECURRENCE_LOG_LIMIT {
            match n {
                0 => out.push(LogScalar::ONE),
                1 => out.push(LogScalar::from_f64(t)),
                _ => {
                    let c = t * b - a;
                    a = b;
                    b = c;
                    out.push(LogScalar::from_f64(b));
                }
            }
        } else {
            out.push(LogScalar::from_ln(log_u_from_q(lq, n)));
        }
    }
    Ok(out)
}

/// `U_n(t/2)` for any real `t`, by the three-term recurrence.
///
/// For `|t| <= 2` the values stay bounded by `n + 1`; this is the branch used
/// for coefficients whose evaluation point has dropped to or below 2.
pub fn cheb_u(t: f64, n: u64) -> f64 {
    let (mut a, mut b) = (1.0, t);
    if n == 0 {
        return 1.0;
    }
    for _ in 1..n {
        let c = t * b - a;
        a = b;
        b = c;
    }
    b
}

/// `ln |u_n(t)|` for any `t >= 0`: the closed form above 2, the recurrence otherwise.
pub fn log_abs_u(t: f64, n: u64) -> f64 {
    if t > 2.0 + T_MARGIN {
        log_u_from_q((2.0 / (t + disc(t))).ln(), n)
    } else {
        cheb_u(t, n).abs().ln()
    }
}

/// `ln(q(t)/q(s))` for `t, s > 2` without cancellation.
pub fn log_q_ratio(t: f64, s: f64) -> Result<f64> {
    check_t(t)?;
    check_t(s)?;
    // q(t)/q(s) = (s + d_s)/(t + d_t) with d_x = sqrt(x^2 - 4).
    let dt = disc(t);
    let ds = disc(s);
    let ddiff = (s - t) * (s + t) / (ds + dt);
    Ok((((s - t) + ddiff) / (t + dt)).ln_1p())
}

/// `ln(u_n(t)/u_n(s))` for `t, s > 2`, accurate when `t` and `s` are close.
pub fn log_u_ratio(n: u64, t: f64, s: f64) -> Result<f64> {
    let lr = log_q_ratio(t, s)?;
    let lqt = q_of(t)?.ln();
    let lqs = q_of(s)?.ln();
    let nf = n as f64;
    let head = -nf * lr;
    let top = (-((2.0 * nf + 2.0) * lqt).exp()).ln_1p() - (-((2.0 * nf + 2.0) * lqs).exp()).ln_1p();
    let bottom = (-(2.0 * lqt).exp()).ln_1p() - (-(2.0 * lqs).exp()).ln_1p();
    Ok(head + top - bottom)
}

/// Wallis integral `W_n = ∫_0^{π/2} sin^n x dx`.
pub fn wallis(n: u64) -> f64 {
    // W_n = (n-1)/n W_{n-2}, seeded from the parity class.
    let (mut w, start) = if n.is_multiple_of(2) {
        (std::f64::consts::FRAC_PI_2, 2)
    } else {
        (1.0, 3)
    };
    let mut m = start;
    while m <= n {
        w *= (m - 1) as f64 / m as f64;
        m += 2;
    }
    w
}

/// `W_{n+2m} / W_n = Π_{s=1..m} (n+2s-1)/(n+2s)`.
pub fn wallis_ratio(n: u64, m: u64) -> f64 {
    (1..=m)
        .map(|s| (n + 2 * s - 1) as f64 / (n + 2 * s) as f64)
        .product()
}

/// `l`-th moment of `λ = 1 - cos θ` under the Porod law with parameter `N`.
///
/// With the density `|sin(θ/2)|^{N-1} / (4 W_{N-1})` on `[0, 2π)` one has
/// `λ = 2 sin^2(θ/2)`, so the moment equals `2^l W_{N-1+2l} / W_{N-1}`.
pub fn lambda_moment(n: u64, l: u64) -> Result<f64> {
    if n < 2 {
        return Err(domain(format!(
            "Porod parameter N = {n} must be at least 2"
        )));
    }
    Ok(2f64.powi(l as i32) * wallis_ratio(n - 1, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let close = |t: f64, n: u64, v: f64| {
            let got = u_n(t, n).unwrap().to_f64();
            assert!((got - v).abs() < 1e-14 * v, "u_{n}({t}) = {got}");
        };
        close(3.0, 0, 1.0);
        close(3.0, 1, 3.0);
        close(3.0, 2, 8.0);
        close(10.0, 2, 99.0);
        assert!((log_u(10.0, 3).unwrap() - 980f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn rejects_t_at_or_below_two() {
        assert!(q_of(2.0).is_err());
        assert!(q_of(2.0 + 1e-10).is_err());
        assert!(u_n(1.0, 3).is_err());
        assert!(q_of(f64::NAN).is_err());
        assert_eq!(q_closed(2.0).unwrap(), 1.0);
    }

    #[test]
    fn q_is_a_root() {
        for &t in &[2.001, 2.5, 3.0, 10.0, 1e3, 1e8] {
            let q = q_of(t).unwrap();
            assert!(((q + 1.0 / q) - t).abs() / t < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn seq_matches_pointwise() {
        let seq = u_seq(5.5, 500).unwrap();
        for n in [0u64, 1, 7, 100, 357, 358, 359, 500] {
            let a = seq[n as usize].logmag();
            let b = u_n(5.5, n).unwrap().logmag();
            assert!(
                (a - b).abs() <= 1e-11 * (1.0 + a.abs()),
                "n = {n}: {a} vs {b}"
            );
        }
    }

    #[test]
    fn log_u_ratio_matches_difference() {
        for &(t, s) in &[(98.0, 100.0), (2.5, 7.0), (29_998.0, 30_000.0)] {
            for n in [1u64, 5, 40] {
                let direct = log_u(t, n).unwrap() - log_u(s, n).unwrap();
                let r = log_u_ratio(n, t, s).unwrap();
                assert!(
                    (direct - r).abs() < 1e-9 * (1.0 + direct.abs()),
                    "{t} {s} {n}"
                );
            }
        }
    }

    #[test]
    fn log_u_ratio_keeps_small_differences() {
        // t and s differ in the 12th digit: the naive difference of logs
        // loses most significant figures, the ratio must not.
        let s = 1e6;
        let t = s - 1e-6;
        let r = log_u_ratio(1, t, s).unwrap();
        // u_1 = t, so the ratio is ln(t/s).
        let exact = ((t - s) / s).ln_1p();
        assert!((r - exact).abs() < 1e-6 * exact.abs(), "{r} vs {exact}");
    }

    #[test]
    fn wallis_base_cases() {
        assert!((wallis(0) - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert_eq!(wallis(1), 1.0);
        assert!((wallis(2) - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        assert!((wallis(3) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn lambda_moment_first_order() {
        // E[λ] = 2 W_{N+1}/W_{N-1} = 2N/(N+1).
        for n in [2u64, 5, 100] {
            let m = lambda_moment(n, 1).unwrap();
            assert!((m - 2.0 * n as f64 / (n as f64 + 1.0)).abs() < 1e-14);
        }
        assert_eq!(lambda_moment(7, 0).unwrap(), 1.0);
        assert!(lambda_moment(1, 1).is_err());
    }

    #[test]
    fn cheb_u_on_the_interval() {
        // U_n(cos φ) = sin((n+1)φ)/sin φ.
        let phi: f64 = 0.7;
        for n in 0..20u64 {
            let expect = ((n as f64 + 1.0) * phi).sin() / phi.sin();
            assert!((cheb_u(2.0 * phi.cos(), n) - expect).abs() < 1e-12);
        }
        assert_eq!(cheb_u(2.0, 9), 10.0);
    }
}
