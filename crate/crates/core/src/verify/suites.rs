use std::f64::consts::{E, LN_2, PI};

use super::{GridSpec, VerifyReport};
use crate::bounds::{threshold_c, wreath_threshold};
use crate::error::Result;
use crate::numerics::{
    lambda_moment, log_add_exp, log_u, log_u_ratio, q_closed, q_of, wallis, GaussLegendre,
    DEFAULT_PANELS,
};
use crate::structures::{lambda_theta, porod_integral, tau_theta};

/// Agreement required between the closed-form λ-moments and quadrature.
pub const LAMBDA_REL_TOL: f64 = 1e-8;

fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

/// `t q^{-(n-1)} <= u_n(t) <= q^{-n}/(1 - q²)` for `t > 2`, `n >= 1`,
/// compared in logs. The control raises the lower exponent to `n`.
pub fn verify_encadrement(g: &GridSpec, control: bool) -> Result<VerifyReport> {
    let mut b = VerifyReport::builder(
        "encadrement",
        "t q^{-(n-1)} <= u_n(t) <= q^{-n}/(1-q^2), sides in logs",
        g.tolerance,
    )
    .control(control);
    let (lo, hi, pts) = g.t_range;
    for t in log_grid(lo, hi, pts) {
        let lq = q_of(t)?.ln();
        let l1mq2 = (-(2.0 * lq).exp()).ln_1p();
        for n in 1..=g.index_max {
            let lu = log_u(t, n)?;
            let shift = if control { n } else { n - 1 };
            let lower = t.ln() - shift as f64 * lq;
            b.record(|| format!("lower t={t} n={n}"), lower, lu, lu - lower);
            let upper = -(n as f64) * lq - l1mq2;
            b.record(|| format!("upper t={t} n={n}"), lu, upper, upper - lu);
        }
    }
    Ok(b.finish())
}

/// `N (1 - a/N)^{N ln N / a} >= e^{-a/(2e)} / √2` for `N >= 2a`, in logs.
/// The control drops the factor `1/√2`.
pub fn verify_lower_aux(g: &GridSpec, control: bool) -> Result<VerifyReport> {
    let mut b = VerifyReport::builder(
        "lower_aux",
        "N (1-a/N)^{N ln N/a} >= e^{-a/(2e)}/sqrt(2) for N >= 2a, sides in logs",
        g.tolerance,
    )
    .control(control);
    for &a in &g.params {
        if !(a > 0.0) {
            b.note(format!("a = {a} skipped: must be positive"));
            continue;
        }
        let threshold = (2.0 * a).ceil() as u64;
        for n in g.n.values(threshold) {
            let nf = n as f64;
            let lhs = nf.ln() + nf * nf.ln() / a * (-a / nf).ln_1p();
            let rhs = -a / (2.0 * E) - if control { 0.0 } else { 0.5 * LN_2 };
            b.record(|| format!("a={a} N={n}"), lhs, rhs, lhs - rhs);
        }
    }
    Ok(b.finish())
}

fn main_lhs(n: u64, tau: f64) -> Result<f64> {
    let nf = n as f64;
    let q = q_of(nf - tau)?;
    Ok(nf.ln() + q.ln() + (-q * q).ln_1p())
}

/// `N q(N-τ) (1 - q(N-τ)²) >= e^{τ/N}` for `N >= τ + C(τ)`, in logs.
/// The control doubles the exponent on the right.
pub fn verify_main_inequality(g: &GridSpec, control: bool) -> Result<VerifyReport> {
    let mut b = VerifyReport::builder(
        "main_inequality",
        "N q(N-tau) (1-q(N-tau)^2) >= e^{tau/N} for N >= tau + C(tau), sides in logs",
        g.tolerance,
    )
    .control(control);
    let factor = if control { 2.0 } else { 1.0 };
    for &tau in &g.params {
        let thr = tau + threshold_c(tau)?;
        let threshold = thr.ceil() as u64;
        for n in g.n.values(threshold) {
            let lhs = main_lhs(n, tau)?;
            let rhs = factor * tau / n as f64;
            b.record(|| format!("tau={tau} N={n}"), lhs, rhs, lhs - rhs);
        }
        // Exploratory: where below the threshold the inequality starts to hold.
        let first = tau.floor() as u64 + 3;
        let mut from = None;
        for n in (first..threshold).rev() {
            if main_lhs(n, tau)? >= factor * tau / n as f64 {
                from = Some(n);
            } else {
                break;
            }
        }
        b.note(match from {
            Some(n) => format!("tau={tau}: holds for N >= {n} (stated threshold {thr:.6})"),
            None => format!("tau={tau}: fails just below the stated threshold {thr:.6}"),
        });
    }
    Ok(b.finish())
}

/// `a_N q(N-2) <= 1 + 8/(N-2)²` with `a_N = N - 2 + 2/N`, for `N >= 4`, in
/// logs. The control replaces 8 by 2.
pub fn verify_anqn(g: &GridSpec, control: bool) -> Result<VerifyReport> {
    let mut b = VerifyReport::builder(
        "anqn",
        "(N-2+2/N) q(N-2) <= 1 + 8/(N-2)^2 for N >= 4, sides in logs",
        g.tolerance,
    )
    .control(control);
    let c = if control { 2.0 } else { 8.0 };
    for n in g.n.values(4) {
        let nf = n as f64;
        let lhs = (nf - 2.0 + 2.0 / nf).ln() + q_closed(nf - 2.0)?.ln();
        let rhs = (c / ((nf - 2.0) * (nf - 2.0))).ln_1p();
        b.record(|| format!("N={n}"), lhs, rhs, rhs - lhs);
    }
    Ok(b.finish())
}

/// `u_n(N - τ_θ) / u_n(N - λ_θ) <= e^{4n/(N-2)²}` for `N >= 6` and
/// `θ ∈ [0, 2π)`, in logs. The control shrinks the exponent to `n/(4(N-2)²)`.
pub fn verify_ratio_comparison(g: &GridSpec, control: bool) -> Result<VerifyReport> {
    let mut b = VerifyReport::builder(
        "ratio_comparison",
        "u_n(N-tau_theta)/u_n(N-lambda_theta) <= e^{4n/(N-2)^2} for N >= 6, sides in logs",
        g.tolerance,
    )
    .control(control);
    let c = if control { 0.25 } else { 4.0 };
    for n in g.n.values(6) {
        let nf = n as f64;
        for j in 0..g.theta_points {
            let theta = 2.0 * PI * j as f64 / g.theta_points as f64;
            let (t, s) = (nf - tau_theta(n, theta), nf - lambda_theta(theta));
            for m in 1..=g.index_max {
                let lhs = log_u_ratio(m, t, s)?;
                let rhs = c * m as f64 / ((nf - 2.0) * (nf - 2.0));
                b.record(|| format!("N={n} theta={theta} n={m}"), lhs, rhs, rhs - lhs);
            }
        }
    }
    Ok(b.finish())
}

fn wreath_lhs(n: u64, tau: f64) -> Result<f64> {
    let nf = n as f64;
    let qs = q_of(nf.sqrt())?;
    let qt = q_of((nf - tau).sqrt())?;
    Ok(qs.ln() - 0.5 * nf.ln() - 2.0 * qt.ln() - (-qt * qt).ln_1p())
}

/// `q(√N) / (√N q(√(N-τ))² (1 - q(√(N-τ))²)) <= e^{-τ/N}` for `τ > 7/4` and
/// `N >= Q(τ)/(4τ - 7)`, in logs. The control doubles the exponent.
pub fn verify_wreath_inequality(g: &GridSpec, control: bool) -> Result<VerifyReport> {
    let mut b = VerifyReport::builder(
        "wreath_inequality",
        "q(sqrt N)/(sqrt N q(sqrt(N-tau))^2 (1-q(sqrt(N-tau))^2)) <= e^{-tau/N} \
         for tau > 7/4, N >= Q(tau)/(4 tau - 7), sides in logs",
        g.tolerance,
    )
    .control(control);
    let factor = if control { 2.0 } else { 1.0 };
    for &tau in &g.params {
        let Ok(thr) = wreath_threshold(tau) else {
            b.exclude(g.n.values(0).len());
            b.note(format!("tau={tau} excluded: the statement needs tau > 7/4"));
            continue;
        };
        let threshold = thr.ceil() as u64;
        for n in g.n.values(threshold) {
            let lhs = wreath_lhs(n, tau)?;
            let rhs = -factor * tau / n as f64;
            b.record(|| format!("tau={tau} N={n}"), lhs, rhs, rhs - lhs);
        }
        let first = (tau + 4.0).floor() as u64 + 1;
        let mut from = None;
        for n in (first..threshold).rev() {
            if wreath_lhs(n, tau)? <= -factor * tau / n as f64 {
                from = Some(n);
            } else {
                break;
            }
        }
        b.note(match from {
            Some(n) => format!("tau={tau}: holds for N >= {n} (stated threshold {thr:.6})"),
            None => format!("tau={tau}: fails just below the stated threshold {thr:.6}"),
        });
    }
    Ok(b.finish())
}

/// `∫ λ_θ^l dμ_N` from the Wallis recurrence against Gauss–Legendre
/// quadrature, relative error at most [`LAMBDA_REL_TOL`]. The control uses
/// the product `2^l Π_{s=1..l} (N+2s)/(N+2s+1)` in place of the recurrence.
pub fn verify_lambda_moment(g: &GridSpec, control: bool) -> Result<VerifyReport> {
    let mut b = VerifyReport::builder(
        "lambda_moment",
        "|closed form - quadrature| / quadrature <= 1e-8 for the moments of 1 - cos(theta)",
        g.tolerance,
    )
    .control(control);
    let mut worst_shifted: f64 = 0.0;
    for n in g.n.values(2) {
        for l in 0..=g.index_max {
            let quad = porod_integral(n, DEFAULT_PANELS, |th| lambda_theta(th).powi(l as i32));
            let shifted = shifted_product(n, l);
            worst_shifted = worst_shifted.max((shifted - quad).abs() / quad);
            let closed = if control {
                shifted
            } else {
                lambda_moment(n, l)?
            };
            let err = (closed - quad).abs() / quad;
            b.record(
                || format!("N={n} l={l}"),
                err,
                LAMBDA_REL_TOL,
                LAMBDA_REL_TOL - err,
            );
        }
    }
    if !control {
        b.note("W_{N+1}/W_{N-1} = N/(N+1): the first moment is 2N/(N+1)");
        b.note(format!(
            "largest relative deviation of 2^l prod (N+2s)/(N+2s+1) from quadrature: {worst_shifted:e}"
        ));
    }
    Ok(b.finish())
}

fn shifted_product(n: u64, l: u64) -> f64 {
    (1..=l)
        .map(|s| 2.0 * (n + 2 * s) as f64 / (n + 2 * s + 1) as f64)
        .product()
}

/// Informational: `∫ (N - λ_θ)^α dμ_N <= (N - 2 + 2/N)^α` on a doubling grid
/// of `α` up to `index_max`, in logs. It fails once `α` is of order `N²`,
/// because the Porod law puts polynomial mass near `θ = 0`.
pub fn verify_mixture_moment_bound(g: &GridSpec) -> Result<VerifyReport> {
    let mut b = VerifyReport::builder(
        "mixture_moment_bound",
        "int (N - lambda)^alpha dmu_N <= (N-2+2/N)^alpha, sides in logs",
        g.tolerance,
    )
    .informational();
    let gl = GaussLegendre::default();
    for n in g.n.values(3) {
        let nf = n as f64;
        let pts = gl.points(0.0, PI, DEFAULT_PANELS);
        let log_norm = (2.0 * wallis(n - 1)).ln();
        let base: Vec<(f64, f64)> = pts
            .iter()
            .map(|&(x, w)| {
                let s = x.sin();
                (
                    w.ln() + (nf - 1.0) * s.ln() - log_norm,
                    (nf - 2.0 * s * s).ln(),
                )
            })
            .collect();
        let mut first_fail = None;
        let mut alpha = 1u64;
        while alpha <= g.index_max {
            let a = alpha as f64;
            let lhs = base.iter().fold(f64::NEG_INFINITY, |acc, &(lw, lv)| {
                log_add_exp(acc, lw + a * lv)
            });
            let rhs = a * (nf - 2.0 + 2.0 / nf).ln();
            if lhs > rhs && first_fail.is_none() {
                first_fail = Some(alpha);
            }
            b.record(|| format!("N={n} alpha={alpha}"), lhs, rhs, rhs - lhs);
            alpha *= 2;
        }
        b.note(match first_fail {
            Some(a) => format!("N={n}: first failure at alpha = {a}"),
            None => format!("N={n}: no failure up to alpha = {}", g.index_max),
        });
    }
    Ok(b.finish())
}
