//! The Porod mixture of evaluations `φ_μ = ∫ ev_{g_θ} dμ_N(θ)`.
//!
//! Its coefficients are integrals over `θ` and have no closed form, so the
//! explicit part of `A_k` is a quadrature estimate over a small truncation.
//! No tail certificate is produced: for every fixed `k`, the terms of even
//! single-block words eventually grow without bound (see
//! [`mixture_divergence_witness`]), so `A_k` itself is infinite.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use super::{BoundInterval, TruncationConfig};
use crate::error::{domain, Result};
use crate::numerics::{log_add_exp, log_u, log_u_ratio, q_of, wallis, GaussLegendre, LogScalar};
use crate::repr::{enumerate_unitary, log_abs_ratio};
use crate::structures::{porod_log_density, tau_theta, trace_at};

/// Smaller default truncation: every distinct coefficient costs one quadrature.
pub const DEFAULT_MIXTURE_TRUNCATION: TruncationConfig = TruncationConfig {
    max_p: 8,
    max_total: 16,
};

/// Coefficients of the mixture grouped by the data they depend on: the
/// multiset of block lengths and `|ε|`.
#[derive(Clone, Debug)]
pub struct MixtureSeries {
    /// `(word count, ln d², ln |φ̂|)` per class.
    classes: Vec<(u64, f64, f64)>,
    terms: u128,
}

impl MixtureSeries {
    pub fn new(n: u64, tc: &TruncationConfig, panels: usize) -> Result<Self> {
        if n < 5 {
            return Err(domain(format!("N = {n} must be at least 5")));
        }
        let nf = n as f64;
        let mmax = tc.max_total as usize;
        let gl = GaussLegendre::default();
        let log_norm = (2.0 * wallis(n - 1)).ln();
        let mut weights = Vec::new();
        let mut phases = Vec::new();
        // ratios[nb][j] = u_nb(N - τ_θ) / u_nb(N) at node j.
        let mut ratios = vec![Vec::new(); mmax + 1];
        for (x, w) in gl.points(0.0, PI, panels) {
            let ld = (nf - 1.0) * x.sin().ln() - log_norm;
            let theta = 2.0 * x;
            let t = nf - tau_theta(n, theta);
            weights.push(w * ld.exp());
            phases.push(trace_at(n, theta).arg());
            for (nb, col) in ratios.iter_mut().enumerate().skip(1) {
                let (lr, sign) = log_abs_ratio(nb as u64, t, nf)?;
                col.push(f64::from(sign) * lr.exp());
            }
        }

        let mut counts: BTreeMap<(Vec<u32>, u64), u64> = BTreeMap::new();
        let mut terms = 0u128;
        for w in enumerate_unitary(tc.max_total, tc.max_p) {
            let mut ns = w.ns().to_vec();
            ns.sort_unstable();
            *counts.entry((ns, w.exponent().unsigned_abs())).or_default() += 1;
            terms += 1;
        }
        let mut classes = Vec::with_capacity(counts.len());
        for ((ns, eps), count) in counts {
            let log_d2: f64 = ns
                .iter()
                .map(|&b| log_u(nf, u64::from(b)).map(|l| 2.0 * l))
                .sum::<Result<f64>>()?;
            let e = eps as f64;
            let mut acc = 0.0;
            for j in 0..weights.len() {
                let prod: f64 = ns.iter().map(|&b| ratios[b as usize][j]).product();
                acc += weights[j] * (e * phases[j]).cos() * prod;
            }
            classes.push((count, log_d2, acc.abs().ln()));
        }
        Ok(Self { classes, terms })
    }

    /// Estimated partial sum `Σ d² |φ̂|^{2k}` over the truncation.
    pub fn a_k(&self, k: f64) -> Result<BoundInterval> {
        if !(k >= 0.0 && k.is_finite()) {
            return Err(domain(format!("k = {k} must be a non-negative number")));
        }
        let mut partial = f64::NEG_INFINITY;
        for &(count, log_d2, log_c) in &self.classes {
            let lc = if k == 0.0 { 0.0 } else { 2.0 * k * log_c };
            partial = log_add_exp(partial, (count as f64).ln() + log_d2 + lc);
        }
        Ok(BoundInterval {
            partial: LogScalar::from_ln(partial),
            tail: None,
            terms_used: self.terms,
            estimated: true,
            certificate:
                "none: the full series diverges for every k; partial is a quadrature estimate"
                    .into(),
        })
    }
}

/// `A_k(μ_N)` restricted to the truncation, estimated by quadrature.
pub fn a_k_mixture(n: u64, k: f64, tc: &TruncationConfig, panels: usize) -> Result<BoundInterval> {
    MixtureSeries::new(n, tc, panels)?.a_k(k)
}

/// A single word whose term in `A_k(μ_N)` exceeds 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DivergenceWitness {
    /// Block length `n` of the word `χ_n` (even, so `ε = 0`).
    pub block: u64,
    /// Lower bound on `ln(d² |φ̂|^{2k})`.
    pub log_term_lower: f64,
}

/// Search `n = 2, 4, 8, ...` for an even single-block word whose term in
/// `A_k(μ_N)` is provably above 1.
///
/// For such a word `φ̂ = ∫ u_n(N - τ_θ)/u_n(N) dμ_N` with a positive integrand.
/// In the half angle `x ∈ [0, π/2]` the ratio decreases and the density
/// increases, so on each panel `[a, b]` the integral is at least
/// `(b - a) ratio(b) density(a)`; the other half mirrors this one.
pub fn mixture_divergence_witness(
    n: u64,
    k: f64,
    max_doublings: u32,
) -> Result<Option<DivergenceWitness>> {
    if n < 5 {
        return Err(domain(format!("N = {n} must be at least 5")));
    }
    let nf = n as f64;
    // Geometric grid on (0, π/2]: the mass that matters for long words sits
    // near θ = 0.
    let pts = 4000;
    let lo: f64 = 1e-9;
    let grid: Vec<f64> = std::iter::once(0.0)
        .chain((0..=pts).map(|i| lo * (FRAC_PI_2 / lo).powf(i as f64 / pts as f64)))
        .collect();
    let mut block = 2u64;
    for _ in 0..max_doublings {
        let mut lower = f64::NEG_INFINITY;
        for w in grid.windows(2) {
            let (a, b) = (w[0], w[1]);
            if a == 0.0 {
                continue;
            }
            let t = nf - tau_theta(n, 2.0 * b);
            let lr = log_u_ratio(block, t, nf)?;
            lower = log_add_exp(lower, (b - a).ln() + lr + porod_log_density(n, a));
        }
        let log_phi = 2f64.ln() + lower;
        let log_term = 2.0 * log_u(nf, block)? + 2.0 * k * log_phi;
        if log_term > 0.0 {
            return Ok(Some(DivergenceWitness {
                block,
                log_term_lower: log_term,
            }));
        }
        block *= 2;
    }
    Ok(None)
}

/// `ln` of the closed-form majorant obtained by bounding the `θ`-integrals
/// with `a_N = N - 2 + 2/N` and `b_N = e^{4/(N-2)²}`:
/// `2 Σ_p (R/(1-X))^p` with `R = (a_N b_N)^{2k} / (N^{2k-2} (1-q(N-2)²)^{2k})`
/// and `X = q(N)^{2k-2} (a_N b_N)^{2k}`.
///
/// This chain rests on a moment inequality that fails for large exponents,
/// so the value is not a valid bound; it is reported for comparison only.
pub fn mixture_stated_chain(n: u64, k: f64) -> Result<Option<f64>> {
    if n < 5 {
        return Err(domain(format!("N = {n} must be at least 5")));
    }
    let nf = n as f64;
    let lab = (nf - 2.0 + 2.0 / nf).ln() + 4.0 / ((nf - 2.0) * (nf - 2.0));
    let q2 = q_of(nf - 2.0)?;
    let qn = q_of(nf)?;
    let lr = 2.0 * k * lab - (2.0 * k - 2.0) * nf.ln() - 2.0 * k * (-q2 * q2).ln_1p();
    let lx = (2.0 * k - 2.0) * qn.ln() + 2.0 * k * lab;
    if lx >= 0.0 {
        return Ok(None);
    }
    let lrho = lr - (-lx.exp()).ln_1p();
    if lrho >= 0.0 {
        return Ok(None);
    }
    Ok(Some(2f64.ln() + lrho - (-lrho.exp()).ln_1p()))
}
