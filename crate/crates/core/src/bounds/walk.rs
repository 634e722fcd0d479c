use std::f64::consts::E;

use serde::Serialize;

use super::mixture::{MixtureSeries, DEFAULT_MIXTURE_TRUNCATION};
use super::thresholds::{threshold_c, threshold_d, wreath_threshold};
use super::tv::tv_lower_chebyshev_log;
use super::unitary::a_k_unitary;
use super::wreath::a_k_wreath;
use super::{BoundInterval, TruncationConfig};
use crate::error::{domain, Result};
use crate::repr::{chi2_expectation_unitary, chi2_expectation_wreath, chi_expectation_mixture};
use crate::structures::{
    lambda_theta, tau_theta, trace_at, CircleMeasure, FiniteGroup, GroupState,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Unitary,
    UnitaryEval,
    Mixture,
    Wreath,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Self::Unitary => "unitary",
            Self::UnitaryEval => "unitary-eval",
            Self::Mixture => "mixture",
            Self::Wreath => "wreath",
        }
    }
}

/// A random walk together with its parameters.
#[derive(Clone, Debug)]
pub enum Walk {
    /// Free product state `φ_{N-τ} * ∫ dν` on `U_N^+`.
    Unitary { n: u64, tau: f64, nu: CircleMeasure },
    /// Evaluation at `diag(e^{iθ}, 1, ..., 1)`.
    UnitaryEval { n: u64, theta: f64 },
    /// Porod mixture of evaluations.
    Mixture { n: u64, panels: usize },
    /// Free wreath product `Ĝ ≀_* S_N^+` with state `φ_{N-τ, ψ}`.
    Wreath {
        n: u64,
        tau: f64,
        group: FiniteGroup,
        psi: GroupState,
    },
}

/// A named side condition of a cut-off theorem and whether it holds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
}

fn hyp(name: impl Into<String>, holds: bool) -> Hypothesis {
    Hypothesis {
        name: name.into(),
        holds,
    }
}

/// Closed-form bounds stated for the walk, evaluated at the same `k`.
///
/// `c_below` is `(nominal cutoff - k)/N`, the offset used by lower bounds.
/// Fields are `None` where the formula is undefined.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatedBound {
    pub c: f64,
    pub a_upper: Option<f64>,
    pub tv_upper: Option<f64>,
    pub tv_lower: Option<f64>,
    /// Lower bound re-derived from the same witness where the stated constant
    /// does not follow.
    pub tv_lower_corrected: Option<f64>,
    pub note: String,
}

impl Walk {
    pub fn unitary(n: u64, tau: f64, nu: CircleMeasure) -> Result<Self> {
        if n < 3 {
            return Err(domain(format!("N = {n} must be at least 3")));
        }
        if !(tau > 0.0 && tau < n as f64) {
            return Err(domain(format!("τ = {tau} must lie in (0, N)")));
        }
        Ok(Self::Unitary { n, tau, nu })
    }

    pub fn unitary_eval(n: u64, theta: f64) -> Result<Self> {
        if n < 3 {
            return Err(domain(format!("N = {n} must be at least 3")));
        }
        if !(theta.is_finite() && lambda_theta(theta) > 0.0) {
            return Err(domain(format!("θ = {theta} must not be a multiple of 2π")));
        }
        Ok(Self::UnitaryEval { n, theta })
    }

    pub fn mixture(n: u64, panels: usize) -> Result<Self> {
        if n < 5 {
            return Err(domain(format!("N = {n} must be at least 5")));
        }
        if panels == 0 {
            return Err(domain("quadrature needs at least one panel"));
        }
        Ok(Self::Mixture { n, panels })
    }

    pub fn wreath(n: u64, tau: f64, group: FiniteGroup, psi: GroupState) -> Result<Self> {
        if n < 5 {
            return Err(domain(format!("N = {n} must be at least 5")));
        }
        if !(tau > 0.0 && tau < n as f64 - 1.0) {
            return Err(domain(format!("τ = {tau} must lie in (0, N - 1)")));
        }
        if psi.values().len() != group.order() {
            return Err(domain("group state does not match the group"));
        }
        Ok(Self::Wreath { n, tau, group, psi })
    }

    pub fn family(&self) -> Family {
        match self {
            Self::Unitary { .. } => Family::Unitary,
            Self::UnitaryEval { .. } => Family::UnitaryEval,
            Self::Mixture { .. } => Family::Mixture,
            Self::Wreath { .. } => Family::Wreath,
        }
    }

    pub fn n(&self) -> u64 {
        match self {
            Self::Unitary { n, .. }
            | Self::UnitaryEval { n, .. }
            | Self::Mixture { n, .. }
            | Self::Wreath { n, .. } => *n,
        }
    }

    /// The rate `r` in the nominal cut-off `N ln N / r`.
    pub fn rate(&self) -> f64 {
        match self {
            Self::Unitary { tau, .. } | Self::Wreath { tau, .. } => *tau,
            Self::UnitaryEval { theta, .. } => lambda_theta(*theta),
            Self::Mixture { .. } => 2.0,
        }
    }

    /// The `τ` actually entering the coefficients.
    pub fn effective_tau(&self) -> f64 {
        match self {
            Self::Unitary { tau, .. } | Self::Wreath { tau, .. } => *tau,
            Self::UnitaryEval { n, theta } => tau_theta(*n, *theta),
            Self::Mixture { .. } => 2.0,
        }
    }

    pub fn nominal_cutoff(&self) -> f64 {
        let nf = self.n() as f64;
        nf * nf.ln() / self.rate()
    }

    /// `k = N ln N / r + c N`.
    pub fn k_from_c(&self, c: f64) -> f64 {
        self.nominal_cutoff() + c * self.n() as f64
    }

    pub fn c_from_k(&self, k: f64) -> f64 {
        (k - self.nominal_cutoff()) / self.n() as f64
    }

    pub fn default_truncation(&self) -> TruncationConfig {
        match self {
            Self::Mixture { .. } => DEFAULT_MIXTURE_TRUNCATION,
            _ => TruncationConfig::default(),
        }
    }

    /// Side conditions of the cut-off statement for this family at step `k`.
    pub fn hypotheses(&self, k: f64) -> Vec<Hypothesis> {
        let nf = self.n() as f64;
        match self {
            Self::Unitary { .. } | Self::UnitaryEval { .. } => {
                let tau = self.effective_tau();
                let c = (k - nf * nf.ln() / tau) / nf;
                let cc = threshold_c(tau).unwrap_or(f64::INFINITY);
                let dd = threshold_d(tau).unwrap_or(f64::INFINITY);
                vec![
                    hyp(format!("N >= tau + C(tau) = {}", tau + cc), nf >= tau + cc),
                    hyp(format!("N >= D(tau) = {dd}"), nf >= dd),
                    hyp(
                        format!("c > ln(2)/(2 tau) = {}", 2f64.ln() / (2.0 * tau)),
                        c > 2f64.ln() / (2.0 * tau),
                    ),
                ]
            }
            Self::Mixture { .. } => {
                let c = self.c_from_k(k);
                vec![
                    hyp("N >= 12", nf >= 12.0),
                    hyp("c > 4 + ln(2)", c > 4.0 + 2f64.ln()),
                ]
            }
            Self::Wreath { tau, group, .. } => {
                let c = self.c_from_k(k);
                let g = group.order() as f64;
                let cmin = (1.0 + g.sqrt()).ln() / (2.0 * tau);
                let mut out = vec![hyp("tau > 7/4", *tau > 1.75)];
                match wreath_threshold(*tau) {
                    Ok(q) => out.push(hyp(format!("N >= Q(tau)/(4 tau - 7) = {q}"), nf >= q)),
                    Err(_) => out.push(hyp("N >= Q(tau)/(4 tau - 7)", false)),
                }
                out.push(hyp(
                    format!("c > ln(1 + sqrt|G|)/(2 tau) = {cmin}"),
                    c > cmin,
                ));
                out
            }
        }
    }

    /// Lower bound on the distance at step `k` from the witness character.
    pub fn tv_lower(&self, k: f64) -> Result<f64> {
        let n = self.n();
        Ok(match self {
            Self::Unitary { .. } | Self::UnitaryEval { .. } => {
                let m = chi2_expectation_unitary(n, self.effective_tau(), k)?;
                tv_lower_chebyshev_log(m, 9.0, 1.0)
            }
            Self::Mixture { .. } => {
                let m = chi_expectation_mixture(n, k)?;
                tv_lower_chebyshev_log(m, 4.0, 2.0)
            }
            Self::Wreath { tau, .. } => {
                let m = chi2_expectation_wreath(n, *tau, k)?;
                tv_lower_chebyshev_log(m, 9.0, 1.0)
            }
        })
    }

    /// The stated closed-form bounds at step `k`.
    pub fn stated_bound(&self, k: f64) -> StatedBound {
        let nf = self.n() as f64;
        match self {
            Self::Unitary { .. } | Self::UnitaryEval { .. } => {
                let tau = self.effective_tau();
                let c = (k - nf * nf.ln() / tau) / nf;
                let y = (-2.0 * tau * c).exp();
                let (a, tv) = if 2.0 * y < 1.0 {
                    (
                        Some(2.0 * y / (1.0 - 2.0 * y)),
                        Some((-tau * c).exp() / (2.0 - 4.0 * y).sqrt()),
                    )
                } else {
                    (None, None)
                };
                // Lower bound at k = N ln N / τ - c' N with c' = -c.
                let lower = 1.0 - 810.0 / 16.0 * (6.0 * tau + 2.0 * c * tau).exp();
                StatedBound {
                    c,
                    a_upper: a,
                    tv_upper: tv,
                    tv_lower: Some(lower),
                    tv_lower_corrected: None,
                    note:
                        "offset c measured from N ln N / tau with the tau entering the coefficients"
                            .into(),
                }
            }
            Self::Mixture { .. } => {
                let c = self.c_from_k(k);
                let y = (4.0 - c).exp();
                let (a, tv) = if 2.0 * y < 1.0 {
                    (
                        Some(2.0 * y / (1.0 - 2.0 * y)),
                        Some(E * E * (-c / 2.0).exp() / (2.0 - 4.0 * y).sqrt()),
                    )
                } else {
                    (None, None)
                };
                let cb = -c;
                StatedBound {
                    c,
                    a_upper: a,
                    tv_upper: tv,
                    tv_lower: Some(1.0 - 101.0 * (-2.0 * cb).exp()),
                    tv_lower_corrected: Some(1.0 - 48.0 * (2.0 / E).exp() * (-4.0 * cb).exp()),
                    note:
                        "upper bound relies on a moment inequality that fails for large exponents"
                            .into(),
                }
            }
            Self::Wreath { tau, group, .. } => {
                let c = self.c_from_k(k);
                let g = group.order() as f64;
                let y = (-2.0 * tau * c).exp();
                let (a, tv) = if y < 1.0 {
                    let a = y / (1.0 - y) * (1.0 + g.sqrt());
                    (Some(a), Some(a.sqrt() / 2.0))
                } else {
                    (None, None)
                };
                let cb = -c;
                let base = 2.0 * tau * (tau + 2.0) / 5.0;
                StatedBound {
                    c,
                    a_upper: a,
                    tv_upper: tv,
                    tv_lower: Some(1.0 - 40.0 * (-base + 4.0 * tau * cb).exp()),
                    tv_lower_corrected: Some(1.0 - 160.0 * (base - 2.0 * tau * cb).exp()),
                    note: "upper bound omits words with empty outer blocks".into(),
                }
            }
        }
    }
}

/// Evaluates `A_k` for one walk at many `k`, reusing what does not depend on `k`.
#[derive(Clone, Debug)]
pub struct Evaluator {
    walk: Walk,
    tc: TruncationConfig,
    mixture: Option<MixtureSeries>,
}

impl Evaluator {
    pub fn new(walk: Walk, tc: TruncationConfig) -> Result<Self> {
        TruncationConfig::new(tc.max_p, tc.max_total)?;
        let mixture = match &walk {
            Walk::Mixture { n, panels } => Some(MixtureSeries::new(*n, &tc, *panels)?),
            _ => None,
        };
        Ok(Self { walk, tc, mixture })
    }

    pub fn walk(&self) -> &Walk {
        &self.walk
    }

    pub fn truncation(&self) -> &TruncationConfig {
        &self.tc
    }

    pub fn a_k(&self, k: f64) -> Result<BoundInterval> {
        match &self.walk {
            Walk::Unitary { n, tau, nu } => a_k_unitary(*n, *n as f64 - tau, nu, k, &self.tc),
            Walk::UnitaryEval { n, theta } => {
                let t = *n as f64 - tau_theta(*n, *theta);
                let nu = CircleMeasure::delta(trace_at(*n, *theta).arg());
                a_k_unitary(*n, t, &nu, k, &self.tc)
            }
            Walk::Mixture { .. } => self.mixture.as_ref().expect("built in new").a_k(k),
            Walk::Wreath { n, tau, group, psi } => a_k_wreath(*n, *tau, group, psi, k, &self.tc),
        }
    }
}
