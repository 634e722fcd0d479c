//! Truncated Fourier series with certified tails, total-variation bounds and
//! cut-off profiles.

mod mixture;
mod profile;
mod tail;
mod thresholds;
mod tv;
mod unitary;
mod walk;
mod wreath;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::LogScalar;

pub use mixture::{
    a_k_mixture, mixture_divergence_witness, mixture_stated_chain, DivergenceWitness,
    MixtureSeries, DEFAULT_MIXTURE_TRUNCATION,
};
pub use profile::{cutoff_profile, Profile, ProfileRow};
pub use tail::{log_geometric_tail, log_negbin_tail, Majorant};
pub use thresholds::{threshold_c, threshold_d, threshold_q, wreath_threshold};
pub use tv::{tv_lower_chebyshev, tv_lower_chebyshev_log, tv_upper_from_a, TvUpper};
pub use unitary::{a_k_unitary, block_logs};
pub use walk::{Evaluator, Family, Hypothesis, StatedBound, Walk};
pub use wreath::a_k_wreath;

/// Which words enter the explicit part of the series.
///
/// Unitary words are kept when they have at most `max_p` blocks and total
/// length at most `max_total`. Wreath words are kept when they have at most
/// `max_p` group letters and total index at most `max_total`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationConfig {
    pub max_p: u32,
    pub max_total: u32,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        Self {
            max_p: 12,
            max_total: 48,
        }
    }
}

impl TruncationConfig {
    pub fn new(max_p: u32, max_total: u32) -> Result<Self> {
        if max_p == 0 {
            return Err(Error::Config("max_p must be at least 1".into()));
        }
        if max_total < max_p {
            return Err(Error::Config(format!(
                "max_total = {max_total} must be at least max_p = {max_p}"
            )));
        }
        Ok(Self { max_p, max_total })
    }
}

/// `A_k` split as an explicit partial sum plus a majorant of the rest.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundInterval {
    /// Sum over the truncated set of words.
    pub partial: LogScalar,
    /// Upper bound on the remaining words; `None` when no certificate exists.
    pub tail: Option<LogScalar>,
    /// Number of words in the explicit part.
    pub terms_used: u128,
    /// True when `partial` is a quadrature estimate rather than an exact sum.
    pub estimated: bool,
    /// Short description of how the tail was obtained, or why it is missing.
    pub certificate: String,
}

impl BoundInterval {
    /// `partial + tail`, or `None` without a tail.
    pub fn upper(&self) -> Option<LogScalar> {
        self.tail.map(|t| self.partial + t)
    }

    pub fn is_certified(&self) -> bool {
        self.tail.is_some() && !self.estimated
    }
}
