use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{wallis, GaussLegendre, DEFAULT_PANELS};

const WEIGHT_TOL: f64 = 1e-12;

/// A probability measure on the circle, used as the law of the diagonal
/// phase of a walk on the free unitary group.
#[derive(Clone, Debug, PartialEq)]
pub enum CircleMeasure {
    /// Finitely many atoms `(angle, weight)` with angles in `[0, 2π)`.
    Atomic(Vec<(f64, f64)>),
    /// Uniform measure.
    Haar,
    /// Density `|sin(θ/2)|^{N-1} / (4 W_{N-1})` on `[0, 2π)`.
    Porod(u64),
}

impl CircleMeasure {
    /// Atomic measure; weights must be non-negative and sum to 1.
    pub fn atomic(atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("no atoms".into()));
        }
        let mut total = 0.0;
        let mut out = Vec::with_capacity(atoms.len());
        for (a, w) in atoms {
            if !a.is_finite() || !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidMeasure(format!("bad atom ({a}, {w})")));
            }
            total += w;
            out.push((a.rem_euclid(TAU), w));
        }
        if (total - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::InvalidMeasure(format!(
                "weights sum to {total}, not 1"
            )));
        }
        Ok(Self::Atomic(out))
    }

    pub fn delta(angle: f64) -> Self {
        Self::Atomic(vec![(angle.rem_euclid(TAU), 1.0)])
    }

    pub fn porod(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidMeasure(format!(
                "Porod parameter {n} must be at least 2"
            )));
        }
        Ok(Self::Porod(n))
    }

    /// `m_ε = ∫ e^{iεθ} dν(θ)`.
    pub fn moment(&self, eps: i64) -> Complex64 {
        self.moment_with(eps, DEFAULT_PANELS)
    }

    /// Same as [`moment`](Self::moment) with an explicit panel count for
    /// the Porod case.
    pub fn moment_with(&self, eps: i64, panels: usize) -> Complex64 {
        match self {
            Self::Atomic(atoms) => atoms
                .iter()
                .map(|&(a, w)| Complex64::from_polar(w, eps as f64 * a))
                .sum(),
            Self::Haar => {
                if eps == 0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            Self::Porod(n) => {
                // The density is symmetric under θ ↦ 2π - θ, so the moment is real.
                let e = eps as f64;
                let re = porod_integral(*n, panels, |theta| (e * theta).cos());
                Complex64::new(re, 0.0)
            }
        }
    }

    /// Parse lines of `angle weight`. Blank lines and `#` comments are ignored.
    pub fn parse_atoms(text: &str) -> Result<Self> {
        let mut atoms = Vec::new();
        for (i, l) in text.lines().enumerate() {
            let l = l.split('#').next().unwrap_or("").trim();
            if l.is_empty() {
                continue;
            }
            let nums = l
                .split_whitespace()
                .map(str::parse::<f64>)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse {
                    line: i + 1,
                    msg: e.to_string(),
                })?;
            match nums.as_slice() {
                [a, w] => atoms.push((*a, *w)),
                _ => {
                    return Err(Error::Parse {
                        line: i + 1,
                        msg: format!("expected `angle weight`, found {} numbers", nums.len()),
                    })
                }
            }
        }
        Self::atomic(atoms)
    }
}

/// `ln` of the Porod density in the half angle `x = θ/2 ∈ [0, π]`, where it is
/// `sin^{N-1} x / (2 W_{N-1})` with respect to `dx`.
pub fn porod_log_density(n: u64, x: f64) -> f64 {
    (n as f64 - 1.0) * x.sin().ln() - (2.0 * wallis(n - 1)).ln()
}

/// `∫ f(θ) dμ_N(θ)` for the Porod law, by composite Gauss–Legendre in the
/// half angle.
pub fn porod_integral(n: u64, panels: usize, f: impl Fn(f64) -> f64) -> f64 {
    let gl = GaussLegendre::default();
    let norm = 2.0 * wallis(n - 1);
    let e = (n - 1) as i32;
    gl.integrate(|x| f(2.0 * x) * x.sin().powi(e), 0.0, PI, panels) / norm
}

/// `λ_θ = 1 - cos θ`.
pub fn lambda_theta(theta: f64) -> f64 {
    1.0 - theta.cos()
}

/// `Tr(g_θ) = e^{iθ} + N - 1` for the diagonal matrix `diag(e^{iθ}, 1, ..., 1)`.
pub fn trace_at(n: u64, theta: f64) -> Complex64 {
    Complex64::new(theta.cos() + n as f64 - 1.0, theta.sin())
}

/// `τ_θ = N - |Tr g_θ| = 2λ(N-1) / (N + sqrt(N² - 2λ(N-1)))`.
pub fn tau_theta(n: u64, theta: f64) -> f64 {
    let nf = n as f64;
    let l = lambda_theta(theta);
    2.0 * l * (nf - 1.0) / (nf + (nf * nf - 2.0 * l * (nf - 1.0)).sqrt())
}
