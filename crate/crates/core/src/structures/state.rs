use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::group::FiniteGroup;
use crate::error::{Error, Result};

const STATE_TOL: f64 = 1e-10;

/// A normalized positive-definite function `ψ` on a finite group, i.e. a
/// state on its group algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupState {
    values: Vec<Complex64>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidState(msg.into())
}

impl GroupState {
    /// Checks `ψ(e) = 1`, `|ψ| <= 1`, `ψ(g⁻¹) = conj ψ(g)` and that the
    /// matrix `[ψ(g⁻¹h)]_{g,h}` is positive semidefinite.
    pub fn new(group: &FiniteGroup, values: Vec<Complex64>) -> Result<Self> {
        let m = group.order();
        if values.len() != m {
            return Err(bad(format!("expected {m} values, got {}", values.len())));
        }
        if values
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(bad("non-finite value"));
        }
        let e = group.identity();
        if (values[e] - Complex64::new(1.0, 0.0)).norm() > STATE_TOL {
            return Err(bad(format!("ψ(e) = {} must equal 1", values[e])));
        }
        for (g, z) in values.iter().enumerate() {
            if z.norm() > 1.0 + STATE_TOL {
                return Err(bad(format!("|ψ({g})| = {} exceeds 1", z.norm())));
            }
            let zi = values[group.inv(g)];
            if (zi - z.conj()).norm() > STATE_TOL {
                return Err(bad(format!(
                    "ψ({g}⁻¹) = {zi} is not conj ψ({g}) = {}",
                    z.conj()
                )));
            }
        }
        let mat = DMatrix::from_fn(m, m, |g, h| values[group.mul(group.inv(g), h)]);
        let eig = SymmetricEigen::new(mat);
        let min = eig
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min < -STATE_TOL {
            return Err(bad(format!(
                "not positive definite: smallest eigenvalue of [ψ(g⁻¹h)] is {min:e}"
            )));
        }
        Ok(Self { values })
    }

    /// `ψ ≡ 1`, the counit.
    pub fn trivial(group: &FiniteGroup) -> Self {
        Self {
            values: vec![Complex64::new(1.0, 0.0); group.order()],
        }
    }

    /// `ψ = δ_e`, the Haar state of the group algebra.
    pub fn haar(group: &FiniteGroup) -> Self {
        let mut values = vec![Complex64::new(0.0, 0.0); group.order()];
        values[group.identity()] = Complex64::new(1.0, 0.0);
        Self { values }
    }

    /// The character `a ↦ exp(2πi j a / s)` of `Z_s`, with elements numbered
    /// as in [`FiniteGroup::cyclic`].
    pub fn cyclic_character(group: &FiniteGroup, j: usize) -> Result<Self> {
        let s = group.order();
        if *group != FiniteGroup::cyclic(s)? {
            return Err(bad(
                "cyclic characters need the standard cyclic group table",
            ));
        }
        let values = (0..s)
            .map(|a| {
                let ang = 2.0 * std::f64::consts::PI * ((j * a) % s) as f64 / s as f64;
                Complex64::from_polar(1.0, ang)
            })
            .collect();
        Ok(Self { values })
    }

    pub fn value(&self, g: usize) -> Complex64 {
        self.values[g]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Parse `m` lines of `re im`. Blank lines and `#` comments are ignored.
    pub fn parse(group: &FiniteGroup, text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (i, l) in text.lines().enumerate() {
            let l = l.split('#').next().unwrap_or("").trim();
            if l.is_empty() {
                continue;
            }
            let nums = l
                .split_whitespace()
                .map(|x| x.parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse {
                    line: i + 1,
                    msg: e.to_string(),
                })?;
            match nums.as_slice() {
                [re, im] => values.push(Complex64::new(*re, *im)),
                [re] => values.push(Complex64::new(*re, 0.0)),
                _ => {
                    return Err(Error::Parse {
                        line: i + 1,
                        msg: format!("expected `re im`, found {} numbers", nums.len()),
                    })
                }
            }
        }
        Self::new(group, values)
    }
}

/// `Σ_{γ ∈ Γ^p} |ψ(γ_1 ⋯ γ_p)|`.
///
/// For fixed `γ_1 .. γ_{p-1}` the last factor runs over the whole group, so
/// the product does too; the sum is `|Γ|^{p-1} Σ_g |ψ(g)|`.
pub fn group_sum_abs(group: &FiniteGroup, psi: &GroupState, p: u32) -> Result<f64> {
    if p == 0 {
        return Err(Error::Domain("group_sum_abs needs p >= 1".into()));
    }
    Ok(log_group_sum_abs_pow(group, psi, p, 1.0).exp())
}

/// `ln Σ_{γ ∈ Γ^p} |ψ(γ_1 ⋯ γ_p)|^a`, with `0^0 = 1`.
pub fn log_group_sum_abs_pow(group: &FiniteGroup, psi: &GroupState, p: u32, a: f64) -> f64 {
    let base: f64 = psi
        .values
        .iter()
        .map(|z| if a == 0.0 { 1.0 } else { z.norm().powf(a) })
        .sum();
    f64::from(p.saturating_sub(1)) * (group.order() as f64).ln() + base.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn standard_states_are_valid() {
        let g = FiniteGroup::dihedral(3).unwrap();
        GroupState::new(&g, GroupState::trivial(&g).values).unwrap();
        GroupState::new(&g, GroupState::haar(&g).values).unwrap();
        let z5 = FiniteGroup::cyclic(5).unwrap();
        for j in 0..5 {
            let chi = GroupState::cyclic_character(&z5, j).unwrap();
            GroupState::new(&z5, chi.values).unwrap();
        }
    }

    #[test]
    fn rejects_bad_states() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        assert!(GroupState::new(&z2, vec![c(0.5, 0.0), c(0.0, 0.0)]).is_err());
        assert!(GroupState::new(&z2, vec![c(1.0, 0.0), c(1.5, 0.0)]).is_err());
        let z3 = FiniteGroup::cyclic(3).unwrap();
        // Not Hermitian: ψ(2) must be conj ψ(1).
        assert!(GroupState::new(&z3, vec![c(1.0, 0.0), c(0.0, 0.5), c(0.0, 0.5)]).is_err());
        // Hermitian and bounded but not positive definite.
        let err = GroupState::new(&z3, vec![c(1.0, 0.0), c(-0.9, 0.0), c(-0.9, 0.0)]).unwrap_err();
        assert!(err.to_string().contains("positive definite"), "{err}");
    }

    #[test]
    fn sum_abs_examples() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let triv = GroupState::trivial(&z2);
        assert!((group_sum_abs(&z2, &triv, 3).unwrap() - 8.0).abs() < 1e-12);
        let haar = GroupState::haar(&z2);
        assert!((group_sum_abs(&z2, &haar, 3).unwrap() - 4.0).abs() < 1e-12);
        assert!(group_sum_abs(&z2, &haar, 0).is_err());
    }

    #[test]
    fn parse_state_file() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let psi = GroupState::parse(&z2, "# psi\n1 0\n0.25 0\n").unwrap();
        assert_eq!(psi.value(1), c(0.25, 0.0));
        assert!(matches!(
            GroupState::parse(&z2, "1 0\n1 2 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
