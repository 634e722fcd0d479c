use num_complex::Complex64;

use super::unitary::{log_abs_ratio, next_composition};
use super::Coefficient;
use crate::error::{domain, Result};
use crate::numerics::{u_n, LogScalar};
use crate::structures::{FiniteGroup, GroupState};

/// Irreducible representation of a free wreath product `Ĝ ≀_* S_N^+`.
///
/// With no group letters the word is the even character `χ_{2n_0+2}` of
/// `S_N^+`. Otherwise it is `χ_{2n_0+1} γ_1 χ_{2n_1+2} γ_2 ⋯ γ_p χ_{2n_p+1}`:
/// odd indices at both ends, even indices in between.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathWord {
    outer: Vec<u32>,
    gammas: Vec<usize>,
}

impl WreathWord {
    pub fn new(outer: Vec<u32>, gammas: Vec<usize>) -> Result<Self> {
        if outer.len() != gammas.len() + 1 {
            return Err(domain(format!(
                "{} group letters need {} outer indices, got {}",
                gammas.len(),
                gammas.len() + 1,
                outer.len()
            )));
        }
        Ok(Self { outer, gammas })
    }

    pub fn outer(&self) -> &[u32] {
        &self.outer
    }

    pub fn gammas(&self) -> &[usize] {
        &self.gammas
    }

    pub fn p(&self) -> usize {
        self.gammas.len()
    }

    /// Indices of the `u` factors, in order.
    pub fn indices(&self) -> Vec<u64> {
        let p = self.gammas.len();
        if p == 0 {
            return vec![2 * u64::from(self.outer[0]) + 2];
        }
        self.outer
            .iter()
            .enumerate()
            .map(|(i, &n)| {
                let n = u64::from(n);
                if i == 0 || i == p {
                    2 * n + 1
                } else {
                    2 * n + 2
                }
            })
            .collect()
    }

    pub fn total(&self) -> u64 {
        self.indices().iter().sum()
    }

    /// `Π u_{s_i}(√N)`.
    pub fn dim(&self, n: u64) -> Result<LogScalar> {
        let s = (n as f64).sqrt();
        self.indices()
            .into_iter()
            .try_fold(LogScalar::ONE, |acc, k| Ok(acc * u_n(s, k)?))
    }
}

/// `ψ(γ_1 ⋯ γ_p) Π u_{s_i}(√(N-τ)) / u_{s_i}(√N)`.
pub fn coeff_wreath(
    word: &WreathWord,
    n: u64,
    tau: f64,
    group: &FiniteGroup,
    psi: &GroupState,
) -> Result<Coefficient> {
    if n < 5 {
        return Err(domain(format!("N = {n} must be at least 5")));
    }
    if !(tau >= 0.0 && tau <= n as f64) {
        return Err(domain(format!("τ = {tau} must lie in [0, N]")));
    }
    if let Some(&g) = word.gammas.iter().find(|&&g| g >= group.order()) {
        return Err(domain(format!(
            "group letter {g} outside 0..{}",
            group.order()
        )));
    }
    let psi_val = if word.gammas.is_empty() {
        Complex64::new(1.0, 0.0)
    } else {
        psi.value(group.product(&word.gammas))
    };
    let t = (n as f64 - tau).sqrt();
    let s = (n as f64).sqrt();
    let mut lm = 0.0;
    let mut sign = 1;
    for k in word.indices() {
        let (l, sg) = log_abs_ratio(k, t, s)?;
        lm += l;
        sign *= sg;
    }
    Ok(Coefficient::from_parts(psi_val, lm, sign))
}

/// All words with at most `max_p` group letters and total index at most
/// `max_total`, ordered by `(p, outer, gammas)` lexicographically.
pub fn enumerate_wreath(
    group_order: usize,
    max_total: u32,
    max_p: u32,
) -> impl Iterator<Item = WreathWord> {
    let mut out = Vec::new();
    // p = 0: χ_{2n+2}.
    for n0 in 0.. {
        if 2 * n0 + 2 > max_total {
            break;
        }
        out.push(WreathWord {
            outer: vec![n0],
            gammas: vec![],
        });
    }
    for p in 1..=max_p {
        // Σ indices = 2 Σ n_i + 2p.
        if 2 * p > max_total {
            break;
        }
        let budget = (max_total - 2 * p) / 2;
        let mut outer = vec![0u32; p as usize + 1];
        loop {
            let mut gammas = vec![0usize; p as usize];
            loop {
                out.push(WreathWord {
                    outer: outer.clone(),
                    gammas: gammas.clone(),
                });
                if !next_tuple(&mut gammas, group_order) {
                    break;
                }
            }
            if !next_composition(&mut outer, budget, 0) {
                break;
            }
        }
    }
    out.into_iter()
}

fn next_tuple(v: &mut [usize], base: usize) -> bool {
    for x in v.iter_mut().rev() {
        if *x + 1 < base {
            *x += 1;
            return true;
        }
        *x = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices_and_dims() {
        let w = WreathWord::new(vec![0], vec![]).unwrap();
        assert_eq!(w.indices(), vec![2]);
        // χ_2 of S_9^+ has dimension u_2(3) = 8.
        assert!((w.dim(9).unwrap().to_f64() - 8.0).abs() < 1e-12);
        let w = WreathWord::new(vec![0, 1, 0], vec![1, 1]).unwrap();
        assert_eq!(w.indices(), vec![1, 4, 1]);
        // At N = 9: u_1(3) u_4(3) u_1(3) = 3 * 55 * 3.
        assert!((w.dim(9).unwrap().to_f64() - 495.0).abs() < 1e-9);
        assert!(WreathWord::new(vec![0, 0], vec![]).is_err());
    }

    #[test]
    fn enumeration_small() {
        let words: Vec<_> = enumerate_wreath(2, 3, 1).collect();
        let keys: Vec<(Vec<u32>, Vec<usize>)> = words
            .iter()
            .map(|w| (w.outer.clone(), w.gammas.clone()))
            .collect();
        assert_eq!(
            keys,
            vec![
                (vec![0], vec![]),
                (vec![0, 0], vec![0]),
                (vec![0, 0], vec![1])
            ]
        );
    }

    #[test]
    fn trivial_exponent_coefficients() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let psi = GroupState::trivial(&z3);
        let w = WreathWord::new(vec![0], vec![]).unwrap();
        let c = coeff_wreath(&w, 30, 2.0, &z3, &psi).unwrap();
        // u_2(x) = x^2 - 1.
        assert!((c.to_complex().re - 27.0 / 29.0).abs() < 1e-14);
        let w = WreathWord::new(vec![0, 0], vec![2]).unwrap();
        let c = coeff_wreath(&w, 30, 2.0, &z3, &psi).unwrap();
        assert!((c.to_complex().re - 28.0 / 30.0).abs() < 1e-14);
    }

    #[test]
    fn state_value_enters_coefficient() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let chi = GroupState::cyclic_character(&z3, 1).unwrap();
        let w = WreathWord::new(vec![0, 0, 0], vec![1, 1]).unwrap();
        let c = coeff_wreath(&w, 30, 0.0, &z3, &chi).unwrap().to_complex();
        assert!((c - chi.value(2)).norm() < 1e-14);
    }
}
