use num_complex::Complex64;

use super::Coefficient;
use crate::error::{domain, Result};
use crate::numerics::{cheb_u, log_u, log_u_ratio, u_n, LogScalar, T_MARGIN};
use crate::structures::{porod_integral, tau_theta, trace_at, CircleMeasure};

/// Irreducible representation `z^{[ε_0]-} χ_{n_1} z^{ε_1} ⋯ χ_{n_p} z^{[ε_p]+}`
/// of the free unitary group, indexed by block lengths `n_i >= 1` and the
/// initial sign `ε_0`.
///
/// Later signs follow `ε_i = (-1)^{n_i + 1} ε_{i-1}`: an odd block keeps the
/// sign, an even block flips it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UIrrepWord {
    ns: Vec<u32>,
    eps0: i8,
}

impl UIrrepWord {
    pub fn new(ns: Vec<u32>, eps0: i8) -> Result<Self> {
        if ns.is_empty() {
            return Err(domain("a word needs at least one block"));
        }
        if ns.contains(&0) {
            return Err(domain("block lengths must be positive"));
        }
        if eps0 != 1 && eps0 != -1 {
            return Err(domain(format!("ε_0 must be ±1, got {eps0}")));
        }
        Ok(Self { ns, eps0 })
    }

    pub fn ns(&self) -> &[u32] {
        &self.ns
    }

    pub fn eps0(&self) -> i8 {
        self.eps0
    }

    pub fn p(&self) -> usize {
        self.ns.len()
    }

    pub fn total(&self) -> u64 {
        self.ns.iter().map(|&n| u64::from(n)).sum()
    }

    /// `[ε_0, ε_1, ..., ε_p]`.
    pub fn eps_sequence(&self) -> Vec<i8> {
        let mut out = Vec::with_capacity(self.ns.len() + 1);
        let mut e = self.eps0;
        out.push(e);
        for &n in &self.ns {
            if n % 2 == 0 {
                e = -e;
            }
            out.push(e);
        }
        out
    }

    /// `ε = [ε_0]_- + ε_1 + ... + ε_{p-1} + [ε_p]_+`, the power of the
    /// determinant-like character `z` carried by the word.
    pub fn exponent(&self) -> i64 {
        let seq = self.eps_sequence();
        let p = self.ns.len();
        let neg = |e: i8| i64::from(e.min(0));
        let pos = |e: i8| i64::from(e.max(0));
        neg(seq[0]) + seq[1..p].iter().map(|&e| i64::from(e)).sum::<i64>() + pos(seq[p])
    }

    /// `Π u_{n_i}(N)`.
    pub fn dim(&self, n: u64) -> Result<LogScalar> {
        let t = n as f64;
        self.ns
            .iter()
            .try_fold(LogScalar::ONE, |acc, &k| Ok(acc * u_n(t, u64::from(k))?))
    }
}

/// `(ln |u_n(t)/u_n(s)|, sign)` for `s > 2` and any `t >= 0`.
pub(crate) fn log_abs_ratio(n: u64, t: f64, s: f64) -> Result<(f64, i8)> {
    if t > 2.0 + T_MARGIN {
        Ok((log_u_ratio(n, t, s)?, 1))
    } else if t >= 0.0 {
        let v = cheb_u(t, n);
        let sign = if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            0
        };
        Ok((v.abs().ln() - log_u(s, n)?, sign))
    } else {
        Err(domain(format!("evaluation point {t} must be non-negative")))
    }
}

fn block_product(ns: &[u32], t: f64, s: f64) -> Result<(f64, i8)> {
    let mut lm = 0.0;
    let mut sign = 1;
    for &k in ns {
        let (l, sg) = log_abs_ratio(u64::from(k), t, s)?;
        lm += l;
        sign *= sg;
    }
    Ok((lm, sign))
}

fn check_dim(n: u64) -> Result<()> {
    if n < 3 {
        return Err(domain(format!("N = {n} must be at least 3")));
    }
    Ok(())
}

/// Fourier coefficient of the state `(t, ν)` at `word`:
/// `m_ε(ν) · Π u_{n_i}(t) / u_{n_i}(N)`.
pub fn coeff_unitary(word: &UIrrepWord, t: f64, nu: &CircleMeasure, n: u64) -> Result<Coefficient> {
    check_dim(n)?;
    let m = nu.moment(word.exponent());
    let (lm, sign) = block_product(&word.ns, t, n as f64)?;
    Ok(Coefficient::from_parts(m, lm, sign))
}

/// Coefficient of evaluation at `g_θ = diag(e^{iθ}, 1, ..., 1)`: the state
/// `(N - τ_θ, δ_{arg Tr g_θ})`.
pub fn coeff_eval(word: &UIrrepWord, theta: f64, n: u64) -> Result<Coefficient> {
    check_dim(n)?;
    let t = n as f64 - tau_theta(n, theta);
    let m = Complex64::from_polar(1.0, word.exponent() as f64 * trace_at(n, theta).arg());
    let (lm, sign) = block_product(&word.ns, t, n as f64)?;
    Ok(Coefficient::from_parts(m, lm, sign))
}

/// Coefficient of the Porod mixture `∫ ev_{g_θ} dμ_N(θ)`, by quadrature.
pub fn coeff_mixture(word: &UIrrepWord, n: u64, panels: usize) -> Result<Coefficient> {
    check_dim(n)?;
    let nf = n as f64;
    let eps = word.exponent() as f64;
    // Validate once so the integrand can unwrap.
    block_product(&word.ns, nf - 2.0, nf)?;
    let v = porod_integral(n, panels, |theta| {
        let t = nf - tau_theta(n, theta);
        let (lm, sign) = block_product(&word.ns, t, nf).expect("validated above");
        (eps * trace_at(n, theta).arg()).cos() * f64::from(sign) * lm.exp()
    });
    Ok(Coefficient::from_parts(
        Complex64::new(1.0, 0.0),
        v.abs().ln(),
        v.signum() as i8,
    ))
}

/// All words with `p <= max_p` blocks and `Σ n_i <= max_total`, in
/// lexicographic order of `(p, n_1, ..., n_p, ε_0)` with `ε_0 = -1` first.
pub fn enumerate_unitary(max_total: u32, max_p: u32) -> impl Iterator<Item = UIrrepWord> {
    let mut ns: Vec<u32> = Vec::new();
    let mut neg_done = false;
    let mut started = false;
    std::iter::from_fn(move || {
        if !started {
            started = true;
            if max_p == 0 || max_total == 0 {
                return None;
            }
            ns = vec![1];
            return Some(UIrrepWord {
                ns: ns.clone(),
                eps0: -1,
            });
        }
        if !neg_done {
            neg_done = true;
            return Some(UIrrepWord {
                ns: ns.clone(),
                eps0: 1,
            });
        }
        if !next_composition(&mut ns, max_total, 1) {
            let p = ns.len() as u32 + 1;
            if p > max_p || p > max_total {
                return None;
            }
            ns = vec![1; p as usize];
        }
        neg_done = false;
        Some(UIrrepWord {
            ns: ns.clone(),
            eps0: -1,
        })
    })
}

/// Lexicographic successor among vectors of the same length with entries
/// `>= min` and sum `<= max_sum`.
pub(crate) fn next_composition(v: &mut [u32], max_sum: u32, min: u32) -> bool {
    let len = v.len();
    let mut prefix: u32 = v.iter().sum();
    for i in (0..len).rev() {
        prefix -= v[i];
        let rest = (len - 1 - i) as u32 * min;
        if prefix + v[i] + 1 + rest <= max_sum {
            v[i] += 1;
            for x in &mut v[i + 1..] {
                *x = min;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_sequence_and_exponent() {
        let w = UIrrepWord::new(vec![1], 1).unwrap();
        assert_eq!(w.eps_sequence(), vec![1, 1]);
        assert_eq!(w.exponent(), 1);
        let w = UIrrepWord::new(vec![1], -1).unwrap();
        assert_eq!(w.exponent(), -1);
        // Even blocks alone carry no net phase.
        let w = UIrrepWord::new(vec![2], 1).unwrap();
        assert_eq!(w.eps_sequence(), vec![1, -1]);
        assert_eq!(w.exponent(), 0);
        // The word u·uūu: three letters u against one ū.
        let w = UIrrepWord::new(vec![1, 3], 1).unwrap();
        assert_eq!(w.exponent(), 2);
        let w = UIrrepWord::new(vec![2, 2], -1).unwrap();
        assert_eq!(w.eps_sequence(), vec![-1, 1, -1]);
        assert_eq!(w.exponent(), 0);
    }

    #[test]
    fn dimensions() {
        let w = UIrrepWord::new(vec![2, 1], 1).unwrap();
        assert!((w.dim(10).unwrap().to_f64() - 990.0).abs() < 1e-9);
    }

    #[test]
    fn enumeration_small() {
        let words: Vec<_> = enumerate_unitary(2, 2).collect();
        let keys: Vec<(Vec<u32>, i8)> = words.iter().map(|w| (w.ns.clone(), w.eps0)).collect();
        assert_eq!(
            keys,
            vec![
                (vec![1], -1),
                (vec![1], 1),
                (vec![2], -1),
                (vec![2], 1),
                (vec![1, 1], -1),
                (vec![1, 1], 1),
            ]
        );
        assert_eq!(enumerate_unitary(0, 3).count(), 0);
    }

    #[test]
    fn enumeration_count_is_binomial() {
        // Σ_{p <= P} 2 C(M, p).
        let count = enumerate_unitary(9, 4).count();
        let expect: usize = 2 * (1..=4).map(|p| binom(9, p)).sum::<usize>();
        assert_eq!(count, expect);
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn haar_word_has_unit_coefficient() {
        let w = UIrrepWord::new(vec![3, 1], -1).unwrap();
        let c = coeff_unitary(&w, 10.0, &CircleMeasure::Haar, 10).unwrap();
        if w.exponent() == 0 {
            assert!((c.modulus().to_f64() - 1.0).abs() < 1e-14);
        } else {
            assert!(c.modulus().is_zero());
        }
    }

    #[test]
    fn first_order_eval_is_normalized_trace() {
        let w = UIrrepWord::new(vec![1], 1).unwrap();
        let c = coeff_eval(&w, 0.9, 7).unwrap().to_complex();
        let expect = trace_at(7, 0.9) / 7.0;
        assert!((c - expect).norm() < 1e-14);
    }

    #[test]
    fn mixture_first_order_uses_wallis_ratio() {
        // ∫ Tr(g_θ)/N dμ_N = 1 - E[λ]/N = 1 - 2/(N+1).
        let w = UIrrepWord::new(vec![1], 1).unwrap();
        let n = 20;
        let c = coeff_mixture(&w, n, 512).unwrap().to_complex();
        assert!((c.re - (1.0 - 2.0 / 21.0)).abs() < 1e-12, "{c}");
    }

    #[test]
    fn low_evaluation_point_uses_recurrence() {
        let w = UIrrepWord::new(vec![2], 1).unwrap();
        let c = coeff_unitary(&w, 1.0, &CircleMeasure::Haar, 5).unwrap();
        // u_2(1) = 0.
        assert!(c.modulus().is_zero());
        let w = UIrrepWord::new(vec![3], 1).unwrap();
        let c = coeff_unitary(&w, 1.0, &CircleMeasure::delta(0.0), 5).unwrap();
        // u_3(1) = -1, u_3(5) = 115.
        assert!((c.to_complex().re + 1.0 / 115.0).abs() < 1e-14);
    }
}
