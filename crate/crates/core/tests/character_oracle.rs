//! Coefficients of evaluation states against characters computed from the
//! fusion rules of the free unitary group.

use std::collections::BTreeMap;

use num_complex::Complex64;
use qwalk_core::repr::{coeff_eval, enumerate_unitary, UIrrepWord};
use qwalk_core::structures::trace_at;

/// Characters of all words in `u` (true) and `ū` (false) up to length
/// `max_len`, evaluated at a matrix with trace `tr`, from
/// `χ_{wa} = χ_w χ_a - [w = v ā] χ_v`.
fn fusion_characters(tr: Complex64, max_len: usize) -> BTreeMap<Vec<bool>, Complex64> {
    let mut chi = BTreeMap::new();
    chi.insert(vec![], Complex64::new(1.0, 0.0));
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for a in [true, false] {
                let letter = if a { tr } else { tr.conj() };
                let mut v = chi[w] * letter;
                if w.last() == Some(&!a) {
                    v -= chi[&w[..w.len() - 1]];
                }
                let mut wa = w.clone();
                wa.push(a);
                chi.insert(wa.clone(), v);
                next.push(wa);
            }
        }
        frontier = next;
    }
    chi
}

/// Lengths of the maximal alternating runs and `#u - #ū`.
fn shape(w: &[bool]) -> (Vec<u32>, i64) {
    let mut runs = vec![1u32];
    for i in 1..w.len() {
        if w[i] != w[i - 1] {
            *runs.last_mut().unwrap() += 1;
        } else {
            runs.push(1);
        }
    }
    let power = w.iter().map(|&a| if a { 1 } else { -1 }).sum();
    (runs, power)
}

#[test]
fn eval_coefficients_follow_fusion_rules() {
    let max_len = 7;
    for n in [3u64, 4, 6, 11] {
        for theta in [0.0, 0.4, 1.7, 3.0, std::f64::consts::PI, 5.5] {
            let tr = trace_at(n, theta);
            let dim = fusion_characters(Complex64::new(n as f64, 0.0), max_len);
            let chi = fusion_characters(tr, max_len);
            // Multiset of shapes on both sides.
            let mut from_fusion: BTreeMap<(Vec<u32>, i64), usize> = BTreeMap::new();
            let mut values: BTreeMap<(Vec<u32>, i64), Complex64> = BTreeMap::new();
            for (w, v) in &chi {
                if w.is_empty() {
                    continue;
                }
                let key = shape(w);
                *from_fusion.entry(key.clone()).or_default() += 1;
                let normalized = v / dim[w];
                if let Some(prev) = values.insert(key, normalized) {
                    assert!((prev - normalized).norm() < 1e-9);
                }
            }
            let mut from_engine: BTreeMap<(Vec<u32>, i64), usize> = BTreeMap::new();
            for word in enumerate_unitary(max_len as u32, max_len as u32) {
                let key = (word.ns().to_vec(), word.exponent());
                *from_engine.entry(key.clone()).or_default() += 1;
                let c = coeff_eval(&word, theta, n).unwrap().to_complex();
                let want = values[&key];
                assert!(
                    (c - want).norm() < 1e-9 * want.norm().max(1.0),
                    "N={n} θ={theta} {key:?}: {c} vs {want}"
                );
            }
            assert_eq!(from_fusion, from_engine);
        }
    }
}

#[test]
fn dimensions_follow_fusion_rules() {
    let dim = fusion_characters(Complex64::new(5.0, 0.0), 6);
    for (w, d) in dim {
        if w.is_empty() {
            continue;
        }
        let (runs, _) = shape(&w);
        let word = UIrrepWord::new(runs, 1).unwrap();
        assert!((word.dim(5).unwrap().to_f64() / d.re - 1.0).abs() < 1e-12);
    }
}
