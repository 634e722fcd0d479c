//! The series engines against direct enumeration of words.

use num_complex::Complex64;
use proptest::prelude::*;
use qwalk_core::bounds::{
    a_k_unitary, a_k_wreath, BoundInterval, Evaluator, TruncationConfig, Walk,
};
use qwalk_core::structures::{CircleMeasure, FiniteGroup, GroupState};

/// `u_n(t)` by the three-term recurrence, in plain floating point.
fn u(t: f64, n: u64) -> f64 {
    let (mut a, mut b) = (1.0, t);
    for _ in 0..n {
        (a, b) = (b, t * b - a);
    }
    a
}

fn compositions(total: u32, parts: u32) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Power of the circle variable carried by the word: walk the blocks,
/// flipping the running sign after each even block.
fn circle_power(ns: &[u32], eps0: i64) -> i64 {
    let mut signs = vec![eps0];
    for &n in ns {
        let last = *signs.last().unwrap();
        signs.push(if n % 2 == 0 { -last } else { last });
    }
    let p = ns.len();
    signs[0].min(0) + signs[1..p].iter().sum::<i64>() + signs[p].max(0)
}

fn moment(atoms: &[(f64, f64)], e: i64) -> Complex64 {
    atoms
        .iter()
        .map(|&(a, w)| Complex64::from_polar(w, e as f64 * a))
        .sum()
}

fn brute_unitary(n: u64, t: f64, atoms: &[(f64, f64)], k: f64, max_total: u32, max_p: u32) -> f64 {
    let nf = n as f64;
    let mut sum = 0.0;
    for p in 1..=max_p {
        for total in p..=max_total {
            for ns in compositions(total, p) {
                for eps0 in [-1, 1] {
                    let d: f64 = ns.iter().map(|&b| u(nf, u64::from(b))).product();
                    let ratio: f64 = ns
                        .iter()
                        .map(|&b| u(t, u64::from(b)) / u(nf, u64::from(b)))
                        .product();
                    let m = moment(atoms, circle_power(&ns, eps0)).norm();
                    sum += d * d * (m * ratio.abs()).powf(2.0 * k);
                }
            }
        }
    }
    sum
}

fn brute_wreath(
    n: u64,
    tau: f64,
    group: &FiniteGroup,
    psi: &[Complex64],
    k: f64,
    max_total: u64,
    max_p: u32,
) -> f64 {
    let s = (n as f64).sqrt();
    let t = (n as f64 - tau).sqrt();
    let f = |i: u64| u(s, i).powi(2) * (u(t, i) / u(s, i)).abs().powf(2.0 * k);
    let mut sum = 0.0;
    let mut i = 2;
    while i <= max_total {
        sum += f(i);
        i += 2;
    }
    for p in 1..=max_p {
        // Indices: odd at both ends, even (>= 2) in between.
        let mut stack: Vec<(Vec<u64>, u64)> = vec![(vec![], 0)];
        while let Some((idx, used)) = stack.pop() {
            let pos = idx.len();
            if pos == p as usize + 1 {
                let blocks: f64 = idx.iter().map(|&i| f(i)).product();
                let mut gammas = vec![0usize; p as usize];
                loop {
                    let g = group.product(&gammas);
                    sum += blocks * psi[g].norm().powf(2.0 * k);
                    let mut j = gammas.len();
                    loop {
                        if j == 0 {
                            break;
                        }
                        j -= 1;
                        gammas[j] += 1;
                        if gammas[j] < group.order() {
                            break;
                        }
                        gammas[j] = 0;
                        if j == 0 {
                            j = usize::MAX;
                            break;
                        }
                    }
                    if j == usize::MAX {
                        break;
                    }
                }
                continue;
            }
            let end = pos == 0 || pos == p as usize;
            let mut i = if end { 1 } else { 2 };
            while used + i <= max_total {
                let mut next = idx.clone();
                next.push(i);
                stack.push((next, used + i));
                i += 2;
            }
        }
    }
    sum
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn unitary_matches_enumeration() {
    let atoms = [(0.0, 0.5), (1.1, 0.3), (2.5, 0.2)];
    let nu = CircleMeasure::atomic(atoms.to_vec()).unwrap();
    for (n, tau, k) in [
        (12u64, 2.0, 30.0),
        (12, 2.0, 0.0),
        (7, 3.5, 4.5),
        (5, 4.2, 2.0),
    ] {
        let tc = TruncationConfig::new(5, 10).unwrap();
        let engine = a_k_unitary(n, n as f64 - tau, &nu, k, &tc)
            .unwrap()
            .partial
            .to_f64();
        let oracle = brute_unitary(n, n as f64 - tau, &atoms, k, 10, 5);
        assert!(
            rel(engine, oracle) < 1e-9,
            "N={n} τ={tau} k={k}: {engine} vs {oracle}"
        );
    }
}

#[test]
fn wreath_matches_enumeration() {
    let z2 = FiniteGroup::cyclic(2).unwrap();
    let s3 = FiniteGroup::dihedral(3).unwrap();
    let cases = [
        (z2.clone(), GroupState::trivial(&z2)),
        (z2.clone(), GroupState::cyclic_character(&z2, 1).unwrap()),
        (s3.clone(), GroupState::haar(&s3)),
    ];
    for (g, psi) in &cases {
        for (n, tau, k) in [(12u64, 2.0, 30.0), (9, 1.0, 0.0), (30, 2.0, 7.0)] {
            let tc = TruncationConfig::new(4, 10).unwrap();
            let engine = a_k_wreath(n, tau, g, psi, k, &tc).unwrap().partial.to_f64();
            let oracle = brute_wreath(n, tau, g, psi.values(), k, 10, 4);
            assert!(
                rel(engine, oracle) < 1e-9,
                "|Γ|={} N={n} k={k}: {engine} vs {oracle}",
                g.order()
            );
        }
    }
}

fn contained(small: &BoundInterval, large: &BoundInterval) -> Result<(), TestCaseError> {
    let (s, l) = (small.partial.to_f64(), large.partial.to_f64());
    prop_assert!(s <= l * (1.0 + 1e-12), "partials {s} > {l}");
    if let Some(up) = small.upper() {
        prop_assert!(
            l <= up.to_f64() * (1.0 + 1e-12),
            "large partial {l} above certified {}",
            up.to_f64()
        );
    }
    if let Some(up) = large.upper() {
        if let Some(up_s) = small.upper() {
            prop_assert!(up.to_f64() <= up_s.to_f64() * (1.0 + 1e-9));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn unitary_truncations_nest(n in 6u64..60, tau_frac in 0.05f64..0.6, c in 0.5f64..3.0, angle in 0.0f64..std::f64::consts::TAU) {
        let tau = tau_frac * n as f64;
        let walk = Walk::unitary(n, tau, CircleMeasure::delta(angle)).unwrap();
        let k = walk.k_from_c(c);
        let small = Evaluator::new(walk.clone(), TruncationConfig::new(6, 12).unwrap()).unwrap().a_k(k).unwrap();
        let large = Evaluator::new(walk, TruncationConfig::new(12, 24).unwrap()).unwrap().a_k(k).unwrap();
        contained(&small, &large)?;
    }

    #[test]
    fn wreath_truncations_nest(n in 20u64..80, tau in 1.9f64..4.0, c in 0.5f64..3.0, s in 1usize..5, j in 0usize..5) {
        let g = FiniteGroup::cyclic(s).unwrap();
        let psi = GroupState::cyclic_character(&g, j % s).unwrap();
        let walk = Walk::wreath(n, tau, g, psi).unwrap();
        let k = walk.k_from_c(c);
        let small = Evaluator::new(walk.clone(), TruncationConfig::new(6, 12).unwrap()).unwrap().a_k(k).unwrap();
        let large = Evaluator::new(walk, TruncationConfig::new(12, 24).unwrap()).unwrap().a_k(k).unwrap();
        contained(&small, &large)?;
    }

    #[test]
    fn eval_truncations_nest(n in 6u64..60, theta in 0.3f64..6.0, c in 0.5f64..3.0) {
        let walk = Walk::unitary_eval(n, theta).unwrap();
        let k = walk.k_from_c(c);
        let small = Evaluator::new(walk.clone(), TruncationConfig::new(6, 12).unwrap()).unwrap().a_k(k).unwrap();
        let large = Evaluator::new(walk, TruncationConfig::new(12, 24).unwrap()).unwrap().a_k(k).unwrap();
        contained(&small, &large)?;
    }

    #[test]
    fn unitary_below_stated_bound(n in 10u64..400, tau in 0.5f64..4.0, c in 0.0f64..4.0) {
        let walk = Walk::unitary(n, tau, CircleMeasure::delta(0.0)).unwrap();
        let k = walk.k_from_c(c);
        prop_assume!(walk.hypotheses(k).iter().all(|h| h.holds));
        let a = Evaluator::new(walk.clone(), TruncationConfig::default()).unwrap().a_k(k).unwrap();
        let bound = walk.stated_bound(k).a_upper.unwrap();
        prop_assert!(a.upper().unwrap().to_f64() <= bound, "{} > {bound}", a.upper().unwrap().to_f64());
    }
}

#[test]
fn wreath_stated_bound_fails_near_the_offset_threshold() {
    // Trivial group just above the offset threshold: the series has converged and still exceeds it.
    let g = FiniteGroup::cyclic(1).unwrap();
    let walk = Walk::wreath(84, 3.081066195916879, g.clone(), GroupState::trivial(&g)).unwrap();
    let k = walk.k_from_c(0.14787957733156556);
    assert!(walk.hypotheses(k).iter().all(|h| h.holds));
    let a = Evaluator::new(walk.clone(), TruncationConfig::new(24, 96).unwrap())
        .unwrap()
        .a_k(k)
        .unwrap();
    let stated = walk.stated_bound(k).a_upper.unwrap();
    assert!(
        a.partial.to_f64() > stated * 1.001,
        "{} vs {stated}",
        a.partial.to_f64()
    );
    assert!(a.tail.unwrap().to_f64() < 1e-8);
}

#[test]
fn wreath_stated_bound_fails_for_two_letters() {
    // Words χ_1 γ χ_1 contribute about |Γ| e^{-2τc}, more than the stated
    // (1 + √|Γ|) e^{-2τc} once N is large.
    let g = FiniteGroup::cyclic(2).unwrap();
    let walk = Walk::wreath(2000, 2.0, g.clone(), GroupState::trivial(&g)).unwrap();
    let k = walk.k_from_c(2.0);
    assert!(walk.hypotheses(k).iter().all(|h| h.holds));
    let a = Evaluator::new(walk.clone(), TruncationConfig::default())
        .unwrap()
        .a_k(k)
        .unwrap();
    let stated = walk.stated_bound(k).a_upper.unwrap();
    assert!(a.partial.to_f64() > stated);
    let y = (-8f64).exp();
    assert!((a.partial.to_f64() / (3.0 * y) - 1.0).abs() < 0.05);
}

#[test]
fn tv_upper_is_monotone_along_k() {
    let walk = Walk::unitary(200, 2.0, CircleMeasure::delta(0.3)).unwrap();
    let ev = Evaluator::new(walk.clone(), TruncationConfig::default()).unwrap();
    let ks: Vec<f64> = (-8..=20).map(|i| walk.k_from_c(i as f64 * 0.25)).collect();
    let p = qwalk_core::bounds::cutoff_profile(&ev, &ks, 1).unwrap();
    assert!(p
        .rows
        .windows(2)
        .all(|w| w[0].tv_upper_hi >= w[1].tv_upper_hi));
    assert!(p.rows.last().unwrap().certified);
}
