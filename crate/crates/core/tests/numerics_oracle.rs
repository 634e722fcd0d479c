use num_bigint::BigUint;
use num_complex::Complex64;
use proptest::prelude::*;
use qwalk_core::numerics::{
    lambda_moment, log_add_exp, partitions_exact, partitions_table, LogScalar,
};
use qwalk_core::structures::{group_sum_abs, FiniteGroup, GroupState};

/// One adaptive Simpson step on `[a, b]` given `(x, f(x))` at both ends and the midpoint.
fn simpson(f: &dyn Fn(f64) -> f64, pts: [(f64, f64); 3], whole: f64, eps: f64, depth: u32) -> f64 {
    let [(a, fa), (m, fm), (b, fb)] = pts;
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * eps {
        return left + right + (left + right - whole) / 15.0;
    }
    simpson(f, [(a, fa), (lm, flm), (m, fm)], left, eps / 2.0, depth - 1)
        + simpson(
            f,
            [(m, fm), (rm, frm), (b, fb)],
            right,
            eps / 2.0,
            depth - 1,
        )
}

fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(f, [(a, fa), (m, fm), (b, fb)], whole, eps, 40)
}

#[test]
fn lambda_moments_against_adaptive_simpson() {
    let tau = std::f64::consts::TAU;
    for n in [5u64, 10, 50] {
        let density = |th: f64| (th / 2.0).sin().abs().powi(n as i32 - 1);
        let norm = adaptive(&density, 0.0, tau, 1e-12);
        for l in 0..=6 {
            let f = |th: f64| (1.0 - th.cos()).powi(l) * density(th);
            let quad = adaptive(&f, 0.0, tau, 1e-12) / norm;
            let closed = lambda_moment(n, l as u64).unwrap();
            assert!(
                (closed - quad).abs() <= 1e-8 * quad,
                "N={n} l={l}: {closed} vs {quad}"
            );
        }
        // First moment: 2N/(N+1).
        let m1 = lambda_moment(n, 1).unwrap();
        assert!((m1 - 2.0 * n as f64 / (n as f64 + 1.0)).abs() < 1e-14);
    }
}

fn brute_partitions(n: u32, parts: u32, max_part: u32) -> u64 {
    if parts == 0 {
        return u64::from(n == 0);
    }
    (1..=max_part.min(n))
        .map(|first| brute_partitions(n - first, parts - 1, first))
        .sum()
}

#[test]
fn partitions_against_enumeration() {
    let table = partitions_table(30, 30);
    for n in 0..=30u32 {
        for p in 0..=30u32 {
            assert_eq!(
                table[p as usize][n as usize],
                BigUint::from(brute_partitions(n, p, n)),
                "n={n} p={p}"
            );
        }
    }
}

#[test]
fn partition_totals_against_pentagonal_recurrence() {
    let nmax = 300;
    let mut p = vec![BigUint::from(0u8); nmax + 1];
    p[0] = BigUint::from(1u8);
    for n in 1..=nmax {
        let (mut plus, mut minus) = (BigUint::from(0u8), BigUint::from(0u8));
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let sign_plus = k % 2 == 1;
            for g in [g1, k * (3 * k + 1) / 2] {
                if g <= n {
                    if sign_plus {
                        plus += &p[n - g];
                    } else {
                        minus += &p[n - g];
                    }
                }
            }
        }
        p[n] = plus - minus;
    }
    let table = partitions_table(nmax, nmax);
    for n in [1usize, 7, 50, 199, 300] {
        let total: BigUint = (0..=n).map(|q| table[q][n].clone()).sum();
        assert_eq!(total, p[n], "n={n}");
    }
    assert_eq!(partitions_exact(300, 300), BigUint::from(1u8));
}

proptest! {
    #[test]
    fn logscalar_arithmetic(a in -1e6f64..1e6, b in -1e6f64..1e6) {
        let (la, lb) = (LogScalar::from_f64(a), LogScalar::from_f64(b));
        let scale = a.abs().max(b.abs()).max(1e-300);
        prop_assert!(((la + lb).to_f64() - (a + b)).abs() <= 1e-12 * scale);
        prop_assert!(((la * lb).to_f64() - a * b).abs() <= 1e-12 * (a * b).abs());
        prop_assert_eq!(la < lb, a < b);
        prop_assert!(((-la).to_f64() + a).abs() <= 1e-12 * a.abs());
    }

    #[test]
    fn logscalar_extreme_magnitudes(x in -1e5f64..1e5, y in -1e5f64..1e5) {
        // Sums of numbers far outside the f64 range.
        let s = LogScalar::from_ln(x) + LogScalar::from_ln(y);
        let want = log_add_exp(x, y);
        prop_assert!((s.logmag() - want).abs() <= 1e-12 * want.abs().max(1.0));
        prop_assert!((LogScalar::from_ln(x) * LogScalar::from_ln(y)).logmag() == x + y);
    }

    #[test]
    fn positive_definite_states(s in 1usize..5, dihedral in any::<bool>(), coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 10)) {
        let g = if dihedral { FiniteGroup::dihedral(s.max(2)).unwrap() } else { FiniteGroup::cyclic(s).unwrap() };
        let m = g.order();
        let f: Vec<Complex64> = (0..m).map(|i| Complex64::new(coeffs[i % 10].0, coeffs[(i * 3 + 1) % 10].1)).collect();
        let norm: f64 = f.iter().map(|z| z.norm_sqr()).sum();
        prop_assume!(norm > 1e-6);
        // ψ(x) = Σ_h conj(f(h)) f(h x) / Σ |f|² is positive definite.
        let vals: Vec<Complex64> = (0..m)
            .map(|x| (0..m).map(|h| f[h].conj() * f[g.mul(h, x)]).sum::<Complex64>() / norm)
            .collect();
        let psi = GroupState::new(&g, vals.clone()).unwrap();
        for p in 1..=3u32 {
            let mut brute = 0.0;
            let total = m.pow(p);
            for idx in 0..total {
                let gammas: Vec<usize> = (0..p).map(|i| (idx / m.pow(i)) % m).collect();
                brute += vals[g.product(&gammas)].norm();
            }
            let got = group_sum_abs(&g, &psi, p).unwrap();
            prop_assert!((got - brute).abs() <= 1e-10 * brute.max(1.0));
            prop_assert!(got <= (m as f64).powi(p as i32) * (1.0 + 1e-12));
        }
    }
}
