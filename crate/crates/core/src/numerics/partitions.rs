//! Exact counts of integer partitions into a fixed number of positive parts.

use num_bigint::BigUint;

/// Table `t[q][m]` of the number of partitions of `m` into exactly `q`
/// positive parts, for `q <= pmax`, `m <= nmax`.
///
/// Uses `π_q(m) = π_{q-1}(m-1) + π_q(m-q)`: either some part equals 1, or
/// subtracting 1 from every part leaves a partition of `m - q`.
pub fn partitions_table(nmax: usize, pmax: usize) -> Vec<Vec<BigUint>> {
    let mut t = vec![vec![BigUint::ZERO; nmax + 1]; pmax + 1];
    t[0][0] = BigUint::from(1u8);
    for q in 1..=pmax {
        for m in q..=nmax {
            let v = &t[q - 1][m - 1] + &t[q][m - q];
            t[q][m] = v;
        }
    }
    t
}

/// Number of partitions of `n` into exactly `p` positive parts.
pub fn partitions_exact(n: usize, p: usize) -> BigUint {
    if p > n {
        return if n == 0 && p == 0 {
            BigUint::from(1u8)
        } else {
            BigUint::ZERO
        };
    }
    partitions_table(n, p).swap_remove(p).swap_remove(n)
}
