use serde::Serialize;

use super::tv::tv_upper_from_a;
use super::walk::Evaluator;
use crate::error::{domain, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProfileRow {
    pub k: f64,
    pub c: f64,
    pub tv_upper_lo: f64,
    pub tv_upper_hi: f64,
    pub tv_lower: f64,
    pub certified: bool,
    pub terms_used: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Profile {
    pub nominal_cutoff: f64,
    pub rows: Vec<ProfileRow>,
}

fn row(ev: &Evaluator, k: f64) -> Result<ProfileRow> {
    let a = ev.a_k(k)?;
    let tv = tv_upper_from_a(&a);
    Ok(ProfileRow {
        k,
        c: ev.walk().c_from_k(k),
        tv_upper_lo: tv.lo,
        tv_upper_hi: tv.hi,
        tv_lower: ev.walk().tv_lower(k)?,
        certified: tv.certified,
        terms_used: a.terms_used,
    })
}

/// Distance bounds along a grid of steps, sorted by `k`.
///
/// Since `A_k` is nonincreasing in `k`, a certified upper bound at `k` also
/// holds at every later step, so `tv_upper_hi` is replaced by its running
/// minimum. Rows are computed on `threads` workers; the result does not
/// depend on the thread count.
pub fn cutoff_profile(ev: &Evaluator, ks: &[f64], threads: usize) -> Result<Profile> {
    if let Some(bad) = ks.iter().find(|k| !(**k >= 0.0 && k.is_finite())) {
        return Err(domain(format!("k = {bad} must be a non-negative number")));
    }
    let mut ks = ks.to_vec();
    ks.sort_by(f64::total_cmp);
    ks.dedup();
    let mut rows = compute_rows(ev, &ks, threads)?;
    let mut best = f64::INFINITY;
    for r in &mut rows {
        if r.certified {
            best = best.min(r.tv_upper_hi);
            r.tv_upper_hi = best;
        } else if best < r.tv_upper_hi {
            r.tv_upper_hi = best;
            r.certified = true;
        }
    }
    Ok(Profile {
        nominal_cutoff: ev.walk().nominal_cutoff(),
        rows,
    })
}

#[cfg(feature = "parallel")]
fn compute_rows(ev: &Evaluator, ks: &[f64], threads: usize) -> Result<Vec<ProfileRow>> {
    use rayon::prelude::*;
    if threads <= 1 {
        return ks.iter().map(|&k| row(ev, k)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| domain(format!("thread pool: {e}")))?;
    pool.install(|| ks.par_iter().map(|&k| row(ev, k)).collect())
}

#[cfg(not(feature = "parallel"))]
fn compute_rows(ev: &Evaluator, ks: &[f64], _threads: usize) -> Result<Vec<ProfileRow>> {
    ks.iter().map(|&k| row(ev, k)).collect()
}
