use serde::Serialize;

use super::BoundInterval;
use crate::numerics::LogScalar;

/// Total-variation upper bounds derived from `A_k` through
/// `‖φ^{*k} - h‖ <= sqrt(A_k)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TvUpper {
    /// From the explicit part alone: not a bound, only what the truncation sees.
    pub lo: f64,
    /// From `partial + tail`; equal to 1 when there is no certificate.
    pub hi: f64,
    pub certified: bool,
    /// True when `hi` was capped at 1.
    pub clamped: bool,
}

fn half_sqrt(x: LogScalar) -> f64 {
    if x.is_zero() {
        0.0
    } else {
        (0.5 * x.logmag() - 2f64.ln()).exp().min(1.0)
    }
}

pub fn tv_upper_from_a(a: &BoundInterval) -> TvUpper {
    let lo = half_sqrt(a.partial);
    match a.upper() {
        Some(u) if a.is_certified() => {
            let raw = 0.5 * u.logmag() - 2f64.ln();
            TvUpper {
                lo,
                hi: raw.exp().min(1.0),
                certified: true,
                clamped: raw > 0.0,
            }
        }
        _ => TvUpper {
            lo,
            hi: 1.0,
            certified: false,
            clamped: true,
        },
    }
}

/// Second-moment lower bound: if a witness has mean `m` under the walk,
/// variance at most `var` under the walk and `h(χ²) = h_sq` under the Haar
/// state (where its mean is 0), the distance is at least
/// `1 - 4 (var + h_sq) / m²`.
pub fn tv_lower_chebyshev(m: f64, var: f64, h_sq: f64) -> f64 {
    if !(m > 0.0) {
        return 0.0;
    }
    (1.0 - 4.0 * (var + h_sq) / (m * m)).max(0.0)
}

/// [`tv_lower_chebyshev`] with the mean given in the log domain.
pub fn tv_lower_chebyshev_log(m: LogScalar, var: f64, h_sq: f64) -> f64 {
    if m.sign() <= 0 {
        return 0.0;
    }
    let r = (4.0 * (var + h_sq)).ln() - 2.0 * m.logmag();
    (-r.exp_m1()).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval(partial: f64, tail: Option<f64>) -> BoundInterval {
        BoundInterval {
            partial: LogScalar::from_f64(partial),
            tail: tail.map(LogScalar::from_f64),
            terms_used: 1,
            estimated: false,
            certificate: String::new(),
        }
    }

    #[test]
    fn upper_from_interval() {
        let tv = tv_upper_from_a(&interval(0.04, Some(0.0004)));
        assert!((tv.lo - 0.1).abs() < 1e-15);
        assert!((tv.hi - 0.0404f64.sqrt() / 2.0).abs() < 1e-15);
        assert!(tv.hi <= 0.1005);
        assert!(!tv.clamped);
        let tv = tv_upper_from_a(&interval(10.0, Some(1.0)));
        assert_eq!(tv.hi, 1.0);
        assert!(tv.clamped);
        let tv = tv_upper_from_a(&interval(0.01, None));
        assert!(!tv.certified);
        assert_eq!(tv.hi, 1.0);
    }

    #[test]
    fn chebyshev() {
        // Wreath witness at k = 0, N = 10: m = 9.
        let v = tv_lower_chebyshev(9.0, 9.0, 1.0);
        assert!((v - (1.0 - 40.0 / 81.0)).abs() < 1e-15);
        assert_eq!(tv_lower_chebyshev(1.0, 9.0, 1.0), 0.0);
        assert_eq!(tv_lower_chebyshev(0.0, 9.0, 1.0), 0.0);
        let l = tv_lower_chebyshev_log(LogScalar::from_f64(9.0), 9.0, 1.0);
        assert!((l - v).abs() < 1e-14);
        assert_eq!(
            tv_lower_chebyshev_log(LogScalar::from_ln(1e4), 9.0, 1.0),
            1.0
        );
    }
}
