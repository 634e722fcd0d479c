use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg};

use crate::error::{domain, Result};

/// A real number stored as `sign * exp(logmag)`.
///
/// Zero is `sign == 0` with `logmag == -inf`. Every other value has
/// `sign = ±1` and a finite `logmag`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogScalar {
    sign: i8,
    logmag: f64,
}

impl LogScalar {
    pub const ZERO: LogScalar = LogScalar {
        sign: 0,
        logmag: f64::NEG_INFINITY,
    };
    pub const ONE: LogScalar = LogScalar {
        sign: 1,
        logmag: 0.0,
    };

    pub fn new(sign: i8, logmag: f64) -> Result<Self> {
        if sign == 0 || logmag == f64::NEG_INFINITY {
            return Ok(Self::ZERO);
        }
        if !(sign == 1 || sign == -1) {
            return Err(domain(format!("sign must be -1, 0 or 1, got {sign}")));
        }
        if !logmag.is_finite() {
            return Err(domain(format!(
                "log-magnitude must be finite, got {logmag}"
            )));
        }
        Ok(Self { sign, logmag })
    }

    /// Positive value with the given natural log. `-inf` gives zero.
    pub fn from_ln(logmag: f64) -> Self {
        if logmag == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            debug_assert!(logmag.is_finite(), "non-finite log {logmag}");
            Self { sign: 1, logmag }
        }
    }

    pub fn from_f64(x: f64) -> Self {
        debug_assert!(x.is_finite());
        if x == 0.0 {
            Self::ZERO
        } else {
            Self {
                sign: if x > 0.0 { 1 } else { -1 },
                logmag: x.abs().ln(),
            }
        }
    }

    pub fn to_f64(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.logmag.exp(),
        }
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    /// Natural log of the magnitude; `-inf` for zero.
    pub fn logmag(self) -> f64 {
        self.logmag
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn abs(self) -> Self {
        if self.sign == 0 {
            self
        } else {
            Self {
                sign: 1,
                logmag: self.logmag,
            }
        }
    }

    /// `ln(self)` for a positive value.
    pub fn ln(self) -> Result<f64> {
        match self.sign {
            1 => Ok(self.logmag),
            0 => Ok(f64::NEG_INFINITY),
            _ => Err(domain("logarithm of a negative number")),
        }
    }

    /// `self^k` for real `k`; see [`log_pow`].
    pub fn powf(self, k: f64) -> Result<Self> {
        log_pow(self, k)
    }

    pub fn sqrt(self) -> Result<Self> {
        self.powf(0.5)
    }
}

/// `x^k` with the convention `0^0 = 1`.
///
/// Negative bases are only allowed for integral exponents.
pub fn log_pow(x: LogScalar, k: f64) -> Result<LogScalar> {
    if !k.is_finite() {
        return Err(domain(format!("exponent must be finite, got {k}")));
    }
    if x.sign == 0 {
        return match k.partial_cmp(&0.0) {
            Some(Ordering::Equal) => Ok(LogScalar::ONE),
            Some(Ordering::Greater) => Ok(LogScalar::ZERO),
            _ => Err(domain("zero raised to a negative power")),
        };
    }
    let sign = if x.sign < 0 {
        if k.fract() != 0.0 {
            return Err(domain("negative base with non-integral exponent"));
        }
        if (k / 2.0).fract() == 0.0 {
            1
        } else {
            -1
        }
    } else {
        1
    };
    LogScalar::new(sign, x.logmag * k)
}

/// `ln(e^a + e^b)`, exact for infinite arguments.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    if hi == f64::INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// Sum of values that all share one sign, in the log domain.
pub fn logsumexp(xs: &[LogScalar]) -> Result<LogScalar> {
    let mut sign = 0;
    for x in xs {
        if x.sign != 0 {
            if sign != 0 && sign != x.sign {
                return Err(domain("logsumexp requires values of a common sign"));
            }
            sign = x.sign;
        }
    }
    if sign == 0 {
        return Ok(LogScalar::ZERO);
    }
    let max = xs
        .iter()
        .map(|x| x.logmag)
        .fold(f64::NEG_INFINITY, f64::max);
    let s: f64 = xs.iter().map(|x| (x.logmag - max).exp()).sum();
    LogScalar::new(sign, max + s.ln())
}

impl Add for LogScalar {
    type Output = LogScalar;

    fn add(self, rhs: LogScalar) -> LogScalar {
        if self.sign == 0 {
            return rhs;
        }
        if rhs.sign == 0 {
            return self;
        }
        let (big, small) = if self.logmag >= rhs.logmag {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let d = (small.logmag - big.logmag).exp();
        if big.sign == small.sign {
            LogScalar {
                sign: big.sign,
                logmag: big.logmag + d.ln_1p(),
            }
        } else if d == 1.0 {
            LogScalar::ZERO
        } else {
            LogScalar {
                sign: big.sign,
                logmag: big.logmag + (-d).ln_1p(),
            }
        }
    }
}

impl Neg for LogScalar {
    type Output = LogScalar;

    fn neg(self) -> LogScalar {
        LogScalar {
            sign: -self.sign,
            logmag: self.logmag,
        }
    }
}

impl Mul for LogScalar {
    type Output = LogScalar;

    fn mul(self, rhs: LogScalar) -> LogScalar {
        if self.sign == 0 || rhs.sign == 0 {
            return LogScalar::ZERO;
        }
        LogScalar {
            sign: self.sign * rhs.sign,
            logmag: self.logmag + rhs.logmag,
        }
    }
}

impl Div for LogScalar {
    type Output = LogScalar;

    /// Panics on division by zero.
    fn div(self, rhs: LogScalar) -> LogScalar {
        assert!(rhs.sign != 0, "LogScalar division by zero");
        if self.sign == 0 {
            return LogScalar::ZERO;
        }
        LogScalar {
            sign: self.sign * rhs.sign,
            logmag: self.logmag - rhs.logmag,
        }
    }
}

impl PartialOrd for LogScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let key = |x: &LogScalar| -> (i8, f64) {
            match x.sign {
                0 => (0, 0.0),
                1 => (1, x.logmag),
                _ => (-1, -x.logmag),
            }
        };
        let (sa, ma) = key(self);
        let (sb, mb) = key(other);
        match sa.cmp(&sb) {
            Ordering::Equal => ma.partial_cmp(&mb),
            o => Some(o),
        }
    }
}

impl fmt::Display for LogScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            s => {
                let prefix = if s < 0 { "-" } else { "" };
                if self.logmag.abs() < 700.0 {
                    write!(f, "{}{:e}", prefix, self.logmag.exp())
                } else {
                    write!(f, "{}exp({})", prefix, self.logmag)
                }
            }
        }
    }
}
