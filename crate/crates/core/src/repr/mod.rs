//! Irreducible representations of the free unitary group and of free wreath
//! products, their dimensions, and the Fourier coefficients of the walks.

mod expect;
mod unitary;
mod wreath;

use num_complex::Complex64;

use crate::numerics::LogScalar;

pub use expect::{
    chi2_expectation_unitary, chi2_expectation_wreath, chi_expectation_mixture, mixture_phi_chi,
};
pub use unitary::{coeff_eval, coeff_mixture, coeff_unitary, enumerate_unitary, UIrrepWord};
pub use wreath::{coeff_wreath, enumerate_wreath, WreathWord};

pub(crate) use unitary::log_abs_ratio;

/// A complex Fourier coefficient in polar form with a log-domain modulus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coefficient {
    modulus: LogScalar,
    phase: f64,
}

impl Coefficient {
    /// `m · sign · exp(log_prod)`.
    pub(crate) fn from_parts(m: Complex64, log_prod: f64, sign: i8) -> Self {
        let norm = m.norm();
        if norm == 0.0 || sign == 0 || log_prod == f64::NEG_INFINITY {
            return Self {
                modulus: LogScalar::ZERO,
                phase: 0.0,
            };
        }
        let flip = if sign < 0 { std::f64::consts::PI } else { 0.0 };
        Self {
            modulus: LogScalar::from_ln(norm.ln() + log_prod),
            phase: m.arg() + flip,
        }
    }

    pub fn modulus(self) -> LogScalar {
        self.modulus
    }

    pub fn phase(self) -> f64 {
        self.phase
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(self.modulus.to_f64(), self.phase)
    }
}
