//! Upper and lower bounds on the total-variation distance to Haar state for
//! random walks on the free unitary quantum group `U_N^+` and on free wreath
//! products `Ĝ ≀_* S_N^+`.
//!
//! Upper bounds come from truncating the Fourier series `A_k` over irreducible
//! words and adding a rigorous geometric tail; lower bounds come from a
//! second-moment argument on a single character.

// Negated comparisons are how NaN gets rejected along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod numerics;
pub mod repr;
pub mod structures;
pub mod verify;

pub use error::{Error, Result};
