//! Numerical primitives: log-domain scalars, Chebyshev-type polynomials,
//! Wallis integrals, partition counts and quadrature.

mod logscalar;
mod partitions;
mod quad;
mod special;

pub use logscalar::{log_add_exp, log_pow, logsumexp, LogScalar};
pub use partitions::{partitions_exact, partitions_table};
pub use quad::{GaussLegendre, DEFAULT_ORDER, DEFAULT_PANELS};
pub use special::{
    cheb_u, lambda_moment, log_abs_u, log_q_ratio, log_u, log_u_ratio, q_closed, q_of, u_n, u_seq,
    wallis, wallis_ratio, T_MARGIN,
};
