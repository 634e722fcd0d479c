//! Finite groups, states on their group algebras, and measures on the circle.

mod group;
mod measure;
mod state;

pub use group::FiniteGroup;
pub use measure::{
    lambda_theta, porod_integral, porod_log_density, tau_theta, trace_at, CircleMeasure,
};
pub use state::{group_sum_abs, log_group_sum_abs_pow, GroupState};
