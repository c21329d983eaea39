//! Two-parameter deformed calculus: (p,q)-numbers, factorials and binomials,
//! deformed power products, q-Pochhammer symbols and q-exponentials, the
//! q- and (p,q)-Gamma and Beta functions, Jackson integrals on the
//! geometric lattice, and a batch engine that verifies the identity
//! catalogue over parameter grids.
//!
//! Everything series-valued reports how hard it worked: truncated values
//! carry the number of terms consumed and a geometric tail bound, and the
//! Gamma family is computed in log space so ratios of huge values stay
//! finite. The `q -> 1` classical limits are reachable by widening
//! [`PrecisionPolicy`] term budgets.

pub mod error;
pub mod expr;
pub mod gamma_beta;
pub mod identity;
pub mod jackson;
pub mod output;
pub mod pq_core;
pub mod precision;
pub mod q_series;
pub mod tolerances;

pub use error::{Error, Result};
pub use expr::Expr;
pub use gamma_beta::{
    beta_pq, check_beta_recurrences, check_gamma_recurrence, check_gauss, check_legendre,
    gamma_classical_euler, gamma_pq, gamma_pq_integer, gamma_q, GammaValue, POLE_WINDOW,
};
pub use identity::{
    check_power_identity, graded_power_sides, run_suite, GradedSides, GridConfig, IdentityEntry,
    IdentityReport, PowerParams, Suite, TruncationSemantics,
};
pub use jackson::{
    gamma_q_integral_representation, gamma_q_integral_representation_anchored, q_integral, Bound,
};
pub use output::{OutputRecord, TableRow};
pub use pq_core::{
    pq_binomial, pq_factorial, pq_number, pq_number_real, pq_power, pq_power_factored,
    GradedProduct, PQBase, PowerKind,
};
pub use precision::{LogValue, PrecisionPolicy, TruncatedValue};
pub use q_series::{
    q_exp_big, q_exp_small, q_pochhammer_finite, q_pochhammer_infinite, q_pochhammer_infinite_log,
    LogTruncated,
};
pub use tolerances::Tolerances;
