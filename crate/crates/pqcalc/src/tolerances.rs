//! Pass thresholds for the identity checks.
//!
//! Each value sits roughly an order of magnitude above the truncation noise
//! observed at the default PrecisionPolicy, so a regression in the numerics
//! trips the check rather than hiding in the margin. They are configuration,
//! not constants baked into the checks; callers may tighten or loosen per run.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Tolerances {
    /// Gamma recurrence residual.
    pub gamma_recurrence: f64,
    /// gamma_pq at integer arguments vs the exact factorial path.
    pub gamma_integer: f64,
    /// The exact integer path vs the factorial product itself.
    pub gamma_integer_exact: f64,
    /// gamma_pq at p = 1 vs gamma_q.
    pub p_one_reduction: f64,
    /// Duplication formula residual.
    pub legendre: f64,
    /// Duplication at x = 1/2, where both sides coincide by construction.
    pub legendre_collapse: f64,
    /// Order-n multiplication formula residual.
    pub gauss: f64,
    /// Beta recurrence residuals.
    pub beta: f64,
    /// Finite power-product identities.
    pub powers_finite: f64,
    /// Mantissa agreement of the graded infinite-product identities.
    pub powers_mantissa: f64,
    /// Monomial and additivity laws of the lattice integrals.
    pub jackson: f64,
    /// Integral representation of Gamma vs the product formula.
    pub representation: f64,
    /// Deformed Gamma vs the Euler-limit oracle near q = 1.
    pub classical_gamma: f64,
    /// Unit integral vs 1/2 near q = 1.
    pub classical_integral: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            gamma_recurrence: 1e-10,
            gamma_integer: 1e-10,
            gamma_integer_exact: 1e-12,
            p_one_reduction: 1e-12,
            legendre: 1e-8,
            legendre_collapse: 1e-13,
            gauss: 1e-7,
            beta: 1e-9,
            powers_finite: 1e-12,
            powers_mantissa: 1e-10,
            jackson: 1e-12,
            representation: 1e-8,
            classical_gamma: 1e-2,
            classical_integral: 1e-3,
        }
    }
}

impl Tolerances {
    /// One threshold everywhere. Used by the CLI --tol override.
    pub fn uniform(tol: f64) -> Self {
        Tolerances {
            gamma_recurrence: tol,
            gamma_integer: tol,
            gamma_integer_exact: tol,
            p_one_reduction: tol,
            legendre: tol,
            legendre_collapse: tol,
            gauss: tol,
            beta: tol,
            powers_finite: tol,
            powers_mantissa: tol,
            jackson: tol,
            representation: tol,
            classical_gamma: tol,
            classical_integral: tol,
        }
    }
}
