//! Randomized invariants over the core algebra. Each property encodes a law
//! the library promises for all parameters, not just the tabulated grids.

use proptest::prelude::*;

use pqcalc::{
    beta_pq, pq_binomial, pq_number, pq_power, q_integral, q_pochhammer_finite,
    q_pochhammer_infinite, Bound, PQBase, PowerKind, PrecisionPolicy,
};

fn policy() -> PrecisionPolicy {
    PrecisionPolicy::default()
}

/// Bases with q < p so every consumer (including Gamma) accepts them.
fn base_strategy() -> impl Strategy<Value = PQBase> {
    (0.3f64..2.0, 0.05f64..0.95)
        .prop_map(|(p, ratio)| PQBase::new(p, p * ratio).expect("valid base"))
}

fn rel_err(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

proptest! {
    // (a^2 (-) b^2)^n on the squared base factors as difference times sum
    #[test]
    fn squared_base_power_factors(
        base in base_strategy(),
        a in 0.1f64..3.0,
        b in 0.1f64..3.0,
        n in 0u32..7,
    ) {
        let lhs = pq_power(a * a, b * b, n, PowerKind::Ominus, &base.pow(2));
        let rhs = pq_power(a, b, n, PowerKind::Ominus, &base)
            * pq_power(a, b, n, PowerKind::Oplus, &base);
        prop_assert!(rel_err(lhs, rhs) <= 1e-12, "lhs {lhs}, rhs {rhs}");
    }

    // the binomial is computed so that k and n-k take identical float paths
    #[test]
    fn binomial_symmetry_is_bitwise(
        base in base_strategy(),
        n in 0u32..=20,
        frac in 0.0f64..=1.0,
    ) {
        let k = (f64::from(n) * frac).round() as i64;
        let lhs = pq_binomial(n, k, &base).unwrap();
        let rhs = pq_binomial(n, i64::from(n) - k, &base).unwrap();
        prop_assert_eq!(lhs.to_bits(), rhs.to_bits());
    }

    #[test]
    fn pochhammer_extends_one_factor_at_a_time(
        z in -2.0f64..2.0,
        q in 0.05f64..0.95,
        n in 0u32..15,
    ) {
        let whole = q_pochhammer_finite(z, q, n + 1);
        let split = q_pochhammer_finite(z, q, n) * (1.0 - z * q.powi(n as i32));
        prop_assert!(rel_err(whole, split) <= 1e-12, "whole {whole}, split {split}");
    }

    // (z; q)_inf = (z; q)_n (z q^n; q)_inf
    #[test]
    fn infinite_product_splits_at_any_head(
        z in -0.9f64..0.9,
        q in 0.05f64..0.9,
        n in 0u32..10,
    ) {
        let whole = q_pochhammer_infinite(z, q, &policy()).unwrap().value;
        let head = q_pochhammer_finite(z, q, n);
        let tail = q_pochhammer_infinite(z * q.powi(n as i32), q, &policy()).unwrap().value;
        prop_assert!(rel_err(whole, head * tail) <= 1e-10,
            "whole {whole}, split {}", head * tail);
    }

    // the lattice sum is linear in the integrand
    #[test]
    fn q_integral_is_linear(
        a in 0.2f64..2.5,
        q in 0.1f64..0.9,
        alpha in 0.1f64..2.0,
        beta in 0.1f64..2.0,
    ) {
        let bounds = (Bound::Finite(0.0), Bound::Finite(a));
        let mixed = q_integral(
            |t| alpha * t * t + beta * t, bounds.0, bounds.1, q, &policy()).unwrap().value;
        let first = q_integral(|t| t * t, bounds.0, bounds.1, q, &policy()).unwrap().value;
        let second = q_integral(|t| t, bounds.0, bounds.1, q, &policy()).unwrap().value;
        prop_assert!(rel_err(mixed, alpha * first + beta * second) <= 1e-9,
            "mixed {mixed}, recombined {}", alpha * first + beta * second);
    }

    // [n]_{p,q} = p^(n-1) [n]_r at r = q/p
    #[test]
    fn number_refactors_through_ratio_base(
        base in base_strategy(),
        n in 1u32..=15,
    ) {
        let direct = pq_number(n, &base);
        let ratio_base = PQBase::new(1.0, base.r()).unwrap();
        let refactored = base.p().powi(n as i32 - 1) * pq_number(n, &ratio_base);
        prop_assert!(rel_err(direct, refactored) <= 1e-12,
            "direct {direct}, refactored {refactored}");
    }

    // Beta inherits exact symmetry from commutative log addition
    #[test]
    fn beta_symmetry_is_bitwise(
        base in base_strategy(),
        x in 0.2f64..3.0,
        y in 0.2f64..3.0,
    ) {
        let xy = beta_pq(x, y, &base, &policy()).unwrap();
        let yx = beta_pq(y, x, &base, &policy()).unwrap();
        prop_assert_eq!(xy.log_value.sign, yx.log_value.sign);
        prop_assert_eq!(xy.log_value.log_abs.to_bits(), yx.log_value.log_abs.to_bits());
    }

    // the k = 0 factor of (x (-) x)^n is exactly zero
    #[test]
    fn power_with_equal_arguments_vanishes(
        base in base_strategy(),
        x in 0.1f64..3.0,
        n in 1u32..8,
    ) {
        prop_assert_eq!(pq_power(x, x, n, PowerKind::Ominus, &base), 0.0);
    }
}
