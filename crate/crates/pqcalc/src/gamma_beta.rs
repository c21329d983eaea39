//! Gamma and Beta functions for the deformed calculus.
//!
//! `gamma_q` implements both classical q-branches (0 < q < 1 and q > 1).
//! `gamma_pq` is the two-parameter version, realized as
//! Gamma_{p,q}(x) = p^((x-1)(x-2)/2) * Gamma_r(x) with r = q/p,
//! the unique interpolation that satisfies the recurrence
//! Gamma(x+1) = [x] Gamma(x) with the twin-basic bracket, reproduces the
//! factorial values at integers, and collapses to `gamma_q` at p = 1
//! (bitwise: the p-exponent contributes an exact zero to the log).
//!
//! All composition happens in log domain; values materialize on demand.

use crate::error::{Error, Result};
use crate::pq_core::{pq_number, pq_number_real, pq_power, PQBase, PowerKind};
use crate::precision::{LogValue, PrecisionPolicy};
use crate::q_series::q_pochhammer_infinite_log;

/// Arguments this close to a nonpositive integer are treated as poles.
pub const POLE_WINDOW: f64 = 1e-9;

/// A Gamma-family value in log form with truncation diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct GammaValue {
    pub log_value: LogValue,
    pub terms_used: usize,
    pub tail_bound: f64,
}

impl GammaValue {
    pub fn value(&self) -> f64 {
        self.log_value.value()
    }
}

fn check_pole(x: f64) -> Result<()> {
    let n = x.round();
    if n <= 0.0 && (x - n).abs() <= POLE_WINDOW {
        return Err(Error::Pole { x });
    }
    Ok(())
}

/// q-Gamma function, both branches.
///
/// 0 < q < 1:  (q; q)_inf / (q^x; q)_inf * (1-q)^(1-x)
/// q > 1:      (s; s)_inf / (q^-x; s)_inf * (q-1)^(1-x) * q^(x(x-1)/2),  s = 1/q
pub fn gamma_q(x: f64, q: f64, policy: &PrecisionPolicy) -> Result<GammaValue> {
    if !x.is_finite() || !q.is_finite() || q <= 0.0 || q == 1.0 {
        return Err(Error::Domain(format!(
            "q-Gamma requires finite x and q > 0, q != 1, got x = {x}, q = {q}"
        )));
    }
    check_pole(x)?;
    let (num_z, den_z, s, extra_log) = if q < 1.0 {
        (q, q.powf(x), q, (1.0 - x) * (1.0 - q).ln())
    } else {
        let s = q.recip();
        (
            s,
            q.powf(-x),
            s,
            (1.0 - x) * (q - 1.0).ln() + x * (x - 1.0) / 2.0 * q.ln(),
        )
    };
    let num = q_pochhammer_infinite_log(num_z, s, policy)?;
    let den = q_pochhammer_infinite_log(den_z, s, policy)?;
    // a denominator zero that slipped past the pole window is still a pole
    let ratio = num.log.div(&den.log).map_err(|_| Error::Pole { x })?;
    Ok(GammaValue {
        log_value: LogValue { sign: ratio.sign, log_abs: ratio.log_abs + extra_log },
        terms_used: num.terms_used + den.terms_used,
        tail_bound: num.tail_bound + den.tail_bound,
    })
}

/// Two-parameter Gamma. Requires a gamma-valid base (0 < q < p).
pub fn gamma_pq(x: f64, base: &PQBase, policy: &PrecisionPolicy) -> Result<GammaValue> {
    if !base.is_gamma_valid() {
        return Err(Error::Domain(format!(
            "Gamma requires 0 < q < p, got p = {}, q = {}",
            base.p(),
            base.q()
        )));
    }
    let inner = gamma_q(x, base.r(), policy)?;
    let graded = (x - 1.0) * (x - 2.0) / 2.0 * base.p().ln();
    Ok(GammaValue {
        log_value: LogValue {
            sign: inner.log_value.sign,
            log_abs: inner.log_value.log_abs + graded,
        },
        terms_used: inner.terms_used,
        tail_bound: inner.tail_bound,
    })
}

/// Gamma(n+1) = [n]! as an exact finite product, no truncation.
///
/// Evaluated as (p (-) q)^n / (p - q)^n, which telescopes to the factorial.
/// Valid for any base, including q > p.
pub fn gamma_pq_integer(n: u32, base: &PQBase) -> f64 {
    pq_power(base.p(), base.q(), n, PowerKind::Ominus, base) / (base.p() - base.q()).powi(n as i32)
}

/// Euler product approximation n! n^x / (x(x+1)...(x+n)) at n = n_limit.
///
/// Converges to the classical Gamma at O(1/n); slow but implementation-independent,
/// so it serves as the oracle for deformation limits. Summation is compensated.
pub fn gamma_classical_euler(x: f64, n_limit: u64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("Euler product oracle requires x > 0, got {x}")));
    }
    if n_limit == 0 {
        return Err(Error::Domain("Euler product oracle requires at least one factor".into()));
    }
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for k in 1..=n_limit {
        let term = (x / k as f64).ln_1p();
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    Ok((x * (n_limit as f64).ln() - x.ln() - sum).exp())
}

/// B(x, y) = Gamma(x) Gamma(y) / Gamma(x+y). Symmetric in (x, y) bitwise:
/// the log composition is a commutative sum.
pub fn beta_pq(x: f64, y: f64, base: &PQBase, policy: &PrecisionPolicy) -> Result<GammaValue> {
    let gx = gamma_pq(x, base, policy)?;
    let gy = gamma_pq(y, base, policy)?;
    let gxy = gamma_pq(x + y, base, policy)?;
    let log_value = gx.log_value.mul(&gy.log_value).div(&gxy.log_value)?;
    Ok(GammaValue {
        log_value,
        terms_used: gx.terms_used + gy.terms_used + gxy.terms_used,
        tail_bound: gx.tail_bound + gy.tail_bound + gxy.tail_bound,
    })
}

/// Relative residual |1 - RHS/LHS| of two log-domain values.
///
/// Returns 0 for two exact zeros; same-sign values compare through expm1 of
/// the log difference, so residuals far below f64::EPSILON stay meaningful.
fn log_residual(lhs: &LogValue, rhs: &LogValue) -> f64 {
    if lhs.sign == 0 && rhs.sign == 0 {
        return 0.0;
    }
    if lhs.sign == 0 {
        return f64::INFINITY;
    }
    if rhs.sign == 0 {
        return 1.0;
    }
    if lhs.sign != rhs.sign {
        return 1.0 + (rhs.log_abs - lhs.log_abs).exp();
    }
    (rhs.log_abs - lhs.log_abs).exp_m1().abs()
}

/// Residual of Gamma(x+1) = [x] Gamma(x).
pub fn check_gamma_recurrence(x: f64, base: &PQBase, policy: &PrecisionPolicy) -> Result<f64> {
    let lhs = gamma_pq(x + 1.0, base, policy)?.log_value;
    let bracket = LogValue::from_value(pq_number_real(x, base));
    let rhs = bracket.mul(&gamma_pq(x, base, policy)?.log_value);
    Ok(log_residual(&lhs, &rhs))
}

/// Residual of the duplication formula
///
/// Gamma_{p,q}(2x) Gamma_{p2,q2}(1/2)
///   = (p+q)^(2x-1) Gamma_{p2,q2}(x) Gamma_{p2,q2}(x + 1/2)
///
/// where (p2, q2) = (p^2, q^2). At x = 1/2 both sides are the same product
/// and the residual is exactly zero.
pub fn check_legendre(x: f64, base: &PQBase, policy: &PrecisionPolicy) -> Result<f64> {
    let sq = base.pow(2);
    let lhs = gamma_pq(2.0 * x, base, policy)?
        .log_value
        .mul(&gamma_pq(0.5, &sq, policy)?.log_value);
    let prefactor = LogValue { sign: 1, log_abs: (2.0 * x - 1.0) * (base.p() + base.q()).ln() };
    let rhs = prefactor
        .mul(&gamma_pq(x, &sq, policy)?.log_value)
        .mul(&gamma_pq(x + 0.5, &sq, policy)?.log_value);
    Ok(log_residual(&lhs, &rhs))
}

/// Residual of the order-n multiplication formula
///
/// Gamma_{p,q}(nx) prod_{k=1}^{n-1} Gamma_{pn,qn}(k/n)
///   = ([n]_{p,q})^(nx-1) prod_{k=0}^{n-1} Gamma_{pn,qn}(x + k/n)
///
/// with (pn, qn) = (p^n, q^n). n = 1 is the empty identity, residual
/// exactly zero; n = 2 specializes to the duplication formula.
pub fn check_gauss(x: f64, n: u32, base: &PQBase, policy: &PrecisionPolicy) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("multiplication order must be at least 1".into()));
    }
    let bn = base.pow(n);
    let nf = f64::from(n);
    let mut lhs = gamma_pq(nf * x, base, policy)?.log_value;
    for k in 1..n {
        lhs = lhs.mul(&gamma_pq(f64::from(k) / nf, &bn, policy)?.log_value);
    }
    let bracket = pq_number(n, base);
    let mut rhs = LogValue { sign: 1, log_abs: (nf * x - 1.0) * bracket.ln() };
    for k in 0..n {
        rhs = rhs.mul(&gamma_pq(x + f64::from(k) / nf, &bn, policy)?.log_value);
    }
    Ok(log_residual(&lhs, &rhs))
}

/// Residuals of the four Beta recurrences, in order:
///
/// 1. B(x, y+1) = ([y] / [x+y]) B(x, y)
/// 2. B(x+1, y) = ([x] / [x+y]) B(x, y)
/// 3. B(x+1, y) = ([x] / [y]) B(x, y+1)
/// 4. B(x+n, y) = ((p^x (-) q^x)^n / (p^(x+y) (-) q^(x+y))^n) B(x, y)
///
/// The shift coefficient in 4 is a power product taken at arguments
/// (p^x, q^x) over the same base.
pub fn check_beta_recurrences(
    x: f64,
    y: f64,
    n: u32,
    base: &PQBase,
    policy: &PrecisionPolicy,
) -> Result<[f64; 4]> {
    let b_xy = beta_pq(x, y, base, policy)?.log_value;
    let b_x_y1 = beta_pq(x, y + 1.0, base, policy)?.log_value;
    let b_x1_y = beta_pq(x + 1.0, y, base, policy)?.log_value;
    let b_xn_y = beta_pq(x + f64::from(n), y, base, policy)?.log_value;

    let bx = LogValue::from_value(pq_number_real(x, base));
    let by = LogValue::from_value(pq_number_real(y, base));
    let bxy = LogValue::from_value(pq_number_real(x + y, base));

    let r1 = log_residual(&b_x_y1, &by.div(&bxy)?.mul(&b_xy));
    let r2 = log_residual(&b_x1_y, &bx.div(&bxy)?.mul(&b_xy));
    let r3 = log_residual(&b_x1_y, &bx.div(&by)?.mul(&b_x_y1));

    let num = pq_power(base.p().powf(x), base.q().powf(x), n, PowerKind::Ominus, base);
    let den = pq_power(base.p().powf(x + y), base.q().powf(x + y), n, PowerKind::Ominus, base);
    let coeff = LogValue::from_value(num).div(&LogValue::from_value(den))?;
    let r4 = log_residual(&b_xn_y, &coeff.mul(&b_xy));

    Ok([r1, r2, r3, r4])
}

#[cfg(test)]
// reference constants keep every digit of the source computation
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn policy() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    fn base(p: f64, q: f64) -> PQBase {
        PQBase::new(p, q).unwrap()
    }

    #[test]
    fn q_gamma_at_one_is_one() {
        let g = gamma_q(1.0, 0.5, &policy()).unwrap();
        assert_relative_eq!(g.value(), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn q_gamma_integer_values_both_branches() {
        // [2]_q! at q = 1/2 is 1.5; at q = 2 it is 3
        assert_relative_eq!(gamma_q(3.0, 0.5, &policy()).unwrap().value(), 1.5, max_relative = 1e-13);
        assert_relative_eq!(gamma_q(3.0, 2.0, &policy()).unwrap().value(), 3.0, max_relative = 1e-13);
    }

    #[test]
    fn q_gamma_reference_values() {
        // 40-digit references
        let cases = [
            (0.5, 0.5, 1.5720327257863238828),
            (2.5, 0.5, 1.1905936250275274868),
            (1.5, 0.3, 0.94146120157760264252),
        ];
        for (x, q, want) in cases {
            let got = gamma_q(x, q, &policy()).unwrap().value();
            assert_relative_eq!(got, want, max_relative = 1e-13);
        }
    }

    #[test]
    fn q_gamma_pole_and_domain_errors() {
        assert!(matches!(gamma_q(0.0, 0.5, &policy()), Err(Error::Pole { .. })));
        assert!(matches!(gamma_q(-2.0, 0.5, &policy()), Err(Error::Pole { .. })));
        assert!(matches!(gamma_q(-1.0 + 1e-10, 0.5, &policy()), Err(Error::Pole { .. })));
        assert!(matches!(gamma_q(2.0, 1.0, &policy()), Err(Error::Domain(_))));
        assert!(matches!(gamma_q(2.0, -0.5, &policy()), Err(Error::Domain(_))));
        // just outside the window is not a pole
        assert!(gamma_q(-1.0 + 1e-6, 0.5, &policy()).is_ok());
    }

    #[test]
    fn pq_gamma_factorial_values() {
        let g = gamma_pq(1.0, &base(2.0, 0.3), &policy()).unwrap();
        assert_relative_eq!(g.value(), 1.0, max_relative = 1e-14);
        // [3]_{2,1}! = 1 * 3 * 7
        let g = gamma_pq(4.0, &base(2.0, 1.0), &policy()).unwrap();
        assert_relative_eq!(g.value(), 21.0, max_relative = 1e-12);
    }

    #[test]
    fn pq_gamma_requires_gamma_valid_base() {
        assert!(matches!(
            gamma_pq(2.0, &base(0.5, 0.9), &policy()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn pq_gamma_reduces_to_q_gamma_at_p_one_bitwise() {
        let b = base(1.0, 0.5);
        for &x in &[0.3, 1.7, 4.2, 6.0] {
            let two = gamma_pq(x, &b, &policy()).unwrap();
            let one = gamma_q(x, 0.5, &policy()).unwrap();
            assert_eq!(two.value(), one.value());
        }
    }

    #[test]
    fn pq_gamma_positive_on_positive_axis() {
        let b = base(1.5, 0.7);
        for k in 1..=40 {
            let x = 0.15 * f64::from(k);
            assert_eq!(gamma_pq(x, &b, &policy()).unwrap().log_value.sign, 1);
        }
    }

    #[test]
    fn integer_path_is_exact_and_agrees_with_analytic_path() {
        let b = base(2.0, 1.0);
        assert_eq!(gamma_pq_integer(0, &b), 1.0);
        assert_eq!(gamma_pq_integer(3, &b), 21.0);
        let b = base(0.9, 0.4);
        for n in 0..=10u32 {
            let exact = gamma_pq_integer(n, &b);
            let analytic = gamma_pq(f64::from(n) + 1.0, &b, &policy()).unwrap().value();
            assert_relative_eq!(analytic, exact, max_relative = 1e-10);
        }
    }

    #[test]
    fn euler_oracle_behaviour() {
        assert_relative_eq!(
            gamma_classical_euler(1.0, 1000).unwrap(),
            1000.0 / 1001.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            gamma_classical_euler(2.0, 1_000_000).unwrap(),
            1.0,
            max_relative = 1e-3
        );
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert_relative_eq!(
            gamma_classical_euler(0.5, 1_000_000).unwrap(),
            sqrt_pi,
            max_relative = 5e-3
        );
        assert!(gamma_classical_euler(-1.0, 10).is_err());
        assert!(gamma_classical_euler(1.0, 0).is_err());
    }

    #[test]
    fn beta_small_values() {
        let b = base(2.0, 1.0);
        assert_relative_eq!(beta_pq(1.0, 1.0, &b, &policy()).unwrap().value(), 1.0, max_relative = 1e-14);
        // Gamma(2)Gamma(1)/Gamma(3) = 1/[2]
        assert_relative_eq!(
            beta_pq(2.0, 1.0, &b, &policy()).unwrap().value(),
            1.0 / 3.0,
            max_relative = 1e-13
        );
    }

    #[test]
    fn beta_reference_value() {
        // 40-digit reference at base (2, 0.3)
        let got = beta_pq(0.7, 1.5, &base(2.0, 0.3), &policy()).unwrap().value();
        assert_relative_eq!(got, 1.0211957374589511508, max_relative = 1e-12);
    }

    #[test]
    fn beta_symmetry_is_bitwise() {
        let b = base(1.5, 0.7);
        let lhs = beta_pq(1.3, 2.7, &b, &policy()).unwrap();
        let rhs = beta_pq(2.7, 1.3, &b, &policy()).unwrap();
        assert_eq!(lhs.log_value, rhs.log_value);
    }

    #[test]
    fn recurrence_residuals() {
        assert!(check_gamma_recurrence(1.0, &base(1.0, 0.5), &policy()).unwrap() <= 1e-12);
        assert!(check_gamma_recurrence(2.5, &base(0.9, 0.4), &policy()).unwrap() <= 1e-10);
        assert!(check_gamma_recurrence(5.0, &base(1.5, 0.7), &policy()).unwrap() <= 1e-12);
    }

    #[test]
    fn duplication_residuals() {
        // x = 1/2 collapses both sides to the same product
        assert_eq!(check_legendre(0.5, &base(0.9, 0.4), &policy()).unwrap(), 0.0);
        assert!(check_legendre(1.0, &base(1.0, 0.25), &policy()).unwrap() <= 1e-10);
        assert!(check_legendre(1.7, &base(0.9, 0.4), &policy()).unwrap() <= 1e-8);
    }

    #[test]
    fn multiplication_residuals() {
        assert_eq!(check_gauss(1.3, 1, &base(0.9, 0.4), &policy()).unwrap(), 0.0);
        let leg = check_legendre(0.8, &base(0.9, 0.5), &policy()).unwrap();
        let gauss2 = check_gauss(0.8, 2, &base(0.9, 0.5), &policy()).unwrap();
        assert!(leg <= 1e-8 && gauss2 <= 1e-8);
        assert!(check_gauss(0.8, 4, &base(0.9, 0.5), &policy()).unwrap() <= 1e-7);
        assert!(check_gauss(1.0, 0, &base(0.9, 0.5), &policy()).is_err());
    }

    #[test]
    fn beta_recurrence_residuals() {
        let rs = check_beta_recurrences(1.0, 1.0, 0, &base(1.0, 0.5), &policy()).unwrap();
        for r in rs {
            assert!(r <= 1e-12, "residual {r}");
        }
        // B(1,2) = 1/[2]_q = 2/3 at q = 1/2
        let b = beta_pq(1.0, 2.0, &base(1.0, 0.5), &policy()).unwrap().value();
        assert_relative_eq!(b, 2.0 / 3.0, max_relative = 1e-13);
        let rs = check_beta_recurrences(1.5, 2.5, 3, &base(0.9, 0.4), &policy()).unwrap();
        assert!(rs[3] <= 1e-9, "shift residual {}", rs[3]);
    }
}
