//! Twin-basic (p,q) arithmetic.
//!
//! Everything here is a finite product or ratio, evaluated exactly in f64:
//!
//! - `pq_number`:      [n] = (p^n - q^n)/(p - q)
//! - `pq_number_real`: [x] = (p^x - q^x)/(p - q) for real x
//! - `pq_factorial`:   [n]! = [1][2]...[n]
//! - `pq_binomial`:    [n]! / ([k]! [n-k]!)
//! - `pq_power`:       (x (-) a)^n = prod_{k<n} (x p^k - a q^k), and the (+) twin
//! - `pq_power_factored`: the same power split as mantissa * x^n * p^(n(n-1)/2),
//!   with the mantissa a finite Pochhammer product in r = q/p

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::precision::Product;

/// A validated (p, q) parameter pair with the derived ratio r = q/p.
///
/// Construction enforces p > 0, q > 0, p != q; every ratio in the crate
/// divides by p - q, so equal bases are rejected at the boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PQBase {
    p: f64,
    q: f64,
    r: f64,
}

impl PQBase {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !p.is_finite() || !q.is_finite() || p <= 0.0 || q <= 0.0 {
            return Err(Error::Domain(format!(
                "base parameters must be finite and positive, got p = {p}, q = {q}"
            )));
        }
        if p == q {
            return Err(Error::Domain(format!("base parameters must differ, got p = q = {p}")));
        }
        Ok(PQBase { p, q, r: q / p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// r = q/p, the single-parameter deformation this base reduces to.
    pub fn r(&self) -> f64 {
        self.r
    }

    /// Gamma and Beta functions additionally require 0 < q < p.
    pub fn is_gamma_valid(&self) -> bool {
        self.q < self.p
    }

    /// The base (p^l, q^l) used by refinement and multiplication identities.
    pub fn pow(&self, l: u32) -> PQBase {
        let p = self.p.powi(l as i32);
        let q = self.q.powi(l as i32);
        PQBase { p, q, r: q / p }
    }
}

/// Which sign the second argument enters the power product with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerKind {
    /// prod (x p^k - a q^k)
    Ominus,
    /// prod (x p^k + a q^k)
    Oplus,
}

impl PowerKind {
    fn apply(self, lhs: f64, rhs: f64) -> f64 {
        match self {
            PowerKind::Ominus => lhs - rhs,
            PowerKind::Oplus => lhs + rhs,
        }
    }
}

/// A product value factored as mantissa * base^base_exponent * p^(e0 + e1 N).
///
/// Finite powers have `p_exponent_linear == 0`; the linear term appears when
/// truncated infinite products are compared at a symbolic truncation index N.
/// Two graded products are equal when all three exponents match exactly
/// (rational arithmetic) and the mantissas agree within tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradedProduct {
    pub mantissa: f64,
    pub base_exponent: Rational64,
    pub p_exponent_const: Rational64,
    pub p_exponent_linear: Rational64,
}

impl GradedProduct {
    /// Exact exponent match plus mantissa agreement within `tol` (relative,
    /// zero-protected).
    pub fn approx_eq(&self, other: &GradedProduct, tol: f64) -> bool {
        self.exponents_match(other) && mantissa_residual(self.mantissa, other.mantissa) <= tol
    }

    pub fn exponents_match(&self, other: &GradedProduct) -> bool {
        self.base_exponent == other.base_exponent
            && self.p_exponent_const == other.p_exponent_const
            && self.p_exponent_linear == other.p_exponent_linear
    }

    /// Rebuild the plain value mantissa * base^alpha * p^e0.
    ///
    /// Only meaningful for truncation-free products, so a nonzero linear
    /// exponent is a domain error.
    pub fn recombine(&self, base: f64, p: f64) -> Result<f64> {
        if !self.p_exponent_linear.is_zero() {
            return Err(Error::Domain(
                "cannot recombine a graded product with a truncation-dependent exponent".into(),
            ));
        }
        Ok(self.mantissa * pow_rational(base, self.base_exponent)? * pow_rational(p, self.p_exponent_const)?)
    }
}

/// Relative difference with a floor so that 0 vs 0 compares equal.
pub(crate) fn mantissa_residual(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn pow_rational(base: f64, exp: Rational64) -> Result<f64> {
    if exp.is_zero() {
        return Ok(1.0);
    }
    if *exp.denom() == 1 {
        let e = *exp.numer();
        if e.abs() <= i64::from(i32::MAX) {
            return Ok(base.powi(e as i32));
        }
    }
    if base <= 0.0 {
        return Err(Error::Domain(format!(
            "fractional power {exp} of nonpositive base {base}"
        )));
    }
    Ok(base.powf(*exp.numer() as f64 / *exp.denom() as f64))
}

/// [n] = (p^n - q^n)/(p - q). [0] = 0, [1] = 1 exactly.
pub fn pq_number(n: u32, base: &PQBase) -> f64 {
    (base.p.powi(n as i32) - base.q.powi(n as i32)) / (base.p - base.q)
}

/// Real-order [x] = (p^x - q^x)/(p - q).
pub fn pq_number_real(x: f64, base: &PQBase) -> f64 {
    (base.p.powf(x) - base.q.powf(x)) / (base.p - base.q)
}

/// [n]! = prod_{k=1..n} [k]; empty product for n = 0.
pub fn pq_factorial(n: u32, base: &PQBase) -> f64 {
    (1..=n).map(|k| pq_number(k, base)).product()
}

/// [n]! / ([k]! [n-k]!). Errors when k is outside 0..=n.
pub fn pq_binomial(n: u32, k: i64, base: &PQBase) -> Result<f64> {
    if k < 0 || k > i64::from(n) {
        return Err(Error::Domain(format!("binomial index k = {k} outside 0..={n}")));
    }
    let k = k as u32;
    Ok(pq_factorial(n, base) / (pq_factorial(k, base) * pq_factorial(n - k, base)))
}

/// (x (-) a)^n or (x (+) a)^n: prod_{k=0}^{n-1} (x p^k -+ a q^k).
///
/// The empty product (n = 0) is 1. Accumulation renormalizes by exact powers
/// of two, so intermediate magnitudes never overflow; a result outside f64
/// range still materializes as +-inf.
pub fn pq_power(x: f64, a: f64, n: u32, kind: PowerKind, base: &PQBase) -> f64 {
    let mut acc = Product::one();
    let mut xp = x;
    let mut aq = a;
    for _ in 0..n {
        acc.mul(kind.apply(xp, aq));
        xp *= base.p;
        aq *= base.q;
    }
    acc.value()
}

/// The factored form of `pq_power`:
///
/// (x -+ a)^n = [prod_{k<n} (1 -+ (a/x) r^k)] * x^n * p^(n(n-1)/2),  r = q/p.
///
/// Requires x != 0 (the mantissa divides by x).
pub fn pq_power_factored(
    x: f64,
    a: f64,
    n: u32,
    kind: PowerKind,
    base: &PQBase,
) -> Result<GradedProduct> {
    if x == 0.0 {
        return Err(Error::Domain("factored power requires a nonzero leading argument".into()));
    }
    let ratio = a / x;
    let mut mantissa = 1.0;
    let mut rk = 1.0;
    for _ in 0..n {
        mantissa *= kind.apply(1.0, ratio * rk);
        rk *= base.r;
    }
    let n = i64::from(n);
    Ok(GradedProduct {
        mantissa,
        base_exponent: Rational64::from_integer(n),
        p_exponent_const: Rational64::from_integer(n * (n - 1) / 2),
        p_exponent_linear: Rational64::zero(),
    })
}
