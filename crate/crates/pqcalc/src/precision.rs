//! Truncation control and value carriers shared by every series/product routine.
//!
//! - [`PrecisionPolicy`]: relative stopping tolerance plus a hard term cap.
//! - [`TruncatedValue`]: a value together with how it was truncated.
//! - [`LogValue`]: sign and log-magnitude, for quantities that over/underflow f64.
//! - [`Product`]: an internal running product that renormalizes by exact powers
//!   of two, so partial products never overflow and no precision is lost.

use crate::error::{Error, Result};

/// Stopping policy for truncated series and infinite products.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionPolicy {
    /// Relative size at which tail terms are considered negligible.
    pub rel_tol: f64,
    /// Hard cap on evaluated terms; exceeding it is a non-convergence error.
    pub max_terms: usize,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { rel_tol: 1e-14, max_terms: 10_000 }
    }
}

impl PrecisionPolicy {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(Error::Domain(format!(
                "rel_tol must lie in (0, 1), got {rel_tol}"
            )));
        }
        if max_terms == 0 {
            return Err(Error::Domain("max_terms must be at least 1".into()));
        }
        Ok(PrecisionPolicy { rel_tol, max_terms })
    }
}

/// Result of a truncated evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedValue {
    pub value: f64,
    /// Terms (or lattice nodes) actually evaluated.
    pub terms_used: usize,
    /// Heuristic relative bound on the discarded tail.
    pub tail_bound: f64,
}

/// A real number stored as sign and natural log of magnitude.
///
/// `sign == 0` if and only if the value is zero, in which case `log_abs` is -inf.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    pub sign: i8,
    pub log_abs: f64,
}

impl LogValue {
    pub fn zero() -> Self {
        LogValue { sign: 0, log_abs: f64::NEG_INFINITY }
    }

    pub fn one() -> Self {
        LogValue { sign: 1, log_abs: 0.0 }
    }

    pub fn from_value(v: f64) -> Self {
        if v == 0.0 {
            LogValue::zero()
        } else {
            LogValue { sign: if v > 0.0 { 1 } else { -1 }, log_abs: v.abs().ln() }
        }
    }

    /// Positive value from its natural log.
    pub fn from_log(log_abs: f64) -> Self {
        LogValue { sign: 1, log_abs }
    }

    /// Materialize; overflows to +-inf, underflows to 0.
    pub fn value(&self) -> f64 {
        f64::from(self.sign) * self.log_abs.exp()
    }

    pub fn mul(&self, other: &LogValue) -> LogValue {
        if self.sign == 0 || other.sign == 0 {
            return LogValue::zero();
        }
        LogValue { sign: self.sign * other.sign, log_abs: self.log_abs + other.log_abs }
    }

    pub fn div(&self, other: &LogValue) -> Result<LogValue> {
        if other.sign == 0 {
            return Err(Error::Domain("division of log-domain value by zero".into()));
        }
        if self.sign == 0 {
            return Ok(LogValue::zero());
        }
        Ok(LogValue { sign: self.sign * other.sign, log_abs: self.log_abs - other.log_abs })
    }
}

/// Running product with exact power-of-two renormalization.
///
/// `mantissa * 2^exp2` is the value; renormalization multiplies by 2^(+-512),
/// which is exact in IEEE arithmetic, so accumulation accuracy matches a plain
/// f64 product while the representable range becomes effectively unbounded.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Product {
    mantissa: f64,
    exp2: i64,
}

const RENORM_UP: f64 = 1.3407807929942597e154; // 2^512
const RENORM_DOWN: f64 = 7.458340731200207e-155; // 2^-512

impl Product {
    pub fn one() -> Self {
        Product { mantissa: 1.0, exp2: 0 }
    }

    pub fn mul(&mut self, factor: f64) {
        self.mantissa *= factor;
        if self.mantissa == 0.0 {
            self.exp2 = 0;
            return;
        }
        let a = self.mantissa.abs();
        if a > RENORM_UP {
            self.mantissa *= RENORM_DOWN;
            self.exp2 += 512;
        } else if a < RENORM_DOWN {
            self.mantissa *= RENORM_UP;
            self.exp2 -= 512;
        }
    }

    pub fn sign(&self) -> i8 {
        if self.mantissa == 0.0 {
            0
        } else if self.mantissa > 0.0 {
            1
        } else {
            -1
        }
    }

    /// Materialize to f64; out-of-range exponents saturate to +-inf or 0.
    pub fn value(&self) -> f64 {
        if self.mantissa == 0.0 {
            return 0.0;
        }
        if self.exp2 == 0 {
            return self.mantissa;
        }
        if self.exp2 > 2000 {
            return f64::from(self.sign()) * f64::INFINITY;
        }
        if self.exp2 < -2000 {
            return 0.0;
        }
        // split the shift so each powi stays in range
        let half = (self.exp2 / 2) as i32;
        let rest = (self.exp2 - i64::from(half)) as i32;
        self.mantissa * 2f64.powi(half) * 2f64.powi(rest)
    }
}
