//! q-Pochhammer products and the two q-exponentials.
//!
//! Infinite products require |q| < 1 and are truncated by the geometric tail
//! bound |z| |q|^N / (1 - |q|), which dominates the log-deviation of the
//! dropped factors once it is below 1/2. The bound is checked before each
//! factor, so z = 0 returns immediately with zero terms.

use crate::error::{Error, Result};
use crate::precision::{LogValue, PrecisionPolicy, Product, TruncatedValue};

/// Log-domain result of a truncated infinite product.
#[derive(Debug, Clone, Copy)]
pub struct LogTruncated {
    pub log: LogValue,
    pub terms_used: usize,
    pub tail_bound: f64,
}

/// (z; q)_n = prod_{k=0}^{n-1} (1 - z q^k). Finite, so q is unrestricted.
pub fn q_pochhammer_finite(z: f64, q: f64, n: u32) -> f64 {
    let mut acc = Product::one();
    let mut zq = z;
    for _ in 0..n {
        acc.mul(1.0 - zq);
        zq *= q;
    }
    acc.value()
}

fn check_infinite_domain(z: f64, q: f64) -> Result<()> {
    if !z.is_finite() || !q.is_finite() {
        return Err(Error::Domain(format!(
            "infinite product arguments must be finite, got z = {z}, q = {q}"
        )));
    }
    if q.abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "infinite product requires |q| < 1, got q = {q}"
        )));
    }
    Ok(())
}

/// (z; q)_infinity for |q| < 1.
///
/// A factor that lands exactly on zero short-circuits: the product is
/// identically zero from that point on and the tail bound collapses.
pub fn q_pochhammer_infinite(z: f64, q: f64, policy: &PrecisionPolicy) -> Result<TruncatedValue> {
    check_infinite_domain(z, q)?;
    let geom = 1.0 / (1.0 - q.abs());
    let mut acc = Product::one();
    let mut zq = z;
    for k in 0..policy.max_terms {
        let tail = zq.abs() * geom;
        if tail <= policy.rel_tol {
            return Ok(TruncatedValue { value: acc.value(), terms_used: k, tail_bound: tail });
        }
        let factor = 1.0 - zq;
        if factor == 0.0 {
            return Ok(TruncatedValue { value: 0.0, terms_used: k + 1, tail_bound: 0.0 });
        }
        acc.mul(factor);
        zq *= q;
    }
    Err(Error::NonConvergence {
        terms: policy.max_terms,
        context: format!("infinite product tail at q = {q}"),
    })
}

/// Log-domain (z; q)_infinity, for magnitudes beyond f64 range.
///
/// Factors near 1 accumulate through ln_1p of the increment, so the log stays
/// accurate when z q^k is tiny.
pub fn q_pochhammer_infinite_log(z: f64, q: f64, policy: &PrecisionPolicy) -> Result<LogTruncated> {
    check_infinite_domain(z, q)?;
    let geom = 1.0 / (1.0 - q.abs());
    let mut log_abs = 0.0_f64;
    let mut sign = 1i8;
    let mut zq = z;
    for k in 0..policy.max_terms {
        let tail = zq.abs() * geom;
        if tail <= policy.rel_tol {
            return Ok(LogTruncated {
                log: LogValue { sign, log_abs },
                terms_used: k,
                tail_bound: tail,
            });
        }
        let factor = 1.0 - zq;
        if factor == 0.0 {
            return Ok(LogTruncated { log: LogValue::zero(), terms_used: k + 1, tail_bound: 0.0 });
        }
        if factor < 0.0 {
            sign = -sign;
        }
        log_abs += if factor > 0.0 { (-zq).ln_1p() } else { factor.abs().ln() };
        zq *= q;
    }
    Err(Error::NonConvergence {
        terms: policy.max_terms,
        context: format!("infinite product tail at q = {q}"),
    })
}

/// Big q-exponential E_q(z) = (-(1-q) z; q)_infinity, entire in z.
pub fn q_exp_big(z: f64, q: f64, policy: &PrecisionPolicy) -> Result<TruncatedValue> {
    q_pochhammer_infinite(-(1.0 - q) * z, q, policy)
}

/// Small q-exponential e_q(z) = 1 / ((1-q) z; q)_infinity.
///
/// Zeros of the denominator are simple poles in z.
pub fn q_exp_small(z: f64, q: f64, policy: &PrecisionPolicy) -> Result<TruncatedValue> {
    let den = q_pochhammer_infinite((1.0 - q) * z, q, policy)?;
    if den.value == 0.0 {
        return Err(Error::Pole { x: z });
    }
    Ok(TruncatedValue {
        value: 1.0 / den.value,
        terms_used: den.terms_used,
        tail_bound: den.tail_bound,
    })
}
