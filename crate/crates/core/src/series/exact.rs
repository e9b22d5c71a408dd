//! Signed evaluation of the stored part of a germ in the log domain.
//!
//! Used as an independent check on certificates: positive and negative
//! contributions are summed separately with log-sum-exp and compared.

use num_traits::Signed;
use serde::Serialize;

use crate::error::{PinchError, Result};
use crate::logspace::{ln_abs_ratio, log_sum_exp};
use crate::plumbing::LogPoint;
use crate::series::germ::AnalyticGerm;
use crate::series::tail::eval_log_abs_monomial;

/// Relative size below which `|P − N| / (P + N)` counts as cancellation.
pub const CANCELLATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn pow(self, e: u32) -> Self {
        if e.is_multiple_of(2) {
            Sign::Plus
        } else {
            self
        }
    }

    pub fn times(self, other: Self) -> Self {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ExactValue {
    /// `sign · e^{log_abs}`.
    Value { sign: Sign, log_abs: f64 },
    /// Result is zero, or smaller than the cancellation tolerance relative to
    /// the sum of absolute values of the terms.
    Cancellation,
}

/// Evaluate `Σ c_α t^α` over stored monomials with `t_k = signs_k · e^{λ_k}`.
pub fn eval_exact(f: &AnalyticGerm, point: &LogPoint, signs: &[Sign]) -> Result<ExactValue> {
    if f.arity() != point.arity() || signs.len() != point.arity() {
        return Err(PinchError::Usage(format!(
            "germ arity {}, point arity {}, {} signs",
            f.arity(),
            point.arity(),
            signs.len()
        )));
    }
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (alpha, c) in f.terms() {
        let mut sign = if c.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        };
        for (&e, &s) in alpha.entries().iter().zip(signs) {
            sign = sign.times(s.pow(e));
        }
        let log_abs = ln_abs_ratio(c) + eval_log_abs_monomial(alpha, point)?;
        match sign {
            Sign::Plus => pos.push(log_abs),
            Sign::Minus => neg.push(log_abs),
        }
    }
    let p = log_sum_exp(&pos);
    let n = log_sum_exp(&neg);
    if p == f64::NEG_INFINITY && n == f64::NEG_INFINITY {
        return Ok(ExactValue::Cancellation);
    }
    let (hi, lo, sign) = if p >= n {
        (p, n, Sign::Plus)
    } else {
        (n, p, Sign::Minus)
    };
    let d = lo - hi;
    // (e^hi − e^lo) / (e^hi + e^lo) = tanh((hi − lo) / 2)
    if (-d / 2.0).tanh() < CANCELLATION_TOL {
        return Ok(ExactValue::Cancellation);
    }
    Ok(ExactValue::Value {
        sign,
        log_abs: hi + (-d.exp_m1()).ln(),
    })
}
