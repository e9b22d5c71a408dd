//! Log-domain bounds on the part of a series that follows its leading term.
//!
//! Every `α ≻ β` has a largest position `i` where it differs from `β`, and
//! there `α_i > β_i`. Grouping by that position splits the tail into blocks
//!
//! ```text
//! S_i = Σ { c_α t^α : α_k = β_k for k > i, α_i > β_i, α_1..α_{i−1} free }.
//! ```
//!
//! Under a Cauchy majorant `|c_α| <= M r^{−|α|}` and with `x_k = |t_k| / r < 1`
//! each block is a product of geometric series:
//!
//! ```text
//! |S_i| <= M · Π_{k<i} 1/(1 − x_k) · x_i^{β_i+1}/(1 − x_i) · Π_{k>i} x_k^{β_k}.
//! ```
//!
//! The blocks partition `{α ≻ β}`, so their sum is exactly the majorant series.

use crate::error::{PinchError, Result};
use crate::logspace::{ln_abs_ratio, log_sum_exp, pad_up};
use crate::plumbing::{LogPoint, DEFAULT_LAMBDA_GUARD};
use crate::series::germ::{AnalyticGerm, CauchyEnvelope};
use crate::series::index::MultiIndex;

fn check_arity(what: &str, arity: usize, point: &LogPoint) -> Result<()> {
    if arity != point.arity() {
        return Err(PinchError::Usage(format!(
            "{what} has arity {arity} but the point has {} coordinates",
            point.arity()
        )));
    }
    Ok(())
}

/// `log |t^α| = Σ α_k λ_k`.
pub fn eval_log_abs_monomial(alpha: &MultiIndex, point: &LogPoint) -> Result<f64> {
    check_arity("multi-index", alpha.arity(), point)?;
    let v: f64 = alpha
        .entries()
        .iter()
        .zip(point.lams())
        .map(|(&a, lam)| f64::from(a) * lam)
        .sum();
    if !v.is_finite() || v.abs() >= DEFAULT_LAMBDA_GUARD {
        return Err(PinchError::Precision {
            what: format!("log of monomial t^{alpha}"),
            value: v,
            guard: DEFAULT_LAMBDA_GUARD,
        });
    }
    Ok(v)
}

/// Log of the block bounds `|S_i|` for the majorant series, `i = 1..n`.
pub fn envelope_block_logs(
    env: CauchyEnvelope,
    beta: &MultiIndex,
    point: &LogPoint,
) -> Result<Vec<f64>> {
    check_arity("leading index", beta.arity(), point)?;
    let ln_r = env.r.ln();
    let ln_x: Vec<f64> = point.lams().map(|lam| lam - ln_r).collect();
    if let Some(k) = ln_x.iter().position(|&v| v >= 0.0) {
        return Err(PinchError::Divergence {
            index: k + 1,
            abs_t: point.get(k).abs_t(),
            radius: env.r,
        });
    }
    // −ln(1 − x_k), accurate for tiny x_k
    let geo: Vec<f64> = ln_x.iter().map(|&l| -(-l.exp()).ln_1p()).collect();
    let b = beta.entries();
    let n = b.len();
    let ln_m = env.m.ln();
    let mut prefix = 0.0;
    let mut blocks = Vec::with_capacity(n);
    for i in 0..n {
        let suffix: f64 = (i + 1..n).map(|k| f64::from(b[k]) * ln_x[k]).sum();
        let own = (f64::from(b[i]) + 1.0) * ln_x[i] + geo[i];
        blocks.push(ln_m + prefix + own + suffix);
        prefix += geo[i];
    }
    Ok(blocks)
}

/// Log of an upper bound for `Σ_{α≻β} |c_α t^α|` at `point`.
///
/// Stored monomials contribute exactly. When the germ carries an envelope,
/// the majorant series over *all* `α ≻ β` is added on top, so stored terms
/// are counted twice rather than risk an underestimate. Returns `−∞` when
/// nothing follows `β`.
pub fn tail_bound(f: &AnalyticGerm, beta: &MultiIndex, point: &LogPoint) -> Result<f64> {
    check_arity("germ", f.arity(), point)?;
    check_arity("leading index", beta.arity(), point)?;
    let mut logs = Vec::new();
    for (alpha, c) in f.terms() {
        if alpha.succeeds(beta)? {
            logs.push(ln_abs_ratio(c) + eval_log_abs_monomial(alpha, point)?);
        }
    }
    if let Some(env) = f.envelope() {
        logs.extend(envelope_block_logs(env, beta, point)?);
    }
    Ok(pad_up(log_sum_exp(&logs), logs.len()))
}
