//! Log-domain arithmetic helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// `log Σ e^{x_i}`, with `−∞` for an empty input.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max.is_infinite() {
        return max;
    }
    max + values.iter().map(|&x| (x - max).exp()).sum::<f64>().ln()
}

/// Nudge a log-domain upper bound upwards to absorb rounding in its
/// computation from `terms` summands. The pad scales with `|x|` because the
/// absolute error of a large logarithm is proportional to its size.
pub fn pad_up(x: f64, terms: usize) -> f64 {
    if !x.is_finite() {
        return x;
    }
    x + 4.0 * f64::EPSILON * (x.abs() + terms as f64 + 1.0)
}

/// `ln |n|` for a nonzero big integer, exact to double precision even when
/// `n` does not fit in an `f64`.
pub fn ln_abs_bigint(n: &BigInt) -> f64 {
    debug_assert!(!n.is_zero());
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top = (n.abs() >> shift).to_f64().expect("64-bit head");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln |q|` for a nonzero rational.
pub fn ln_abs_ratio(q: &BigRational) -> f64 {
    ln_abs_bigint(q.numer()) - ln_abs_bigint(q.denom())
}
