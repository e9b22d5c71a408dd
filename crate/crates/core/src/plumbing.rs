//! Plumbing-parameter magnitudes and their relation to hyperbolic length.
//!
//! A plumbing parameter `t` with `0 < |t| < 1` is carried as `λ = log|t|`.
//! Near a maximally pinched surface the hyperbolic length of the pinching
//! curve is `2π² / log(1/|t|)` to leading order, so `λ = −2π² / ℓ`.
//! Phases of `t` never enter the estimates and are not modeled.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{PinchError, Result};
use crate::hypgeom::LengthValue;

/// Default bound on `|λ|`; larger magnitudes are rejected instead of saturating.
pub const DEFAULT_LAMBDA_GUARD: f64 = 1e300;

/// `2π²`, the leading-order constant relating length and `log 1/|t|`.
pub const TWO_PI_SQ: f64 = 2.0 * PI * PI;

/// `λ = log|t|` of a plumbing parameter, strictly negative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct LogMagnitude(f64);

impl LogMagnitude {
    pub fn new(lam: f64) -> Result<Self> {
        Self::with_guard(lam, DEFAULT_LAMBDA_GUARD)
    }

    pub fn with_guard(lam: f64, guard: f64) -> Result<Self> {
        if lam.is_nan() || lam >= 0.0 {
            return Err(PinchError::Domain(format!(
                "log-magnitude must be negative, got {lam}"
            )));
        }
        if !lam.is_finite() || lam.abs() >= guard {
            return Err(PinchError::Precision {
                what: "log-magnitude beyond overflow guard".to_string(),
                value: lam,
                guard,
            });
        }
        Ok(Self(lam))
    }

    #[inline]
    pub fn lam(self) -> f64 {
        self.0
    }

    /// `|t| = e^λ`. Underflows to zero for very negative `λ`.
    pub fn abs_t(self) -> f64 {
        self.0.exp()
    }
}

/// Plumbing coordinates `(t_1, …, t_n)` in log-magnitude form.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct LogPoint(Vec<LogMagnitude>);

impl LogPoint {
    pub fn new(lams: Vec<LogMagnitude>) -> Result<Self> {
        if lams.is_empty() {
            return Err(PinchError::Usage(
                "log point needs at least one coordinate".into(),
            ));
        }
        Ok(Self(lams))
    }

    pub fn from_raw(lams: &[f64]) -> Result<Self> {
        Self::new(
            lams.iter()
                .map(|&l| LogMagnitude::new(l))
                .collect::<Result<_>>()?,
        )
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn lams(&self) -> impl Iterator<Item = f64> + '_ {
        self.0.iter().map(|l| l.lam())
    }

    pub fn get(&self, k: usize) -> LogMagnitude {
        self.0[k]
    }
}

/// Two-sided bound `lo <= λ <= hi` on a single log-magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogInterval {
    pub lo: LogMagnitude,
    pub hi: LogMagnitude,
}

impl LogInterval {
    pub fn new(lo: LogMagnitude, hi: LogMagnitude) -> Result<Self> {
        if lo.lam() > hi.lam() {
            return Err(PinchError::Usage(format!(
                "log interval is reversed: {} > {}",
                lo.lam(),
                hi.lam()
            )));
        }
        Ok(Self { lo, hi })
    }

    /// Multiply `λ_lo` by `factor` and divide `λ_hi` by it (`factor >= 1`).
    pub fn widen(self, factor: f64, guard: f64) -> Result<Self> {
        if !(factor.is_finite() && factor >= 1.0) {
            return Err(PinchError::Domain(format!(
                "widening factor must be >= 1, got {factor}"
            )));
        }
        Ok(Self {
            lo: LogMagnitude::with_guard(self.lo.lam() * factor, guard)?,
            hi: LogMagnitude::with_guard(self.hi.lam() / factor, guard)?,
        })
    }
}

/// `λ = −2π² / ℓ`, the exact inverse of the leading-order length formula.
pub fn log_t_from_length(l: LengthValue) -> Result<LogMagnitude> {
    log_t_from_length_guarded(l, DEFAULT_LAMBDA_GUARD)
}

pub fn log_t_from_length_guarded(l: LengthValue, guard: f64) -> Result<LogMagnitude> {
    LogMagnitude::with_guard(-TWO_PI_SQ / l.value(), guard)
}

/// Same conversion taking `ln ℓ` instead of `ℓ`, for lengths too small to
/// represent as normal doubles.
pub fn log_t_from_ln_length(ln_l: f64, guard: f64) -> Result<LogMagnitude> {
    if !ln_l.is_finite() {
        return Err(PinchError::Domain(format!(
            "log-length must be finite, got {ln_l}"
        )));
    }
    LogMagnitude::with_guard(-(TWO_PI_SQ.ln() - ln_l).exp(), guard)
}

/// `ℓ = 2π² / (−λ)`.
pub fn length_from_log_t(lam: LogMagnitude) -> LengthValue {
    LengthValue::new(TWO_PI_SQ / -lam.lam())
        .expect("2π²/(−λ) is positive and finite for a guarded λ")
}

/// Coarse extremal length `2π / (−λ)` of the pinching curve.
pub fn extremal_length_estimate(lam: LogMagnitude) -> f64 {
    2.0 * PI / -lam.lam()
}

/// Convert a length envelope `[lo, hi]` into the `λ` envelope
/// `[−2π²/lo, −2π²/hi]`. Longer curves give less negative `λ`.
pub fn length_envelope_to_log_envelope(lo: LengthValue, hi: LengthValue) -> Result<LogInterval> {
    if lo.value() > hi.value() {
        return Err(PinchError::Usage(format!(
            "length envelope is reversed: {} > {}",
            lo.value(),
            hi.value()
        )));
    }
    LogInterval::new(log_t_from_length(lo)?, log_t_from_length(hi)?)
}

/// Outcome of testing `|t_j| = o(|t_i|^p)` at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapReport {
    pub i: usize,
    pub j: usize,
    pub p: u32,
    /// `λ_hi(j) − p λ_lo(i)`: log of the largest possible `|t_j| / |t_i|^p`.
    pub gap: f64,
    pub dominated: bool,
}

/// Worst-case log-gap between coordinates `j` and `i` (1-based, `i < j`).
///
/// Uses the largest admissible `|t_j|` against the smallest admissible `|t_i|`,
/// so `dominated` (gap < 0) holds for every point of the envelope.
pub fn gap_check(envelope: &[LogInterval], i: usize, j: usize, p: u32) -> Result<GapReport> {
    if i == 0 || i >= j {
        return Err(PinchError::Usage(format!(
            "gap condition needs 1 <= i < j, got i = {i}, j = {j}"
        )));
    }
    if j > envelope.len() {
        return Err(PinchError::Usage(format!(
            "index j = {j} exceeds envelope arity {}",
            envelope.len()
        )));
    }
    if p == 0 {
        return Err(PinchError::Usage("exponent p must be positive".into()));
    }
    let gap = envelope[j - 1].hi.lam() - f64::from(p) * envelope[i - 1].lo.lam();
    Ok(GapReport {
        i,
        j,
        p,
        gap,
        dominated: gap < 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn len(x: f64) -> LengthValue {
        LengthValue::new(x).unwrap()
    }

    fn lm(x: f64) -> LogMagnitude {
        LogMagnitude::new(x).unwrap()
    }

    fn rel_eq(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs()
    }

    #[test]
    fn log_t_examples() {
        assert!(rel_eq(
            log_t_from_length(len(TWO_PI_SQ)).unwrap().lam(),
            -1.0,
            1e-15
        ));
        assert!(rel_eq(
            log_t_from_length(len(1.0)).unwrap().lam(),
            -19.739_208_802_178_716,
            1e-15
        ));
        assert!(rel_eq(
            log_t_from_length(len(1.0 / 8.0)).unwrap().lam(),
            -157.913_670_417_429_74,
            1e-15
        ));
    }

    #[test]
    fn log_t_overflow_is_reported() {
        match log_t_from_length(len(1e-299)) {
            Err(PinchError::Precision { value, .. }) => assert!(value < -1e300),
            other => panic!("expected precision error, got {other:?}"),
        }
    }

    #[test]
    fn ln_length_route_matches_direct_route() {
        for l in [1e-6, 0.01, 1.0, 37.0] {
            let a = log_t_from_length(len(l)).unwrap().lam();
            let b = log_t_from_ln_length(f64::ln(l), DEFAULT_LAMBDA_GUARD)
                .unwrap()
                .lam();
            assert!(rel_eq(a, b, 1e-13));
        }
        // ℓ = e^{-600} is representable only through its logarithm.
        let lam = log_t_from_ln_length(-600.0, DEFAULT_LAMBDA_GUARD).unwrap();
        assert!(rel_eq((-lam.lam()).ln(), TWO_PI_SQ.ln() + 600.0, 1e-15));
        assert!(matches!(
            log_t_from_ln_length(-720.0, DEFAULT_LAMBDA_GUARD),
            Err(PinchError::Precision { .. })
        ));
    }

    #[test]
    fn length_from_log_t_examples() {
        assert!(rel_eq(
            length_from_log_t(lm(-TWO_PI_SQ)).value(),
            1.0,
            1e-15
        ));
        assert!(rel_eq(
            length_from_log_t(lm(-1.0)).value(),
            TWO_PI_SQ,
            1e-15
        ));
    }

    #[test]
    fn extremal_examples() {
        assert!(rel_eq(extremal_length_estimate(lm(-2.0 * PI)), 1.0, 1e-15));
        assert!(rel_eq(extremal_length_estimate(lm(-1.0)), 2.0 * PI, 1e-15));
    }

    #[test]
    fn envelope_examples() {
        let env = length_envelope_to_log_envelope(len(1.0), len(1.0)).unwrap();
        assert_eq!(env.lo, env.hi);
        assert!(rel_eq(env.lo.lam(), -TWO_PI_SQ, 1e-15));

        let env = length_envelope_to_log_envelope(len(1.0 / (10.0 * E)), len(E / 10.0)).unwrap();
        assert!(rel_eq(env.lo.lam(), -536.567_325_951_212_4, 1e-14));
        assert!(rel_eq(env.hi.lam(), -72.616_491_033_119_22, 1e-14));

        let lo = (-9f64).exp() / 2.0;
        let hi = 2.0 * (-4.5f64).exp();
        let env = length_envelope_to_log_envelope(len(lo), len(hi)).unwrap();
        assert!(rel_eq(env.lo.lam(), -319_896.931_175_977_8, 1e-13));
        assert!(rel_eq(env.hi.lam(), -888.433_475_257_068_8, 1e-13));
    }

    #[test]
    fn envelope_rejects_reversed() {
        assert!(matches!(
            length_envelope_to_log_envelope(len(2.0), len(1.0)),
            Err(PinchError::Usage(_))
        ));
    }

    #[test]
    fn gap_teichmuller_example() {
        // λ_k = −2π² m^k, so G(m) = −2π²(m² − 3m) for i = 1, j = 2, p = 3.
        for m in 2..=12u32 {
            let env: Vec<_> = (1..=3)
                .map(|k| {
                    let lam = lm(-TWO_PI_SQ * f64::from(m).powi(k));
                    LogInterval::new(lam, lam).unwrap()
                })
                .collect();
            let rep = gap_check(&env, 1, 2, 3).unwrap();
            let mf = f64::from(m);
            let expected = -TWO_PI_SQ * (mf * mf - 3.0 * mf);
            assert!((rep.gap - expected).abs() <= 1e-9 * expected.abs().max(1.0));
            assert_eq!(rep.dominated, m >= 4, "m = {m}");
        }
    }

    #[test]
    fn gap_identical_envelopes() {
        let a = LogInterval::new(lm(-3.0), lm(-2.0)).unwrap();
        let b = LogInterval::new(lm(-9.0), lm(-4.0)).unwrap();
        let rep = gap_check(&[a, b], 1, 2, 1).unwrap();
        assert!(rep.dominated);
        assert_eq!(rep.gap, -1.0);
    }

    #[test]
    fn gap_usage_errors() {
        let a = LogInterval::new(lm(-3.0), lm(-2.0)).unwrap();
        let env = [a, a, a];
        assert!(gap_check(&env, 2, 2, 1).is_err());
        assert!(gap_check(&env, 3, 1, 1).is_err());
        assert!(gap_check(&env, 0, 1, 1).is_err());
        assert!(gap_check(&env, 1, 4, 1).is_err());
        assert!(gap_check(&env, 1, 2, 0).is_err());
    }

    #[test]
    fn widen_moves_both_ends_outward() {
        let a = LogInterval::new(lm(-10.0), lm(-5.0)).unwrap();
        let w = a.widen(1.05, DEFAULT_LAMBDA_GUARD).unwrap();
        assert_eq!(w.lo.lam(), -10.5);
        assert!(rel_eq(w.hi.lam(), -5.0 / 1.05, 1e-15));
        assert!(a.widen(0.5, DEFAULT_LAMBDA_GUARD).is_err());
    }

    #[test]
    fn log_magnitude_invariants() {
        assert!(LogMagnitude::new(0.0).is_err());
        assert!(LogMagnitude::new(1.0).is_err());
        assert!(LogMagnitude::new(f64::NAN).is_err());
        assert!(matches!(
            LogMagnitude::new(f64::NEG_INFINITY),
            Err(PinchError::Precision { .. })
        ));
        assert!(LogMagnitude::with_guard(-50.0, 10.0).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn roundtrip(e in -6.0f64..3.0) {
                let l = 10f64.powf(e);
                let back = length_from_log_t(log_t_from_length(len(l)).unwrap()).value();
                prop_assert!((back - l).abs() <= 1e-12 * l);
            }

            #[test]
            fn conversion_monotone(a in 1e-6f64..1e3, b in 1e-6f64..1e3) {
                prop_assume!(a < b);
                let la = log_t_from_length(len(a)).unwrap().lam();
                let lb = log_t_from_length(len(b)).unwrap().lam();
                prop_assert!(la < lb);
            }

            #[test]
            fn extremal_over_hyperbolic_is_one_over_pi(lam in -1e6f64..-1e-6) {
                let l = lm(lam);
                let ratio = extremal_length_estimate(l) / length_from_log_t(l).value();
                prop_assert!((ratio - 1.0 / PI).abs() <= 2.0 * f64::EPSILON / PI);
            }
        }
    }
}
