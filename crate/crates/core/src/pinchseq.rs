//! Pinching sequences and their plumbing-coordinate envelopes.
//!
//! A sequence `Y_m` pinches all `n = 3g − 3` curves of a pants decomposition
//! at widely separated rates. A surface `X_m` at bounded distance from `Y_m`
//! has each pants-curve length inside an envelope around the target, and the
//! leading-order length relation turns that into an envelope on `log|t_i|`.
//!
//! Lengths are handled through their logarithms so that the Thurston
//! regimes, where `ℓ = e^{−m^i}`, stay exact until the final conversion.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{PinchError, Result};
use crate::hypgeom::{HypConstants, LengthValue};
use crate::plumbing::{
    gap_check, log_t_from_length_guarded, log_t_from_ln_length, GapReport, LogInterval,
    LogMagnitude, LogPoint, DEFAULT_LAMBDA_GUARD,
};

/// Which length comparison links `X_m` to `Y_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// Teichmüller distance at most `K`; targets `ℓ = m^{−i}`.
    Teichmuller,
    /// `d_Th(X_m, Y_m) <= K`; targets `ℓ = e^{−m^i}`.
    ThurstonFrom,
    /// `d_Th(Y_m, X_m) <= K`; targets `ℓ = e^{−m^i}`.
    ThurstonTo,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Teichmuller => "teichmuller",
            Regime::ThurstonFrom => "thurston-from",
            Regime::ThurstonTo => "thurston-to",
        }
    }

    pub fn is_thurston(self) -> bool {
        !matches!(self, Regime::Teichmuller)
    }

    pub fn default_m_max(self) -> u32 {
        if self.is_thurston() {
            6
        } else {
            50
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Regime {
    type Err = PinchError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "teichmuller" => Ok(Regime::Teichmuller),
            "thurston-from" => Ok(Regime::ThurstonFrom),
            "thurston-to" => Ok(Regime::ThurstonTo),
            other => Err(PinchError::Validation(format!(
                "unknown regime '{other}' (expected teichmuller, thurston-from or thurston-to)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeConfig {
    pub regime: Regime,
    pub consts: HypConstants,
    pub m_min: u32,
    pub m_max: u32,
    /// Relative slack `σ` on `λ`: envelopes are widened by `1 + σ`.
    pub slack: f64,
    /// Overflow guard on `|λ|`.
    pub guard: f64,
}

impl RegimeConfig {
    pub fn new(regime: Regime, consts: HypConstants, m_min: u32, m_max: u32, slack: f64) -> Self {
        Self {
            regime,
            consts,
            m_min,
            m_max,
            slack,
            guard: DEFAULT_LAMBDA_GUARD,
        }
    }

    /// Number of pants curves, `3g − 3`.
    pub fn n(&self) -> usize {
        3 * self.consts.genus as usize - 3
    }

    pub fn validate(&self) -> Result<()> {
        self.consts.validate()?;
        if self.m_min < 2 {
            return Err(PinchError::Validation(format!(
                "m_min must be >= 2, got {}",
                self.m_min
            )));
        }
        if self.m_max < self.m_min {
            return Err(PinchError::Validation(format!(
                "m_max ({}) is below m_min ({})",
                self.m_max, self.m_min
            )));
        }
        if !(self.slack.is_finite() && self.slack >= 0.0) {
            return Err(PinchError::Validation(format!(
                "slack must be finite and non-negative, got {}",
                self.slack
            )));
        }
        if self.guard.is_nan() || self.guard <= 1.0 {
            return Err(PinchError::Validation(format!(
                "guard must exceed 1, got {}",
                self.guard
            )));
        }
        Ok(())
    }

    /// Combined multiplicative widening applied to every `λ` envelope.
    pub fn widening(&self) -> f64 {
        self.consts.cprime * (1.0 + self.slack)
    }
}

/// `ln` of the target length `ℓ_{Y_m}(α_i)`.
fn ln_target(regime: Regime, i: usize, m: u32) -> Result<f64> {
    check_index_and_m(i, m)?;
    let mf = f64::from(m);
    let v = match regime {
        Regime::Teichmuller => -(i as f64) * mf.ln(),
        Regime::ThurstonFrom | Regime::ThurstonTo => -mf.powi(i as i32),
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(PinchError::Precision {
            what: format!("exponent of target length for i = {i}, m = {m}"),
            value: v,
            guard: f64::MAX,
        })
    }
}

fn check_index_and_m(i: usize, m: u32) -> Result<()> {
    if i == 0 {
        return Err(PinchError::Usage("curve indices start at 1".into()));
    }
    if m < 2 {
        return Err(PinchError::Usage(format!(
            "sequence index m must be >= 2, got {m}"
        )));
    }
    Ok(())
}

fn length_from_ln(ln_l: f64, what: impl FnOnce() -> String) -> Result<LengthValue> {
    let v = ln_l.exp();
    if v < f64::MIN_POSITIVE {
        return Err(PinchError::Precision {
            what: what(),
            value: v,
            guard: f64::MIN_POSITIVE,
        });
    }
    LengthValue::new(v)
}

/// Target length `ℓ_{Y_m}(α_i)`: `m^{−i}` (Teichmüller) or `e^{−m^i}` (Thurston).
pub fn target_length(regime: Regime, i: usize, m: u32) -> Result<LengthValue> {
    let ln_l = ln_target(regime, i, m)?;
    let what = || format!("target length underflows for i = {i}, m = {m}");
    match regime {
        // direct power keeps m^{−i} exact for small m
        Regime::Teichmuller => {
            let v = i32::try_from(i).map_or(0.0, |e| 1.0 / f64::from(m).powi(e));
            if v < f64::MIN_POSITIVE {
                return Err(PinchError::Precision {
                    what: what(),
                    value: v,
                    guard: f64::MIN_POSITIVE,
                });
            }
            LengthValue::new(v)
        }
        Regime::ThurstonFrom | Regime::ThurstonTo => length_from_ln(ln_l, what),
    }
}

/// Bounds on `ℓ_{X_m}(α_i)` held as logarithms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LengthEnvelope {
    pub ln_lo: f64,
    pub ln_hi: f64,
}

impl LengthEnvelope {
    pub fn lo(&self) -> Result<LengthValue> {
        length_from_ln(self.ln_lo, || "lower length bound underflows".into())
    }

    pub fn hi(&self) -> Result<LengthValue> {
        length_from_ln(self.ln_hi, || "upper length bound underflows".into())
    }
}

/// Smallest `m >= 2` with `e^{−m} <= eps`, where the Thurston short-curve
/// estimate starts to apply to every pants curve.
pub fn thurston_min_admissible_m(eps: f64) -> u32 {
    let m = (-eps.ln()).ceil().max(2.0);
    let mut m = m as u32;
    // ceil of a rounded logarithm can land one off in either direction
    while m > 2 && (-f64::from(m - 1)).exp() <= eps {
        m -= 1;
    }
    while (-f64::from(m)).exp() > eps {
        m += 1;
    }
    m
}

/// Two-sided bound on `ℓ_{X_m}(α_i)` for the regime.
///
/// * Teichmüller: `[ℓ_Y / c, c ℓ_Y]`, `c = wolpert_c`.
/// * Thurston-from: `[ℓ_Y / c, c ℓ_Y^{1/c}]`, `c = lemma41_c`.
/// * Thurston-to: `[c^{−c} ℓ_Y^c, c ℓ_Y]`, `c = lemma41_c`.
///
/// Thurston regimes require `ℓ_Y <= lemma41_eps`; otherwise an out-of-regime
/// error names the smallest admissible `m`.
pub fn xm_length_envelope(
    regime: Regime,
    i: usize,
    m: u32,
    consts: &HypConstants,
) -> Result<LengthEnvelope> {
    let y = ln_target(regime, i, m)?;
    let env = match regime {
        Regime::Teichmuller => {
            let lc = consts.wolpert_c.ln();
            LengthEnvelope {
                ln_lo: y - lc,
                ln_hi: y + lc,
            }
        }
        Regime::ThurstonFrom | Regime::ThurstonTo => {
            if y > consts.lemma41_eps.ln() {
                return Err(PinchError::OutOfRegime(format!(
                    "target length e^-{} of curve {i} exceeds eps = {}; smallest admissible m is {}",
                    -y,
                    consts.lemma41_eps,
                    thurston_min_admissible_m(consts.lemma41_eps)
                )));
            }
            let c = consts.lemma41_c;
            let lc = c.ln();
            if regime == Regime::ThurstonFrom {
                LengthEnvelope {
                    ln_lo: y - lc,
                    ln_hi: lc + y / c,
                }
            } else {
                LengthEnvelope {
                    ln_lo: c * (y - lc),
                    ln_hi: lc + y,
                }
            }
        }
    };
    Ok(env)
}

/// One pants curve at one sequence index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveRow {
    pub i: usize,
    pub target_len: f64,
    pub len_lo: f64,
    pub len_hi: f64,
    pub lam_lo: f64,
    pub lam_hi: f64,
}

impl CurveRow {
    pub fn log_interval(&self) -> LogInterval {
        LogInterval {
            lo: LogMagnitude::new(self.lam_lo).expect("validated at construction"),
            hi: LogMagnitude::new(self.lam_hi).expect("validated at construction"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequenceColumn {
    pub m: u32,
    pub rows: Vec<CurveRow>,
}

impl SequenceColumn {
    pub fn log_envelope(&self) -> Vec<LogInterval> {
        self.rows.iter().map(CurveRow::log_interval).collect()
    }

    /// Corner of the envelope with every `|t_k|` smallest.
    pub fn lo_point(&self) -> LogPoint {
        LogPoint::new(self.rows.iter().map(|r| r.log_interval().lo).collect())
            .expect("columns are non-empty")
    }

    /// Corner of the envelope with every `|t_k|` largest.
    pub fn hi_point(&self) -> LogPoint {
        LogPoint::new(self.rows.iter().map(|r| r.log_interval().hi).collect())
            .expect("columns are non-empty")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequenceEnvelope {
    pub config: RegimeConfig,
    pub n: usize,
    /// First admissible `m` when the requested range was cut below it.
    pub trimmed_below: Option<u32>,
    pub columns: Vec<SequenceColumn>,
}

fn build_column(config: &RegimeConfig, m: u32) -> Result<SequenceColumn> {
    let widening = config.widening();
    let rows = (1..=config.n())
        .map(|i| {
            let y = ln_target(config.regime, i, m)?;
            let env = xm_length_envelope(config.regime, i, m, &config.consts)?;
            let guard = config.guard;
            let tag = |e: PinchError| match e {
                PinchError::Precision { what, value, guard } => PinchError::Precision {
                    what: format!("{what} at i = {i}, m = {m}"),
                    value,
                    guard,
                },
                other => other,
            };
            // Teichmüller lengths are ordinary doubles; going through them
            // directly keeps λ = −2π² m^i exact where it is representable.
            let linear = match config.regime {
                Regime::Teichmuller => target_length(config.regime, i, m).ok().and_then(|t| {
                    let c = config.consts.wolpert_c;
                    let lo = LengthValue::new(t.value() / c).ok()?;
                    let hi = LengthValue::new(t.value() * c).ok()?;
                    (lo.value() >= f64::MIN_POSITIVE).then_some((t, lo, hi))
                }),
                _ => None,
            };
            let (target_len, len_lo, len_hi, raw) = match linear {
                Some((t, lo, hi)) => (
                    t.value(),
                    lo.value(),
                    hi.value(),
                    LogInterval::new(
                        log_t_from_length_guarded(lo, guard).map_err(tag)?,
                        log_t_from_length_guarded(hi, guard).map_err(tag)?,
                    )?,
                ),
                None => (
                    y.exp(),
                    env.ln_lo.exp(),
                    env.ln_hi.exp(),
                    LogInterval::new(
                        log_t_from_ln_length(env.ln_lo, guard).map_err(tag)?,
                        log_t_from_ln_length(env.ln_hi, guard).map_err(tag)?,
                    )?,
                ),
            };
            let lam = raw.widen(widening, guard).map_err(tag)?;
            Ok(CurveRow {
                i,
                target_len,
                len_lo,
                len_hi,
                lam_lo: lam.lo.lam(),
                lam_hi: lam.hi.lam(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SequenceColumn { m, rows })
}

fn first_m(config: &RegimeConfig) -> (u32, Option<u32>) {
    if config.regime.is_thurston() {
        let min_ok = thurston_min_admissible_m(config.consts.lemma41_eps);
        if min_ok > config.m_min {
            return (min_ok, Some(min_ok));
        }
    }
    (config.m_min, None)
}

/// Build the full envelope, failing on the first `(i, m)` that overflows.
///
/// In Thurston regimes the range is first trimmed to admissible `m`; the
/// result may then have no columns at all.
pub fn build_sequence(config: &RegimeConfig) -> Result<SequenceEnvelope> {
    match build_sequence_partial(config)? {
        (env, None) => Ok(env),
        (_, Some(err)) => Err(err),
    }
}

/// Like [`build_sequence`] but keeps the columns computed before the first
/// precision failure and returns that failure alongside them.
pub fn build_sequence_partial(
    config: &RegimeConfig,
) -> Result<(SequenceEnvelope, Option<PinchError>)> {
    config.validate()?;
    let (start, trimmed_below) = first_m(config);
    let mut columns = Vec::new();
    let mut failure = None;
    for m in start..=config.m_max {
        match build_column(config, m) {
            Ok(col) => columns.push(col),
            Err(e @ PinchError::Precision { .. }) => {
                failure = Some(e);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok((
        SequenceEnvelope {
            config: *config,
            n: config.n(),
            trimmed_below,
            columns,
        },
        failure,
    ))
}

/// Per-column gap reports and the domination threshold.
pub type GapSeries = (Vec<(u32, GapReport)>, Option<u32>);

/// Gap reports for the pair `(i, j)` at every column, plus the smallest `m`
/// from which the pair stays dominated through the end of the range.
pub fn gap_threshold(env: &SequenceEnvelope, i: usize, j: usize, p: u32) -> Result<GapSeries> {
    let reports = env
        .columns
        .iter()
        .map(|col| Ok((col.m, gap_check(&col.log_envelope(), i, j, p)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut threshold = None;
    for (m, rep) in reports.iter().rev() {
        if rep.dominated {
            threshold = Some(*m);
        } else {
            break;
        }
    }
    Ok((reports, threshold))
}
