//! Domination certificates along a pinching sequence.
//!
//! For each column `m` the leading term is bounded below at the corner of the
//! λ-box where every `|t_k|` is smallest, and the tail is bounded above at the
//! opposite corner. A positive margin then rules out a zero of `f` anywhere in
//! that box.

use serde::Serialize;

use crate::error::{PinchError, Result};
use crate::logspace::ln_abs_ratio;
use crate::pinchseq::{RegimeConfig, SequenceEnvelope};
use crate::series::germ::AnalyticGerm;
use crate::series::index::MultiIndex;
use crate::series::tail::{eval_log_abs_monomial, tail_bound};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CertifyOptions {
    /// The user asserts every `≻`-minimal term of the full series is stored.
    pub lead_complete: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertFlag {
    /// `f` is a nonzero constant.
    Vacuous,
    /// Nothing follows the leading term.
    VacuousTail,
    /// Lead minimality rests on the `--lead-complete` assertion.
    ConditionalLead,
    /// No `m` from which the margin stays positive.
    Inconclusive,
    /// Requested `m` below the admissible range were skipped.
    Trimmed,
    /// The range was cut short by the overflow guard.
    Truncated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertRow {
    pub m: u32,
    pub log_lead: f64,
    /// `None` encodes `−∞` (empty tail).
    pub log_tail: Option<f64>,
    /// `None` encodes `+∞`.
    pub margin: Option<f64>,
}

impl CertRow {
    pub fn margin_value(&self) -> f64 {
        self.margin.unwrap_or(f64::INFINITY)
    }

    pub fn is_certified(&self) -> bool {
        self.margin_value() > 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominationCertificate {
    pub beta: MultiIndex,
    pub c_beta_log_abs: f64,
    pub rows: Vec<CertRow>,
    pub m_star: Option<u32>,
    pub flags: Vec<CertFlag>,
    pub config: RegimeConfig,
}

impl DominationCertificate {
    pub fn is_inconclusive(&self) -> bool {
        self.m_star.is_none()
    }

    pub fn has_flag(&self, flag: CertFlag) -> bool {
        self.flags.contains(&flag)
    }

    /// Record that the sequence stopped early on an overflow.
    pub fn mark_truncated(&mut self) {
        if !self.has_flag(CertFlag::Truncated) {
            self.flags.push(CertFlag::Truncated);
        }
    }
}

/// Smallest `m` such that every row from `m` on has a positive margin.
pub fn threshold(rows: &[CertRow]) -> Option<u32> {
    let mut m_star = None;
    for row in rows.iter().rev() {
        if row.is_certified() {
            m_star = Some(row.m);
        } else {
            break;
        }
    }
    m_star
}

pub fn certify(
    f: &AnalyticGerm,
    seq: &SequenceEnvelope,
    opts: CertifyOptions,
) -> Result<DominationCertificate> {
    if f.arity() != seq.n {
        return Err(PinchError::Validation(format!(
            "germ has {} variables but the sequence has {} curves",
            f.arity(),
            seq.n
        )));
    }
    if f.envelope().is_some() && !opts.lead_complete {
        return Err(PinchError::Validation(
            "a germ with an envelope needs --lead-complete: the envelope could hide a term \
             that precedes every stored one"
                .into(),
        ));
    }
    let lead = f.leading_monomial()?;
    let c_log = ln_abs_ratio(&lead.coeff);

    let mut rows = Vec::with_capacity(seq.columns.len());
    for col in &seq.columns {
        let log_lead = c_log + eval_log_abs_monomial(&lead.index, &col.lo_point())?;
        let tail = tail_bound(f, &lead.index, &col.hi_point())?;
        let (log_tail, margin) = if tail == f64::NEG_INFINITY {
            (None, None)
        } else {
            (Some(tail), Some(log_lead - tail))
        };
        rows.push(CertRow {
            m: col.m,
            log_lead,
            log_tail,
            margin,
        });
    }

    let m_star = threshold(&rows);
    let mut flags = Vec::new();
    if f.is_constant() {
        flags.push(CertFlag::Vacuous);
    }
    if rows.iter().all(|r| r.log_tail.is_none()) && !rows.is_empty() {
        flags.push(CertFlag::VacuousTail);
    }
    if lead.conditional {
        flags.push(CertFlag::ConditionalLead);
    }
    if m_star.is_none() {
        flags.push(CertFlag::Inconclusive);
    }
    if seq.trimmed_below.is_some() {
        flags.push(CertFlag::Trimmed);
    }
    Ok(DominationCertificate {
        beta: lead.index,
        c_beta_log_abs: c_log,
        rows,
        m_star,
        flags,
        config: seq.config,
    })
}
