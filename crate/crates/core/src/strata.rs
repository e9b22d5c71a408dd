//! Strata of abelian differentials and the coarse-density verdict.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{PinchError, Result};

/// Caveat attached to `κ = (2, …, 2)` with at least two zeros.
pub const EVEN_COMPONENT_CAVEAT: &str = "the verdict is only true for the whole stratum; \
the connected component H^even(2,...,2) is not covered";

/// Zero orders `κ = (κ_1, …, κ_n)` of an abelian differential.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumSignature {
    kappa: Vec<u32>,
    genus: u32,
}

impl StratumSignature {
    pub fn new(kappa: Vec<u32>) -> Result<Self> {
        if kappa.is_empty() {
            return Err(PinchError::Validation(
                "kappa must list at least one zero order".into(),
            ));
        }
        if let Some(k) = kappa.iter().position(|&k| k == 0) {
            return Err(PinchError::Validation(format!(
                "zero orders must be positive, kappa_{} = 0",
                k + 1
            )));
        }
        let sum: u64 = kappa.iter().map(|&k| u64::from(k)).sum();
        if !sum.is_multiple_of(2) {
            return Err(PinchError::Validation(format!(
                "sum of kappa must be even (it equals 2g - 2), got {sum}"
            )));
        }
        let genus = u32::try_from(sum / 2 + 1)
            .map_err(|_| PinchError::Validation(format!("sum of kappa {sum} is too large")))?;
        Ok(Self { kappa, genus })
    }

    pub fn kappa(&self) -> &[u32] {
        &self.kappa
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn n(&self) -> usize {
        self.kappa.len()
    }
}

impl FromStr for StratumSignature {
    type Err = PinchError;

    /// Comma-separated positive integers, e.g. `1,1,2`.
    fn from_str(s: &str) -> Result<Self> {
        let kappa = s
            .split(',')
            .map(|p| {
                p.trim().parse::<u32>().map_err(|_| {
                    PinchError::Validation(format!(
                        "kappa entry '{}' is not a non-negative integer",
                        p.trim()
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(kappa)
    }
}

/// `dim PH(κ) = 2g + n − 2`.
pub fn dim_projective_stratum(s: &StratumSignature) -> u64 {
    2 * u64::from(s.genus) + s.n() as u64 - 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Density {
    Dense,
    NotDense,
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Density::Dense => "dense",
            Density::NotDense => "not_dense",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumVerdict {
    pub kappa: Vec<u32>,
    pub genus: u32,
    pub n: usize,
    #[serde(rename = "dim_PH")]
    pub dim_ph: u64,
    /// `3g − 3`.
    pub threshold: u64,
    pub verdict: Density,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
}

/// Dense iff `dim PH(κ) ≥ 3g − 3`, i.e. `n ≥ g − 1`.
pub fn coarse_density_verdict(s: &StratumSignature) -> Result<StratumVerdict> {
    if s.genus < 2 {
        return Err(PinchError::Validation(format!(
            "verdict needs genus >= 2, kappa gives genus {}",
            s.genus
        )));
    }
    let dim_ph = dim_projective_stratum(s);
    let threshold = 3 * u64::from(s.genus) - 3;
    let verdict = if dim_ph >= threshold {
        Density::Dense
    } else {
        Density::NotDense
    };
    let all_twos = s.n() >= 2 && s.kappa.iter().all(|&k| k == 2);
    Ok(StratumVerdict {
        kappa: s.kappa.clone(),
        genus: s.genus,
        n: s.n(),
        dim_ph,
        threshold,
        verdict,
        caveat: all_twos.then(|| EVEN_COMPONENT_CAVEAT.to_string()),
    })
}
