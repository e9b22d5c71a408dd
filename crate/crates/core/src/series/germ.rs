use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{PinchError, Result};
use crate::series::index::MultiIndex;

/// Cauchy majorant `|c_α| <= M / r^{|α|}` for the coefficients a germ does not
/// store explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CauchyEnvelope {
    #[serde(rename = "M")]
    pub m: f64,
    pub r: f64,
}

impl CauchyEnvelope {
    pub fn new(m: f64, r: f64) -> Result<Self> {
        if !(m.is_finite() && m > 0.0 && r.is_finite() && r > 0.0) {
            return Err(PinchError::Validation(format!(
                "Cauchy envelope needs M > 0 and r > 0, got M = {m}, r = {r}"
            )));
        }
        Ok(Self { m, r })
    }
}

/// Parses `M=<decimal>,r=<decimal>` (keys in either order, whitespace ignored).
impl FromStr for CauchyEnvelope {
    type Err = PinchError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            PinchError::Validation(format!(
                "envelope must look like M=<decimal>,r=<decimal>, got '{s}'"
            ))
        };
        let mut m = None;
        let mut r = None;
        for part in s.split(',') {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            let value: f64 = value.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "M" if m.is_none() => m = Some(value),
                "r" if r.is_none() => r = Some(value),
                _ => return Err(bad()),
            }
        }
        Self::new(m.ok_or_else(bad)?, r.ok_or_else(bad)?)
    }
}

/// A finite set of exactly known monomials of an analytic germ, optionally
/// completed by a Cauchy envelope that majorizes every other coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticGerm {
    n: usize,
    monomials: BTreeMap<MultiIndex, BigRational>,
    envelope: Option<CauchyEnvelope>,
}

/// The `≻`-minimal stored monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct LeadingTerm {
    pub index: MultiIndex,
    pub coeff: BigRational,
    /// Set when an envelope is present: the envelope's unstored terms are only
    /// majorized, so minimality over the full series is an assumption.
    pub conditional: bool,
}

impl AnalyticGerm {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(PinchError::Usage("germ arity must be at least 1".into()));
        }
        Ok(Self {
            n,
            monomials: BTreeMap::new(),
            envelope: None,
        })
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, BigRational)>,
    {
        let mut g = Self::new(n)?;
        for (idx, c) in terms {
            g.add_term(idx, c)?;
        }
        Ok(g)
    }

    pub fn with_envelope(mut self, envelope: CauchyEnvelope) -> Self {
        self.envelope = Some(envelope);
        self
    }

    /// Add `c t^α`, merging with an existing term and dropping exact zeros.
    pub fn add_term(&mut self, index: MultiIndex, coeff: BigRational) -> Result<()> {
        if index.arity() != self.n {
            return Err(PinchError::Usage(format!(
                "monomial {index} has arity {}, germ has arity {}",
                index.arity(),
                self.n
            )));
        }
        let slot = self
            .monomials
            .entry(index)
            .or_insert_with(BigRational::zero);
        *slot += coeff;
        self.monomials.retain(|_, c| !c.is_zero());
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn envelope(&self) -> Option<CauchyEnvelope> {
        self.envelope
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Stored monomials in increasing `≻` order (dominant term first).
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &BigRational)> {
        self.monomials.iter()
    }

    /// A single nonzero constant and nothing else.
    pub fn is_constant(&self) -> bool {
        self.envelope.is_none()
            && self.monomials.len() == 1
            && self.monomials.keys().all(MultiIndex::is_zero)
    }

    /// Re-embed into `n` variables by appending zero exponents.
    pub fn with_arity(&self, n: usize) -> Result<Self> {
        if n < self.n {
            return Err(PinchError::Validation(format!(
                "germ uses {} variables, cannot restrict to {n}",
                self.n
            )));
        }
        let monomials = self
            .monomials
            .iter()
            .map(|(idx, c)| {
                let mut e = idx.entries().to_vec();
                e.resize(n, 0);
                (MultiIndex::new(e).expect("non-empty"), c.clone())
            })
            .collect();
        Ok(Self {
            n,
            monomials,
            envelope: self.envelope,
        })
    }

    pub fn leading_monomial(&self) -> Result<LeadingTerm> {
        let (index, coeff) = self
            .monomials
            .iter()
            .next()
            .ok_or(PinchError::DegenerateGerm)?;
        Ok(LeadingTerm {
            index: index.clone(),
            coeff: coeff.clone(),
            conditional: self.envelope.is_some(),
        })
    }
}

impl fmt::Display for AnalyticGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        for (k, (idx, c)) in self.monomials.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            let mut first = true;
            if !a.is_integer() || a != BigRational::from_integer(1.into()) || idx.is_zero() {
                write!(f, "{a}")?;
                first = false;
            }
            for (v, &e) in idx.entries().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "t{}", v + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
