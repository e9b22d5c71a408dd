//! Multi-indices and the reverse-lexicographic order `≻`.
//!
//! `α ≻ β` when, at the *largest* position `k` where they differ,
//! `α_k > β_k`. Along a pinching sequence where later coordinates shrink
//! much faster than any power of earlier ones, a `≻`-smaller exponent vector
//! gives a larger monomial, so the `≻`-minimal term of a series dominates.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{PinchError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(PinchError::Usage("multi-index must have arity >= 1".into()));
        }
        Ok(Self(entries))
    }

    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "multi-index arity must be positive");
        Self(vec![0; n])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `|α| = α_1 + ⋯ + α_n`.
    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&a| u64::from(a)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// `Greater` means `self ≻ other` (the receiver is the smaller term along
    /// the sequence); `Less` means `self` precedes `other` and dominates it.
    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        if self.arity() != other.arity() {
            return Err(PinchError::Usage(format!(
                "cannot compare multi-indices of arity {} and {}",
                self.arity(),
                other.arity()
            )));
        }
        Ok(revlex(&self.0, &other.0))
    }

    /// `self ≻ other`.
    pub fn succeeds(&self, other: &Self) -> Result<bool> {
        Ok(self.compare(other)? == Ordering::Greater)
    }

    /// Position (0-based) of the largest coordinate where the indices differ.
    pub fn last_difference(&self, other: &Self) -> Option<usize> {
        (0..self.arity().min(other.arity()))
            .rev()
            .find(|&k| self.0[k] != other.0[k])
    }
}

fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// Arity first, then `≻`. Lets multi-indices key ordered maps.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arity()
            .cmp(&other.arity())
            .then_with(|| revlex(&self.0, &other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// The `≻`-minimal element of a non-empty set of equal-arity indices.
pub fn minimum<'a, I>(indices: I) -> Option<&'a MultiIndex>
where
    I: IntoIterator<Item = &'a MultiIndex>,
{
    indices.into_iter().min_by(|a, b| revlex(&a.0, &b.0))
}
