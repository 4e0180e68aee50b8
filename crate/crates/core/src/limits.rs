//! Enumeration guards.
//!
//! Almost every computation in this crate is exhaustive, so each one checks
//! the size of the space it is about to walk against a [`Limits`] value
//! before starting. The defaults are sized for a laptop; callers that want to
//! run closer to the edge pass their own.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Largest tuple space `n^k` (or subset-sequence space) that may be walked.
    pub max_tuples: usize,
    /// Largest degree for which whole permutation groups are materialized.
    pub max_group_degree: usize,
    /// Largest domain on which the full similarity space `2^(n*n)` is walked.
    pub max_similarity_degree: usize,
    /// Largest candidate space for quantifier members and argument searches.
    pub max_candidates: usize,
    /// Largest number of clauses in a generated description formula.
    pub max_formula_clauses: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_tuples: 1 << 20,
            max_group_degree: 8,
            max_similarity_degree: 3,
            max_candidates: 1 << 20,
            max_formula_clauses: 1 << 16,
        }
    }
}

impl Limits {
    /// Default limits with the similarity space opened up to degree `n`.
    pub fn with_similarity_degree(mut self, n: usize) -> Self {
        self.max_similarity_degree = n;
        self
    }

    /// `n^k`, failing when it exceeds `max_tuples`.
    pub fn tuple_space(&self, n: usize, k: usize) -> Result<usize> {
        let size = checked_pow(n, k).filter(|&s| s <= self.max_tuples);
        size.ok_or_else(|| {
            Error::limit(
                "tuple space n^k",
                checked_pow(n, k).map_or(u128::MAX, |s| s as u128),
                self.max_tuples as u128,
            )
        })
    }

    pub fn check_group_degree(&self, n: usize) -> Result<()> {
        if n > self.max_group_degree {
            return Err(Error::limit(
                "permutation group degree",
                n as u128,
                self.max_group_degree as u128,
            ));
        }
        Ok(())
    }

    pub fn check_similarity_degree(&self, n: usize) -> Result<()> {
        if n > self.max_similarity_degree || n > 8 {
            return Err(Error::limit(
                "similarity space degree",
                n as u128,
                self.max_similarity_degree.min(8) as u128,
            ));
        }
        Ok(())
    }

    pub fn check_candidates(&self, what: &'static str, count: u128) -> Result<()> {
        if count > self.max_candidates as u128 {
            return Err(Error::limit(what, count, self.max_candidates as u128));
        }
        Ok(())
    }
}

pub(crate) fn checked_pow(n: usize, k: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..k {
        acc = acc.checked_mul(n)?;
    }
    Some(acc)
}

/// `2^bits` as u128, saturating.
pub(crate) fn pow2(bits: usize) -> u128 {
    if bits >= 128 {
        u128::MAX
    } else {
        1u128 << bits
    }
}
