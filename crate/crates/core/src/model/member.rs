use std::fmt;

use super::quantifier::{Quantifier, QuantifierType};
use super::relation::Relation;
use crate::error::{Error, Result};
use crate::limits::{checked_pow, pow2, Limits};

/// Codes for the candidate members of a quantifier type: slot `j`'s
/// characteristic bits occupy `n^{i_j}` consecutive bits, slot 0 lowest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberSpace {
    size: usize,
    qtype: QuantifierType,
    widths: Vec<usize>,
    offsets: Vec<usize>,
    bits: usize,
}

impl MemberSpace {
    pub fn new(size: usize, qtype: &QuantifierType, limits: &Limits) -> Result<Self> {
        let mut widths = Vec::new();
        let mut offsets = Vec::new();
        let mut bits = 0usize;
        for &i in qtype.slots() {
            let w = checked_pow(size, i).filter(|&w| w <= 64).ok_or_else(|| {
                Error::limit("quantifier slot tuple space", checked_pow(size, i).unwrap_or(usize::MAX) as u128, 64u128)
            })?;
            offsets.push(bits);
            widths.push(w);
            bits += w;
        }
        if bits >= 64 {
            return Err(Error::limit("quantifier member bits", bits as u128, 63u128));
        }
        limits.check_candidates("quantifier member space", pow2(bits))?;
        Ok(MemberSpace {
            size,
            qtype: qtype.clone(),
            widths,
            offsets,
            bits,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn qtype(&self) -> &QuantifierType {
        &self.qtype
    }

    /// Number of candidate members, `2^(Σ n^{i_j})`.
    pub fn count(&self) -> usize {
        1usize << self.bits
    }

    pub fn slot_width(&self, j: usize) -> usize {
        self.widths[j]
    }

    pub fn encode(&self, member: &[Relation]) -> u64 {
        member
            .iter()
            .zip(&self.offsets)
            .map(|(r, &off)| r.mask().expect("slot fits in 64 bits") << off)
            .fold(0, |acc, m| acc | m)
    }

    pub fn slot_mask(&self, code: u64, j: usize) -> u64 {
        let w = self.widths[j];
        let mask = if w == 64 { u64::MAX } else { (1u64 << w) - 1 };
        code >> self.offsets[j] & mask
    }

    pub fn decode(&self, code: u64) -> Vec<Relation> {
        self.qtype
            .slots()
            .iter()
            .enumerate()
            .map(|(j, &i)| Relation::from_mask(self.size, i, self.slot_mask(code, j)))
            .collect()
    }

    pub fn compose(&self, slots: &[u64]) -> u64 {
        slots
            .iter()
            .zip(&self.offsets)
            .fold(0, |acc, (&m, &off)| acc | m << off)
    }

    /// Every candidate member, in code order.
    pub fn members(&self) -> impl Iterator<Item = Vec<Relation>> + '_ {
        (0..self.count() as u64).map(|c| self.decode(c))
    }
}

/// A power of two, reported exactly when it fits in 128 bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Count {
    pub log2: usize,
}

impl Count {
    pub fn pow2(log2: usize) -> Self {
        Count { log2 }
    }

    pub fn value(self) -> Option<u128> {
        (self.log2 < 128).then(|| 1u128 << self.log2)
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "2^{}", self.log2),
        }
    }
}

/// Every quantifier of a type on a domain of `size` elements, ordered by the
/// bit pattern of their member sets.
pub fn enumerate_quantifiers(size: usize, qtype: &QuantifierType, limits: &Limits) -> Result<Vec<Quantifier>> {
    let space = MemberSpace::new(size, qtype, limits)?;
    let members: Vec<Vec<Relation>> = space.members().collect();
    if members.len() >= 64 {
        return Err(Error::limit("quantifiers of a type", pow2(members.len()), limits.max_candidates as u128));
    }
    limits.check_candidates("quantifiers of a type", pow2(members.len()))?;
    (0..1u64 << members.len())
        .map(|subset| {
            Quantifier::from_members(
                size,
                qtype.clone(),
                (0..members.len()).filter(|&i| subset >> i & 1 == 1).map(|i| members[i].clone()),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_round_trip() {
        let t = QuantifierType::new(vec![1, 2]).unwrap();
        let space = MemberSpace::new(2, &t, &Limits::default()).unwrap();
        assert_eq!(space.count(), 64);
        for c in 0..64u64 {
            assert_eq!(space.encode(&space.decode(c)), c);
        }
    }

    #[test]
    fn counts_render() {
        assert_eq!(Count::pow2(4).to_string(), "16");
        assert_eq!(Count::pow2(200).to_string(), "2^200");
    }
}
