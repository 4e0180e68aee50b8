use std::fmt;

use super::bits::Bits;
use super::tuple;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A `k`-ary relation on a domain of size `n`, stored as the characteristic
/// bitset of its tuple codes (length `n^k`).
///
/// Arity 0 is allowed: the relation is then one of the two truth values.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    size: usize,
    arity: usize,
    bits: Bits,
}

/// Hard ceiling on the bitset length of a single relation.
const MAX_RELATION_BITS: usize = 1 << 28;

fn space(size: usize, arity: usize) -> usize {
    match crate::limits::checked_pow(size, arity) {
        Some(s) if s <= MAX_RELATION_BITS => s,
        _ => panic!("relation of arity {arity} over {size} elements is too large to store"),
    }
}

impl Relation {
    /// The empty relation. Panics if `size^arity` exceeds 2^28.
    pub fn empty(size: usize, arity: usize) -> Self {
        Relation {
            size,
            arity,
            bits: Bits::new(space(size, arity)),
        }
    }

    pub fn full(size: usize, arity: usize) -> Self {
        Relation {
            size,
            arity,
            bits: Bits::full(space(size, arity)),
        }
    }

    /// Arity-0 relation standing for a truth value.
    pub fn truth(size: usize, value: bool) -> Self {
        if value {
            Relation::full(size, 0)
        } else {
            Relation::empty(size, 0)
        }
    }

    /// Checked constructor used for user-supplied data.
    pub fn from_tuples<T: AsRef<[usize]>>(
        size: usize,
        arity: usize,
        tuples: impl IntoIterator<Item = T>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::Invalid("domain size must be at least 1".into()));
        }
        Limits {
            max_tuples: MAX_RELATION_BITS,
            ..Limits::default()
        }
        .tuple_space(size, arity)?;
        let mut r = Relation::empty(size, arity);
        for t in tuples {
            let t = t.as_ref();
            if t.len() != arity {
                return Err(Error::ArityMismatch {
                    name: "tuple".into(),
                    expected: arity,
                    found: t.len(),
                });
            }
            if let Some(&bad) = t.iter().find(|&&x| x >= size) {
                return Err(Error::OutOfDomain { element: bad, size });
            }
            r.insert_code(tuple::encode(size, t));
        }
        Ok(r)
    }

    /// Unary relation from a set of elements.
    pub fn unary(size: usize, elements: &[usize]) -> Result<Self> {
        Relation::from_tuples(size, 1, elements.iter().map(|&a| [a]))
    }

    pub fn from_codes(size: usize, arity: usize, codes: impl IntoIterator<Item = usize>) -> Self {
        let mut r = Relation::empty(size, arity);
        for c in codes {
            r.insert_code(c);
        }
        r
    }

    pub(crate) fn from_bits(size: usize, arity: usize, bits: Bits) -> Self {
        debug_assert_eq!(bits.len(), space(size, arity));
        Relation { size, arity, bits }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of tuples in the relation.
    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.none()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.bits.len()
    }

    /// Size of the ambient tuple space `n^k`.
    pub fn space_len(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn contains_code(&self, code: usize) -> bool {
        self.bits.get(code)
    }

    pub fn contains(&self, t: &[usize]) -> bool {
        t.len() == self.arity && t.iter().all(|&x| x < self.size) && self.bits.get(tuple::encode(self.size, t))
    }

    #[inline]
    pub fn insert_code(&mut self, code: usize) {
        self.bits.set(code, true);
    }

    pub fn insert(&mut self, t: &[usize]) -> Result<()> {
        if t.len() != self.arity {
            return Err(Error::ArityMismatch {
                name: "tuple".into(),
                expected: self.arity,
                found: t.len(),
            });
        }
        if let Some(&bad) = t.iter().find(|&&x| x >= self.size) {
            return Err(Error::OutOfDomain {
                element: bad,
                size: self.size,
            });
        }
        self.insert_code(tuple::encode(self.size, t));
        Ok(())
    }

    pub fn codes(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ones()
    }

    /// Tuples in lexicographic order.
    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.codes().map(|c| tuple::decode(self.size, self.arity, c))
    }

    pub fn complement(&self) -> Relation {
        Relation {
            size: self.size,
            arity: self.arity,
            bits: self.bits.not(),
        }
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        assert_eq!((self.size, self.arity), (other.size, other.arity));
        Relation {
            size: self.size,
            arity: self.arity,
            bits: self.bits.and(&other.bits),
        }
    }

    pub fn union(&self, other: &Relation) -> Relation {
        assert_eq!((self.size, self.arity), (other.size, other.arity));
        Relation {
            size: self.size,
            arity: self.arity,
            bits: self.bits.or(&other.bits),
        }
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.intersection(other) == *self
    }

    /// Bitmask of the relation when `n^k ≤ 64`.
    pub fn mask(&self) -> Option<u64> {
        (self.bits.len() <= 64).then(|| self.bits.low_word())
    }

    pub fn from_mask(size: usize, arity: usize, mask: u64) -> Self {
        Relation::from_bits(size, arity, Bits::from_low_word(space(size, arity), mask))
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .tuples()
            .map(|t| {
                let inner: Vec<String> = t.iter().map(|x| x.to_string()).collect();
                format!("({})", inner.join(","))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation/{}{}", self.arity, self)
    }
}

/// Lazy stream of all `2^(n^k)` relations of arity `k`, in counting order of
/// their characteristic bitsets (tuple code 0 is the least significant bit).
pub struct RelationIter {
    size: usize,
    arity: usize,
    current: Option<Bits>,
}

impl Iterator for RelationIter {
    type Item = Relation;

    fn next(&mut self) -> Option<Relation> {
        let bits = self.current.take()?;
        let mut next = bits.clone();
        if next.increment() {
            self.current = Some(next);
        }
        Some(Relation::from_bits(self.size, self.arity, bits))
    }
}

/// Enumerates every relation of arity `k` on a domain of size `n`.
pub fn enumerate_relations(size: usize, arity: usize, limits: &Limits) -> Result<RelationIter> {
    let space = limits.tuple_space(size, arity)?;
    Ok(RelationIter {
        size,
        arity,
        current: Some(Bits::new(space)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        let l = Limits::default();
        let all: Vec<_> = enumerate_relations(1, 1, &l).unwrap().collect();
        assert_eq!(all.len(), 2);
        assert!(all[0].is_empty());
        assert_eq!(all[1], Relation::unary(1, &[0]).unwrap());
        assert_eq!(enumerate_relations(2, 1, &l).unwrap().count(), 4);
        assert_eq!(enumerate_relations(2, 2, &l).unwrap().count(), 16);
        assert_eq!(enumerate_relations(1, 0, &l).unwrap().count(), 2);
    }

    #[test]
    fn enumeration_guard_names_the_bound() {
        let l = Limits {
            max_tuples: 8,
            ..Limits::default()
        };
        match enumerate_relations(3, 2, &l) {
            Err(Error::ResourceLimit { bound, requested, .. }) => {
                assert_eq!(bound, 8);
                assert_eq!(requested, 9);
            }
            Err(other) => panic!("unexpected error {other}"),
            Ok(_) => panic!("guard not enforced"),
        }
    }

    #[test]
    fn from_tuples_validates() {
        assert!(Relation::from_tuples(2, 2, [[0, 2]]).is_err());
        assert!(Relation::from_tuples(2, 2, [vec![0]]).is_err());
        let r = Relation::from_tuples(3, 2, [[0, 1], [1, 2]]).unwrap();
        assert_eq!(r.tuples().collect::<Vec<_>>(), vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(r.to_string(), "{(0,1),(1,2)}");
    }

    #[test]
    fn truth_values() {
        assert!(Relation::truth(3, true).contains(&[]));
        assert!(!Relation::truth(3, false).contains(&[]));
    }
}
