use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groups::{orbits, OrbitPartition, PermutationSet};
use crate::limits::{pow2, Limits};
use crate::model::{
    fixes, tuple, Count, EquivalencePartition, MemberSpace, Object, Quantifier, QuantifierType, Relation, UnionFind,
};

/// True iff every generator of `h` fixes `x` (which suffices for `⟨h⟩`).
pub fn is_invariant(h: &PermutationSet, x: &Object) -> Result<bool> {
    for g in h.action_generators() {
        if !fixes(g, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First element of `h` that moves `x`, if any.
pub fn violating_element(h: &PermutationSet, x: &Object) -> Result<Option<crate::model::Permutation>> {
    for g in h.iter() {
        if !fixes(g, x)? {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

/// Orbits of a group on the candidate members of one quantifier type.
#[derive(Debug, Clone)]
pub struct MemberOrbits {
    space: MemberSpace,
    partition: EquivalencePartition,
}

impl MemberOrbits {
    pub fn new(h: &PermutationSet, qtype: &QuantifierType, limits: &Limits) -> Result<Self> {
        let n = h.degree();
        let space = MemberSpace::new(n, qtype, limits)?;
        let mut uf = UnionFind::new(space.count());
        for g in h.action_generators() {
            let tables: Vec<Vec<usize>> = qtype
                .slots()
                .iter()
                .map(|&i| tuple::pointwise_table(n, i, |x| g.apply(x)))
                .collect();
            for code in 0..space.count() as u64 {
                let slots: Vec<u64> = tables
                    .iter()
                    .enumerate()
                    .map(|(j, table)| {
                        let mask = space.slot_mask(code, j);
                        table
                            .iter()
                            .enumerate()
                            .filter(|&(c, _)| mask >> c & 1 == 1)
                            .fold(0u64, |acc, (_, &img)| acc | 1 << img)
                    })
                    .collect();
                uf.union(code as usize, space.compose(&slots) as usize);
            }
        }
        Ok(MemberOrbits {
            space,
            partition: uf.partition(),
        })
    }

    pub fn qtype(&self) -> &QuantifierType {
        self.space.qtype()
    }

    pub fn space(&self) -> &MemberSpace {
        &self.space
    }

    pub fn num_orbits(&self) -> usize {
        self.partition.num_blocks()
    }

    pub fn partition(&self) -> &EquivalencePartition {
        &self.partition
    }

    /// Orbit `i` as a quantifier.
    pub fn orbit(&self, i: usize) -> Quantifier {
        let mut q = Quantifier::new(self.space.size(), self.qtype().clone());
        for c in self.partition.members(i) {
            q.insert_unchecked(self.space.decode(c as u64));
        }
        q
    }

    pub fn orbits(&self) -> Vec<Quantifier> {
        (0..self.num_orbits()).map(|i| self.orbit(i)).collect()
    }

    pub fn is_union_of_orbits(&self, q: &Quantifier) -> bool {
        let mut hits: HashMap<usize, usize> = HashMap::new();
        for m in q.members() {
            *hits.entry(self.partition.block(self.space.encode(m) as usize)).or_default() += 1;
        }
        let sizes = self.orbit_sizes();
        hits.into_iter().all(|(b, count)| sizes[b] == count)
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_orbits()];
        for &b in self.partition.labels() {
            sizes[b] += 1;
        }
        sizes
    }
}

/// Everything invariant under a group, as orbit partitions.
///
/// An object is invariant iff it is a union of orbits, so there are exactly
/// `2^(orbit count)` invariant objects of each arity or type.
#[derive(Debug, Clone)]
pub struct InvariantFamily {
    group: PermutationSet,
    relation_orbits: Vec<OrbitPartition>,
    quantifier_orbits: Vec<MemberOrbits>,
}

/// Invariant relations of arity `0..=k_max` and invariant quantifiers of the given types.
pub fn inv(h: &PermutationSet, k_max: usize, qtypes: &[QuantifierType], limits: &Limits) -> Result<InvariantFamily> {
    let relation_orbits = (0..=k_max)
        .map(|k| orbits(h, k, limits))
        .collect::<Result<Vec<_>>>()?;
    let quantifier_orbits = qtypes
        .iter()
        .map(|t| MemberOrbits::new(h, t, limits))
        .collect::<Result<Vec<_>>>()?;
    Ok(InvariantFamily {
        group: h.clone(),
        relation_orbits,
        quantifier_orbits,
    })
}

impl InvariantFamily {
    pub fn group(&self) -> &PermutationSet {
        &self.group
    }

    pub fn k_max(&self) -> usize {
        self.relation_orbits.len() - 1
    }

    pub fn relation_orbits(&self, k: usize) -> Option<&OrbitPartition> {
        self.relation_orbits.get(k)
    }

    pub fn quantifier_orbits(&self, qtype: &QuantifierType) -> Option<&MemberOrbits> {
        self.quantifier_orbits.iter().find(|m| m.qtype() == qtype)
    }

    pub fn qtypes(&self) -> impl Iterator<Item = &QuantifierType> {
        self.quantifier_orbits.iter().map(MemberOrbits::qtype)
    }

    fn relation_part(&self, k: usize) -> Result<&OrbitPartition> {
        self.relation_orbits(k)
            .ok_or_else(|| Error::Precondition(format!("arity {k} exceeds the family bound {}", self.k_max())))
    }

    fn quantifier_part(&self, qtype: &QuantifierType) -> Result<&MemberOrbits> {
        self.quantifier_orbits(qtype)
            .ok_or_else(|| Error::Precondition(format!("quantifier type {qtype} was not requested")))
    }

    pub fn contains(&self, x: &Object) -> Result<bool> {
        if x.size() != self.group.degree() {
            return Err(Error::DomainMismatch {
                expected: self.group.degree(),
                found: x.size(),
            });
        }
        match x {
            Object::Relation(r) => Ok(self.relation_part(r.arity())?.is_union_of_orbits(r)),
            Object::Quantifier(q) => Ok(self.quantifier_part(q.qtype())?.is_union_of_orbits(q)),
        }
    }

    pub fn relation_count(&self, k: usize) -> Result<Count> {
        Ok(Count::pow2(self.relation_part(k)?.num_orbits()))
    }

    pub fn quantifier_count(&self, qtype: &QuantifierType) -> Result<Count> {
        Ok(Count::pow2(self.quantifier_part(qtype)?.num_orbits()))
    }

    /// All invariant relations of arity `k`, in counting order over orbit subsets.
    pub fn enumerate_relations(&self, k: usize, limits: &Limits) -> Result<Vec<Relation>> {
        let part = self.relation_part(k)?;
        let blocks = part.relations();
        limits.check_candidates("invariant relations", pow2(blocks.len()))?;
        let n = self.group.degree();
        Ok((0..1usize << blocks.len())
            .map(|subset| {
                (0..blocks.len())
                    .filter(|&b| subset >> b & 1 == 1)
                    .fold(Relation::empty(n, k), |acc, b| acc.union(&blocks[b]))
            })
            .collect())
    }

    /// All invariant quantifiers of a type, in counting order over orbit subsets.
    pub fn enumerate_quantifiers(&self, qtype: &QuantifierType, limits: &Limits) -> Result<Vec<Quantifier>> {
        let part = self.quantifier_part(qtype)?;
        let orbits = part.orbits();
        limits.check_candidates("invariant quantifiers", pow2(orbits.len()))?;
        let n = self.group.degree();
        Ok((0..1usize << orbits.len())
            .map(|subset| {
                let mut q = Quantifier::new(n, qtype.clone());
                for (b, orbit) in orbits.iter().enumerate() {
                    if subset >> b & 1 == 1 {
                        for m in orbit.members() {
                            q.insert_unchecked(m.clone());
                        }
                    }
                }
                q
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::symmetric;

    #[test]
    fn invariance_examples() {
        let l = Limits::default();
        let p: Object = Relation::unary(2, &[0]).unwrap().into();
        assert!(is_invariant(&PermutationSet::trivial(2), &p).unwrap());
        assert!(!is_invariant(&symmetric(2, &l).unwrap(), &p).unwrap());
        let pairs = Quantifier::monadic(3, &[&[0, 1], &[0, 2], &[1, 2]]).unwrap();
        assert!(is_invariant(&symmetric(3, &l).unwrap(), &pairs.into()).unwrap());
    }

    #[test]
    fn invariant_counts() {
        let l = Limits::default();
        let t1 = QuantifierType::monadic(1).unwrap();
        let f3 = inv(&symmetric(3, &l).unwrap(), 2, &[t1.clone()], &l).unwrap();
        assert_eq!(f3.relation_count(1).unwrap().value(), Some(2));
        assert_eq!(f3.relation_count(2).unwrap().value(), Some(4));
        assert_eq!(f3.quantifier_count(&t1).unwrap().value(), Some(16));
        let unary = f3.enumerate_relations(1, &l).unwrap();
        assert_eq!(unary, vec![Relation::empty(3, 1), Relation::full(3, 1)]);
        let f4 = inv(&symmetric(4, &l).unwrap(), 1, &[t1.clone()], &l).unwrap();
        assert_eq!(f4.quantifier_count(&t1).unwrap().value(), Some(32));
    }

    #[test]
    fn enumerated_quantifiers_are_invariant() {
        let l = Limits::default();
        let t1 = QuantifierType::monadic(1).unwrap();
        let s3 = symmetric(3, &l).unwrap();
        let f = inv(&s3, 1, &[t1.clone()], &l).unwrap();
        let all = f.enumerate_quantifiers(&t1, &l).unwrap();
        assert_eq!(all.len(), 16);
        for q in all {
            let obj = Object::from(q);
            assert!(f.contains(&obj).unwrap());
            assert!(is_invariant(&s3, &obj).unwrap());
        }
    }
}
