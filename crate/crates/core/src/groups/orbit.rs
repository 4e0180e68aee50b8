use super::set::PermutationSet;
use crate::error::Result;
use crate::limits::Limits;
use crate::model::{tuple, EquivalencePartition, Relation, UnionFind};

/// Orbits of a permutation group on `Ω^k`, indexed by tuple code.
///
/// Orbit indices follow the order of their least tuple code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    size: usize,
    arity: usize,
    partition: EquivalencePartition,
}

impl OrbitPartition {
    pub(crate) fn new(size: usize, arity: usize, partition: EquivalencePartition) -> Self {
        OrbitPartition { size, arity, partition }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn num_orbits(&self) -> usize {
        self.partition.num_blocks()
    }

    pub fn partition(&self) -> &EquivalencePartition {
        &self.partition
    }

    #[inline]
    pub fn orbit_of_code(&self, code: usize) -> usize {
        self.partition.block(code)
    }

    pub fn orbit_of(&self, t: &[usize]) -> usize {
        self.partition.block(tuple::encode(self.size, t))
    }

    /// Orbit `i` as a relation.
    pub fn orbit(&self, i: usize) -> Relation {
        Relation::from_codes(self.size, self.arity, self.partition.members(i))
    }

    /// All orbits as relations, in index order.
    pub fn relations(&self) -> Vec<Relation> {
        let mut codes = vec![Vec::new(); self.num_orbits()];
        for (c, &b) in self.partition.labels().iter().enumerate() {
            codes[b].push(c);
        }
        codes
            .into_iter()
            .map(|cs| Relation::from_codes(self.size, self.arity, cs))
            .collect()
    }

    /// True iff `r` is a union of orbits.
    pub fn is_union_of_orbits(&self, r: &Relation) -> bool {
        let mut state: Vec<Option<bool>> = vec![None; self.num_orbits()];
        for c in 0..self.partition.len() {
            let b = self.partition.block(c);
            let inside = r.contains_code(c);
            match state[b] {
                None => state[b] = Some(inside),
                Some(s) if s != inside => return false,
                _ => {}
            }
        }
        true
    }
}

/// Orbits of `⟨H⟩` on `Ω^k`; only the generators (or elements) of `H` are used.
pub fn orbits(h: &PermutationSet, k: usize, limits: &Limits) -> Result<OrbitPartition> {
    let n = h.degree();
    let space = limits.tuple_space(n, k)?;
    let mut uf = UnionFind::new(space);
    for g in h.action_generators() {
        let table = tuple::pointwise_table(n, k, |x| g.apply(x));
        for (c, &img) in table.iter().enumerate() {
            uf.union(c, img);
        }
    }
    Ok(OrbitPartition::new(n, k, uf.partition()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic, symmetric};

    #[test]
    fn orbit_examples() {
        let l = Limits::default();
        let id = PermutationSet::trivial(2);
        assert_eq!(orbits(&id, 1, &l).unwrap().num_orbits(), 2);
        assert_eq!(orbits(&symmetric(3, &l).unwrap(), 1, &l).unwrap().num_orbits(), 1);
        let c3 = cyclic(3, &l).unwrap();
        let o = orbits(&c3, 2, &l).unwrap();
        assert_eq!(o.num_orbits(), 3);
        assert_eq!(
            o.orbit(0),
            Relation::from_tuples(3, 2, [[0, 0], [1, 1], [2, 2]]).unwrap()
        );
        assert_eq!(
            o.orbit(1),
            Relation::from_tuples(3, 2, [[0, 1], [1, 2], [2, 0]]).unwrap()
        );
        assert_eq!(
            o.orbit(2),
            Relation::from_tuples(3, 2, [[0, 2], [1, 0], [2, 1]]).unwrap()
        );
    }
}
