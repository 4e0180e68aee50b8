//! Relations definable without equality, represented by their atoms.
//!
//! The definable `k`-ary relations form a finite boolean algebra, so each
//! arity is summarized by the partition of `Ω^k` into atoms. The closure
//! refines these partitions until they are stable under every way of
//! building a new definable relation from old ones.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::limits::{pow2, Limits};
use crate::model::{Count, EquivalencePartition, Quantifier, Relation, Structure};

/// The equality-free definable relations of arities `0..=A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefinableFamily {
    size: usize,
    with_params: bool,
    atoms: Vec<EquivalencePartition>,
}

/// Default arity bound: `max(3, largest relation arity, largest quantifier slot)`.
pub fn default_arity_bound(s: &Structure) -> usize {
    3.max(s.max_relation_arity()).max(s.max_slot_arity())
}

impl DefinableFamily {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn arity_bound(&self) -> usize {
        self.atoms.len() - 1
    }

    pub fn with_params(&self) -> bool {
        self.with_params
    }

    pub fn atom_partition(&self, k: usize) -> Option<&EquivalencePartition> {
        self.atoms.get(k)
    }

    fn part(&self, k: usize) -> Result<&EquivalencePartition> {
        self.atoms
            .get(k)
            .ok_or_else(|| Error::Precondition(format!("arity {k} exceeds the bound {}", self.arity_bound())))
    }

    /// The atoms of arity `k` as relations.
    pub fn atoms(&self, k: usize) -> Result<Vec<Relation>> {
        let p = self.part(k)?;
        Ok(p.blocks()
            .into_iter()
            .map(|b| Relation::from_codes(self.size, k, b))
            .collect())
    }

    pub fn contains(&self, r: &Relation) -> Result<bool> {
        if r.size() != self.size {
            return Err(Error::DomainMismatch {
                expected: self.size,
                found: r.size(),
            });
        }
        let p = self.part(r.arity())?;
        let mut state: Vec<Option<bool>> = vec![None; p.num_blocks()];
        for c in 0..p.len() {
            let inside = r.contains_code(c);
            match state[p.block(c)] {
                None => state[p.block(c)] = Some(inside),
                Some(s) if s != inside => return Ok(false),
                _ => {}
            }
        }
        Ok(true)
    }

    pub fn count(&self, k: usize) -> Result<Count> {
        Ok(Count::pow2(self.part(k)?.num_blocks()))
    }

    /// All definable relations of arity `k`, in counting order over atom subsets.
    pub fn enumerate(&self, k: usize, limits: &Limits) -> Result<Vec<Relation>> {
        let atoms = self.atoms(k)?;
        limits.check_candidates("definable relations", pow2(atoms.len()))?;
        Ok((0..1usize << atoms.len())
            .map(|subset| {
                (0..atoms.len())
                    .filter(|&b| subset >> b & 1 == 1)
                    .fold(Relation::empty(self.size, k), |acc, b| acc.union(&atoms[b]))
            })
            .collect())
    }

    /// `a ≡ b` iff `(a, c̄)` and `(b, c̄)` lie in the same atom for every
    /// arity `1 ≤ k ≤ max_k` and every `c̄`.
    pub fn induced_equivalence(&self, max_k: usize) -> EquivalencePartition {
        let n = self.size;
        let max_k = max_k.min(self.arity_bound());
        EquivalencePartition::from_keys((0..n).map(|a| {
            let mut key = Vec::new();
            for k in 1..=max_k {
                let rest = n.pow(k as u32 - 1);
                for c in 0..rest {
                    key.push(self.atoms[k].block(a * rest + c));
                }
            }
            key
        }))
    }

    /// The same test restricted to arities one and two.
    pub fn binary_equivalence(&self) -> EquivalencePartition {
        self.induced_equivalence(2)
    }
}

struct Closure<'a> {
    n: usize,
    atoms: Vec<EquivalencePartition>,
    quantifiers: Vec<&'a Quantifier>,
    with_params: bool,
    limits: &'a Limits,
}

impl Closure<'_> {
    fn bound(&self) -> usize {
        self.atoms.len() - 1
    }

    fn refine<K: Eq + std::hash::Hash>(&mut self, k: usize, key: impl Fn(usize) -> K) -> bool {
        let refined = self.atoms[k].refine_by(key);
        let changed = refined.num_blocks() != self.atoms[k].num_blocks();
        self.atoms[k] = refined;
        changed
    }

    fn swaps(&mut self) -> bool {
        let n = self.n;
        let mut changed = false;
        for k in 2..=self.bound() {
            for i in 0..k - 1 {
                let w = n.pow((k - 2 - i) as u32);
                let prev = self.atoms[k].clone();
                changed |= self.refine(k, |c| {
                    let a = c / (w * n) % n;
                    let b = c / w % n;
                    prev.block(c - a * w * n - b * w + b * w * n + a * w)
                });
            }
        }
        changed
    }

    fn cylinders(&mut self) -> bool {
        let n = self.n;
        let mut changed = false;
        for k in 1..=self.bound() {
            let lower = self.atoms[k - 1].clone();
            changed |= self.refine(k, |c| lower.block(c / n));
        }
        changed
    }

    fn identifications(&mut self) -> bool {
        let n = self.n;
        let mut changed = false;
        for k in 1..self.bound() {
            let upper = self.atoms[k + 1].clone();
            changed |= self.refine(k, |c| upper.block(c * n + c % n));
        }
        changed
    }

    fn projections(&mut self) -> bool {
        let n = self.n;
        let params = self.with_params;
        let mut changed = false;
        for k in 0..self.bound() {
            let upper = self.atoms[k + 1].clone();
            if params {
                changed |= self.refine(k, |c| (0..n).map(|a| upper.block(c * n + a)).collect::<Vec<_>>());
            } else {
                changed |= self.refine(k, |c| (0..n).map(|a| upper.block(c * n + a)).collect::<BTreeSet<_>>());
            }
        }
        changed
    }

    /// Splits `z̄` from `z̄'` when some definable slot arguments, taken as
    /// fibers over `z̄` and `z̄'`, land inside and outside a quantifier.
    fn quantifier_splits(&mut self) -> Result<bool> {
        let mut changed = false;
        for qi in 0..self.quantifiers.len() {
            let q = self.quantifiers[qi];
            if q.is_empty() {
                continue;
            }
            let slots = q.qtype().slots().to_vec();
            let widest = *slots.iter().max().expect("non-empty type");
            for i in &slots {
                if self.n.pow(*i as u32) > 64 {
                    return Err(Error::limit("quantifier slot fiber", self.n.pow(*i as u32) as u128, 64u128));
                }
            }
            let members: HashSet<Vec<u64>> = q
                .members()
                .map(|m| m.iter().map(|r| r.mask().expect("checked width")).collect())
                .collect();
            for r in 0..=self.bound().saturating_sub(widest) {
                if widest + r > self.bound() {
                    continue;
                }
                changed |= self.split_parameters(&slots, &members, r)?;
            }
        }
        Ok(changed)
    }

    fn split_parameters(&mut self, slots: &[usize], members: &HashSet<Vec<u64>>, r: usize) -> Result<bool> {
        let n = self.n;
        let zs = n.pow(r as u32);
        let part = self.atoms[r].clone();
        let mut labels: Vec<usize> = vec![usize::MAX; zs];
        let mut next = 0;
        for block in part.blocks() {
            let mut reps: Vec<(usize, usize)> = Vec::new();
            for &z in &block {
                let mut found = None;
                for &(rep, label) in &reps {
                    if !self.distinguishable(slots, members, r, rep, z)? {
                        found = Some(label);
                        break;
                    }
                }
                let label = match found {
                    Some(l) => l,
                    None => {
                        reps.push((z, next));
                        next += 1;
                        next - 1
                    }
                };
                labels[z] = label;
            }
        }
        let refined = EquivalencePartition::from_labels(&labels);
        let changed = refined.num_blocks() != part.num_blocks();
        self.atoms[r] = refined;
        Ok(changed)
    }

    /// Pairs of fibers `(X[z], X[z'])` over all definable `X ⊆ Ω^{i+r}`,
    /// with the bound coordinates first.
    fn fiber_pairs(&self, i: usize, r: usize, z: usize, z2: usize) -> Result<Vec<(u64, u64)>> {
        let n = self.n;
        let width = n.pow(i as u32);
        let zs = n.pow(r as u32);
        let part = &self.atoms[i + r];
        let mut relevant: Vec<usize> = Vec::new();
        let mut per_y: Vec<(usize, usize)> = Vec::with_capacity(width);
        for y in 0..width {
            let a = part.block(y * zs + z);
            let b = part.block(y * zs + z2);
            for x in [a, b] {
                if !relevant.contains(&x) {
                    relevant.push(x);
                }
            }
            per_y.push((a, b));
        }
        self.limits.check_candidates("definable slot arguments", pow2(relevant.len()))?;
        let mut pairs: BTreeSet<(u64, u64)> = BTreeSet::new();
        for subset in 0..1u64 << relevant.len() {
            let chosen = |atom: usize| subset >> relevant.iter().position(|&x| x == atom).unwrap() & 1 == 1;
            let mut fa = 0u64;
            let mut fb = 0u64;
            for (y, &(a, b)) in per_y.iter().enumerate() {
                if chosen(a) {
                    fa |= 1 << y;
                }
                if chosen(b) {
                    fb |= 1 << y;
                }
            }
            pairs.insert((fa, fb));
        }
        Ok(pairs.into_iter().collect())
    }

    fn distinguishable(&self, slots: &[usize], members: &HashSet<Vec<u64>>, r: usize, z: usize, z2: usize) -> Result<bool> {
        let per_slot = slots
            .iter()
            .map(|&i| self.fiber_pairs(i, r, z, z2))
            .collect::<Result<Vec<_>>>()?;
        let total: u128 = per_slot.iter().map(|p| p.len() as u128).product();
        self.limits.check_candidates("quantifier argument combinations", total)?;
        let mut idx = vec![0usize; slots.len()];
        loop {
            let left: Vec<u64> = idx.iter().enumerate().map(|(j, &k)| per_slot[j][k].0).collect();
            let right: Vec<u64> = idx.iter().enumerate().map(|(j, &k)| per_slot[j][k].1).collect();
            if members.contains(&left) != members.contains(&right) {
                return Ok(true);
            }
            let mut j = 0;
            loop {
                if j == idx.len() {
                    return Ok(false);
                }
                idx[j] += 1;
                if idx[j] < per_slot[j].len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
        }
    }
}

/// The least family of equality-free definable relations of arity at most
/// `arity_bound` over `s`: closed under boolean operations, permuting,
/// identifying and adding coordinates, existential projection and
/// quantifier application, and (with `with_params`) pinning a coordinate to
/// a domain element.
pub fn definable_closure_eqfree(
    s: &Structure,
    arity_bound: usize,
    with_params: bool,
    limits: &Limits,
) -> Result<DefinableFamily> {
    let n = s.size();
    if arity_bound < s.max_relation_arity() || arity_bound < s.max_slot_arity() {
        return Err(Error::Precondition(format!(
            "arity bound {arity_bound} is below the signature's arity {}",
            s.max_relation_arity().max(s.max_slot_arity())
        )));
    }
    limits.tuple_space(n, arity_bound)?;
    let mut atoms: Vec<EquivalencePartition> = (0..=arity_bound)
        .map(|k| EquivalencePartition::single(n.pow(k as u32)))
        .collect();
    for (_, r) in s.relations() {
        let k = r.arity();
        atoms[k] = atoms[k].refine_by(|c| r.contains_code(c));
    }
    let mut closure = Closure {
        n,
        atoms,
        quantifiers: s.quantifiers().map(|(_, q)| q).collect(),
        with_params,
        limits,
    };
    loop {
        let mut changed = false;
        changed |= closure.swaps();
        changed |= closure.cylinders();
        changed |= closure.identifications();
        changed |= closure.projections();
        if !changed {
            changed |= closure.quantifier_splits()?;
        }
        if !changed {
            break;
        }
    }
    Ok(DefinableFamily {
        size: n,
        with_params,
        atoms: closure.atoms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn top_bottom(n: usize) -> Structure {
        Structure::empty(n)
            .unwrap()
            .with_relation("top", Relation::full(n, 1))
            .unwrap()
            .with_relation("bot", Relation::empty(n, 1))
            .unwrap()
    }

    #[test]
    fn trivial_structure_defines_only_empty_and_full() {
        let l = Limits::default();
        let f = definable_closure_eqfree(&top_bottom(3), 3, true, &l).unwrap();
        for k in 0..=3 {
            assert_eq!(f.count(k).unwrap().value(), Some(2));
        }
    }

    #[test]
    fn unary_predicate_example() {
        let l = Limits::default();
        let s = Structure::empty(3)
            .unwrap()
            .with_relation("P", Relation::unary(3, &[0, 1]).unwrap())
            .unwrap();
        let f = definable_closure_eqfree(&s, 2, false, &l).unwrap();
        let unary = f.enumerate(1, &l).unwrap();
        assert_eq!(
            unary,
            vec![
                Relation::empty(3, 1),
                Relation::unary(3, &[0, 1]).unwrap(),
                Relation::unary(3, &[2]).unwrap(),
                Relation::full(3, 1),
            ]
        );
        assert_eq!(f.induced_equivalence(2).blocks(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn even_quantifier_adds_no_unary_definables() {
        let l = Limits::default();
        let s = top_bottom(4)
            .with_quantifier("QE", Quantifier::monadic(4, &[&[0, 2]]).unwrap())
            .unwrap();
        let f = definable_closure_eqfree(&s, 3, true, &l).unwrap();
        assert_eq!(f.enumerate(1, &l).unwrap(), vec![Relation::empty(4, 1), Relation::full(4, 1)]);
        assert_eq!(f.induced_equivalence(3).num_blocks(), 1);
    }

    #[test]
    fn quantifier_can_split_sentences() {
        let l = Limits::default();
        let s = Structure::empty(2)
            .unwrap()
            .with_relation("P", Relation::unary(2, &[0]).unwrap())
            .unwrap()
            .with_quantifier("Q", Quantifier::monadic(2, &[&[0]]).unwrap())
            .unwrap();
        let f = definable_closure_eqfree(&s, 2, false, &l).unwrap();
        assert!(f.contains(&Relation::unary(2, &[0]).unwrap()).unwrap());
        assert_eq!(f.count(0).unwrap().value(), Some(2));
    }

    #[test]
    fn binary_relations_generate_more() {
        let l = Limits::default();
        let e = Relation::from_tuples(3, 2, [[0, 1], [1, 2], [2, 0]]).unwrap();
        let s = Structure::empty(3).unwrap().with_relation("E", e.clone()).unwrap();
        let f = definable_closure_eqfree(&s, 3, true, &l).unwrap();
        assert!(f.contains(&e).unwrap());
        let converse = Relation::from_tuples(3, 2, [[1, 0], [2, 1], [0, 2]]).unwrap();
        assert!(f.contains(&converse).unwrap());
        assert!(f.induced_equivalence(3).is_equality());
    }
}
