use std::collections::BTreeSet;

use super::quotient::{
    lift_permutation, lift_relation, lift_structure, quotient_quantifier, quotient_relation, quotient_similarity,
    quotient_structure,
};
use super::relation::{image_unchecked, invariant_under, Similarity};
use super::set::{approx_equiv, downward_closure, SimilaritySet};
use crate::duality::{aut, inv, InvariantFamily};
use crate::error::{Error, Result};
use crate::groups::{canonical_structure, generate, PermutationSet};
use crate::limits::{pow2, Limits};
use crate::logic::{default_arity_bound, definable_closure_eqfree};
use crate::model::{
    enumerate_relations, saturated, Count, EquivalencePartition, Object, Quantifier, QuantifierType, Relation, Structure,
};

/// How `∼` of a structure was computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimEquivReport {
    pub partition: EquivalencePartition,
    /// Arity bound of the definable closure whose induced equivalence was returned.
    pub arity_bound: usize,
    /// Whether one more coordinate left the equivalence unchanged.
    pub stable: bool,
    /// Whether binary definables alone induce the same equivalence.
    pub binary_agrees: bool,
}

/// `∼` from equality-free definability with parameters, raising the arity
/// bound until one more coordinate changes nothing or a guard stops it.
pub fn sim_equiv_report(s: &Structure, limits: &Limits) -> Result<SimEquivReport> {
    let mut bound = default_arity_bound(s);
    let mut family = definable_closure_eqfree(s, bound, true, limits)?;
    loop {
        let current = family.induced_equivalence(bound);
        let next = match definable_closure_eqfree(s, bound + 1, true, limits) {
            Ok(f) => f,
            Err(Error::ResourceLimit { .. }) => {
                return Ok(SimEquivReport {
                    binary_agrees: family.binary_equivalence() == current,
                    partition: current,
                    arity_bound: bound,
                    stable: false,
                })
            }
            Err(e) => return Err(e),
        };
        if next.induced_equivalence(bound + 1) == current {
            return Ok(SimEquivReport {
                binary_agrees: family.binary_equivalence() == current,
                partition: current,
                arity_bound: bound,
                stable: true,
            });
        }
        bound += 1;
        family = next;
    }
}

/// `a ∼ b` iff no equality-free formula with parameters tells `a` from `b`.
pub fn sim_equiv(s: &Structure, limits: &Limits) -> Result<EquivalencePartition> {
    Ok(sim_equiv_report(s, limits)?.partition)
}

/// The coarsest equivalence under which every relation of `s` is saturated:
/// `a` and `b` are identified iff swapping one for the other in any single
/// coordinate of any tuple never changes membership.
pub fn saturation_equivalence(s: &Structure) -> EquivalencePartition {
    let n = s.size();
    EquivalencePartition::from_keys((0..n).map(|a| {
        let mut key = Vec::new();
        for (_, r) in s.relations() {
            let k = r.arity();
            if k == 0 {
                continue;
            }
            for i in 0..k {
                let w = n.pow((k - 1 - i) as u32);
                for ctx in 0..n.pow(k as u32 - 1) {
                    let high = ctx / w;
                    let low = ctx % w;
                    key.push(r.contains_code(high * w * n + a * w + low));
                }
            }
        }
        key
    }))
}

fn saturated_relations(e: &EquivalencePartition, arity: usize, limits: &Limits) -> Result<Vec<Relation>> {
    enumerate_relations(e.num_blocks(), arity, limits)?
        .map(|r| lift_relation(&r, e))
        .collect()
}

/// Saturated `s` with `r p s`, for saturated `r`.
fn lift_partners(p: &Similarity, r: &Relation, e: &EquivalencePartition, limits: &Limits) -> Result<Vec<Relation>> {
    let lo = quotient_relation(&image_unchecked(p, r), e)?;
    let forbidden = quotient_relation(&image_unchecked(p, &r.complement()), e)?;
    if !lo.intersection(&forbidden).is_empty() {
        return Ok(Vec::new());
    }
    let free: Vec<usize> = lo.union(&forbidden).complement().codes().collect();
    limits.check_candidates("lift partners", pow2(free.len()))?;
    (0..1usize << free.len())
        .map(|subset| {
            let mut s = lo.clone();
            for (i, &c) in free.iter().enumerate() {
                if subset >> i & 1 == 1 {
                    s.insert_code(c);
                }
            }
            lift_relation(&s, e)
        })
        .collect()
}

/// Whether `q` is `e`-invariant under `p`: for all `e`-saturated `R̄`, `S̄`
/// with `R_j p S_j`, `R̄ ∈ q` iff `S̄ ∈ q`.
pub fn quantifier_sim_invariant(p: &Similarity, q: &Quantifier, e: &EquivalencePartition, limits: &Limits) -> Result<bool> {
    if p.size() != q.size() || e.len() != q.size() {
        return Err(Error::DomainMismatch {
            expected: q.size(),
            found: p.size(),
        });
    }
    let mut per_slot: Vec<Vec<(Relation, Relation)>> = Vec::new();
    for &i in q.qtype().slots() {
        let mut pairs = Vec::new();
        for r in saturated_relations(e, i, limits)? {
            for s in lift_partners(p, &r, e, limits)? {
                pairs.push((r.clone(), s));
            }
        }
        per_slot.push(pairs);
    }
    agrees_on_pairs(q, &per_slot, limits)
}

/// Whether `q` gives the same answer on both sides of every combination of
/// per-slot argument pairs.
fn agrees_on_pairs(q: &Quantifier, per_slot: &[Vec<(Relation, Relation)>], limits: &Limits) -> Result<bool> {
    let total: u128 = per_slot.iter().map(|v| v.len() as u128).product();
    limits.check_candidates("quantifier argument pairs", total)?;
    if per_slot.iter().any(|v| v.is_empty()) {
        return Ok(true);
    }
    let mut idx = vec![0usize; per_slot.len()];
    loop {
        let left: Vec<Relation> = idx.iter().enumerate().map(|(j, &k)| per_slot[j][k].0.clone()).collect();
        let right: Vec<Relation> = idx.iter().enumerate().map(|(j, &k)| per_slot[j][k].1.clone()).collect();
        if q.contains(&left) != q.contains(&right) {
            return Ok(false);
        }
        let mut j = 0;
        loop {
            if j == idx.len() {
                return Ok(true);
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

/// Whether `q` is invariant under `p` with no saturation restriction: for
/// all `R̄`, `S̄` with `R_j p S_j`, `R̄ ∈ q` iff `S̄ ∈ q`. Exposed for
/// experiments only; no law of the crate depends on it.
pub fn quantifier_sim_invariant_unrestricted(p: &Similarity, q: &Quantifier, limits: &Limits) -> Result<bool> {
    if p.size() != q.size() {
        return Err(Error::DomainMismatch {
            expected: q.size(),
            found: p.size(),
        });
    }
    let n = q.size();
    let mut per_slot: Vec<Vec<(Relation, Relation)>> = Vec::new();
    for &i in q.qtype().slots() {
        let mut pairs = Vec::new();
        for r in enumerate_relations(n, i, limits)? {
            let lo = image_unchecked(p, &r);
            let hi = image_unchecked(p, &r.complement()).complement();
            if !lo.is_subset(&hi) {
                continue;
            }
            let free: Vec<usize> = hi.codes().filter(|&c| !lo.contains_code(c)).collect();
            limits.check_candidates("lift partners", pow2(free.len()))?;
            for subset in 0..1usize << free.len() {
                let mut s = lo.clone();
                for (b, &c) in free.iter().enumerate() {
                    if subset >> b & 1 == 1 {
                        s.insert_code(c);
                    }
                }
                pairs.push((r.clone(), s));
            }
        }
        per_slot.push(pairs);
    }
    agrees_on_pairs(q, &per_slot, limits)
}

/// Every similarity under which each relation of `s` is invariant and each
/// quantifier is `∼`-invariant, computed from the automorphisms of `s/∼`:
/// the subsimilarities of `{(a, b) : f([a]) = [b]}` over `f ∈ Aut(s/∼)`.
pub fn sim(s: &Structure, limits: &Limits) -> Result<SimilaritySet> {
    let n = s.size();
    if n > super::MAX_SIMILARITY_SIZE {
        return Err(Error::limit("similarity domain size", n as u128, super::MAX_SIMILARITY_SIZE as u128));
    }
    limits.check_candidates("subsimilarities", pow2(n * n))?;
    let e = sim_equiv(s, limits)?;
    sim_with(s, &e, limits)
}

pub(crate) fn sim_with(s: &Structure, e: &EquivalencePartition, limits: &Limits) -> Result<SimilaritySet> {
    let q = quotient_structure(s, e)?;
    let group = aut(&q, limits)?;
    let tops = group
        .iter()
        .map(|f| lift_permutation(f, e))
        .collect::<Result<Vec<_>>>()?;
    Ok(downward_closure(&SimilaritySet::new(s.size(), tops)?))
}

/// The same set by testing every similarity on the domain against the definition.
pub fn sim_by_definition(s: &Structure, limits: &Limits) -> Result<SimilaritySet> {
    let n = s.size();
    if n > super::MAX_SIMILARITY_SIZE {
        return Err(Error::limit("similarity domain size", n as u128, super::MAX_SIMILARITY_SIZE as u128));
    }
    limits.check_candidates("similarity candidates", pow2(n * n))?;
    let e = sim_equiv(s, limits)?;
    let mut out = SimilaritySet::empty(n);
    'candidates: for p in Similarity::total(n)?.subsimilarities() {
        for (_, r) in s.relations() {
            if !invariant_under(&p, r)? {
                continue 'candidates;
            }
        }
        for (_, q) in s.quantifiers() {
            if !quantifier_sim_invariant(&p, q, &e, limits)? {
                continue 'candidates;
            }
        }
        out.insert(p)?;
    }
    Ok(out)
}

/// The members of `q` whose arguments are all `∼`-saturated.
pub fn restrict_quantifier(s: &Structure, q: &Quantifier, limits: &Limits) -> Result<Quantifier> {
    let e = sim_equiv(s, limits)?;
    restrict_quantifier_with(q, &e)
}

pub(crate) fn restrict_quantifier_with(q: &Quantifier, e: &EquivalencePartition) -> Result<Quantifier> {
    let mut out = Quantifier::new(q.size(), q.qtype().clone());
    for member in q.members() {
        let mut keep = true;
        for r in member {
            keep &= saturated(r, e)?;
        }
        if keep {
            out.insert_unchecked(member.clone());
        }
    }
    Ok(out)
}

/// The group `P/≈` on the blocks of `≈`.
fn block_group(p: &SimilaritySet, e: &EquivalencePartition, limits: &Limits) -> Result<PermutationSet> {
    let gens: BTreeSet<_> = p
        .iter()
        .flat_map(|pi| [*pi, pi.converse()])
        .map(|pi| quotient_similarity(&pi, e))
        .collect::<Result<_>>()?;
    generate(&PermutationSet::new(e.num_blocks(), gens)?, limits)
}

/// The objects invariant under a similarity set, represented on the blocks
/// of `≈` where they are the objects invariant under the permutation group
/// `P/≈`.
#[derive(Debug, Clone)]
pub struct InvSimFamily {
    size: usize,
    approx: EquivalencePartition,
    family: InvariantFamily,
}

impl InvSimFamily {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn approx(&self) -> &EquivalencePartition {
        &self.approx
    }

    pub fn block_group(&self) -> &PermutationSet {
        self.family.group()
    }

    pub fn quotient_family(&self) -> &InvariantFamily {
        &self.family
    }

    /// Relations must be saturated; quantifiers are judged on saturated arguments only.
    pub fn contains(&self, x: &Object) -> Result<bool> {
        match x {
            Object::Relation(r) => Ok(saturated(r, &self.approx)?
                && self.family.contains(&quotient_relation(r, &self.approx)?.into())?),
            Object::Quantifier(q) => self.family.contains(&quotient_quantifier(q, &self.approx)?.into()),
        }
    }

    pub fn relation_count(&self, k: usize) -> Result<Count> {
        self.family.relation_count(k)
    }

    pub fn enumerate_relations(&self, k: usize, limits: &Limits) -> Result<Vec<Relation>> {
        self.family
            .enumerate_relations(k, limits)?
            .iter()
            .map(|r| lift_relation(r, &self.approx))
            .collect()
    }

    /// The lifts `∪Q'` of the invariant quantifiers `Q'` on the blocks.
    pub fn enumerate_restricted_quantifiers(&self, qtype: &QuantifierType, limits: &Limits) -> Result<Vec<Quantifier>> {
        self.family
            .enumerate_quantifiers(qtype, limits)?
            .iter()
            .map(|q| super::quotient::lift_quantifier(q, &self.approx))
            .collect()
    }
}

pub fn inv_sim(p: &SimilaritySet, k_max: usize, qtypes: &[QuantifierType], limits: &Limits) -> Result<InvSimFamily> {
    let approx = approx_equiv(p, limits)?;
    let h = block_group(p, &approx, limits)?;
    Ok(InvSimFamily {
        size: p.size(),
        family: inv(&h, k_max, qtypes, limits)?,
        approx,
    })
}

/// Membership tested against every member of `p` directly.
pub fn inv_sim_contains_by_definition(p: &SimilaritySet, x: &Object, limits: &Limits) -> Result<bool> {
    let e = approx_equiv(p, limits)?;
    for pi in p.iter() {
        let ok = match x {
            Object::Relation(r) => invariant_under(pi, r)?,
            Object::Quantifier(q) => quantifier_sim_invariant(pi, q, &e, limits)?,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A structure on the domain of `p` whose definable relations are those
/// invariant under `p`: the lifted orbit relations of `P/≈`.
pub fn inv_sim_structure(p: &SimilaritySet, limits: &Limits) -> Result<Structure> {
    let approx = approx_equiv(p, limits)?;
    let h = block_group(p, &approx, limits)?;
    let m = approx.num_blocks();
    lift_structure(&canonical_structure(&h, m.max(2), limits)?, &approx)
}

/// `Sim(Inv(p))`, through the structure of lifted orbit relations.
pub fn sim_of_inv(p: &SimilaritySet, limits: &Limits) -> Result<SimilaritySet> {
    sim(&inv_sim_structure(p, limits)?, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Permutation;
    use crate::similarity::all_similarities;

    fn top_bottom(n: usize) -> Structure {
        Structure::empty(n)
            .unwrap()
            .with_relation("bot", Relation::empty(n, 1))
            .unwrap()
            .with_relation("top", Relation::full(n, 1))
            .unwrap()
    }

    fn even(n: usize) -> Structure {
        top_bottom(n)
            .with_quantifier("QE", Quantifier::monadic(n, &[&[0, 2]]).unwrap())
            .unwrap()
    }

    #[test]
    fn sim_equiv_examples() {
        let l = Limits::default();
        let eq = EquivalencePartition::discrete(3).to_relation();
        let s = Structure::empty(3).unwrap().with_relation("eq", eq).unwrap();
        assert!(sim_equiv(&s, &l).unwrap().is_equality());
        let s = Structure::empty(3)
            .unwrap()
            .with_relation("P", Relation::unary(3, &[0, 1]).unwrap())
            .unwrap();
        let report = sim_equiv_report(&s, &l).unwrap();
        assert_eq!(report.partition.blocks(), vec![vec![0, 1], vec![2]]);
        assert!(report.stable && report.binary_agrees);
        assert_eq!(sim_equiv(&even(4), &l).unwrap().num_blocks(), 1);
    }

    #[test]
    fn saturation_oracle_matches() {
        let l = Limits::default();
        let s = Structure::empty(3)
            .unwrap()
            .with_relation("E", Relation::from_tuples(3, 2, [[0, 2], [1, 2]]).unwrap())
            .unwrap();
        assert_eq!(saturation_equivalence(&s), sim_equiv(&s, &l).unwrap());
        assert_eq!(saturation_equivalence(&s).blocks(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn sim_examples() {
        let l = Limits::default();
        let eq = EquivalencePartition::discrete(3).to_relation();
        let s = Structure::empty(3)
            .unwrap()
            .with_relation("eq", eq)
            .unwrap()
            .with_relation("P", Relation::unary(3, &[0]).unwrap())
            .unwrap();
        let sims = sim(&s, &l).unwrap();
        let auts = aut(&s, &l).unwrap();
        assert_eq!(sims.len(), auts.len());
        for g in auts.iter() {
            assert!(sims.contains(&Similarity::from_permutation(g).unwrap()));
        }
        assert_eq!(sim(&top_bottom(2), &l).unwrap().len(), 7);
        let p = Structure::empty(3)
            .unwrap()
            .with_relation("P", Relation::unary(3, &[0, 1]).unwrap())
            .unwrap();
        let sims = sim(&p, &l).unwrap();
        assert_eq!(sims.len(), 7);
        assert_eq!(sims, sim_by_definition(&p, &l).unwrap());
        let e = sim_equiv(&p, &l).unwrap();
        let pi_id = lift_permutation(&Permutation::identity(2), &e).unwrap();
        assert!(sims.contains(&pi_id));
        assert!(quotient_similarity(&pi_id, &e).unwrap().is_identity());
    }

    #[test]
    fn sim_matches_definition_with_quantifier() {
        let l = Limits::default();
        let s = Structure::empty(3)
            .unwrap()
            .with_relation("P", Relation::unary(3, &[0]).unwrap())
            .unwrap()
            .with_quantifier("Q", Quantifier::monadic(3, &[&[0], &[1, 2]]).unwrap())
            .unwrap();
        assert_eq!(sim(&s, &l).unwrap(), sim_by_definition(&s, &l).unwrap());
    }

    #[test]
    fn inv_sim_examples() {
        let l = Limits::default();
        let t1 = QuantifierType::monadic(1).unwrap();
        let everything = all_similarities(3, &l).unwrap();
        let fam = inv_sim(&everything, 1, &[t1.clone()], &l).unwrap();
        assert_eq!(fam.relation_count(1).unwrap().value(), Some(2));
        let id = SimilaritySet::new(3, [Similarity::identity(3).unwrap()]).unwrap();
        let fam = inv_sim(&id, 2, &[t1.clone()], &l).unwrap();
        assert!(fam.contains(&Relation::unary(3, &[1]).unwrap().into()).unwrap());
        assert_eq!(fam.relation_count(2).unwrap().value(), Some(512));
        let sims = sim(&even(4), &l).unwrap();
        let fam = inv_sim(&sims, 1, &[t1], &l).unwrap();
        let odd = Quantifier::monadic(4, &[&[1, 3]]).unwrap();
        assert!(fam.contains(&odd.clone().into()).unwrap());
        assert!(inv_sim_contains_by_definition(&sims, &odd.into(), &l).unwrap());
    }

    #[test]
    fn restriction_examples() {
        let l = Limits::default();
        let q = Quantifier::monadic(4, &[&[0, 2]]).unwrap();
        assert!(restrict_quantifier(&even(4), &q, &l).unwrap().is_empty());
        let trivial = Quantifier::monadic(3, &[&[], &[0, 1, 2]]).unwrap();
        let p = Structure::empty(3)
            .unwrap()
            .with_relation("P", Relation::unary(3, &[0, 1]).unwrap())
            .unwrap();
        assert_eq!(restrict_quantifier(&p, &trivial, &l).unwrap(), trivial);
    }

    #[test]
    fn sim_of_inv_examples() {
        let l = Limits::default();
        let id = SimilaritySet::new(2, [Similarity::identity(2).unwrap()]).unwrap();
        assert_eq!(sim_of_inv(&id, &l).unwrap(), id);
        let total = SimilaritySet::new(2, [Similarity::total(2).unwrap()]).unwrap();
        assert_eq!(sim_of_inv(&total, &l).unwrap().len(), 7);
    }

    #[test]
    fn unrestricted_invariance_is_stricter() {
        let l = Limits::default();
        let qe = Quantifier::monadic(4, &[&[0, 2]]).unwrap();
        let total = Similarity::total(4).unwrap();
        let single = EquivalencePartition::single(4);
        assert!(quantifier_sim_invariant(&total, &qe, &single, &l).unwrap());
        assert!(quantifier_sim_invariant_unrestricted(&total, &qe, &l).unwrap());
        let swap = Similarity::from_permutation(&Permutation::from_cycles(4, &[&[0, 2]]).unwrap()).unwrap();
        assert!(quantifier_sim_invariant_unrestricted(&swap, &qe, &l).unwrap());
        let shift = Similarity::from_permutation(&Permutation::from_cycles(4, &[&[0, 1]]).unwrap()).unwrap();
        assert!(quantifier_sim_invariant(&shift, &qe, &single, &l).unwrap());
        assert!(!quantifier_sim_invariant_unrestricted(&shift, &qe, &l).unwrap());
    }
}
