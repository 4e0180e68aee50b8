//! Executable checks of the equality-free correspondence.

use super::quotient::{lift_quantifier, lift_relation, quotient_quantifier, quotient_similarity, quotient_structure};
use super::relation::{image, invariant_under, lift_holds};
use super::set::{approx_equiv, full_monoid_closure, SimilaritySet};
use super::sim::{
    inv_sim_structure, quantifier_sim_invariant, restrict_quantifier_with, saturation_equivalence, sim_by_definition,
    sim_equiv_report, sim_of_inv, sim_with,
};
use crate::duality::{aut, is_invariant};
use crate::error::Result;
use crate::groups::PermutationSet;
use crate::limits::Limits;
use crate::logic::define::definable_without_equality;
use crate::logic::{accepted_object, default_arity_bound, definable_closure_eqfree, with_similarity_symbol};
use crate::model::{
    enumerate_quantifiers, enumerate_relations, saturated, EquivalencePartition, MemberSpace, Object, Quantifier, QuantifierType, Structure,
};
use crate::report::LawOutcome;

fn fmt_blocks(e: &EquivalencePartition) -> String {
    let blocks: Vec<String> = e
        .blocks()
        .into_iter()
        .map(|b| {
            let parts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    blocks.join(" ")
}

/// Arities whose full relation space is small enough to sweep.
fn sweep_arities(n: usize, up_to: usize) -> Vec<usize> {
    (1..=up_to).filter(|&k| n.pow(k as u32) <= 16).collect()
}

/// Type-(1) quantifiers to sweep: all of them on small domains, otherwise the
/// structure's own monadic quantifiers, their complements, and the lifts of
/// the quantifiers invariant on the quotient.
fn sweep_quantifiers(s: &Structure, e: &EquivalencePartition, limits: &Limits) -> Result<Vec<Quantifier>> {
    let n = s.size();
    let t1 = QuantifierType::monadic(1)?;
    let space = MemberSpace::new(n, &t1, limits)?;
    let members: Vec<_> = space.members().collect();
    if members.len() <= 8 {
        return enumerate_quantifiers(n, &t1, limits);
    }
    let mut out: Vec<Quantifier> = Vec::new();
    for (_, q) in s.quantifiers() {
        if q.qtype() == &t1 {
            out.push(q.clone());
            let complement = members.iter().filter(|m| !q.contains(m)).cloned();
            out.push(Quantifier::from_members(n, t1.clone(), complement)?);
        }
    }
    let qs = quotient_structure(s, e)?;
    let group = aut(&qs, limits)?;
    let family = crate::duality::inv(&group, 0, std::slice::from_ref(&t1), limits)?;
    for q in family.enumerate_quantifiers(&t1, limits)? {
        out.push(lift_quantifier(&q, e)?);
    }
    Ok(out)
}

/// Definable relations (with parameters) are exactly the `∼`-saturated ones,
/// and the restriction of a quantifier to definable arguments is `∪(Q/∼)`.
pub fn check_respect(s: &Structure, extra: &[Quantifier], limits: &Limits) -> Result<LawOutcome> {
    let report = sim_equiv_report(s, limits)?;
    let e = &report.partition;
    let bound = default_arity_bound(s);
    let family = definable_closure_eqfree(s, bound, true, limits)?;
    let mut checked = 0usize;
    let mut first = LawOutcome::new("respect.1", true);
    'arity: for k in sweep_arities(s.size(), bound) {
        for r in enumerate_relations(s.size(), k, limits)? {
            checked += 1;
            let definable = family.contains(&r)?;
            if definable != saturated(&r, e)? {
                first = LawOutcome::new("respect.1", false)
                    .counterexample(format!("{r}: definable={definable}, saturated={}", !definable));
                break 'arity;
            }
        }
    }
    first = first.detail("relations", checked);
    let mut second = LawOutcome::new("respect.2", true);
    let quantifiers: Vec<Quantifier> = s.quantifiers().map(|(_, q)| q.clone()).chain(extra.iter().cloned()).collect();
    for q in &quantifiers {
        let mut by_definability = Quantifier::new(q.size(), q.qtype().clone());
        for member in q.members() {
            let mut all = true;
            for r in member {
                all &= family.contains(r)?;
            }
            if all {
                by_definability.insert(member.clone())?;
            }
        }
        let by_quotient = lift_quantifier(&quotient_quantifier(q, e)?, e)?;
        if by_definability != by_quotient {
            second = LawOutcome::new("respect.2", false)
                .counterexample(format!("{q}: definable part {by_definability}, lifted quotient {by_quotient}"));
            break;
        }
    }
    second = second.detail("quantifiers", quantifiers.len());
    Ok(LawOutcome::all("respect", vec![first, second])
        .detail("sim_equiv", fmt_blocks(e))
        .detail("arity_bound", report.arity_bound)
        .detail("bound_stable", report.stable)
        .detail("binary_agrees", report.binary_agrees))
}

/// `∼` of a structure is `≈` of its similarities; checked also against the
/// saturation oracle.
pub fn check_allisgood_structure(s: &Structure, limits: &Limits) -> Result<LawOutcome> {
    let e = sim_equiv_report(s, limits)?.partition;
    let sims = sim_with(s, &e, limits)?;
    let approx = approx_equiv(&sims, limits)?;
    let oracle = saturation_equivalence(s);
    let pass = approx == e && oracle == e;
    let mut out = LawOutcome::new("allisgood.2", pass)
        .detail("sim_equiv", fmt_blocks(&e))
        .detail("approx_of_sim", fmt_blocks(&approx))
        .detail("saturation_oracle", fmt_blocks(&oracle))
        .detail("sim_size", sims.len());
    if !pass {
        out = out.counterexample(format!(
            "sim_equiv {} vs approx {} vs oracle {}",
            fmt_blocks(&e),
            fmt_blocks(&approx),
            fmt_blocks(&oracle)
        ));
    }
    Ok(out)
}

/// For a full monoid, `≈` equals `∼` of its invariant relations.
pub fn check_allisgood_set(p: &SimilaritySet, limits: &Limits) -> Result<LawOutcome> {
    let full = full_monoid_closure(p, limits)?;
    let approx = approx_equiv(&full, limits)?;
    let inv_structure = inv_sim_structure(&full, limits)?;
    let e = sim_equiv_report(&inv_structure, limits)?.partition;
    let pass = approx == e;
    let mut out = LawOutcome::new("allisgood.1", pass)
        .detail("approx", fmt_blocks(&approx))
        .detail("sim_equiv_of_inv", fmt_blocks(&e))
        .detail("full_monoid_size", full.len());
    if !pass {
        out = out.counterexample(format!("approx {} vs sim_equiv {}", fmt_blocks(&approx), fmt_blocks(&e)));
    }
    Ok(out)
}

/// Quotients of the similarities (by definition) are the automorphisms of
/// the quotient structure; quantifiers invariant under those similarities
/// are those whose quotient is invariant under the quotient automorphisms.
pub fn check_propaut(s: &Structure, limits: &Limits) -> Result<LawOutcome> {
    let e = sim_equiv_report(s, limits)?.partition;
    let sims = sim_by_definition(s, limits)?;
    let quotients = PermutationSet::new(
        e.num_blocks(),
        sims.iter().map(|p| quotient_similarity(p, &e)).collect::<Result<Vec<_>>>()?,
    )?;
    let qs = quotient_structure(s, &e)?;
    let group = aut(&qs, limits)?;
    let same = quotients.elements() == group.elements();
    let mut first = LawOutcome::new("propaut.1", same)
        .detail("sim_size", sims.len())
        .detail("quotient_aut_order", group.len());
    if !same {
        first = first.counterexample(format!("quotients {quotients} vs aut {group}"));
    }
    let mut second = LawOutcome::new("propaut.2", true);
    let candidates = sweep_quantifiers(s, &e, limits)?;
    for q in &candidates {
        let mut direct = true;
        for p in sims.iter() {
            if !quantifier_sim_invariant(p, q, &e, limits)? {
                direct = false;
                break;
            }
        }
        let via_quotient = is_invariant(&group, &quotient_quantifier(q, &e)?.into())?;
        if direct != via_quotient {
            second = LawOutcome::new("propaut.2", false)
                .counterexample(format!("{q}: by definition {direct}, via quotient {via_quotient}"));
            break;
        }
    }
    second = second.detail("quantifiers", candidates.len());
    Ok(LawOutcome::all("propaut", vec![first, second]))
}

/// Every quotient of a similarity is a permutation of the blocks, and every
/// saturated relation is lifted onto its image.
pub fn check_bijective(s: &Structure, limits: &Limits) -> Result<LawOutcome> {
    let e = sim_equiv_report(s, limits)?.partition;
    let sims = sim_with(s, &e, limits)?;
    let mut saturated_relations = Vec::new();
    for k in sweep_arities(e.num_blocks(), 2) {
        for r in enumerate_relations(e.num_blocks(), k, limits)? {
            saturated_relations.push(lift_relation(&r, &e)?);
        }
    }
    let step = (sims.len() / 256).max(1);
    let mut tested = 0usize;
    for p in sims.iter().step_by(step) {
        tested += 1;
        if let Err(err) = quotient_similarity(p, &e) {
            return Ok(LawOutcome::new("bijective", false).counterexample(format!("{p}: {err}")));
        }
        for r in &saturated_relations {
            if !lift_holds(p, r, &image(p, r)?)? {
                return Ok(LawOutcome::new("bijective", false).counterexample(format!("{p} does not lift {r}")));
            }
        }
    }
    Ok(LawOutcome::new("bijective", true)
        .detail("similarities", tested)
        .detail("saturated_relations", saturated_relations.len()))
}

/// The equality-free correspondence for a structure: invariance under its
/// similarities matches equality-free definability (restricted to saturated
/// arguments for quantifiers), `∼` is `≈` of the similarities, and the
/// similarities form a full monoid.
pub fn check_cor_structure(s: &Structure, limits: &Limits) -> Result<LawOutcome> {
    let e = sim_equiv_report(s, limits)?.partition;
    let sims = sim_with(s, &e, limits)?;
    let eval = with_similarity_symbol(s, &e)?;
    let mut definability = LawOutcome::new("cor.1", true);
    let mut relations = 0usize;
    'rel: for k in sweep_arities(s.size(), 2) {
        for r in enumerate_relations(s.size(), k, limits)? {
            relations += 1;
            let mut invariant = true;
            for p in sims.iter() {
                if !invariant_under(p, &r)? {
                    invariant = false;
                    break;
                }
            }
            let target: Object = r.clone().into();
            let verdict = definable_without_equality(s, &target, &e, limits)?;
            let ok = match verdict.witness() {
                Some(w) => invariant && accepted_object(&eval, w, &target, limits)? == target,
                None => !invariant,
            };
            if !ok {
                definability = LawOutcome::new("cor.1", false)
                    .counterexample(format!("relation {r}: invariant={invariant}, verdict={verdict:?}"));
                break 'rel;
            }
        }
    }
    let candidates = if definability.pass {
        sweep_quantifiers(s, &e, limits)?
    } else {
        Vec::new()
    };
    let qs = quotient_structure(s, &e)?;
    let group = aut(&qs, limits)?;
    let mut falsity_witness = None;
    for q in &candidates {
        let invariant = is_invariant(&group, &quotient_quantifier(q, &e)?.into())?;
        let target: Object = q.clone().into();
        let verdict = definable_without_equality(s, &target, &e, limits)?;
        let ok = match verdict.witness() {
            Some(w) => {
                let restricted: Object = restrict_quantifier_with(q, &e)?.into();
                if s.quantifiers().any(|(_, own)| own == q) && falsity_witness.is_none() {
                    falsity_witness = Some(format!("{q} restricted to {restricted} by {w}"));
                }
                invariant && accepted_object(&eval, w, &target, limits)? == restricted
            }
            None => !invariant,
        };
        if !ok {
            definability = LawOutcome::new("cor.1", false)
                .counterexample(format!("quantifier {q}: invariant={invariant}, verdict={verdict:?}"));
            break;
        }
    }
    definability = definability
        .detail("relations", relations)
        .detail("quantifiers", candidates.len());
    if let Some(w) = falsity_witness {
        definability = definability.witness(w);
    }
    let approx = approx_equiv(&sims, limits)?;
    let mut equiv = LawOutcome::new("cor.allisgood", approx == e)
        .detail("sim_equiv", fmt_blocks(&e))
        .detail("approx_of_sim", fmt_blocks(&approx));
    if !equiv.pass {
        equiv = equiv.counterexample(format!("{} vs {}", fmt_blocks(&e), fmt_blocks(&approx)));
    }
    let flags = sims.flags(limits)?;
    let mut full = LawOutcome::new("cor.full", flags.is_full())
        .detail("sim_size", sims.len())
        .detail("flags", flags);
    if !full.pass {
        full = full.counterexample(flags);
    }
    Ok(LawOutcome::all("cor", vec![definability, equiv, full]))
}

/// `Sim(Inv(P))` through lifted orbit relations equals the fixpoint full
/// monoid closure of `P`, and `≈` of the closure is `∼` of its invariants.
pub fn check_cor_set(p: &SimilaritySet, limits: &Limits) -> Result<LawOutcome> {
    let via_inv = sim_of_inv(p, limits)?;
    let closure = full_monoid_closure(p, limits)?;
    let mut first = LawOutcome::new("cor.2", via_inv == closure)
        .detail("sim_inv_size", via_inv.len())
        .detail("full_closure_size", closure.len());
    if !first.pass {
        let missing: Vec<String> = closure.iter().filter(|x| !via_inv.contains(x)).map(|x| x.to_string()).collect();
        let extra: Vec<String> = via_inv.iter().filter(|x| !closure.contains(x)).map(|x| x.to_string()).collect();
        first = first.counterexample(format!("only in closure: {missing:?}; only in Sim(Inv): {extra:?}"));
    }
    let second = check_allisgood_set(p, limits)?;
    Ok(LawOutcome::all("cor", vec![first, second]))
}

/// The relations of a structure are all saturated under its `∼` and invariant
/// under each of its similarities.
pub fn relations_respect_similarities(s: &Structure, sims: &SimilaritySet) -> Result<bool> {
    for (_, r) in s.relations() {
        for p in sims.iter() {
            if !invariant_under(p, r)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Relation;
    use crate::similarity::Similarity;

    fn unary(n: usize, xs: &[usize]) -> Relation {
        Relation::unary(n, xs).unwrap()
    }

    fn even(n: usize) -> Structure {
        Structure::empty(n)
            .unwrap()
            .with_relation("bot", Relation::empty(n, 1))
            .unwrap()
            .with_relation("top", Relation::full(n, 1))
            .unwrap()
            .with_quantifier("QE", Quantifier::monadic(n, &[&[0, 2]]).unwrap())
            .unwrap()
    }

    fn p01() -> Structure {
        Structure::empty(3)
            .unwrap()
            .with_relation("P", unary(3, &[0, 1]))
            .unwrap()
            .with_quantifier("Q", Quantifier::monadic(3, &[&[0, 1], &[2], &[0]]).unwrap())
            .unwrap()
    }

    #[test]
    fn structure_laws_hold() {
        let l = Limits::default();
        for s in [p01(), even(3)] {
            assert!(check_respect(&s, &[], &l).unwrap().pass);
            assert!(check_allisgood_structure(&s, &l).unwrap().pass);
            assert!(check_propaut(&s, &l).unwrap().pass);
            assert!(check_bijective(&s, &l).unwrap().pass);
            let cor = check_cor_structure(&s, &l).unwrap();
            assert!(cor.pass, "{cor}");
        }
    }

    #[test]
    fn even_example_on_four_points() {
        let l = Limits::default();
        let cor = check_cor_structure(&even(4), &l).unwrap();
        assert!(cor.pass, "{cor}");
        assert!(cor.witness.is_some());
    }

    #[test]
    fn set_laws_hold() {
        let l = Limits::default();
        let id = SimilaritySet::new(2, [Similarity::identity(2).unwrap()]).unwrap();
        let out = check_cor_set(&id, &l).unwrap();
        assert!(out.pass, "{out}");
        let total = SimilaritySet::new(2, [Similarity::total(2).unwrap()]).unwrap();
        let out = check_cor_set(&total, &l).unwrap();
        assert!(out.pass, "{out}");
        let swap = SimilaritySet::new(3, [Similarity::new(3, [(0, 1), (1, 0), (2, 2)]).unwrap()]).unwrap();
        assert!(check_cor_set(&swap, &l).unwrap().pass);
    }
}
