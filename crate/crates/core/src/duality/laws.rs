//! Executable checks of the permutation-side correspondence.

use super::{aut, inv, is_invariant, violating_element, InvariantFamily};
use crate::error::Result;
use crate::groups::{canonical_structure, generate, symmetric, PermutationSet};
use crate::limits::Limits;
use crate::logic::{accepted_object, build_phi_q};
use crate::model::{enumerate_quantifiers, enumerate_relations, fixes, Count, Object, QuantifierType, Structure};
use crate::report::LawOutcome;

/// Outcome of recovering a group from its orbit relations.
#[derive(Debug, Clone)]
pub struct RoundtripReport {
    pub group: PermutationSet,
    pub recovered: PermutationSet,
    pub k_max: usize,
    /// `k_max` is below the degree, so recovery may legitimately give a larger group.
    pub under_aritied: bool,
    pub pass: bool,
}

impl RoundtripReport {
    pub fn outcome(&self) -> LawOutcome {
        LawOutcome::new("kras-group", self.pass)
            .detail("degree", self.group.degree())
            .detail("k_max", self.k_max)
            .detail("group_order", self.group.len())
            .detail("recovered_order", self.recovered.len())
            .detail("under_aritied", self.under_aritied)
            .witness(format!("generators {}", fmt_perms(self.group.generators())))
    }
}

fn fmt_perms(perms: &[crate::model::Permutation]) -> String {
    let parts: Vec<String> = perms.iter().map(|g| g.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// `aut(canonical_structure(⟨H⟩, k_max)) = ⟨H⟩`.
pub fn check_kras_group_roundtrip(h: &PermutationSet, k_max: usize, limits: &Limits) -> Result<RoundtripReport> {
    let group = generate(h, limits)?;
    let recovered = aut(&canonical_structure(&group, k_max, limits)?, limits)?;
    Ok(RoundtripReport {
        pass: recovered == group,
        under_aritied: k_max < h.degree(),
        k_max,
        recovered,
        group,
    })
}

/// Invariance of `target` under `aut(s)` holds iff the defining formula
/// accepts exactly the target.
pub fn check_kras_definability(s: &Structure, target: &Object, limits: &Limits) -> Result<LawOutcome> {
    let group = aut(s, limits)?;
    let invariant = is_invariant(&group, target)?;
    let phi = build_phi_q(s, target, limits)?;
    let accepted = accepted_object(s, &phi, target, limits)?;
    let exact = &accepted == target;
    let mut out = LawOutcome::new("kras-def", invariant == exact)
        .detail("invariant", invariant)
        .detail("acceptance_exact", exact)
        .detail("accepted", &accepted);
    if invariant {
        out = out.witness(&phi);
    } else if let Some(g) = violating_element(&group, target)? {
        out = out.counterexample(format!("automorphism {g} moves the target"));
    }
    Ok(out)
}

/// One orbit of the symmetric group on relations or quantifier members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitClass {
    pub representative: String,
    pub size: usize,
}

/// Invariant objects of the full symmetric group, by kind.
#[derive(Debug, Clone)]
pub struct McGeeCatalogue {
    pub size: usize,
    pub relations: Vec<(usize, Vec<OrbitClass>, Count)>,
    pub quantifiers: Vec<(QuantifierType, Vec<OrbitClass>, Count)>,
}

impl McGeeCatalogue {
    pub fn outcome(&self) -> LawOutcome {
        let mut out = LawOutcome::new("mcgee", true).detail("domain_size", self.size);
        for (k, classes, count) in &self.relations {
            out = out
                .detail(format!("arity {k} orbit classes"), classes.len())
                .detail(format!("arity {k} invariant relations"), count);
        }
        for (qt, classes, count) in &self.quantifiers {
            let reps: Vec<&str> = classes.iter().map(|c| c.representative.as_str()).collect();
            out = out
                .detail(format!("type {qt} orbit classes"), classes.len())
                .detail(format!("type {qt} class representatives"), reps.join(" | "))
                .detail(format!("type {qt} invariant quantifiers"), count);
        }
        out
    }
}

/// Orbit classes and counts of the objects invariant under every permutation.
pub fn mcgee_invariants(n: usize, arities: &[usize], qtypes: &[QuantifierType], limits: &Limits) -> Result<McGeeCatalogue> {
    let group = symmetric(n, limits)?;
    let k_max = arities.iter().copied().max().unwrap_or(0);
    let family: InvariantFamily = inv(&group, k_max, qtypes, limits)?;
    let mut relations = Vec::new();
    for &k in arities {
        let orbits = family.relation_orbits(k).expect("arity within k_max");
        let classes = orbits
            .relations()
            .into_iter()
            .map(|r| OrbitClass {
                representative: r.tuples().next().map_or("()".into(), |t| format!("{t:?}")),
                size: r.len(),
            })
            .collect();
        relations.push((k, classes, family.relation_count(k)?));
    }
    let mut quantifiers = Vec::new();
    for qt in qtypes {
        let orbits = family.quantifier_orbits(qt).expect("type requested");
        let sizes = orbits.orbit_sizes();
        let classes = (0..orbits.num_orbits())
            .map(|i| {
                let member = orbits.orbit(i).members().next().cloned().expect("orbits are non-empty");
                let parts: Vec<String> = member.iter().map(|r| r.to_string()).collect();
                OrbitClass {
                    representative: parts.join(", "),
                    size: sizes[i],
                }
            })
            .collect();
        quantifiers.push((qt.clone(), classes, family.quantifier_count(qt)?));
    }
    Ok(McGeeCatalogue {
        size: n,
        relations,
        quantifiers,
    })
}

/// Invariant `k`-ary relations under every permutation, counted by testing
/// each relation against each permutation.
pub fn brute_force_invariant_relations(n: usize, k: usize, limits: &Limits) -> Result<u128> {
    let group = symmetric(n, limits)?;
    let mut count = 0u128;
    for r in enumerate_relations(n, k, limits)? {
        let obj: Object = r.into();
        let mut ok = true;
        for g in group.iter() {
            if !fixes(g, &obj)? {
                ok = false;
                break;
            }
        }
        count += ok as u128;
    }
    Ok(count)
}

/// Invariant quantifiers of a type under every permutation, counted by
/// enumerating every quantifier.
pub fn brute_force_invariant_quantifiers(n: usize, qtype: &QuantifierType, limits: &Limits) -> Result<u128> {
    let group = symmetric(n, limits)?;
    let mut count = 0u128;
    for q in enumerate_quantifiers(n, qtype, limits)? {
        let obj: Object = q.into();
        let mut ok = true;
        for g in group.iter() {
            if !fixes(g, &obj)? {
                ok = false;
                break;
            }
        }
        count += ok as u128;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::alternating;
    use crate::model::{Permutation, Quantifier, Relation};

    #[test]
    fn roundtrip_examples() {
        let l = Limits::default();
        let h = PermutationSet::new(2, [Permutation::from_cycles(2, &[&[0, 1]]).unwrap()]).unwrap();
        assert!(check_kras_group_roundtrip(&h, 2, &l).unwrap().pass);
        let a4 = alternating(4, &l).unwrap();
        assert!(check_kras_group_roundtrip(&a4, 4, &l).unwrap().pass);
        let under = check_kras_group_roundtrip(&a4, 2, &l).unwrap();
        assert!(!under.pass && under.under_aritied);
        assert_eq!(under.recovered.len(), 24);
    }

    #[test]
    fn definability_examples() {
        let l = Limits::default();
        let s = Structure::empty(2)
            .unwrap()
            .with_relation("P", Relation::unary(2, &[0]).unwrap())
            .unwrap();
        let r: Object = Relation::unary(2, &[0]).unwrap().into();
        let out = check_kras_definability(&s, &r, &l).unwrap();
        assert!(out.pass && out.witness.is_some());
        let out = check_kras_definability(&Structure::empty(2).unwrap(), &r, &l).unwrap();
        assert!(out.pass && out.counterexample.is_some());
        let q: Object = Quantifier::monadic(2, &[&[0]]).unwrap().into();
        assert!(check_kras_definability(&s, &q, &l).unwrap().pass);
    }

    #[test]
    fn mcgee_counts() {
        let l = Limits::default();
        let t1 = QuantifierType::monadic(1).unwrap();
        let c = mcgee_invariants(3, &[1, 2], &[t1.clone()], &l).unwrap();
        assert_eq!(c.quantifiers[0].2.value(), Some(16));
        assert_eq!(c.relations[0].2.value(), Some(2));
        assert_eq!(c.relations[1].2.value(), Some(4));
        assert_eq!(brute_force_invariant_quantifiers(3, &t1, &l).unwrap(), 16);
        assert_eq!(brute_force_invariant_relations(3, 2, &l).unwrap(), 4);
        let c = mcgee_invariants(4, &[], &[t1], &l).unwrap();
        assert_eq!(c.quantifiers[0].2.value(), Some(32));
    }
}
