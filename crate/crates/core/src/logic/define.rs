//! Definability verdicts with witnesses and counterexamples.

use std::fmt;

use super::eval::{Assignment, Compiled};
use super::formula::{Formula, Var};
use super::krasner::{build_phi_q, candidate_symbol, translate_eq_to_sim, SIM_SYMBOL};
use crate::duality::{aut, violating_element};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::model::{saturated, EquivalencePartition, MemberSpace, Object, Permutation, Quantifier, Relation, Structure};
use crate::similarity::{lift_permutation, quotient_quantifier, quotient_structure, sim_equiv, Similarity};

/// A transformation preserving the structure but moving the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Counterexample {
    Permutation(Permutation),
    Similarity(Similarity),
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::Permutation(g) => write!(f, "permutation {g}"),
            Counterexample::Similarity(p) => write!(f, "similarity {p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Definable { witness: Formula },
    NotDefinable { counterexample: Counterexample },
}

impl Verdict {
    pub fn is_definable(&self) -> bool {
        matches!(self, Verdict::Definable { .. })
    }

    pub fn witness(&self) -> Option<&Formula> {
        match self {
            Verdict::Definable { witness } => Some(witness),
            Verdict::NotDefinable { .. } => None,
        }
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Verdict::Definable { .. } => None,
            Verdict::NotDefinable { counterexample } => Some(counterexample),
        }
    }
}

/// `s` with `~` interpreted as `e`, the structure equality-free witnesses are read in.
pub fn with_similarity_symbol(s: &Structure, e: &EquivalencePartition) -> Result<Structure> {
    if e.len() != s.size() {
        return Err(Error::DomainMismatch {
            expected: s.size(),
            found: e.len(),
        });
    }
    let mut out = s.clone();
    out.set_relation_unchecked(SIM_SYMBOL, e.to_relation());
    Ok(out)
}

/// `∀ȳ ȳ' (⋀ ~(y_l, y'_l) ∧ T(ȳ) → T(ȳ'))`: `T` is saturated under `~`.
fn saturation_guard(symbol: &str, arity: usize) -> Formula {
    let ys: Vec<Var> = (0..arity).collect();
    let zs: Vec<Var> = (arity..2 * arity).collect();
    let mut antecedent: Vec<Formula> = ys
        .iter()
        .zip(&zs)
        .map(|(&y, &z)| Formula::pred(SIM_SYMBOL, vec![y, z]))
        .collect();
    antecedent.push(Formula::pred(symbol, ys.clone()));
    let mut vars = ys;
    vars.extend(&zs);
    Formula::forall(vars, Formula::implies(Formula::and(antecedent), Formula::pred(symbol, zs)))
}

/// `⋁_{t ∈ r} ⋀_l ~(x_{n+l}, x_{t_l})` with `x_0 … x_{n-1}` as parameters.
fn saturated_relation_formula(r: &Relation) -> Formula {
    let n = r.size();
    Formula::Or(
        r.tuples()
            .map(|t| {
                Formula::and(
                    t.iter()
                        .enumerate()
                        .map(|(l, &a)| Formula::pred(SIM_SYMBOL, vec![n + l, a]))
                        .collect(),
                )
            })
            .collect(),
    )
}

/// Decides whether `target` is definable over `s`.
///
/// With equality this is invariance under the automorphism group, witnessed
/// by the defining formula over `s` or refuted by an automorphism moving the
/// target. Without equality, relations are definable (with parameters) iff
/// they are saturated under `∼`, refuted by `∼` itself as a similarity; for
/// quantifiers the verdict concerns the restriction to saturated arguments,
/// witnessed by the defining formula over `s/∼` with `=` read as `~` and
/// refuted by the similarity lifting an automorphism of `s/∼`.
///
/// Witnesses mentioning `~` are read in [`with_similarity_symbol`]; relation
/// witnesses have free variables `x_n … x_{n+k-1}` (and, without equality,
/// parameters `x_0 … x_{n-1}` under the canonical assignment); quantifier
/// witnesses are sentences over the candidate symbols `?R0, ?R1, …`.
pub fn is_definable(s: &Structure, target: &Object, with_equality: bool, limits: &Limits) -> Result<Verdict> {
    if target.size() != s.size() {
        return Err(Error::DomainMismatch {
            expected: s.size(),
            found: target.size(),
        });
    }
    if with_equality {
        let group = aut(s, limits)?;
        if let Some(g) = violating_element(&group, target)? {
            return Ok(Verdict::NotDefinable {
                counterexample: Counterexample::Permutation(g),
            });
        }
        return Ok(Verdict::Definable {
            witness: build_phi_q(s, target, limits)?,
        });
    }
    let e = sim_equiv(s, limits)?;
    definable_without_equality(s, target, &e, limits)
}

/// The equality-free verdict with `∼` already computed.
pub(crate) fn definable_without_equality(
    s: &Structure,
    target: &Object,
    e: &EquivalencePartition,
    limits: &Limits,
) -> Result<Verdict> {
    match target {
        Object::Relation(r) => {
            if saturated(r, e)? {
                Ok(Verdict::Definable {
                    witness: saturated_relation_formula(r),
                })
            } else {
                Ok(Verdict::NotDefinable {
                    counterexample: Counterexample::Similarity(Similarity::from_partition(e)?),
                })
            }
        }
        Object::Quantifier(q) => {
            let qs = quotient_structure(s, e)?;
            let qq = quotient_quantifier(q, e)?;
            let group = aut(&qs, limits)?;
            if let Some(f) = violating_element(&group, &qq.clone().into())? {
                return Ok(Verdict::NotDefinable {
                    counterexample: Counterexample::Similarity(lift_permutation(&f, e)?),
                });
            }
            let phi = translate_eq_to_sim(&build_phi_q(&qs, &qq.into(), limits)?, SIM_SYMBOL);
            let mut parts: Vec<Formula> = q
                .qtype()
                .slots()
                .iter()
                .enumerate()
                .filter(|(_, &i)| i > 0)
                .map(|(j, &i)| saturation_guard(&candidate_symbol(j), i))
                .collect();
            parts.push(phi);
            Ok(Verdict::Definable {
                witness: Formula::and(parts),
            })
        }
    }
}

/// The object a witness defines in `s`, shaped like `shape`: the extension
/// over `x_n …` for a relation, the accepted candidate arguments for a quantifier.
pub fn accepted_object(s: &Structure, witness: &Formula, shape: &Object, limits: &Limits) -> Result<Object> {
    let n = s.size();
    match shape {
        Object::Relation(r) => {
            let zs: Vec<Var> = (n..n + r.arity()).collect();
            let c = Compiled::new(s, witness, &[])?;
            Ok(c.extension(&zs, &Assignment::canonical(n))?.into())
        }
        Object::Quantifier(q) => Ok(accepted_quantifier(s, witness, q, limits)?.into()),
    }
}

fn accepted_quantifier(s: &Structure, witness: &Formula, shape: &Quantifier, limits: &Limits) -> Result<Quantifier> {
    let qtype = shape.qtype();
    let space = MemberSpace::new(s.size(), qtype, limits)?;
    let names: Vec<String> = (0..qtype.len()).map(candidate_symbol).collect();
    let extra: Vec<(&str, usize)> = names.iter().map(String::as_str).zip(qtype.slots().iter().copied()).collect();
    let mut c = Compiled::new(s, witness, &extra)?;
    let mut out = Quantifier::new(s.size(), qtype.clone());
    let sigma = Assignment::canonical(s.size());
    for member in space.members() {
        for (name, r) in names.iter().zip(&member) {
            c.bind(name, r.clone())?;
        }
        if c.eval(&sigma)? {
            out.insert_unchecked(member);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::QuantifierType;
    use crate::similarity::restrict_quantifier;

    fn p01() -> Structure {
        Structure::empty(3)
            .unwrap()
            .with_relation("P", Relation::unary(3, &[0, 1]).unwrap())
            .unwrap()
    }

    #[test]
    fn top_is_always_definable() {
        let l = Limits::default();
        for eq in [true, false] {
            let v = is_definable(&p01(), &Relation::full(3, 1).into(), eq, &l).unwrap();
            assert!(v.is_definable());
        }
    }

    #[test]
    fn singleton_is_not_definable_over_nothing() {
        let l = Limits::default();
        let s = Structure::empty(2).unwrap();
        let v = is_definable(&s, &Relation::unary(2, &[0]).unwrap().into(), true, &l).unwrap();
        assert_eq!(
            v.counterexample().unwrap().to_string(),
            "permutation (0 1)"
        );
    }

    #[test]
    fn equality_free_relation_verdicts() {
        let l = Limits::default();
        let s = p01();
        let v = is_definable(&s, &Relation::unary(3, &[0]).unwrap().into(), false, &l).unwrap();
        assert!(matches!(v.counterexample(), Some(Counterexample::Similarity(_))));
        let target = Relation::from_tuples(3, 2, [[0, 2], [1, 2]]).unwrap();
        let v = is_definable(&s, &target.clone().into(), false, &l).unwrap();
        let e = sim_equiv(&s, &l).unwrap();
        let eval = with_similarity_symbol(&s, &e).unwrap();
        let got = accepted_object(&eval, v.witness().unwrap(), &target.clone().into(), &l).unwrap();
        assert_eq!(got, target.into());
    }

    #[test]
    fn equality_free_quantifier_witness_accepts_restriction() {
        let l = Limits::default();
        let s = p01();
        let q = Quantifier::monadic(3, &[&[0, 1], &[0], &[2]]).unwrap();
        let v = is_definable(&s, &q.clone().into(), false, &l).unwrap();
        let e = sim_equiv(&s, &l).unwrap();
        let eval = with_similarity_symbol(&s, &e).unwrap();
        let got = accepted_object(&eval, v.witness().unwrap(), &q.clone().into(), &l).unwrap();
        assert_eq!(got, restrict_quantifier(&s, &q, &l).unwrap().into());
        let skewed = Quantifier::monadic(3, &[&[0, 1]]).unwrap();
        let s2 = Structure::empty(3).unwrap().with_relation("top", Relation::full(3, 1)).unwrap();
        let v = is_definable(&s2, &skewed.into(), false, &l).unwrap();
        assert!(v.is_definable());
    }

    #[test]
    fn equality_free_quantifier_counterexample() {
        let l = Limits::default();
        let s = Structure::empty(2)
            .unwrap()
            .with_relation("eq", EquivalencePartition::discrete(2).to_relation())
            .unwrap();
        let q = Quantifier::monadic(2, &[&[0]]).unwrap();
        let v = is_definable(&s, &q.into(), false, &l).unwrap();
        assert_eq!(v.counterexample().unwrap().to_string(), "similarity {(0,1),(1,0)}");
    }

    #[test]
    fn equality_witness_defines_invariant_quantifier() {
        let l = Limits::default();
        let s = Structure::empty(2)
            .unwrap()
            .with_relation("P", Relation::unary(2, &[0]).unwrap())
            .unwrap();
        let q = Quantifier::monadic(2, &[&[0]]).unwrap();
        let v = is_definable(&s, &q.clone().into(), true, &l).unwrap();
        let got = accepted_object(&s, v.witness().unwrap(), &q.clone().into(), &l).unwrap();
        assert_eq!(got, q.into());
        let t2 = QuantifierType::new(vec![2]).unwrap();
        let all_pairs = Quantifier::from_members(2, t2.clone(), [vec![Relation::full(2, 2)]]).unwrap();
        let v = is_definable(&s, &all_pairs.clone().into(), true, &l).unwrap();
        let got = accepted_object(&s, v.witness().unwrap(), &all_pairs.clone().into(), &l).unwrap();
        assert_eq!(got, all_pairs.into());
    }
}
