//! Descriptions of objects from below, the bijection formula, and the
//! defining formula of an object over a structure.
//!
//! Variables `x_0 … x_{n-1}` stand for the domain elements under the
//! canonical assignment `x_i ↦ i`.

use super::formula::{Formula, Slot, Var};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::model::{tuple, MemberSpace, Object, Quantifier, Relation, Structure};

/// Name of the binary symbol that stands in for equality in equality-free definitions.
pub const SIM_SYMBOL: &str = "~";

/// Name of the `j`-th candidate argument symbol of a definition.
pub fn candidate_symbol(j: usize) -> String {
    format!("?R{j}")
}

fn x_args(t: &[usize]) -> Vec<Var> {
    t.to_vec()
}

/// `⋀ ±T(x_{t})` over every tuple `t`, positive exactly for `t ∈ r`.
pub fn describe_relation(r: &Relation, symbol: &str) -> Formula {
    let n = r.size();
    let count = r.space_len();
    Formula::and(
        (0..count)
            .map(|code| {
                let atom = Formula::pred(symbol, x_args(&tuple::decode(n, r.arity(), code)));
                if r.contains_code(code) {
                    atom
                } else {
                    Formula::not(atom)
                }
            })
            .collect(),
    )
}

/// `⋁_{t ∈ r} ⋀_l y_l = x_{t_l}`: the formula in `y` whose extension is `r`.
fn pin_relation(r: &Relation, ys: &[Var]) -> Formula {
    Formula::or(
        r.tuples()
            .map(|t| Formula::and(ys.iter().zip(&t).map(|(&y, &x)| Formula::Eq(y, x)).collect()))
            .collect(),
    )
}

/// `⋀ ±T ȳ_1…ȳ_k (pins of U)` over every candidate member `U`, positive exactly for `U ∈ q`.
/// Bound variables start at `var_base`.
pub fn describe_quantifier(q: &Quantifier, symbol: &str, var_base: Var, limits: &Limits) -> Result<Formula> {
    let space = MemberSpace::new(q.size(), q.qtype(), limits)?;
    check_clauses(space.count(), limits)?;
    let literals = space
        .members()
        .map(|member| {
            let slots = member
                .iter()
                .map(|r| {
                    let ys: Vec<Var> = (var_base..var_base + r.arity()).collect();
                    Slot {
                        body: pin_relation(r, &ys),
                        vars: ys,
                    }
                })
                .collect();
            let atom = Formula::Quant(symbol.to_string(), slots);
            if q.contains(&member) {
                atom
            } else {
                Formula::not(atom)
            }
        })
        .collect();
    Ok(Formula::and(literals))
}

/// Description of either kind of object; quantifier variables start at `n`.
pub fn description_delta(obj: &Object, symbol: &str, limits: &Limits) -> Result<Formula> {
    match obj {
        Object::Relation(r) => {
            check_clauses(r.space_len(), limits)?;
            Ok(describe_relation(r, symbol))
        }
        Object::Quantifier(q) => describe_quantifier(q, symbol, q.size(), limits),
    }
}

/// `⋀_{i<j} ¬ x_i = x_j ∧ ∀y ⋁_i y = x_i` with `y = x_n`.
pub fn bijection_psi(n: usize) -> Formula {
    bijection_psi_with(n, n)
}

pub(crate) fn bijection_psi_with(n: usize, y: Var) -> Formula {
    let mut parts: Vec<Formula> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| Formula::not(Formula::Eq(i, j))))
        .collect();
    parts.push(Formula::forall(vec![y], Formula::or((0..n).map(|i| Formula::Eq(y, i)).collect())));
    Formula::and(parts)
}

fn check_clauses(count: usize, limits: &Limits) -> Result<()> {
    if count > limits.max_formula_clauses {
        return Err(Error::limit(
            "description clauses",
            count as u128,
            limits.max_formula_clauses as u128,
        ));
    }
    Ok(())
}

/// The defining formula of `target` over `s`:
///
/// `∀x_0…x_{n-1} (¬(⋀ Δ_S ∧ ψ) ∨ ⋁_{U ∈ target} Δ_U)`.
///
/// For a quantifier target the disjuncts describe candidate arguments bound
/// to `?R0, ?R1, …`; for a relation target of arity `k` they pin the free
/// variables `x_n … x_{n+k-1}` to a tuple of the target. The formula holds of
/// exactly the arguments every automorphic enumeration places in the target,
/// so it defines the target whenever the target is invariant.
pub fn build_phi_q(s: &Structure, target: &Object, limits: &Limits) -> Result<Formula> {
    let n = s.size();
    if target.size() != n {
        return Err(Error::DomainMismatch {
            expected: n,
            found: target.size(),
        });
    }
    let free_arity = match target {
        Object::Relation(r) => r.arity(),
        Object::Quantifier(_) => 0,
    };
    let var_base = n + free_arity;
    let mut antecedent = Vec::new();
    for (name, r) in s.relations() {
        check_clauses(r.space_len(), limits)?;
        antecedent.push(describe_relation(r, name));
    }
    for (name, q) in s.quantifiers() {
        antecedent.push(describe_quantifier(q, name, var_base, limits)?);
    }
    antecedent.push(bijection_psi_with(n, var_base));
    let consequent = match target {
        Object::Relation(r) => {
            check_clauses(r.len(), limits)?;
            let zs: Vec<Var> = (n..n + r.arity()).collect();
            Formula::Or(
                r.tuples()
                    .map(|t| Formula::and(zs.iter().zip(&t).map(|(&z, &x)| Formula::Eq(z, x)).collect()))
                    .collect(),
            )
        }
        Object::Quantifier(q) => {
            check_clauses(q.len(), limits)?;
            Formula::Or(
                q.members()
                    .map(|m| {
                        Formula::and(
                            m.iter()
                                .enumerate()
                                .map(|(j, r)| describe_relation(r, &candidate_symbol(j)))
                                .collect(),
                        )
                    })
                    .collect(),
            )
        }
    };
    Ok(Formula::forall(
        (0..n).collect(),
        Formula::implies(Formula::And(antecedent), consequent),
    ))
}

/// Replaces equality by the named binary symbol.
pub fn translate_eq_to_sim(phi: &Formula, sim_name: &str) -> Formula {
    phi.replace_equality(sim_name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::eval::{eval, Assignment, Compiled};
    use crate::model::{QuantifierType, Structure};

    #[test]
    fn relation_descriptions() {
        let d = describe_relation(&Relation::empty(2, 1), "T");
        assert_eq!(d.to_string(), "(and (not (rel T x0)) (not (rel T x1)))");
        let d = describe_relation(&Relation::unary(2, &[0]).unwrap(), "T");
        assert_eq!(d.to_string(), "(and (rel T x0) (not (rel T x1)))");
    }

    #[test]
    fn quantifier_description_has_one_positive_clause() {
        let l = Limits::default();
        let q = Quantifier::monadic(3, &[&[0, 2]]).unwrap();
        let d = describe_quantifier(&q, "T", 3, &l).unwrap();
        let Formula::And(clauses) = &d else { panic!("not a conjunction") };
        assert_eq!(clauses.len(), 8);
        let positive = clauses.iter().filter(|c| !matches!(c, Formula::Not(_))).count();
        assert_eq!(positive, 1);
        let s = Structure::empty(3).unwrap().with_quantifier("T", q).unwrap();
        assert!(eval(&s, &d, &Assignment::canonical(3)).unwrap());
        for c in clauses {
            assert!(eval(&s, c, &Assignment::canonical(3)).unwrap());
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(bijection_psi(1).to_string(), "(forall (x1) (= x1 x0))");
        let s = Structure::empty(2).unwrap();
        let psi = bijection_psi(2);
        assert!(eval(&s, &psi, &Assignment::new().with(0, 0).with(1, 1)).unwrap());
        assert!(!eval(&s, &psi, &Assignment::new().with(0, 0).with(1, 0)).unwrap());
    }

    #[test]
    fn translation_example() {
        let t = translate_eq_to_sim(&bijection_psi(2), SIM_SYMBOL);
        assert_eq!(
            t.to_string(),
            "(and (not (rel ~ x0 x1)) (forall (x2) (or (rel ~ x2 x0) (rel ~ x2 x1))))"
        );
        assert!(!t.has_equality());
    }

    fn accepted_unary(s: &Structure, phi: &Formula) -> Vec<Relation> {
        let extra = [("?R0", 1)];
        let mut c = Compiled::new(s, phi, &extra).unwrap();
        let mut out = Vec::new();
        for mask in 0..1u64 << s.size() {
            let r = Relation::from_mask(s.size(), 1, mask);
            c.bind("?R0", r.clone()).unwrap();
            if c.eval(&Assignment::new()).unwrap() {
                out.push(r);
            }
        }
        out
    }

    #[test]
    fn phi_examples() {
        let l = Limits::default();
        let s = Structure::empty(2)
            .unwrap()
            .with_relation("P", Relation::unary(2, &[0]).unwrap())
            .unwrap();
        let t1 = QuantifierType::monadic(1).unwrap();
        let none = Quantifier::new(2, t1.clone());
        let phi = build_phi_q(&s, &none.into(), &l).unwrap();
        assert!(accepted_unary(&s, &phi).is_empty());
        let all = Quantifier::from_members(2, t1, MemberSpace::new(2, &QuantifierType::monadic(1).unwrap(), &l).unwrap().members()).unwrap();
        let phi = build_phi_q(&s, &all.into(), &l).unwrap();
        assert_eq!(accepted_unary(&s, &phi).len(), 4);
        let q = Quantifier::monadic(2, &[&[0]]).unwrap();
        let phi = build_phi_q(&s, &q.into(), &l).unwrap();
        assert_eq!(accepted_unary(&s, &phi), vec![Relation::unary(2, &[0]).unwrap()]);
    }

    #[test]
    fn relation_target_defines_itself() {
        let l = Limits::default();
        let s = Structure::empty(3)
            .unwrap()
            .with_relation("E", Relation::from_tuples(3, 2, [[0, 1], [1, 2], [2, 0]]).unwrap())
            .unwrap();
        let target = Relation::from_tuples(3, 2, [[1, 0], [2, 1], [0, 2]]).unwrap();
        let phi = build_phi_q(&s, &target.clone().into(), &l).unwrap();
        let c = Compiled::new(&s, &phi, &[]).unwrap();
        assert_eq!(c.extension(&[3, 4], &Assignment::new()).unwrap(), target);
    }
}
