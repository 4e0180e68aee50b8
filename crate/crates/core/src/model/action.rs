//! The pointwise action of permutations on tuples, relations and quantifiers.

use super::permutation::Permutation;
use super::quantifier::Quantifier;
use super::relation::Relation;
use super::structure::{Object, Structure};
use super::tuple;
use crate::error::{Error, Result};

fn check_size(g: &Permutation, size: usize) -> Result<()> {
    if g.degree() != size {
        return Err(Error::DomainMismatch {
            expected: g.degree(),
            found: size,
        });
    }
    Ok(())
}

/// `(g(t_0), …, g(t_{k-1}))`.
pub fn apply_perm_tuple(g: &Permutation, t: &[usize]) -> Result<Vec<usize>> {
    t.iter()
        .map(|&x| {
            if x >= g.degree() {
                Err(Error::DomainMismatch {
                    expected: g.degree(),
                    found: x + 1,
                })
            } else {
                Ok(g.apply(x))
            }
        })
        .collect()
}

pub(crate) fn permute_relation(g: &Permutation, r: &Relation) -> Relation {
    let n = r.size();
    let mut buf = vec![0; r.arity()];
    Relation::from_codes(
        n,
        r.arity(),
        r.codes().map(|c| {
            tuple::decode_into(n, c, &mut buf);
            buf.iter().fold(0, |acc, &x| acc * n + g.apply(x))
        }),
    )
}

/// `gR = { g(t) : t ∈ R }`.
pub fn apply_perm_relation(g: &Permutation, r: &Relation) -> Result<Relation> {
    check_size(g, r.size())?;
    Ok(permute_relation(g, r))
}

pub(crate) fn permute_quantifier(g: &Permutation, q: &Quantifier) -> Quantifier {
    let mut out = Quantifier::new(q.size(), q.qtype().clone());
    for m in q.members() {
        out.insert_unchecked(m.iter().map(|r| permute_relation(g, r)).collect());
    }
    out
}

/// `gQ = { (gR_1, …, gR_k) : (R_1, …, R_k) ∈ Q }`.
pub fn apply_perm_quantifier(g: &Permutation, q: &Quantifier) -> Result<Quantifier> {
    check_size(g, q.size())?;
    Ok(permute_quantifier(g, q))
}

pub fn apply_perm_object(g: &Permutation, x: &Object) -> Result<Object> {
    Ok(match x {
        Object::Relation(r) => Object::Relation(apply_perm_relation(g, r)?),
        Object::Quantifier(q) => Object::Quantifier(apply_perm_quantifier(g, q)?),
    })
}

/// True iff `gx = x`.
pub fn fixes(g: &Permutation, x: &Object) -> Result<bool> {
    check_size(g, x.size())?;
    Ok(match x {
        Object::Relation(r) => permute_relation(g, r) == *r,
        Object::Quantifier(q) => fixes_quantifier(g, q),
    })
}

pub(crate) fn fixes_quantifier(g: &Permutation, q: &Quantifier) -> bool {
    q.members().all(|m| {
        let image: Vec<Relation> = m.iter().map(|r| permute_relation(g, r)).collect();
        q.contains(&image)
    })
}

/// True iff `g` fixes every relation and every quantifier of `s`.
pub fn preserves(g: &Permutation, s: &Structure) -> Result<bool> {
    check_size(g, s.size())?;
    Ok(s.relations().all(|(_, r)| permute_relation(g, r) == *r)
        && s.quantifiers().all(|(_, q)| fixes_quantifier(g, q)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_action() {
        let id = Permutation::identity(3);
        assert_eq!(apply_perm_tuple(&id, &[0, 2]).unwrap(), vec![0, 2]);
        let s = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
        assert_eq!(apply_perm_tuple(&s, &[0, 1]).unwrap(), vec![1, 0]);
        let c = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert_eq!(apply_perm_tuple(&c, &[0, 0, 2]).unwrap(), vec![1, 1, 0]);
        assert!(apply_perm_tuple(&s, &[2]).is_err());
    }

    #[test]
    fn relation_action() {
        let c = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let r = Relation::from_tuples(3, 2, [[0, 1], [1, 2]]).unwrap();
        let expected = Relation::from_tuples(3, 2, [[1, 2], [2, 0]]).unwrap();
        assert_eq!(apply_perm_relation(&c, &r).unwrap(), expected);
        let s = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
        assert_eq!(
            apply_perm_relation(&s, &Relation::unary(2, &[0]).unwrap()).unwrap(),
            Relation::unary(2, &[1]).unwrap()
        );
        assert!(apply_perm_relation(&s, &r).is_err());
    }

    #[test]
    fn quantifier_action() {
        let c = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let q = Quantifier::monadic(3, &[&[0, 2]]).unwrap();
        assert_eq!(
            apply_perm_quantifier(&c, &q).unwrap(),
            Quantifier::monadic(3, &[&[0, 1]]).unwrap()
        );
        let s = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
        let q2 = Quantifier::monadic(2, &[&[0]]).unwrap();
        assert_eq!(
            apply_perm_quantifier(&s, &q2).unwrap(),
            Quantifier::monadic(2, &[&[1]]).unwrap()
        );
    }

    #[test]
    fn preservation() {
        let s2 = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
        let p = Structure::empty(2)
            .unwrap()
            .with_relation("P", Relation::unary(2, &[0]).unwrap())
            .unwrap();
        assert!(!preserves(&s2, &p).unwrap());
        assert!(preserves(&Permutation::identity(2), &p).unwrap());
        let q = Structure::empty(3)
            .unwrap()
            .with_quantifier("Q", Quantifier::monadic(3, &[&[0, 1]]).unwrap())
            .unwrap();
        let s3 = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        assert!(preserves(&s3, &q).unwrap());
    }
}
