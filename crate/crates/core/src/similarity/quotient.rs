//! The maps `·/E` and `∪` between objects on a domain and on its blocks.

use super::relation::Similarity;
use crate::error::{Error, Result};
use crate::model::{saturated, tuple, EquivalencePartition, Permutation, Quantifier, Relation, Structure};

fn check_size(size: usize, e: &EquivalencePartition) -> Result<()> {
    if size != e.len() {
        return Err(Error::DomainMismatch {
            expected: e.len(),
            found: size,
        });
    }
    Ok(())
}

/// `{([a_1], …, [a_k]) : ā ∈ r}` on the block domain.
pub fn quotient_relation(r: &Relation, e: &EquivalencePartition) -> Result<Relation> {
    check_size(r.size(), e)?;
    let m = e.num_blocks();
    let mut out = Relation::empty(m, r.arity());
    let mut t = vec![0; r.arity()];
    for code in r.codes() {
        tuple::decode_into(r.size(), code, &mut t);
        for x in t.iter_mut() {
            *x = e.block(*x);
        }
        out.insert_code(tuple::encode(m, &t));
    }
    Ok(out)
}

/// `{ā : ([a_1], …, [a_k]) ∈ r}` on the original domain.
pub fn lift_relation(r: &Relation, e: &EquivalencePartition) -> Result<Relation> {
    if r.size() != e.num_blocks() {
        return Err(Error::DomainMismatch {
            expected: e.num_blocks(),
            found: r.size(),
        });
    }
    let n = e.len();
    let k = r.arity();
    let mut out = Relation::empty(n, k);
    let mut t = vec![0; k];
    for code in 0..n.pow(k as u32) {
        tuple::decode_into(n, code, &mut t);
        for x in t.iter_mut() {
            *x = e.block(*x);
        }
        if r.contains_code(tuple::encode(r.size(), &t)) {
            out.insert_code(code);
        }
    }
    Ok(out)
}

/// `{R̄' : ∪R̄' ∈ q}`: the members of `q` whose arguments are all saturated, pushed down.
pub fn quotient_quantifier(q: &Quantifier, e: &EquivalencePartition) -> Result<Quantifier> {
    check_size(q.size(), e)?;
    let mut out = Quantifier::new(e.num_blocks(), q.qtype().clone());
    for member in q.members() {
        let mut all = true;
        for r in member {
            if !saturated(r, e)? {
                all = false;
                break;
            }
        }
        if all {
            let down = member
                .iter()
                .map(|r| quotient_relation(r, e))
                .collect::<Result<Vec<_>>>()?;
            out.insert_unchecked(down);
        }
    }
    Ok(out)
}

/// `{∪R̄' : R̄' ∈ q}` on the original domain.
pub fn lift_quantifier(q: &Quantifier, e: &EquivalencePartition) -> Result<Quantifier> {
    if q.size() != e.num_blocks() {
        return Err(Error::DomainMismatch {
            expected: e.num_blocks(),
            found: q.size(),
        });
    }
    let mut out = Quantifier::new(e.len(), q.qtype().clone());
    for member in q.members() {
        let up = member.iter().map(|r| lift_relation(r, e)).collect::<Result<Vec<_>>>()?;
        out.insert_unchecked(up);
    }
    Ok(out)
}

/// The structure with every relation and quantifier pushed down, names kept.
pub fn quotient_structure(s: &Structure, e: &EquivalencePartition) -> Result<Structure> {
    check_size(s.size(), e)?;
    let mut out = Structure::empty(e.num_blocks())?;
    for (name, r) in s.relations() {
        out.add_relation(name.clone(), quotient_relation(r, e)?)?;
    }
    for (name, q) in s.quantifiers() {
        out.add_quantifier(name.clone(), quotient_quantifier(q, e)?)?;
    }
    Ok(out)
}

/// The structure with every relation and quantifier lifted, names kept.
pub fn lift_structure(s: &Structure, e: &EquivalencePartition) -> Result<Structure> {
    let mut out = Structure::empty(e.len())?;
    for (name, r) in s.relations() {
        out.add_relation(name.clone(), lift_relation(r, e)?)?;
    }
    for (name, q) in s.quantifiers() {
        out.add_quantifier(name.clone(), lift_quantifier(q, e)?)?;
    }
    Ok(out)
}

/// `[a] ↦ [b]` for `a p b`, which must be a well-defined bijection of blocks.
pub fn quotient_similarity(p: &Similarity, e: &EquivalencePartition) -> Result<Permutation> {
    check_size(p.size(), e)?;
    let m = e.num_blocks();
    let mut image: Vec<Option<usize>> = vec![None; m];
    for (a, b) in p.pairs() {
        let (x, y) = (e.block(a), e.block(b));
        match image[x] {
            None => image[x] = Some(y),
            Some(z) if z != y => {
                return Err(Error::NonFunctionalQuotient {
                    blocks: vec![x, z, y],
                })
            }
            _ => {}
        }
    }
    let images: Vec<usize> = image.into_iter().map(|i| i.expect("similarities are total")).collect();
    let mut hit = vec![false; m];
    for &y in &images {
        if hit[y] {
            let sources: Vec<usize> = (0..m).filter(|&x| images[x] == y).collect();
            return Err(Error::NonFunctionalQuotient { blocks: sources });
        }
        hit[y] = true;
    }
    Permutation::new(images)
}

/// `π_f = {(a, b) : f([a]) = [b]}`.
pub fn lift_permutation(f: &Permutation, e: &EquivalencePartition) -> Result<Similarity> {
    if f.degree() != e.num_blocks() {
        return Err(Error::DomainMismatch {
            expected: e.num_blocks(),
            found: f.degree(),
        });
    }
    let n = e.len();
    Similarity::new(
        n,
        (0..n).flat_map(|a| (0..n).filter(move |&b| f.apply(e.block(a)) == e.block(b)).map(move |b| (a, b))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_quotient_examples() {
        let e = EquivalencePartition::from_labels(&[0, 0, 1]);
        let r = Relation::unary(3, &[0, 1]).unwrap();
        let down = quotient_relation(&r, &e).unwrap();
        assert_eq!(down, Relation::unary(2, &[0]).unwrap());
        assert_eq!(lift_relation(&down, &e).unwrap(), r);
        let eq = EquivalencePartition::discrete(3);
        let r = Relation::from_tuples(3, 2, [[0, 1], [2, 2]]).unwrap();
        assert_eq!(quotient_relation(&r, &eq).unwrap(), r);
    }

    #[test]
    fn quantifier_quotient_drops_unsaturated_members() {
        let e = EquivalencePartition::single(4);
        let q = Quantifier::monadic(4, &[&[0, 2], &[0, 1, 2, 3]]).unwrap();
        let down = quotient_quantifier(&q, &e).unwrap();
        assert_eq!(down.len(), 1);
        let up = lift_quantifier(&down, &e).unwrap();
        assert_eq!(up, Quantifier::monadic(4, &[&[0, 1, 2, 3]]).unwrap());
    }

    #[test]
    fn similarity_quotients() {
        let e = EquivalencePartition::from_labels(&[0, 0, 1]);
        let pi_id = lift_permutation(&Permutation::identity(2), &e).unwrap();
        assert_eq!(pi_id.len(), 5);
        assert!(quotient_similarity(&pi_id, &e).unwrap().is_identity());
        let bad = Similarity::new(3, [(0, 0), (1, 2), (2, 1)]).unwrap();
        assert!(matches!(
            quotient_similarity(&bad, &e),
            Err(Error::NonFunctionalQuotient { .. })
        ));
        let eq = EquivalencePartition::discrete(3);
        let p = Similarity::new(3, [(0, 1), (1, 0), (2, 2)]).unwrap();
        assert_eq!(quotient_similarity(&p, &eq).unwrap().to_string(), "(0 1)");
    }
}
