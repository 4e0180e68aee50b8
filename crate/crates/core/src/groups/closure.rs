use super::orbit::{orbits, OrbitPartition};
use super::set::PermutationSet;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::model::{
    all_permutations, permute_relation, tuple, Domain, Permutation, Quantifier, QuantifierType, Relation, Structure,
};

/// Relations `orb_k_i`: every orbit of `⟨H⟩` on `Ω^k` for `1 ≤ k ≤ k_max`.
pub fn canonical_structure(h: &PermutationSet, k_max: usize, limits: &Limits) -> Result<Structure> {
    let mut s = Structure::new(Domain::new(h.degree())?);
    for k in 1..=k_max {
        let o = orbits(h, k, limits)?;
        for (i, r) in o.relations().into_iter().enumerate() {
            s.add_relation(format!("orb_{k}_{i}"), r)?;
        }
    }
    Ok(s)
}

/// All `g ∈ S_n` with `g(a) = b`.
pub fn tuple_coset(n: usize, a: &[usize], b: &[usize], limits: &Limits) -> Result<PermutationSet> {
    if a.len() != b.len() {
        return Err(Error::ArityMismatch {
            name: "tuple coset".into(),
            expected: a.len(),
            found: b.len(),
        });
    }
    let domain = Domain::new(n)?;
    for &x in a.iter().chain(b) {
        domain.check_element(x)?;
    }
    limits.check_group_degree(n)?;
    let mut image = vec![usize::MAX; n];
    let mut preimage = vec![usize::MAX; n];
    for (&x, &y) in a.iter().zip(b) {
        if (image[x] != usize::MAX && image[x] != y) || (preimage[y] != usize::MAX && preimage[y] != x) {
            return PermutationSet::empty(n);
        }
        image[x] = y;
        preimage[y] = x;
    }
    let free_sources: Vec<usize> = (0..n).filter(|&x| image[x] == usize::MAX).collect();
    let free_targets: Vec<usize> = (0..n).filter(|&y| preimage[y] == usize::MAX).collect();
    let perms = all_permutations(free_sources.len()).map(|p| {
        let mut images = image.clone();
        for (i, &x) in free_sources.iter().enumerate() {
            images[x] = free_targets[p.apply(i)];
        }
        Permutation::new(images).expect("extension of a partial bijection")
    });
    PermutationSet::new(n, perms.collect::<Vec<_>>())
}

fn preserves_orbits(g: &Permutation, o: &OrbitPartition) -> bool {
    let n = o.size();
    let k = o.arity();
    let mut buf = vec![0; k];
    (0..o.partition().len()).all(|c| {
        tuple::decode_into(n, c, &mut buf);
        let img = buf.iter().fold(0, |acc, &x| acc * n + g.apply(x));
        o.orbit_of_code(img) == o.orbit_of_code(c)
    })
}

/// `{ g : every ā ∈ Ω^k has g(ā) in the ⟨H⟩-orbit of ā }`.
pub fn k_closure(h: &PermutationSet, k: usize, limits: &Limits) -> Result<PermutationSet> {
    let n = h.degree();
    limits.check_group_degree(n)?;
    let o = orbits(h, k, limits)?;
    let elements: Vec<Permutation> = all_permutations(n).filter(|g| preserves_orbits(g, &o)).collect();
    Ok(PermutationSet::group_unchecked(n, elements, Vec::new()))
}

/// `g*` on the `2^n` subsets of `Ω`, subsets coded as bitmasks.
pub fn set_action(g: &Permutation, limits: &Limits) -> Result<Permutation> {
    let n = g.degree();
    let count = limits.tuple_space(2, n)?;
    let images = (0..count)
        .map(|mask| {
            (0..n)
                .filter(|&a| mask >> a & 1 == 1)
                .fold(0usize, |acc, a| acc | 1 << g.apply(a))
        })
        .collect();
    Permutation::new(images)
}

/// `H* = { g* : g ∈ H }`, as a set acting on subset masks.
pub fn subset_action_group(h: &PermutationSet, limits: &Limits) -> Result<PermutationSet> {
    let size = limits.tuple_space(2, h.degree())?;
    let gens = h
        .action_generators()
        .iter()
        .map(|g| set_action(g, limits))
        .collect::<Result<Vec<_>>>()?;
    PermutationSet::new(size, gens)
}

fn subset_sequence_orbits(h: &PermutationSet, m: usize, limits: &Limits) -> Result<OrbitPartition> {
    let star = subset_action_group(h, limits)?;
    orbits(&star, m, limits)
}

/// `{ g : every m-sequence of subsets has g*Ā in the ⟨H⟩*-orbit of Ā }`.
pub fn set_closure(h: &PermutationSet, m: usize, limits: &Limits) -> Result<PermutationSet> {
    let n = h.degree();
    limits.check_group_degree(n)?;
    let o = subset_sequence_orbits(h, m, limits)?;
    let elements: Vec<Permutation> = all_permutations(n)
        .filter(|g| {
            let star = set_action(g, limits).expect("guard already checked");
            preserves_orbits(&star, &o)
        })
        .collect();
    Ok(PermutationSet::group_unchecked(n, elements, Vec::new()))
}

/// Quantifiers `mon_m_i` of type `(1, …, 1)`: the `⟨H⟩*`-orbits of m-sequences of subsets.
pub fn canonical_monadic_structure(h: &PermutationSet, m: usize, limits: &Limits) -> Result<Structure> {
    let n = h.degree();
    let o = subset_sequence_orbits(h, m, limits)?;
    let qtype = QuantifierType::monadic(m)?;
    let mut quantifiers: Vec<Quantifier> = vec![Quantifier::new(n, qtype.clone()); o.num_orbits()];
    let subsets = 1usize << n;
    let mut masks = vec![0; m];
    for code in 0..o.partition().len() {
        tuple::decode_into(subsets, code, &mut masks);
        let member: Vec<Relation> = masks.iter().map(|&mask| Relation::from_mask(n, 1, mask as u64)).collect();
        quantifiers[o.orbit_of_code(code)].insert_unchecked(member);
    }
    let mut s = Structure::new(Domain::new(n)?);
    for (i, q) in quantifiers.into_iter().enumerate() {
        s.add_quantifier(format!("mon_{m}_{i}"), q)?;
    }
    Ok(s)
}

fn check_strict_total_order(ord: &Relation) -> Result<()> {
    let n = ord.size();
    if ord.arity() != 2 {
        return Err(Error::Precondition("order must be a binary relation".into()));
    }
    for a in 0..n {
        if ord.contains(&[a, a]) {
            return Err(Error::Precondition(format!("order is not irreflexive at {a}")));
        }
        for b in 0..n {
            if a != b && ord.contains(&[a, b]) == ord.contains(&[b, a]) {
                return Err(Error::Precondition(format!("{a} and {b} are not strictly comparable")));
            }
            for c in 0..n {
                if ord.contains(&[a, b]) && ord.contains(&[b, c]) && !ord.contains(&[a, c]) {
                    return Err(Error::Precondition(format!("order is not transitive on {a},{b},{c}")));
                }
            }
        }
    }
    Ok(())
}

/// `{ h : h(<) = g(<) }` for a strict total order `<`.
pub fn order_coset(g: &Permutation, ord: &Relation, limits: &Limits) -> Result<PermutationSet> {
    let n = g.degree();
    if ord.size() != n {
        return Err(Error::DomainMismatch {
            expected: n,
            found: ord.size(),
        });
    }
    check_strict_total_order(ord)?;
    limits.check_group_degree(n)?;
    let target = permute_relation(g, ord);
    let elements: Vec<Permutation> = all_permutations(n).filter(|h| permute_relation(h, ord) == target).collect();
    PermutationSet::new(n, elements)
}

/// Points moved by `g`.
pub fn support(g: &Permutation) -> Vec<usize> {
    (0..g.degree()).filter(|&a| g.apply(a) != a).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{alternating, cyclic, generate, symmetric};

    fn p(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn canonical_structure_examples() {
        let l = Limits::default();
        let s = canonical_structure(&symmetric(3, &l).unwrap(), 1, &l).unwrap();
        assert_eq!(s.relation_count(), 1);
        assert!(s.relation("orb_1_0").unwrap().is_full());
        let s = canonical_structure(&PermutationSet::trivial(2), 1, &l).unwrap();
        assert_eq!(s.relation("orb_1_0").unwrap(), &Relation::unary(2, &[0]).unwrap());
        assert_eq!(s.relation("orb_1_1").unwrap(), &Relation::unary(2, &[1]).unwrap());
        let s = canonical_structure(&alternating(4, &l).unwrap(), 2, &l).unwrap();
        let binary: Vec<_> = s.relations().filter(|(_, r)| r.arity() == 2).collect();
        assert_eq!(binary.len(), 2);
        assert_eq!(binary[0].1.len(), 4);
        assert_eq!(binary[1].1.len(), 12);
    }

    #[test]
    fn tuple_coset_examples() {
        let l = Limits::default();
        assert_eq!(tuple_coset(2, &[], &[], &l).unwrap().len(), 2);
        let c = tuple_coset(2, &[0, 1], &[1, 0], &l).unwrap();
        assert_eq!(c.elements(), &[p(2, &[&[0, 1]])]);
        let c = tuple_coset(3, &[0], &[1], &l).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|g| g.apply(0) == 1));
        assert!(tuple_coset(3, &[0, 0], &[1, 2], &l).unwrap().is_empty());
        assert!(tuple_coset(3, &[0], &[1, 2], &l).is_err());
    }

    #[test]
    fn k_closure_examples() {
        let l = Limits::default();
        let id = PermutationSet::trivial(3);
        assert_eq!(k_closure(&id, 1, &l).unwrap(), id);
        let c3 = cyclic(3, &l).unwrap();
        assert_eq!(k_closure(&c3, 1, &l).unwrap(), symmetric(3, &l).unwrap());
        assert_eq!(k_closure(&c3, 2, &l).unwrap(), c3);
        let a4 = alternating(4, &l).unwrap();
        assert_eq!(k_closure(&a4, 2, &l).unwrap(), symmetric(4, &l).unwrap());
        assert_eq!(k_closure(&a4, 4, &l).unwrap(), a4);
    }

    #[test]
    fn set_action_examples() {
        let l = Limits::default();
        assert!(set_action(&Permutation::identity(3), &l).unwrap().is_identity());
        assert_eq!(set_action(&p(2, &[&[0, 1]]), &l).unwrap().apply(0b01), 0b10);
        assert_eq!(set_action(&p(3, &[&[0, 1, 2]]), &l).unwrap().apply(0b101), 0b011);
    }

    #[test]
    fn set_closure_examples() {
        let l = Limits::default();
        let id = PermutationSet::trivial(3);
        assert_eq!(set_closure(&id, 1, &l).unwrap(), id);
        let c3 = cyclic(3, &l).unwrap();
        assert_eq!(set_closure(&c3, 1, &l).unwrap(), symmetric(3, &l).unwrap());
        let a4 = alternating(4, &l).unwrap();
        assert_eq!(set_closure(&a4, 4, &l).unwrap(), a4);
    }

    #[test]
    fn canonical_monadic_examples() {
        let l = Limits::default();
        let s = canonical_monadic_structure(&symmetric(3, &l).unwrap(), 1, &l).unwrap();
        assert_eq!(s.quantifier_count(), 4);
        let sizes: Vec<usize> = s.quantifiers().map(|(_, q)| q.len()).collect();
        assert_eq!(sizes, vec![1, 3, 3, 1]);
        let s = canonical_monadic_structure(&PermutationSet::trivial(2), 1, &l).unwrap();
        assert_eq!(s.quantifier_count(), 4);
        assert!(s.quantifiers().all(|(_, q)| q.len() == 1));
    }

    #[test]
    fn order_coset_is_singleton() {
        let l = Limits::default();
        let lt = Relation::from_tuples(3, 2, [[0, 1], [0, 2], [1, 2]]).unwrap();
        let id = Permutation::identity(3);
        assert_eq!(order_coset(&id, &lt, &l).unwrap().elements(), &[id]);
        let lt2 = Relation::from_tuples(2, 2, [[0, 1]]).unwrap();
        let s = p(2, &[&[0, 1]]);
        assert_eq!(order_coset(&s, &lt2, &l).unwrap().elements(), &[s]);
        assert!(order_coset(&Permutation::identity(2), &Relation::full(2, 2), &l).is_err());
        let lt4 = Relation::from_tuples(4, 2, (0..4).flat_map(|a| (a + 1..4).map(move |b| [a, b]))).unwrap();
        for g in all_permutations(4) {
            assert_eq!(order_coset(&g, &lt4, &l).unwrap().elements(), &[g]);
        }
    }

    #[test]
    fn support_examples() {
        assert!(support(&Permutation::identity(3)).is_empty());
        assert_eq!(support(&p(3, &[&[0, 1]])), vec![0, 1]);
        assert_eq!(support(&p(4, &[&[0, 1, 2]])), vec![0, 1, 2]);
    }

    #[test]
    fn closures_contain_the_group() {
        let l = Limits::default();
        let h = generate(&PermutationSet::new(4, [p(4, &[&[0, 1], &[2, 3]])]).unwrap(), &l).unwrap();
        for k in 0..=4 {
            assert!(h.is_subset(&k_closure(&h, k, &l).unwrap()));
        }
    }
}
