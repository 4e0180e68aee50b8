use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::Result;
use crate::groups::PermutationSet;
use crate::limits::Limits;
use crate::model::{fixes_quantifier, tuple, Permutation, Structure};

/// Tuples of one arity, labelled by which relations contain them.
struct ArityCheck {
    labels: Vec<u32>,
    /// For each point `i`, the tuples over `{0..=i}` that mention `i`.
    by_point: Vec<Vec<Vec<usize>>>,
    codes_by_point: Vec<Vec<usize>>,
}

fn arity_checks(s: &Structure) -> Vec<ArityCheck> {
    let n = s.size();
    let mut by_arity: BTreeMap<usize, Vec<&crate::model::Relation>> = BTreeMap::new();
    for (_, r) in s.relations() {
        if r.arity() > 0 {
            by_arity.entry(r.arity()).or_default().push(r);
        }
    }
    by_arity
        .into_iter()
        .map(|(k, rels)| {
            let space = rels[0].space_len();
            let mut intern: HashMap<Vec<usize>, u32> = HashMap::new();
            let labels = (0..space)
                .map(|c| {
                    let key: Vec<usize> = (0..rels.len()).filter(|&j| rels[j].contains_code(c)).collect();
                    let next = intern.len() as u32;
                    *intern.entry(key).or_insert(next)
                })
                .collect();
            let mut by_point = vec![Vec::new(); n];
            let mut codes_by_point = vec![Vec::new(); n];
            for c in 0..space {
                let t = tuple::decode(n, k, c);
                let top = *t.iter().max().expect("positive arity");
                by_point[top].push(t);
                codes_by_point[top].push(c);
            }
            ArityCheck {
                labels,
                by_point,
                codes_by_point,
            }
        })
        .collect()
}

struct Search<'a> {
    n: usize,
    checks: &'a [ArityCheck],
    structure: &'a Structure,
    images: Vec<usize>,
    used: Vec<bool>,
    found: Vec<Permutation>,
}

impl Search<'_> {
    fn consistent(&self, i: usize) -> bool {
        self.checks.iter().all(|chk| {
            chk.by_point[i].iter().zip(&chk.codes_by_point[i]).all(|(t, &c)| {
                let img = t.iter().fold(0, |acc, &x| acc * self.n + self.images[x]);
                chk.labels[img] == chk.labels[c]
            })
        })
    }

    fn run(&mut self, i: usize) {
        if i == self.n {
            let g = Permutation::new(self.images.clone()).expect("injective assignment");
            if self.structure.quantifiers().all(|(_, q)| fixes_quantifier(&g, q)) {
                self.found.push(g);
            }
            return;
        }
        for y in 0..self.n {
            if self.used[y] {
                continue;
            }
            self.images[i] = y;
            if self.consistent(i) {
                self.used[y] = true;
                self.run(i + 1);
                self.used[y] = false;
            }
        }
    }
}

/// A small generating set, chosen greedily in element order.
pub(crate) fn greedy_generators(elements: &[Permutation]) -> Vec<Permutation> {
    let Some(first) = elements.first() else {
        return Vec::new();
    };
    let id = Permutation::identity(first.degree());
    let mut span: BTreeSet<Permutation> = BTreeSet::from([id]);
    let mut gens: Vec<Permutation> = Vec::new();
    for g in elements {
        if span.contains(g) {
            continue;
        }
        gens.push(g.clone());
        let mut frontier: Vec<Permutation> = span.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for h in &gens {
                let y = h.compose(&x);
                if span.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

/// The automorphism group: permutations fixing every relation and quantifier.
///
/// Backtracks over images of `0, 1, …`, checking each relation arity
/// (ascending) on the tuples completed by the latest point. Quantifiers are
/// checked on complete candidates only.
pub fn aut(s: &Structure, limits: &Limits) -> Result<PermutationSet> {
    let n = s.size();
    limits.check_group_degree(n)?;
    let checks = arity_checks(s);
    let mut search = Search {
        n,
        checks: &checks,
        structure: s,
        images: vec![0; n],
        used: vec![false; n],
        found: Vec::new(),
    };
    search.run(0);
    let gens = greedy_generators(&search.found);
    Ok(PermutationSet::group_unchecked(n, search.found, gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::generate;
    use crate::model::{Quantifier, Relation};

    #[test]
    fn aut_examples() {
        let l = Limits::default();
        assert_eq!(aut(&Structure::empty(3).unwrap(), &l).unwrap().len(), 6);
        let s = Structure::empty(2)
            .unwrap()
            .with_relation("P", Relation::unary(2, &[0]).unwrap())
            .unwrap();
        assert_eq!(aut(&s, &l).unwrap(), PermutationSet::trivial(2));
        let s = Structure::empty(3)
            .unwrap()
            .with_quantifier("Q", Quantifier::monadic(3, &[&[0, 1]]).unwrap())
            .unwrap();
        let g = aut(&s, &l).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g.contains(&Permutation::from_cycles(3, &[&[0, 1]]).unwrap()));
    }

    #[test]
    fn generators_span_the_group() {
        let l = Limits::default();
        let g = aut(&Structure::empty(5).unwrap(), &l).unwrap();
        assert_eq!(g.len(), 120);
        assert!(g.generators().len() <= 7);
        let regenerated = generate(&PermutationSet::new(5, g.generators().to_vec()).unwrap(), &l).unwrap();
        assert_eq!(regenerated, g);
    }
}
