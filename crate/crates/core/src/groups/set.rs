use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::model::{all_permutations, Permutation};

/// A finite set of permutations of a common degree.
///
/// Elements are kept sorted and deduplicated. `generators` records what the
/// set was built from (the elements themselves for plain sets); equality
/// ignores it. The `is_group` flag is only set by constructions that produce
/// groups, and [`PermutationSet::verify_group`] re-checks it by exhaustion.
#[derive(Clone)]
pub struct PermutationSet {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
    is_group: bool,
}

impl PartialEq for PermutationSet {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermutationSet {}

fn check_degrees<'a>(degree: usize, perms: impl IntoIterator<Item = &'a Permutation>) -> Result<()> {
    for p in perms {
        if p.degree() != degree {
            return Err(Error::DomainMismatch {
                expected: degree,
                found: p.degree(),
            });
        }
    }
    Ok(())
}

fn sorted(perms: impl IntoIterator<Item = Permutation>) -> Vec<Permutation> {
    perms.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

impl PermutationSet {
    /// A plain set; not marked as a group even if it happens to be one.
    pub fn new(degree: usize, perms: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Invalid("domain size must be at least 1".into()));
        }
        let elements = sorted(perms);
        check_degrees(degree, &elements)?;
        Ok(PermutationSet {
            degree,
            generators: elements.clone(),
            elements,
            is_group: false,
        })
    }

    pub fn empty(degree: usize) -> Result<Self> {
        PermutationSet::new(degree, [])
    }

    pub(crate) fn group_unchecked(
        degree: usize,
        elements: impl IntoIterator<Item = Permutation>,
        generators: Vec<Permutation>,
    ) -> Self {
        PermutationSet {
            degree,
            elements: sorted(elements),
            generators,
            is_group: true,
        }
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationSet::group_unchecked(degree, [Permutation::identity(degree)], Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn is_group(&self) -> bool {
        self.is_group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Permutation> {
        self.elements.iter()
    }

    pub fn is_subset(&self, other: &PermutationSet) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    /// Exhaustive check: non-empty, contains the identity, closed under
    /// composition and inverse.
    pub fn verify_group(&self) -> bool {
        self.contains(&Permutation::identity(self.degree))
            && self.elements.iter().all(|g| self.contains(&g.inverse()))
            && self
                .elements
                .iter()
                .all(|g| self.elements.iter().all(|h| self.contains(&g.compose(h))))
    }

    /// Generators if recorded, otherwise the elements; enough to test invariance.
    pub(crate) fn action_generators(&self) -> &[Permutation] {
        if self.is_group && !self.generators.is_empty() {
            &self.generators
        } else {
            &self.elements
        }
    }
}

impl fmt::Display for PermutationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|g| g.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for PermutationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermutationSet(degree {}, {} elements){}", self.degree, self.len(), self)
    }
}

impl<'a> IntoIterator for &'a PermutationSet {
    type Item = &'a Permutation;
    type IntoIter = std::slice::Iter<'a, Permutation>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

/// `⟨gens⟩`, by breadth-first closure under left multiplication by generators.
pub fn generate(gens: &PermutationSet, limits: &Limits) -> Result<PermutationSet> {
    let n = gens.degree();
    limits.check_group_degree(n)?;
    let generators: Vec<Permutation> = gens.elements().iter().filter(|g| !g.is_identity()).cloned().collect();
    let id = Permutation::identity(n);
    let mut seen: BTreeSet<Permutation> = BTreeSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &generators {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    Ok(PermutationSet::group_unchecked(n, seen, generators))
}

/// The full symmetric group `S_n`.
pub fn symmetric(n: usize, limits: &Limits) -> Result<PermutationSet> {
    limits.check_group_degree(n)?;
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(n, &[&[0, 1]])?);
        let cycle: Vec<usize> = (0..n).collect();
        gens.push(Permutation::from_cycles(n, &[&cycle])?);
    }
    Ok(PermutationSet::group_unchecked(n, all_permutations(n), gens))
}

fn is_even(g: &Permutation) -> bool {
    g.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
}

/// The alternating group `A_n`.
pub fn alternating(n: usize, limits: &Limits) -> Result<PermutationSet> {
    limits.check_group_degree(n)?;
    let elements: Vec<Permutation> = all_permutations(n).filter(is_even).collect();
    let gens = (2..n)
        .map(|i| Permutation::from_cycles(n, &[&[0, 1, i]]))
        .collect::<Result<Vec<_>>>()?;
    Ok(PermutationSet::group_unchecked(n, elements, gens))
}

/// The cyclic group generated by `(0 1 … n-1)`.
pub fn cyclic(n: usize, limits: &Limits) -> Result<PermutationSet> {
    let cycle: Vec<usize> = (0..n).collect();
    let g = if n >= 2 {
        Permutation::from_cycles(n, &[&cycle])?
    } else {
        Permutation::identity(n)
    };
    generate(&PermutationSet::new(n, [g])?, limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn generation_examples() {
        let l = Limits::default();
        let g = generate(&PermutationSet::empty(3).unwrap(), &l).unwrap();
        assert_eq!(g.elements(), &[Permutation::identity(3)]);
        let g = generate(&PermutationSet::new(2, [p(2, &[&[0, 1]])]).unwrap(), &l).unwrap();
        assert_eq!(g.len(), 2);
        let g = generate(&PermutationSet::new(3, [p(3, &[&[0, 1]]), p(3, &[&[0, 1, 2]])]).unwrap(), &l).unwrap();
        assert_eq!(g.len(), 6);
        assert!(g.is_group() && g.verify_group());
    }

    #[test]
    fn named_groups() {
        let l = Limits::default();
        assert_eq!(symmetric(4, &l).unwrap().len(), 24);
        assert_eq!(alternating(4, &l).unwrap().len(), 12);
        assert_eq!(cyclic(5, &l).unwrap().len(), 5);
        assert!(alternating(4, &l).unwrap().verify_group());
        let a4 = alternating(4, &l).unwrap();
        assert_eq!(generate(&PermutationSet::new(4, a4.generators().to_vec()).unwrap(), &l).unwrap(), a4);
    }

    #[test]
    fn degree_guard() {
        let l = Limits::default();
        assert!(matches!(
            generate(&PermutationSet::empty(9).unwrap(), &l),
            Err(Error::ResourceLimit { bound: 8, .. })
        ));
    }
}
