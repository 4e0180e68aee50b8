use std::collections::BTreeSet;
use std::fmt;

use super::relation::{mask_is_similarity, Similarity};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::model::{EquivalencePartition, UnionFind};

/// A finite set of similarities on one domain, in canonical order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimilaritySet {
    size: usize,
    members: BTreeSet<Similarity>,
}

/// Closure properties of a [`SimilaritySet`], each verified by direct computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimilarityFlags {
    pub composition: bool,
    pub converse: bool,
    pub contains_approx: bool,
    pub subsimilarities: bool,
}

impl SimilarityFlags {
    pub fn is_monoid_with_involution(&self) -> bool {
        self.composition && self.converse
    }

    pub fn is_full(&self) -> bool {
        self.composition && self.converse && self.contains_approx && self.subsimilarities
    }
}

impl fmt::Display for SimilarityFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "composition={} converse={} contains_approx={} subsimilarities={}",
            self.composition, self.converse, self.contains_approx, self.subsimilarities
        )
    }
}

impl SimilaritySet {
    pub fn new(size: usize, members: impl IntoIterator<Item = Similarity>) -> Result<Self> {
        let members: BTreeSet<Similarity> = members.into_iter().collect();
        for m in &members {
            if m.size() != size {
                return Err(Error::DomainMismatch {
                    expected: size,
                    found: m.size(),
                });
            }
        }
        Ok(SimilaritySet { size, members })
    }

    pub fn empty(size: usize) -> Self {
        SimilaritySet {
            size,
            members: BTreeSet::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Similarity) -> bool {
        self.members.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Similarity> {
        self.members.iter()
    }

    pub fn is_subset(&self, other: &SimilaritySet) -> bool {
        self.size == other.size && self.members.is_subset(&other.members)
    }

    pub fn insert(&mut self, p: Similarity) -> Result<bool> {
        if p.size() != self.size {
            return Err(Error::DomainMismatch {
                expected: self.size,
                found: p.size(),
            });
        }
        Ok(self.members.insert(p))
    }

    /// For a downward-closed set only maximal members need testing, since
    /// `p' ⊆ p` and `q' ⊆ q` give `p';q' ⊆ p;q`.
    pub fn is_closed_under_composition(&self) -> bool {
        let maximal;
        let tested: Vec<&Similarity> = if self.is_closed_under_subsimilarities() {
            maximal = self.maximal();
            maximal.iter().collect()
        } else {
            self.members.iter().collect()
        };
        tested
            .iter()
            .all(|p| tested.iter().all(|q| self.members.contains(&p.compose_unchecked(q))))
    }

    /// Members not contained in a strictly larger member.
    pub fn maximal(&self) -> Vec<Similarity> {
        let n = self.size;
        let cells = n * n;
        self.members
            .iter()
            .filter(|p| {
                (0..cells).all(|bit| {
                    p.bits() >> bit & 1 == 1
                        || !self
                            .members
                            .contains(&Similarity::from_bits_unchecked(n, p.bits() | 1 << bit))
                })
            })
            .copied()
            .collect()
    }

    pub fn is_closed_under_converse(&self) -> bool {
        self.members.iter().all(|p| self.members.contains(&p.converse()))
    }

    /// Removing any single pair that leaves a similarity stays inside the set.
    /// By induction this covers every subsimilarity.
    pub fn is_closed_under_subsimilarities(&self) -> bool {
        let n = self.size;
        self.members.iter().all(|p| {
            let mut rest = p.bits();
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest &= rest - 1;
                let sub = p.bits() & !bit;
                if mask_is_similarity(n, sub) && !self.members.contains(&Similarity::from_bits_unchecked(n, sub)) {
                    return false;
                }
            }
            true
        })
    }

    /// The four closure flags; `contains_approx` refers to the equivalence
    /// induced by the set's involution-monoid closure.
    pub fn flags(&self, limits: &Limits) -> Result<SimilarityFlags> {
        let composition = self.is_closed_under_composition();
        let converse = self.is_closed_under_converse();
        let contains_approx = if self.is_empty() {
            false
        } else {
            let e = approx_equiv(self, limits)?;
            self.contains(&Similarity::from_partition(&e)?)
        };
        Ok(SimilarityFlags {
            composition,
            converse,
            contains_approx,
            subsimilarities: self.is_closed_under_subsimilarities(),
        })
    }
}

impl fmt::Display for SimilaritySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SimilaritySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimilaritySet{self}")
    }
}

impl<'a> IntoIterator for &'a SimilaritySet {
    type Item = &'a Similarity;
    type IntoIter = std::collections::btree_set::Iter<'a, Similarity>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Number of similarities on `n` points is below `2^(n²)`; this guards the enumeration.
fn check_space(n: usize, limits: &Limits) -> Result<()> {
    limits.check_similarity_degree(n)
}

/// Every similarity on `n` points, in canonical order.
pub fn all_similarities(n: usize, limits: &Limits) -> Result<SimilaritySet> {
    check_space(n, limits)?;
    if n == 0 {
        return Ok(SimilaritySet::empty(0));
    }
    let total = Similarity::total(n)?;
    SimilaritySet::new(n, total.subsimilarities())
}

/// The least superset closed under composition and converse.
pub fn monoid_closure(p: &SimilaritySet, limits: &Limits) -> Result<SimilaritySet> {
    check_space(p.size(), limits)?;
    let gens: Vec<Similarity> = p
        .iter()
        .flat_map(|g| [*g, g.converse()])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut seen: BTreeSet<Similarity> = gens.iter().copied().collect();
    let mut queue: Vec<Similarity> = gens.clone();
    while let Some(x) = queue.pop() {
        for g in &gens {
            let y = x.compose_unchecked(g);
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    SimilaritySet::new(p.size(), seen)
}

/// `a ≈ b` iff some member of the involution-monoid closure contains the
/// diagonal together with `(a, b)`. The input is closed first when it is not
/// already a monoid with involution.
pub fn approx_equiv(p: &SimilaritySet, limits: &Limits) -> Result<EquivalencePartition> {
    if p.is_empty() {
        return Err(Error::Precondition("the similarity set is empty".into()));
    }
    let closed;
    let m = if p.is_closed_under_converse() && p.is_closed_under_composition() {
        p
    } else {
        closed = monoid_closure(p, limits)?;
        &closed
    };
    let n = p.size();
    let mut uf = UnionFind::new(n);
    for pi in m.iter().filter(|pi| pi.contains_diagonal()) {
        for (a, b) in pi.pairs() {
            uf.union(a, b);
        }
    }
    Ok(uf.partition())
}

/// The least superset closed under composition, converse and
/// subsimilarities, and containing its own `≈`; iterated to a fixpoint
/// because `≈` can coarsen as the set grows.
pub fn full_monoid_closure(p: &SimilaritySet, limits: &Limits) -> Result<SimilaritySet> {
    check_space(p.size(), limits)?;
    if p.is_empty() {
        return Ok(p.clone());
    }
    let mut current = p.clone();
    loop {
        let m = monoid_closure(&current, limits)?;
        let approx = Similarity::from_partition(&approx_equiv(&m, limits)?)?;
        let mut next: BTreeSet<Similarity> = BTreeSet::new();
        for top in m.iter().chain(std::iter::once(&approx)) {
            if next.contains(top) {
                continue;
            }
            next.extend(top.subsimilarities());
        }
        let next = SimilaritySet::new(p.size(), next)?;
        if next == current {
            return Ok(next);
        }
        current = next;
    }
}

/// Every similarity contained in some member.
pub fn downward_closure(p: &SimilaritySet) -> SimilaritySet {
    let mut out: BTreeSet<Similarity> = BTreeSet::new();
    for top in p.iter() {
        if !out.contains(top) {
            out.extend(top.subsimilarities());
        }
    }
    SimilaritySet {
        size: p.size(),
        members: out,
    }
}
