use std::collections::HashMap;
use std::hash::Hash;

use super::relation::Relation;
use super::tuple;
use crate::error::{Error, Result};

/// A partition of `{0, …, len-1}` given by block indices.
///
/// Block indices are canonical: blocks are numbered in order of their least
/// element, so two partitions are equal iff they induce the same equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EquivalencePartition {
    block_of: Vec<usize>,
    blocks: usize,
}

impl EquivalencePartition {
    /// Partition induced by arbitrary keys: elements with equal keys share a block.
    pub fn from_keys<K: Eq + Hash>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut ids: HashMap<K, usize> = HashMap::new();
        let block_of: Vec<usize> = keys
            .into_iter()
            .map(|k| {
                let next = ids.len();
                *ids.entry(k).or_insert(next)
            })
            .collect();
        EquivalencePartition {
            block_of,
            blocks: ids.len(),
        }
    }

    /// Checked constructor from any block labelling (relabelled canonically).
    pub fn from_labels(labels: &[usize]) -> Self {
        EquivalencePartition::from_keys(labels.iter().copied())
    }

    /// The equality partition: every element alone.
    pub fn discrete(len: usize) -> Self {
        EquivalencePartition {
            block_of: (0..len).collect(),
            blocks: len,
        }
    }

    /// A single block.
    pub fn single(len: usize) -> Self {
        EquivalencePartition {
            block_of: vec![0; len],
            blocks: usize::from(len > 0),
        }
    }

    pub fn from_blocks(len: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; len];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                if x >= len {
                    return Err(Error::OutOfDomain { element: x, size: len });
                }
                if labels[x] != usize::MAX {
                    return Err(Error::Invalid(format!("element {x} in two blocks")));
                }
                labels[x] = i;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::Invalid(format!("element {x} in no block")));
        }
        Ok(EquivalencePartition::from_labels(&labels))
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    #[inline]
    pub fn block(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.block_of
    }

    #[inline]
    pub fn same(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    /// Blocks as sorted member lists, in block-index order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (x, &b) in self.block_of.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    pub fn members(&self, block: usize) -> impl Iterator<Item = usize> + '_ {
        self.block_of
            .iter()
            .enumerate()
            .filter(move |&(_, &b)| b == block)
            .map(|(x, _)| x)
    }

    /// Least element of each block.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.blocks];
        for (x, &b) in self.block_of.iter().enumerate() {
            if reps[b] == usize::MAX {
                reps[b] = x;
            }
        }
        reps
    }

    pub fn is_equality(&self) -> bool {
        self.blocks == self.block_of.len()
    }

    /// True when every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &EquivalencePartition) -> bool {
        let mut image = vec![usize::MAX; self.blocks];
        for (x, &b) in self.block_of.iter().enumerate() {
            let o = other.block_of[x];
            if image[b] == usize::MAX {
                image[b] = o;
            } else if image[b] != o {
                return false;
            }
        }
        true
    }

    /// Common refinement with a key per element.
    pub fn refine_by<K: Eq + Hash>(&self, key: impl Fn(usize) -> K) -> Self {
        EquivalencePartition::from_keys((0..self.len()).map(|x| (self.block_of[x], key(x))))
    }

    pub fn meet(&self, other: &EquivalencePartition) -> Self {
        self.refine_by(|x| other.block_of[x])
    }

    /// Finest partition coarser than both.
    pub fn join(&self, other: &EquivalencePartition) -> Self {
        let mut uf = UnionFind::new(self.len());
        for part in [self, other] {
            let reps = part.representatives();
            for (x, &b) in part.block_of.iter().enumerate() {
                uf.union(x, reps[b]);
            }
        }
        uf.partition()
    }

    /// The equivalence as a binary relation on a domain of size `len`.
    pub fn to_relation(&self) -> Relation {
        let n = self.len();
        Relation::from_codes(
            n,
            2,
            (0..n).flat_map(|a| (0..n).filter(move |&b| self.same(a, b)).map(move |b| a * n + b)),
        )
    }

    /// Reads an equivalence relation, rejecting anything that is not one.
    pub fn from_relation(r: &Relation) -> Result<Self> {
        if r.arity() != 2 {
            return Err(Error::ArityMismatch {
                name: "equivalence".into(),
                expected: 2,
                found: r.arity(),
            });
        }
        let n = r.size();
        let p = EquivalencePartition::from_keys((0..n).map(|a| {
            (0..n).filter(|&b| r.contains_code(a * n + b)).collect::<Vec<_>>()
        }));
        if p.to_relation() != *r {
            return Err(Error::Precondition("relation is not an equivalence".into()));
        }
        Ok(p)
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if the two sets were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn partition(&mut self) -> EquivalencePartition {
        let roots: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        EquivalencePartition::from_keys(roots)
    }
}

/// True iff `r` is a union of products of `e`-blocks, i.e. closed under
/// replacing any coordinate by an equivalent element.
pub fn saturated(r: &Relation, e: &EquivalencePartition) -> Result<bool> {
    let n = r.size();
    if e.len() != n {
        return Err(Error::DomainMismatch {
            expected: n,
            found: e.len(),
        });
    }
    if e.is_equality() {
        return Ok(true);
    }
    let blocks = e.blocks();
    let k = r.arity();
    let mut t = vec![0; k];
    for code in r.codes() {
        tuple::decode_into(n, code, &mut t);
        let mut weight = 1;
        for i in (0..k).rev() {
            let base = code - t[i] * weight;
            for &b in &blocks[e.block(t[i])] {
                if !r.contains_code(base + b * weight) {
                    return Ok(false);
                }
            }
            weight *= n;
        }
    }
    Ok(true)
}
