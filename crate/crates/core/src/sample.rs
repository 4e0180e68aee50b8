//! Seeded instance generators for randomized law checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::groups::PermutationSet;
use crate::model::{EquivalencePartition, Permutation, Quantifier, QuantifierType, Relation, Structure};
use crate::similarity::{Similarity, SimilaritySet};

/// Deterministic instance source.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn permutation(&mut self, n: usize) -> Permutation {
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(&mut self.rng);
        Permutation::new(images).expect("a shuffle is a bijection")
    }

    /// One to three random permutations of `n`.
    pub fn generator_set(&mut self, n: usize) -> PermutationSet {
        let count = self.rng.random_range(1..=3);
        let gens: Vec<Permutation> = (0..count).map(|_| self.permutation(n)).collect();
        PermutationSet::new(n, gens).expect("generators share the degree")
    }

    /// Each tuple is included with probability one half.
    pub fn relation(&mut self, n: usize, arity: usize) -> Relation {
        let space = n.pow(arity as u32);
        let codes: Vec<usize> = (0..space).filter(|_| self.rng.random_bool(0.5)).collect();
        Relation::from_codes(n, arity, codes)
    }

    /// Each subset of the domain is a member with probability one half.
    pub fn monadic_quantifier(&mut self, n: usize) -> Result<Quantifier> {
        let t1 = QuantifierType::monadic(1)?;
        let members: Vec<Vec<Relation>> = (0..1usize << n)
            .filter(|_| self.rng.random_bool(0.5))
            .map(|mask| vec![Relation::from_codes(n, 1, (0..n).filter(|x| mask >> x & 1 == 1))])
            .collect();
        Quantifier::from_members(n, t1, members)
    }

    /// Up to `max_relations` relations of arity one or two and up to
    /// `max_quantifiers` type-(1) quantifiers.
    pub fn structure(&mut self, n: usize, max_relations: usize, max_quantifiers: usize) -> Result<Structure> {
        let mut s = Structure::empty(n)?;
        for i in 0..self.rng.random_range(0..=max_relations) {
            let arity = self.rng.random_range(1..=2);
            let r = self.relation(n, arity);
            s.add_relation(format!("R{i}"), r)?;
        }
        for i in 0..self.rng.random_range(0..=max_quantifiers) {
            let q = self.monadic_quantifier(n)?;
            s.add_quantifier(format!("Q{i}"), q)?;
        }
        Ok(s)
    }

    /// Drawn with equal probability from four shapes: a permutation graph,
    /// a permutation graph with one extra pair, the lift of a block
    /// permutation over a random partition, and a uniform similarity.
    pub fn similarity(&mut self, n: usize) -> Similarity {
        let graph = |g: &Permutation| -> Vec<(usize, usize)> { (0..n).map(|a| (a, g.apply(a))).collect() };
        match self.rng.random_range(0..4) {
            0 => Similarity::new(n, graph(&self.permutation(n))).expect("permutation graph"),
            1 => {
                let mut pairs = graph(&self.permutation(n));
                pairs.push((self.rng.random_range(0..n), self.rng.random_range(0..n)));
                Similarity::new(n, pairs).expect("contains a permutation graph")
            }
            2 => {
                let labels: Vec<usize> = (0..n).map(|_| self.rng.random_range(0..n)).collect();
                let e = EquivalencePartition::from_labels(&labels);
                let f = self.permutation(e.num_blocks());
                let pairs = (0..n)
                    .flat_map(|a| (0..n).map(move |b| (a, b)))
                    .filter(|&(a, b)| e.block(b) == f.apply(e.block(a)));
                Similarity::new(n, pairs).expect("lifted block permutations are similarities")
            }
            _ => loop {
                let bits = self.rng.random::<u64>() & ((1u64 << (n * n)) - 1);
                if let Ok(p) = Similarity::from_bits(n, bits) {
                    return p;
                }
            },
        }
    }

    /// One to three random similarities on `n`.
    pub fn similarity_set(&mut self, n: usize) -> SimilaritySet {
        let count = self.rng.random_range(1..=3);
        let members: Vec<Similarity> = (0..count).map(|_| self.similarity(n)).collect();
        SimilaritySet::new(n, members).expect("members share the domain")
    }
}
