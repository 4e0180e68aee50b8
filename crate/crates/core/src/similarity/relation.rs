use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{tuple, EquivalencePartition, Permutation, Relation};

/// Largest domain a [`Similarity`] can live on (its pairs fit one word).
pub const MAX_SIMILARITY_SIZE: usize = 8;

/// A total and surjective binary relation on `{0, …, size-1}`.
///
/// Pair `(a, b)` is bit `a * size + b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Similarity {
    size: usize,
    bits: u64,
}

fn row_mask(n: usize) -> u64 {
    (1u64 << n) - 1
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_SIMILARITY_SIZE {
        return Err(Error::limit("similarity domain size", n as u128, MAX_SIMILARITY_SIZE as u128));
    }
    Ok(())
}

/// Whether a pair mask on `n` points has no empty row and no empty column.
pub(crate) fn mask_is_similarity(n: usize, bits: u64) -> bool {
    let mut cols = 0u64;
    for a in 0..n {
        let row = bits >> (a * n) & row_mask(n);
        if row == 0 {
            return false;
        }
        cols |= row;
    }
    cols == row_mask(n)
}

impl Similarity {
    pub fn new(size: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        check_size(size)?;
        let mut bits = 0u64;
        for (a, b) in pairs {
            for x in [a, b] {
                if x >= size {
                    return Err(Error::OutOfDomain { element: x, size });
                }
            }
            bits |= 1 << (a * size + b);
        }
        Similarity::from_bits(size, bits)
    }

    pub fn from_bits(size: usize, bits: u64) -> Result<Self> {
        check_size(size)?;
        if size * size < 64 && bits >> (size * size) != 0 {
            return Err(Error::Invalid("pair bits outside the domain".into()));
        }
        if !mask_is_similarity(size, bits) {
            return Err(Error::Invalid(format!(
                "relation {} is not total and surjective",
                Similarity { size, bits }
            )));
        }
        Ok(Similarity { size, bits })
    }

    pub(crate) fn from_bits_unchecked(size: usize, bits: u64) -> Self {
        Similarity { size, bits }
    }

    pub fn from_relation(r: &Relation) -> Result<Self> {
        if r.arity() != 2 {
            return Err(Error::ArityMismatch {
                name: "similarity".into(),
                expected: 2,
                found: r.arity(),
            });
        }
        Similarity::new(r.size(), r.tuples().map(|t| (t[0], t[1])))
    }

    pub fn identity(size: usize) -> Result<Self> {
        Similarity::new(size, (0..size).map(|a| (a, a)))
    }

    pub fn total(size: usize) -> Result<Self> {
        check_size(size)?;
        let bits = if size * size == 64 { u64::MAX } else { (1u64 << (size * size)) - 1 };
        Ok(Similarity { size, bits })
    }

    /// The graph `{(a, g(a))}` of a permutation.
    pub fn from_permutation(g: &Permutation) -> Result<Self> {
        Similarity::new(g.degree(), (0..g.degree()).map(|a| (a, g.apply(a))))
    }

    /// The equivalence relation of a partition, as a set of pairs.
    pub fn from_partition(e: &EquivalencePartition) -> Result<Self> {
        let n = e.len();
        Similarity::new(n, (0..n).flat_map(|a| (0..n).filter(move |&b| e.same(a, b)).map(move |b| (a, b))))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        a < self.size && b < self.size && self.bits >> (a * self.size + b) & 1 == 1
    }

    /// Images of `a` as a bit set.
    pub(crate) fn row(&self, a: usize) -> u64 {
        self.bits >> (a * self.size) & row_mask(self.size)
    }

    pub fn images(&self, a: usize) -> Vec<usize> {
        (0..self.size).filter(|&b| self.contains(a, b)).collect()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.size)
            .flat_map(|a| (0..self.size).map(move |b| (a, b)))
            .filter(|&(a, b)| self.contains(a, b))
            .collect()
    }

    fn same_domain(&self, other: &Similarity) -> Result<()> {
        if self.size != other.size {
            return Err(Error::DomainMismatch {
                expected: self.size,
                found: other.size,
            });
        }
        Ok(())
    }

    /// Relational composition, `self` first: `a (p;q) c` iff `a p b q c` for some `b`.
    pub fn compose(&self, other: &Similarity) -> Result<Similarity> {
        self.same_domain(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Similarity) -> Similarity {
        let n = self.size;
        let mut bits = 0u64;
        for a in 0..n {
            let mut row = 0u64;
            let mut mid = self.row(a);
            while mid != 0 {
                let b = mid.trailing_zeros() as usize;
                mid &= mid - 1;
                row |= other.row(b);
            }
            bits |= row << (a * n);
        }
        Similarity { size: n, bits }
    }

    pub fn converse(&self) -> Similarity {
        let n = self.size;
        let mut bits = 0u64;
        for (a, b) in self.pairs() {
            bits |= 1 << (b * n + a);
        }
        Similarity { size: n, bits }
    }

    pub fn is_subset(&self, other: &Similarity) -> bool {
        self.size == other.size && self.bits & !other.bits == 0
    }

    pub fn contains_diagonal(&self) -> bool {
        (0..self.size).all(|a| self.contains(a, a))
    }

    pub fn to_relation(&self) -> Relation {
        Relation::from_tuples(self.size, 2, self.pairs().into_iter().map(|(a, b)| [a, b]))
            .expect("pairs lie in the domain")
    }

    /// The permutation this similarity is the graph of, if it is functional and injective.
    pub fn as_permutation(&self) -> Option<Permutation> {
        let images: Vec<usize> = (0..self.size)
            .map(|a| {
                let row = self.row(a);
                (row.count_ones() == 1).then(|| row.trailing_zeros() as usize)
            })
            .collect::<Option<_>>()?;
        Permutation::new(images).ok()
    }

    /// Iterates over all similarities contained in `self`.
    pub fn subsimilarities(&self) -> impl Iterator<Item = Similarity> + '_ {
        let n = self.size;
        let full = self.bits;
        let mut next = Some(full);
        std::iter::from_fn(move || loop {
            let sub = next?;
            next = if sub == 0 { None } else { Some((sub - 1) & full) };
            if mask_is_similarity(n, sub) {
                return Some(Similarity { size: n, bits: sub });
            }
        })
    }
}

impl Ord for Similarity {
    fn cmp(&self, other: &Self) -> Ordering {
        // Lexicographic on the sorted pair lists; bit order is pair order.
        self.size.cmp(&other.size).then_with(|| {
            let diff = self.bits ^ other.bits;
            if diff == 0 {
                return Ordering::Equal;
            }
            let d = diff.trailing_zeros();
            let (mine, theirs) = if self.bits >> d & 1 == 1 {
                (self.bits, other.bits)
            } else {
                (other.bits, self.bits)
            };
            let order = if theirs >> d == 0 { Ordering::Greater } else { Ordering::Less };
            if mine == self.bits { order } else { order.reverse() }
        })
    }
}

impl PartialOrd for Similarity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Similarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (a, b)) in self.pairs().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Similarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Similarity{self}")
    }
}

/// Totality and surjectivity of a binary relation.
pub fn is_similarity(r: &Relation) -> bool {
    r.arity() == 2 && (0..r.size()).all(|a| (0..r.size()).any(|b| r.contains(&[a, b]))) && {
        (0..r.size()).all(|b| (0..r.size()).any(|a| r.contains(&[a, b])))
    }
}

fn same_size(p: &Similarity, r: &Relation) -> Result<()> {
    if p.size() != r.size() {
        return Err(Error::DomainMismatch {
            expected: p.size(),
            found: r.size(),
        });
    }
    Ok(())
}

/// `{b̄ : ā p b̄ for some ā ∈ r}`, componentwise.
pub fn image(p: &Similarity, r: &Relation) -> Result<Relation> {
    same_size(p, r)?;
    Ok(image_unchecked(p, r))
}

pub(crate) fn image_unchecked(p: &Similarity, r: &Relation) -> Relation {
    let n = p.size();
    let k = r.arity();
    let mut out = Relation::empty(n, k);
    let mut t = vec![0; k];
    let mut u = vec![0; k];
    for code in r.codes() {
        tuple::decode_into(n, code, &mut t);
        let rows: Vec<Vec<usize>> = t.iter().map(|&a| p.images(a)).collect();
        let mut idx = vec![0usize; k];
        'product: loop {
            for l in 0..k {
                u[l] = rows[l][idx[l]];
            }
            out.insert_code(tuple::encode(n, &u));
            for l in (0..k).rev() {
                idx[l] += 1;
                if idx[l] < rows[l].len() {
                    continue 'product;
                }
                idx[l] = 0;
            }
            break;
        }
    }
    out
}

/// `r p s`: for all `ā p b̄`, `ā ∈ r` iff `b̄ ∈ s`.
pub fn lift_holds(p: &Similarity, r: &Relation, s: &Relation) -> Result<bool> {
    same_size(p, r)?;
    same_size(p, s)?;
    if r.arity() != s.arity() {
        return Err(Error::ArityMismatch {
            name: "lifted relation".into(),
            expected: r.arity(),
            found: s.arity(),
        });
    }
    Ok(lift_holds_unchecked(p, r, s))
}

pub(crate) fn lift_holds_unchecked(p: &Similarity, r: &Relation, s: &Relation) -> bool {
    image_unchecked(p, r).is_subset(s) && image_unchecked(&p.converse(), s).is_subset(r)
}

/// `r p r`.
pub fn invariant_under(p: &Similarity, r: &Relation) -> Result<bool> {
    lift_holds(p, r, r)
}
