//! Finite possibility spaces and partitions of them, read as questions.
//!
//! Questions are ordered by granularity: `x <= y` when `y` is the finer
//! partition, i.e. every block of `y` sits inside a block of `x`. With that
//! order the all-in-one partition is the bottom (the vacuous question) and
//! the all-singletons partition is the top.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set of worlds `0..size`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PossibilitySpace {
    size: usize,
}

impl PossibilitySpace {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptySpace);
        }
        Ok(Self { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn worlds(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub(crate) fn check(&self, other: &PossibilitySpace) -> Result<()> {
        if self.size != other.size {
            return Err(Error::IncompatibleSpaces {
                left: self.size,
                right: other.size,
            });
        }
        Ok(())
    }
}

/// A partition of a [`PossibilitySpace`] in canonical form.
///
/// Blocks are sorted internally and ordered by their smallest world, so
/// structural equality is set-theoretic equality.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct Partition {
    space: PossibilitySpace,
    blocks: Vec<Vec<usize>>,
    /// `block_of[w]` is the index of the block containing world `w`.
    block_of: Vec<usize>,
}

impl Partition {
    /// Builds a partition from arbitrary blocks, validating the cover and
    /// disjointness invariants and canonicalising the order.
    pub fn new(space: PossibilitySpace, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; space.size()];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &w in block {
                if w >= space.size() {
                    return Err(Error::InvalidPartition(format!(
                        "world {w} outside a space of size {}",
                        space.size()
                    )));
                }
                if std::mem::replace(&mut seen[w], true) {
                    return Err(Error::InvalidPartition(format!("world {w} appears twice")));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!(
                "world {missing} is not covered"
            )));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self::from_sorted(space, blocks))
    }

    /// Builds a partition from a labelling `world -> class label`.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let space = PossibilitySpace::new(labels.len())?;
        let mut index = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (w, label) in labels.iter().enumerate() {
            let b = *index.entry(label).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(w);
        }
        // first-occurrence order already sorts blocks by smallest world
        Ok(Self::from_sorted(space, blocks))
    }

    fn from_sorted(space: PossibilitySpace, blocks: Vec<Vec<usize>>) -> Self {
        let mut block_of = vec![0; space.size()];
        for (i, block) in blocks.iter().enumerate() {
            for &w in block {
                block_of[w] = i;
            }
        }
        Self {
            space,
            blocks,
            block_of,
        }
    }

    /// The coarsest partition `{Ω}`: the vacuous question.
    pub fn bottom(space: PossibilitySpace) -> Self {
        Self::from_sorted(space, vec![space.worlds().collect()])
    }

    /// The finest partition into singletons.
    pub fn top(space: PossibilitySpace) -> Self {
        Self::from_sorted(space, space.worlds().map(|w| vec![w]).collect())
    }

    pub fn space(&self) -> PossibilitySpace {
        self.space
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, world: usize) -> usize {
        self.block_of[world]
    }

    pub fn is_bottom(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn is_top(&self) -> bool {
        self.blocks.len() == self.space.size()
    }

    /// `ω ≡ ω'` under this partition.
    pub fn equivalent(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    fn check(&self, other: &Partition) -> Result<()> {
        self.space.check(&other.space)
    }

    /// `self <= other`: `other` is finer, each of its blocks lies in a block of `self`.
    pub fn leq(&self, other: &Partition) -> Result<bool> {
        self.check(other)?;
        Ok(other
            .blocks
            .iter()
            .all(|b| b.iter().all(|&w| self.block_of[w] == self.block_of[b[0]])))
    }

    /// Least upper bound: the nonempty intersections of blocks.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.check(other)?;
        let labels: Vec<usize> = self
            .space
            .worlds()
            .map(|w| self.block_of[w] * other.blocks.len() + other.block_of[w])
            .collect();
        Partition::from_labels(&labels)
    }

    /// Greatest lower bound: connected components of `≡_x ∪ ≡_y`.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.check(other)?;
        let mut uf = UnionFind::new(self.space.size());
        for block in self.blocks.iter().chain(&other.blocks) {
            for pair in block.windows(2) {
                uf.union(pair[0], pair[1]);
            }
        }
        let labels: Vec<usize> = self.space.worlds().map(|w| uf.find(w)).collect();
        Partition::from_labels(&labels)
    }

    /// The composite relation `≡_self ⋆ ≡_other`.
    pub fn star_product(&self, other: &Partition) -> Result<Relation> {
        self.check(other)?;
        let n = self.space.size();
        let mut rel = Relation::empty(n);
        for a in 0..n {
            let left = &self.blocks[self.block_of[a]];
            for b in 0..n {
                let right = &other.blocks[other.block_of[b]];
                if intersects(left, right) {
                    rel.insert(a, b);
                }
            }
        }
        Ok(rel)
    }

    /// Type I partitions: the two ⋆ products coincide.
    pub fn commutes(&self, other: &Partition) -> Result<bool> {
        Ok(self.star_product(other)? == other.star_product(self)?)
    }

    /// Indicator of each block as a 0/1 vector over the worlds.
    pub fn block_indicator(&self, block: usize) -> Vec<bool> {
        let mut v = vec![false; self.space.size()];
        for &w in &self.blocks[block] {
            v[w] = true;
        }
        v
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.blocks)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            serde_json::to_string(&self.blocks).map_err(|_| fmt::Error)?
        )
    }
}

impl TryFrom<Vec<Vec<usize>>> for Partition {
    type Error = Error;

    fn try_from(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let size = blocks.iter().map(Vec::len).sum();
        Partition::new(PossibilitySpace::new(size)?, blocks)
    }
}

impl From<Partition> for Vec<Vec<usize>> {
    fn from(p: Partition) -> Self {
        p.blocks
    }
}

fn intersects(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Tuples `(B_1, …, B_n)` of blocks compatible with `within` must have a
/// common world inside `within`.
fn blockwise_product_holds(ps: &[&Partition], within: &[usize]) -> bool {
    // candidate blocks of each partition: those meeting `within`
    let candidates: Vec<Vec<&[usize]>> = ps
        .iter()
        .map(|p| {
            p.blocks
                .iter()
                .filter(|b| intersects(b, within))
                .map(Vec::as_slice)
                .collect()
        })
        .collect();

    fn search(candidates: &[Vec<&[usize]>], current: Vec<usize>) -> bool {
        let Some((first, rest)) = candidates.split_first() else {
            return !current.is_empty();
        };
        first.iter().all(|block| {
            let next: Vec<usize> = current
                .iter()
                .copied()
                .filter(|w| block.binary_search(w).is_ok())
                .collect();
            !next.is_empty() && search(rest, next)
        })
    }

    search(&candidates, within.to_vec())
}

/// `⊥{P_1, …, P_n}`: every tuple of blocks has a nonempty intersection.
pub fn independent(ps: &[&Partition]) -> Result<bool> {
    if ps.len() < 2 {
        return Err(Error::TooFewPartitions {
            needed: 2,
            got: ps.len(),
        });
    }
    for p in &ps[1..] {
        ps[0].check(p)?;
    }
    let all: Vec<usize> = ps[0].space.worlds().collect();
    Ok(blockwise_product_holds(ps, &all))
}

/// `⊥{P_1, …, P_n} | given`, decided blockwise: whenever each `B_i` meets a
/// block `B` of `given`, the `B_i` have a common world inside `B`.
pub fn cond_independent(ps: &[&Partition], given: &Partition) -> Result<bool> {
    if ps.is_empty() {
        return Err(Error::EmptyList);
    }
    for p in ps {
        given.check(p)?;
    }
    Ok(given.blocks.iter().all(|b| blockwise_product_holds(ps, b)))
}

/// Binary relation on the worlds as a dense boolean matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    size: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn empty(size: usize) -> Self {
        Self {
            size,
            bits: vec![false; size * size],
        }
    }

    /// The relation `≡` induced by a partition.
    pub fn of_partition(p: &Partition) -> Self {
        let n = p.space().size();
        let mut rel = Self::empty(n);
        for a in 0..n {
            for b in 0..n {
                if p.equivalent(a, b) {
                    rel.insert(a, b);
                }
            }
        }
        rel
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.size + b]
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.bits[a * self.size + b] = true;
    }

    pub fn is_equivalence(&self) -> bool {
        let n = self.size;
        (0..n).all(|a| self.contains(a, a))
            && (0..n).all(|a| (0..n).all(|b| !self.contains(a, b) || self.contains(b, a)))
            && (0..n).all(|a| {
                (0..n).all(|b| {
                    !self.contains(a, b)
                        || (0..n).all(|c| !self.contains(b, c) || self.contains(a, c))
                })
            })
    }

    /// The partition of classes, when the relation is an equivalence.
    pub fn classes(&self) -> Option<Partition> {
        if !self.is_equivalence() {
            return None;
        }
        let labels: Vec<usize> = (0..self.size)
            .map(|a| (0..self.size).find(|&b| self.contains(a, b)).unwrap_or(a))
            .collect();
        Partition::from_labels(&labels).ok()
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<(usize, usize)> = (0..self.size)
            .flat_map(|a| (0..self.size).map(move |b| (a, b)))
            .filter(|&(a, b)| self.contains(a, b))
            .collect();
        write!(f, "Relation{pairs:?}")
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins so labels stay deterministic
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
