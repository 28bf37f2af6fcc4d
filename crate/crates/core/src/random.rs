//! Seeded generators for gambles, coherent sets, partitions and chains.
//!
//! The same seed gives the same sequence on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{extract, QuestionSet};
use crate::atoms::MaximalSet;
use crate::cone::Gamble;
use crate::partition::{Partition, PossibilitySpace};
use crate::phi::{closure, PhiElement};
use crate::scalar::{rank, Scalar};

/// Entry ranges: numerators in `-max_num..=max_num`, denominators in
/// `1..=max_den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entries {
    pub max_num: i64,
    pub max_den: i64,
}

impl Default for Entries {
    fn default() -> Self {
        Self {
            max_num: 4,
            max_den: 8,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    pub entries: Entries,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            entries: Entries::default(),
        }
    }

    pub fn with_entries(seed: u64, entries: Entries) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            entries,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn rational<F: Scalar>(&mut self) -> F {
        let Entries { max_num, max_den } = self.entries;
        let n = self.rng.gen_range(-max_num..=max_num);
        let d = self.rng.gen_range(1..=max_den);
        F::from_ratio(n, d)
    }

    pub fn gamble<F: Scalar>(&mut self, space: PossibilitySpace) -> Gamble<F> {
        let values = (0..space.size()).map(|_| self.rational()).collect();
        Gamble::new(values).expect("space is nonempty")
    }

    pub fn nonzero_gamble<F: Scalar>(&mut self, space: PossibilitySpace) -> Gamble<F> {
        loop {
            let g = self.gamble(space);
            if !g.is_zero() {
                return g;
            }
        }
    }

    /// A gamble constant on each block of `x`.
    pub fn measurable_gamble<F: Scalar>(&mut self, x: &Partition) -> Gamble<F> {
        let mut values = vec![F::zero(); x.space().size()];
        for block in x.blocks() {
            let v: F = self.rational();
            for &w in block {
                values[w] = v.clone();
            }
        }
        Gamble::new(values).expect("space is nonempty")
    }

    /// Up to `count` nonzero gambles.
    pub fn gamble_set<F: Scalar>(
        &mut self,
        space: PossibilitySpace,
        count: usize,
    ) -> Vec<Gamble<F>> {
        let k = self.rng.gen_range(0..=count);
        (0..k).map(|_| self.nonzero_gamble(space)).collect()
    }

    /// `C(K)` for a random `K` of at most `max_generators` gambles, adding
    /// gambles one at a time and skipping those that would make it
    /// incoherent.
    pub fn coherent<F: Scalar>(
        &mut self,
        space: PossibilitySpace,
        max_generators: usize,
    ) -> PhiElement<F> {
        self.coherent_from(space, max_generators, |s| s.nonzero_gamble(space))
    }

    /// Like [`Sampler::coherent`] with x-measurable generators, so `x`
    /// supports the result.
    pub fn measurable_coherent<F: Scalar>(
        &mut self,
        x: &Partition,
        max_generators: usize,
    ) -> PhiElement<F> {
        self.coherent_from(x.space(), max_generators, |s| loop {
            let g = s.measurable_gamble(x);
            if !g.is_zero() {
                return g;
            }
        })
    }

    fn coherent_from<F: Scalar>(
        &mut self,
        space: PossibilitySpace,
        max_generators: usize,
        mut draw: impl FnMut(&mut Self) -> Gamble<F>,
    ) -> PhiElement<F> {
        let k = self.rng.gen_range(1..=max_generators.max(1));
        let mut kept: Vec<Gamble<F>> = Vec::new();
        let mut current = PhiElement::unit(space);
        for _ in 0..k {
            let g = draw(self);
            kept.push(g);
            let next = closure(space, &kept).expect("gambles match the space");
            if next.is_top() {
                kept.pop();
            } else {
                current = next;
            }
        }
        current
    }

    /// `count` coherent elements.
    pub fn corpus<F: Scalar>(
        &mut self,
        space: PossibilitySpace,
        count: usize,
        max_generators: usize,
    ) -> Vec<PhiElement<F>> {
        (0..count)
            .map(|_| self.coherent(space, max_generators))
            .collect()
    }

    /// A random member of `q` with `ε_x(D)` as content, which `x` supports.
    pub fn supported<F: Scalar>(
        &mut self,
        q: &QuestionSet,
        max_generators: usize,
    ) -> (PhiElement<F>, Partition) {
        let x = q
            .partitions()
            .choose(&mut self.rng)
            .expect("question sets are nonempty")
            .clone();
        let d = self.coherent(q.space(), max_generators);
        (extract(&x, &d).expect("same space"), x)
    }

    /// Partition from uniformly random labels in `0..blocks`.
    pub fn partition(&mut self, space: PossibilitySpace, blocks: usize) -> Partition {
        let labels: Vec<usize> = (0..space.size())
            .map(|_| self.rng.gen_range(0..blocks.max(1)))
            .collect();
        Partition::from_labels(&labels).expect("labels cover the space")
    }

    /// A pmf on a random nonempty subset of worlds.
    pub fn pmf<F: Scalar>(&mut self, space: PossibilitySpace) -> Gamble<F> {
        let n = space.size();
        let mut weights: Vec<i64> = (0..n)
            .map(|_| {
                if self.rng.gen_bool(0.6) {
                    self.rng.gen_range(1..=6)
                } else {
                    0
                }
            })
            .collect();
        if weights.iter().all(|&w| w == 0) {
            weights[self.rng.gen_range(0..n)] = 1;
        }
        let total: i64 = weights.iter().sum();
        Gamble::new(weights.iter().map(|&w| F::from_ratio(w, total)).collect())
            .expect("space is nonempty")
    }

    /// Random pmfs, each kept only if it raises the rank, until full rank.
    pub fn chain<F: Scalar>(&mut self, space: PossibilitySpace) -> MaximalSet<F> {
        let n = space.size();
        let mut chain: Vec<Gamble<F>> = Vec::new();
        let mut r = 0;
        while r < n {
            let p = self.pmf(space);
            let mut rows: Vec<&[F]> = chain.iter().map(Gamble::values).collect();
            rows.push(p.values());
            let next = rank(&rows, n);
            if next > r {
                r = next;
                chain.push(p);
            }
        }
        MaximalSet::lex_new(space, chain).expect("chain has full rank")
    }
}
