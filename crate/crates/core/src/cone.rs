//! Gambles and finitely generated convex cones of gambles.
//!
//! A [`ConeV`] is the conic hull of its generators, origin included; the
//! desirability layer removes the origin. [`ConeH`] is the same set written
//! as homogeneous inequalities and equalities. Conversions between the two
//! run the exact double-description engine in [`crate::dd`].

use std::fmt;
use std::ops::{Add, Neg};
use std::sync::OnceLock;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::dd;
use crate::error::{Error, Result};
use crate::lp::feasible_point_mixed;
use crate::partition::{Partition, PossibilitySpace};
use crate::scalar::{dot, normalize_direction, rank, Scalar};

/// Up to this many worlds, pruning enumerates facets; above it, one LP per
/// generator is cheaper.
const FACET_PRUNING_MAX_DIM: usize = 8;

/// Above this many non-indicator generators, traces are grown from inside
/// rather than projected from a lifted cone.
const LIFTING_MAX_GENERATORS: usize = 8;

/// A real-valued reward on the worlds of a finite space.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gamble<F> {
    values: Vec<F>,
}

impl<F: Scalar> Gamble<F> {
    pub fn new(values: Vec<F>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySpace);
        }
        Ok(Self { values })
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| F::from_int(v)).collect())
    }

    pub fn zero(space: PossibilitySpace) -> Self {
        Self {
            values: vec![F::zero(); space.size()],
        }
    }

    /// The indicator `e_ω` of a single world.
    pub fn indicator(space: PossibilitySpace, world: usize) -> Self {
        let mut g = Self::zero(space);
        g.values[world] = F::one();
        g
    }

    /// Indicator of a set of worlds.
    pub fn set_indicator(space: PossibilitySpace, worlds: &[usize]) -> Self {
        let mut g = Self::zero(space);
        for &w in worlds {
            g.values[w] = F::one();
        }
        g
    }

    pub fn space(&self) -> PossibilitySpace {
        PossibilitySpace::new(self.values.len()).expect("gambles are nonempty")
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn into_values(self) -> Vec<F> {
        self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// `f >= 0` and `f != 0`: a member of `L⁺`.
    pub fn is_positive(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative()) && !self.is_zero()
    }

    pub fn scale(&self, factor: &F) -> Self {
        Self {
            values: self
                .values
                .iter()
                .map(|v| v.clone() * factor.clone())
                .collect(),
        }
    }

    /// Expectation-style pairing with a weight vector.
    pub fn pair(&self, weights: &[F]) -> F {
        dot(&self.values, weights)
    }

    /// `f` constant on every block of `x`.
    pub fn is_measurable(&self, x: &Partition) -> Result<bool> {
        self.space().check(&x.space())?;
        Ok(x.blocks()
            .iter()
            .all(|b| b.iter().all(|&w| self.values[w] == self.values[b[0]])))
    }

    pub(crate) fn check(&self, space: &PossibilitySpace) -> Result<()> {
        self.space().check(space)
    }
}

impl<F: Scalar> Neg for &Gamble<F> {
    type Output = Gamble<F>;

    fn neg(self) -> Gamble<F> {
        Gamble {
            values: self.values.iter().map(|v| -v.clone()).collect(),
        }
    }
}

impl<F: Scalar> Add for &Gamble<F> {
    type Output = Gamble<F>;

    fn add(self, rhs: &Gamble<F>) -> Gamble<F> {
        assert_eq!(
            self.values.len(),
            rhs.values.len(),
            "gambles over different spaces"
        );
        Gamble {
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<F: Scalar> fmt::Debug for Gamble<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl<F: Scalar> Serialize for Gamble<F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.values.len()))?;
        for v in &self.values {
            seq.serialize_element(&v.to_string())?;
        }
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalText {
    Int(i64),
    Text(String),
}

impl<'de, F: Scalar> Deserialize<'de> for Gamble<F> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<RationalText>::deserialize(deserializer)?;
        let values = raw
            .into_iter()
            .map(|r| match r {
                RationalText::Int(n) => Ok(F::from_int(n)),
                RationalText::Text(s) => F::parse_exact(&s)
                    .ok_or_else(|| de::Error::custom(format!("not an exact rational: {s:?}"))),
            })
            .collect::<Result<Vec<F>, D::Error>>()?;
        Gamble::new(values).map_err(de::Error::custom)
    }
}

/// Conic hull of finitely many gambles (origin included).
///
/// The facet form is computed on first use and kept.
#[derive(Clone)]
pub struct ConeV<F> {
    space: PossibilitySpace,
    generators: Vec<Gamble<F>>,
    facets: OnceLock<ConeH<F>>,
}

impl<F: PartialEq> PartialEq for ConeV<F> {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.generators == other.generators
    }
}

impl<F: Eq> Eq for ConeV<F> {}

impl<F: Scalar> ConeV<F> {
    /// Zero generators are dropped; repeated directions (positive multiples)
    /// keep their first occurrence.
    pub fn new(space: PossibilitySpace, generators: Vec<Gamble<F>>) -> Result<Self> {
        let mut seen: Vec<Vec<F>> = Vec::new();
        let mut kept = Vec::with_capacity(generators.len());
        for g in generators {
            g.check(&space)?;
            if g.is_zero() {
                continue;
            }
            let mut dir = g.values.clone();
            normalize_direction(&mut dir);
            if !seen.contains(&dir) {
                seen.push(dir);
                kept.push(g);
            }
        }
        Ok(Self::with_generators(space, kept))
    }

    fn with_generators(space: PossibilitySpace, generators: Vec<Gamble<F>>) -> Self {
        Self {
            space,
            generators,
            facets: OnceLock::new(),
        }
    }

    /// The cone `{0}`.
    pub fn zero(space: PossibilitySpace) -> Self {
        Self::with_generators(space, Vec::new())
    }

    /// The nonnegative orthant, generated by the world indicators.
    pub fn orthant(space: PossibilitySpace) -> Self {
        Self::with_generators(
            space,
            space
                .worlds()
                .map(|w| Gamble::indicator(space, w))
                .collect(),
        )
    }

    /// The whole space `L(Ω)`.
    pub fn whole(space: PossibilitySpace) -> Self {
        let generators = space
            .worlds()
            .flat_map(|w| {
                let e = Gamble::indicator(space, w);
                [-&e, e]
            })
            .collect();
        Self::with_generators(space, generators)
    }

    pub fn space(&self) -> PossibilitySpace {
        self.space
    }

    pub fn generators(&self) -> &[Gamble<F>] {
        &self.generators
    }

    pub fn into_generators(self) -> Vec<Gamble<F>> {
        self.generators
    }

    fn raw_generators(&self) -> Vec<Vec<F>> {
        self.generators.iter().map(|g| g.values.clone()).collect()
    }

    /// Facet form of the cone.
    pub fn to_h(&self) -> ConeH<F> {
        self.facets().clone()
    }

    /// Cached facet form; it may carry redundant rows when the cone came out
    /// of an intersection.
    fn facets(&self) -> &ConeH<F> {
        self.facets.get_or_init(|| {
            let (inequalities, equalities) =
                dd::facets_of(self.space.size(), &self.raw_generators());
            ConeH {
                space: self.space,
                inequalities,
                equalities,
            }
        })
    }

    /// `f = Σ λ_j g_j` with `λ >= 0`. The origin is always a member here.
    pub fn contains(&self, f: &Gamble<F>) -> Result<bool> {
        f.check(&self.space)?;
        Ok(self.contains_values(&f.values))
    }

    fn contains_values(&self, f: &[F]) -> bool {
        if let Some(h) = self.facets.get() {
            return h.contains_values(f);
        }
        let (covered, rest) = self.split_indicators();
        feasible_point_mixed(&columns(self.space, &rest), f, &covered).is_some()
    }

    /// Worlds whose indicator direction is a generator, and the other
    /// generators. Indicator generators act as slacks in the LPs.
    fn split_indicators(&self) -> (Vec<bool>, Vec<&Gamble<F>>) {
        let mut covered = vec![false; self.space.size()];
        let mut rest = Vec::new();
        for g in &self.generators {
            match indicator_world(g) {
                Some(w) if !covered[w] => covered[w] = true,
                _ => rest.push(g),
            }
        }
        (covered, rest)
    }

    /// The origin is a nontrivial nonnegative combination of the generators.
    pub fn has_nontrivial_zero(&self) -> bool {
        self.nontrivial_zero_weights().is_some()
    }

    /// Weights `λ >= 0` summing to one with `Σ λ_j g_j = 0`, if any.
    pub fn nontrivial_zero_weights(&self) -> Option<Vec<F>> {
        // indicators alone are independent, so some other generator carries
        // weight and the normalization can sit on the others
        let (mut covered, rest) = self.split_indicators();
        if rest.is_empty() {
            return None;
        }
        let n = self.space.size();
        let mut a = columns(self.space, &rest);
        a.push(vec![F::one(); rest.len()]);
        let mut b = vec![F::zero(); n];
        b.push(F::one());
        covered.push(false);
        let lambda = feasible_point_mixed(&a, &b, &covered)?;

        // indicator weights absorb the slack, then everything is rescaled
        let mut slack = vec![F::zero(); n];
        for (g, l) in rest.iter().zip(&lambda) {
            for (s, v) in slack.iter_mut().zip(&g.values) {
                *s = s.clone() - l.clone() * v.clone();
            }
        }
        let mut used = vec![false; n];
        let mut rest_weights = lambda.into_iter();
        let mut weights: Vec<F> = self
            .generators
            .iter()
            .map(|g| match indicator_world(g) {
                Some(w) if !used[w] => {
                    used[w] = true;
                    slack[w].clone() / g.values[w].clone()
                }
                _ => rest_weights.next().expect("one weight per other generator"),
            })
            .collect();
        let total = weights.iter().fold(F::zero(), |acc, x| acc + x.clone());
        for x in weights.iter_mut() {
            *x = x.clone() / total.clone();
        }
        Some(weights)
    }

    pub fn intersect(&self, other: &ConeV<F>) -> Result<ConeV<F>> {
        self.space.check(&other.space)?;
        let mut h = self.to_h();
        let o = other.to_h();
        h.inequalities.extend(o.inequalities);
        h.equalities.extend(o.equalities);
        Ok(h.to_v())
    }

    /// `self ∩ L_x`, computed in block coordinates.
    ///
    /// With facets at hand they are summed over each block. Larger cones that
    /// contain the orthant are projected from a lifted cone when they have
    /// few other generators, and grown from an inner approximation
    /// otherwise.
    pub fn intersect_subspace(&self, m: &MeasurableSubspace<F>) -> Result<ConeV<F>> {
        self.space.check(&m.partition.space())?;
        let x = &m.partition;
        let (covered, rest) = self.split_indicators();
        let reduced = if self.facets.get().is_some()
            || self.space.size() <= FACET_PRUNING_MAX_DIM
            || covered.contains(&false)
        {
            self.trace_from_facets(x)
        } else if rest.len() <= LIFTING_MAX_GENERATORS {
            self.trace_by_lifting(x, &rest)
        } else {
            self.trace_by_expansion(x, &rest)
        };
        let generators = reduced
            .into_iter()
            .map(|y| Gamble {
                values: self
                    .space
                    .worlds()
                    .map(|w| y[x.block_of(w)].clone())
                    .collect(),
            })
            .collect();
        Ok(ConeV::with_generators(self.space, generators))
    }

    /// Grows an inner approximation of the trace until every facet of it is
    /// confirmed by an LP. Starts from the block indicators and the
    /// blockwise maxima of the generators, all of which lie in the trace.
    fn trace_by_expansion(&self, x: &Partition, rest: &[&Gamble<F>]) -> Vec<Vec<F>> {
        let k = x.block_count();
        let mut points: Vec<Vec<F>> = (0..k)
            .map(|b| {
                (0..k)
                    .map(|c| if b == c { F::one() } else { F::zero() })
                    .collect()
            })
            .collect();
        for g in rest {
            let mut top: Vec<F> = x
                .blocks()
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|&w| g.values[w].clone())
                        .max()
                        .expect("blocks are nonempty")
                })
                .collect();
            normalize_direction(&mut top);
            if top.iter().any(|v| !v.is_zero()) && !points.contains(&top) {
                points.push(top);
            }
        }
        let mut confirmed: Vec<Vec<F>> = Vec::new();
        loop {
            let (facets, _) = dd::facets_of(k, &points);
            let mut fresh: Vec<Vec<F>> = Vec::new();
            for h in &facets {
                if confirmed.contains(h) || fresh.iter().any(|p| dot(h, p).is_negative()) {
                    continue;
                }
                match self.trace_point_below(x, rest, h) {
                    Some(y) => fresh.push(y),
                    None => confirmed.push(h.clone()),
                }
            }
            if fresh.is_empty() {
                return dd::conic_generators(k, &facets, &[]);
            }
            points.extend(fresh);
        }
    }

    /// A point `y` of the trace with `h·y = -1`, in block coordinates.
    fn trace_point_below(&self, x: &Partition, rest: &[&Gamble<F>], h: &[F]) -> Option<Vec<F>> {
        let k = x.block_count();
        // columns y⁺, y⁻, λ; rows Σ λ_j g_j(w) - y(w) <= 0 and h·y = -1
        let mut a: Vec<Vec<F>> = self
            .space
            .worlds()
            .map(|w| {
                let b = x.block_of(w);
                let mut row = vec![F::zero(); 2 * k];
                row[b] = -F::one();
                row[k + b] = F::one();
                row.extend(rest.iter().map(|g| g.values[w].clone()));
                row
            })
            .collect();
        let mut last: Vec<F> = h.to_vec();
        last.extend(h.iter().map(|v| -v.clone()));
        last.extend(rest.iter().map(|_| F::zero()));
        a.push(last);
        let mut b = vec![F::zero(); self.space.size()];
        b.push(-F::one());
        let mut relaxed = vec![true; self.space.size()];
        relaxed.push(false);
        let sol = feasible_point_mixed(&a, &b, &relaxed)?;
        let mut y: Vec<F> = (0..k)
            .map(|i| sol[i].clone() - sol[k + i].clone())
            .collect();
        normalize_direction(&mut y);
        Some(y)
    }

    fn trace_from_facets(&self, x: &Partition) -> Vec<Vec<F>> {
        let h = self.facets();
        let blocks = x.blocks();
        let project = |rows: &[Vec<F>]| -> Vec<Vec<F>> {
            let mut out: Vec<Vec<F>> = rows
                .iter()
                .map(|a| {
                    let mut p: Vec<F> = blocks
                        .iter()
                        .map(|b| b.iter().fold(F::zero(), |acc, &w| acc + a[w].clone()))
                        .collect();
                    normalize_direction(&mut p);
                    p
                })
                .filter(|p| p.iter().any(|v| !v.is_zero()))
                .collect();
            out.sort();
            out.dedup();
            out
        };
        dd::conic_generators(
            blocks.len(),
            &project(&h.inequalities),
            &project(&h.equalities),
        )
    }

    /// Projection onto `y` of `{(y, λ) : y∘x - Σ λ_j g_j ∈ cone(indicators), λ >= 0}`,
    /// where `g_j` are the generators other than world indicators.
    fn trace_by_lifting(&self, x: &Partition, rest: &[&Gamble<F>]) -> Vec<Vec<F>> {
        let k = x.block_count();
        let width = k + rest.len();
        let mut ineqs = Vec::new();
        for w in self.space.worlds() {
            let mut row = vec![F::zero(); width];
            row[x.block_of(w)] = F::one();
            for (j, g) in rest.iter().enumerate() {
                row[k + j] = -g.values[w].clone();
            }
            ineqs.push(row);
        }
        for j in 0..rest.len() {
            let mut row = vec![F::zero(); width];
            row[k + j] = F::one();
            ineqs.push(row);
        }
        let mut projected: Vec<Vec<F>> = dd::conic_generators(width, &ineqs, &[])
            .into_iter()
            .map(|v| {
                let mut y = v[..k].to_vec();
                normalize_direction(&mut y);
                y
            })
            .filter(|y| y.iter().any(|v| !v.is_zero()))
            .collect();
        projected.sort();
        projected.dedup();
        let block_space = PossibilitySpace::new(k).expect("partitions have a block");
        let rays = projected
            .into_iter()
            .map(|values| Gamble { values })
            .collect();
        ConeV::with_generators(block_space, rays)
            .pruned()
            .into_generators()
            .into_iter()
            .map(Gamble::into_values)
            .collect()
    }

    /// Every generator of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &ConeV<F>) -> Result<bool> {
        self.space.check(&other.space)?;
        Ok(self
            .generators
            .iter()
            .all(|g| other.generators.contains(g) || other.contains_values(&g.values)))
    }

    /// Same point set, decided by mutual generator membership.
    pub fn same_set(&self, other: &ConeV<F>) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    /// Drops every generator that lies in the cone of the others.
    ///
    /// For a pointed cone these are the generators that are not extreme. With
    /// distinct directions, a generator is extreme exactly when no other
    /// generator is tight on every constraint tight at it. Without facets at
    /// hand (or above a small dimension), each generator is tested by LP.
    pub fn pruned(&self) -> ConeV<F> {
        let n = self.space.size();
        let cached = if n <= FACET_PRUNING_MAX_DIM {
            Some(self.facets())
        } else {
            self.facets.get()
        };
        if let Some(h) = cached.filter(|h| {
            let mut all: Vec<&[F]> = h.equalities.iter().map(Vec::as_slice).collect();
            all.extend(h.inequalities.iter().map(Vec::as_slice));
            rank(&all, n) == n
        }) {
            // g is extreme unless another direction is tight wherever g is
            let tight: Vec<Vec<bool>> = self
                .generators
                .iter()
                .map(|g| {
                    h.inequalities
                        .iter()
                        .map(|a| dot(a, &g.values).is_zero())
                        .collect()
                })
                .collect();
            let covers =
                |big: &[bool], small: &[bool]| small.iter().zip(big).all(|(s, b)| !s || *b);
            let extreme: Vec<Gamble<F>> = self
                .generators
                .iter()
                .enumerate()
                .filter(|&(i, _)| !(0..tight.len()).any(|j| j != i && covers(&tight[j], &tight[i])))
                .map(|(_, g)| g.clone())
                .collect();
            return ConeV {
                space: self.space,
                generators: extreme,
                facets: self.facets.clone(),
            };
        }
        let mut kept = self.generators.clone();
        let mut i = 0;
        while i < kept.len() {
            let candidate = kept.remove(i);
            let rest = ConeV::with_generators(self.space, kept);
            let redundant = rest.contains_values(&candidate.values);
            kept = rest.generators;
            if !redundant {
                kept.insert(i, candidate);
                i += 1;
            }
        }
        ConeV::with_generators(self.space, kept)
    }
}

/// The world `w` when `g` is a positive multiple of its indicator.
fn indicator_world<F: Scalar>(g: &Gamble<F>) -> Option<usize> {
    let mut nonzero = g.values.iter().enumerate().filter(|(_, v)| !v.is_zero());
    match (nonzero.next(), nonzero.next()) {
        (Some((w, v)), None) if v.is_positive() => Some(w),
        _ => None,
    }
}

/// Row-major matrix whose columns are the given gambles.
fn columns<F: Scalar>(space: PossibilitySpace, gambles: &[&Gamble<F>]) -> Vec<Vec<F>> {
    space
        .worlds()
        .map(|w| gambles.iter().map(|g| g.values[w].clone()).collect())
        .collect()
}

impl<F: Scalar> fmt::Debug for ConeV<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone{:?}", self.generators)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct ConeVRepr<F: Scalar> {
    generators: Vec<Gamble<F>>,
}

impl<F: Scalar> Serialize for ConeV<F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ConeVRepr {
            generators: self.generators.clone(),
        }
        .serialize(serializer)
    }
}

impl<F: Scalar> ConeV<F> {
    /// Parses `{"generators": [...]}` against a known space; the space is
    /// needed because an empty generator list does not carry it.
    pub fn from_json(space: PossibilitySpace, value: &serde_json::Value) -> Result<Self, String> {
        let repr: ConeVRepr<F> =
            serde_json::from_value(value.clone()).map_err(|e| e.to_string())?;
        ConeV::new(space, repr.generators).map_err(|e| e.to_string())
    }
}

/// `{f : a·f >= 0 for every inequality a, b·f = 0 for every equality b}`.
#[derive(Clone, PartialEq, Eq)]
pub struct ConeH<F> {
    space: PossibilitySpace,
    inequalities: Vec<Vec<F>>,
    equalities: Vec<Vec<F>>,
}

impl<F: Scalar> ConeH<F> {
    pub fn new(
        space: PossibilitySpace,
        inequalities: Vec<Vec<F>>,
        equalities: Vec<Vec<F>>,
    ) -> Result<Self> {
        for row in inequalities.iter().chain(&equalities) {
            if row.len() != space.size() {
                return Err(Error::IncompatibleSpaces {
                    left: space.size(),
                    right: row.len(),
                });
            }
        }
        Ok(Self {
            space,
            inequalities,
            equalities,
        })
    }

    pub fn space(&self) -> PossibilitySpace {
        self.space
    }

    pub fn inequalities(&self) -> &[Vec<F>] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[Vec<F>] {
        &self.equalities
    }

    pub fn contains(&self, f: &Gamble<F>) -> Result<bool> {
        f.check(&self.space)?;
        Ok(self.contains_values(&f.values))
    }

    fn contains_values(&self, f: &[F]) -> bool {
        self.inequalities.iter().all(|a| !dot(a, f).is_negative())
            && self.equalities.iter().all(|b| dot(b, f).is_zero())
    }

    /// Generator form of the cone.
    pub fn to_v(&self) -> ConeV<F> {
        let raw = dd::conic_generators(self.space.size(), &self.inequalities, &self.equalities);
        ConeV {
            space: self.space,
            generators: raw.into_iter().map(|values| Gamble { values }).collect(),
            facets: OnceLock::from(self.clone()),
        }
    }
}

impl<F: Scalar> fmt::Debug for ConeH<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |rows: &[Vec<F>]| -> Vec<String> {
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect()
        };
        write!(
            f,
            "H{{>=0: {:?}, =0: {:?}}}",
            show(&self.inequalities),
            show(&self.equalities)
        )
    }
}

/// `L_x`: the gambles constant on every block of `x`.
#[derive(Clone, PartialEq, Eq)]
pub struct MeasurableSubspace<F> {
    partition: Partition,
    basis: Vec<Gamble<F>>,
}

impl<F: Scalar> MeasurableSubspace<F> {
    pub fn new(partition: &Partition) -> Self {
        let space = partition.space();
        let basis = partition
            .blocks()
            .iter()
            .map(|b| Gamble::set_indicator(space, b))
            .collect();
        Self {
            partition: partition.clone(),
            basis,
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// Block indicators; their span is the subspace.
    pub fn basis(&self) -> &[Gamble<F>] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, f: &Gamble<F>) -> Result<bool> {
        f.is_measurable(&self.partition)
    }

    /// `self ⊆ other` as linear subspaces.
    pub fn is_subspace_of(&self, other: &MeasurableSubspace<F>) -> Result<bool> {
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl<F: Scalar> fmt::Debug for MeasurableSubspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{:?}", self.partition)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn g(v: &[i64]) -> Gamble<Q> {
        Gamble::from_ints(v).unwrap()
    }

    fn cone(gens: &[&[i64]]) -> ConeV<Q> {
        let space = PossibilitySpace::new(gens.first().map_or(2, |v| v.len())).unwrap();
        ConeV::new(space, gens.iter().map(|v| g(v)).collect()).unwrap()
    }

    fn s2() -> PossibilitySpace {
        PossibilitySpace::new(2).unwrap()
    }

    #[test]
    fn facet_conversion_examples() {
        let h = cone(&[&[1, 0], &[0, 1]]).to_h();
        let mut ineqs = h.inequalities().to_vec();
        ineqs.sort();
        assert_eq!(
            ineqs,
            vec![g(&[0, 1]).into_values(), g(&[1, 0]).into_values()]
        );
        assert!(h.equalities().is_empty());

        let h = cone(&[&[1, -1], &[1, 0], &[0, 1]]).to_h();
        let mut ineqs = h.inequalities().to_vec();
        ineqs.sort();
        assert_eq!(
            ineqs,
            vec![g(&[1, 0]).into_values(), g(&[1, 1]).into_values()]
        );

        let h = ConeV::<Q>::zero(s2()).to_h();
        assert!(h.inequalities().is_empty());
        assert_eq!(h.equalities().len(), 2);
        assert!(h.contains(&g(&[0, 0])).unwrap());
        assert!(!h.contains(&g(&[1, 0])).unwrap());
    }

    #[test]
    fn membership_examples() {
        let c = cone(&[&[1, -1], &[1, 0], &[0, 1]]);
        assert!(c.contains(&g(&[2, -1])).unwrap());
        assert!(!c.contains(&g(&[-1, -1])).unwrap());
        for gen in c.generators() {
            assert!(c.contains(gen).unwrap());
        }
        assert!(c.contains(&g(&[1, 2, 3])).is_err());
    }

    #[test]
    fn nontrivial_zero_examples() {
        assert!(cone(&[&[1, -1], &[-1, 1]]).has_nontrivial_zero());
        assert!(!cone(&[&[1, -1], &[1, 0], &[0, 1]]).has_nontrivial_zero());
        assert!(!ConeV::<Q>::zero(s2()).has_nontrivial_zero());
        let w = cone(&[&[1, -1], &[-1, 1]])
            .nontrivial_zero_weights()
            .unwrap();
        assert_eq!(w, vec![Q::from_ratio(1, 2), Q::from_ratio(1, 2)]);
    }

    #[test]
    fn intersection_examples() {
        let orthant = ConeV::<Q>::orthant(s2());
        assert!(orthant
            .intersect(&orthant)
            .unwrap()
            .same_set(&orthant)
            .unwrap());

        let a = cone(&[&[1, -1], &[1, 0], &[0, 1]]);
        let b = cone(&[&[-1, 1], &[1, 0], &[0, 1]]);
        let both = a.intersect(&b).unwrap();
        assert!(both.same_set(&orthant).unwrap());

        let zero = ConeV::zero(s2());
        assert!(a.intersect(&zero).unwrap().generators().is_empty());
    }

    #[test]
    fn subspace_intersection_examples() {
        let constants = MeasurableSubspace::new(&Partition::bottom(s2()));
        let c = cone(&[&[1, -1], &[1, 0], &[0, 1]]);
        let ray = c.intersect_subspace(&constants).unwrap();
        assert_eq!(ray.generators(), &[g(&[1, 1])]);

        let everything = MeasurableSubspace::new(&Partition::top(s2()));
        let orthant = ConeV::<Q>::orthant(s2());
        assert!(orthant
            .intersect_subspace(&everything)
            .unwrap()
            .same_set(&orthant)
            .unwrap());
        assert!(ConeV::<Q>::zero(s2())
            .intersect_subspace(&constants)
            .unwrap()
            .generators()
            .is_empty());
    }

    #[test]
    fn measurability_examples() {
        let x: Partition = serde_json::from_str("[[0,1],[2,3]]").unwrap();
        assert!(g(&[1, 1, -1, -1]).is_measurable(&x).unwrap());
        assert!(!g(&[1, 0, 0, 0]).is_measurable(&x).unwrap());
        let top = Partition::top(x.space());
        assert!(g(&[1, 0, 3, -7]).is_measurable(&top).unwrap());
        assert!(g(&[1, 0]).is_measurable(&x).is_err());
    }

    #[test]
    fn constructor_drops_zero_and_repeats() {
        let c = cone(&[&[1, -1], &[0, 0], &[2, -2], &[1, -1], &[0, 1]]);
        assert_eq!(c.generators(), &[g(&[1, -1]), g(&[0, 1])]);
    }

    #[test]
    fn pruning_keeps_extreme_rays() {
        let c = cone(&[&[1, 0], &[1, 1], &[0, 1]]);
        assert_eq!(c.pruned().generators(), &[g(&[1, 0]), g(&[0, 1])]);
    }

    #[test]
    fn gamble_json_accepts_both_spellings() {
        let f: Gamble<Q> = serde_json::from_str(r#"["1/2", -3, "4/2"]"#).unwrap();
        assert_eq!(
            f.values(),
            &[Q::from_ratio(1, 2), Q::from_int(-3), Q::from_int(2)]
        );
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"["1/2","-3","2"]"#);
        assert!(serde_json::from_str::<Gamble<Q>>(r#"["0.5"]"#).is_err());
        assert!(serde_json::from_str::<Gamble<Q>>("[]").is_err());
    }

    #[test]
    fn trace_methods_agree() {
        use crate::random::Sampler;
        type R = crate::Rational;
        let mut rng = Sampler::new(11);
        for round in 0..12 {
            let space = PossibilitySpace::new(5 + round % 3).unwrap();
            let x = rng.partition(space, 2 + round % 3);
            let mut gens: Vec<Gamble<R>> =
                (0..3 + round).map(|_| rng.nonzero_gamble(space)).collect();
            gens.extend(space.worlds().map(|w| Gamble::indicator(space, w)));
            let c = ConeV::new(space, gens).unwrap();
            let (_, rest) = c.split_indicators();
            let to_cone = |ys: Vec<Vec<R>>| {
                let lifted = ys
                    .into_iter()
                    .map(|y| {
                        Gamble::new(space.worlds().map(|w| y[x.block_of(w)].clone()).collect())
                            .unwrap()
                    })
                    .collect();
                ConeV::new(space, lifted).unwrap()
            };
            let facets = to_cone(c.trace_from_facets(&x));
            let lifted = to_cone(c.trace_by_lifting(&x, &rest));
            let grown = to_cone(c.trace_by_expansion(&x, &rest));
            assert!(facets.same_set(&lifted).unwrap(), "round {round}");
            assert!(facets.same_set(&grown).unwrap(), "round {round}");
        }
    }
}
