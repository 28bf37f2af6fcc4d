//! Double description: generators of `{x : A x >= 0, E x = 0}`.
//!
//! The engine handles cones with a nontrivial lineality space. It starts
//! from the whole space (lineality = identity basis, no rays) and adds one
//! constraint at a time. A constraint that is not identically zero on the
//! current lineality space shrinks it by one dimension; otherwise the rays
//! are split by sign and adjacent positive/negative pairs are combined.
//! Two rays are adjacent when no third ray is tight on every constraint the
//! pair shares; this combinatorial test is exact because the ray list is
//! kept minimal at every step.
//!
//! Generator-to-facet conversion goes through the polar cone, so the same
//! routine serves both directions. Internally every vector is a primitive
//! integer vector over `F::Int`.

use num_integer::Integer;
use num_traits::{One, Signed};

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Generators<F> {
    /// Extreme rays of the cone modulo its lineality space.
    pub rays: Vec<Vec<F>>,
    /// A basis of the lineality space.
    pub lineality: Vec<Vec<F>>,
}

struct Ray<F> {
    v: Vec<F>,
    /// Bit set over the processed inequality list: constraints tight at `v`.
    tight: Bits,
}

#[derive(Clone, Default)]
struct Bits(Vec<u64>);

impl Bits {
    fn all_below(n: usize) -> Self {
        let mut b = Bits::default();
        for i in 0..n {
            b.insert(i);
        }
        b
    }

    fn insert(&mut self, i: usize) {
        let (word, bit) = (i / 64, i % 64);
        if self.0.len() <= word {
            self.0.resize(word + 1, 0);
        }
        self.0[word] |= 1 << bit;
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset_of(&self, other: &Bits) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.0.get(i).copied().unwrap_or(0) == 0)
    }
}

/// Enumerates generators of `{x in F^dim : a·x >= 0 for a in ineqs, e·x = 0 for e in eqs}`.
///
/// Inequalities are deduplicated and inserted in lexicographic order, so the
/// output depends only on the constraint set.
pub(crate) fn generators_of<F: Scalar>(
    dim: usize,
    ineqs: &[Vec<F>],
    eqs: &[Vec<F>],
) -> Generators<F> {
    let to_int = |a: &Vec<F>| {
        let mut v = F::integral_multiple(a);
        make_primitive(&mut v);
        v
    };
    let mut ineqs: Vec<Vec<F::Int>> = ineqs
        .iter()
        .filter(|a| a.iter().any(|x| !x.is_zero()))
        .map(to_int)
        .collect();
    ineqs.sort();
    ineqs.dedup();
    let eqs: Vec<Vec<F::Int>> = eqs.iter().map(to_int).collect();

    let g = integer_generators(dim, &ineqs, &eqs);
    let back = |v: Vec<F::Int>| -> Vec<F> {
        v.into_iter()
            .map(|x| F::from_fraction(x, F::Int::one()))
            .collect()
    };
    Generators {
        rays: g.rays.into_iter().map(back).collect(),
        lineality: g.lineality.into_iter().map(back).collect(),
    }
}

fn make_primitive<T: Clone + Integer + Signed>(v: &mut [T]) {
    let g = v.iter().fold(T::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = x.clone() / g.clone();
        }
    }
}

fn dot<T: Clone + Integer + Signed>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn integer_generators<T: Clone + Integer + Signed>(
    dim: usize,
    ineqs: &[Vec<T>],
    eqs: &[Vec<T>],
) -> Generators<T> {
    let mut lineality: Vec<Vec<T>> = (0..dim)
        .map(|i| {
            let mut e = vec![T::zero(); dim];
            e[i] = T::one();
            e
        })
        .collect();
    let mut rays: Vec<Ray<T>> = Vec::new();
    for (k, e) in eqs.iter().enumerate() {
        add_constraint(e, true, &mut lineality, &mut rays, 0, k, dim);
    }
    for (k, a) in ineqs.iter().enumerate() {
        add_constraint(a, false, &mut lineality, &mut rays, k, eqs.len(), dim);
    }

    Generators {
        rays: rays.into_iter().map(|r| r.v).collect(),
        lineality,
    }
}

fn add_constraint<T: Clone + Integer + Signed>(
    a: &[T],
    equality: bool,
    lineality: &mut Vec<Vec<T>>,
    rays: &mut Vec<Ray<T>>,
    index: usize,
    equalities: usize,
    dim: usize,
) {
    if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
        let mut l0 = lineality.remove(pos);
        let mut s0 = dot(a, &l0);
        if s0.is_negative() {
            for x in l0.iter_mut() {
                *x = -x.clone();
            }
            s0 = -s0;
        }
        // project a out of the remaining lineality vectors and every ray
        let project = |v: &mut Vec<T>| {
            let s = dot(a, v);
            if !s.is_zero() {
                for (x, y) in v.iter_mut().zip(&l0) {
                    *x = x.clone() * s0.clone() - s.clone() * y.clone();
                }
                make_primitive(v);
            }
        };
        for l in lineality.iter_mut() {
            project(l);
        }
        for r in rays.iter_mut() {
            project(&mut r.v);
            if !equality {
                r.tight.insert(index);
            }
        }
        if !equality {
            make_primitive(&mut l0);
            rays.push(Ray {
                v: l0,
                tight: Bits::all_below(index),
            });
        }
        return;
    }

    let signs: Vec<T> = rays.iter().map(|r| dot(a, &r.v)).collect();
    // an edge needs dim - lineality - 2 independent common constraints
    let min_common = (dim - lineality.len()).saturating_sub(2 + equalities);
    let mut next: Vec<Ray<T>> = Vec::new();
    let mut combined: Vec<Ray<T>> = Vec::new();

    for (i, p) in rays.iter().enumerate() {
        if !signs[i].is_positive() {
            continue;
        }
        for (j, n) in rays.iter().enumerate() {
            if !signs[j].is_negative() {
                continue;
            }
            let common = p.tight.and(&n.tight);
            if common.count() < min_common {
                continue;
            }
            let blocked = rays
                .iter()
                .enumerate()
                .any(|(k, r)| k != i && k != j && common.is_subset_of(&r.tight));
            if blocked {
                continue;
            }
            let sp = signs[i].clone();
            let sn = signs[j].clone();
            let mut v: Vec<T> =
                p.v.iter()
                    .zip(&n.v)
                    .map(|(pv, nv)| sp.clone() * nv.clone() - sn.clone() * pv.clone())
                    .collect();
            make_primitive(&mut v);
            let mut tight = common;
            if !equality {
                tight.insert(index);
            }
            combined.push(Ray { v, tight });
        }
    }

    for (ray, s) in rays.drain(..).zip(signs) {
        if s.is_zero() {
            let mut ray = ray;
            if !equality {
                ray.tight.insert(index);
            }
            next.push(ray);
        } else if s.is_positive() && !equality {
            next.push(ray);
        }
    }
    next.extend(combined);
    *rays = next;
}

/// Facet description of `cone(generators)`: the polar cone's extreme rays
/// are the inequalities, its lineality basis the equalities.
pub(crate) fn facets_of<F: Scalar>(
    dim: usize,
    generators: &[Vec<F>],
) -> (Vec<Vec<F>>, Vec<Vec<F>>) {
    let polar = generators_of(dim, generators, &[]);
    (polar.rays, polar.lineality)
}

/// Generator list of `{x : A x >= 0, E x = 0}` as plain conic generators:
/// rays plus both orientations of each lineality direction.
pub(crate) fn conic_generators<F: Scalar>(
    dim: usize,
    ineqs: &[Vec<F>],
    eqs: &[Vec<F>],
) -> Vec<Vec<F>> {
    let g = generators_of(dim, ineqs, eqs);
    let mut out = g.rays;
    for l in g.lineality {
        let neg: Vec<F> = l.iter().map(|x| -x.clone()).collect();
        out.push(l);
        out.push(neg);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;
    use num_traits::Zero;

    type Q = Ratio<i64>;

    fn vs(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Q::from_int(x)).collect())
            .collect()
    }

    fn sorted(mut v: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
        v.sort();
        v
    }

    #[test]
    fn orthant_facets() {
        let (ineqs, eqs) = facets_of(2, &vs(&[&[1, 0], &[0, 1]]));
        assert_eq!(sorted(ineqs), vs(&[&[0, 1], &[1, 0]]));
        assert!(eqs.is_empty());
    }

    #[test]
    fn wedge_facets() {
        let (ineqs, eqs) = facets_of(2, &vs(&[&[1, -1], &[1, 0], &[0, 1]]));
        assert_eq!(sorted(ineqs), vs(&[&[1, 0], &[1, 1]]));
        assert!(eqs.is_empty());
    }

    #[test]
    fn zero_cone_is_all_equalities() {
        let (ineqs, eqs) = facets_of::<Q>(2, &[]);
        assert!(ineqs.is_empty());
        assert_eq!(eqs.len(), 2);
    }

    #[test]
    fn line_has_lineality() {
        let g = generators_of(2, &vs(&[&[1, 1], &[-1, -1]]), &[]);
        assert!(g.rays.is_empty());
        assert_eq!(g.lineality.len(), 1);
        assert_eq!(
            crate::scalar::dot(&g.lineality[0], &vs(&[&[1, 1]])[0]),
            Q::from_int(0)
        );
    }

    #[test]
    fn half_plane_with_line() {
        // {x >= 0} in the plane: one ray, one lineality direction
        let g = generators_of(2, &vs(&[&[1, 0]]), &[]);
        assert_eq!(g.rays, vs(&[&[1, 0]]));
        assert_eq!(g.lineality.len(), 1);
        assert!(g.lineality[0][0].is_zero());
    }

    #[test]
    fn square_pyramid_rays() {
        // cone over the square: four extreme rays in 3D
        let ineqs = vs(&[&[1, 0, 1], &[-1, 0, 1], &[0, 1, 1], &[0, -1, 1]]);
        let g = generators_of(3, &ineqs, &[]);
        assert!(g.lineality.is_empty());
        assert_eq!(
            sorted(g.rays),
            vs(&[&[-1, -1, 1], &[-1, 1, 1], &[1, -1, 1], &[1, 1, 1]])
        );
    }

    #[test]
    fn equality_cuts_orthant() {
        let g = generators_of(2, &vs(&[&[1, 0], &[0, 1]]), &vs(&[&[1, -1]]));
        assert_eq!(g.rays, vs(&[&[1, 1]]));
        assert!(g.lineality.is_empty());
    }
}
