//! The exact ordered field every gamble, cone and probability lives in.
//!
//! Coherence hinges on deciding whether the origin sits inside a closed
//! polyhedral cone, so the core never touches floating point. Any type that
//! behaves like an ordered field with exact equality works; the crate root
//! fixes [`crate::Rational`] (arbitrary precision) as the default.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, Zero};

/// Exact ordered field used throughout the crate.
///
/// Implemented for `Ratio<T>` over `i32`, `i64`, `i128` and `BigInt`.
/// Fixed-width ratios overflow on large problems; prefer `BigRational`
/// outside tests.
pub trait Scalar:
    Clone + Ord + Debug + Display + FromStr + Signed + FromPrimitive + Send + Sync + 'static
{
    /// The ring the field is the fraction field of.
    type Int: Clone + Integer + Signed + Debug;

    /// A positive multiple of `v` with integral entries.
    fn integral_multiple(v: &[Self]) -> Vec<Self::Int>;

    fn from_fraction(numer: Self::Int, denom: Self::Int) -> Self;

    /// Rescales a vector by a positive factor to the primitive integer
    /// vector in its direction. The zero vector is left alone.
    fn make_primitive(v: &mut [Self]);

    fn dot(a: &[Self], b: &[Self]) -> Self {
        a.iter()
            .zip(b)
            .fold(Self::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
    }

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every i64 is representable")
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_int(numer) / Self::from_int(denom)
    }

    /// Parses the `p/q` or integer spelling used by the JSON formats.
    fn parse_exact(text: &str) -> Option<Self> {
        Self::from_str(text.trim()).ok()
    }
}

fn primitive_ratio<T: Clone + Integer + Signed>(v: &mut [Ratio<T>]) {
    let lcm = v
        .iter()
        .filter(|x| !x.is_zero())
        .fold(T::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<T> = v
        .iter()
        .map(|x| x.numer().clone() * (lcm.clone() / x.denom().clone()))
        .collect();
    let g = ints.iter().fold(T::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return;
    }
    for (x, n) in v.iter_mut().zip(ints) {
        *x = Ratio::new_raw(n / g.clone(), T::one());
    }
}

/// Integer vectors (the normal form of every ray and facet) skip the
/// per-operation reduction of `Ratio`.
fn dot_ratio<T: Clone + Integer + Signed>(a: &[Ratio<T>], b: &[Ratio<T>]) -> Ratio<T> {
    if a.iter().chain(b).all(|x| x.denom().is_one()) {
        let sum = a.iter().zip(b).fold(T::zero(), |acc, (x, y)| {
            acc + x.numer().clone() * y.numer().clone()
        });
        return Ratio::new_raw(sum, T::one());
    }
    a.iter()
        .zip(b)
        .fold(Ratio::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

macro_rules! ratio_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for Ratio<$t> {
            type Int = $t;

            fn integral_multiple(v: &[Self]) -> Vec<$t> {
                let lcm = v.iter().fold(<$t>::one(), |l, x| l.lcm(x.denom()));
                v.iter().map(|x| x.numer().clone() * (lcm.clone() / x.denom().clone())).collect()
            }

            fn from_fraction(numer: $t, denom: $t) -> Self {
                Ratio::new(numer, denom)
            }

            fn make_primitive(v: &mut [Self]) {
                primitive_ratio(v)
            }

            fn dot(a: &[Self], b: &[Self]) -> Self {
                dot_ratio(a, b)
            }
        }
    )*};
}

ratio_scalar!(i32, i64, i128, BigInt);

pub(crate) fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    debug_assert_eq!(a.len(), b.len());
    F::dot(a, b)
}

/// Canonical representative of the ray through `v`: the primitive integer
/// vector with the same direction.
pub(crate) fn normalize_direction<F: Scalar>(v: &mut [F]) {
    F::make_primitive(v)
}

/// Rank of a dense matrix by exact Gaussian elimination.
pub(crate) fn rank<F: Scalar>(rows: &[&[F]], ncols: usize) -> usize {
    let mut m: Vec<Vec<F>> = rows.iter().map(|r| r.to_vec()).collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let p = m[rank][col].clone();
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / p.clone();
            let (top, bottom) = m.split_at_mut(r);
            for (x, y) in bottom[0][col..ncols].iter_mut().zip(&top[rank][col..ncols]) {
                *x = x.clone() - factor.clone() * y.clone();
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn parses_both_spellings() {
        let half: BigRational = Scalar::parse_exact("1/2").unwrap();
        assert_eq!(half, BigRational::from_ratio(1, 2));
        let three: Ratio<i64> = Scalar::parse_exact(" -3 ").unwrap();
        assert_eq!(three, Ratio::from_int(-3));
        assert!(<BigRational as Scalar>::parse_exact("0.5").is_none());
    }

    #[test]
    fn rank_of_dependent_rows() {
        let r = |v: &[i64]| {
            v.iter()
                .map(|&x| Ratio::<i64>::from_int(x))
                .collect::<Vec<_>>()
        };
        let a = r(&[1, 2, 3]);
        let b = r(&[2, 4, 6]);
        let c = r(&[0, 1, 1]);
        assert_eq!(rank(&[&a, &b], 3), 1);
        assert_eq!(rank(&[&a, &b, &c], 3), 2);
        assert_eq!(rank::<Ratio<i64>>(&[], 3), 0);
    }

    #[test]
    fn normalization_keeps_direction() {
        let mut v = vec![
            Ratio::<i64>::from_int(0),
            Ratio::from_int(-4),
            Ratio::from_int(2),
        ];
        normalize_direction(&mut v);
        assert_eq!(
            v,
            vec![Ratio::from_int(0), Ratio::from_int(-2), Ratio::from_int(1)]
        );
        let mut w = vec![Ratio::<i64>::new(1, 2), Ratio::new(-2, 3)];
        normalize_direction(&mut w);
        assert_eq!(w, vec![Ratio::from_int(3), Ratio::from_int(-4)]);
        let mut z = vec![Ratio::<i64>::from_int(0); 2];
        normalize_direction(&mut z);
        assert!(z.iter().all(|x| x.is_zero()));
    }
}
