//! Maximal coherent sets given by lexicographic chains of probability mass
//! functions, and the separation witnesses built from them.
//!
//! A chain `(p₁, …, p_k)` whose expectation functionals have full rank
//! defines `M = {f ≠ 0 : (E_{p₁} f, …, E_{p_k} f) is lexicographically
//! positive}`. Full rank means every nonzero `f` has a nonzero expectation
//! somewhere in the chain, so exactly one of `f`, `−f` belongs to `M`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::cone::Gamble;
use crate::error::{Error, Result};
use crate::lp::feasible_point;
use crate::partition::{Partition, PossibilitySpace};
use crate::phi::{closure, PhiElement};
use crate::scalar::{rank, Scalar};

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "", try_from = "ChainRepr<F>", into = "ChainRepr<F>")]
pub struct MaximalSet<F: Scalar> {
    space: PossibilitySpace,
    chain: Vec<Gamble<F>>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct ChainRepr<F: Scalar> {
    chain: Vec<Gamble<F>>,
}

impl<F: Scalar> TryFrom<ChainRepr<F>> for MaximalSet<F> {
    type Error = Error;

    fn try_from(repr: ChainRepr<F>) -> Result<Self> {
        let space = repr.chain.first().ok_or(Error::EmptyList)?.space();
        MaximalSet::lex_new(space, repr.chain)
    }
}

impl<F: Scalar> From<MaximalSet<F>> for ChainRepr<F> {
    fn from(m: MaximalSet<F>) -> Self {
        ChainRepr { chain: m.chain }
    }
}

impl<F: Scalar> std::fmt::Debug for MaximalSet<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("MaximalSet").field(&self.chain).finish()
    }
}

fn check_pmf<F: Scalar>(space: PossibilitySpace, p: &Gamble<F>) -> Result<()> {
    p.check(&space)?;
    if p.values().iter().any(|v| v.is_negative()) {
        return Err(Error::InvalidPmf(format!("negative mass in {p:?}")));
    }
    let total = p.values().iter().fold(F::zero(), |acc, v| acc + v.clone());
    if !total.is_one() {
        return Err(Error::InvalidPmf(format!("{p:?} sums to {total}")));
    }
    Ok(())
}

/// First nonzero entry decides; all zero is not positive.
fn lex_positive<F: Scalar>(values: impl IntoIterator<Item = F>) -> bool {
    values
        .into_iter()
        .find(|v| !v.is_zero())
        .is_some_and(|v| v.is_positive())
}

impl<F: Scalar> MaximalSet<F> {
    /// Validates every pmf and the full-rank condition.
    pub fn lex_new(space: PossibilitySpace, chain: Vec<Gamble<F>>) -> Result<Self> {
        for p in &chain {
            check_pmf(space, p)?;
        }
        let rows: Vec<&[F]> = chain.iter().map(Gamble::values).collect();
        let r = rank(&rows, space.size());
        if r < space.size() {
            return Err(Error::NotMaximal {
                rank: r,
                size: space.size(),
            });
        }
        Ok(Self { space, chain })
    }

    pub fn space(&self) -> PossibilitySpace {
        self.space
    }

    pub fn chain(&self) -> &[Gamble<F>] {
        &self.chain
    }

    pub fn expectations(&self, f: &Gamble<F>) -> Result<Vec<F>> {
        f.check(&self.space)?;
        Ok(self.chain.iter().map(|p| f.pair(p.values())).collect())
    }

    /// `f ∈ M`.
    pub fn lex_member(&self, f: &Gamble<F>) -> Result<bool> {
        Ok(lex_positive(self.expectations(f)?))
    }

    /// Lexicographic comparison of the expectation vectors of `f` and `g`.
    pub fn compare(&self, f: &Gamble<F>, g: &Gamble<F>) -> Result<Ordering> {
        Ok(self.expectations(f)?.cmp(&self.expectations(g)?))
    }

    /// `p ⊆ M`, decided on the generators of `p`.
    pub fn dominates(&self, p: &PhiElement<F>) -> Result<bool> {
        p.space().check(&self.space)?;
        for g in p.generators()? {
            if !self.lex_member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `g ∈ ε_x(M) = C(M ∩ L_x)`.
    ///
    /// Either `g` is a nonnegative nonzero gamble, or the blockwise minimum
    /// `m*(g)` (the largest x-measurable gamble below `g`) is nonzero and
    /// lexicographically positive under the chain's marginals on the blocks.
    /// Any x-measurable `h ≤ g` in `M` satisfies `h ≤ m*(g)`, and adding a
    /// nonnegative gamble keeps a lexicographically positive vector positive.
    pub fn local_atom_member(&self, g: &Gamble<F>, x: &Partition) -> Result<bool> {
        g.check(&self.space)?;
        self.space.check(&x.space())?;
        if g.is_positive() {
            return Ok(true);
        }
        let mins: Vec<F> = x
            .blocks()
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&w| g.values()[w].clone())
                    .min()
                    .expect("blocks are nonempty")
            })
            .collect();
        if mins.iter().all(|v| v.is_zero()) {
            return Ok(false);
        }
        let marginal_expectations = self.chain.iter().map(|p| {
            x.blocks().iter().zip(&mins).fold(F::zero(), |acc, (b, m)| {
                let mass = b.iter().fold(F::zero(), |s, &w| s + p.values()[w].clone());
                acc + mass * m.clone()
            })
        });
        Ok(lex_positive(marginal_expectations))
    }
}

fn check_outside<F: Scalar>(p: &PhiElement<F>, f: &Gamble<F>) -> Result<()> {
    f.check(&p.space())?;
    p.generators()?;
    if f.is_zero() {
        return Err(Error::ZeroGamble);
    }
    if p.contains(f)? {
        return Err(Error::Precondition(
            "the gamble already belongs to the set".into(),
        ));
    }
    Ok(())
}

/// `C(gen(p) ∪ {−f})` for `f ∉ p`: a coherent superset of `p` that excludes `f`.
pub fn separating_superset<F: Scalar>(p: &PhiElement<F>, f: &Gamble<F>) -> Result<PhiElement<F>> {
    check_outside(p, f)?;
    let mut gens = p.generators()?.to_vec();
    gens.push(-f);
    let out = closure(p.space(), &gens)?;
    debug_assert!(!out.is_top(), "−f joins a coherent set without reaching 0");
    debug_assert!(
        !out.contains(f).unwrap_or(true),
        "f would give 0 = f + (−f)"
    );
    Ok(out)
}

/// A maximal set containing `p` and not `f`, for `f ∉ p`.
///
/// Since `0 ∉ posi(gen(p) ∪ {−f})`, Gordan's alternative gives a functional
/// that is strictly positive on every generator and on `−f`; it is strictly
/// positive on the world indicators too, so it normalises to a pmf with full
/// support. That pmf alone fixes every decision needed here; point masses on
/// the first `|Ω| − 1` worlds complete the chain to full rank.
pub fn extend_to_maximal<F: Scalar>(p: &PhiElement<F>, f: &Gamble<F>) -> Result<MaximalSet<F>> {
    check_outside(p, f)?;
    let space = p.space();
    let n = space.size();
    let mut targets: Vec<Gamble<F>> = p.generators()?.to_vec();
    targets.push(-f);

    // ℓ·s − slack_s = 1 with ℓ, slack >= 0
    let m = targets.len();
    let a: Vec<Vec<F>> = targets
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut row = s.values().to_vec();
            row.extend((0..m).map(|j| if i == j { -F::one() } else { F::zero() }));
            row
        })
        .collect();
    let b = vec![F::one(); m];
    let x = feasible_point(&a, &b)
        .ok_or_else(|| Error::Internal("no strictly separating functional found".into()))?;
    let ell = &x[..n];
    let total = ell.iter().fold(F::zero(), |acc, v| acc + v.clone());
    let first = Gamble::new(ell.iter().map(|v| v.clone() / total.clone()).collect())?;

    let mut chain = vec![first];
    chain.extend((0..n - 1).map(|w| Gamble::indicator(space, w)));
    let out = MaximalSet::lex_new(space, chain)?;
    debug_assert!(out.dominates(p).unwrap_or(false));
    debug_assert!(!out.lex_member(f).unwrap_or(true));
    Ok(out)
}

/// The finitely generated part of `M` used when combining with `p` in the
/// atom dichotomy: `{g, −g}` for a generator `g` of `p` outside `M`.
pub fn dichotomy_witness<F: Scalar>(
    m: &MaximalSet<F>,
    p: &PhiElement<F>,
) -> Result<Option<Gamble<F>>> {
    p.space().check(&m.space())?;
    for g in p.generators()? {
        if !m.lex_member(g)? {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn g(v: &[i64]) -> Gamble<Q> {
        Gamble::from_ints(v).unwrap()
    }

    fn pmf(v: &[(i64, i64)]) -> Gamble<Q> {
        Gamble::new(v.iter().map(|&(n, d)| Q::new(n, d)).collect()).unwrap()
    }

    fn s(n: usize) -> PossibilitySpace {
        PossibilitySpace::new(n).unwrap()
    }

    fn half_then_first() -> MaximalSet<Q> {
        MaximalSet::lex_new(s(2), vec![pmf(&[(1, 2), (1, 2)]), pmf(&[(1, 1), (0, 1)])]).unwrap()
    }

    #[test]
    fn construction() {
        half_then_first();
        let err = MaximalSet::lex_new(s(2), vec![pmf(&[(1, 2), (1, 2)])]).unwrap_err();
        assert_eq!(err, Error::NotMaximal { rank: 1, size: 2 });
        let single = MaximalSet::lex_new(s(1), vec![pmf(&[(1, 1)])]).unwrap();
        assert!(single.lex_member(&g(&[3])).unwrap());
        assert!(!single.lex_member(&g(&[-3])).unwrap());
        assert!(matches!(
            MaximalSet::lex_new(s(2), vec![pmf(&[(1, 2), (1, 3)])]),
            Err(Error::InvalidPmf(_))
        ));
        assert!(matches!(
            MaximalSet::lex_new(s(2), vec![pmf(&[(3, 2), (-1, 2)])]),
            Err(Error::InvalidPmf(_))
        ));
    }

    #[test]
    fn membership() {
        let m = half_then_first();
        assert!(m.lex_member(&g(&[1, -1])).unwrap());
        assert!(!m.lex_member(&g(&[-1, 1])).unwrap());
        assert!(!m.lex_member(&g(&[0, 0])).unwrap());
        assert!(m.lex_member(&g(&[0, 1])).unwrap());
        assert!(m.lex_member(&g(&[1, 0])).unwrap());
        assert!(m.lex_member(&g(&[1, 2, 3])).is_err());
    }

    #[test]
    fn domination() {
        let m = half_then_first();
        assert!(m.dominates(&PhiElement::unit(s(2))).unwrap());
        assert!(m
            .dominates(&closure(s(2), &[g(&[1, -1])]).unwrap())
            .unwrap());
        let other = closure(s(2), &[g(&[-1, 1])]).unwrap();
        assert!(!m.dominates(&other).unwrap());
        assert_eq!(dichotomy_witness(&m, &other).unwrap(), Some(g(&[-1, 1])));
        assert_eq!(
            m.dominates(&PhiElement::top(s(2))),
            Err(Error::TopNotAllowed)
        );
    }

    #[test]
    fn separation() {
        let unit = PhiElement::<Q>::unit(s(2));
        let f = g(&[1, -1]);
        let sup = separating_superset(&unit, &f).unwrap();
        assert!(sup.same(&closure(s(2), &[g(&[-1, 1])]).unwrap()).unwrap());
        assert!(!sup.contains(&f).unwrap());

        let m = extend_to_maximal(&unit, &f).unwrap();
        assert_eq!(m.chain(), &[pmf(&[(1, 3), (2, 3)]), pmf(&[(1, 1), (0, 1)])]);
        assert!(m.dominates(&unit).unwrap());
        assert!(!m.lex_member(&f).unwrap());

        let p = closure(s(2), &[g(&[1, -1])]).unwrap();
        for f in [g(&[-3, 1]), g(&[0, -1])] {
            assert!(!separating_superset(&p, &f).unwrap().contains(&f).unwrap());
            let m = extend_to_maximal(&p, &f).unwrap();
            assert!(m.dominates(&p).unwrap());
            assert!(!m.lex_member(&f).unwrap());
        }

        assert!(matches!(
            separating_superset(&unit, &g(&[1, 0])),
            Err(Error::Precondition(_))
        ));
        assert_eq!(
            extend_to_maximal(&unit, &g(&[0, 0])),
            Err(Error::ZeroGamble)
        );
    }

    #[test]
    fn local_atoms() {
        let m = half_then_first();
        let bottom = Partition::bottom(s(2));
        assert!(m.local_atom_member(&g(&[1, 0]), &bottom).unwrap());
        assert!(m.local_atom_member(&g(&[3, 1]), &bottom).unwrap());
        assert!(!m.local_atom_member(&g(&[1, -1]), &bottom).unwrap());
        assert!(!m.local_atom_member(&g(&[0, 0]), &bottom).unwrap());
        // with singleton blocks this is plain membership
        let top = Partition::top(s(2));
        assert!(m.local_atom_member(&g(&[1, -1]), &top).unwrap());
    }

    #[test]
    fn chain_json_round_trip() {
        let m = half_then_first();
        let v = serde_json::to_value(&m).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"chain": [["1/2", "1/2"], ["1", "0"]]})
        );
        let back: MaximalSet<Q> = serde_json::from_value(v).unwrap();
        assert_eq!(back, m);
        let bad = serde_json::json!({"chain": [["1/2", "1/2"]]});
        assert!(serde_json::from_value::<MaximalSet<Q>>(bad).is_err());
    }
}
