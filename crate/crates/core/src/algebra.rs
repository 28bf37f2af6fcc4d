//! Combination, extraction and supports on Φ, plus the question sets they
//! are indexed by.

use std::collections::HashMap;

use serde_json::Value;

use crate::cone::{ConeV, Gamble, MeasurableSubspace};
use crate::error::{Error, Result};
use crate::partition::{Partition, PossibilitySpace};
use crate::phi::{self, closure, PhiElement};
use crate::scalar::Scalar;

/// `D₁ · D₂ = C(D₁ ∪ D₂)`; `Top` absorbs.
pub fn combine<F: Scalar>(a: &PhiElement<F>, b: &PhiElement<F>) -> Result<PhiElement<F>> {
    a.space().check(&b.space())?;
    match (a, b) {
        (PhiElement::Top(s), _) | (_, PhiElement::Top(s)) => Ok(PhiElement::Top(*s)),
        (PhiElement::Coherent(ca), PhiElement::Coherent(cb)) => {
            let mut gens: Vec<Gamble<F>> = ca.generators().to_vec();
            gens.extend_from_slice(cb.generators());
            closure(ca.space(), &gens)
        }
    }
}

/// `ε_x(D) = C(D ∩ L_x)`.
pub fn extract<F: Scalar>(x: &Partition, p: &PhiElement<F>) -> Result<PhiElement<F>> {
    p.space().check(&x.space())?;
    match p {
        PhiElement::Top(s) => Ok(PhiElement::Top(*s)),
        PhiElement::Coherent(c) => {
            let space = c.space();
            let mut measurable = true;
            for g in c.generators() {
                if !(g.is_measurable(x)? || is_indicator(g)) {
                    measurable = false;
                    break;
                }
            }
            if measurable {
                return Ok(p.clone());
            }
            // the trace lies in a coherent cone, so adding L⁺ cannot reach 0
            let mut gens = c
                .intersect_subspace(&MeasurableSubspace::new(x))?
                .into_generators();
            gens.extend(space.worlds().map(|w| Gamble::indicator(space, w)));
            Ok(PhiElement::Coherent(ConeV::new(space, gens)?.pruned()))
        }
    }
}

fn is_indicator<F: Scalar>(g: &Gamble<F>) -> bool {
    let mut nonzero = g.values().iter().filter(|v| !v.is_zero());
    nonzero.next().is_some_and(|v| v.is_positive()) && nonzero.next().is_none()
}

/// `x` is a support (domain) of `p`: `ε_x(p) = p`.
pub fn is_support<F: Scalar>(x: &Partition, p: &PhiElement<F>) -> Result<bool> {
    extract(x, p)?.same(p)
}

/// A finite family of questions over one space, closed under join.
#[derive(Debug, Clone)]
pub struct QuestionSet {
    space: PossibilitySpace,
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    contains_top: bool,
}

impl QuestionSet {
    /// Validates join-closure; duplicates are removed.
    pub fn new(partitions: Vec<Partition>) -> Result<Self> {
        let qs = Self::build(partitions)?;
        for a in &qs.partitions {
            for b in &qs.partitions {
                if !qs.index.contains_key(&a.join(b)?) {
                    return Err(Error::NotJoinClosed);
                }
            }
        }
        Ok(qs)
    }

    /// The join-closure of the given partitions.
    pub fn generated_by(partitions: Vec<Partition>) -> Result<Self> {
        let mut all = Self::build(partitions)?.partitions;
        let mut i = 0;
        while i < all.len() {
            for j in 0..=i {
                let joined = all[i].join(&all[j])?;
                if !all.contains(&joined) {
                    all.push(joined);
                }
            }
            i += 1;
        }
        Self::build(all)
    }

    fn build(partitions: Vec<Partition>) -> Result<Self> {
        let space = partitions.first().ok_or(Error::EmptyList)?.space();
        let mut unique = Vec::new();
        let mut index = HashMap::new();
        for p in partitions {
            space.check(&p.space())?;
            if !index.contains_key(&p) {
                index.insert(p.clone(), unique.len());
                unique.push(p);
            }
        }
        let contains_top = unique.iter().any(Partition::is_top);
        Ok(Self {
            space,
            partitions: unique,
            index,
            contains_top,
        })
    }

    pub fn space(&self) -> PossibilitySpace {
        self.space
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn len(&self) -> usize {
        self.partitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partitions.is_empty()
    }

    pub fn contains_top(&self) -> bool {
        self.contains_top
    }

    pub fn position(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Partition) -> bool {
        self.index.contains_key(p)
    }
}

/// Operations the law checks in [`crate::axioms`] are written against.
///
/// [`Desirability`] is the real algebra; tests plug in deliberately broken
/// variants to make sure the checks can fail.
pub trait InformationAlgebra {
    type Element: Clone;

    fn null(&self) -> Self::Element;
    fn unit(&self) -> Self::Element;
    fn combine(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element>;
    fn extract(&self, x: &Partition, a: &Self::Element) -> Result<Self::Element>;
    /// Meet (intersection) in the information order.
    fn meet(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element>;
    fn leq(&self, a: &Self::Element, b: &Self::Element) -> Result<bool>;
    fn equal(&self, a: &Self::Element, b: &Self::Element) -> Result<bool> {
        Ok(self.leq(a, b)? && self.leq(b, a)?)
    }
    /// The value is a member of the carrier Φ.
    fn is_element(&self, a: &Self::Element) -> bool;
    /// Serialised form used in counterexample reports.
    fn describe(&self, a: &Self::Element) -> Value;
}

/// The algebra of coherent sets of gambles on one space.
#[derive(Debug, Clone, Copy)]
pub struct Desirability<F> {
    space: PossibilitySpace,
    _scalar: std::marker::PhantomData<F>,
}

impl<F: Scalar> Desirability<F> {
    pub fn new(space: PossibilitySpace) -> Self {
        Self {
            space,
            _scalar: std::marker::PhantomData,
        }
    }

    pub fn space(&self) -> PossibilitySpace {
        self.space
    }
}

impl<F: Scalar> InformationAlgebra for Desirability<F> {
    type Element = PhiElement<F>;

    fn null(&self) -> PhiElement<F> {
        PhiElement::top(self.space)
    }

    fn unit(&self) -> PhiElement<F> {
        PhiElement::unit(self.space)
    }

    fn combine(&self, a: &PhiElement<F>, b: &PhiElement<F>) -> Result<PhiElement<F>> {
        combine(a, b)
    }

    fn extract(&self, x: &Partition, a: &PhiElement<F>) -> Result<PhiElement<F>> {
        extract(x, a)
    }

    fn meet(&self, a: &PhiElement<F>, b: &PhiElement<F>) -> Result<PhiElement<F>> {
        phi::meet(&[a.clone(), b.clone()])
    }

    fn leq(&self, a: &PhiElement<F>, b: &PhiElement<F>) -> Result<bool> {
        a.leq(b)
    }

    fn is_element(&self, a: &PhiElement<F>) -> bool {
        a.space() == self.space && a.is_well_formed()
    }

    fn describe(&self, a: &PhiElement<F>) -> Value {
        a.to_json()
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

    fn s(n: usize) -> PossibilitySpace {
        PossibilitySpace::new(n).unwrap()
    }

    fn part(json: &str) -> Partition {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn combination_examples() {
        let unit = PhiElement::<Q>::unit(s(2));
        let top = PhiElement::<Q>::top(s(2));
        let a = closure(s(2), &[g(&[1, -1])]).unwrap();
        let b = closure(s(2), &[g(&[-1, 1])]).unwrap();
        assert!(combine(&a, &unit).unwrap().same(&a).unwrap());
        assert!(combine(&a, &top).unwrap().is_top());
        assert!(combine(&a, &b).unwrap().is_top());
        assert!(combine(&a, &PhiElement::unit(s(3))).is_err());
    }

    #[test]
    fn extraction_examples() {
        let a = closure(s(2), &[g(&[1, -1])]).unwrap();
        let bottom = Partition::bottom(s(2));
        let e = extract(&bottom, &a).unwrap();
        assert!(e.same(&PhiElement::unit(s(2))).unwrap());
        assert!(extract(&Partition::top(s(2)), &a)
            .unwrap()
            .same(&a)
            .unwrap());

        let rows = part("[[0,1],[2,3]]");
        let p = closure(s(4), &[g(&[1, 1, -1, -1])]).unwrap();
        assert!(extract(&rows, &p).unwrap().same(&p).unwrap());
        assert!(extract(&rows, &PhiElement::<Q>::top(s(4)))
            .unwrap()
            .is_top());
    }

    #[test]
    fn support_examples() {
        let rows = part("[[0,1],[2,3]]");
        let p = closure(s(4), &[g(&[1, 1, -1, -1])]).unwrap();
        assert!(is_support(&Partition::top(s(4)), &p).unwrap());
        assert!(is_support(&rows, &p).unwrap());
        let a = closure(s(2), &[g(&[1, -1])]).unwrap();
        assert!(!is_support(&Partition::bottom(s(2)), &a).unwrap());
        assert!(is_support(&Partition::bottom(s(2)), &PhiElement::<Q>::top(s(2))).unwrap());
    }

    #[test]
    fn question_sets() {
        let rows = part("[[0,1],[2,3]]");
        let cols = part("[[0,2],[1,3]]");
        assert_eq!(
            QuestionSet::new(vec![rows.clone(), cols.clone()]).unwrap_err(),
            Error::NotJoinClosed
        );
        let q = QuestionSet::generated_by(vec![rows.clone(), cols]).unwrap();
        assert_eq!(q.len(), 3);
        assert!(q.contains_top());
        assert!(QuestionSet::new(q.partitions().to_vec()).is_ok());
        assert!(QuestionSet::new(vec![rows]).unwrap().len() == 1);
        assert!(QuestionSet::new(vec![]).is_err());
    }
}
