//! Coherent sets of desirable gambles plus the contradictory set `L(Ω)`.
//!
//! A coherent element is stored as a finitely generated cone whose
//! generators include the world indicators (so `L⁺` is always inside) and
//! which admits no nontrivial combination equal to zero. The represented
//! set is that cone without the origin. `Top` stands for the set of all
//! gambles, the null element of combination.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cone::{ConeV, Gamble};
use crate::error::{Error, Result};
use crate::partition::PossibilitySpace;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub enum PhiElement<F> {
    Coherent(ConeV<F>),
    /// All of `L(Ω)`: contradiction.
    Top(PossibilitySpace),
}

impl<F: Scalar> PhiElement<F> {
    /// The vacuous element `L⁺`, unit of combination.
    pub fn unit(space: PossibilitySpace) -> Self {
        PhiElement::Coherent(ConeV::orthant(space))
    }

    pub fn top(space: PossibilitySpace) -> Self {
        PhiElement::Top(space)
    }

    pub fn space(&self) -> PossibilitySpace {
        match self {
            PhiElement::Coherent(c) => c.space(),
            PhiElement::Top(s) => *s,
        }
    }

    pub fn is_top(&self) -> bool {
        matches!(self, PhiElement::Top(_))
    }

    pub fn cone(&self) -> Option<&ConeV<F>> {
        match self {
            PhiElement::Coherent(c) => Some(c),
            PhiElement::Top(_) => None,
        }
    }

    /// Generators of a coherent element; the contradiction has none.
    pub fn generators(&self) -> Result<&[Gamble<F>]> {
        self.cone()
            .map(ConeV::generators)
            .ok_or(Error::TopNotAllowed)
    }

    /// `f ∈ self`. Zero belongs to `Top` only.
    pub fn contains(&self, f: &Gamble<F>) -> Result<bool> {
        f.check(&self.space())?;
        match self {
            PhiElement::Top(_) => Ok(true),
            PhiElement::Coherent(c) => Ok(!f.is_zero() && c.contains(f)?),
        }
    }

    /// Information order, i.e. set inclusion.
    pub fn leq(&self, other: &PhiElement<F>) -> Result<bool> {
        self.space().check(&other.space())?;
        match (self, other) {
            (_, PhiElement::Top(_)) => Ok(true),
            (PhiElement::Top(_), PhiElement::Coherent(_)) => Ok(false),
            (PhiElement::Coherent(a), PhiElement::Coherent(b)) => a.is_subset_of(b),
        }
    }

    /// Equality of the represented sets (mutual inclusion).
    pub fn same(&self, other: &PhiElement<F>) -> Result<bool> {
        Ok(self.leq(other)? && other.leq(self)?)
    }

    /// Checks the coherence axioms on the stored representation: every
    /// world indicator is a member and zero is not reachable.
    pub fn is_well_formed(&self) -> bool {
        match self {
            PhiElement::Top(_) => true,
            PhiElement::Coherent(c) => {
                let space = c.space();
                !c.has_nontrivial_zero()
                    && space
                        .worlds()
                        .all(|w| c.contains(&Gamble::indicator(space, w)).unwrap_or(false))
            }
        }
    }

    /// `{"kind":"top"}` or `{"kind":"coherent","generators":[…]}` with the
    /// world indicators left out.
    pub fn to_json(&self) -> Value {
        match self {
            PhiElement::Top(_) => json!({"kind": "top"}),
            PhiElement::Coherent(c) => {
                let space = c.space();
                let shown: Vec<&Gamble<F>> = c
                    .generators()
                    .iter()
                    .filter(|g| !space.worlds().any(|w| **g == Gamble::indicator(space, w)))
                    .collect();
                json!({"kind": "coherent", "generators": shown})
            }
        }
    }

    /// Inverse of [`PhiElement::to_json`]; the indicators are added back and
    /// the result is checked for coherence.
    pub fn from_json(space: PossibilitySpace, value: &Value) -> Result<Self, String> {
        match value.get("kind").and_then(Value::as_str) {
            Some("top") => Ok(PhiElement::Top(space)),
            Some("coherent") => {
                let cone = ConeV::<F>::from_json(space, value)?;
                match natural_extension(space, cone.generators()).map_err(|e| e.to_string())? {
                    PhiElement::Top(_) => Err("generators are not coherent".into()),
                    p => Ok(p),
                }
            }
            _ => Err("expected \"kind\": \"top\" or \"coherent\"".into()),
        }
    }
}

impl<F: Scalar> Serialize for PhiElement<F> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<F: Scalar> fmt::Debug for PhiElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhiElement::Top(_) => write!(f, "Top"),
            PhiElement::Coherent(c) => write!(f, "Coherent({:?})", c.generators()),
        }
    }
}

/// `E(K) = posi(K ∪ L⁺)`, collapsed to `Top` when it contains zero.
///
/// The zero gamble is rejected: it is never a meaningful assessment.
pub fn natural_extension<F: Scalar>(
    space: PossibilitySpace,
    assessments: &[Gamble<F>],
) -> Result<PhiElement<F>> {
    for g in assessments {
        g.check(&space)?;
        if g.is_zero() {
            return Err(Error::ZeroGamble);
        }
    }
    let mut generators = assessments.to_vec();
    generators.extend(space.worlds().map(|w| Gamble::indicator(space, w)));
    let cone = ConeV::new(space, generators)?;
    if cone.has_nontrivial_zero() {
        return Ok(PhiElement::Top(space));
    }
    Ok(PhiElement::Coherent(cone.pruned()))
}

/// The smallest element of Φ containing `K`.
pub fn closure<F: Scalar>(space: PossibilitySpace, gambles: &[Gamble<F>]) -> Result<PhiElement<F>> {
    for g in gambles {
        g.check(&space)?;
    }
    if gambles.iter().any(Gamble::is_zero) {
        return Ok(PhiElement::Top(space));
    }
    natural_extension(space, gambles)
}

/// Intersection of a nonempty family; `Top` entries are neutral.
pub fn meet<F: Scalar>(elements: &[PhiElement<F>]) -> Result<PhiElement<F>> {
    let first = elements.first().ok_or(Error::EmptyList)?;
    let space = first.space();
    let mut acc: Option<ConeV<F>> = None;
    for e in elements {
        space.check(&e.space())?;
        if let PhiElement::Coherent(c) = e {
            acc = Some(match acc {
                None => c.clone(),
                Some(a) => a.intersect(c)?,
            });
        }
    }
    Ok(match acc {
        None => PhiElement::Top(space),
        Some(c) => PhiElement::Coherent(c.pruned()),
    })
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

    #[test]
    fn natural_extension_examples() {
        let unit = natural_extension::<Q>(s(2), &[]).unwrap();
        assert!(unit.same(&PhiElement::unit(s(2))).unwrap());

        let p = natural_extension(s(2), &[g(&[1, -1])]).unwrap();
        assert!(!p.is_top());
        assert!(p.contains(&g(&[2, -1])).unwrap());
        assert!(!p.contains(&g(&[-1, 2])).unwrap());

        assert!(natural_extension(s(2), &[g(&[1, -1]), g(&[-1, 1])])
            .unwrap()
            .is_top());
        assert_eq!(
            natural_extension(s(2), &[g(&[0, 0])]),
            Err(Error::ZeroGamble)
        );
        assert!(natural_extension(s(2), &[g(&[1, 0, 0])]).is_err());
    }

    #[test]
    fn closure_examples() {
        assert!(closure::<Q>(s(2), &[])
            .unwrap()
            .same(&PhiElement::unit(s(2)))
            .unwrap());
        assert!(closure(s(2), &[g(&[0, 0])]).unwrap().is_top());
        let p = closure(s(2), &[g(&[-2, 1])]).unwrap();
        assert!(!p.is_top());
        assert!(p.contains(&g(&[-2, 1])).unwrap());
        assert!(p.contains(&g(&[-2, 5])).unwrap());
        assert!(!p.contains(&g(&[-2, 0])).unwrap());
    }

    #[test]
    fn membership_examples() {
        let top = PhiElement::<Q>::top(s(2));
        let unit = PhiElement::<Q>::unit(s(2));
        assert!(top.contains(&g(&[0, 0])).unwrap());
        assert!(!unit.contains(&g(&[0, 0])).unwrap());
        let p = closure(s(2), &[g(&[1, -1])]).unwrap();
        for w in 0..2 {
            assert!(p.contains(&Gamble::indicator(s(2), w)).unwrap());
        }
        assert!(p.contains(&g(&[2, -1])).unwrap());
        assert!(p.contains(&g(&[1, 2, 3])).is_err());
    }

    #[test]
    fn order_examples() {
        let unit = PhiElement::<Q>::unit(s(2));
        let top = PhiElement::<Q>::top(s(2));
        let a = closure(s(2), &[g(&[1, -1])]).unwrap();
        let b = closure(s(2), &[g(&[1, -1]), g(&[3, -1])]).unwrap();
        assert!(unit.leq(&a).unwrap() && unit.leq(&top).unwrap());
        assert!(a.leq(&b).unwrap());
        assert!(!top.leq(&a).unwrap());
        assert!(a.leq(&top).unwrap());
        // (3,-1) is already implied by (1,-1) and (1,0)
        assert!(a.same(&b).unwrap());
    }

    #[test]
    fn meet_examples() {
        let top = PhiElement::<Q>::top(s(2));
        let a = closure(s(2), &[g(&[1, -1])]).unwrap();
        let b = closure(s(2), &[g(&[-1, 1])]).unwrap();
        assert!(meet(&[top.clone(), a.clone()]).unwrap().same(&a).unwrap());
        assert!(meet(&[a.clone(), b])
            .unwrap()
            .same(&PhiElement::unit(s(2)))
            .unwrap());
        assert!(meet(&[a.clone(), a.clone()]).unwrap().same(&a).unwrap());
        assert!(meet(&[top.clone(), top]).unwrap().is_top());
        assert_eq!(meet::<Q>(&[]), Err(Error::EmptyList));
    }

    #[test]
    fn json_omits_and_restores_indicators() {
        let p = closure(s(2), &[g(&[1, -1])]).unwrap();
        let v = p.to_json();
        assert_eq!(v, json!({"kind": "coherent", "generators": [["1", "-1"]]}));
        let back = PhiElement::<Q>::from_json(s(2), &v).unwrap();
        assert!(back.same(&p).unwrap());

        let unit = PhiElement::<Q>::unit(s(3)).to_json();
        assert_eq!(unit, json!({"kind": "coherent", "generators": []}));
        assert!(PhiElement::<Q>::from_json(s(3), &unit)
            .unwrap()
            .same(&PhiElement::unit(s(3)))
            .unwrap());

        assert!(PhiElement::<Q>::from_json(s(2), &json!({"kind": "top"}))
            .unwrap()
            .is_top());
        let bad = json!({"kind": "coherent", "generators": [["1", "-1"], ["-1", "1"]]});
        assert!(PhiElement::<Q>::from_json(s(2), &bad).is_err());
    }

    #[test]
    fn well_formedness() {
        assert!(closure(s(3), &[g(&[1, -2, 0])]).unwrap().is_well_formed());
        let bare = PhiElement::Coherent(ConeV::new(s(2), vec![g(&[1, -1])]).unwrap());
        assert!(!bare.is_well_formed());
    }
}
