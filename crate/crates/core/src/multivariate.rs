//! Product spaces of finitely many variables and their cylinder partitions.
//!
//! Worlds are numbered in row-major order: the first variable varies
//! slowest. Variables are indexed from 0, and a subset of variables is a
//! bit mask (bit `i` for variable `i`).

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{combine, extract, QuestionSet};
use crate::axioms::Report;
use crate::error::{Error, Result};
use crate::partition::{cond_independent, Partition, PossibilitySpace};
use crate::phi::PhiElement;
use crate::scalar::Scalar;

/// Largest number of variables a system may have (the cylinder cache holds
/// one partition per subset).
pub const MAX_VARIABLES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SystemRepr", into = "SystemRepr")]
pub struct VariableSystem {
    domains: Vec<usize>,
    space: PossibilitySpace,
    cylinders: Vec<Partition>,
}

#[derive(Serialize, Deserialize)]
struct SystemRepr {
    domains: Vec<usize>,
}

impl TryFrom<SystemRepr> for VariableSystem {
    type Error = Error;

    fn try_from(r: SystemRepr) -> Result<Self> {
        VariableSystem::new(r.domains)
    }
}

impl From<VariableSystem> for SystemRepr {
    fn from(s: VariableSystem) -> Self {
        SystemRepr { domains: s.domains }
    }
}

impl VariableSystem {
    pub fn new(domains: Vec<usize>) -> Result<Self> {
        if domains.is_empty() || domains.contains(&0) {
            return Err(Error::EmptySpace);
        }
        if domains.len() > MAX_VARIABLES {
            return Err(Error::VariableOutOfRange {
                index: domains.len() - 1,
                count: MAX_VARIABLES,
            });
        }
        let size = domains
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::Precondition("product space too large".into()))?;
        let space = PossibilitySpace::new(size)?;
        let mut sys = Self {
            domains,
            space,
            cylinders: Vec::new(),
        };
        sys.cylinders = (0..1usize << sys.domains.len())
            .map(|mask| sys.build_cylinder(mask))
            .collect::<Result<_>>()?;
        Ok(sys)
    }

    pub fn domains(&self) -> &[usize] {
        &self.domains
    }

    pub fn variable_count(&self) -> usize {
        self.domains.len()
    }

    pub fn space(&self) -> PossibilitySpace {
        self.space
    }

    /// Values of each variable in world `w`.
    pub fn coordinates(&self, mut w: usize) -> Vec<usize> {
        let mut out = vec![0; self.domains.len()];
        for (i, &d) in self.domains.iter().enumerate().rev() {
            out[i] = w % d;
            w /= d;
        }
        out
    }

    pub fn world(&self, coordinates: &[usize]) -> usize {
        coordinates
            .iter()
            .zip(&self.domains)
            .fold(0, |acc, (&c, &d)| acc * d + c)
    }

    fn build_cylinder(&self, mask: usize) -> Result<Partition> {
        let labels: Vec<usize> = self
            .space
            .worlds()
            .map(|w| {
                let c = self.coordinates(w);
                (0..self.domains.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .fold(0, |acc, i| acc * self.domains[i] + c[i])
            })
            .collect();
        Partition::from_labels(&labels)
    }

    pub fn mask(&self, variables: &[usize]) -> Result<usize> {
        let count = self.domains.len();
        variables.iter().try_fold(0usize, |acc, &i| {
            if i < count {
                Ok(acc | 1 << i)
            } else {
                Err(Error::VariableOutOfRange { index: i, count })
            }
        })
    }

    /// Worlds are equivalent when they agree on every variable in `variables`.
    pub fn cylinder(&self, variables: &[usize]) -> Result<&Partition> {
        Ok(&self.cylinders[self.mask(variables)?])
    }

    pub fn cylinder_of_mask(&self, mask: usize) -> Result<&Partition> {
        self.cylinders
            .get(mask)
            .ok_or_else(|| Error::VariableOutOfRange {
                index: usize::BITS as usize - mask.leading_zeros() as usize - 1,
                count: self.domains.len(),
            })
    }

    /// All cylinder partitions, indexed by mask.
    pub fn cylinders(&self) -> &[Partition] {
        &self.cylinders
    }

    /// The lattice of all cylinders as a question set. Distinct subsets can
    /// give the same partition when a domain has one value; duplicates are
    /// merged.
    pub fn question_set(&self) -> QuestionSet {
        QuestionSet::new(self.cylinders.clone()).expect("cylinders are join-closed")
    }

    /// `S ⊥ T | R` by `(S ∪ R) ∩ (T ∪ R) = R`, cross-checked against the
    /// partition-level predicate on the cylinders.
    pub fn subset_ci(&self, s: &[usize], t: &[usize], r: &[usize]) -> Result<bool> {
        self.subset_ci_mask(self.mask(s)?, self.mask(t)?, self.mask(r)?)
    }

    pub fn subset_ci_mask(&self, s: usize, t: usize, r: usize) -> Result<bool> {
        let formula = (s | r) & (t | r) == r;
        let c = |m: usize| self.cylinder_of_mask(m);
        let partitions = cond_independent(&[c(s)?, c(t)?], c(r)?)?;
        if formula != partitions && self.domains.iter().all(|&d| d > 1) {
            return Err(Error::Internal(format!(
                "subset formula says {formula}, cylinders say {partitions} for masks {s:b}, {t:b} | {r:b}"
            )));
        }
        Ok(partitions)
    }
}

/// `ε_{x∧y}(p)`, checked against both orders of composing `ε_x` and `ε_y`.
pub fn commuting_extract_compose<F: Scalar>(
    x: &Partition,
    y: &Partition,
    p: &PhiElement<F>,
) -> Result<PhiElement<F>> {
    if !x.commutes(y)? {
        return Err(Error::NotCommuting);
    }
    let both = extract(&x.meet(y)?, p)?;
    let xy = extract(x, &extract(y, p)?)?;
    let yx = extract(y, &extract(x, p)?)?;
    if !both.same(&xy)? || !both.same(&yx)? {
        return Err(Error::Internal(
            "extractors of commuting partitions do not compose".into(),
        ));
    }
    Ok(both)
}

/// Laws specific to commuting cylinder lattices, over `corpus`:
/// extraction composes to the meet, the subset form of conditional
/// independence, and the simplified labeled combination
/// `t_x((D₁,x)·(D₂,y)) = (D₁,x) · t_{x∧y}(D₂,y)`.
pub fn multivariate_suite<F: Scalar>(
    sys: &VariableSystem,
    corpus: &[PhiElement<F>],
) -> Result<Report> {
    let mut report = Report::default();
    let masks = 1usize << sys.variable_count();
    let cyl = sys.cylinders();
    let w3 = |s: usize, t: usize, r: usize| json!({"S": mask_list(s), "T": mask_list(t), "R": mask_list(r)});

    for s in 0..masks {
        for t in 0..masks {
            report.push(
                "cylinder.commute",
                json!({"S": mask_list(s), "T": mask_list(t)}),
                cyl[s].commutes(&cyl[t])?,
            );
            let meet_ok = cyl[s].meet(&cyl[t])? == cyl[s & t];
            report.push(
                "cylinder.meet",
                json!({"S": mask_list(s), "T": mask_list(t)}),
                meet_ok,
            );
            for r in 0..masks {
                let verdict = sys.subset_ci_mask(s, t, r);
                let lattice = cyl[s]
                    .join(&cyl[r])?
                    .meet(&cyl[t].join(&cyl[r])?)
                    .map(|m| m == cyl[r]);
                let ok = match (verdict, lattice) {
                    (Ok(a), Ok(b)) => a == b,
                    _ => false,
                };
                report.push("cylinder.ci", w3(s, t, r), ok);
            }
        }
    }

    // ext[i][s] = ε_S(D_i)
    let ext: Vec<Vec<PhiElement<F>>> = corpus
        .iter()
        .map(|d| cyl.iter().map(|x| extract(x, d)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    for (i, d) in corpus.iter().enumerate() {
        for s in 0..masks {
            for t in 0..masks {
                let st = extract(&cyl[s], &ext[i][t])?;
                let ts = extract(&cyl[t], &ext[i][s])?;
                let ok = ext[i][s & t].same(&st)? && ext[i][s & t].same(&ts)?;
                let w = json!({"S": mask_list(s), "T": mask_list(t), "D": d.to_json()});
                report.push("commutative_extraction", w, ok);

                // D₁ = ε_S(D_i) is supported by S, D₂ = ε_T(D_j) by T
                let j = (i + 1 + t) % corpus.len();
                let (d1, d2) = (&ext[i][s], &ext[j][t]);
                let left = extract(&cyl[s], &combine(d1, d2)?)?;
                let right = combine(d1, &extract(&cyl[s & t], d2)?)?;
                let w = json!({"S": mask_list(s), "T": mask_list(t), "D1": d1.to_json(), "D2": d2.to_json()});
                report.push("simplified_combination", w, left.same(&right)?);
            }
        }
    }
    Ok(report)
}

fn mask_list(mask: usize) -> Value {
    json!((0..usize::BITS as usize)
        .filter(|i| mask >> i & 1 == 1)
        .collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::Gamble;
    use crate::phi::closure;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn part(json: &str) -> Partition {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn cylinders_on_a_grid() {
        let sys = VariableSystem::new(vec![2, 2]).unwrap();
        assert_eq!(sys.space().size(), 4);
        assert_eq!(sys.cylinder(&[0]).unwrap(), &part("[[0,1],[2,3]]"));
        assert_eq!(sys.cylinder(&[1]).unwrap(), &part("[[0,2],[1,3]]"));
        assert!(sys.cylinder(&[]).unwrap().is_bottom());
        assert!(sys.cylinder(&[0, 1]).unwrap().is_top());
        assert_eq!(
            sys.cylinder(&[2]).unwrap_err(),
            Error::VariableOutOfRange { index: 2, count: 2 }
        );
        assert_eq!(sys.coordinates(2), vec![1, 0]);
        assert_eq!(sys.world(&[1, 0]), 2);
    }

    #[test]
    fn cylinder_block_counts() {
        let sys = VariableSystem::new(vec![2, 3, 2]).unwrap();
        assert_eq!(sys.cylinder(&[1]).unwrap().block_count(), 3);
        assert_eq!(sys.cylinder(&[0, 2]).unwrap().block_count(), 4);
        assert_eq!(sys.question_set().len(), 8);
    }

    #[test]
    fn subset_independence() {
        let sys = VariableSystem::new(vec![2, 2]).unwrap();
        assert!(sys.subset_ci(&[0], &[1], &[]).unwrap());
        assert!(!sys.subset_ci(&[0], &[0], &[]).unwrap());
        assert!(sys.subset_ci(&[0], &[0, 1], &[0]).unwrap());
    }

    #[test]
    fn composed_extraction() {
        let sys = VariableSystem::new(vec![2, 2]).unwrap();
        let (a, b) = (sys.cylinder(&[0]).unwrap(), sys.cylinder(&[1]).unwrap());
        let p = closure::<Q>(sys.space(), &[Gamble::from_ints(&[1, -2, 3, -1]).unwrap()]).unwrap();
        let both = commuting_extract_compose(a, b, &p).unwrap();
        assert!(both
            .same(&extract(&Partition::bottom(sys.space()), &p).unwrap())
            .unwrap());
        let same = commuting_extract_compose(a, a, &p).unwrap();
        assert!(same.same(&extract(a, &p).unwrap()).unwrap());
        let top = Partition::top(sys.space());
        assert!(commuting_extract_compose(&top, b, &p)
            .unwrap()
            .same(&extract(b, &p).unwrap())
            .unwrap());

        let s3 = PossibilitySpace::new(3).unwrap();
        let (x, y) = (part("[[0,1],[2]]"), part("[[0],[1,2]]"));
        let q = closure::<Q>(s3, &[]).unwrap();
        assert_eq!(
            commuting_extract_compose(&x, &y, &q).unwrap_err(),
            Error::NotCommuting
        );
    }

    #[test]
    fn json_form() {
        let sys: VariableSystem = serde_json::from_str(r#"{"domains":[2,3]}"#).unwrap();
        assert_eq!(sys.space().size(), 6);
        assert_eq!(serde_json::to_string(&sys).unwrap(), r#"{"domains":[2,3]}"#);
        assert!(serde_json::from_str::<VariableSystem>(r#"{"domains":[2,0]}"#).is_err());
    }

    #[test]
    fn small_suite_passes() {
        let sys = VariableSystem::new(vec![2, 2]).unwrap();
        let g = |v: &[i64]| Gamble::<Q>::from_ints(v).unwrap();
        let corpus = vec![
            closure(sys.space(), &[g(&[1, -2, 3, -1])]).unwrap(),
            closure(sys.space(), &[g(&[-1, 1, 1, -1]), g(&[0, 2, -1, 0])]).unwrap(),
            PhiElement::top(sys.space()),
        ];
        let report = multivariate_suite(&sys, &corpus).unwrap();
        let failures: Vec<_> = report.failures().collect();
        assert!(failures.is_empty(), "{failures:#?}");
    }
}
