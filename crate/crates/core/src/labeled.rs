//! The labeled views of the algebra: pieces `(D, x)` with `x` a support of
//! `D`, and their traces `(D ∩ L_x, x)`.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::algebra::{combine, extract, is_support, QuestionSet};
use crate::axioms::{separoid_suite, Report};
use crate::cone::{ConeV, MeasurableSubspace};
use crate::error::{Error, Result};
use crate::partition::{cond_independent, Partition};
use crate::phi::{closure, PhiElement};
use crate::scalar::Scalar;

/// `(D, x)` with `x` a support of `D`.
#[derive(Clone, Debug)]
pub struct LabeledPiece<F: Scalar> {
    content: PhiElement<F>,
    label: Partition,
}

impl<F: Scalar> LabeledPiece<F> {
    /// Checks the support condition but not membership of the label in a
    /// question set; [`LabeledAlgebra::piece`] does both.
    pub fn new(content: PhiElement<F>, label: Partition) -> Result<Self> {
        if !is_support(&label, &content)? {
            return Err(Error::NotSupport);
        }
        Ok(Self { content, label })
    }

    pub fn content(&self) -> &PhiElement<F> {
        &self.content
    }

    pub fn label(&self) -> &Partition {
        &self.label
    }

    /// Same label and the same set of gambles.
    pub fn same(&self, other: &Self) -> Result<bool> {
        Ok(self.label == other.label && self.content.same(&other.content)?)
    }
}

impl<F: Scalar> Serialize for LabeledPiece<F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("label", &self.label)?;
        map.serialize_entry("content", &self.content)?;
        map.end()
    }
}

/// `D ∩ L_x`. For the contradiction this is all of `L_x`, which a cone
/// with the origin removed cannot hold, so it gets its own variant.
#[derive(Clone, Debug)]
pub enum Trace<F: Scalar> {
    Cone(ConeV<F>),
    Whole,
}

impl<F: Scalar> Serialize for Trace<F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Trace::Cone(c) => c.serialize(serializer),
            Trace::Whole => serializer.serialize_str("whole"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TildePiece<F: Scalar> {
    trace: Trace<F>,
    label: Partition,
}

impl<F: Scalar> TildePiece<F> {
    pub fn trace(&self) -> &Trace<F> {
        &self.trace
    }

    pub fn label(&self) -> &Partition {
        &self.label
    }

    pub fn same(&self, other: &Self) -> Result<bool> {
        if self.label != other.label {
            return Ok(false);
        }
        match (&self.trace, &other.trace) {
            (Trace::Whole, Trace::Whole) => Ok(true),
            (Trace::Cone(a), Trace::Cone(b)) => a.same_set(b),
            _ => Ok(false),
        }
    }

    /// Generators are label-measurable and the trace is fixed by
    /// `t ↦ C(t) ∩ L_x`.
    pub fn is_well_formed(&self) -> Result<bool> {
        let Trace::Cone(c) = &self.trace else {
            return Ok(true);
        };
        for g in c.generators() {
            if !g.is_measurable(&self.label)? {
                return Ok(false);
            }
        }
        let again = trace_of(&closure(c.space(), c.generators())?, &self.label)?;
        self.same(&TildePiece {
            trace: again,
            label: self.label.clone(),
        })
    }
}

impl<F: Scalar> Serialize for TildePiece<F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("label", &self.label)?;
        map.serialize_entry("trace", &self.trace)?;
        map.end()
    }
}

fn trace_of<F: Scalar>(p: &PhiElement<F>, x: &Partition) -> Result<Trace<F>> {
    match p {
        PhiElement::Top(_) => Ok(Trace::Whole),
        PhiElement::Coherent(c) => Ok(Trace::Cone(
            c.intersect_subspace(&MeasurableSubspace::new(x))?,
        )),
    }
}

fn content_of<F: Scalar>(t: &TildePiece<F>) -> Result<PhiElement<F>> {
    match &t.trace {
        Trace::Whole => Ok(PhiElement::top(t.label.space())),
        Trace::Cone(c) => closure(c.space(), c.generators()),
    }
}

/// Ψ and Ψ̃ over the labels of one question set.
#[derive(Debug, Clone, Copy)]
pub struct LabeledAlgebra<'q> {
    q: &'q QuestionSet,
}

impl<'q> LabeledAlgebra<'q> {
    pub fn new(q: &'q QuestionSet) -> Self {
        Self { q }
    }

    pub fn questions(&self) -> &'q QuestionSet {
        self.q
    }

    fn label(&self, x: &Partition) -> Result<()> {
        if self.q.contains(x) {
            Ok(())
        } else {
            Err(Error::UnknownLabel)
        }
    }

    pub fn piece<F: Scalar>(
        &self,
        content: PhiElement<F>,
        label: Partition,
    ) -> Result<LabeledPiece<F>> {
        self.label(&label)?;
        LabeledPiece::new(content, label)
    }

    /// `(1, x)`.
    pub fn unit<F: Scalar>(&self, x: &Partition) -> Result<LabeledPiece<F>> {
        self.piece(PhiElement::unit(self.q.space()), x.clone())
    }

    /// `(0, x)`.
    pub fn null<F: Scalar>(&self, x: &Partition) -> Result<LabeledPiece<F>> {
        self.piece(PhiElement::top(self.q.space()), x.clone())
    }

    /// `(D₁, x) · (D₂, y) = (D₁ · D₂, x ∨ y)`.
    pub fn combine<F: Scalar>(
        &self,
        a: &LabeledPiece<F>,
        b: &LabeledPiece<F>,
    ) -> Result<LabeledPiece<F>> {
        let label = a.label.join(&b.label)?;
        self.label(&label)?;
        Ok(LabeledPiece {
            content: combine(&a.content, &b.content)?,
            label,
        })
    }

    /// `t_y(D, x) = (ε_y(D), y)`.
    pub fn transport<F: Scalar>(
        &self,
        y: &Partition,
        a: &LabeledPiece<F>,
    ) -> Result<LabeledPiece<F>> {
        self.label(y)?;
        Ok(LabeledPiece {
            content: extract(y, &a.content)?,
            label: y.clone(),
        })
    }

    pub fn to_tilde<F: Scalar>(&self, a: &LabeledPiece<F>) -> Result<TildePiece<F>> {
        self.label(&a.label)?;
        Ok(TildePiece {
            trace: trace_of(&a.content, &a.label)?,
            label: a.label.clone(),
        })
    }

    pub fn from_tilde<F: Scalar>(&self, t: &TildePiece<F>) -> Result<LabeledPiece<F>> {
        self.label(&t.label)?;
        Ok(LabeledPiece {
            content: content_of(t)?,
            label: t.label.clone(),
        })
    }

    /// `((C(t₁) · C(t₂)) ∩ L_{x∨y}, x ∨ y)`.
    pub fn tilde_combine<F: Scalar>(
        &self,
        a: &TildePiece<F>,
        b: &TildePiece<F>,
    ) -> Result<TildePiece<F>> {
        let label = a.label.join(&b.label)?;
        self.label(&label)?;
        let content = combine(&content_of(a)?, &content_of(b)?)?;
        Ok(TildePiece {
            trace: trace_of(&content, &label)?,
            label,
        })
    }

    /// `(C(t) ∩ L_y, y)`.
    pub fn tilde_transport<F: Scalar>(
        &self,
        y: &Partition,
        t: &TildePiece<F>,
    ) -> Result<TildePiece<F>> {
        self.label(y)?;
        Ok(TildePiece {
            trace: trace_of(&content_of(t)?, y)?,
            label: y.clone(),
        })
    }
}

fn cyclic_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| [0, 1, 3].map(|k| (i, (i + k) % n)))
}

/// Labeled axioms over `pieces` and the questions of the algebra, plus the
/// Ψ ↔ Ψ̃ isomorphism checks. `(1, x)` and `(0, x)` for every question are
/// added to the pieces.
pub fn labeled_suite<F: Scalar>(
    alg: &LabeledAlgebra<'_>,
    pieces: &[LabeledPiece<F>],
) -> Result<Report> {
    let q = alg.questions();
    let qs = q.partitions();
    let mut all: Vec<LabeledPiece<F>> = Vec::new();
    for x in qs {
        all.push(alg.unit(x)?);
        all.push(alg.null(x)?);
    }
    all.extend_from_slice(pieces);
    let n = all.len();

    let mut report = separoid_suite(q)?;
    let mut push = |law: &str, w: Value, outcome: Result<bool>| match outcome {
        Ok(pass) => report.push(law, w, pass),
        Err(e) => report.push(law, json!({"error": e.to_string(), "at": w}), false),
    };

    for (i, j) in cyclic_pairs(n) {
        let (a, b) = (&all[i], &all[j]);
        let w = json!({"a": a, "b": b});
        let ab = alg.combine(a, b)?;
        push(
            "labeled.semigroup.commutativity",
            w.clone(),
            ab.same(&alg.combine(b, a)?),
        );
        push(
            "labeled.labeling.combination",
            w.clone(),
            Ok(ab.label == a.label.join(&b.label)?),
        );
        for y in qs {
            let t = alg.transport(y, a)?;
            let w = json!({"y": y, "a": a});
            push("labeled.labeling.transport", w.clone(), Ok(&t.label == y));
            let t_null = t.content.is_top();
            push(
                "labeled.null.transport",
                w,
                Ok(t_null == a.content.is_top()),
            );
        }
        let k = (i + 2) % n;
        let c = &all[k];
        let left = alg.combine(&ab, c)?;
        let right = alg.combine(a, &alg.combine(b, c)?)?;
        push(
            "labeled.semigroup.associativity",
            json!({"a": a, "b": b, "c": c}),
            left.same(&right),
        );
    }

    for x in qs {
        for y in qs {
            let one = alg.combine(&alg.unit::<F>(x)?, &alg.unit(y)?)?;
            let w = json!({"x": x, "y": y});
            push("labeled.unit.join", w, one.same(&alg.unit(&x.join(y)?)?));
        }
    }

    for a in &all {
        let x = &a.label;
        let w = json!({"a": a});
        push(
            "labeled.unit.neutral",
            w.clone(),
            alg.combine(a, &alg.unit(x)?)?.same(a),
        );
        push(
            "labeled.null.absorbing",
            w.clone(),
            alg.combine(a, &alg.null(x)?)?.same(&alg.null(x)?),
        );
        push("labeled.identity", w.clone(), alg.transport(x, a)?.same(a));
        for y in qs {
            let w = json!({"x": y, "a": a});
            let left = alg.combine(a, &alg.unit(y)?)?;
            let right = alg.transport(&x.join(y)?, a)?;
            push("labeled.unit.transport", w.clone(), left.same(&right));
            if y.leq(x)? {
                let back = alg.combine(&alg.transport(y, a)?, a)?;
                push("labeled.idempotency", w, back.same(a));
            }
        }
        for y in qs {
            for z in qs {
                if !cond_independent(&[x, y], z)? {
                    continue;
                }
                let w = json!({"y": y, "z": z, "a": a});
                let direct = alg.transport(y, a)?;
                let via = alg.transport(y, &alg.transport(z, a)?)?;
                push("labeled.transport", w, direct.same(&via));
            }
        }
    }

    for (i, j) in cyclic_pairs(n) {
        let (a, b) = (&all[i], &all[j]);
        for z in qs {
            if !cond_independent(&[&a.label, &b.label], z)? {
                continue;
            }
            let left = alg.transport(z, &alg.combine(a, b)?)?;
            let right = alg.combine(&alg.transport(z, a)?, &alg.transport(z, b)?)?;
            push(
                "labeled.combination",
                json!({"z": z, "a": a, "b": b}),
                left.same(&right),
            );
        }
    }

    isomorphism_checks(alg, &all, &mut push)?;
    Ok(report)
}

fn isomorphism_checks<F: Scalar>(
    alg: &LabeledAlgebra<'_>,
    all: &[LabeledPiece<F>],
    push: &mut impl FnMut(&str, Value, Result<bool>),
) -> Result<()> {
    let qs = alg.questions().partitions();
    let tildes: Vec<TildePiece<F>> = all.iter().map(|a| alg.to_tilde(a)).collect::<Result<_>>()?;
    for (a, t) in all.iter().zip(&tildes) {
        let w = json!({"a": a, "trace": t});
        push("iso.well_formed", w.clone(), t.is_well_formed());
        push("iso.round_trip", w.clone(), alg.from_tilde(t)?.same(a));
        let back = alg.to_tilde(&alg.from_tilde(t)?)?;
        push("iso.surjective", w, back.same(t));
        for y in qs {
            let left = alg.to_tilde(&alg.transport(y, a)?)?;
            let right = alg.tilde_transport(y, t)?;
            push("iso.transport", json!({"y": y, "a": a}), left.same(&right));
        }
    }
    let n = all.len();
    for (i, j) in cyclic_pairs(n) {
        let (a, b) = (&all[i], &all[j]);
        let w = json!({"a": a, "b": b});
        let left = alg.to_tilde(&alg.combine(a, b)?)?;
        let right = alg.tilde_combine(&tildes[i], &tildes[j])?;
        push("iso.combination", w.clone(), left.same(&right));
        let injective = tildes[i].same(&tildes[j]).and_then(|t| Ok(t == a.same(b)?));
        push("iso.injective", w, injective);
    }
    Ok(())
}
