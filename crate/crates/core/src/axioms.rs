//! Executable checks of the domain-free information algebra laws.
//!
//! [`axiom_suite`] evaluates every law over a corpus of elements and all
//! questions (pairs, triples) of a [`QuestionSet`], emitting one
//! [`LawRecord`] per (law, witness) instance. Failures carry the serialised
//! witness so they can be replayed.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{InformationAlgebra, QuestionSet};
use crate::atoms::{dichotomy_witness, extend_to_maximal, MaximalSet};
use crate::cone::Gamble;
use crate::error::Result;
use crate::partition::{cond_independent, Partition, PossibilitySpace};
use crate::phi::{closure, PhiElement};
use crate::random::Sampler;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawRecord {
    pub law: String,
    pub witness: Value,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Report {
    pub records: Vec<LawRecord>,
}

impl Report {
    pub fn push(&mut self, law: &str, witness: Value, pass: bool) {
        self.records.push(LawRecord {
            law: law.to_string(),
            witness,
            pass,
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    /// Number of records checked for laws whose name starts with `prefix`.
    pub fn count(&self, prefix: &str) -> usize {
        self.records
            .iter()
            .filter(|r| r.law.starts_with(prefix))
            .count()
    }

    pub fn failed(&self, prefix: &str) -> usize {
        self.failures()
            .filter(|r| r.law.starts_with(prefix))
            .count()
    }

    /// One JSON object per line, in check order.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialise"));
            out.push('\n');
        }
        out
    }

    /// `law: checked/failed` per law name, sorted.
    pub fn summary(&self) -> Vec<(String, usize, usize)> {
        let mut by_law: std::collections::BTreeMap<&str, (usize, usize)> = Default::default();
        for r in &self.records {
            let e = by_law.entry(&r.law).or_default();
            e.0 += 1;
            if !r.pass {
                e.1 += 1;
            }
        }
        by_law
            .into_iter()
            .map(|(k, (n, f))| (k.to_string(), n, f))
            .collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (law, n, failed) in self.summary() {
            writeln!(f, "{law}: {n} checked, {failed} failed")?;
        }
        Ok(())
    }
}

/// Partition-level q-separoid laws C1–C4 over all triples of `q`, plus the
/// `x⊥y|z ⟺ (x∨z)⊥(y∨z)|z` reformulation.
pub fn separoid_suite(q: &QuestionSet) -> Result<Report> {
    let mut report = Report::default();
    let ps = q.partitions();
    let ci = |x: &Partition, y: &Partition, z: &Partition| cond_independent(&[x, y], z);
    for x in ps {
        for y in ps {
            let w = json!({"x": x, "y": y});
            report.push("separoid.C1", w, ci(x, y, y)?);
            for z in ps {
                let w = json!({"x": x, "y": y, "z": z});
                let holds = ci(x, y, z)?;
                if holds {
                    report.push("separoid.C2", w.clone(), ci(y, x, z)?);
                    report.push("separoid.C4", w.clone(), ci(x, &y.join(z)?, z)?);
                    for y2 in ps {
                        if y2.leq(y)? {
                            report.push(
                                "separoid.C3",
                                json!({"x": x, "y": y, "z": z, "y'": y2}),
                                ci(x, y2, z)?,
                            );
                        }
                    }
                }
                report.push(
                    "separoid.join_form",
                    w,
                    holds == ci(&x.join(z)?, &y.join(z)?, z)?,
                );
            }
        }
    }
    Ok(report)
}

struct Ctx<'a, A: InformationAlgebra> {
    alg: &'a A,
    q: &'a QuestionSet,
    corpus: Vec<A::Element>,
    /// `ext[i][x] = ε_x(D_i)`
    ext: Vec<Vec<A::Element>>,
    supports: Vec<Vec<bool>>,
    join: Vec<Vec<usize>>,
    leq: Vec<Vec<bool>>,
    report: Report,
}

impl<A: InformationAlgebra> Ctx<'_, A> {
    fn d(&self, i: usize) -> Value {
        self.alg.describe(&self.corpus[i])
    }

    fn x(&self, xi: usize) -> Value {
        json!(self.q.partitions()[xi])
    }

    fn part(&self, xi: usize) -> &Partition {
        &self.q.partitions()[xi]
    }

    fn check(&mut self, law: &str, witness: impl FnOnce(&Self) -> Value, outcome: Result<bool>) {
        let (pass, witness) = match outcome {
            Ok(true) => (true, witness(self)),
            Ok(false) => (false, witness(self)),
            Err(e) => (false, json!({"error": e.to_string(), "at": witness(self)})),
        };
        self.report.push(law, witness, pass);
    }

    fn eq(&self, a: &A::Element, b: &A::Element) -> Result<bool> {
        self.alg.equal(a, b)
    }
}

/// Deterministic sample of index pairs: each element with its next few
/// neighbours (cyclically).
fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for step in [0, 1, 2, 5] {
            let j = (i + step) % n;
            if !out.contains(&(i, j)) {
                out.push((i, j));
            }
        }
    }
    out
}

fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    (0..n).map(|i| (i, (i + 1) % n, (i + 3) % n)).collect()
}

/// Runs every domain-free law over `corpus` and the questions in `q`.
///
/// The null and unit elements are always added to the corpus. When `q`
/// lacks the top partition, elements without a support in `q` are dropped
/// first (the support axiom presumes one).
pub fn axiom_suite<A: InformationAlgebra>(
    alg: &A,
    q: &QuestionSet,
    corpus: &[A::Element],
) -> Result<Report> {
    let mut elements = vec![alg.null(), alg.unit()];
    elements.extend_from_slice(corpus);
    let nq = q.len();
    let ps = q.partitions();

    let mut ext = Vec::with_capacity(elements.len());
    let mut supports = Vec::with_capacity(elements.len());
    let mut kept = Vec::with_capacity(elements.len());
    for d in elements {
        let row: Vec<A::Element> = ps
            .iter()
            .map(|x| alg.extract(x, &d))
            .collect::<Result<_>>()?;
        let sup: Vec<bool> = row
            .iter()
            .map(|e| alg.equal(e, &d))
            .collect::<Result<_>>()?;
        if !q.contains_top() && !sup.iter().any(|&s| s) {
            continue;
        }
        ext.push(row);
        supports.push(sup);
        kept.push(d);
    }

    let mut join = vec![vec![0; nq]; nq];
    let mut leq = vec![vec![false; nq]; nq];
    for a in 0..nq {
        for b in 0..nq {
            join[a][b] = q
                .position(&ps[a].join(&ps[b])?)
                .expect("question set is join-closed");
            leq[a][b] = ps[a].leq(&ps[b])?;
        }
    }

    let mut ctx = Ctx {
        alg,
        q,
        corpus: kept,
        ext,
        supports,
        join,
        leq,
        report: separoid_suite(q)?,
    };
    semigroup_laws(&mut ctx)?;
    existential_laws(&mut ctx)?;
    support_laws(&mut ctx)?;
    derived_extraction_laws(&mut ctx)?;
    independence_laws(&mut ctx)?;
    meet_laws(&mut ctx)?;
    Ok(ctx.report)
}

fn semigroup_laws<A: InformationAlgebra>(c: &mut Ctx<'_, A>) -> Result<()> {
    let alg = c.alg;
    let n = c.corpus.len();
    let null = alg.null();
    let unit = alg.unit();
    for i in 0..n {
        let d = c.corpus[i].clone();
        let w = |c: &Ctx<'_, A>| json!({"D": c.d(i)});
        c.check("carrier.element", w, Ok(alg.is_element(&d)));
        let dd = alg.combine(&d, &d)?;
        c.check("semigroup.idempotence", w, c.eq(&dd, &d));
        let dn = alg.combine(&d, &null)?;
        c.check("semigroup.null", w, c.eq(&dn, &null));
        let du = alg.combine(&d, &unit)?;
        c.check("semigroup.unit", w, c.eq(&du, &d));
        let lo = alg
            .leq(&unit, &d)
            .and_then(|a| Ok(a && alg.leq(&d, &null)?));
        c.check("order.bounds", w, lo);
    }
    for (i, j) in pairs(n) {
        let (a, b) = (c.corpus[i].clone(), c.corpus[j].clone());
        let w = |c: &Ctx<'_, A>| json!({"D1": c.d(i), "D2": c.d(j)});
        let ab = alg.combine(&a, &b)?;
        let ba = alg.combine(&b, &a)?;
        c.check("carrier.combination", w, Ok(alg.is_element(&ab)));
        c.check("semigroup.commutativity", w, c.eq(&ab, &ba));
        // combination is the join of the information order
        let upper = alg.leq(&a, &ab).and_then(|x| Ok(x && alg.leq(&b, &ab)?));
        c.check("order.join", w, upper);
        let order = alg.leq(&a, &b).and_then(|le| Ok(le == c.eq(&ab, &b)?));
        c.check("order.combination", w, order);
    }
    for (i, j, k) in triples(n) {
        let (a, b, d) = (&c.corpus[i], &c.corpus[j], &c.corpus[k]);
        let left = alg.combine(&alg.combine(a, b)?, d)?;
        let right = alg.combine(a, &alg.combine(b, d)?)?;
        let w = |c: &Ctx<'_, A>| json!({"D1": c.d(i), "D2": c.d(j), "D3": c.d(k)});
        c.check("semigroup.associativity", w, c.eq(&left, &right));
    }
    Ok(())
}

fn existential_laws<A: InformationAlgebra>(c: &mut Ctx<'_, A>) -> Result<()> {
    let alg = c.alg;
    let n = c.corpus.len();
    let null = alg.null();
    for xi in 0..c.q.len() {
        let e0 = alg.extract(c.part(xi), &null)?;
        c.check(
            "existential.null",
            |c| json!({"x": c.x(xi)}),
            c.eq(&e0, &null),
        );
        for i in 0..n {
            let w = |c: &Ctx<'_, A>| json!({"x": c.x(xi), "D": c.d(i)});
            let e = c.ext[i][xi].clone();
            c.check("carrier.extraction", w, Ok(alg.is_element(&e)));
            let back = alg.combine(&e, &c.corpus[i])?;
            c.check("existential.absorption", w, c.eq(&back, &c.corpus[i]));
            c.check("extraction.deflationary", w, alg.leq(&e, &c.corpus[i]));
        }
        for (i, j) in pairs(n) {
            let e1 = &c.ext[i][xi];
            let inner = alg.combine(e1, &c.corpus[j])?;
            let left = alg.extract(c.part(xi), &inner)?;
            let right = alg.combine(e1, &c.ext[j][xi])?;
            let w = |c: &Ctx<'_, A>| json!({"x": c.x(xi), "D1": c.d(i), "D2": c.d(j)});
            c.check("existential.combination", w, c.eq(&left, &right));

            // monotonicity along D1 <= D1 · D2
            let upper = alg.combine(&c.corpus[i], &c.corpus[j])?;
            let eu = alg.extract(c.part(xi), &upper)?;
            c.check("extraction.monotone", w, alg.leq(&c.ext[i][xi], &eu));
        }
    }
    Ok(())
}

fn support_laws<A: InformationAlgebra>(c: &mut Ctx<'_, A>) -> Result<()> {
    let nq = c.q.len();
    for i in 0..c.corpus.len() {
        let has = c.supports[i].iter().any(|&s| s);
        c.check("support.exists", |c| json!({"D": c.d(i)}), Ok(has));
        for xi in 0..nq {
            if !c.supports[i][xi] {
                continue;
            }
            for yi in 0..nq {
                if c.leq[xi][yi] {
                    let w = |c: &Ctx<'_, A>| json!({"x": c.x(xi), "y": c.x(yi), "D": c.d(i)});
                    c.check("support.upward", w, Ok(c.supports[i][yi]));
                }
            }
        }
    }
    Ok(())
}

fn derived_extraction_laws<A: InformationAlgebra>(c: &mut Ctx<'_, A>) -> Result<()> {
    let alg = c.alg;
    let nq = c.q.len();
    let n = c.corpus.len();
    let unit = alg.unit();
    let null = alg.null();
    for xi in 0..nq {
        let x = c.part(xi).clone();
        let eu = alg.extract(&x, &unit)?;
        c.check("extraction.unit", |c| json!({"x": c.x(xi)}), c.eq(&eu, &unit));
        for i in 0..n {
            let w = |c: &Ctx<'_, A>| json!({"x": c.x(xi), "D": c.d(i)});
            let e = c.ext[i][xi].clone();
            let item2 = c
                .eq(&e, &null)
                .and_then(|a| Ok(a == c.eq(&c.corpus[i], &null)?));
            c.check("extraction.null", w, item2);
            let ee = alg.extract(&x, &e)?;
            c.check("extraction.idempotent", w, c.eq(&ee, &e));
            for yi in 0..nq {
                if !c.leq[xi][yi] {
                    continue;
                }
                let w = |c: &Ctx<'_, A>| json!({"x": c.x(xi), "y": c.x(yi), "D": c.d(i)});
                c.check("extraction.order", w, alg.leq(&e, &c.ext[i][yi]));
                let yx = alg.extract(c.part(yi), &e)?;
                c.check("extraction.nested_outer", w, c.eq(&yx, &e));
                let xy = alg.extract(&x, &c.ext[i][yi])?;
                c.check("extraction.nested_inner", w, c.eq(&xy, &e));
            }
        }
    }
    for (i, j) in pairs(n) {
        let prod = alg.combine(&c.corpus[i], &c.corpus[j])?;
        for xi in 0..nq {
            if !c.supports[i][xi] {
                continue;
            }
            if c.supports[j][xi] {
                let e = alg.extract(c.part(xi), &prod)?;
                let w = |c: &Ctx<'_, A>| json!({"x": c.x(xi), "D1": c.d(i), "D2": c.d(j)});
                c.check("support.combination", w, c.eq(&e, &prod));
            }
            for yi in 0..nq {
                if !c.supports[j][yi] {
                    continue;
                }
                let xy = c.join[xi][yi];
                let e = alg.extract(c.part(xy), &prod)?;
                let split = alg.combine(&c.ext[i][xy], &c.ext[j][xy])?;
                let w = |c: &Ctx<'_, A>| json!({"x": c.x(xi), "y": c.x(yi), "D1": c.d(i), "D2": c.d(j)});
                let ok = c.eq(&e, &prod).and_then(|s| Ok(s && c.eq(&prod, &split)?));
                c.check("support.join", w, ok);
            }
        }
    }
    Ok(())
}

fn independence_laws<A: InformationAlgebra>(c: &mut Ctx<'_, A>) -> Result<()> {
    let alg = c.alg;
    let nq = c.q.len();
    let n = c.corpus.len();
    // ε_w(ε_z(D_i)), filled lazily
    let mut twice: HashMap<(usize, usize, usize), A::Element> = HashMap::new();
    let mut ext_twice = |c: &Ctx<'_, A>, i: usize, zi: usize, wi: usize| -> Result<A::Element> {
        if let Some(e) = twice.get(&(i, zi, wi)) {
            return Ok(e.clone());
        }
        let e = alg.extract(c.part(wi), &c.ext[i][zi])?;
        twice.insert((i, zi, wi), e.clone());
        Ok(e)
    };

    let ci = (0..nq)
        .map(|xi| {
            (0..nq)
                .map(|yi| {
                    (0..nq)
                        .map(|zi| cond_independent(&[c.part(xi), c.part(yi)], c.part(zi)))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    #[allow(clippy::needless_range_loop)]
    for xi in 0..nq {
        for yi in 0..nq {
            for zi in 0..nq {
                let xz = c.join[xi][zi];
                let yz = c.join[yi][zi];
                // extraction axiom: x∨z ⊥ y∨z | z and x supports D
                if ci[xz][yz][zi] {
                    for i in 0..n {
                        if !c.supports[i][xi] {
                            continue;
                        }
                        let left = c.ext[i][yz].clone();
                        let right = ext_twice(c, i, zi, yz)?;
                        let w = |c: &Ctx<'_, A>| json!({"x": c.x(xi), "y": c.x(yi), "z": c.x(zi), "D": c.d(i)});
                        c.check("extraction.axiom", w, c.eq(&left, &right));
                    }
                }
                if !ci[xi][yi][zi] {
                    continue;
                }
                for i in 0..n {
                    if !c.supports[i][xi] {
                        continue;
                    }
                    let left = c.ext[i][yi].clone();
                    let right = ext_twice(c, i, zi, yi)?;
                    let w = |c: &Ctx<'_, A>| json!({"x": c.x(xi), "y": c.x(yi), "z": c.x(zi), "D": c.d(i)});
                    c.check("independence.extraction", w, c.eq(&left, &right));
                }
                for i in 0..n {
                    if !c.supports[i][xi] {
                        continue;
                    }
                    for j in 0..n {
                        if !c.supports[j][yi] || !sampled_pair(i, j, n) {
                            continue;
                        }
                        let prod = alg.combine(&c.corpus[i], &c.corpus[j])?;
                        let left = alg.extract(c.part(zi), &prod)?;
                        let right = alg.combine(&c.ext[i][zi], &c.ext[j][zi])?;
                        let w = |c: &Ctx<'_, A>| json!({"x": c.x(xi), "y": c.x(yi), "z": c.x(zi), "D1": c.d(i), "D2": c.d(j)});
                        c.check("independence.combination", w, c.eq(&left, &right));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Pairs for the premise-filtered binary laws: a fixed stride through all
/// `n²` pairs so each element meets several partners.
fn sampled_pair(i: usize, j: usize, n: usize) -> bool {
    (i * 7 + j * 3) % n.max(1) < 4.min(n)
}

fn meet_laws<A: InformationAlgebra>(c: &mut Ctx<'_, A>) -> Result<()> {
    let alg = c.alg;
    let n = c.corpus.len();
    for xi in 0..c.q.len() {
        for (i, j) in pairs(n) {
            let m = alg.meet(&c.corpus[i], &c.corpus[j])?;
            let left = alg.extract(c.part(xi), &m)?;
            let right = alg.meet(&c.ext[i][xi], &c.ext[j][xi])?;
            let w = |c: &Ctx<'_, A>| json!({"x": c.x(xi), "D1": c.d(i), "D2": c.d(j)});
            c.check("meet.extraction", w, c.eq(&left, &right));
        }
        for (i, j, k) in triples(n) {
            let m = alg.meet(&alg.meet(&c.corpus[i], &c.corpus[j])?, &c.corpus[k])?;
            let left = alg.extract(c.part(xi), &m)?;
            let right = alg.meet(&alg.meet(&c.ext[i][xi], &c.ext[j][xi])?, &c.ext[k][xi])?;
            let w =
                |c: &Ctx<'_, A>| json!({"x": c.x(xi), "D1": c.d(i), "D2": c.d(j), "D3": c.d(k)});
            c.check("meet.extraction_family", w, c.eq(&left, &right));
        }
    }
    Ok(())
}

/// Closure-operator laws on random gamble sets: extensivity, idempotence,
/// monotonicity (along prefixes), and `C(C(K₁) ∪ K₂) = C(K₁ ∪ K₂)` for
/// every split of `K` into a prefix and the rest.
pub fn closure_suite<F: Scalar>(sets: &[(PossibilitySpace, Vec<Gamble<F>>)]) -> Result<Report> {
    let mut report = Report::default();
    for (space, k) in sets {
        let space = *space;
        let ck = closure(space, k)?;
        let w = json!({"K": k});
        let mut extensive = true;
        for g in k {
            extensive &= ck.contains(g)?;
        }
        report.push("closure.extensive", w.clone(), extensive);
        report.push("closure.idempotent", w.clone(), reclose(&ck)?.same(&ck)?);
        for split in 0..=k.len() {
            let (k1, k2) = k.split_at(split);
            let c1 = closure(space, k1)?;
            let w = json!({"K1": k1, "K2": k2});
            report.push("closure.monotone", w.clone(), c1.leq(&ck)?);
            let lifted = match &c1 {
                PhiElement::Top(_) => PhiElement::Top(space),
                PhiElement::Coherent(c) => {
                    let mut gens = c.generators().to_vec();
                    gens.extend_from_slice(k2);
                    closure(space, &gens)?
                }
            };
            report.push("closure.stepwise", w, lifted.same(&ck)?);
        }
    }
    Ok(report)
}

fn reclose<F: Scalar>(p: &PhiElement<F>) -> Result<PhiElement<F>> {
    match p {
        PhiElement::Top(s) => Ok(PhiElement::Top(*s)),
        PhiElement::Coherent(c) => closure(c.space(), c.generators()),
    }
}

/// The smallest family containing `ps` and closed under join and meet.
fn sublattice(ps: &[Partition]) -> Result<Vec<Partition>> {
    let mut all: Vec<Partition> = Vec::new();
    for p in ps {
        if !all.contains(p) {
            all.push(p.clone());
        }
    }
    let mut i = 0;
    while i < all.len() {
        for j in 0..=i {
            for r in [all[i].join(&all[j])?, all[i].meet(&all[j])?] {
                if !all.contains(&r) {
                    all.push(r);
                }
            }
        }
        i += 1;
    }
    Ok(all)
}

/// The commuting characterisation of conditional independence on pairs.
///
/// For each pair the laws range over the sublattice generated by the pair
/// and the bottom partition. Commuting pairs must satisfy
/// `x⊥y|z ⟺ (x∨z)∧(y∨z) = z` for every such `z` and have the ⋆-product as
/// meet; non-commuting pairs must have some `z` where the equivalence
/// breaks.
pub fn commuting_suite(pairs: &[(Partition, Partition)]) -> Result<Report> {
    let mut report = Report::default();
    for (x, y) in pairs {
        let lattice = sublattice(&[x.clone(), y.clone(), Partition::bottom(x.space())])?;
        let mut violated = None;
        for z in &lattice {
            let ci = cond_independent(&[x, y], z)?;
            let identity = x.join(z)?.meet(&y.join(z)?)? == *z;
            if ci != identity && violated.is_none() {
                violated = Some(z.clone());
            }
        }
        let w = json!({"x": x, "y": y, "sublattice": lattice.len()});
        if x.commutes(y)? {
            report.push(
                "commuting.characterisation",
                json!({"x": x, "y": y, "z": violated}),
                violated.is_none(),
            );
            let star = x.star_product(y)?.classes();
            report.push("commuting.star_meet", w, star.as_ref() == Some(&x.meet(y)?));
        } else {
            report.push("commuting.converse", w, violated.is_some());
        }
    }
    Ok(report)
}

/// Lex-chain, separation and dichotomy checks on random instances.
///
/// `chains` random maximal sets are each probed with one random gamble
/// for the trichotomy `f ∈ M` xor `−f ∈ M` (for `f ≠ 0`); `separations`
/// random coherent sets get a maximal extension excluding a gamble outside
/// them; `pairs` random (maximal, coherent) pairs must satisfy `D ⊆ M` or
/// contain a `g ∈ D` with `−g ∈ M`, so that `M·D` reaches zero.
pub fn atoms_suite<F: Scalar>(
    sampler: &mut Sampler,
    spaces: &[PossibilitySpace],
    chains: usize,
    separations: usize,
    pairs: usize,
) -> Result<Report> {
    let mut report = Report::default();
    let pick = |s: &mut Sampler| spaces[s.below(spaces.len())];
    for _ in 0..chains {
        let space = pick(sampler);
        let m: MaximalSet<F> = sampler.chain(space);
        let f: Gamble<F> = sampler.nonzero_gamble(space);
        let valid = MaximalSet::lex_new(space, m.chain().to_vec()).is_ok();
        let (pos, neg) = (m.lex_member(&f)?, m.lex_member(&-&f)?);
        let zero_out = !m.lex_member(&Gamble::zero(space))?;
        let w = json!({"M": m, "f": f});
        report.push("atoms.chain", w.clone(), valid && zero_out);
        report.push("atoms.trichotomy", w, pos != neg);
    }
    for _ in 0..separations {
        let space = pick(sampler);
        let p: PhiElement<F> = sampler.coherent(space, 3);
        let f = loop {
            let f: Gamble<F> = sampler.nonzero_gamble(space);
            if !p.contains(&f)? {
                break f;
            }
        };
        let w = json!({"D": p, "f": f});
        let ok = match extend_to_maximal(&p, &f) {
            Ok(m) => m.dominates(&p)? && !m.lex_member(&f)?,
            Err(_) => false,
        };
        report.push("atoms.separation", w, ok);
    }
    for i in 0..pairs {
        let space = pick(sampler);
        let m: MaximalSet<F> = sampler.chain(space);
        // every other set is drawn inside M so both branches occur
        let p: PhiElement<F> = if i % 2 == 0 {
            sampler.coherent(space, 3)
        } else {
            let gens: Vec<Gamble<F>> = (0..1 + sampler.below(3))
                .map(|_| {
                    let g = sampler.nonzero_gamble(space);
                    if m.lex_member(&g).unwrap_or(false) {
                        g
                    } else {
                        -&g
                    }
                })
                .collect();
            closure(space, &gens)?
        };
        let ok = if m.dominates(&p)? {
            true
        } else {
            match dichotomy_witness(&m, &p)? {
                Some(g) => p.contains(&g)? && m.lex_member(&-&g)?,
                None => false,
            }
        };
        report.push("atoms.dichotomy", json!({"M": m, "D": p}), ok);
    }
    Ok(report)
}
