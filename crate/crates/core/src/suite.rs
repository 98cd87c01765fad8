//! The acceptance battery: ten property suites evaluated over a corpus.
//!
//! Each criterion produces a [`CriterionResult`] holding the number of
//! checks performed, the number skipped because a precondition did not
//! apply, and every violation with a witness. A criterion passes when it
//! performed at least one check and recorded no violation.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Alg, Congruence, Signature};
use crate::corpus::{enumerate_congruences, Corpus};
use crate::error::{Result, SimalError};
use crate::galois::{
    classify_extension, congruences_below, exactness_lemma_check, homotopy_relation,
    is_central_extension, ml_factorization, quotient_factorization, relative_homotopy_relation,
    ML_NODE_BUDGET,
};
use crate::reflection::{
    commutator_chain_check, graph_reflection, graph_reflection_universal_check, h1, h1_candidates,
    is_internal_groupoid, morphisms_into_groupoid, pi1, universal_property_with, InternalGroupoid,
};
use crate::simplicial::{
    coskeleton, face_squares, kan_check, kan_fibration_check, meet_image_identities, nerve,
    quotient, subobject, surjection_meet_images, Sim, SimplicialCongruence, SimplicialMorphism,
};

/// Criteria 1..=10 with short names.
pub const CRITERIA: [(u8, &str); 10] = [
    (1, "maltsev_lattice"),
    (2, "face_squares"),
    (3, "h1_triple_and_meet_images"),
    (4, "reflection"),
    (5, "groupoid_characterization"),
    (6, "kan"),
    (7, "centrality_dual_route"),
    (8, "homotopy_relations"),
    (9, "exactness_and_monotone_light"),
    (10, "coskeleta_and_commutators"),
];

/// Algebras at most this large enter the lattice suite.
pub const LATTICE_MAX_SIZE: usize = 12;
/// Modular-law triples examined per algebra; beyond it a fixed stride is used.
pub const MODULAR_TRIPLE_CAP: usize = 20_000;
/// Universal property: sources with levels at most this large ...
pub const UNIVERSAL_SOURCE_MAX: usize = 8;
/// ... into groupoid nerves with levels at most this large.
pub const UNIVERSAL_TARGET_MAX: usize = 4;
/// Cap on homomorphism enumeration per level.
pub const HOM_ENUMERATION_LIMIT: usize = 100_000;
/// Minimum number of classified extensions for the dual-route suite.
pub const MIN_EXTENSIONS: usize = 30;
/// Extensions handed to the monotone-light search.
pub const ML_SAMPLE: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub property: String,
    pub subject: String,
    pub witness: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub skipped: usize,
    pub violations: Vec<Violation>,
    /// Criterion-specific counts, deterministic for a fixed corpus.
    pub details: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub criteria: Vec<CriterionResult>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn violations(&self) -> impl Iterator<Item = (u8, &Violation)> {
        self.criteria
            .iter()
            .flat_map(|c| c.violations.iter().map(move |v| (c.id, v)))
    }

    /// True when some violation came from an exceeded budget.
    pub fn budget_exceeded(&self) -> bool {
        self.violations().any(|(_, v)| v.property == "budget")
    }
}

struct Tally {
    checks: usize,
    skipped: usize,
    violations: Vec<Violation>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            skipped: 0,
            violations: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, property: &str, subject: &str, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(Violation {
                property: property.into(),
                subject: subject.into(),
                witness: witness(),
            });
        }
    }

    /// Records an error from a check that should have completed.
    fn error(&mut self, property: &str, subject: &str, e: &SimalError) {
        self.checks += 1;
        let property = match e.kind() {
            crate::ErrorKind::Budget => "budget",
            _ => property,
        };
        self.violations.push(Violation {
            property: property.into(),
            subject: subject.into(),
            witness: e.to_string(),
        });
    }

    /// Runs `f`, recording an error as a violation. `None` on error.
    fn attempt<T>(
        &mut self,
        property: &str,
        subject: &str,
        f: impl FnOnce() -> Result<T>,
    ) -> Option<T> {
        match f() {
            Ok(v) => Some(v),
            Err(e) => {
                self.error(property, subject, &e);
                None
            }
        }
    }

    fn finish(self, id: u8, details: Value) -> CriterionResult {
        let name = CRITERIA[id as usize - 1].1;
        CriterionResult {
            id,
            name,
            passed: self.checks > 0 && self.violations.is_empty(),
            checks: self.checks,
            skipped: self.skipped,
            violations: self.violations,
            details,
        }
    }
}

/// Runs the selected criteria (all when `only` is empty), concurrently, and
/// returns the results in criterion order.
pub fn run_suite(corpus: &Corpus, only: &[u8]) -> SuiteReport {
    let ids: Vec<u8> = CRITERIA
        .iter()
        .map(|&(id, _)| id)
        .filter(|id| only.is_empty() || only.contains(id))
        .collect();
    let criteria: Vec<CriterionResult> = std::thread::scope(|s| {
        let handles: Vec<_> = ids
            .iter()
            .map(|&id| s.spawn(move || run_criterion(id, corpus)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("criterion thread panicked"))
            .collect()
    });
    let passed = !criteria.is_empty() && criteria.iter().all(|c| c.passed);
    SuiteReport { criteria, passed }
}

pub fn run_criterion(id: u8, corpus: &Corpus) -> CriterionResult {
    match id {
        1 => maltsev_lattice(corpus),
        2 => face_square_suite(corpus),
        3 => h1_and_meet_images(corpus),
        4 => reflection_suite(corpus),
        5 => groupoid_suite(corpus),
        6 => kan_suite(corpus),
        7 => centrality_suite(corpus),
        8 => homotopy_suite(corpus),
        9 => exactness_and_ml(corpus),
        10 => coskeleton_suite(corpus),
        _ => panic!("no acceptance criterion {id}"),
    }
}

/// Corpus algebras plus distinct level algebras of the corpus objects, all
/// at most `max` elements.
fn small_algebras(corpus: &Corpus, max: usize) -> Vec<Alg> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let levels = corpus.objects.iter().flat_map(|x| x.levels().iter());
    for a in corpus.algebras.iter().chain(levels) {
        if a.size() <= max && seen.insert(Arc::as_ptr(a)) {
            out.push(a.clone());
        }
    }
    out
}

/// Boolean relation matrix of a congruence.
fn relation(c: &Congruence) -> Vec<bool> {
    let n = c.blocks().len();
    let mut r = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            r[a * n + b] = c.related(a, b);
        }
    }
    r
}

/// Reflexive-transitive closure of `R ∪ S` by Warshall's algorithm.
fn closure_of_union(r: &[bool], s: &[bool], n: usize) -> Vec<bool> {
    let mut t: Vec<bool> = r.iter().zip(s).map(|(a, b)| *a || *b).collect();
    for k in 0..n {
        for i in 0..n {
            if t[i * n + k] {
                for j in 0..n {
                    if t[k * n + j] {
                        t[i * n + j] = true;
                    }
                }
            }
        }
    }
    t
}

/// The relational composite `R ∘ S = {(a, c) : a R b S c}`.
fn composite(r: &[bool], s: &[bool], n: usize) -> Vec<bool> {
    let mut out = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            if r[a * n + b] {
                for c in 0..n {
                    if s[b * n + c] {
                        out[a * n + c] = true;
                    }
                }
            }
        }
    }
    out
}

fn maltsev_lattice(corpus: &Corpus) -> CriterionResult {
    let mut t = Tally::new();
    let mut algebras = 0;
    let mut congruences = 0;
    let mut triples = 0;
    for a in small_algebras(corpus, LATTICE_MAX_SIZE) {
        let subject = a.name().to_string();
        let Some(cons) = t.attempt("enumerate_congruences", &subject, || {
            enumerate_congruences(&a)
        }) else {
            continue;
        };
        algebras += 1;
        congruences += cons.len();
        let n = a.size();
        let rels: Vec<Vec<bool>> = cons.iter().map(relation).collect();
        for (i, r) in cons.iter().enumerate() {
            for (j, s) in cons.iter().enumerate() {
                let Some(join) = t.attempt("join_is_composite", &subject, || r.join(s)) else {
                    continue;
                };
                let oracle = closure_of_union(&rels[i], &rels[j], n);
                t.check(
                    relation(&join) == oracle,
                    "join_equals_closure",
                    &subject,
                    || format!("congruences #{i} and #{j}"),
                );
                t.check(
                    composite(&rels[i], &rels[j], n) == oracle,
                    "composite_equals_closure",
                    &subject,
                    || format!("congruences #{i} and #{j}"),
                );
            }
        }
        let ordered: Vec<(usize, usize)> = (0..cons.len())
            .flat_map(|r| (0..cons.len()).map(move |u| (r, u)))
            .filter(|&(r, u)| cons[r].le(&cons[u]))
            .collect();
        let total = ordered.len() * cons.len();
        let stride = total.div_ceil(MODULAR_TRIPLE_CAP).max(1);
        for idx in (0..total).step_by(stride) {
            let (ri, ui) = ordered[idx / cons.len()];
            let si = idx % cons.len();
            let (r, s, u) = (&cons[ri], &cons[si], &cons[ui]);
            let sides = (|| Ok::<_, SimalError>((r.join(&s.meet(u)?)?, r.join(s)?.meet(u)?)))();
            match sides {
                Ok((lhs, rhs)) => {
                    triples += 1;
                    t.check(lhs == rhs, "modular_law", &subject, || {
                        format!("R=#{ri} S=#{si} T=#{ui}")
                    });
                }
                Err(e) => t.error("modular_law", &subject, &e),
            }
        }
    }
    t.finish(
        1,
        json!({"algebras": algebras, "congruences": congruences, "modular_triples": triples}),
    )
}

fn face_square_suite(corpus: &Corpus) -> CriterionResult {
    let mut t = Tally::new();
    for x in &corpus.objects {
        if x.truncation() > 3 || x.level_sizes().iter().any(|&s| s > 4096) {
            t.skipped += 1;
            continue;
        }
        let Some(squares) = t.attempt("face_squares", x.name(), || face_squares(x)) else {
            continue;
        };
        for sq in squares {
            let r = &sq.report;
            t.check(
                r.comparison_surjective,
                "comparison_surjective",
                x.name(),
                || {
                    format!(
                        "n={} i={} j={}: image {} of {}",
                        sq.n, sq.i, sq.j, r.comparison_image_size, r.pullback_size
                    )
                },
            );
            t.check(r.image_criterion, "image_criterion", x.name(), || {
                format!("n={} i={} j={}", sq.n, sq.i, sq.j)
            });
        }
    }
    t.finish(2, json!({"objects": corpus.objects.len()}))
}

fn h1_and_meet_images(corpus: &Corpus) -> CriterionResult {
    let mut t = Tally::new();
    let mut identities = 0;
    for x in &corpus.objects {
        if x.truncation() < 2 {
            t.skipped += 1;
            continue;
        }
        if let Some([a, b, c]) = t.attempt("h1_candidates", x.name(), || h1_candidates(x)) {
            t.check(a == b && b == c, "h1_triple_equality", x.name(), || {
                format!(
                    "class counts {}, {}, {}",
                    a.num_classes(),
                    b.num_classes(),
                    c.num_classes()
                )
            });
        }
        if let Some(ids) = t.attempt("meet_image_identities", x.name(), || {
            meet_image_identities(x)
        }) {
            for m in ids {
                identities += 1;
                t.check(m.holds, "meet_image_identity", x.name(), || {
                    format!("m={}: {}", m.m, m.identity)
                });
            }
        }
    }
    for f in &corpus.extensions {
        let subject = morphism_name(f);
        if let Some(ids) = t.attempt("surjection_meet_images", &subject, || {
            surjection_meet_images(f)
        }) {
            for m in ids {
                identities += 1;
                t.check(m.holds, "surjection_meet_image", &subject, || {
                    m.identity.clone()
                });
            }
        }
    }
    t.finish(3, json!({"identities": identities}))
}

fn morphism_name(f: &SimplicialMorphism) -> String {
    format!("{} -> {}", f.dom().name(), f.cod().name())
}

fn max_level(x: &Sim) -> usize {
    x.level_sizes().into_iter().max().unwrap_or(0)
}

/// `x` truncated to `n`, sharing the allocation when nothing is cut.
fn truncated(x: &Sim, n: usize) -> Result<Sim> {
    if x.truncation() == n {
        Ok(x.clone())
    } else {
        Ok(Arc::new(x.truncate(n)?))
    }
}

/// Corpus objects that are groupoid nerves.
fn groupoid_objects(corpus: &Corpus) -> Vec<Sim> {
    corpus
        .objects
        .iter()
        .filter(|x| {
            x.truncation() >= 2 && is_internal_groupoid(x).map(|c| c.holds).unwrap_or(false)
        })
        .cloned()
        .collect()
}

fn reflection_suite(corpus: &Corpus) -> CriterionResult {
    let mut t = Tally::new();
    let mut morphisms = 0;
    for x in &corpus.objects {
        if x.truncation() < 2 {
            t.skipped += 1;
            continue;
        }
        let Some(r) = t.attempt("pi1", x.name(), || pi1(x)) else {
            continue;
        };
        for n in 2..=x.truncation().min(3) {
            let d = |i, j| x.face_meet(n, i, j);
            let pairs: Vec<Congruence> = (0..=n)
                .flat_map(|j| (0..j).map(move |i| (i, j)))
                .map(|(i, j)| d(i, j))
                .collect();
            match Congruence::join_all(x.level(n), pairs.iter()) {
                Ok(hn) => {
                    let kernel = Congruence::kernel_pair(r.eta.component(n));
                    t.check(kernel == hn, "unit_kernel_is_join", x.name(), || {
                        format!(
                            "level {n}: {} vs {} classes",
                            kernel.num_classes(),
                            hn.num_classes()
                        )
                    });
                }
                Err(e) => t.error("unit_kernel_is_join", x.name(), &e),
            }
        }
    }

    let targets: Vec<Sim> = groupoid_objects(corpus);
    for x in &corpus.objects {
        for y in &targets {
            if x.level(0).signature() != y.level(0).signature() {
                continue;
            }
            let top = (2..=x.truncation().min(y.truncation())).rev().find(|&n| {
                x.level_sizes()[..=n]
                    .iter()
                    .all(|&s| s <= UNIVERSAL_SOURCE_MAX)
                    && y.level_sizes()[..=n]
                        .iter()
                        .all(|&s| s <= UNIVERSAL_TARGET_MAX)
            });
            let Some(top) = top else {
                continue;
            };
            let subject = format!("{} -> {} (truncated to {top})", x.name(), y.name());
            let run = || -> Result<Vec<(bool, Option<(usize, usize, usize)>)>> {
                let (xs, ys) = (truncated(x, top)?, truncated(y, top)?);
                let r = pi1(&xs)?;
                morphisms_into_groupoid(&xs, &ys, HOM_ENUMERATION_LIMIT)?
                    .iter()
                    .map(|f| universal_property_with(&r, f).map(|u| (u.factors, u.witness)))
                    .collect()
            };
            if let Some(results) = t.attempt("universal_property", &subject, run) {
                for (factors, witness) in results {
                    morphisms += 1;
                    t.check(factors, "universal_property", &subject, || {
                        format!("{witness:?}")
                    });
                }
            }
        }
    }
    t.finish(
        4,
        json!({"groupoid_targets": targets.len(), "morphisms_checked": morphisms}),
    )
}

fn groupoid_suite(corpus: &Corpus) -> CriterionResult {
    let mut t = Tally::new();
    let mut groupoids = 0;
    let mut derived = 0;
    for x in &corpus.objects {
        if x.truncation() < 2 {
            t.skipped += 1;
            continue;
        }
        let Some(check) = t.attempt("groupoid_check", x.name(), || is_internal_groupoid(x)) else {
            continue;
        };
        t.check(
            check.conditions_agree(),
            "conditions_agree",
            x.name(),
            || format!("{:?}", check.levels),
        );
        if !check.holds {
            continue;
        }
        groupoids += 1;
        let top = x.truncation();
        let mut quotients: Vec<(String, SimplicialCongruence)> = Vec::new();
        for (level, b) in [(0, 1), (1, 1), (top, 1), (top, 2)] {
            if b < x.level(level).size() {
                let theta = SimplicialCongruence::principal(x, level, 0, b);
                quotients.push((format!("quotient by ({level}: 0~{b})"), theta));
            }
        }
        for (label, theta) in quotients {
            let subject = format!("{} {label}", x.name());
            if let Some(c) = t.attempt("quotient_is_groupoid", &subject, || {
                let (q, _) = quotient(x, &theta)?;
                is_internal_groupoid(&q)
            }) {
                derived += 1;
                t.check(c.holds, "quotient_is_groupoid", &subject, || {
                    format!("{:?}", c.witness)
                });
            }
        }
        let seeds: Vec<Vec<(usize, usize)>> = vec![
            vec![(0, 0)],
            vec![(1, x.level(1).size() - 1)],
            vec![(top, x.level(top).size() / 2)],
        ];
        for seed in seeds {
            let subject = format!("{} subobject generated by {seed:?}", x.name());
            if let Some(c) = t.attempt("subobject_is_groupoid", &subject, || {
                let (s, _) = subobject(x, &seed)?;
                is_internal_groupoid(&s)
            }) {
                derived += 1;
                t.check(c.holds, "subobject_is_groupoid", &subject, || {
                    format!("{:?}", c.witness)
                });
            }
        }
    }
    t.finish(
        5,
        json!({"groupoids": groupoids, "quotients_and_subobjects": derived}),
    )
}

fn kan_suite(corpus: &Corpus) -> CriterionResult {
    let mut t = Tally::new();
    for x in &corpus.objects {
        if let Some(r) = t.attempt("kan_check", x.name(), || kan_check(x)) {
            let bad = r.entries.iter().find(|e| !e.surjective);
            t.check(bad.is_none(), "kan_condition", x.name(), || {
                format!("{bad:?}")
            });
        }
    }
    for f in &corpus.extensions {
        let subject = morphism_name(f);
        if let Some(r) = t.attempt("kan_fibration_check", &subject, || kan_fibration_check(f)) {
            let bad = r.entries.iter().find(|e| !e.surjective);
            t.check(bad.is_none(), "kan_fibration", &subject, || {
                format!("{bad:?}")
            });
        }
    }
    t.finish(
        6,
        json!({"objects": corpus.objects.len(), "extensions": corpus.extensions.len()}),
    )
}

fn centrality_suite(corpus: &Corpus) -> CriterionResult {
    let mut t = Tally::new();
    let (mut trivial, mut central, mut normal) = (0, 0, 0);
    t.check(
        corpus.extensions.len() >= MIN_EXTENSIONS,
        "extension_count",
        "corpus",
        || {
            format!(
                "{} extensions, {MIN_EXTENSIONS} required",
                corpus.extensions.len()
            )
        },
    );
    for f in &corpus.extensions {
        let subject = morphism_name(f);
        let Some(r) = t.attempt("classify_extension", &subject, || classify_extension(f)) else {
            continue;
        };
        trivial += r.trivial as usize;
        central += r.central as usize;
        normal += r.normal as usize;
        t.check(
            r.central_by_conditions == r.central_by_definition,
            "central_routes_agree",
            &subject,
            || format!("{:?}", r.witnesses),
        );
        t.check(
            r.trivial_by_lattice == r.trivial_by_comparison,
            "trivial_routes_agree",
            &subject,
            || format!("{:?}", r.witnesses),
        );
        t.check(
            !r.trivial || r.central,
            "trivial_implies_central",
            &subject,
            String::new,
        );
        t.check(
            !r.central || r.normal,
            "central_implies_normal",
            &subject,
            String::new,
        );
        if r.central {
            t.check(
                r.exact_fibration == Some(true),
                "central_is_exact_fibration",
                &subject,
                || format!("{:?}", r.exact_fibration),
            );
        }
        for h in &r.horn_squares {
            t.check(
                h.meet_discrete == h.theta_bijective,
                "horn_square_pullback",
                &subject,
                || format!("{h:?}"),
            );
        }
    }
    t.finish(
        7,
        json!({"extensions": corpus.extensions.len(), "trivial": trivial, "central": central, "normal": normal}),
    )
}

fn homotopy_suite(corpus: &Corpus) -> CriterionResult {
    let mut t = Tally::new();
    for x in &corpus.objects {
        if x.truncation() < 2 {
            t.skipped += 1;
            continue;
        }
        if let Some((rel, h)) = t.attempt("homotopy_relation", x.name(), || {
            Ok((homotopy_relation(x)?, h1(x)?))
        }) {
            t.check(rel == h, "homotopy_relation_is_h1", x.name(), String::new);
        }
    }
    for f in &corpus.extensions {
        let subject = morphism_name(f);
        if let Some(r) = t.attempt("relative_homotopy", &subject, || {
            relative_homotopy_relation(f)
        }) {
            t.check(
                r.matches(),
                "relative_constructions_match",
                &subject,
                || {
                    format!(
                        "degenerate {} / {}, limit {} / {} / {}",
                        r.degenerate_image.num_classes(),
                        r.degenerate_formula.num_classes(),
                        r.limit_image.num_classes(),
                        r.limit_formula.num_classes(),
                        r.limit_formula_via_d0.num_classes()
                    )
                },
            );
        }
    }
    t.finish(
        8,
        json!({"objects": corpus.objects.len(), "extensions": corpus.extensions.len()}),
    )
}

fn exactness_and_ml(corpus: &Corpus) -> CriterionResult {
    let mut t = Tally::new();
    let mut qualifying = 0;
    for f in &corpus.extensions {
        let subject = morphism_name(f);
        match exactness_lemma_check(f) {
            Ok(ok) => {
                qualifying += 1;
                t.check(ok, "exactness_lemma", &subject, String::new);
            }
            Err(SimalError::PreconditionUnmet(_)) => t.skipped += 1,
            Err(e) => t.error("exactness_lemma", &subject, &e),
        }
    }
    let mut order: Vec<usize> = (0..corpus.extensions.len())
        .filter(|&i| !corpus.extensions[i].is_levelwise_bijective())
        .collect();
    // Non-central extensions first: for them the search has real work to do.
    let central: Vec<bool> = corpus
        .extensions
        .iter()
        .map(|f| is_central_extension(f).unwrap_or(true))
        .collect();
    order.sort_by_key(|&i| (central[i], max_level(corpus.extensions[i].dom()), i));
    let mut searched = Vec::new();
    for &i in order.iter().take(ML_SAMPLE) {
        let f = &corpus.extensions[i];
        let subject = morphism_name(f);
        let Some(ml) = t.attempt("ml_factorization", &subject, || {
            ml_factorization(f, ML_NODE_BUDGET)
        }) else {
            continue;
        };
        searched.push(json!({"extension": subject, "explored": ml.explored, "central_part_bijective": ml.factorization.m.is_levelwise_bijective()}));
        t.check(
            ml.minimal_successes == 1,
            "unique_minimal_central_quotient",
            &subject,
            || format!("{} minimal central quotients", ml.minimal_successes),
        );
        t.check(
            ml.samples_inverted,
            "e_part_survives_pullback",
            &subject,
            String::new,
        );
        // Independent confirmation: nothing strictly below θ is central.
        let below = t.attempt("minimality", &subject, || {
            let mut smaller_central = 0;
            for c in congruences_below(f.dom(), &ml.theta, ML_NODE_BUDGET)? {
                if c != ml.theta && is_central_extension(&quotient_factorization(f, &c)?.1)? {
                    smaller_central += 1;
                }
            }
            Ok(smaller_central)
        });
        if let Some(n) = below {
            t.check(n == 0, "minimality", &subject, || {
                format!("{n} central quotients strictly below")
            });
        }
    }
    t.finish(
        9,
        json!({"exactness_qualifying": qualifying, "ml_searches": searched}),
    )
}

/// Coskeleta built from the corpus graphs at truncation 2.
fn graph_coskeleta(corpus: &Corpus, t: &mut Tally) -> Vec<Sim> {
    corpus
        .graphs
        .iter()
        .filter_map(|g| t.attempt("coskeleton", g.name(), || Ok(Arc::new(coskeleton(g, 2)?))))
        .collect()
}

fn coskeleton_suite(corpus: &Corpus) -> CriterionResult {
    let mut t = Tally::new();
    let heyting = Signature::heyting();
    let coskeleta = graph_coskeleta(corpus, &mut t);
    for c in &coskeleta {
        if let Some(h) = t.attempt("coskeletal_h1", c.name(), || h1(c)) {
            t.check(h == c.face_meet(1, 0, 1), "coskeletal_h1", c.name(), || {
                format!(
                    "{} vs {} classes",
                    h.num_classes(),
                    c.face_meet(1, 0, 1).num_classes()
                )
            });
        }
    }
    for x in corpus.objects.iter().chain(&coskeleta) {
        if x.truncation() < 2 {
            t.skipped += 1;
            continue;
        }
        if let Some(ch) = t.attempt("commutator_chain", x.name(), || commutator_chain_check(x)) {
            t.check(ch.holds, "commutator_chain", x.name(), || {
                format!(
                    "[D0,D1] {} classes, H1 {}, D0^D1 {}",
                    ch.commutator.num_classes(),
                    ch.h1.num_classes(),
                    ch.d0_meet_d1.num_classes()
                )
            });
        }
        if **x.level(0).signature() == heyting {
            if let Some((h, r)) =
                t.attempt("heyting_reflection", x.name(), || Ok((h1(x)?, pi1(x)?)))
            {
                t.check(
                    h == x.face_meet(1, 0, 1),
                    "heyting_h1",
                    x.name(),
                    String::new,
                );
                t.check(
                    r.pi1.is_equivalence_relation(),
                    "heyting_equivalence_relation",
                    x.name(),
                    String::new,
                );
            }
        }
    }
    let targets: Vec<InternalGroupoid> = groupoid_objects(corpus)
        .iter()
        .filter(|y| y.level(1).size() <= 16)
        .filter_map(|y| InternalGroupoid::from_simplicial(y).ok())
        .collect();
    let mut universal = 0;
    for g in &corpus.graphs {
        let Some(r) = t.attempt("graph_reflection", g.name(), || graph_reflection(g)) else {
            continue;
        };
        if let Some(c) = t.attempt("graph_reflection_is_groupoid", g.name(), || {
            is_internal_groupoid(&nerve(&r.groupoid, 2)?.sim)
        }) {
            t.check(c.holds, "graph_reflection_is_groupoid", g.name(), || {
                format!("{:?}", c.witness)
            });
        }
        for target in &targets {
            if target.x0().signature() != g.level(0).signature() {
                continue;
            }
            let subject = format!("{} into {}", g.name(), target.name());
            if let Some(n) = t.attempt("graph_reflection_universal", &subject, || {
                graph_reflection_universal_check(g, &r, target, HOM_ENUMERATION_LIMIT)
            }) {
                universal += n;
                t.checks += 1;
            }
        }
    }
    t.finish(
        10,
        json!({"coskeleta": coskeleta.len(), "graph_morphisms_checked": universal}),
    )
}
