//! The (E, M) factorization through the reflection and the relative
//! monotone-light factorization found by lattice search.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use super::classify::{is_central_extension, is_trivial_extension};
use crate::algebra::{Congruence, Homomorphism};
use crate::error::{Result, SimalError};
use crate::reflection::{pi1, reflect_morphism};
use crate::simplicial::{
    constant, exactness_check, kernel_pair_object, levelwise_product, levelwise_pullback, quotient,
    Sim, SimplicialCongruence, SimplicialMorphism,
};

/// Default number of lattice nodes the monotone-light search may visit.
pub const ML_NODE_BUDGET: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorizationMode {
    Em,
    Ml,
}

#[derive(Clone, Debug)]
pub struct Factorization {
    pub mode: FactorizationMode,
    pub e: SimplicialMorphism,
    pub m: SimplicialMorphism,
}

/// Whether `Π₁(g)` is an isomorphism.
pub fn pi1_inverts(g: &SimplicialMorphism) -> Result<bool> {
    let rd = pi1(g.dom())?;
    let rc = pi1(g.cod())?;
    Ok(reflect_morphism(&rd, &rc, g)?.is_levelwise_bijective())
}

fn check_composite(
    e: &SimplicialMorphism,
    m: &SimplicialMorphism,
    f: &SimplicialMorphism,
) -> Result<()> {
    let c = e.then(m)?;
    if !c
        .components()
        .iter()
        .zip(f.components())
        .all(|(a, b)| a.same_map(b))
    {
        return Err(SimalError::PropertyViolation(
            "m after e differs from f".into(),
        ));
    }
    Ok(())
}

/// `f = m ∘ e` with `e = ⟨f, η_X⟩: X → Y ×_{Π₁Y} Π₁X` and `m` the first
/// projection. Asserts that `Π₁(e)` is invertible and `m` is trivial.
pub fn em_factorization(f: &SimplicialMorphism) -> Result<Factorization> {
    f.require_levelwise_surjective()?;
    let rx = pi1(f.dom())?;
    let ry = pi1(f.cod())?;
    let pf = reflect_morphism(&rx, &ry, f)?;
    let p = levelwise_pullback(&ry.eta, &pf)?;
    let e = p.pair(f, &rx.eta)?;
    let m = p.p1.clone();
    check_composite(&e, &m, f)?;
    if !pi1_inverts(&e)? {
        return Err(SimalError::PropertyViolation(
            "the reflection does not invert the E-part".into(),
        ));
    }
    if !is_trivial_extension(&m)? {
        return Err(SimalError::PropertyViolation(
            "the M-part is not a trivial extension".into(),
        ));
    }
    Ok(Factorization {
        mode: FactorizationMode::Em,
        e,
        m,
    })
}

/// The pullbacks of `e` used as evidence that it is stably inverted: along
/// the identity, along `e` itself, and `e × C` for a constant object `C`
/// on the base level of the codomain.
pub fn sample_pullbacks(e: &SimplicialMorphism) -> Result<Vec<SimplicialMorphism>> {
    let mut out = vec![e.clone()];
    let kp = kernel_pair_object(e)?;
    out.push(kp.p2.clone());
    let top = e.dom().truncation();
    let c: Sim = Arc::new(constant(e.cod().level(0), top)?);
    let dom = levelwise_product(e.dom(), &c)?;
    let cod = levelwise_product(e.cod(), &c)?;
    let times = cod.pair(&dom.p1.then(e)?, &dom.p2)?;
    out.push(times);
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct MlFactorization {
    pub factorization: Factorization,
    pub theta: SimplicialCongruence,
    /// Lattice nodes visited.
    pub explored: usize,
    /// Minimal congruences with a central induced map, before taking the
    /// meet (uniqueness means exactly one).
    pub minimal_successes: usize,
    pub samples_inverted: bool,
}

/// Key identifying a simplicial congruence up to equality.
fn key(t: &SimplicialCongruence) -> Vec<u32> {
    t.levels()
        .iter()
        .flat_map(|c| c.blocks().iter().copied())
        .collect()
}

/// Factors `f` as `X → X/θ → Y` for `θ ≤ Eq[f]`.
pub fn quotient_factorization(
    f: &SimplicialMorphism,
    theta: &SimplicialCongruence,
) -> Result<(SimplicialMorphism, SimplicialMorphism)> {
    let (q, proj) = quotient(f.dom(), theta)?;
    let comps = (0..=f.dom().truncation())
        .map(|n| {
            let classes = theta.level(n).classes();
            Homomorphism::new(
                q.level(n).clone(),
                f.cod().level(n).clone(),
                classes.iter().map(|c| f.component(n).map()[c[0]]).collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let m = SimplicialMorphism::new(q, f.cod().clone(), comps)?;
    Ok((proj, m))
}

/// Searches the simplicial congruences below `Eq[f]` for the least `θ`
/// making `X/θ → Y` central. Atoms are principal simplicial congruences of
/// top-level pairs identified by `f` (every simplicial congruence is
/// generated by its top level, since `d₀ s₀ = 1`). Breadth-first from `Δ`,
/// only failing nodes are expanded.
pub fn ml_factorization(f: &SimplicialMorphism, node_budget: usize) -> Result<MlFactorization> {
    f.require_levelwise_surjective()?;
    let x = f.dom();
    let top = x.truncation();
    let eqf = f.kernel(top);
    let mut atoms: Vec<SimplicialCongruence> = Vec::new();
    let mut seen_atoms = HashSet::new();
    for class in eqf.classes() {
        for &b in &class[1..] {
            let a = SimplicialCongruence::principal(x, top, class[0], b);
            if seen_atoms.insert(key(&a)) {
                atoms.push(a);
            }
        }
    }
    let start = SimplicialCongruence::discrete(x);
    let mut queue = VecDeque::from([start.clone()]);
    let mut visited = HashSet::from([key(&start)]);
    let mut successes: Vec<SimplicialCongruence> = Vec::new();
    let mut explored = 0usize;
    while let Some(t) = queue.pop_front() {
        explored += 1;
        if explored > node_budget {
            return Err(SimalError::BudgetExceeded(format!(
                "monotone-light search visited more than {node_budget} simplicial congruences"
            )));
        }
        if successes.iter().any(|s| s.le(&t)) {
            continue;
        }
        let (_, m) = quotient_factorization(f, &t)?;
        if is_central_extension(&m)? {
            successes.push(t);
            continue;
        }
        for a in &atoms {
            if a.le(&t) {
                continue;
            }
            let next = t.join(x, a)?;
            if visited.insert(key(&next)) {
                queue.push_back(next);
            }
        }
    }
    let minimal: Vec<&SimplicialCongruence> = successes
        .iter()
        .filter(|s| !successes.iter().any(|o| o.le(s) && !s.le(o)))
        .collect();
    let Some(first) = minimal.first() else {
        return Err(SimalError::NoCentralQuotient(
            "no simplicial congruence below Eq[f] is central".into(),
        ));
    };
    let mut theta = (*first).clone();
    for s in &minimal[1..] {
        theta = theta.meet(s)?;
    }
    let (e, m) = quotient_factorization(f, &theta)?;
    if !is_central_extension(&m)? {
        return Err(SimalError::PropertyViolation(
            "the meet of the minimal central quotients is not central".into(),
        ));
    }
    check_composite(&e, &m, f)?;
    let mut samples_inverted = true;
    for g in sample_pullbacks(&e)? {
        samples_inverted &= pi1_inverts(&g)?;
    }
    Ok(MlFactorization {
        minimal_successes: minimal.len(),
        factorization: Factorization {
            mode: FactorizationMode::Ml,
            e,
            m,
        },
        theta,
        explored,
        samples_inverted,
    })
}

/// Every simplicial congruence strictly below `theta` (within `Eq[f]`),
/// found by closing the atoms below `theta` under joins. For small objects
/// only; used to confirm minimality independently of the search order.
pub fn congruences_below(
    x: &Sim,
    theta: &SimplicialCongruence,
    node_budget: usize,
) -> Result<Vec<SimplicialCongruence>> {
    let top = x.truncation();
    let mut atoms = Vec::new();
    let mut seen = HashSet::new();
    for class in theta.level(top).classes() {
        for (ia, &a) in class.iter().enumerate() {
            for &b in &class[ia + 1..] {
                let at = SimplicialCongruence::principal(x, top, a, b);
                if seen.insert(key(&at)) {
                    atoms.push(at);
                }
            }
        }
    }
    let start = SimplicialCongruence::discrete(x);
    let mut all = vec![start.clone()];
    let mut visited = HashSet::from([key(&start)]);
    let mut i = 0;
    while i < all.len() {
        if all.len() > node_budget {
            return Err(SimalError::BudgetExceeded(
                "too many simplicial congruences".into(),
            ));
        }
        let t = all[i].clone();
        for a in &atoms {
            let next = t.join(x, a)?;
            if visited.insert(key(&next)) {
                all.push(next);
            }
        }
        i += 1;
    }
    all.retain(|t| t.le(theta) && key(t) != key(theta));
    Ok(all)
}

/// For `f` into an exact object: pulls the E-part `e` of the (E, M)
/// factorization back along the default samples and along every morphism
/// `extra(e)` into the codomain of `e`, and reports whether the reflection
/// inverts every pullback.
pub fn stabilizing_probe(
    f: &SimplicialMorphism,
    extra: &dyn Fn(&SimplicialMorphism) -> Result<Vec<SimplicialMorphism>>,
) -> Result<bool> {
    let y = f.cod();
    for n in 2..=y.truncation() {
        if !exactness_check(y, n)? {
            return Err(SimalError::PreconditionUnmet(format!(
                "`{}` is not exact at level {n}",
                y.name()
            )));
        }
    }
    let em = em_factorization(f)?;
    let mut all = true;
    for g in sample_pullbacks(&em.e)? {
        all &= pi1_inverts(&g)?;
    }
    for g in extra(&em.e)? {
        all &= pi1_inverts(&pullback_along(&em.e, &g)?)?;
    }
    Ok(all)
}

/// The kernel pairs of a factorization's parts, for reports.
pub fn part_kernels(fz: &Factorization) -> Vec<(Congruence, Congruence)> {
    (0..=fz.e.dom().truncation())
        .map(|n| (fz.e.kernel(n), fz.m.kernel(n)))
        .collect()
}

/// The pullback of `e` along `g` (a morphism into the codomain of `e`),
/// as a morphism into the domain of `g`.
pub fn pullback_along(
    e: &SimplicialMorphism,
    g: &SimplicialMorphism,
) -> Result<SimplicialMorphism> {
    Ok(levelwise_pullback(e, g)?.p2)
}
