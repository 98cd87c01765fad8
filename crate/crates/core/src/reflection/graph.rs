//! Reflexive graphs: their groupoid reflection by the commutator
//! `[D₀, D₁]`, and the chain comparing it with `H₁`.

use std::sync::Arc;

use super::{h1, InternalGroupoid};
use crate::algebra::{all_homomorphisms, tc_commutator, Congruence, Homomorphism};
use crate::error::{Result, SimalError};
use crate::simplicial::TruncatedSimplicialAlgebra;

#[derive(Clone, Debug)]
pub struct GraphReflection {
    pub commutator: Congruence,
    pub groupoid: InternalGroupoid,
    /// `X₁ → X₁/[D₀, D₁]`.
    pub unit: Homomorphism,
}

/// Quotients `X₁` by `[D₀, D₁]` and equips the result with the groupoid
/// structure induced by the Mal'tsev term.
pub fn graph_reflection(graph: &TruncatedSimplicialAlgebra) -> Result<GraphReflection> {
    let d0k = graph.face_kernel(1, 0);
    let d1k = graph.face_kernel(1, 1);
    let comm = tc_commutator(&d0k, &d1k)?;
    let (q, unit) = comm.quotient()?;
    let q = Arc::new(q.with_name(format!("{}/[D0,D1]", graph.level(1).name())));
    let unit = unit.retarget(graph.level(1).clone(), q.clone())?;
    let classes = comm.classes();
    let induced = |f: &Homomorphism| -> Result<Homomorphism> {
        if classes
            .iter()
            .any(|c| c.iter().any(|&a| f.apply(a) != f.apply(c[0])))
        {
            return Err(SimalError::PropertyViolation(
                "commutator is not below D0 ∧ D1".into(),
            ));
        }
        Homomorphism::new(
            q.clone(),
            f.cod().clone(),
            classes.iter().map(|c| f.map()[c[0]]).collect(),
        )
    };
    let d0 = induced(graph.d(1, 0))?;
    let d1 = induced(graph.d(1, 1))?;
    let s0 = graph.s(0, 0).then(&unit)?;
    let groupoid = InternalGroupoid::from_graph(format!("Grpd({})", graph.name()), d0, d1, s0)
        .map_err(|e| {
            SimalError::PropertyViolation(format!("reflection of `{}`: {e}", graph.name()))
        })?;
    Ok(GraphReflection {
        commutator: comm,
        groupoid,
        unit,
    })
}

/// Checks that every graph morphism `(f₀, f₁)` from `graph` into the
/// underlying graph of `target` factors through the reflection by a
/// groupoid morphism. Returns the number of morphisms checked.
pub fn graph_reflection_universal_check(
    graph: &TruncatedSimplicialAlgebra,
    r: &GraphReflection,
    target: &InternalGroupoid,
    limit: usize,
) -> Result<usize> {
    let f0s = all_homomorphisms(graph.level(0), target.x0(), limit)?;
    let f1s = all_homomorphisms(graph.level(1), target.x1(), limit)?;
    let mut count = 0;
    for f0 in &f0s {
        for f1 in &f1s {
            let x1 = graph.level(1);
            let is_graph_map = (0..x1.size()).all(|a| {
                target.d0().apply(f1.apply(a)) == f0.apply(graph.d(1, 0).apply(a))
                    && target.d1().apply(f1.apply(a)) == f0.apply(graph.d(1, 1).apply(a))
            }) && (0..graph.level(0).size())
                .all(|o| target.s0().apply(f0.apply(o)) == f1.apply(graph.s(0, 0).apply(o)));
            if !is_graph_map {
                continue;
            }
            count += 1;
            if !r.commutator.le(&Congruence::kernel_pair(f1)) {
                return Err(SimalError::PropertyViolation(format!(
                    "graph morphism into `{}` does not factor through the reflection",
                    target.name()
                )));
            }
            let classes = r.commutator.classes();
            let g1 = Homomorphism::new(
                r.groupoid.x1().clone(),
                target.x1().clone(),
                classes.iter().map(|c| f1.map()[c[0]]).collect(),
            )?;
            if !super::preserves_structure(&r.groupoid, target, f0, &g1) {
                return Err(SimalError::PropertyViolation(format!(
                    "induced map into `{}` is not a groupoid morphism",
                    target.name()
                )));
            }
        }
    }
    Ok(count)
}

#[derive(Clone, Debug)]
pub struct CommutatorChain {
    pub commutator: Congruence,
    pub h1: Congruence,
    pub d0_meet_d1: Congruence,
    pub holds: bool,
}

/// `[D₀, D₁] ≤ H₁ ≤ D₀ ∧ D₁` on `X₁`.
pub fn commutator_chain_check(x: &TruncatedSimplicialAlgebra) -> Result<CommutatorChain> {
    let commutator = tc_commutator(&x.face_kernel(1, 0), &x.face_kernel(1, 1))?;
    let h1 = h1(x)?;
    let d0_meet_d1 = x.face_meet(1, 0, 1);
    let holds = commutator.le(&h1) && h1.le(&d0_meet_d1);
    Ok(CommutatorChain {
        commutator,
        h1,
        d0_meet_d1,
        holds,
    })
}
