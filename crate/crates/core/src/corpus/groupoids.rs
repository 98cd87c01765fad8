//! Reflexive graphs and internal groupoids: congruences seen as groupoids,
//! one-object groupoids of groups, and crossed-module groupoids.

use std::sync::Arc;

use crate::algebra::{pullback, Alg, Congruence, FiniteAlgebra, Homomorphism};
use crate::error::{Result, SimalError};
use crate::reflection::InternalGroupoid;
use crate::simplicial::{Sim, TruncatedSimplicialAlgebra};

/// A reflexive graph `d₀, d₁: X₁ ⇉ X₀` with common section `s₀`, as a
/// 1-truncated simplicial algebra.
pub fn reflexive_graph(
    name: impl Into<String>,
    d0: Homomorphism,
    d1: Homomorphism,
    s0: Homomorphism,
) -> Result<Sim> {
    let levels = vec![d0.cod().clone(), d0.dom().clone()];
    Ok(Arc::new(TruncatedSimplicialAlgebra::new(
        name,
        levels,
        vec![vec![d0, d1]],
        vec![vec![s0]],
    )?))
}

/// The groupoid of a congruence: arrows are related pairs `(a, b)` from `a`
/// to `b`.
pub fn congruence_groupoid(theta: &Congruence) -> Result<InternalGroupoid> {
    let a = theta.on().clone();
    let (_, q) = theta.quotient()?;
    let pairs = pullback(&q, &q)?;
    let x1 = pairs.alg().clone();
    let d1 = pairs.projection(0).clone();
    let d0 = pairs.projection(1).clone();
    let s0 = Homomorphism::from_fn(a.clone(), x1, |v| {
        pairs
            .index_of(&[v as u32, v as u32])
            .expect("diagonal pairs are related")
    })?;
    InternalGroupoid::from_graph(format!("Eq({})", a.name()), d0, d1, s0)
}

pub fn pair_groupoid(a: &Alg) -> Result<InternalGroupoid> {
    congruence_groupoid(&Congruence::total(a))
}

pub fn discrete_groupoid(a: &Alg) -> Result<InternalGroupoid> {
    congruence_groupoid(&Congruence::discrete(a))
}

/// The one-object groupoid of an algebra with a distinguished idempotent
/// element `unit` (a one-element subalgebra), for instance a group and its
/// identity. Composition is `p(f, unit, g)`.
pub fn one_object_groupoid(g: &Alg, unit: usize) -> Result<InternalGroupoid> {
    if g.generated(&[unit]).len() != 1 {
        return Err(SimalError::InvalidParameters(format!(
            "element {unit} of `{}` is not a one-element subalgebra",
            g.name()
        )));
    }
    let point: Alg = Arc::new(FiniteAlgebra::from_fn(
        "1",
        g.signature().clone(),
        1,
        g.maltsev_term().clone(),
        |_, _| Ok(0),
    )?);
    let bang = Homomorphism::from_fn(g.clone(), point.clone(), |_| 0)?;
    let s0 = Homomorphism::from_fn(point, g.clone(), |_| unit)?;
    InternalGroupoid::from_graph(format!("B({})", g.name()), bang.clone(), bang, s0)
}

/// The groupoid of a crossed module presented by a semidirect product:
/// `X₁ = T ⋊ G`, `d₀(t, g) = g`, `d₁(t, g) = ∂(t)·g`, `s₀(g) = (1, g)`.
/// `x1` must already carry the semidirect product structure on pairs
/// encoded as `t + |T|·g`; the structure maps are checked here.
pub fn crossed_module_groupoid(
    x1: &Alg,
    g: &Alg,
    t_size: usize,
    t_unit: usize,
    boundary: &[usize],
) -> Result<InternalGroupoid> {
    let gs = g.size();
    if x1.size() != t_size * gs || boundary.len() != t_size {
        return Err(SimalError::InvalidParameters(
            "semidirect product carrier does not match |T|·|G|".into(),
        ));
    }
    let mul = g.signature().index_of("mul").ok_or_else(|| {
        SimalError::InvalidParameters("crossed modules need a group signature".into())
    })?;
    let d0 = Homomorphism::new(
        x1.clone(),
        g.clone(),
        (0..x1.size()).map(|e| (e / t_size) as u32).collect(),
    )
    .map_err(|e| SimalError::InvalidParameters(format!("d0: {e}")))?;
    let d1 = Homomorphism::new(
        x1.clone(),
        g.clone(),
        (0..x1.size())
            .map(|e| g.apply(mul, &[boundary[e % t_size], e / t_size]) as u32)
            .collect(),
    )
    .map_err(|e| SimalError::InvalidParameters(format!("d1 (boundary is not equivariant): {e}")))?;
    let s0 = Homomorphism::new(
        g.clone(),
        x1.clone(),
        (0..gs).map(|a| (t_unit + t_size * a) as u32).collect(),
    )
    .map_err(|e| SimalError::InvalidParameters(format!("s0: {e}")))?;
    InternalGroupoid::from_graph(format!("XMod({})", x1.name()), d0, d1, s0)
        .map_err(|e| SimalError::InvalidParameters(format!("crossed module data: {e}")))
}
