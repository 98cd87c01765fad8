//! Detecting internal groupoids among simplicial algebras, and comparing
//! groupoids up to isomorphism.

use std::collections::HashSet;

use serde::Serialize;

use super::InternalGroupoid;
use crate::algebra::{all_homomorphisms, pullback_size, Homomorphism};
use crate::error::{Result, SimalError};
use crate::simplicial::TruncatedSimplicialAlgebra;

/// The three intersection conditions at one level, evaluated independently,
/// and whether `⟨d₀, d_n⟩` is a bijection onto the pullback of
/// `d_{n-1}` and `d₀`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupoidLevel {
    pub n: usize,
    pub all_pairs_discrete: bool,
    pub outer_pair_discrete: bool,
    pub some_pair_discrete: bool,
    pub outer_comparison_bijective: bool,
}

impl GroupoidLevel {
    pub fn conditions_agree(&self) -> bool {
        self.all_pairs_discrete == self.outer_pair_discrete
            && self.outer_pair_discrete == self.some_pair_discrete
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupoidCheck {
    pub holds: bool,
    pub first_failing_level: Option<usize>,
    /// Two distinct elements of the first failing level with equal outer
    /// faces, when such a pair exists.
    pub witness: Option<(usize, usize)>,
    pub levels: Vec<GroupoidLevel>,
}

impl GroupoidCheck {
    pub fn conditions_agree(&self) -> bool {
        self.levels.iter().all(GroupoidLevel::conditions_agree)
    }
}

pub fn is_internal_groupoid(x: &TruncatedSimplicialAlgebra) -> Result<GroupoidCheck> {
    if x.truncation() < 2 {
        return Err(SimalError::InvalidParameters(
            "groupoid check needs truncation at least 2".into(),
        ));
    }
    let mut levels = Vec::new();
    let mut first = None;
    let mut witness = None;
    for n in 2..=x.truncation() {
        let discrete: Vec<bool> = (0..n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .map(|(i, j)| x.face_meet(n, i, j).is_discrete())
            .collect();
        let outer = x.face_meet(n, 0, n).is_discrete();
        let mut seen = HashSet::with_capacity(x.level(n).size());
        let mut collision = None;
        for a in 0..x.level(n).size() {
            let key = (x.d(n, 0).apply(a), x.d(n, n).apply(a));
            if !seen.insert(key) && collision.is_none() {
                let b = (0..a)
                    .find(|&b| (x.d(n, 0).apply(b), x.d(n, n).apply(b)) == key)
                    .expect("an earlier element has the same faces");
                collision = Some((b, a));
            }
        }
        let bijective =
            collision.is_none() && seen.len() == pullback_size(x.d(n - 1, n - 1), x.d(n - 1, 0));
        let lvl = GroupoidLevel {
            n,
            all_pairs_discrete: discrete.iter().all(|&b| b),
            outer_pair_discrete: outer,
            some_pair_discrete: discrete.iter().any(|&b| b),
            outer_comparison_bijective: bijective,
        };
        if first.is_none() && !(lvl.outer_pair_discrete && lvl.outer_comparison_bijective) {
            first = Some(n);
            witness = collision;
        }
        levels.push(lvl);
    }
    Ok(GroupoidCheck {
        holds: first.is_none(),
        first_failing_level: first,
        witness,
        levels,
    })
}

/// An isomorphism of groupoids `(f₀, f₁)` commuting with all structure, or
/// `None`. Candidate object maps come from a homomorphism search, so this is
/// meant for desk-scale groupoids.
pub fn groupoid_isomorphism(
    a: &InternalGroupoid,
    b: &InternalGroupoid,
) -> Result<Option<(Homomorphism, Homomorphism)>> {
    if a.x0().size() != b.x0().size() || a.x1().size() != b.x1().size() {
        return Ok(None);
    }
    let objects = all_homomorphisms(a.x0(), b.x0(), 1 << 16)?;
    let arrows = all_homomorphisms(a.x1(), b.x1(), 1 << 16)?;
    for f0 in objects.iter().filter(|h| h.is_bijective()) {
        for f1 in arrows.iter().filter(|h| h.is_bijective()) {
            if preserves_structure(a, b, f0, f1) {
                return Ok(Some((f0.clone(), f1.clone())));
            }
        }
    }
    Ok(None)
}

/// Whether `(f₀, f₁)` commutes with source, target, identities and
/// composition.
pub fn preserves_structure(
    a: &InternalGroupoid,
    b: &InternalGroupoid,
    f0: &Homomorphism,
    f1: &Homomorphism,
) -> bool {
    let n1 = a.x1().size();
    let graph = (0..n1).all(|f| {
        b.d0().apply(f1.apply(f)) == f0.apply(a.d0().apply(f))
            && b.d1().apply(f1.apply(f)) == f0.apply(a.d1().apply(f))
    }) && (0..a.x0().size())
        .all(|o| b.s0().apply(f0.apply(o)) == f1.apply(a.s0().apply(o)));
    graph
        && (0..a.composable_pairs().len()).all(|e| {
            let t = a.composable_pairs().tuple(e);
            let lhs = f1.apply(a.composition().apply(e));
            b.compose(f1.apply(t[0] as usize), f1.apply(t[1] as usize))
                .ok()
                == Some(lhs)
        })
}
