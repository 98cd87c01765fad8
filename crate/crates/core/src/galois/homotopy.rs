//! Homotopy relations on 1-simplices read off pullbacks, compared with the
//! lattice formulas for `H₁` and its relative versions.

use std::collections::BTreeSet;

use crate::algebra::{Alg, Congruence};
use crate::error::{Result, SimalError};
use crate::reflection::h1;
use crate::simplicial::{exactness_check, SimplicialMorphism, TruncatedSimplicialAlgebra};

/// Turns a set of pairs into a congruence, requiring it to be one already
/// (reflexive, symmetric, transitive and compatible).
fn exact_relation(on: &Alg, pairs: &BTreeSet<(usize, usize)>, what: &str) -> Result<Congruence> {
    let c = Congruence::discrete(on).with_pairs(pairs.iter().copied());
    if c.num_pairs() != pairs.len() {
        return Err(SimalError::NotTransitive(format!(
            "{what}: {} pairs, but the congruence they generate has {}",
            pairs.len(),
            c.num_pairs()
        )));
    }
    Ok(c)
}

/// The image of `(d₀, d₁)` on 2-simplices whose last face is degenerate:
/// `f ~ g` when some `α` has `d₀α = f`, `d₁α = g`, `d₂α = s₀d₁f`.
/// Fails with `HomotopyMismatch` unless it equals `H₁`.
pub fn homotopy_relation(x: &TruncatedSimplicialAlgebra) -> Result<Congruence> {
    let rel = homotopy_pairs(x)?;
    let h = h1(x)?;
    if rel != h {
        return Err(SimalError::HomotopyMismatch(format!(
            "on `{}`: homotopy has {} classes, H1 has {}",
            x.name(),
            rel.num_classes(),
            h.num_classes()
        )));
    }
    Ok(rel)
}

fn homotopy_pairs(x: &TruncatedSimplicialAlgebra) -> Result<Congruence> {
    if x.truncation() < 2 {
        return Err(SimalError::InvalidParameters(
            "homotopy needs truncation at least 2".into(),
        ));
    }
    let mut pairs = BTreeSet::new();
    for a in 0..x.level(2).size() {
        let e = x.d(2, 2).apply(a);
        if x.s(0, 0).apply(x.d(1, 1).apply(e)) == e {
            let (f, g) = (x.d(2, 0).apply(a), x.d(2, 1).apply(a));
            pairs.insert((f, g));
            pairs.insert((g, f));
        }
    }
    exact_relation(x.level(1), &pairs, "homotopy relation")
}

/// Both relative homotopy relations of an extension, each next to the
/// lattice expression it should equal.
#[derive(Clone, Debug)]
pub struct RelativeHomotopy {
    /// On `X₀`: `(d₀x, d₁x)` for `x ∈ X₁` with `f₁x` degenerate.
    pub degenerate_image: Congruence,
    /// `d₀(D₁ ∧ F₁)` on `X₀`.
    pub degenerate_formula: Congruence,
    /// On `X₁`: `(d₀x, d₁x)` for `x ∈ X₂` with `d₂x` and `f₂x` degenerate.
    pub limit_image: Congruence,
    /// `d₁(F₂ ∧ D₀ ∧ D₂)` on `X₁`.
    pub limit_formula: Congruence,
    /// `d₀(D₁ ∧ D₂ ∧ F₂)` on `X₁`.
    pub limit_formula_via_d0: Congruence,
}

impl RelativeHomotopy {
    pub fn matches(&self) -> bool {
        self.degenerate_image == self.degenerate_formula && self.limit_image == self.limit_formula
    }
}

pub fn relative_homotopy_relation(f: &SimplicialMorphism) -> Result<RelativeHomotopy> {
    f.require_levelwise_surjective()?;
    let x = f.dom();
    let y = f.cod();
    if x.truncation() < 2 {
        return Err(SimalError::InvalidParameters(
            "relative homotopy needs truncation at least 2".into(),
        ));
    }
    // level 1: f₁x = s₀y means f₁x = s₀d₁f₁x
    let mut low = BTreeSet::new();
    for a in 0..x.level(1).size() {
        let b = f.component(1).apply(a);
        if y.s(0, 0).apply(y.d(1, 1).apply(b)) == b {
            let (u, v) = (x.d(1, 0).apply(a), x.d(1, 1).apply(a));
            low.insert((u, v));
            low.insert((v, u));
        }
    }
    let degenerate_image = exact_relation(x.level(0), &low, "degenerate-arrow image")?;
    let degenerate_formula = x.face_kernel(1, 1).meet(&f.kernel(1))?.image(x.d(1, 0))?;
    // level 2: d₂x = s₀a and f₂x = s₀y; s₀y has d₀ = y = d₁
    let mut high = BTreeSet::new();
    for a in 0..x.level(2).size() {
        let e = x.d(2, 2).apply(a);
        let b = f.component(2).apply(a);
        if x.s(0, 0).apply(x.d(1, 1).apply(e)) == e && y.s(1, 0).apply(y.d(2, 0).apply(b)) == b {
            let (u, v) = (x.d(2, 0).apply(a), x.d(2, 1).apply(a));
            high.insert((u, v));
            high.insert((v, u));
        }
    }
    let limit_image = exact_relation(x.level(1), &high, "limit image")?;
    let f2 = f.kernel(2);
    let limit_formula = f2.meet(&x.face_meet(2, 0, 2))?.image(x.d(2, 1))?;
    let limit_formula_via_d0 = f2.meet(&x.face_meet(2, 1, 2))?.image(x.d(2, 0))?;
    let r = RelativeHomotopy {
        degenerate_image,
        degenerate_formula,
        limit_image,
        limit_formula,
        limit_formula_via_d0,
    };
    if !r.matches() {
        return Err(SimalError::HomotopyMismatch(format!(
            "relative homotopy of `{}` differs from its lattice formula",
            x.name()
        )));
    }
    Ok(r)
}

/// `d₀(D₁∧D₂) ∧ F₁ = d₀(D₁∧D₂∧F₂)` on `X₁`, for `f` into an object exact
/// at level 3.
pub fn exactness_lemma_check(f: &SimplicialMorphism) -> Result<bool> {
    f.require_levelwise_surjective()?;
    let x = f.dom();
    let y = f.cod();
    if x.truncation() < 3 {
        return Err(SimalError::PreconditionUnmet("truncation below 3".into()));
    }
    if !exactness_check(y, 3)? {
        return Err(SimalError::PreconditionUnmet(format!(
            "`{}` is not exact at level 3",
            y.name()
        )));
    }
    let d12 = x.face_meet(2, 1, 2);
    let lhs = d12.image(x.d(2, 0))?.meet(&f.kernel(1))?;
    let rhs = d12.meet(&f.kernel(2))?.image(x.d(2, 0))?;
    Ok(lhs == rhs)
}
