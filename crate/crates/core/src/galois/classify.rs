//! Trivial, central and normal extensions of simplicial algebras.

use serde::Serialize;

use crate::algebra::Congruence;
use crate::error::{Result, SimalError};
use crate::reflection::{hn, pi1, reflect_morphism, ReflectionResult};
use crate::simplicial::{
    kan_fibration_check, kernel_pair_object, SimplicialMorphism, TruncatedSimplicialAlgebra,
};

/// A condition that failed, with the level and a pair of distinct elements
/// identified by the relation that should have been discrete.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub condition: String,
    pub level: usize,
    pub pair: (usize, usize),
}

/// The `n = 2` comparison between `F₂∧D_i∧D_j = Δ` and bijectivity of
/// `θ²_k`, where `{i, j, k} = {0, 1, 2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HornSquare {
    pub k: usize,
    pub meet_discrete: bool,
    pub theta_bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub morphism: String,
    pub levelwise_surjective: bool,
    pub trivial: bool,
    /// `F_n ∧ H_n = Δ` level by level computed from the join formula.
    pub trivial_by_lattice: bool,
    /// The comparison `X → Y ×_{Π₁Y} Π₁X` is bijective.
    pub trivial_by_comparison: bool,
    pub central: bool,
    /// `F_n ∧ D_i ∧ D_j = Δ` for `2 <= n <= N` and `d₁(F₂ ∧ D₀ ∧ D₂) = Δ`.
    pub central_by_conditions: bool,
    /// The first projection of the kernel-pair object is trivial.
    pub central_by_definition: bool,
    /// Pulled back along itself, `f` becomes trivial. This is the same
    /// kernel-pair projection as the definitional route for centrality.
    pub normal: bool,
    /// For central `f`: every `θ^n_k` is bijective.
    pub exact_fibration: Option<bool>,
    pub horn_squares: Vec<HornSquare>,
    pub witnesses: Vec<Witness>,
}

fn witness_of(c: &Congruence, condition: String, level: usize) -> Option<Witness> {
    c.blocks()
        .iter()
        .enumerate()
        .find(|&(a, &b)| b as usize != a)
        .map(|(a, &b)| Witness {
            condition,
            level,
            pair: (b as usize, a),
        })
}

/// `F ∧ D_i ∧ D_j` on `X_n`.
fn fdd(f: &SimplicialMorphism, n: usize, i: usize, j: usize) -> Result<Congruence> {
    f.kernel(n).meet(&f.dom().face_meet(n, i, j))
}

/// Lattice route to triviality: `F_n ∧ H_n = Δ` for every level.
pub fn trivial_by_lattice(f: &SimplicialMorphism, witnesses: &mut Vec<Witness>) -> Result<bool> {
    let x = f.dom();
    let mut ok = true;
    for n in 0..=x.truncation() {
        let m = f.kernel(n).meet(&hn(x, n)?)?;
        if let Some(w) = witness_of(&m, format!("F{n} ^ H{n}"), n) {
            witnesses.push(w);
            ok = false;
        }
    }
    Ok(ok)
}

/// Comparison route to triviality: `⟨f, η_X⟩` into `Y ×_{Π₁Y} Π₁X` is a
/// levelwise bijection. Counted without building the pullback: injectivity
/// of `⟨f_n, η_n⟩` plus `|X_n|` equal to the pullback size.
pub fn trivial_by_comparison(
    f: &SimplicialMorphism,
    rx: &ReflectionResult,
    ry: &ReflectionResult,
) -> Result<bool> {
    let pf = reflect_morphism(rx, ry, f)?;
    for n in 0..=f.dom().truncation() {
        let joint = f
            .kernel(n)
            .meet(&Congruence::kernel_pair(rx.eta.component(n)))?;
        let size = crate::algebra::pullback_size(ry.eta.component(n), pf.component(n));
        if !joint.is_discrete() || size != f.dom().level(n).size() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn trivial_both(f: &SimplicialMorphism) -> Result<bool> {
    let mut w = Vec::new();
    let a = trivial_by_lattice(f, &mut w)?;
    let b = trivial_by_comparison(f, &pi1(f.dom())?, &pi1(f.cod())?)?;
    if a != b {
        return Err(SimalError::PropertyViolation(format!(
            "triviality of `{}`: lattice route {a}, comparison route {b}",
            f.dom().name()
        )));
    }
    Ok(a)
}

/// The central-extension conditions on the intersections of kernel pairs.
pub fn central_by_conditions(f: &SimplicialMorphism, witnesses: &mut Vec<Witness>) -> Result<bool> {
    let x: &TruncatedSimplicialAlgebra = f.dom();
    let mut ok = true;
    for n in 2..=x.truncation() {
        for i in 0..n {
            for j in i + 1..=n {
                if let Some(w) = witness_of(&fdd(f, n, i, j)?, format!("F{n} ^ D{i} ^ D{j}"), n) {
                    witnesses.push(w);
                    ok = false;
                }
            }
        }
    }
    let low = fdd(f, 2, 0, 2)?.image(x.d(2, 1))?;
    if let Some(w) = witness_of(&low, "d1(F2 ^ D0 ^ D2)".into(), 1) {
        witnesses.push(w);
        ok = false;
    }
    Ok(ok)
}

/// The kernel-pair projection `X ×_Y X → X` is a trivial extension.
pub fn kernel_pair_projection_trivial(f: &SimplicialMorphism) -> Result<bool> {
    let kp = kernel_pair_object(f)?;
    trivial_both(&kp.p1)
}

pub fn classify_extension(f: &SimplicialMorphism) -> Result<ExtensionReport> {
    f.require_levelwise_surjective()?;
    if f.dom().truncation() < 2 {
        return Err(SimalError::InvalidParameters(
            "classification needs truncation at least 2".into(),
        ));
    }
    let mut witnesses = Vec::new();
    let rx = pi1(f.dom())?;
    let ry = pi1(f.cod())?;
    let t_lattice = trivial_by_lattice(f, &mut witnesses)?;
    let t_comparison = trivial_by_comparison(f, &rx, &ry)?;
    let c_conditions = central_by_conditions(f, &mut witnesses)?;
    let c_definition = kernel_pair_projection_trivial(f)?;
    let normal = c_definition;
    if t_lattice != t_comparison {
        return Err(SimalError::PropertyViolation(format!(
            "triviality routes disagree: lattice {t_lattice}, comparison {t_comparison}"
        )));
    }
    if c_conditions != c_definition {
        return Err(SimalError::PropertyViolation(format!(
            "centrality routes disagree: conditions {c_conditions}, definition {c_definition}"
        )));
    }
    if (t_lattice && !c_conditions) || (c_conditions && !normal) {
        return Err(SimalError::PropertyViolation(
            "trivial => central => normal fails".into(),
        ));
    }
    let kan = kan_fibration_check(f)?;
    let exact_fibration = c_conditions.then(|| kan.entries.iter().all(|e| e.bijective));
    let mut horn_squares = Vec::new();
    for k in 0..=2 {
        let (i, j) = match k {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let entry = kan
            .entries
            .iter()
            .find(|e| e.n == 2 && e.k == k)
            .expect("level 2 is checked");
        horn_squares.push(HornSquare {
            k,
            meet_discrete: fdd(f, 2, i, j)?.is_discrete(),
            theta_bijective: entry.bijective,
        });
    }
    Ok(ExtensionReport {
        morphism: format!("{} -> {}", f.dom().name(), f.cod().name()),
        levelwise_surjective: true,
        trivial: t_lattice,
        trivial_by_lattice: t_lattice,
        trivial_by_comparison: t_comparison,
        central: c_conditions,
        central_by_conditions: c_conditions,
        central_by_definition: c_definition,
        normal,
        exact_fibration,
        horn_squares,
        witnesses,
    })
}

/// Triviality alone, with both routes required to agree.
pub fn is_trivial_extension(f: &SimplicialMorphism) -> Result<bool> {
    f.require_levelwise_surjective()?;
    trivial_both(f)
}

/// Centrality by the intersection conditions.
pub fn is_central_extension(f: &SimplicialMorphism) -> Result<bool> {
    f.require_levelwise_surjective()?;
    central_by_conditions(f, &mut Vec::new())
}
