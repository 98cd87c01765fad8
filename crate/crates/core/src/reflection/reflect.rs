//! The reflection `Π₁` of simplicial algebras into internal groupoids, the
//! relations `H_n` it divides out, and its universal property.

use std::sync::Arc;

use serde::Serialize;

use super::InternalGroupoid;
use crate::algebra::{all_homomorphisms, Congruence, Homomorphism};
use crate::error::{Result, SimalError};
use crate::simplicial::{nerve, Nerve, Sim, SimplicialMorphism, TruncatedSimplicialAlgebra};

fn need_two(x: &TruncatedSimplicialAlgebra) -> Result<()> {
    if x.truncation() < 2 {
        return Err(SimalError::InvalidParameters(format!(
            "`{}` has truncation {}, at least 2 is needed",
            x.name(),
            x.truncation()
        )));
    }
    Ok(())
}

/// The three images `d₁(D₀∧D₂)`, `d₀(D₁∧D₂)`, `d₂(D₀∧D₁)` on `X₁`.
pub fn h1_candidates(x: &TruncatedSimplicialAlgebra) -> Result<[Congruence; 3]> {
    need_two(x)?;
    Ok([
        x.face_meet(2, 0, 2).image(x.d(2, 1))?,
        x.face_meet(2, 1, 2).image(x.d(2, 0))?,
        x.face_meet(2, 0, 1).image(x.d(2, 2))?,
    ])
}

/// `H₁ = d₁(D₀∧D₂)`. With a third level available the two other candidate
/// images are required to agree with it.
pub fn h1(x: &TruncatedSimplicialAlgebra) -> Result<Congruence> {
    let [h, via_d0, via_d2] = h1_candidates(x)?;
    if x.truncation() >= 3 && (h != via_d0 || h != via_d2) {
        return Err(SimalError::TripleEqualityViolated(format!(
            "on `{}`: d1(D0^D2) has {} classes, d0(D1^D2) {}, d2(D0^D1) {}",
            x.name(),
            h.num_classes(),
            via_d0.num_classes(),
            via_d2.num_classes()
        )));
    }
    Ok(h)
}

/// `H_n`: the discrete relation at level 0, `H₁` at level 1, and the join of
/// all `D_i ∧ D_j` above.
pub fn hn(x: &TruncatedSimplicialAlgebra, n: usize) -> Result<Congruence> {
    match n {
        0 => Ok(Congruence::discrete(x.level(0))),
        1 => h1(x),
        _ if n <= x.truncation() => {
            let meets: Vec<Congruence> = (0..n)
                .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                .map(|(i, j)| x.face_meet(n, i, j))
                .collect();
            Congruence::join_all(x.level(n), &meets)
        }
        _ => Err(SimalError::InvalidParameters(format!(
            "level {n} above the truncation"
        ))),
    }
}

/// The edge from vertex `i-1` to vertex `i` of an `n`-simplex.
pub fn spine_edge(x: &TruncatedSimplicialAlgebra, n: usize, i: usize, mut a: usize) -> usize {
    for k in (i + 1..=n).rev() {
        a = x.d(k, k).apply(a);
    }
    for k in (2..=i).rev() {
        a = x.d(k, 0).apply(a);
    }
    a
}

#[derive(Clone, Debug)]
pub struct ReflectionResult {
    pub pi1: InternalGroupoid,
    /// The nerve of `pi1`, truncated like the input.
    pub nerve: Nerve,
    /// The unit `η: X → N(Π₁X)`.
    pub eta: SimplicialMorphism,
    /// `H_n` for `n = 0..=N`.
    pub h: Vec<Congruence>,
}

/// `Π₁(X)`: the graph `X₁/H₁ ⇉ X₀` with the composition read off the
/// 2-simplices, and the unit `η` into its nerve. Asserts that every `η_n`
/// is surjective with kernel pair `H_n`.
pub fn pi1(x: &Sim) -> Result<ReflectionResult> {
    need_two(x)?;
    let top = x.truncation();
    let h1 = h1(x)?;
    let (q1, eta1) = h1.quotient()?;
    let q1 = Arc::new(q1.with_name(format!("{}/H1", x.level(1).name())));
    let eta1 = eta1.retarget(x.level(1).clone(), q1.clone())?;
    let classes = h1.classes();
    let on_classes = |f: &Homomorphism, what: &str| -> Result<Homomorphism> {
        let map: Vec<u32> = classes.iter().map(|c| f.map()[c[0]]).collect();
        if classes
            .iter()
            .any(|c| c.iter().any(|&a| f.map()[a] != f.map()[c[0]]))
        {
            return Err(SimalError::CompositionIllDefined(format!(
                "{what} is not constant on H1 classes"
            )));
        }
        Ok(Homomorphism::trusted(q1.clone(), f.cod().clone(), map))
    };
    let d0 = on_classes(x.d(1, 0), "d0")?;
    let d1 = on_classes(x.d(1, 1), "d1")?;
    let s0 = x.s(0, 0).then(&eta1)?;
    let pairs = crate::algebra::pullback(&d0, &d1)?;
    let mut table = vec![u32::MAX; pairs.len()];
    for a in 0..x.level(2).size() {
        let f = eta1.apply(x.d(2, 2).apply(a)) as u32;
        let g = eta1.apply(x.d(2, 0).apply(a)) as u32;
        let c = eta1.apply(x.d(2, 1).apply(a)) as u32;
        let e = pairs.index_of(&[f, g]).expect("outer faces are composable");
        if table[e] != u32::MAX && table[e] != c {
            return Err(SimalError::CompositionIllDefined(format!(
                "classes ({f}, {g}) compose to both {} and {c}",
                table[e]
            )));
        }
        table[e] = c;
    }
    if table.contains(&u32::MAX) {
        return Err(SimalError::CompositionIllDefined(
            "some composable pair of classes has no 2-simplex".into(),
        ));
    }
    let g = InternalGroupoid::with_composition(format!("Pi1({})", x.name()), d0, d1, s0, table)
        .map_err(|e| SimalError::CompositionIllDefined(e.to_string()))?;
    let nv = nerve(&g, top)?;
    let mut comps = vec![Homomorphism::identity(x.level(0)), eta1.clone()];
    for n in 2..=top {
        let mut map = Vec::with_capacity(x.level(n).size());
        for a in 0..x.level(n).size() {
            let edges: Vec<u32> = (1..=n)
                .map(|i| eta1.apply(spine_edge(x, n, i, a)) as u32)
                .collect();
            map.push(nv.index_of(n, &edges).ok_or_else(|| {
                SimalError::CompositionIllDefined(format!(
                    "spine of {a} at level {n} is not composable"
                ))
            })? as u32);
        }
        comps.push(Homomorphism::trusted(
            x.level(n).clone(),
            nv.sim.level(n).clone(),
            map,
        ));
    }
    let eta = SimplicialMorphism::trusted(x.clone(), nv.sim.clone(), comps)
        .map_err(|e| SimalError::PropertyViolation(format!("unit is not simplicial: {e}")))?;
    let mut h = vec![Congruence::discrete(x.level(0)), h1];
    for n in 2..=top {
        h.push(hn(x, n)?);
    }
    for (n, hn) in h.iter().enumerate() {
        let c = eta.component(n);
        if !c.is_surjective() {
            return Err(SimalError::PropertyViolation(format!(
                "unit is not surjective at level {n}"
            )));
        }
        if Congruence::kernel_pair(c) != *hn {
            return Err(SimalError::PropertyViolation(format!(
                "kernel pair of the unit differs from H{n} on `{}`",
                x.name()
            )));
        }
    }
    Ok(ReflectionResult {
        pi1: g,
        nerve: nv,
        eta,
        h,
    })
}

/// Outcome of factoring a morphism into a groupoid nerve through the unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub factors: bool,
    /// `(level, a, b)` with `η_n a = η_n b` but `f_n a ≠ f_n b`.
    pub witness: Option<(usize, usize, usize)>,
}

/// Checks that `f: X → Y` into a groupoid nerve factors as `g ∘ η` by
/// building `g` on class representatives and verifying it is a simplicial
/// morphism with `g ∘ η = f`.
pub fn universal_property_check(f: &SimplicialMorphism) -> Result<Factorization> {
    let r = pi1(f.dom())?;
    universal_property_with(&r, f)
}

pub fn universal_property_with(
    r: &ReflectionResult,
    f: &SimplicialMorphism,
) -> Result<Factorization> {
    let cod_check = super::is_internal_groupoid(f.cod())?;
    if !cod_check.holds {
        return Err(SimalError::PreconditionUnmet(format!(
            "`{}` is not a groupoid",
            f.cod().name()
        )));
    }
    Ok(match factor_through_unit(r, f)? {
        Ok(_) => Factorization {
            factors: true,
            witness: None,
        },
        Err(w) => Factorization {
            factors: false,
            witness: Some(w),
        },
    })
}

/// The morphism `g` with `g ∘ η = f`, or a witness `(level, a, b)` that
/// `f` does not factor. No assumption is made on the codomain of `f`.
pub fn factor_through_unit(
    r: &ReflectionResult,
    f: &SimplicialMorphism,
) -> Result<std::result::Result<SimplicialMorphism, (usize, usize, usize)>> {
    let mut comps = Vec::new();
    for n in 0..=f.dom().truncation() {
        let eta = r.eta.component(n);
        let fn_ = f.component(n);
        let mut map = vec![u32::MAX; eta.cod().size()];
        let mut first = vec![usize::MAX; eta.cod().size()];
        for a in 0..eta.dom().size() {
            let c = eta.apply(a);
            let v = fn_.map()[a];
            if map[c] == u32::MAX {
                map[c] = v;
                first[c] = a;
            } else if map[c] != v {
                return Ok(Err((n, first[c], a)));
            }
        }
        comps.push(
            Homomorphism::new(eta.cod().clone(), fn_.cod().clone(), map).map_err(|e| {
                SimalError::PropertyViolation(format!("induced map at level {n}: {e}"))
            })?,
        );
    }
    let g = SimplicialMorphism::trusted(r.eta.cod().clone(), f.cod().clone(), comps)
        .map_err(|e| SimalError::PropertyViolation(format!("induced factorization: {e}")))?;
    let back = r.eta.then(&g)?;
    if !back
        .components()
        .iter()
        .zip(f.components())
        .all(|(a, b)| a.same_map(b))
    {
        return Err(SimalError::PropertyViolation(
            "g after eta differs from f".into(),
        ));
    }
    Ok(Ok(g))
}

/// `Π₁(f)` between the nerves of the reflections, characterised by
/// `Π₁(f) ∘ η_X = η_Y ∘ f`.
pub fn reflect_morphism(
    rx: &ReflectionResult,
    ry: &ReflectionResult,
    f: &SimplicialMorphism,
) -> Result<SimplicialMorphism> {
    let along = f.then(&ry.eta)?;
    factor_through_unit(rx, &along)?.map_err(|(n, a, b)| {
        SimalError::PropertyViolation(format!(
            "unit does not factor at level {n}: elements {a} and {b} are identified by eta but not by f"
        ))
    })
}

/// Every simplicial morphism `X → Y` into an object whose simplices above
/// level 1 are determined by their outer faces `d₀, d_n` (a groupoid
/// nerve). Levels 0 and 1 are enumerated, the rest is forced.
pub fn morphisms_into_groupoid(x: &Sim, y: &Sim, limit: usize) -> Result<Vec<SimplicialMorphism>> {
    if x.truncation() != y.truncation() {
        return Err(SimalError::MalformedSimplicial(
            "objects of different truncation".into(),
        ));
    }
    let f0s = all_homomorphisms(x.level(0), y.level(0), limit)?;
    let f1s = all_homomorphisms(x.level(1), y.level(1), limit)?;
    let mut out = Vec::new();
    let outer: Vec<std::collections::HashMap<(usize, usize), usize>> = (0..=y.truncation())
        .map(|n| {
            if n < 2 {
                return Default::default();
            }
            (0..y.level(n).size())
                .map(|b| ((y.d(n, 0).apply(b), y.d(n, n).apply(b)), b))
                .collect()
        })
        .collect();
    for f0 in &f0s {
        'f1: for f1 in &f1s {
            let mut comps = vec![f0.clone(), f1.clone()];
            for n in 2..=x.truncation() {
                let mut map = Vec::with_capacity(x.level(n).size());
                for a in 0..x.level(n).size() {
                    let key = (
                        comps[n - 1].apply(x.d(n, 0).apply(a)),
                        comps[n - 1].apply(x.d(n, n).apply(a)),
                    );
                    match outer[n].get(&key) {
                        Some(&b) => map.push(b as u32),
                        None => continue 'f1,
                    }
                }
                match Homomorphism::new(x.level(n).clone(), y.level(n).clone(), map) {
                    Ok(h) => comps.push(h),
                    Err(_) => continue 'f1,
                }
            }
            if let Ok(m) = SimplicialMorphism::trusted(x.clone(), y.clone(), comps) {
                out.push(m);
            }
        }
    }
    Ok(out)
}
