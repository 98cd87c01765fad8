//! Constructions of simplicial algebras: constant objects, décalage,
//! coskeleta, nerves, the 1-skeleton in module varieties, and levelwise
//! limits, quotients and subobjects.

use std::sync::Arc;

use super::congruence::{induced_on_classes, SimplicialCongruence};
use super::kernel::kernel_limit;
use super::{Sim, SimplicialMorphism, TruncatedSimplicialAlgebra};
use crate::algebra::{
    finite_limit, product, pullback, subalgebra, Alg, Congruence, FiniteDiagram, Homomorphism,
    Limit,
};
use crate::error::{Result, SimalError};
use crate::reflection::InternalGroupoid;

/// The constant simplicial object at `a`: every level is `a`, every
/// structure map the identity.
pub fn constant(a: &Alg, truncation: usize) -> Result<TruncatedSimplicialAlgebra> {
    let id = Homomorphism::identity(a);
    let levels = vec![a.clone(); truncation + 1];
    let faces = (1..=truncation).map(|n| vec![id.clone(); n + 1]).collect();
    let degs = (0..truncation).map(|n| vec![id.clone(); n + 1]).collect();
    TruncatedSimplicialAlgebra::trusted(format!("const({})", a.name()), levels, faces, degs)
}

/// `Dec(X)` (levels shifted down by one, last face and degeneracy dropped)
/// with the counit `ε_n = d_{n+1}: X_{n+1} → X_n` into the truncation of
/// `X` one level down.
pub fn decalage(x: &Sim) -> Result<(Sim, SimplicialMorphism)> {
    let top = x.truncation();
    if top < 2 {
        return Err(SimalError::InvalidParameters(
            "décalage needs truncation at least 2".into(),
        ));
    }
    let levels: Vec<Alg> = (1..=top).map(|n| x.level(n).clone()).collect();
    let faces = (1..top)
        .map(|n| (0..=n).map(|i| x.d(n + 1, i).clone()).collect())
        .collect();
    let degs = (0..top - 1)
        .map(|n| (0..=n).map(|i| x.s(n + 1, i).clone()).collect())
        .collect();
    let dec = Arc::new(TruncatedSimplicialAlgebra::trusted(
        format!("Dec({})", x.name()),
        levels,
        faces,
        degs,
    )?);
    let below = Arc::new(x.truncate(top - 1)?);
    let eps = (0..top).map(|n| x.d(n + 1, n + 1).clone()).collect();
    let eps = SimplicialMorphism::trusted(dec.clone(), below, eps)?;
    Ok((dec, eps))
}

/// Extends `x` to truncation `to` by iterated simplicial kernels, with the
/// projections as faces and the degeneracies forced by the simplicial
/// identities.
pub fn coskeleton(x: &TruncatedSimplicialAlgebra, to: usize) -> Result<TruncatedSimplicialAlgebra> {
    let top = x.truncation();
    if to < top {
        return Err(SimalError::InvalidParameters(format!(
            "coskeleton target {to} below truncation {top}"
        )));
    }
    let mut cur = x.clone();
    for n in top + 1..=to {
        let (k, _) = kernel_limit(&cur, n, None)?;
        let mut levels = cur.levels().to_vec();
        let mut faces = cur.faces().to_vec();
        let mut degs = cur.degeneracies().to_vec();
        levels.push(k.alg().clone());
        faces.push(k.projections().to_vec());
        let below = cur.level(n - 1);
        let mut new_degs = Vec::with_capacity(n);
        for i in 0..n {
            let mut map = Vec::with_capacity(below.size());
            let mut t = vec![0u32; n + 1];
            for a in 0..below.size() {
                for (j, slot) in t.iter_mut().enumerate() {
                    *slot = if j < i {
                        cur.s(n - 2, i - 1).apply(cur.d(n - 1, j).apply(a))
                    } else if j == i || j == i + 1 {
                        a
                    } else {
                        cur.s(n - 2, i).apply(cur.d(n - 1, j - 1).apply(a))
                    } as u32;
                }
                let idx = k.index_of(&t).ok_or_else(|| {
                    SimalError::PropertyViolation(format!(
                        "degeneracy s{i} into level {n} of the coskeleton is undefined"
                    ))
                })?;
                map.push(idx as u32);
            }
            new_degs.push(Homomorphism::trusted(below.clone(), k.alg().clone(), map));
        }
        degs.push(new_degs);
        cur = TruncatedSimplicialAlgebra::trusted(
            format!("Cosk({})", x.name()),
            levels,
            faces,
            degs,
        )?;
    }
    Ok(cur.with_name(format!("Cosk{to}({})", x.name())))
}

/// The nerve of an internal groupoid together with the tuple presentation
/// of its levels: level `n >= 2` consists of composable strings
/// `(f_1, .., f_n)` with `d_0 f_i = d_1 f_{i+1}`.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub sim: Sim,
    tuples: Vec<Option<Limit>>,
}

impl Nerve {
    /// The arrows of an `n`-simplex, `n >= 1`.
    pub fn edges(&self, n: usize, x: usize) -> Vec<u32> {
        match &self.tuples[n] {
            Some(l) => l.tuple(x).to_vec(),
            None => vec![x as u32],
        }
    }

    /// The `n`-simplex with the given arrows, if they are composable.
    pub fn index_of(&self, n: usize, edges: &[u32]) -> Option<usize> {
        match &self.tuples[n] {
            Some(l) => l.index_of(edges),
            None => Some(edges[0] as usize),
        }
    }
}

pub fn nerve(g: &InternalGroupoid, to: usize) -> Result<Nerve> {
    if to == 0 {
        return Err(SimalError::InvalidParameters(
            "nerve truncation must be at least 1".into(),
        ));
    }
    let x0 = g.x0().clone();
    let x1 = g.x1().clone();
    let mut tuples: Vec<Option<Limit>> = vec![None, None];
    for n in 2..=to {
        let mut d = FiniteDiagram::new();
        let arrows: Vec<usize> = (0..n).map(|_| d.add_node(x1.clone())).collect();
        for i in 0..n - 1 {
            let v = d.add_node(x0.clone());
            d.add_arrow(arrows[i], v, g.d0().clone())?;
            d.add_arrow(arrows[i + 1], v, g.d1().clone())?;
        }
        let l = finite_limit(&d, &arrows, format!("N{n}({})", g.name())).map_err(|e| match e {
            SimalError::LevelTooLarge { size, budget, .. } => SimalError::LevelTooLarge {
                level: n,
                size,
                budget,
            },
            e => e,
        })?;
        tuples.push(Some(l));
    }
    let mut levels = vec![x0.clone(), x1.clone()];
    for t in tuples.iter().skip(2) {
        levels.push(t.as_ref().expect("tuple level").alg().clone());
    }
    let partial = Nerve {
        sim: Arc::new(constant(&x0, 1)?),
        tuples,
    };
    let lookup = |n: usize, e: &[u32]| -> Result<u32> {
        partial
            .index_of(n, e)
            .map(|i| i as u32)
            .ok_or_else(|| SimalError::PropertyViolation(format!("string {e:?} is not composable")))
    };
    let mut faces = vec![vec![g.d0().clone(), g.d1().clone()]];
    let mut degs = vec![vec![g.s0().clone()]];
    for n in 2..=to {
        let mut fs = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut map = Vec::with_capacity(levels[n].size());
            for x in 0..levels[n].size() {
                let e = partial.edges(n, x);
                let out: Vec<u32> = if i == 0 {
                    e[1..].to_vec()
                } else if i == n {
                    e[..n - 1].to_vec()
                } else {
                    let mut v = e[..i - 1].to_vec();
                    v.push(g.compose(e[i - 1] as usize, e[i] as usize)? as u32);
                    v.extend_from_slice(&e[i + 1..]);
                    v
                };
                map.push(lookup(n - 1, &out)?);
            }
            fs.push(Homomorphism::trusted(
                levels[n].clone(),
                levels[n - 1].clone(),
                map,
            ));
        }
        faces.push(fs);
    }
    for n in 1..to {
        let mut ss = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut map = Vec::with_capacity(levels[n].size());
            for x in 0..levels[n].size() {
                let e = partial.edges(n, x);
                let vertex = if i == 0 {
                    g.d1().apply(e[0] as usize)
                } else {
                    g.d0().apply(e[i - 1] as usize)
                };
                let mut v = e[..i].to_vec();
                v.push(g.s0().apply(vertex) as u32);
                v.extend_from_slice(&e[i..]);
                map.push(lookup(n + 1, &v)?);
            }
            ss.push(Homomorphism::trusted(
                levels[n].clone(),
                levels[n + 1].clone(),
                map,
            ));
        }
        degs.push(ss);
    }
    let sim = TruncatedSimplicialAlgebra::trusted(format!("N({})", g.name()), levels, faces, degs)?;
    Ok(Nerve {
        sim: Arc::new(sim),
        tuples: partial.tuples,
    })
}

/// The 2-truncated 1-skeleton of a reflexive graph of abelian groups:
/// `X_2 = (X_1 ⊕ X_1) / {(s_0 a, −s_0 a)}` with faces `[1, s_0 d_0]`,
/// `[1, 1]`, `[s_0 d_1, 1]` and degeneracies the two injections.
pub fn sk1_module_variety(
    graph: &TruncatedSimplicialAlgebra,
) -> Result<TruncatedSimplicialAlgebra> {
    let x0 = graph.level(0);
    let x1 = graph.level(1);
    let sig = x1.signature();
    let (add, neg, zero) = match (
        sig.index_of("add"),
        sig.index_of("neg"),
        sig.index_of("zero"),
    ) {
        (Some(a), Some(n), Some(z))
            if sig.len() == 3 && sig.arity(a) == 2 && sig.arity(n) == 1 && sig.arity(z) == 0 =>
        {
            (a, n, z)
        }
        _ => {
            return Err(SimalError::UnsupportedVariety(format!(
                "1-skeleton needs the signature {{add/2, neg/1, zero/0}}, found {sig}"
            )))
        }
    };
    for alg in [x0, x1] {
        let n = alg.size();
        for a in 0..n {
            for b in 0..n {
                if alg.apply(add, &[a, b]) != alg.apply(add, &[b, a]) {
                    return Err(SimalError::UnsupportedVariety(format!(
                        "`{}` is not commutative",
                        alg.name()
                    )));
                }
            }
        }
    }
    let plus = |a: usize, b: usize| x1.apply(add, &[a, b]);
    let s0 = graph.s(0, 0);
    let (d0, d1) = (graph.d(1, 0), graph.d(1, 1));
    let sum = product(&[x1.clone(), x1.clone()])?;
    let z = x1.apply(zero, &[]) as u32;
    let origin = sum.index_of(&[z, z]).expect("zero is in the product");
    let pairs: Vec<(usize, usize)> = (0..x0.size())
        .map(|a| {
            let u = s0.apply(a);
            let v = x1.apply(neg, &[u]);
            (
                sum.index_of(&[u as u32, v as u32]).expect("in product"),
                origin,
            )
        })
        .collect();
    let theta = Congruence::discrete(sum.alg()).with_pairs(pairs);
    let (x2, q) = theta.quotient()?;
    let x2 = Arc::new(x2.with_name(format!("Sk2({})", graph.name())));
    let q = q.retarget(sum.alg().clone(), x2.clone())?;
    let face = |f: &dyn Fn(usize, usize) -> usize| -> Result<Homomorphism> {
        let mut map = vec![u32::MAX; x2.size()];
        for e in 0..sum.len() {
            let t = sum.tuple(e);
            let v = f(t[0] as usize, t[1] as usize) as u32;
            let c = q.apply(e);
            if map[c] == u32::MAX {
                map[c] = v;
            } else if map[c] != v {
                return Err(SimalError::PropertyViolation(
                    "1-skeleton face is not constant on classes".into(),
                ));
            }
        }
        Homomorphism::new(x2.clone(), x1.clone(), map)
    };
    let f0 = face(&|a, b| plus(a, s0.apply(d0.apply(b))))?;
    let f1 = face(&|a, b| plus(a, b))?;
    let f2 = face(&|a, b| plus(s0.apply(d1.apply(a)), b))?;
    let inj = |first: bool| -> Result<Homomorphism> {
        Homomorphism::from_fn(x1.clone(), x2.clone(), |a| {
            let t = if first { [a as u32, z] } else { [z, a as u32] };
            q.apply(sum.index_of(&t).expect("in product"))
        })
    };
    let levels = vec![x0.clone(), x1.clone(), x2.clone()];
    let faces = vec![graph.faces()[0].clone(), vec![f0, f1, f2]];
    let degs = vec![
        graph.degeneracies()[0].clone(),
        vec![inj(true)?, inj(false)?],
    ];
    TruncatedSimplicialAlgebra::trusted(format!("Sk1({})", graph.name()), levels, faces, degs)
}

/// A levelwise pullback with its two projections and tuple presentations.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub obj: Sim,
    pub p1: SimplicialMorphism,
    pub p2: SimplicialMorphism,
    pub limits: Vec<Limit>,
}

impl Pullback {
    /// The morphism `⟨a, b⟩` into the pullback from two morphisms out of
    /// a common domain.
    pub fn pair(
        &self,
        a: &SimplicialMorphism,
        b: &SimplicialMorphism,
    ) -> Result<SimplicialMorphism> {
        let comps = self
            .limits
            .iter()
            .enumerate()
            .map(|(n, l)| l.induced(&[a.component(n), b.component(n)]))
            .collect::<Result<Vec<_>>>()?;
        let comps = comps
            .into_iter()
            .enumerate()
            .map(|(n, h)| {
                Homomorphism::trusted(
                    a.dom().level(n).clone(),
                    self.obj.level(n).clone(),
                    h.map().to_vec(),
                )
            })
            .collect();
        SimplicialMorphism::trusted(a.dom().clone(), self.obj.clone(), comps)
    }
}

fn assemble_pairs(name: String, limits: Vec<Limit>, x: &Sim, y: &Sim) -> Result<Pullback> {
    let top = x.truncation();
    let levels: Vec<Alg> = limits.iter().map(|l| l.alg().clone()).collect();
    let induced =
        |n: usize, m: usize, fx: &Homomorphism, fy: &Homomorphism| -> Result<Homomorphism> {
            let mut map = Vec::with_capacity(levels[n].size());
            for e in 0..levels[n].size() {
                let t = limits[n].tuple(e);
                let img = [fx.map()[t[0] as usize], fy.map()[t[1] as usize]];
                map.push(limits[m].index_of(&img).ok_or_else(|| {
                    SimalError::PropertyViolation(
                        "structure map leaves the levelwise pullback".into(),
                    )
                })? as u32);
            }
            Ok(Homomorphism::trusted(
                levels[n].clone(),
                levels[m].clone(),
                map,
            ))
        };
    let mut faces = Vec::new();
    for n in 1..=top {
        faces.push(
            (0..=n)
                .map(|i| induced(n, n - 1, x.d(n, i), y.d(n, i)))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let mut degs = Vec::new();
    for n in 0..top {
        degs.push(
            (0..=n)
                .map(|i| induced(n, n + 1, x.s(n, i), y.s(n, i)))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let obj = Arc::new(TruncatedSimplicialAlgebra::trusted(
        name, levels, faces, degs,
    )?);
    let proj = |c: usize, target: &Sim| -> Result<SimplicialMorphism> {
        let comps = limits
            .iter()
            .enumerate()
            .map(|(n, l)| {
                Homomorphism::trusted(
                    obj.level(n).clone(),
                    target.level(n).clone(),
                    l.projection(c).map().to_vec(),
                )
            })
            .collect();
        SimplicialMorphism::trusted(obj.clone(), target.clone(), comps)
    };
    let p1 = proj(0, x)?;
    let p2 = proj(1, y)?;
    Ok(Pullback {
        obj,
        p1,
        p2,
        limits,
    })
}

/// `X ×_Z Y`, computed level by level.
pub fn levelwise_pullback(f: &SimplicialMorphism, g: &SimplicialMorphism) -> Result<Pullback> {
    if f.cod().truncation() != g.cod().truncation() || !f.cod().same_structure(g.cod()) {
        return Err(SimalError::MalformedSimplicial(
            "pullback of morphisms with different codomains".into(),
        ));
    }
    let limits = (0..=f.dom().truncation())
        .map(|n| pullback(f.component(n), g.component(n)))
        .collect::<Result<Vec<_>>>()?;
    assemble_pairs(
        format!("{}x_{}{}", f.dom().name(), f.cod().name(), g.dom().name()),
        limits,
        f.dom(),
        g.dom(),
    )
}

/// `X × Y`, computed level by level.
pub fn levelwise_product(x: &Sim, y: &Sim) -> Result<Pullback> {
    if x.truncation() != y.truncation() {
        return Err(SimalError::MalformedSimplicial(
            "product of objects of different truncation".into(),
        ));
    }
    let limits = (0..=x.truncation())
        .map(|n| product(&[x.level(n).clone(), y.level(n).clone()]))
        .collect::<Result<Vec<_>>>()?;
    assemble_pairs(format!("{}x{}", x.name(), y.name()), limits, x, y)
}

/// The kernel-pair object `X ×_Y X` of `f`.
pub fn kernel_pair_object(f: &SimplicialMorphism) -> Result<Pullback> {
    levelwise_pullback(f, f)
}

/// The levelwise quotient by a simplicial congruence and its projection.
pub fn quotient(x: &Sim, theta: &SimplicialCongruence) -> Result<(Sim, SimplicialMorphism)> {
    let top = x.truncation();
    let mut levels = Vec::new();
    let mut projs = Vec::new();
    let mut idx = Vec::new();
    for n in 0..=top {
        let (q, p) = theta.level(n).quotient()?;
        idx.push(p.map().to_vec());
        levels.push(q);
        projs.push(p);
    }
    let mut faces = Vec::new();
    for n in 1..=top {
        faces.push(
            (0..=n)
                .map(|i| {
                    induced_on_classes(
                        theta.level(n),
                        &idx[n - 1],
                        x.d(n, i),
                        &levels[n],
                        &levels[n - 1],
                    )
                })
                .collect(),
        );
    }
    let mut degs = Vec::new();
    for n in 0..top {
        degs.push(
            (0..=n)
                .map(|i| {
                    induced_on_classes(
                        theta.level(n),
                        &idx[n + 1],
                        x.s(n, i),
                        &levels[n],
                        &levels[n + 1],
                    )
                })
                .collect(),
        );
    }
    let q = Arc::new(TruncatedSimplicialAlgebra::trusted(
        format!("{}/~", x.name()),
        levels,
        faces,
        degs,
    )?);
    let proj = SimplicialMorphism::trusted(x.clone(), q.clone(), projs)?;
    Ok((q, proj))
}

/// The least simplicial subobject containing the given `(level, element)`
/// seeds, with its inclusion.
pub fn subobject(x: &Sim, seeds: &[(usize, usize)]) -> Result<(Sim, SimplicialMorphism)> {
    let top = x.truncation();
    let mut sets: Vec<Vec<usize>> = (0..=top)
        .map(|n| {
            let s: Vec<usize> = seeds.iter().filter(|p| p.0 == n).map(|p| p.1).collect();
            x.level(n).generated(&s)
        })
        .collect();
    loop {
        let mut changed = false;
        for n in 0..=top {
            let mut more = sets[n].clone();
            if n < top {
                for i in 0..=n + 1 {
                    more.extend(sets[n + 1].iter().map(|&a| x.d(n + 1, i).apply(a)));
                }
            }
            if n > 0 {
                for i in 0..n {
                    more.extend(sets[n - 1].iter().map(|&a| x.s(n - 1, i).apply(a)));
                }
            }
            let closed = x.level(n).generated(&more);
            if closed.len() != sets[n].len() {
                sets[n] = closed;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut levels = Vec::new();
    let mut incl = Vec::new();
    let mut pos = Vec::new();
    for n in 0..=top {
        let (sub, i) = subalgebra(x.level(n), &sets[n], format!("{}[{n}]", x.name()))?;
        let mut p = vec![u32::MAX; x.level(n).size()];
        for (k, &a) in sets[n].iter().enumerate() {
            p[a] = k as u32;
        }
        pos.push(p);
        levels.push(sub);
        incl.push(i);
    }
    let restrict = |n: usize, m: usize, f: &Homomorphism| -> Homomorphism {
        let map = sets[n].iter().map(|&a| pos[m][f.apply(a)]).collect();
        Homomorphism::trusted(levels[n].clone(), levels[m].clone(), map)
    };
    let faces = (1..=top)
        .map(|n| (0..=n).map(|i| restrict(n, n - 1, x.d(n, i))).collect())
        .collect();
    let degs = (0..top)
        .map(|n| (0..=n).map(|i| restrict(n, n + 1, x.s(n, i))).collect())
        .collect();
    let sub = Arc::new(TruncatedSimplicialAlgebra::trusted(
        format!("sub({})", x.name()),
        levels,
        faces,
        degs,
    )?);
    let m = SimplicialMorphism::trusted(sub.clone(), x.clone(), incl)?;
    Ok((sub, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Congruence;
    use crate::corpus::algebras::{cyclic_group, zk_module};
    use crate::corpus::groupoids::{
        congruence_groupoid, one_object_groupoid, pair_groupoid, reflexive_graph,
    };
    use crate::simplicial::{exactness_check, kan_check, kan_fibration_check, simplicial_kernel};

    fn alg(a: crate::algebra::FiniteAlgebra) -> Alg {
        Arc::new(a)
    }

    /// The graph `Z2×Z2 ⇉ Z2` with both faces the first projection and
    /// `s₀ x = (x, 0)`.
    fn z2_square_graph() -> Sim {
        let z2 = alg(cyclic_group(2).unwrap());
        let p = product(&[z2.clone(), z2.clone()]).unwrap();
        let x1 = p.alg().clone();
        let pi = p.projection(0).clone();
        let s0 = Homomorphism::from_fn(z2, x1, |a| p.index_of(&[a as u32, 0]).unwrap()).unwrap();
        reflexive_graph("G", pi.clone(), pi, s0).unwrap()
    }

    #[test]
    fn constant_object_is_valid_and_its_kernel_is_diagonal() {
        let a = alg(cyclic_group(3).unwrap());
        let c = Arc::new(constant(&a, 3).unwrap());
        assert_eq!(c.level_sizes(), vec![3, 3, 3, 3]);
        assert_eq!(simplicial_kernel(&c, 2).unwrap().size(), 3);
        let (dec, eps) = decalage(&c).unwrap();
        assert_eq!(dec.level_sizes(), vec![3, 3, 3]);
        assert!(eps.components().iter().all(|h| h
            .map()
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i)));
    }

    #[test]
    fn pair_groupoid_nerve_sizes_double() {
        let z2 = alg(cyclic_group(2).unwrap());
        let n = nerve(&pair_groupoid(&z2).unwrap(), 3).unwrap();
        assert_eq!(n.sim.level_sizes(), vec![2, 4, 8, 16]);
        let k2 = simplicial_kernel(&n.sim, 2).unwrap();
        assert_eq!(k2.size(), 8);
        assert!(exactness_check(&n.sim, 2).unwrap());
        assert!(exactness_check(&n.sim, 3).unwrap());
        assert!(kan_check(&n.sim).unwrap().all_surjective());
    }

    #[test]
    fn congruence_nerve_sizes_follow_class_counts() {
        let z6 = alg(cyclic_group(6).unwrap());
        // the congruence mod 3 has classes of size 2
        let theta = Congruence::principal(&z6, 0, 3);
        let n = nerve(&congruence_groupoid(&theta).unwrap(), 3).unwrap();
        assert_eq!(n.sim.level_sizes(), vec![6, 12, 24, 48]);
    }

    #[test]
    fn nerve_of_discrete_groupoid_is_constant() {
        let z4 = alg(cyclic_group(4).unwrap());
        let g = congruence_groupoid(&Congruence::discrete(&z4)).unwrap();
        let n = nerve(&g, 3).unwrap();
        assert_eq!(n.sim.level_sizes(), vec![4, 4, 4, 4]);
        for k in 1..=3 {
            for i in 0..=k {
                assert!(n.sim.d(k, i).is_bijective());
            }
        }
    }

    #[test]
    fn decalage_of_one_object_nerve() {
        let z4 = alg(cyclic_group(4).unwrap());
        let n = nerve(&one_object_groupoid(&z4, 0).unwrap(), 3).unwrap();
        assert_eq!(n.sim.level_sizes(), vec![1, 4, 16, 64]);
        let (dec, eps) = decalage(&n.sim).unwrap();
        assert_eq!(dec.level_sizes(), vec![4, 16, 64]);
        assert!(eps.is_levelwise_surjective());
        assert!(kan_fibration_check(&eps).unwrap().all_surjective());
        assert!(exactness_check(&dec, 2).unwrap());
    }

    #[test]
    fn coskeleton_of_square_graph_matches_tuple_count() {
        let g = z2_square_graph();
        let c = coskeleton(&g, 3).unwrap();
        // oracle: triples (x0, x1, x2) of edges with d0x1 = d0x0, d0x2 = d1x0, d1x2 = d1x1
        let x1 = g.level(1);
        let (d0, d1) = (g.d(1, 0), g.d(1, 1));
        let mut count = 0;
        for a in 0..x1.size() {
            for b in 0..x1.size() {
                for e in 0..x1.size() {
                    if d0.apply(b) == d0.apply(a)
                        && d0.apply(e) == d1.apply(a)
                        && d1.apply(e) == d1.apply(b)
                    {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 16);
        assert_eq!(c.level(2).size(), count);
        assert_eq!(c.truncation(), 3);
        let c = Arc::new(c);
        assert!(exactness_check(&c, 2).unwrap());
        assert!(exactness_check(&c, 3).unwrap());
        assert!(simplicial_kernel(&c, 3).unwrap().comparison.is_bijective());
    }

    #[test]
    fn coskeleton_of_trivial_graph_is_constant() {
        let z3 = alg(cyclic_group(3).unwrap());
        let id = Homomorphism::identity(&z3);
        let g = reflexive_graph("triv", id.clone(), id.clone(), id).unwrap();
        let c = coskeleton(&g, 3).unwrap();
        assert_eq!(c.level_sizes(), vec![3, 3, 3, 3]);
    }

    #[test]
    fn coskeleton_of_truncated_nerve_reproduces_nerve() {
        let z4 = alg(cyclic_group(4).unwrap());
        let theta = Congruence::principal(&z4, 0, 2);
        let n = nerve(&congruence_groupoid(&theta).unwrap(), 3).unwrap();
        let c = coskeleton(&n.sim.truncate(1).unwrap(), 3).unwrap();
        assert_eq!(c.level_sizes(), n.sim.level_sizes());
        // level 2 and 3 of the nerve embed into the coskeleton by face tuples
        let mut iso: Vec<u32> = (0..n.sim.level(1).size() as u32).collect();
        for k in 2..=3 {
            let mut next = Vec::new();
            for x in 0..n.sim.level(k).size() {
                let faces: Vec<usize> = (0..=k)
                    .map(|i| iso[n.sim.d(k, i).apply(x)] as usize)
                    .collect();
                let hits: Vec<usize> = (0..c.level(k).size())
                    .filter(|&y| (0..=k).all(|i| c.d(k, i).apply(y) == faces[i]))
                    .collect();
                assert_eq!(hits.len(), 1);
                next.push(hits[0] as u32);
            }
            let mut sorted = next.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), next.len());
            iso = next;
        }
    }

    #[test]
    fn sk1_of_split_graph() {
        let x1 = alg(zk_module(2, 2).unwrap());
        let x0 = alg(cyclic_group(2).unwrap());
        // coordinates: element a = a0 + 2 a1
        let pi = Homomorphism::from_fn(x1.clone(), x0.clone(), |a| a % 2).unwrap();
        let s0 = Homomorphism::from_fn(x0, x1, |a| a).unwrap();
        let g = reflexive_graph("split", pi.clone(), pi, s0).unwrap();
        let s = sk1_module_variety(&g).unwrap();
        assert_eq!(s.level_sizes(), vec![2, 4, 8]);
    }

    #[test]
    fn sk1_over_trivial_base_is_direct_sum() {
        let x1 = alg(cyclic_group(3).unwrap());
        let x0 = alg(cyclic_group(1).unwrap());
        let bang = Homomorphism::from_fn(x1.clone(), x0.clone(), |_| 0).unwrap();
        let zero = Homomorphism::from_fn(x0, x1, |_| 0).unwrap();
        let g = reflexive_graph("Z3", bang.clone(), bang, zero).unwrap();
        let s = sk1_module_variety(&g).unwrap();
        assert_eq!(s.level(2).size(), 9);
        // faces are [1,0], [1,1], [0,1] in the direct-sum coordinates
        let x = s.s(1, 0).apply(1);
        let y = s.s(1, 1).apply(2);
        assert_eq!(s.d(2, 0).apply(x), 1);
        assert_eq!(s.d(2, 2).apply(x), 0);
        assert_eq!(s.d(2, 0).apply(y), 0);
        assert_eq!(s.d(2, 2).apply(y), 2);
    }

    #[test]
    fn sk1_rejects_groups() {
        let s3 = alg(crate::corpus::algebras::symmetric_group_3());
        let id = Homomorphism::identity(&s3);
        let g = reflexive_graph("S3", id.clone(), id.clone(), id).unwrap();
        assert!(matches!(
            sk1_module_variety(&g),
            Err(SimalError::UnsupportedVariety(_))
        ));
    }

    #[test]
    fn swapping_faces_of_coset_nerve_breaks_identities() {
        let z4 = alg(cyclic_group(4).unwrap());
        let theta = Congruence::principal(&z4, 0, 2);
        let n = nerve(&congruence_groupoid(&theta).unwrap(), 2).unwrap();
        let mut faces = n.sim.faces().to_vec();
        faces[0].swap(0, 1);
        let r = TruncatedSimplicialAlgebra::new(
            "swapped",
            n.sim.levels().to_vec(),
            faces,
            n.sim.degeneracies().to_vec(),
        );
        assert!(matches!(r, Err(SimalError::IdentityViolated { .. })));
    }

    #[test]
    fn quotients_and_subobjects_of_nerves_validate() {
        let z4 = alg(cyclic_group(4).unwrap());
        let n = nerve(&pair_groupoid(&z4).unwrap(), 3).unwrap();
        let theta = SimplicialCongruence::principal(&n.sim, 0, 0, 2);
        let (q, proj) = quotient(&n.sim, &theta).unwrap();
        assert!(proj.is_levelwise_surjective());
        assert_eq!(q.level(0).size(), 2);
        let (sub, incl) = subobject(&n.sim, &[(1, n.sim.s(0, 0).apply(1))]).unwrap();
        assert!(incl.components().iter().all(|h| h.is_injective()));
        assert!(sub.level(0).size() <= 4);
    }

    #[test]
    fn levelwise_pullback_of_identity_is_diagonal() {
        let z2 = alg(cyclic_group(2).unwrap());
        let n = nerve(&pair_groupoid(&z2).unwrap(), 2).unwrap();
        let id = SimplicialMorphism::identity(&n.sim);
        let kp = kernel_pair_object(&id).unwrap();
        assert_eq!(kp.obj.level_sizes(), n.sim.level_sizes());
        let prod = levelwise_product(&n.sim, &n.sim).unwrap();
        assert_eq!(prod.obj.level_sizes(), vec![4, 16, 64]);
        let diag = prod.pair(&id, &id).unwrap();
        assert!(diag.components().iter().all(|h| h.is_injective()));
    }
}
