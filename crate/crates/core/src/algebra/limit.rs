//! Finite limits of algebras, realised as algebras of compatible tuples.

use std::collections::HashMap;
use std::sync::Arc;

use super::finite::{Alg, FiniteAlgebra};
use super::hom::Homomorphism;
use crate::budget::limit_budget;
use crate::error::{Result, SimalError};

/// Mixed-radix encoding of tuples into a single `u128` key.
#[derive(Clone, Debug)]
struct TupleCodec {
    mult: Vec<u128>,
}

impl TupleCodec {
    fn new(sizes: &[usize]) -> Result<Self> {
        let mut mult = vec![0u128; sizes.len()];
        let mut acc: u128 = 1;
        for (i, &s) in sizes.iter().enumerate().rev() {
            mult[i] = acc;
            acc = acc.checked_mul(s.max(1) as u128).ok_or_else(|| {
                SimalError::BudgetExceeded("tuple space too large to index".into())
            })?;
        }
        Ok(TupleCodec { mult })
    }

    #[inline]
    fn key<T: Copy + Into<u64>>(&self, t: &[T]) -> u128 {
        t.iter()
            .zip(&self.mult)
            .map(|(&x, &m)| x.into() as u128 * m)
            .sum()
    }
}

/// An algebra whose elements are tuples over a list of component algebras,
/// with componentwise operations, together with its projections.
#[derive(Clone, Debug)]
pub struct Limit {
    alg: Alg,
    components: Vec<Alg>,
    data: Vec<u32>,
    index: HashMap<u128, u32>,
    codec: TupleCodec,
    projections: Vec<Homomorphism>,
}

impl Limit {
    /// Builds the tuple algebra on `rows` (flattened, one tuple per
    /// `components.len()` entries). The rows must be closed under the
    /// componentwise operations; this is re-checked while building tables.
    pub fn from_rows(
        name: impl Into<String>,
        components: Vec<Alg>,
        rows: Vec<u32>,
    ) -> Result<Limit> {
        let name = name.into();
        let width = components.len();
        if width == 0 {
            return Err(SimalError::InvalidParameters(
                "limit with no components".into(),
            ));
        }
        let sig = components[0].signature().clone();
        if let Some(c) = components
            .iter()
            .find(|c| !c.same_signature(&components[0]))
        {
            return Err(SimalError::SignatureMismatch(format!(
                "limit component `{}` differs in signature from `{}`",
                c.name(),
                components[0].name()
            )));
        }
        let len = rows.len() / width;
        if len > limit_budget() {
            return Err(SimalError::LevelTooLarge {
                level: 0,
                size: len,
                budget: limit_budget(),
            });
        }
        if len == 0 && sig.has_constants() {
            return Err(SimalError::InconsistentConstants(name));
        }
        let sizes: Vec<usize> = components.iter().map(|c| c.size()).collect();
        let codec = TupleCodec::new(&sizes)?;
        let mut index = HashMap::with_capacity(len);
        for i in 0..len {
            let key = codec.key(&rows[i * width..(i + 1) * width]);
            if index.insert(key, i as u32).is_some() {
                return Err(SimalError::InvalidParameters(format!(
                    "duplicate tuple in `{name}`: the cone does not determine its elements"
                )));
            }
        }
        let mut args: Vec<Vec<usize>> = vec![Vec::new(); width];
        let mut out = vec![0u32; width];
        let alg = FiniteAlgebra::from_fn(
            name.clone(),
            sig,
            len,
            components[0].maltsev_term().clone(),
            |op, ix| {
                for (c, comp) in components.iter().enumerate() {
                    args[c].clear();
                    args[c].extend(ix.iter().map(|&i| rows[i * width + c] as usize));
                    out[c] = comp.apply(op, &args[c]) as u32;
                }
                index
                    .get(&codec.key(&out))
                    .map(|&i| i as usize)
                    .ok_or_else(|| {
                        SimalError::PropertyViolation(format!(
                            "tuple set of `{name}` is not closed under operation {op}"
                        ))
                    })
            },
        )?;
        let alg = Arc::new(alg);
        let projections = components
            .iter()
            .enumerate()
            .map(|(c, comp)| {
                let map = (0..len).map(|i| rows[i * width + c]).collect();
                Homomorphism::trusted(alg.clone(), comp.clone(), map)
            })
            .collect();
        Ok(Limit {
            alg,
            components,
            data: rows,
            index,
            codec,
            projections,
        })
    }

    pub fn alg(&self) -> &Alg {
        &self.alg
    }

    pub fn components(&self) -> &[Alg] {
        &self.components
    }

    pub fn width(&self) -> usize {
        self.components.len()
    }

    pub fn len(&self) -> usize {
        self.alg.size()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn tuple(&self, i: usize) -> &[u32] {
        let w = self.width();
        &self.data[i * w..(i + 1) * w]
    }

    pub fn index_of(&self, t: &[u32]) -> Option<usize> {
        self.index.get(&self.codec.key(t)).map(|&i| i as usize)
    }

    pub fn index_of_usize(&self, t: &[usize]) -> Option<usize> {
        let t: Vec<u32> = t.iter().map(|&x| x as u32).collect();
        self.index_of(&t)
    }

    pub fn projection(&self, i: usize) -> &Homomorphism {
        &self.projections[i]
    }

    pub fn projections(&self) -> &[Homomorphism] {
        &self.projections
    }

    /// The map `a ↦ (leg_0 a, .., leg_k a)`, or `None` if some tuple falls
    /// outside the carrier (the legs do not form a cone).
    pub fn try_induced(&self, legs: &[&Homomorphism]) -> Option<Homomorphism> {
        assert_eq!(legs.len(), self.width());
        let dom = legs[0].dom().clone();
        let mut t = vec![0u32; legs.len()];
        let mut map = Vec::with_capacity(dom.size());
        for a in 0..dom.size() {
            for (c, leg) in legs.iter().enumerate() {
                t[c] = leg.map()[a];
            }
            map.push(self.index_of(&t)? as u32);
        }
        Some(Homomorphism::trusted(dom, self.alg.clone(), map))
    }

    pub fn induced(&self, legs: &[&Homomorphism]) -> Result<Homomorphism> {
        self.try_induced(legs).ok_or_else(|| {
            SimalError::PropertyViolation(format!(
                "maps out of `{}` do not land in `{}`",
                legs[0].dom().name(),
                self.alg.name()
            ))
        })
    }
}

/// Nodes and arrows of a finite diagram of algebras.
#[derive(Clone, Debug, Default)]
pub struct FiniteDiagram {
    nodes: Vec<Alg>,
    arrows: Vec<(usize, usize, Homomorphism)>,
}

impl FiniteDiagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, a: Alg) -> usize {
        self.nodes.push(a);
        self.nodes.len() - 1
    }

    /// Adds `f: nodes[src] -> nodes[tgt]`; the endpoints must match.
    pub fn add_arrow(&mut self, src: usize, tgt: usize, f: Homomorphism) -> Result<()> {
        let ok = src < self.nodes.len()
            && tgt < self.nodes.len()
            && *self.nodes[src] == **f.dom()
            && *self.nodes[tgt] == **f.cod();
        if !ok {
            return Err(SimalError::InvalidParameters(format!(
                "arrow {} -> {} does not match diagram nodes {src} -> {tgt}",
                f.dom().name(),
                f.cod().name()
            )));
        }
        self.arrows.push((src, tgt, f));
        Ok(())
    }

    pub fn nodes(&self) -> &[Alg] {
        &self.nodes
    }

    pub fn arrows(&self) -> &[(usize, usize, Homomorphism)] {
        &self.arrows
    }
}

/// The limit of `diagram`, presented by the nodes listed in `cone`, which
/// must jointly determine each compatible family.
///
/// Families are grown one node at a time. The next node is always one whose
/// value is forced by an arrow from an assigned node, or failing that one
/// constrained to a fiber of an arrow into an assigned node, so the partial
/// families stay close to the size of the final answer.
pub fn finite_limit(
    diagram: &FiniteDiagram,
    cone: &[usize],
    name: impl Into<String>,
) -> Result<Limit> {
    let nodes = &diagram.nodes;
    let arrows = &diagram.arrows;
    let k = nodes.len();
    if cone.is_empty() || cone.iter().any(|&c| c >= k) {
        return Err(SimalError::InvalidParameters("bad cone shape".into()));
    }
    let budget = limit_budget();
    let mut fibers: Vec<Option<Vec<Vec<u32>>>> = vec![None; arrows.len()];
    let mut column = vec![usize::MAX; k];
    let mut order: Vec<usize> = Vec::new();
    let mut rows: Vec<u32> = Vec::new();
    let mut count = 1usize;

    while order.len() < k {
        // pick the next node
        let mut best: Option<(f64, usize)> = None;
        for v in 0..k {
            if column[v] != usize::MAX {
                continue;
            }
            let mut est = nodes[v].size() as f64;
            for (src, tgt, f) in arrows {
                if *tgt == v && column[*src] != usize::MAX {
                    est = est.min(1.0);
                } else if *src == v && column[*tgt] != usize::MAX {
                    let img = f.image_size().max(1);
                    est = est.min(nodes[v].size() as f64 / img as f64);
                }
            }
            if best.is_none_or(|(e, _)| est < e) {
                best = Some((est, v));
            }
        }
        let v = best.expect("an unassigned node exists").1;
        let width = order.len();
        let checks: Vec<usize> = (0..arrows.len())
            .filter(|&a| {
                let (s, t, _) = &arrows[a];
                (*s == v && (column[*t] != usize::MAX || *t == v))
                    || (*t == v && column[*s] != usize::MAX)
            })
            .collect();
        let forced = checks
            .iter()
            .copied()
            .find(|&a| arrows[a].1 == v && arrows[a].0 != v);
        let fibered = if forced.is_none() {
            checks
                .iter()
                .copied()
                .filter(|&a| arrows[a].0 == v && arrows[a].1 != v)
                .max_by_key(|&a| arrows[a].2.image_size())
        } else {
            None
        };
        if let Some(a) = fibered {
            if fibers[a].is_none() {
                fibers[a] = Some(arrows[a].2.fibers());
            }
        }
        let mut next: Vec<u32> = Vec::new();
        let mut next_count = 0usize;
        let all: Vec<u32> = (0..nodes[v].size() as u32).collect();
        for r in 0..count {
            let row = &rows[r * width..(r + 1) * width];
            let candidates: &[u32];
            let single;
            if let Some(a) = forced {
                let (s, _, f) = &arrows[a];
                single = [f.map()[row[column[*s]] as usize]];
                candidates = &single;
            } else if let Some(a) = fibered {
                let t = arrows[a].1;
                candidates = &fibers[a].as_ref().unwrap()[row[column[t]] as usize];
            } else {
                candidates = &all;
            }
            'cand: for &x in candidates {
                for &a in &checks {
                    let (s, t, f) = &arrows[a];
                    let ok = if *s == v && *t == v {
                        f.map()[x as usize] == x
                    } else if *s == v {
                        f.map()[x as usize] == row[column[*t]]
                    } else {
                        f.map()[row[column[*s]] as usize] == x
                    };
                    if !ok {
                        continue 'cand;
                    }
                }
                next.extend_from_slice(row);
                next.push(x);
                next_count += 1;
                if next_count > budget {
                    return Err(SimalError::LevelTooLarge {
                        level: 0,
                        size: next_count,
                        budget,
                    });
                }
            }
        }
        column[v] = width;
        order.push(v);
        rows = next;
        count = next_count;
    }

    let width = order.len();
    let mut out = Vec::with_capacity(count * cone.len());
    for r in 0..count {
        let row = &rows[r * width..(r + 1) * width];
        out.extend(cone.iter().map(|&c| row[column[c]]));
    }
    let components = cone.iter().map(|&c| nodes[c].clone()).collect();
    Limit::from_rows(name, components, out)
}

/// The product of a non-empty list of algebras.
pub fn product(factors: &[Alg]) -> Result<Limit> {
    let mut d = FiniteDiagram::new();
    for f in factors {
        d.add_node(f.clone());
    }
    let name = factors
        .iter()
        .map(|f| f.name().to_string())
        .collect::<Vec<_>>()
        .join("x");
    let cone: Vec<usize> = (0..factors.len()).collect();
    finite_limit(&d, &cone, name)
}

/// `A ×_C B` for `f: A -> C`, `g: B -> C`, presented by pairs `(a, b)`.
pub fn pullback(f: &Homomorphism, g: &Homomorphism) -> Result<Limit> {
    let mut d = FiniteDiagram::new();
    let a = d.add_node(f.dom().clone());
    let b = d.add_node(g.dom().clone());
    let c = d.add_node(f.cod().clone());
    d.add_arrow(a, c, f.clone())?;
    d.add_arrow(b, c, g.retarget(g.dom().clone(), f.cod().clone())?)?;
    finite_limit(
        &d,
        &[a, b],
        format!("{}x_{}{}", f.dom().name(), f.cod().name(), g.dom().name()),
    )
}

/// Number of elements of `A ×_C B`, counted fiberwise without building it.
pub fn pullback_size(f: &Homomorphism, g: &Homomorphism) -> usize {
    let mut cf = vec![0usize; f.cod().size()];
    let mut cg = vec![0usize; g.cod().size()];
    for &v in f.map() {
        cf[v as usize] += 1;
    }
    for &v in g.map() {
        cg[v as usize] += 1;
    }
    cf.iter().zip(&cg).map(|(a, b)| a * b).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::algebras::cyclic_group;

    #[test]
    fn product_of_z2_with_itself() {
        let z2 = Arc::new(cyclic_group(2).unwrap());
        let p = product(&[z2.clone(), z2.clone()]).unwrap();
        assert_eq!(p.len(), 4);
        // componentwise addition
        let add = p.alg().signature().index_of("add").unwrap();
        let a = p.index_of(&[1, 0]).unwrap();
        let b = p.index_of(&[1, 1]).unwrap();
        let c = p.alg().apply(add, &[a, b]);
        assert_eq!(p.tuple(c), &[0, 1]);
    }

    #[test]
    fn pullback_of_identities_is_diagonal() {
        let z4 = Arc::new(cyclic_group(4).unwrap());
        let id = Homomorphism::identity(&z4);
        let p = pullback(&id, &id).unwrap();
        assert_eq!(p.len(), 4);
        for i in 0..4 {
            let t = p.tuple(i);
            assert_eq!(t[0], t[1]);
        }
    }

    #[test]
    fn kernel_pair_object_of_mod_two() {
        let z4 = Arc::new(cyclic_group(4).unwrap());
        let z2 = Arc::new(cyclic_group(2).unwrap());
        let f = Homomorphism::from_fn(z4.clone(), z2, |a| a % 2).unwrap();
        let p = pullback(&f, &f).unwrap();
        assert_eq!(p.len(), 8);
        assert_eq!(pullback_size(&f, &f), 8);
        // oracle: filter Z4 x Z4
        let mut expected = 0;
        for a in 0..4 {
            for b in 0..4 {
                if a % 2 == b % 2 {
                    expected += 1;
                    assert!(p.index_of(&[a, b]).is_some());
                }
            }
        }
        assert_eq!(expected, 8);
    }

    #[test]
    fn budget_is_enforced() {
        let z4 = Arc::new(cyclic_group(4).unwrap());
        let r = crate::budget::with_limit_budget(10, || product(&[z4.clone(), z4.clone()]));
        assert!(matches!(r, Err(SimalError::LevelTooLarge { .. })));
    }
}
