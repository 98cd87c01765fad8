use std::sync::Arc;

use crate::algebra::{pullback, Alg, Homomorphism, Limit};
use crate::error::{Result, SimalError};
use crate::simplicial::{Sim, TruncatedSimplicialAlgebra};

/// An internal groupoid `d₀, d₁: X₁ ⇉ X₀` with identities `s₀` and a
/// composition defined on composable pairs `(f, g)` with `d₀ f = d₁ g`
/// (first `f`, then `g`). `d₁` is the source and `d₀` the target.
#[derive(Clone, Debug)]
pub struct InternalGroupoid {
    name: String,
    d0: Homomorphism,
    d1: Homomorphism,
    s0: Homomorphism,
    pairs: Limit,
    composition: Homomorphism,
}

impl InternalGroupoid {
    /// Builds the groupoid with composition `m(f, g) = p(f, s₀d₀f, g)` from
    /// the Mal'tsev term, which is the only candidate in a Mal'tsev variety.
    pub fn from_graph(
        name: impl Into<String>,
        d0: Homomorphism,
        d1: Homomorphism,
        s0: Homomorphism,
    ) -> Result<Self> {
        check_graph(&d0, &d1, &s0)?;
        let x1 = d0.dom().clone();
        let pairs = pullback(&d0, &d1)?;
        let mut table = Vec::with_capacity(pairs.len());
        for e in 0..pairs.len() {
            let t = pairs.tuple(e);
            let (f, g) = (t[0] as usize, t[1] as usize);
            table.push(x1.maltsev(f, s0.apply(d0.apply(f)), g) as u32);
        }
        Self::with_composition(name, d0, d1, s0, table)
    }

    /// The groupoid underlying the levels 0, 1, 2 of a simplicial object
    /// whose 2-simplices are determined by their outer faces: `m(f, g)` is
    /// `d₁` of the unique `x` with `d₂x = f` and `d₀x = g`.
    pub fn from_simplicial(x: &TruncatedSimplicialAlgebra) -> Result<Self> {
        if x.truncation() < 2 {
            return Err(SimalError::NotAGroupoid(
                "truncation below 2 has no composition".into(),
            ));
        }
        let (d0, d1, s0) = (x.d(1, 0).clone(), x.d(1, 1).clone(), x.s(0, 0).clone());
        check_graph(&d0, &d1, &s0)?;
        let pairs = pullback(&d0, &d1)?;
        let mut table = vec![u32::MAX; pairs.len()];
        for a in 0..x.level(2).size() {
            let f = x.d(2, 2).apply(a) as u32;
            let g = x.d(2, 0).apply(a) as u32;
            let e = pairs
                .index_of(&[f, g])
                .expect("outer faces of a 2-simplex are composable");
            let c = x.d(2, 1).apply(a) as u32;
            if table[e] != u32::MAX && table[e] != c {
                return Err(SimalError::NotAGroupoid(format!(
                    "two 2-simplices share outer faces ({f}, {g}) but differ in d1"
                )));
            }
            table[e] = c;
        }
        if let Some(e) = table.iter().position(|&c| c == u32::MAX) {
            let t = pairs.tuple(e);
            return Err(SimalError::NotAGroupoid(format!(
                "composable pair ({}, {}) has no 2-simplex",
                t[0], t[1]
            )));
        }
        Self::with_composition(x.name().to_string(), d0, d1, s0, table)
    }

    /// Validates an explicit composition table indexed like
    /// `pullback(d₀, d₁)`: a homomorphism compatible with source and target,
    /// unital, associative and with inverses.
    pub fn with_composition(
        name: impl Into<String>,
        d0: Homomorphism,
        d1: Homomorphism,
        s0: Homomorphism,
        table: Vec<u32>,
    ) -> Result<Self> {
        let name = name.into();
        check_graph(&d0, &d1, &s0)?;
        let x1 = d0.dom().clone();
        let pairs = pullback(&d0, &d1)?;
        if table.len() != pairs.len() {
            return Err(SimalError::NotAGroupoid(format!(
                "composition table has {} entries for {} composable pairs",
                table.len(),
                pairs.len()
            )));
        }
        let composition = Homomorphism::new(pairs.alg().clone(), x1.clone(), table)
            .map_err(|e| SimalError::NotAGroupoid(format!("composition: {e}")))?;
        let g = InternalGroupoid {
            name,
            d0,
            d1,
            s0,
            pairs,
            composition,
        };
        g.check_axioms()?;
        Ok(g)
    }

    fn check_axioms(&self) -> Result<()> {
        let fail = |m: String| Err(SimalError::NotAGroupoid(m));
        let n = self.x1().size();
        for e in 0..self.pairs.len() {
            let t = self.pairs.tuple(e);
            let (f, g) = (t[0] as usize, t[1] as usize);
            let c = self.composition.apply(e);
            if self.d1.apply(c) != self.d1.apply(f) || self.d0.apply(c) != self.d0.apply(g) {
                return fail(format!("composite of ({f}, {g}) has the wrong endpoints"));
            }
        }
        for f in 0..n {
            let left = self.compose(self.s0.apply(self.d1.apply(f)), f)?;
            let right = self.compose(f, self.s0.apply(self.d0.apply(f)))?;
            if left != f || right != f {
                return fail(format!("identities are not neutral for arrow {f}"));
            }
            let back = (0..n).find(|&g| {
                self.d1.apply(g) == self.d0.apply(f)
                    && self.compose(f, g).ok() == Some(self.s0.apply(self.d1.apply(f)))
            });
            match back {
                Some(g) if self.compose(g, f)? == self.s0.apply(self.d0.apply(f)) => {}
                _ => return fail(format!("arrow {f} has no inverse")),
            }
        }
        for e in 0..self.pairs.len() {
            let t = self.pairs.tuple(e);
            let (f, g) = (t[0] as usize, t[1] as usize);
            let fg = self.composition.apply(e);
            for h in 0..n {
                if self.d1.apply(h) != self.d0.apply(g) {
                    continue;
                }
                if self.compose(fg, h)? != self.compose(f, self.compose(g, h)?)? {
                    return fail(format!("composition is not associative at ({f}, {g}, {h})"));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn x0(&self) -> &Alg {
        self.d0.cod()
    }

    pub fn x1(&self) -> &Alg {
        self.d0.dom()
    }

    pub fn d0(&self) -> &Homomorphism {
        &self.d0
    }

    pub fn d1(&self) -> &Homomorphism {
        &self.d1
    }

    pub fn s0(&self) -> &Homomorphism {
        &self.s0
    }

    /// The algebra of composable pairs, presented as `(f, g)` tuples.
    pub fn composable_pairs(&self) -> &Limit {
        &self.pairs
    }

    pub fn composition(&self) -> &Homomorphism {
        &self.composition
    }

    /// `f` followed by `g`; fails unless `d₀ f = d₁ g`.
    pub fn compose(&self, f: usize, g: usize) -> Result<usize> {
        self.pairs
            .index_of(&[f as u32, g as u32])
            .map(|e| self.composition.apply(e))
            .ok_or_else(|| {
                SimalError::NotAGroupoid(format!("arrows {f} and {g} are not composable"))
            })
    }

    /// The inverse of each arrow, found by exhaustive solve.
    pub fn inverse(&self, f: usize) -> usize {
        let id = self.s0.apply(self.d1.apply(f));
        (0..self.x1().size())
            .find(|&g| self.compose(f, g).ok() == Some(id))
            .expect("validated groupoids have inverses")
    }

    /// Whether `⟨d₀, d₁⟩` is injective, i.e. the groupoid is an equivalence
    /// relation.
    pub fn is_equivalence_relation(&self) -> bool {
        let n = self.x1().size();
        let mut seen = std::collections::HashSet::with_capacity(n);
        (0..n).all(|f| seen.insert((self.d0.apply(f), self.d1.apply(f))))
    }

    /// The underlying reflexive graph as a 1-truncated simplicial object.
    pub fn graph(&self) -> Result<Sim> {
        Ok(Arc::new(TruncatedSimplicialAlgebra::new(
            self.name.clone(),
            vec![self.x0().clone(), self.x1().clone()],
            vec![vec![self.d0.clone(), self.d1.clone()]],
            vec![vec![self.s0.clone()]],
        )?))
    }
}

fn check_graph(d0: &Homomorphism, d1: &Homomorphism, s0: &Homomorphism) -> Result<()> {
    let fail = |m: &str| Err(SimalError::NotAGroupoid(m.into()));
    if !Arc::ptr_eq(d0.dom(), d1.dom()) && **d0.dom() != **d1.dom() {
        return fail("d0 and d1 have different domains");
    }
    if **d0.cod() != **d1.cod() || **s0.dom() != **d0.cod() || **s0.cod() != **d0.dom() {
        return fail("structure maps do not form a reflexive graph");
    }
    for a in 0..s0.dom().size() {
        if d0.apply(s0.apply(a)) != a || d1.apply(s0.apply(a)) != a {
            return fail("s0 is not a common section of d0 and d1");
        }
    }
    Ok(())
}
