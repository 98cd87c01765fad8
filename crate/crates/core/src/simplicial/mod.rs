//! Truncated simplicial algebras and their morphisms.
//!
//! Faces are indexed as `d(n, i): X_n → X_{n-1}` and degeneracies as
//! `s(n, i): X_n → X_{n+1}`.

mod congruence;
mod construct;
mod identities;
mod kernel;

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Alg, Congruence, Homomorphism};
use crate::error::{Result, SimalError};

pub use congruence::SimplicialCongruence;
pub use construct::{
    constant, coskeleton, decalage, kernel_pair_object, levelwise_product, levelwise_pullback,
    nerve, quotient, sk1_module_variety, subobject, Nerve, Pullback,
};
pub use identities::{
    face_squares, meet_image_identities, surjection_meet_images, FaceSquare, MeetImage,
};
pub use kernel::{
    exactness_check, horn, kan_check, kan_fibration_check, simplicial_kernel, KanEntry, KanReport,
    SimplicialKernel,
};

pub type Sim = Arc<TruncatedSimplicialAlgebra>;

#[derive(Clone)]
pub struct TruncatedSimplicialAlgebra {
    name: String,
    levels: Vec<Alg>,
    faces: Vec<Vec<Homomorphism>>,
    degeneracies: Vec<Vec<Homomorphism>>,
}

impl fmt::Debug for TruncatedSimplicialAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<usize> = self.levels.iter().map(|l| l.size()).collect();
        write!(f, "Simplicial({}, sizes {:?})", self.name, sizes)
    }
}

impl TruncatedSimplicialAlgebra {
    /// Validates every face and degeneracy as a homomorphism and then every
    /// simplicial identity that fits inside the truncation.
    pub fn new(
        name: impl Into<String>,
        levels: Vec<Alg>,
        faces: Vec<Vec<Homomorphism>>,
        degeneracies: Vec<Vec<Homomorphism>>,
    ) -> Result<Self> {
        let x = Self::assemble(name.into(), levels, faces, degeneracies)?;
        for (n, fs) in x.faces.iter().enumerate() {
            for f in fs {
                Homomorphism::new(f.dom().clone(), f.cod().clone(), f.map().to_vec()).map_err(
                    |e| {
                        SimalError::MalformedSimplicial(format!("face out of level {}: {e}", n + 1))
                    },
                )?;
            }
        }
        for (n, ss) in x.degeneracies.iter().enumerate() {
            for s in ss {
                Homomorphism::new(s.dom().clone(), s.cod().clone(), s.map().to_vec()).map_err(
                    |e| {
                        SimalError::MalformedSimplicial(format!("degeneracy out of level {n}: {e}"))
                    },
                )?;
            }
        }
        x.check_identities()?;
        Ok(x)
    }

    /// For structure maps that are homomorphisms by construction; the
    /// simplicial identities are still checked.
    pub(crate) fn trusted(
        name: impl Into<String>,
        levels: Vec<Alg>,
        faces: Vec<Vec<Homomorphism>>,
        degeneracies: Vec<Vec<Homomorphism>>,
    ) -> Result<Self> {
        let x = Self::assemble(name.into(), levels, faces, degeneracies)?;
        x.check_identities()?;
        Ok(x)
    }

    fn assemble(
        name: String,
        levels: Vec<Alg>,
        faces: Vec<Vec<Homomorphism>>,
        degeneracies: Vec<Vec<Homomorphism>>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(SimalError::MalformedSimplicial(msg));
        if levels.len() < 2 {
            return bad("truncation must be at least 1".into());
        }
        let top = levels.len() - 1;
        if faces.len() != top || degeneracies.len() != top {
            return bad(format!(
                "truncation {top} needs {top} face and degeneracy levels, got {} and {}",
                faces.len(),
                degeneracies.len()
            ));
        }
        if let Some(l) = levels.iter().find(|l| !l.same_signature(&levels[0])) {
            return Err(SimalError::SignatureMismatch(format!(
                "level `{}` differs in signature from `{}`",
                l.name(),
                levels[0].name()
            )));
        }
        for n in 1..=top {
            if faces[n - 1].len() != n + 1 {
                return bad(format!("level {n} needs {} faces", n + 1));
            }
            for (i, f) in faces[n - 1].iter().enumerate() {
                if **f.dom() != *levels[n] || **f.cod() != *levels[n - 1] {
                    return bad(format!("face d_{i} out of level {n} has wrong endpoints"));
                }
            }
        }
        for n in 0..top {
            if degeneracies[n].len() != n + 1 {
                return bad(format!("level {n} needs {} degeneracies", n + 1));
            }
            for (i, s) in degeneracies[n].iter().enumerate() {
                if **s.dom() != *levels[n] || **s.cod() != *levels[n + 1] {
                    return bad(format!(
                        "degeneracy s_{i} out of level {n} has wrong endpoints"
                    ));
                }
            }
        }
        Ok(TruncatedSimplicialAlgebra {
            name,
            levels,
            faces,
            degeneracies,
        })
    }

    fn check_identities(&self) -> Result<()> {
        let top = self.truncation();
        let violated = |level: usize, identity: String, witness: usize| {
            Err(SimalError::IdentityViolated {
                level,
                identity,
                witness,
            })
        };
        // d_i d_j = d_{j-1} d_i for i < j, on X_n
        for n in 2..=top {
            for j in 0..=n {
                for i in 0..j {
                    for x in 0..self.levels[n].size() {
                        let lhs = self.d(n - 1, i).apply(self.d(n, j).apply(x));
                        let rhs = self.d(n - 1, j - 1).apply(self.d(n, i).apply(x));
                        if lhs != rhs {
                            return violated(n, format!("d{i} d{j} = d{} d{i}", j - 1), x);
                        }
                    }
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i <= j, on X_n with n + 2 <= top
        for n in 0..top.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    for x in 0..self.levels[n].size() {
                        let lhs = self.s(n + 1, i).apply(self.s(n, j).apply(x));
                        let rhs = self.s(n + 1, j + 1).apply(self.s(n, i).apply(x));
                        if lhs != rhs {
                            return violated(n, format!("s{i} s{j} = s{} s{i}", j + 1), x);
                        }
                    }
                }
            }
        }
        // mixed identities, on X_n with n + 1 <= top
        for n in 0..top {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    for x in 0..self.levels[n].size() {
                        let lhs = self.d(n + 1, i).apply(self.s(n, j).apply(x));
                        let (rhs, name) = if i < j {
                            (
                                self.s(n - 1, j - 1).apply(self.d(n, i).apply(x)),
                                format!("d{i} s{j} = s{} d{i}", j - 1),
                            )
                        } else if i == j || i == j + 1 {
                            (x, format!("d{i} s{j} = 1"))
                        } else {
                            (
                                self.s(n - 1, j).apply(self.d(n, i - 1).apply(x)),
                                format!("d{i} s{j} = s{j} d{}", i - 1),
                            )
                        };
                        if lhs != rhs {
                            return violated(n, name, x);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(&self, name: impl Into<String>) -> Self {
        TruncatedSimplicialAlgebra {
            name: name.into(),
            ..self.clone()
        }
    }

    pub fn truncation(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &Alg {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[Alg] {
        &self.levels
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.size()).collect()
    }

    /// `d_i: X_n → X_{n-1}`.
    pub fn d(&self, n: usize, i: usize) -> &Homomorphism {
        &self.faces[n - 1][i]
    }

    /// `s_i: X_n → X_{n+1}`.
    pub fn s(&self, n: usize, i: usize) -> &Homomorphism {
        &self.degeneracies[n][i]
    }

    pub fn faces(&self) -> &[Vec<Homomorphism>] {
        &self.faces
    }

    pub fn degeneracies(&self) -> &[Vec<Homomorphism>] {
        &self.degeneracies
    }

    /// `D_i` on `X_n`, the kernel pair of `d_i`.
    pub fn face_kernel(&self, n: usize, i: usize) -> Congruence {
        Congruence::kernel_pair(self.d(n, i))
    }

    /// `D_i ∧ D_j` on `X_n`.
    pub fn face_meet(&self, n: usize, i: usize, j: usize) -> Congruence {
        let labels: Vec<(u32, u32)> = self
            .d(n, i)
            .map()
            .iter()
            .zip(self.d(n, j).map())
            .map(|(&a, &b)| (a, b))
            .collect();
        Congruence::trusted_from_labels(self.levels[n].clone(), &labels)
    }

    /// The first `m + 1` levels.
    pub fn truncate(&self, m: usize) -> Result<TruncatedSimplicialAlgebra> {
        if m == 0 || m > self.truncation() {
            return Err(SimalError::InvalidParameters(format!(
                "cannot truncate `{}` at {m}",
                self.name
            )));
        }
        Ok(TruncatedSimplicialAlgebra {
            name: self.name.clone(),
            levels: self.levels[..=m].to_vec(),
            faces: self.faces[..m].to_vec(),
            degeneracies: self.degeneracies[..m].to_vec(),
        })
    }

    /// Whether this has the same levels and structure maps as `other`.
    pub fn same_structure(&self, other: &TruncatedSimplicialAlgebra) -> bool {
        self.levels.len() == other.levels.len()
            && self
                .levels
                .iter()
                .zip(&other.levels)
                .all(|(a, b)| **a == **b)
            && self
                .faces
                .iter()
                .flatten()
                .zip(other.faces.iter().flatten())
                .all(|(f, g)| f.same_map(g))
            && self
                .degeneracies
                .iter()
                .flatten()
                .zip(other.degeneracies.iter().flatten())
                .all(|(f, g)| f.same_map(g))
    }
}

/// A levelwise family of homomorphisms commuting with faces and
/// degeneracies.
#[derive(Clone, Debug)]
pub struct SimplicialMorphism {
    dom: Sim,
    cod: Sim,
    components: Vec<Homomorphism>,
}

impl SimplicialMorphism {
    /// Validates each component as a homomorphism and the commuting squares.
    pub fn new(dom: Sim, cod: Sim, components: Vec<Homomorphism>) -> Result<Self> {
        for c in &components {
            Homomorphism::new(c.dom().clone(), c.cod().clone(), c.map().to_vec())?;
        }
        Self::trusted(dom, cod, components)
    }

    /// Checks endpoints and commuting squares only.
    pub(crate) fn trusted(dom: Sim, cod: Sim, components: Vec<Homomorphism>) -> Result<Self> {
        let m = SimplicialMorphism {
            dom,
            cod,
            components,
        };
        m.check()?;
        Ok(m)
    }

    fn check(&self) -> Result<()> {
        let top = self.dom.truncation();
        if self.cod.truncation() != top || self.components.len() != top + 1 {
            return Err(SimalError::MalformedSimplicial(
                "morphism between objects of different truncation".into(),
            ));
        }
        for (n, c) in self.components.iter().enumerate() {
            if **c.dom() != **self.dom.level(n) || **c.cod() != **self.cod.level(n) {
                return Err(SimalError::MalformedSimplicial(format!(
                    "component {n} has wrong endpoints"
                )));
            }
        }
        for n in 1..=top {
            for i in 0..=n {
                for x in 0..self.dom.level(n).size() {
                    let a = self.components[n - 1].apply(self.dom.d(n, i).apply(x));
                    let b = self.cod.d(n, i).apply(self.components[n].apply(x));
                    if a != b {
                        return Err(SimalError::NotHomomorphism(format!(
                            "component {n} does not commute with d{i} at {x}"
                        )));
                    }
                }
            }
        }
        for n in 0..top {
            for i in 0..=n {
                for x in 0..self.dom.level(n).size() {
                    let a = self.components[n + 1].apply(self.dom.s(n, i).apply(x));
                    let b = self.cod.s(n, i).apply(self.components[n].apply(x));
                    if a != b {
                        return Err(SimalError::NotHomomorphism(format!(
                            "component {n} does not commute with s{i} at {x}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(x: &Sim) -> Self {
        SimplicialMorphism {
            dom: x.clone(),
            cod: x.clone(),
            components: x.levels().iter().map(Homomorphism::identity).collect(),
        }
    }

    pub fn dom(&self) -> &Sim {
        &self.dom
    }

    pub fn cod(&self) -> &Sim {
        &self.cod
    }

    pub fn component(&self, n: usize) -> &Homomorphism {
        &self.components[n]
    }

    pub fn components(&self) -> &[Homomorphism] {
        &self.components
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMorphism) -> Result<SimplicialMorphism> {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.then(b))
            .collect::<Result<_>>()?;
        Ok(SimplicialMorphism {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            components,
        })
    }

    /// First level whose component is not surjective.
    pub fn first_non_surjective_level(&self) -> Option<usize> {
        self.components.iter().position(|c| !c.is_surjective())
    }

    pub fn is_levelwise_surjective(&self) -> bool {
        self.first_non_surjective_level().is_none()
    }

    pub fn is_levelwise_bijective(&self) -> bool {
        self.components.iter().all(|c| c.is_bijective())
    }

    pub fn require_levelwise_surjective(&self) -> Result<()> {
        match self.first_non_surjective_level() {
            Some(level) => Err(SimalError::NotLevelwiseSurjective { level }),
            None => Ok(()),
        }
    }

    /// `F_n`, the kernel pair of the component at level `n`.
    pub fn kernel(&self, n: usize) -> Congruence {
        Congruence::kernel_pair(&self.components[n])
    }

    pub fn truncate(&self, m: usize) -> Result<SimplicialMorphism> {
        Ok(SimplicialMorphism {
            dom: Arc::new(self.dom.truncate(m)?),
            cod: Arc::new(self.cod.truncate(m)?),
            components: self.components[..=m].to_vec(),
        })
    }
}
