use std::sync::Arc;

use super::{SimplicialMorphism, TruncatedSimplicialAlgebra};
use crate::algebra::{Congruence, Homomorphism};
use crate::error::{Result, SimalError};

/// A levelwise family of congruences preserved by all faces and
/// degeneracies; exactly the kernels of levelwise-surjective morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialCongruence {
    levels: Vec<Congruence>,
}

impl SimplicialCongruence {
    pub fn discrete(x: &TruncatedSimplicialAlgebra) -> Self {
        SimplicialCongruence {
            levels: x.levels().iter().map(Congruence::discrete).collect(),
        }
    }

    pub fn kernel(f: &SimplicialMorphism) -> Self {
        SimplicialCongruence {
            levels: f.components().iter().map(Congruence::kernel_pair).collect(),
        }
    }

    /// Validates that the given levelwise congruences are preserved by the
    /// structure maps.
    pub fn new(x: &TruncatedSimplicialAlgebra, levels: Vec<Congruence>) -> Result<Self> {
        let c = SimplicialCongruence { levels };
        if c.levels.len() != x.levels().len() {
            return Err(SimalError::NotCongruence("wrong number of levels".into()));
        }
        if c.close(x) != c {
            return Err(SimalError::NotCongruence(
                "levelwise congruences are not preserved by faces and degeneracies".into(),
            ));
        }
        Ok(c)
    }

    /// The least simplicial congruence containing `self` and the given
    /// pairs `(level, a, b)`.
    pub fn with_pairs(
        &self,
        x: &TruncatedSimplicialAlgebra,
        pairs: &[(usize, usize, usize)],
    ) -> Self {
        let mut levels = self.levels.clone();
        for (n, lvl) in levels.iter_mut().enumerate() {
            let here: Vec<(usize, usize)> = pairs
                .iter()
                .filter(|p| p.0 == n)
                .map(|p| (p.1, p.2))
                .collect();
            if !here.is_empty() {
                *lvl = lvl.with_pairs(here);
            }
        }
        SimplicialCongruence { levels }.close(x)
    }

    /// The simplicial congruence generated by one pair.
    pub fn principal(x: &TruncatedSimplicialAlgebra, level: usize, a: usize, b: usize) -> Self {
        SimplicialCongruence::discrete(x).with_pairs(x, &[(level, a, b)])
    }

    /// Pushes related pairs along faces and degeneracies until stable.
    fn close(&self, x: &TruncatedSimplicialAlgebra) -> Self {
        let top = x.truncation();
        let mut levels = self.levels.clone();
        loop {
            let mut changed = false;
            for n in 0..=top {
                let mut pairs = Vec::new();
                let mut push_images = |theta: &Congruence, maps: &[&Homomorphism]| {
                    for (a, &b) in theta.blocks().iter().enumerate() {
                        if a as u32 != b {
                            for m in maps {
                                pairs.push((m.apply(a), m.apply(b as usize)));
                            }
                        }
                    }
                };
                if n < top {
                    let faces: Vec<&Homomorphism> = (0..=n + 1).map(|i| x.d(n + 1, i)).collect();
                    push_images(&levels[n + 1], &faces);
                }
                if n > 0 {
                    let degs: Vec<&Homomorphism> = (0..n).map(|i| x.s(n - 1, i)).collect();
                    push_images(&levels[n - 1], &degs);
                }
                pairs.retain(|&(a, b)| !levels[n].related(a, b));
                if !pairs.is_empty() {
                    levels[n] = levels[n].with_pairs(pairs);
                    changed = true;
                }
            }
            if !changed {
                return SimplicialCongruence { levels };
            }
        }
    }

    pub fn level(&self, n: usize) -> &Congruence {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[Congruence] {
        &self.levels
    }

    pub fn is_discrete(&self) -> bool {
        self.levels.iter().all(|c| c.is_discrete())
    }

    pub fn le(&self, other: &SimplicialCongruence) -> bool {
        self.levels.iter().zip(&other.levels).all(|(a, b)| a.le(b))
    }

    pub fn meet(&self, other: &SimplicialCongruence) -> Result<Self> {
        let levels = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(a, b)| a.meet(b))
            .collect::<Result<_>>()?;
        Ok(SimplicialCongruence { levels })
    }

    pub fn join(
        &self,
        x: &TruncatedSimplicialAlgebra,
        other: &SimplicialCongruence,
    ) -> Result<Self> {
        let levels = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(a, b)| a.join(b))
            .collect::<Result<_>>()?;
        Ok(SimplicialCongruence { levels }.close(x))
    }

    /// Total number of related pairs over all levels; a cheap size key.
    pub fn weight(&self) -> usize {
        self.levels.iter().map(|c| c.num_pairs()).sum()
    }
}

/// Helper used by the quotient construction: the map induced on classes.
pub(crate) fn induced_on_classes(
    src: &Congruence,
    dst_index: &[u32],
    map: &Homomorphism,
    dom: &crate::algebra::Alg,
    cod: &crate::algebra::Alg,
) -> Homomorphism {
    let classes = src.classes();
    let m = classes
        .iter()
        .map(|c| dst_index[map.apply(c[0])])
        .collect::<Vec<u32>>();
    Homomorphism::trusted(Arc::clone(dom), Arc::clone(cod), m)
}
