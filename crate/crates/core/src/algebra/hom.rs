use std::fmt;
use std::sync::Arc;

use super::finite::{for_each_tuple, Alg};
use crate::error::{Result, SimalError};

/// A structure-preserving map between two algebras of the same signature.
#[derive(Clone)]
pub struct Homomorphism {
    dom: Alg,
    cod: Alg,
    map: Vec<u32>,
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Homomorphism({} -> {}, {:?})",
            self.dom.name(),
            self.cod.name(),
            self.map
        )
    }
}

impl PartialEq for Homomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && *self.dom == *other.dom && *self.cod == *other.cod
    }
}

impl Eq for Homomorphism {}

impl Homomorphism {
    /// Checks the map exhaustively against every operation.
    pub fn new(dom: Alg, cod: Alg, map: Vec<u32>) -> Result<Self> {
        let h = Self::check_shape(dom, cod, map)?;
        h.check_preserves()?;
        Ok(h)
    }

    /// For maps that preserve the operations by construction (projections,
    /// quotient maps, induced maps into limits).
    pub(crate) fn trusted(dom: Alg, cod: Alg, map: Vec<u32>) -> Self {
        debug_assert_eq!(map.len(), dom.size());
        Homomorphism { dom, cod, map }
    }

    /// Builds the map from a function and checks it.
    pub fn from_fn(dom: Alg, cod: Alg, f: impl Fn(usize) -> usize) -> Result<Self> {
        let map = (0..dom.size()).map(|a| f(a) as u32).collect();
        Self::new(dom, cod, map)
    }

    fn check_shape(dom: Alg, cod: Alg, map: Vec<u32>) -> Result<Self> {
        if !dom.same_signature(&cod) {
            return Err(SimalError::SignatureMismatch(format!(
                "`{}` has signature {} but `{}` has {}",
                dom.name(),
                dom.signature(),
                cod.name(),
                cod.signature()
            )));
        }
        if map.len() != dom.size() {
            return Err(SimalError::NotHomomorphism(format!(
                "map has length {} but `{}` has {} elements",
                map.len(),
                dom.name(),
                dom.size()
            )));
        }
        if let Some(&v) = map.iter().find(|&&v| v as usize >= cod.size()) {
            return Err(SimalError::NotHomomorphism(format!(
                "value {v} outside `{}`",
                cod.name()
            )));
        }
        Ok(Homomorphism { dom, cod, map })
    }

    fn check_preserves(&self) -> Result<()> {
        let sig = self.dom.signature().clone();
        let mut image = Vec::new();
        for (op, sym) in sig.ops().iter().enumerate() {
            let mut failure = None;
            for_each_tuple(self.dom.size(), sym.arity, |args| {
                if failure.is_some() {
                    return;
                }
                image.clear();
                image.extend(args.iter().map(|&a| self.map[a] as usize));
                let lhs = self.map[self.dom.apply(op, args)] as usize;
                let rhs = self.cod.apply(op, &image);
                if lhs != rhs {
                    failure = Some(format!(
                        "{}({:?}) maps to {lhs} but {}({:?}) = {rhs}",
                        sym.name, args, sym.name, image
                    ));
                }
            });
            if let Some(msg) = failure {
                return Err(SimalError::NotHomomorphism(msg));
            }
        }
        Ok(())
    }

    pub fn identity(a: &Alg) -> Self {
        Homomorphism::trusted(a.clone(), a.clone(), (0..a.size() as u32).collect())
    }

    pub fn dom(&self) -> &Alg {
        &self.dom
    }

    pub fn cod(&self) -> &Alg {
        &self.cod
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a] as usize
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if !Arc::ptr_eq(&self.cod, &other.dom) && *self.cod != *other.dom {
            return Err(SimalError::SignatureMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.dom.name(),
                self.cod.name(),
                other.dom.name(),
                other.cod.name()
            )));
        }
        let map = self.map.iter().map(|&a| other.map[a as usize]).collect();
        Ok(Homomorphism::trusted(
            self.dom.clone(),
            other.cod.clone(),
            map,
        ))
    }

    /// Same underlying function, ignoring algebra identity.
    pub fn same_map(&self, other: &Homomorphism) -> bool {
        self.map == other.map
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.size()];
        for &v in &self.map {
            hit[v as usize] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.cod.size()];
        for &v in &self.map {
            if std::mem::replace(&mut hit[v as usize], true) {
                return false;
            }
        }
        true
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.size() == self.cod.size() && self.is_injective()
    }

    pub fn image_size(&self) -> usize {
        let mut hit = vec![false; self.cod.size()];
        let mut n = 0;
        for &v in &self.map {
            if !std::mem::replace(&mut hit[v as usize], true) {
                n += 1;
            }
        }
        n
    }

    /// Elements of the domain grouped by image.
    pub fn fibers(&self) -> Vec<Vec<u32>> {
        let mut fibers = vec![Vec::new(); self.cod.size()];
        for (a, &v) in self.map.iter().enumerate() {
            fibers[v as usize].push(a as u32);
        }
        fibers
    }

    /// The same map viewed between other (equal) copies of the algebras.
    pub fn retarget(&self, dom: Alg, cod: Alg) -> Result<Homomorphism> {
        if *dom != *self.dom || *cod != *self.cod {
            return Err(SimalError::SignatureMismatch(
                "retargeting to algebras with different tables".into(),
            ));
        }
        Ok(Homomorphism::trusted(dom, cod, self.map.clone()))
    }
}

/// The subalgebra on `elements` (which must be closed under the operations)
/// together with its inclusion.
pub fn subalgebra(
    alg: &Alg,
    elements: &[usize],
    name: impl Into<String>,
) -> Result<(Alg, Homomorphism)> {
    let mut elems = elements.to_vec();
    elems.sort_unstable();
    elems.dedup();
    let mut pos = vec![u32::MAX; alg.size()];
    for (i, &a) in elems.iter().enumerate() {
        pos[a] = i as u32;
    }
    let name = name.into();
    let mut args = Vec::new();
    let sub = super::finite::FiniteAlgebra::from_fn(
        name.clone(),
        alg.signature().clone(),
        elems.len(),
        alg.maltsev_term().clone(),
        |op, ix| {
            args.clear();
            args.extend(ix.iter().map(|&i| elems[i]));
            let v = pos[alg.apply(op, &args)];
            if v == u32::MAX {
                Err(SimalError::NotHomomorphism(format!(
                    "subset for `{name}` is not closed under operation {op}"
                )))
            } else {
                Ok(v as usize)
            }
        },
    )?;
    let sub = Arc::new(sub);
    let incl = Homomorphism::trusted(
        sub.clone(),
        alg.clone(),
        elems.iter().map(|&a| a as u32).collect(),
    );
    Ok((sub, incl))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::algebras::{cyclic_group, symmetric_group_3};

    #[test]
    fn mod_two_is_a_surjective_homomorphism() {
        let z4 = Arc::new(cyclic_group(4).unwrap());
        let z2 = Arc::new(cyclic_group(2).unwrap());
        let f = Homomorphism::from_fn(z4.clone(), z2.clone(), |a| a % 2).unwrap();
        assert!(f.is_surjective());
        assert!(!f.is_injective());
        assert_eq!(f.fibers(), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        let z4 = Arc::new(cyclic_group(4).unwrap());
        let z2 = Arc::new(cyclic_group(2).unwrap());
        let r = Homomorphism::from_fn(z4, z2, |a| (a / 2) % 2);
        assert!(matches!(r, Err(SimalError::NotHomomorphism(_))));
    }

    #[test]
    fn signature_mismatch_is_rejected() {
        let z2 = Arc::new(cyclic_group(2).unwrap());
        let s3 = Arc::new(symmetric_group_3());
        let r = Homomorphism::from_fn(s3, z2, |_| 0);
        assert!(matches!(r, Err(SimalError::SignatureMismatch(_))));
    }
}
