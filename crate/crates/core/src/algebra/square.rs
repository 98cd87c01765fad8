use serde::Serialize;

use super::congruence::Congruence;
use super::hom::Homomorphism;
use super::limit::pullback_size;
use crate::error::{Result, SimalError};

/// Outcome of testing a commutative square of surjections
///
/// ```text
///   X --f--> Y
///   |g       |h
///   v        v
///   Z --j--> W
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleExtensionReport {
    /// `⟨f, g⟩: X → Y ×_W Z` is surjective.
    pub comparison_surjective: bool,
    /// `f(Eq[g]) = Eq[h]`.
    pub image_criterion: bool,
    pub pullback_size: usize,
    pub comparison_image_size: usize,
}

impl DoubleExtensionReport {
    pub fn holds(&self) -> bool {
        self.comparison_surjective
    }
}

/// Decides whether the square is a double extension by counting the image
/// of the comparison map into the pullback, and independently by comparing
/// `f(Eq[g])` with `Eq[h]`. A disagreement is reported as a property
/// violation.
pub fn is_double_extension(
    f: &Homomorphism,
    g: &Homomorphism,
    h: &Homomorphism,
    j: &Homomorphism,
) -> Result<DoubleExtensionReport> {
    let shapes = *f.dom() == *g.dom()
        && *f.cod() == *h.dom()
        && *g.cod() == *j.dom()
        && *h.cod() == *j.cod();
    if !shapes {
        return Err(SimalError::NotCommuting("maps do not form a square".into()));
    }
    for x in 0..f.dom().size() {
        if h.apply(f.apply(x)) != j.apply(g.apply(x)) {
            return Err(SimalError::NotCommuting(format!(
                "h(f({x})) = {} but j(g({x})) = {}",
                h.apply(f.apply(x)),
                j.apply(g.apply(x))
            )));
        }
    }
    for (name, m) in [("f", f), ("g", g), ("h", h), ("j", j)] {
        if !m.is_surjective() {
            return Err(SimalError::NotRegularEpi(format!(
                "{name}: {} -> {}",
                m.dom().name(),
                m.cod().name()
            )));
        }
    }
    let total = pullback_size(h, j);
    let mut pairs: Vec<u64> = (0..f.dom().size())
        .map(|x| (f.apply(x) as u64) * (g.cod().size() as u64) + g.apply(x) as u64)
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    let comparison_surjective = pairs.len() == total;
    let image_criterion = Congruence::kernel_pair(g).image(f)? == Congruence::kernel_pair(h);
    if comparison_surjective != image_criterion {
        return Err(SimalError::PropertyViolation(format!(
            "double-extension criteria disagree on square over `{}`: comparison {} vs image {}",
            f.dom().name(),
            comparison_surjective,
            image_criterion
        )));
    }
    Ok(DoubleExtensionReport {
        comparison_surjective,
        image_criterion,
        pullback_size: total,
        comparison_image_size: pairs.len(),
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::limit::product;
    use crate::corpus::algebras::{cyclic_group, trivial_algebra};

    #[test]
    fn identity_square() {
        let z4 = Arc::new(cyclic_group(4).unwrap());
        let id = Homomorphism::identity(&z4);
        assert!(is_double_extension(&id, &id, &id, &id).unwrap().holds());
    }

    #[test]
    fn equal_legs_over_identity_hit_the_diagonal() {
        let z4 = Arc::new(cyclic_group(4).unwrap());
        let z2 = Arc::new(cyclic_group(2).unwrap());
        let f = Homomorphism::from_fn(z4, z2.clone(), |a| a % 2).unwrap();
        let id = Homomorphism::identity(&z2);
        // the pullback of the identity with itself is the diagonal, which
        // <f, f> covers
        let r = is_double_extension(&f, &f, &id, &id).unwrap();
        assert!(r.holds());
        assert_eq!(r.pullback_size, 2);
        // over the terminal algebra the pullback is all of Z2 x Z2
        let one = Arc::new(trivial_algebra(
            z2.signature().clone(),
            z2.maltsev_term().clone(),
        ));
        let bang = Homomorphism::from_fn(z2.clone(), one, |_| 0).unwrap();
        let r = is_double_extension(&f, &f, &bang, &bang).unwrap();
        assert!(!r.holds());
        assert_eq!((r.pullback_size, r.comparison_image_size), (4, 2));
    }

    /// A downward-split square: X = Z4 x Z2 over Y = Z4 with section
    /// y ↦ (y, 0), and Z = Z2 x Z2 over W = Z2 with section w ↦ (w, 0).
    #[test]
    fn split_square_is_a_double_extension() {
        let z4 = Arc::new(cyclic_group(4).unwrap());
        let z2 = Arc::new(cyclic_group(2).unwrap());
        let x = product(&[z4.clone(), z2.clone()]).unwrap();
        let z = product(&[z2.clone(), z2.clone()]).unwrap();
        let f = x.projection(0).clone();
        let g = Homomorphism::from_fn(x.alg().clone(), z.alg().clone(), |e| {
            let t = x.tuple(e);
            z.index_of(&[t[0] % 2, t[1]]).unwrap()
        })
        .unwrap();
        let h = Homomorphism::from_fn(z4.clone(), z2.clone(), |a| a % 2).unwrap();
        let j = z.projection(0).clone();
        // sections commute with the horizontal maps
        let s = Homomorphism::from_fn(z4.clone(), x.alg().clone(), |y| {
            x.index_of(&[y as u32, 0]).unwrap()
        })
        .unwrap();
        let t = Homomorphism::from_fn(z2.clone(), z.alg().clone(), |w| {
            z.index_of(&[w as u32, 0]).unwrap()
        })
        .unwrap();
        for y in 0..4 {
            assert_eq!(f.apply(s.apply(y)), y);
            assert_eq!(g.apply(s.apply(y)), t.apply(h.apply(y)));
        }
        let r = is_double_extension(&f, &g, &h, &j).unwrap();
        assert!(r.holds() && r.image_criterion);
        // oracle: enumerate Y x_W Z directly
        let mut expected = 0;
        for y in 0..4 {
            for zz in 0..4 {
                if h.apply(y) == j.apply(zz) {
                    expected += 1;
                }
            }
        }
        assert_eq!(r.pullback_size, expected);
    }

    #[test]
    fn non_commuting_square_is_rejected() {
        let z2 = Arc::new(cyclic_group(2).unwrap());
        let id = Homomorphism::identity(&z2);
        let zero = Homomorphism::from_fn(z2.clone(), z2.clone(), |_| 0).unwrap();
        let r = is_double_extension(&id, &id, &id, &zero);
        assert!(matches!(r, Err(SimalError::NotCommuting(_))));
    }
}
