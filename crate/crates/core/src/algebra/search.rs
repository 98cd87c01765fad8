//! Enumeration of homomorphisms by extension from a generating set.

use super::finite::{for_each_tuple, Alg};
use super::hom::Homomorphism;
use crate::error::{Result, SimalError};

/// Extends `gens[i] ↦ images[i]` to a homomorphism, if one exists.
///
/// The graph of the extension is the subalgebra of `dom × cod` generated by
/// the given pairs and the constants; it is a function exactly when no
/// element receives two images, and then it is total because `gens`
/// generates `dom`.
pub fn extend_from_generators(
    dom: &Alg,
    cod: &Alg,
    gens: &[usize],
    images: &[usize],
) -> Option<Homomorphism> {
    let n = dom.size();
    let mut map = vec![u32::MAX; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let assign = |a: usize, v: usize, map: &mut Vec<u32>, order: &mut Vec<usize>| -> bool {
        if map[a] == u32::MAX {
            map[a] = v as u32;
            order.push(a);
            true
        } else {
            map[a] as usize == v
        }
    };
    let sig = dom.signature();
    for (op, sym) in sig.ops().iter().enumerate() {
        if sym.arity == 0 && !assign(dom.apply(op, &[]), cod.apply(op, &[]), &mut map, &mut order) {
            return None;
        }
    }
    for (&g, &v) in gens.iter().zip(images) {
        if !assign(g, v, &mut map, &mut order) {
            return None;
        }
    }
    let mut old = 0;
    let mut args = Vec::new();
    let mut iargs = Vec::new();
    while old < order.len() {
        let cur = order.len();
        let mut ok = true;
        for (op, sym) in sig.ops().iter().enumerate() {
            if sym.arity == 0 {
                continue;
            }
            for_each_tuple(cur, sym.arity, |ix| {
                if !ok || ix.iter().all(|&i| i < old) {
                    return;
                }
                args.clear();
                iargs.clear();
                for &i in ix {
                    args.push(order[i]);
                    iargs.push(map[order[i]] as usize);
                }
                let a = dom.apply(op, &args);
                let v = cod.apply(op, &iargs);
                if map[a] == u32::MAX {
                    map[a] = v as u32;
                    order.push(a);
                } else if map[a] as usize != v {
                    ok = false;
                }
            });
            if !ok {
                return None;
            }
        }
        old = cur;
    }
    if order.len() != n {
        return None;
    }
    Some(Homomorphism::trusted(dom.clone(), cod.clone(), map))
}

/// Every homomorphism `dom -> cod`, in lexicographic order of generator
/// images. Fails with `BudgetExceeded` if more than `limit` candidate
/// assignments would have to be tried.
pub fn all_homomorphisms(dom: &Alg, cod: &Alg, limit: usize) -> Result<Vec<Homomorphism>> {
    if !dom.same_signature(cod) {
        return Err(SimalError::SignatureMismatch(format!(
            "`{}` and `{}`",
            dom.name(),
            cod.name()
        )));
    }
    let gens = dom.generating_set();
    let m = cod.size();
    let mut candidates = 1usize;
    for _ in &gens {
        candidates = candidates.saturating_mul(m);
    }
    if candidates > limit {
        return Err(SimalError::BudgetExceeded(format!(
            "{candidates} generator assignments from `{}` to `{}`",
            dom.name(),
            cod.name()
        )));
    }
    let mut out = Vec::new();
    if m == 0 {
        return Ok(out);
    }
    for_each_tuple(m, gens.len(), |images| {
        if let Some(h) = extend_from_generators(dom, cod, &gens, images) {
            out.push(h);
        }
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::finite::for_each_tuple;
    use crate::corpus::algebras::{cyclic_group, cyclic_group_multiplicative, symmetric_group_3};

    /// Brute force over all functions.
    fn brute_force(dom: &Alg, cod: &Alg) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for_each_tuple(cod.size(), dom.size(), |m| {
            let m: Vec<u32> = m.iter().map(|&v| v as u32).collect();
            if Homomorphism::new(dom.clone(), cod.clone(), m.clone()).is_ok() {
                out.push(m);
            }
        });
        out.sort();
        out
    }

    #[test]
    fn matches_brute_force() {
        let cases = [
            (
                Arc::new(cyclic_group(4).unwrap()),
                Arc::new(cyclic_group(2).unwrap()),
            ),
            (
                Arc::new(cyclic_group(6).unwrap()),
                Arc::new(cyclic_group(4).unwrap()),
            ),
            (
                Arc::new(cyclic_group(4).unwrap()),
                Arc::new(cyclic_group(4).unwrap()),
            ),
        ];
        for (a, b) in cases {
            let mut found: Vec<Vec<u32>> = all_homomorphisms(&a, &b, 1 << 20)
                .unwrap()
                .into_iter()
                .map(|h| h.map().to_vec())
                .collect();
            found.sort();
            assert_eq!(found, brute_force(&a, &b));
        }
    }

    #[test]
    fn s3_to_z2_has_two_homomorphisms() {
        let s3 = Arc::new(symmetric_group_3());
        let z2 = Arc::new(cyclic_group_multiplicative(2).unwrap());
        let homs = all_homomorphisms(&s3, &z2, 1 << 20).unwrap();
        assert_eq!(homs.len(), 2);
        assert_eq!(homs.len(), brute_force(&s3, &z2).len());
    }
}
