use std::collections::HashSet;

use super::congruence::Congruence;
use super::finite::for_each_tuple;
use crate::budget::limit_budget;
use crate::error::{Result, SimalError};

/// The term-condition commutator `[θ, ψ]`.
///
/// `M(θ, ψ)` is the subalgebra of `A⁴` generated by `(a, a, b, b)` for
/// `a θ b` and `(c, d, c, d)` for `c ψ d`; an element `(x, y, z, w)` reads as
/// the matrix with rows `(x, y)` and `(z, w)`. The commutator is the least
/// `δ` such that `x δ y` implies `z δ w` on all of `M`, reached by iterating
/// that implication from `δ = Δ`.
pub fn tc_commutator(theta: &Congruence, psi: &Congruence) -> Result<Congruence> {
    let alg = theta.on().clone();
    if theta.blocks().len() != psi.blocks().len() || *alg != **psi.on() {
        return Err(SimalError::NotCongruence(
            "commutator of congruences on different algebras".into(),
        ));
    }
    let n = alg.size();
    if theta.is_discrete() || psi.is_discrete() {
        return Ok(Congruence::discrete(&alg));
    }
    let matrices = generate_matrices(theta, psi)?;
    let mut delta = Congruence::discrete(&alg);
    loop {
        let pairs: Vec<(usize, usize)> = matrices
            .iter()
            .filter(|m| delta.related(m[0] as usize, m[1] as usize))
            .map(|m| (m[2] as usize, m[3] as usize))
            .filter(|&(z, w)| !delta.related(z, w))
            .collect();
        if pairs.is_empty() {
            break;
        }
        delta = delta.with_pairs(pairs);
    }
    debug_assert_eq!(delta.blocks().len(), n);
    Ok(delta)
}

fn generate_matrices(theta: &Congruence, psi: &Congruence) -> Result<Vec<[u32; 4]>> {
    let alg = theta.on();
    let n = alg.size() as u64;
    let key = |m: &[u32; 4]| -> u64 {
        ((m[0] as u64 * n + m[1] as u64) * n + m[2] as u64) * n + m[3] as u64
    };
    let mut seen: HashSet<u64> = HashSet::new();
    let mut elems: Vec<[u32; 4]> = Vec::new();
    let push = |m: [u32; 4], seen: &mut HashSet<u64>, elems: &mut Vec<[u32; 4]>| {
        if seen.insert(key(&m)) {
            elems.push(m);
        }
    };
    for a in 0..alg.size() {
        for b in 0..alg.size() {
            if theta.related(a, b) {
                push(
                    [a as u32, a as u32, b as u32, b as u32],
                    &mut seen,
                    &mut elems,
                );
            }
            if psi.related(a, b) {
                push(
                    [a as u32, b as u32, a as u32, b as u32],
                    &mut seen,
                    &mut elems,
                );
            }
        }
    }
    for c in alg.constants() {
        let c = c as u32;
        push([c, c, c, c], &mut seen, &mut elems);
    }
    let budget = limit_budget();
    let ops: Vec<(usize, usize)> = alg
        .signature()
        .ops()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.arity > 0)
        .map(|(i, s)| (i, s.arity))
        .collect();
    let mut old = 0usize;
    let mut args = [Vec::new(), Vec::new(), Vec::new(), Vec::new()];
    while old < elems.len() {
        let cur = elems.len();
        let mut fresh = Vec::new();
        for &(op, k) in &ops {
            for_each_tuple(cur, k, |ix| {
                if ix.iter().all(|&i| i < old) {
                    return;
                }
                let mut m = [0u32; 4];
                for c in 0..4 {
                    args[c].clear();
                    args[c].extend(ix.iter().map(|&i| elems[i][c] as usize));
                    m[c] = alg.apply(op, &args[c]) as u32;
                }
                if seen.insert(key(&m)) {
                    fresh.push(m);
                }
            });
        }
        old = cur;
        elems.extend(fresh);
        if elems.len() > budget {
            return Err(SimalError::BudgetExceeded(format!(
                "term-condition matrices on `{}` exceed {budget}",
                alg.name()
            )));
        }
    }
    Ok(elems)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::corpus::algebras::{cyclic_group, symmetric_group_3};

    #[test]
    fn abelian_groups_have_trivial_commutator() {
        for k in 2..7 {
            let z = Arc::new(cyclic_group(k).unwrap());
            let all = Congruence::total(&z);
            assert!(tc_commutator(&all, &all).unwrap().is_discrete());
        }
    }

    #[test]
    fn commutator_with_discrete_is_discrete() {
        let s3 = Arc::new(symmetric_group_3());
        let all = Congruence::total(&s3);
        let delta = Congruence::discrete(&s3);
        assert!(tc_commutator(&delta, &all).unwrap().is_discrete());
        assert!(tc_commutator(&all, &delta).unwrap().is_discrete());
    }

    /// Oracle: the derived subgroup of S3, computed from commutators
    /// `g h g⁻¹ h⁻¹` with permutation arithmetic independent of the tables.
    #[test]
    fn commutator_of_s3_is_alternating_cosets() {
        let s3 = Arc::new(symmetric_group_3());
        let all = Congruence::total(&s3);
        let c = tc_commutator(&all, &all).unwrap();
        let perms = crate::corpus::algebras::s3_elements();
        let compose = |p: [usize; 3], q: [usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
        let inverse = |p: [usize; 3]| {
            let mut r = [0; 3];
            for i in 0..3 {
                r[p[i]] = i;
            }
            r
        };
        let mut derived = HashSet::new();
        for &g in &perms {
            for &h in &perms {
                derived.insert(compose(compose(g, h), compose(inverse(g), inverse(h))));
            }
        }
        assert_eq!(derived.len(), 3);
        for a in 0..6 {
            for b in 0..6 {
                let quotient = compose(perms[a], inverse(perms[b]));
                assert_eq!(c.related(a, b), derived.contains(&quotient));
            }
        }
    }
}
