//! Concrete algebras: cyclic, dihedral and symmetric groups, modules over
//! ℤ_k, and Heyting algebras built from finite posets.

use std::sync::{Arc, LazyLock};

use crate::algebra::{Alg, FiniteAlgebra, Homomorphism, Signature, Term};
use crate::error::{Result, SimalError};

static ABELIAN: LazyLock<(Arc<Signature>, Arc<Term>)> = LazyLock::new(|| {
    let sig = Signature::abelian_group();
    let p = Term::parse("add(add(x,neg(y)),z)", &sig).expect("fixed term parses");
    (Arc::new(sig), Arc::new(p))
});

static GROUP: LazyLock<(Arc<Signature>, Arc<Term>)> = LazyLock::new(|| {
    let sig = Signature::group();
    let p = Term::parse("mul(mul(x,inv(y)),z)", &sig).expect("fixed term parses");
    (Arc::new(sig), Arc::new(p))
});

static HEYTING: LazyLock<(Arc<Signature>, Arc<Term>)> = LazyLock::new(|| {
    let sig = Signature::heyting();
    let p = Term::parse("meet(join(x,z),imp(y,meet(x,z)))", &sig).expect("fixed term parses");
    (Arc::new(sig), Arc::new(p))
});

pub fn abelian_signature() -> Arc<Signature> {
    ABELIAN.0.clone()
}

pub fn group_signature() -> Arc<Signature> {
    GROUP.0.clone()
}

pub fn heyting_signature() -> Arc<Signature> {
    HEYTING.0.clone()
}

fn check_size(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(SimalError::InvalidParameters(format!(
            "carrier size {n} outside 1..={max}"
        )));
    }
    Ok(())
}

/// A group given by its multiplication, in the group signature.
pub fn group_from_mul(
    name: &str,
    n: usize,
    mul: impl Fn(usize, usize) -> usize,
) -> Result<FiniteAlgebra> {
    let unit = (0..n)
        .find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a))
        .ok_or_else(|| SimalError::InvalidParameters(format!("`{name}` has no identity")))?;
    let inv: Vec<u32> = (0..n)
        .map(|a| {
            (0..n)
                .find(|&b| mul(a, b) == unit)
                .map(|b| b as u32)
                .ok_or_else(|| {
                    SimalError::InvalidParameters(format!("`{name}`: {a} has no inverse"))
                })
        })
        .collect::<Result<_>>()?;
    let table = (0..n * n).map(|i| mul(i / n, i % n) as u32).collect();
    let (sig, p) = &*GROUP;
    FiniteAlgebra::new(
        name,
        sig.clone(),
        n,
        vec![table, inv, vec![unit as u32]],
        (**p).clone(),
    )
}

/// An abelian group given by its addition, in the abelian-group signature.
pub fn abelian_from_add(
    name: &str,
    n: usize,
    add: impl Fn(usize, usize) -> usize,
) -> Result<FiniteAlgebra> {
    let zero = (0..n)
        .find(|&e| (0..n).all(|a| add(e, a) == a))
        .ok_or_else(|| SimalError::InvalidParameters(format!("`{name}` has no zero")))?;
    let neg: Vec<u32> = (0..n)
        .map(|a| {
            (0..n)
                .find(|&b| add(a, b) == zero)
                .map(|b| b as u32)
                .ok_or_else(|| {
                    SimalError::InvalidParameters(format!("`{name}`: {a} has no negative"))
                })
        })
        .collect::<Result<_>>()?;
    let table = (0..n * n).map(|i| add(i / n, i % n) as u32).collect();
    let (sig, p) = &*ABELIAN;
    FiniteAlgebra::new(
        name,
        sig.clone(),
        n,
        vec![table, neg, vec![zero as u32]],
        (**p).clone(),
    )
}

/// ℤ_n with `+, −, 0`.
pub fn cyclic_group(n: usize) -> Result<FiniteAlgebra> {
    check_size(n, 64)?;
    abelian_from_add(&format!("Z{n}"), n, |a, b| (a + b) % n)
}

/// ℤ_n written multiplicatively, for use alongside non-abelian groups.
pub fn cyclic_group_multiplicative(n: usize) -> Result<FiniteAlgebra> {
    check_size(n, 64)?;
    group_from_mul(&format!("C{n}"), n, |a, b| (a + b) % n)
}

/// The module ℤ_k^d with elements encoded in base `k` (first coordinate
/// most significant).
pub fn zk_module(k: usize, d: usize) -> Result<FiniteAlgebra> {
    if k < 2 || d == 0 {
        return Err(SimalError::InvalidParameters(
            "zk_module needs k >= 2, d >= 1".into(),
        ));
    }
    let n = k
        .checked_pow(d as u32)
        .filter(|&n| n <= 64)
        .ok_or_else(|| SimalError::InvalidParameters(format!("Z{k}^{d} is too large")))?;
    let digits = move |mut a: usize| {
        let mut v = vec![0; d];
        for i in (0..d).rev() {
            v[i] = a % k;
            a /= k;
        }
        v
    };
    let encode = move |v: &[usize]| v.iter().fold(0, |acc, &x| acc * k + x);
    abelian_from_add(&format!("Z{k}^{d}"), n, |a, b| {
        let (x, y) = (digits(a), digits(b));
        let s: Vec<usize> = x.iter().zip(&y).map(|(p, q)| (p + q) % k).collect();
        encode(&s)
    })
}

/// The dihedral group of order `2m`; `r^i s^j` is encoded as `i + m j`.
pub fn dihedral_group(m: usize) -> Result<FiniteAlgebra> {
    check_size(m, 32)?;
    group_from_mul(&format!("D{m}"), 2 * m, |a, b| {
        let (i1, j1) = (a % m, a / m);
        let (i2, j2) = (b % m, b / m);
        let i = if j1 == 0 {
            (i1 + i2) % m
        } else {
            (i1 + m - i2) % m
        };
        i + m * ((j1 + j2) % 2)
    })
}

/// Permutations of `{0,1,2}` in the element order used by
/// [`symmetric_group_3`]: the three rotations first, then the three
/// transpositions.
pub fn s3_elements() -> [[usize; 3]; 6] {
    [
        [0, 1, 2],
        [1, 2, 0],
        [2, 0, 1],
        [1, 0, 2],
        [2, 1, 0],
        [0, 2, 1],
    ]
}

/// S₃ with `(p·q)(i) = p(q(i))`.
pub fn symmetric_group_3() -> FiniteAlgebra {
    let perms = s3_elements();
    let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).expect("closed");
    group_from_mul("S3", 6, |a, b| {
        let (p, q) = (perms[a], perms[b]);
        index([p[q[0]], p[q[1]], p[q[2]]])
    })
    .expect("S3 is a group")
}

/// The sign map `S₃ → C₂`.
pub fn sign_map(s3: &Alg, c2: &Alg) -> Homomorphism {
    Homomorphism::from_fn(s3.clone(), c2.clone(), |a| usize::from(a >= 3))
        .expect("sign is a homomorphism")
}

/// The one-element algebra of a signature.
pub fn trivial_algebra(sig: Arc<Signature>, maltsev: Arc<Term>) -> FiniteAlgebra {
    FiniteAlgebra::from_fn("1", sig, 1, maltsev, |_, _| Ok(0)).expect("one-element tables fit")
}

/// The one-element algebra with the same signature and term as `like`.
pub fn terminal_like(like: &Alg) -> Alg {
    Arc::new(trivial_algebra(
        like.signature().clone(),
        like.maltsev_term().clone(),
    ))
}

/// The Heyting algebra of a finite lattice, given by generating pairs
/// `a ≤ b` of its order (the reflexive-transitive closure is taken).
///
/// Meets and joins are greatest lower and least upper bounds; `a → b` is
/// the largest `c` with `c ∧ a ≤ b`. Fails if the order is not a lattice
/// or some implication has no largest witness (the lattice is not
/// distributive).
pub fn heyting_from_poset(name: &str, n: usize, order: &[(usize, usize)]) -> Result<FiniteAlgebra> {
    check_size(n, 16)?;
    let mut le = vec![vec![false; n]; n];
    for (a, row) in le.iter_mut().enumerate() {
        row[a] = true;
    }
    for &(a, b) in order {
        if a >= n || b >= n {
            return Err(SimalError::InvalidParameters(format!(
                "pair ({a}, {b}) out of range"
            )));
        }
        le[a][b] = true;
    }
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                if le[a][k] && le[k][b] {
                    le[a][b] = true;
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && le[a][b] && le[b][a] {
                return Err(SimalError::InvalidParameters(format!(
                    "order is not antisymmetric at ({a}, {b})"
                )));
            }
        }
    }
    let greatest = |set: &[usize]| set.iter().copied().find(|&g| set.iter().all(|&c| le[c][g]));
    let least = |set: &[usize]| set.iter().copied().find(|&g| set.iter().all(|&c| le[g][c]));
    let mut meet = vec![0u32; n * n];
    let mut join = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            let lower: Vec<usize> = (0..n).filter(|&c| le[c][a] && le[c][b]).collect();
            let upper: Vec<usize> = (0..n).filter(|&c| le[a][c] && le[b][c]).collect();
            meet[a * n + b] = greatest(&lower)
                .ok_or_else(|| SimalError::InvalidParameters(format!("{a} and {b} have no meet")))?
                as u32;
            join[a * n + b] = least(&upper)
                .ok_or_else(|| SimalError::InvalidParameters(format!("{a} and {b} have no join")))?
                as u32;
        }
    }
    let mut imp = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            let below: Vec<usize> = (0..n)
                .filter(|&c| le[meet[c * n + a] as usize][b])
                .collect();
            imp[a * n + b] = greatest(&below).ok_or_else(|| {
                SimalError::InvalidParameters(format!("{a} -> {b} has no largest witness"))
            })? as u32;
        }
    }
    let all: Vec<usize> = (0..n).collect();
    let bot = least(&all).expect("a lattice has a bottom") as u32;
    let top = greatest(&all).expect("a lattice has a top") as u32;
    let (sig, p) = &*HEYTING;
    FiniteAlgebra::new(
        name,
        sig.clone(),
        n,
        vec![meet, join, imp, vec![bot], vec![top]],
        (**p).clone(),
    )
}

/// The chain `0 < 1 < .. < n-1`.
pub fn heyting_chain(n: usize) -> Result<FiniteAlgebra> {
    let order: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    heyting_from_poset(&format!("Chain{n}"), n, &order)
}

/// The four-element Boolean lattice `0 < 1, 2 < 3`.
pub fn heyting_diamond() -> FiniteAlgebra {
    heyting_from_poset("Diamond", 4, &[(0, 1), (0, 2), (1, 3), (2, 3)])
        .expect("the diamond is Heyting")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_term_is_maltsev() {
        let z4 = cyclic_group(4).unwrap();
        assert_eq!(z4.size(), 4);
        assert_eq!(z4.maltsev(3, 1, 2), 0);
        assert!(z4.validate_maltsev().is_ok());
    }

    /// Exhaustive check of the Heyting term on the diamond, computed with
    /// an independent set model: elements are subsets of {a, b}.
    #[test]
    fn diamond_heyting_term_over_all_triples() {
        let d = heyting_diamond();
        // 0 = {}, 1 = {a}, 2 = {b}, 3 = {a, b}
        let set = |e: usize| [0u8, 1, 2, 3][e];
        let elem = |s: u8| [0usize, 1, 2, 3][s as usize];
        let mut triples = 0;
        for x in 0..4 {
            for y in 0..4 {
                for z in 0..4 {
                    let (sx, sy, sz) = (set(x), set(y), set(z));
                    // (x ∨ z) ∧ (y → (x ∧ z)) with → as complement-union
                    let expected = elem((sx | sz) & ((!sy & 3) | (sx & sz)));
                    assert_eq!(d.maltsev(x, y, z), expected);
                    triples += 1;
                }
            }
        }
        assert_eq!(triples, 64);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(d.maltsev(x, y, y), x);
                assert_eq!(d.maltsev(x, x, y), y);
            }
        }
    }

    #[test]
    fn two_chain_is_heyting() {
        let c = heyting_chain(2).unwrap();
        assert_eq!(c.size(), 2);
        assert!(c.validate_maltsev().is_ok());
    }

    #[test]
    fn pentagon_is_not_heyting() {
        // N5: 0 < a < c < 1, 0 < b < 1
        let r = heyting_from_poset("N5", 5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]);
        assert!(matches!(r, Err(SimalError::InvalidParameters(_))));
    }

    #[test]
    fn group_orders() {
        assert_eq!(dihedral_group(4).unwrap().size(), 8);
        assert_eq!(symmetric_group_3().size(), 6);
        assert_eq!(zk_module(2, 2).unwrap().size(), 4);
    }
}
