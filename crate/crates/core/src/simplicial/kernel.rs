//! Simplicial kernels, horn objects and the Kan conditions.

use serde::Serialize;

use super::{SimplicialMorphism, TruncatedSimplicialAlgebra};
use crate::algebra::{finite_limit, FiniteDiagram, Homomorphism, Limit};
use crate::error::{Result, SimalError};

/// A limit of compatible families of `(n-1)`-simplices together with the
/// canonical comparison map out of `X_n`.
#[derive(Clone, Debug)]
pub struct SimplicialKernel {
    pub n: usize,
    /// Index of the omitted face (`None` for the full kernel `K_n`).
    pub omitted: Option<usize>,
    /// Tuples indexed by the face positions in `faces`.
    pub limit: Limit,
    /// Face positions `0..=n` present in the tuples, in order.
    pub faces: Vec<usize>,
    /// `x ↦ (d_i x)_{i ∈ faces}`.
    pub comparison: Homomorphism,
}

impl SimplicialKernel {
    pub fn size(&self) -> usize {
        self.limit.len()
    }

    pub fn comparison_surjective(&self) -> bool {
        self.comparison.is_surjective()
    }
}

fn check_level(x: &TruncatedSimplicialAlgebra, n: usize) -> Result<()> {
    if n < 2 || n > x.truncation() {
        return Err(SimalError::InvalidParameters(format!(
            "level {n} outside 2..={} for `{}`",
            x.truncation(),
            x.name()
        )));
    }
    Ok(())
}

/// The limit of `(n+1)`-tuples (minus position `omit`) of `(n-1)`-simplices
/// with `d_i x_j = d_{j-1} x_i` for `i < j`. Level `n` itself is not used,
/// so this also works one level above the truncation.
pub(crate) fn kernel_limit(
    x: &TruncatedSimplicialAlgebra,
    n: usize,
    omit: Option<usize>,
) -> Result<(Limit, Vec<usize>)> {
    let below = x.level(n - 1);
    let base = x.level(n - 2);
    let faces: Vec<usize> = (0..=n).filter(|&j| Some(j) != omit).collect();
    let mut d = FiniteDiagram::new();
    let mut node = vec![usize::MAX; n + 1];
    for &j in &faces {
        node[j] = d.add_node(below.clone());
    }
    for (a, &i) in faces.iter().enumerate() {
        for &j in &faces[a + 1..] {
            let v = d.add_node(base.clone());
            d.add_arrow(node[j], v, x.d(n - 1, i).clone())?;
            d.add_arrow(node[i], v, x.d(n - 1, j - 1).clone())?;
        }
    }
    let cone: Vec<usize> = faces.iter().map(|&j| node[j]).collect();
    let name = match omit {
        None => format!("K{n}({})", x.name()),
        Some(k) => format!("Horn{n}_{k}({})", x.name()),
    };
    let limit = finite_limit(&d, &cone, name).map_err(|e| match e {
        SimalError::LevelTooLarge { size, budget, .. } => SimalError::LevelTooLarge {
            level: n,
            size,
            budget,
        },
        e => e,
    })?;
    Ok((limit, faces))
}

fn build(
    x: &TruncatedSimplicialAlgebra,
    n: usize,
    omit: Option<usize>,
) -> Result<SimplicialKernel> {
    check_level(x, n)?;
    let (limit, faces) = kernel_limit(x, n, omit)?;
    let legs: Vec<&Homomorphism> = faces.iter().map(|&i| x.d(n, i)).collect();
    let comparison = limit.induced(&legs).map_err(|_| {
        SimalError::PropertyViolation(format!(
            "faces of level {n} of `{}` do not land in the kernel",
            x.name()
        ))
    })?;
    Ok(SimplicialKernel {
        n,
        omitted: omit,
        limit,
        faces,
        comparison,
    })
}

/// `K_n(X)` with its projections and `κ_n = ⟨d_0, .., d_n⟩`.
pub fn simplicial_kernel(x: &TruncatedSimplicialAlgebra, n: usize) -> Result<SimplicialKernel> {
    build(x, n, None)
}

/// `Λ^n_k(X)` with `λ^n_k = ⟨d_i⟩_{i ≠ k}`.
pub fn horn(x: &TruncatedSimplicialAlgebra, n: usize, k: usize) -> Result<SimplicialKernel> {
    if k > n {
        return Err(SimalError::InvalidParameters(format!(
            "horn index {k} > {n}"
        )));
    }
    build(x, n, Some(k))
}

/// Whether `κ_n` is surjective.
pub fn exactness_check(x: &TruncatedSimplicialAlgebra, n: usize) -> Result<bool> {
    Ok(simplicial_kernel(x, n)?.comparison_surjective())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KanEntry {
    pub n: usize,
    pub k: usize,
    pub horn_size: usize,
    /// Size of the target of the comparison (the horn object, or for a
    /// fibration the pullback `Y_n ×_{Λ(Y)} Λ(X)`).
    pub target_size: usize,
    pub image_size: usize,
    pub surjective: bool,
    pub bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KanReport {
    pub entries: Vec<KanEntry>,
}

impl KanReport {
    pub fn all_surjective(&self) -> bool {
        self.entries.iter().all(|e| e.surjective)
    }

    pub fn all_bijective(&self) -> bool {
        self.entries.iter().all(|e| e.bijective)
    }
}

/// Surjectivity of every `λ^n_k` with `2 <= n <= truncation`.
pub fn kan_check(x: &TruncatedSimplicialAlgebra) -> Result<KanReport> {
    let mut entries = Vec::new();
    for n in 2..=x.truncation() {
        for k in 0..=n {
            let h = horn(x, n, k)?;
            let image_size = h.comparison.image_size();
            entries.push(KanEntry {
                n,
                k,
                horn_size: h.size(),
                target_size: h.size(),
                image_size,
                surjective: image_size == h.size(),
                bijective: image_size == h.size() && x.level(n).size() == h.size(),
            });
        }
    }
    Ok(KanReport { entries })
}

/// Surjectivity of every `θ^n_k: X_n → Y_n ×_{Λ^n_k(Y)} Λ^n_k(X)`.
///
/// The target is never built: its size is the sum over horns `h` of `X` of
/// the number of `n`-simplices of `Y` whose horn is the image of `h`, and
/// the image of `θ` is counted as the number of distinct pairs
/// `(f_n x, λ x)`.
pub fn kan_fibration_check(f: &SimplicialMorphism) -> Result<KanReport> {
    let x = f.dom();
    let y = f.cod();
    let mut entries = Vec::new();
    for n in 2..=x.truncation() {
        for k in 0..=n {
            let hx = horn(x, n, k)?;
            let hy = horn(y, n, k)?;
            let mut over = vec![0usize; hy.size()];
            for yy in 0..y.level(n).size() {
                over[hy.comparison.apply(yy)] += 1;
            }
            let fb = f.component(n - 1);
            let mut target = 0usize;
            let mut t = vec![0u32; hx.faces.len()];
            let mut image_of_horn = vec![0u32; hx.size()];
            for h in 0..hx.size() {
                for (c, &v) in hx.limit.tuple(h).iter().enumerate() {
                    t[c] = fb.map()[v as usize];
                }
                let img = hy.limit.index_of(&t).ok_or_else(|| {
                    SimalError::PropertyViolation(format!(
                        "horn of `{}` does not map to a horn of `{}`",
                        x.name(),
                        y.name()
                    ))
                })?;
                image_of_horn[h] = img as u32;
                target += over[img];
            }
            let mut pairs: Vec<u64> = (0..x.level(n).size())
                .map(|a| {
                    f.component(n).apply(a) as u64 * hx.size() as u64
                        + hx.comparison.apply(a) as u64
                })
                .collect();
            pairs.sort_unstable();
            pairs.dedup();
            entries.push(KanEntry {
                n,
                k,
                horn_size: hx.size(),
                target_size: target,
                image_size: pairs.len(),
                surjective: pairs.len() == target,
                bijective: pairs.len() == target && x.level(n).size() == target,
            });
        }
    }
    Ok(KanReport { entries })
}
