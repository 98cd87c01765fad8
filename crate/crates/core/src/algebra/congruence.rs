use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use petgraph::unionfind::UnionFind;

use super::finite::{for_each_tuple, Alg, FiniteAlgebra};
use super::hom::Homomorphism;
use crate::error::{Result, SimalError};

/// An equivalence relation on the carrier of an algebra, compatible with all
/// operations. Stored canonically: `blocks[a]` is the least element of the
/// class of `a`, so two congruences on the same algebra are equal exactly
/// when their arrays are.
#[derive(Clone)]
pub struct Congruence {
    on: Alg,
    blocks: Vec<u32>,
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Congruence(on {}, {:?})", self.on.name(), self.classes())
    }
}

impl PartialEq for Congruence {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks
    }
}

impl Eq for Congruence {}

/// Canonical block array from arbitrary labels: each element is sent to the
/// least element sharing its label.
pub(crate) fn canonical_from_labels<L: Copy + Eq + std::hash::Hash>(labels: &[L]) -> Vec<u32> {
    let mut first = std::collections::HashMap::with_capacity(labels.len());
    labels
        .iter()
        .enumerate()
        .map(|(a, l)| *first.entry(*l).or_insert(a as u32))
        .collect()
}

fn canonical_from_union_find(uf: &mut UnionFind<u32>, n: usize) -> Vec<u32> {
    let roots: Vec<u32> = (0..n as u32).map(|a| uf.find_mut(a)).collect();
    canonical_from_labels(&roots)
}

impl Congruence {
    /// Validates that `labels` describes a compatible partition.
    pub fn from_labels(on: Alg, labels: &[u32]) -> Result<Self> {
        if labels.len() != on.size() {
            return Err(SimalError::NotCongruence(format!(
                "partition has {} entries but `{}` has {} elements",
                labels.len(),
                on.name(),
                on.size()
            )));
        }
        let c = Congruence {
            blocks: canonical_from_labels(labels),
            on,
        };
        c.check_compatible()?;
        Ok(c)
    }

    pub(crate) fn trusted_from_labels<L: Copy + Eq + std::hash::Hash>(
        on: Alg,
        labels: &[L],
    ) -> Self {
        Congruence {
            blocks: canonical_from_labels(labels),
            on,
        }
    }

    /// Compatibility is checked on basic translations: changing one argument
    /// of one operation within its class must keep the result in one class.
    /// This is equivalent to the full condition by transitivity.
    fn check_compatible(&self) -> Result<()> {
        let alg = &self.on;
        let n = alg.size();
        let mut args = Vec::new();
        for (op, sym) in alg.signature().ops().iter().enumerate() {
            let k = sym.arity;
            if k == 0 {
                continue;
            }
            let mut failure = None;
            for pos in 0..k {
                for_each_tuple(n, k, |t| {
                    if failure.is_some() {
                        return;
                    }
                    let a = t[pos];
                    let rep = self.blocks[a] as usize;
                    if rep == a {
                        return;
                    }
                    args.clear();
                    args.extend_from_slice(t);
                    let u = alg.apply(op, &args);
                    args[pos] = rep;
                    let v = alg.apply(op, &args);
                    if self.blocks[u] != self.blocks[v] {
                        failure = Some(format!(
                            "{} applied to {:?} and {:?} leaves the class",
                            sym.name, t, args
                        ));
                    }
                });
            }
            if let Some(msg) = failure {
                return Err(SimalError::NotCongruence(msg));
            }
        }
        Ok(())
    }

    pub fn discrete(on: &Alg) -> Self {
        Congruence {
            blocks: (0..on.size() as u32).collect(),
            on: on.clone(),
        }
    }

    pub fn total(on: &Alg) -> Self {
        Congruence {
            blocks: vec![0; on.size()],
            on: on.clone(),
        }
    }

    /// The fibers of `f`.
    pub fn kernel_pair(f: &Homomorphism) -> Self {
        Congruence::trusted_from_labels(f.dom().clone(), f.map())
    }

    pub fn on(&self) -> &Alg {
        &self.on
    }

    pub fn blocks(&self) -> &[u32] {
        &self.blocks
    }

    #[inline]
    pub fn related(&self, a: usize, b: usize) -> bool {
        self.blocks[a] == self.blocks[b]
    }

    #[inline]
    pub fn rep(&self, a: usize) -> usize {
        self.blocks[a] as usize
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.iter().enumerate().all(|(a, &b)| a as u32 == b)
    }

    pub fn is_total(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn num_classes(&self) -> usize {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(a, &b)| *a as u32 == b)
            .count()
    }

    /// Number of related ordered pairs.
    pub fn num_pairs(&self) -> usize {
        let mut counts = vec![0usize; self.blocks.len()];
        for &b in &self.blocks {
            counts[b as usize] += 1;
        }
        counts.iter().map(|c| c * c).sum()
    }

    /// Classes in order of their least element.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut idx = vec![usize::MAX; self.blocks.len()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (a, &b) in self.blocks.iter().enumerate() {
            let b = b as usize;
            if idx[b] == usize::MAX {
                idx[b] = out.len();
                out.push(Vec::new());
            }
            out[idx[b]].push(a);
        }
        out
    }

    /// Dense class index `0..num_classes` for every element.
    pub fn class_index(&self) -> Vec<u32> {
        let mut idx = vec![u32::MAX; self.blocks.len()];
        let mut next = 0u32;
        let mut out = Vec::with_capacity(self.blocks.len());
        for &b in &self.blocks {
            let b = b as usize;
            if idx[b] == u32::MAX {
                idx[b] = next;
                next += 1;
            }
            out.push(idx[b]);
        }
        out
    }

    fn same_algebra(&self, other: &Congruence, what: &str) -> Result<()> {
        if self.blocks.len() != other.blocks.len()
            || !(Arc::ptr_eq(&self.on, &other.on) || *self.on == *other.on)
        {
            return Err(SimalError::NotCongruence(format!(
                "{what} of congruences on different algebras `{}` and `{}`",
                self.on.name(),
                other.on.name()
            )));
        }
        Ok(())
    }

    pub fn le(&self, other: &Congruence) -> bool {
        self.blocks
            .iter()
            .enumerate()
            .all(|(a, &b)| other.blocks[a] == other.blocks[b as usize])
    }

    pub fn meet(&self, other: &Congruence) -> Result<Congruence> {
        self.same_algebra(other, "meet")?;
        let labels: Vec<(u32, u32)> = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(&a, &b)| (a, b))
            .collect();
        Ok(Congruence::trusted_from_labels(self.on.clone(), &labels))
    }

    /// The join, computed as the relational composite `self ∘ other`.
    ///
    /// The composite relates `a` and `c` exactly when the class of `a` under
    /// `self` meets the class of `c` under `other`. Inside one class of the
    /// union closure that holds for every pair iff every `self`-class there
    /// meets every `other`-class, i.e. iff the number of classes of the meet
    /// in that component equals the product of the two class counts. The
    /// test is symmetric, so it also certifies `other ∘ self`.
    pub fn join(&self, other: &Congruence) -> Result<Congruence> {
        self.same_algebra(other, "join")?;
        let n = self.blocks.len();
        let mut uf = UnionFind::<u32>::new(n);
        for a in 0..n {
            uf.union(a as u32, self.blocks[a]);
            uf.union(a as u32, other.blocks[a]);
        }
        let joined = canonical_from_union_find(&mut uf, n);
        let mut theta = vec![0usize; n];
        let mut psi = vec![0usize; n];
        let mut both = vec![0usize; n];
        for a in 0..n {
            let c = joined[a] as usize;
            if self.blocks[a] as usize == a {
                theta[c] += 1;
            }
            if other.blocks[a] as usize == a {
                psi[c] += 1;
            }
        }
        let meet = self.meet(other)?;
        for a in 0..n {
            if meet.blocks[a] as usize == a {
                both[joined[a] as usize] += 1;
            }
        }
        for c in 0..n {
            if joined[c] as usize == c && theta[c] * psi[c] != both[c] {
                return Err(SimalError::JoinNotComposite(format!(
                    "on `{}`, the component of {c} has {} and {} classes but only {} meet-classes",
                    self.on.name(),
                    theta[c],
                    psi[c],
                    both[c]
                )));
            }
        }
        Ok(Congruence {
            on: self.on.clone(),
            blocks: joined,
        })
    }

    /// Join of a list; the empty join is the discrete congruence.
    pub fn join_all<'a>(
        on: &Alg,
        items: impl IntoIterator<Item = &'a Congruence>,
    ) -> Result<Congruence> {
        let mut acc = Congruence::discrete(on);
        for c in items {
            acc = acc.join(c)?;
        }
        Ok(acc)
    }

    /// `{(f a, f b) : a θ b}` for surjective `f`, verified transitive.
    pub fn image(&self, f: &Homomorphism) -> Result<Congruence> {
        if f.dom().size() != self.blocks.len() {
            return Err(SimalError::NotCongruence(format!(
                "image along a map out of `{}` of a congruence on `{}`",
                f.dom().name(),
                self.on.name()
            )));
        }
        if !f.is_surjective() {
            return Err(SimalError::NotSurjective(format!(
                "{} -> {}",
                f.dom().name(),
                f.cod().name()
            )));
        }
        let m = f.cod().size();
        let mut uf = UnionFind::<u32>::new(m);
        for (a, &b) in self.blocks.iter().enumerate() {
            uf.union(f.map()[a], f.map()[b as usize]);
        }
        let closure = canonical_from_union_find(&mut uf, m);
        // Each class image f(B) is a clique of the image relation. The
        // relation is transitive iff, for every u, the union of the cliques
        // through u is the whole closure class of u.
        let mut images: Vec<FixedBitSet> = Vec::new();
        let mut class_of_block = vec![usize::MAX; self.blocks.len()];
        for (a, &b) in self.blocks.iter().enumerate() {
            let b = b as usize;
            if class_of_block[b] == usize::MAX {
                class_of_block[b] = images.len();
                images.push(FixedBitSet::with_capacity(m));
            }
            images[class_of_block[b]].insert(f.map()[a] as usize);
        }
        let mut rows: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(m); m];
        for img in &images {
            for u in img.ones() {
                rows[u].union_with(img);
            }
        }
        let mut class_size = vec![0usize; m];
        for &c in &closure {
            class_size[c as usize] += 1;
        }
        for u in 0..m {
            if rows[u].count_ones(..) != class_size[closure[u] as usize] {
                return Err(SimalError::NotTransitive(format!(
                    "image on `{}` is not transitive at element {u}",
                    f.cod().name()
                )));
            }
        }
        Ok(Congruence {
            on: f.cod().clone(),
            blocks: closure,
        })
    }

    /// `{(a, b) : f(a) θ f(b)}` where `self` lives on the codomain of `f`.
    pub fn preimage(&self, f: &Homomorphism) -> Result<Congruence> {
        if f.cod().size() != self.blocks.len() {
            return Err(SimalError::NotCongruence(format!(
                "preimage along a map into `{}` of a congruence on `{}`",
                f.cod().name(),
                self.on.name()
            )));
        }
        let labels: Vec<u32> = f.map().iter().map(|&v| self.blocks[v as usize]).collect();
        Ok(Congruence::trusted_from_labels(f.dom().clone(), &labels))
    }

    /// The least congruence containing `self` and the given pairs.
    pub fn with_pairs(&self, pairs: impl IntoIterator<Item = (usize, usize)>) -> Congruence {
        let n = self.blocks.len();
        let mut uf = UnionFind::<u32>::new(n);
        let mut queue: Vec<(usize, usize)> = Vec::new();
        for a in 0..n {
            if uf.union(a as u32, self.blocks[a]) {
                queue.push((a, self.blocks[a] as usize));
            }
        }
        for (a, b) in pairs {
            if uf.union(a as u32, b as u32) {
                queue.push((a, b));
            }
        }
        close_under_translations(&self.on, &mut uf, queue);
        Congruence {
            on: self.on.clone(),
            blocks: canonical_from_union_find(&mut uf, n),
        }
    }

    /// The principal congruence generated by one pair.
    pub fn principal(on: &Alg, a: usize, b: usize) -> Congruence {
        Congruence::discrete(on).with_pairs([(a, b)])
    }

    /// The quotient algebra and its projection.
    pub fn quotient(&self) -> Result<(Alg, Homomorphism)> {
        let idx = self.class_index();
        let classes = self.classes();
        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let alg = &self.on;
        let mut args = Vec::new();
        let q = FiniteAlgebra::from_fn(
            format!("{}/~", alg.name()),
            alg.signature().clone(),
            reps.len(),
            alg.maltsev_term().clone(),
            |op, ix| {
                args.clear();
                args.extend(ix.iter().map(|&i| reps[i]));
                Ok(idx[alg.apply(op, &args)] as usize)
            },
        )?;
        let q = Arc::new(q);
        let proj = Homomorphism::trusted(alg.clone(), q.clone(), idx);
        Ok((q, proj))
    }
}

/// Closes a union-find structure under basic translations: whenever `a ~ b`
/// was merged, every operation applied to tuples differing only in one
/// position (`a` there versus `b`) gets merged too.
pub(crate) fn close_under_translations(
    alg: &FiniteAlgebra,
    uf: &mut UnionFind<u32>,
    mut queue: Vec<(usize, usize)>,
) {
    let n = alg.size();
    let ops: Vec<(usize, usize)> = alg
        .signature()
        .ops()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.arity > 0)
        .map(|(i, s)| (i, s.arity))
        .collect();
    let mut args = Vec::new();
    while let Some((a, b)) = queue.pop() {
        for &(op, k) in &ops {
            for pos in 0..k {
                for_each_tuple(n, k - 1, |rest| {
                    args.clear();
                    args.extend_from_slice(&rest[..pos]);
                    args.push(a);
                    args.extend_from_slice(&rest[pos..]);
                    let u = alg.apply(op, &args);
                    args[pos] = b;
                    let v = alg.apply(op, &args);
                    if uf.union(u as u32, v as u32) {
                        queue.push((u, v));
                    }
                });
            }
        }
    }
}
