use std::fmt;
use std::sync::Arc;

use super::signature::Signature;
use super::term::Term;
use crate::budget::TABLE_BUDGET;
use crate::error::{Result, SimalError};

/// Shared handle to an immutable algebra.
pub type Alg = Arc<FiniteAlgebra>;

/// A finite algebra on the carrier `{0, .., size-1}` with one row-major
/// table per operation and a Mal'tsev term.
#[derive(Clone)]
pub struct FiniteAlgebra {
    name: String,
    signature: Arc<Signature>,
    size: usize,
    tables: Vec<Vec<u32>>,
    maltsev: Arc<Term>,
}

impl fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteAlgebra")
            .field("name", &self.name)
            .field("size", &self.size)
            .field("signature", &self.signature.to_string())
            .finish()
    }
}

impl FiniteAlgebra {
    /// Validates tables and the Mal'tsev identities exhaustively.
    pub fn new(
        name: impl Into<String>,
        signature: Arc<Signature>,
        size: usize,
        tables: Vec<Vec<u32>>,
        maltsev: Term,
    ) -> Result<Self> {
        if tables.len() != signature.len() {
            return Err(SimalError::MalformedTable {
                op: "*".into(),
                detail: format!("{} tables for {} operations", tables.len(), signature.len()),
            });
        }
        if size == 0 && signature.has_constants() {
            return Err(SimalError::MalformedTable {
                op: "*".into(),
                detail: "empty carrier with constants".into(),
            });
        }
        for (op, table) in signature.ops().iter().zip(&tables) {
            let expected =
                checked_table_len(size, op.arity).ok_or_else(|| SimalError::MalformedTable {
                    op: op.name.clone(),
                    detail: "table too large".into(),
                })?;
            if table.len() != expected {
                return Err(SimalError::MalformedTable {
                    op: op.name.clone(),
                    detail: format!("expected {expected} entries, found {}", table.len()),
                });
            }
            if let Some(pos) = table.iter().position(|&v| v as usize >= size) {
                return Err(SimalError::MalformedTable {
                    op: op.name.clone(),
                    detail: format!("entry {} at position {pos} is out of range", table[pos]),
                });
            }
        }
        let alg = FiniteAlgebra {
            name: name.into(),
            signature,
            size,
            tables,
            maltsev: Arc::new(maltsev),
        };
        alg.validate_maltsev()?;
        Ok(alg)
    }

    /// Builds the tables from an interpretation function. Used for derived
    /// algebras (products, quotients, subalgebras) which inherit the
    /// Mal'tsev term of their source, so the identities are not re-checked.
    pub fn from_fn(
        name: impl Into<String>,
        signature: Arc<Signature>,
        size: usize,
        maltsev: Arc<Term>,
        mut interpret: impl FnMut(usize, &[usize]) -> Result<usize>,
    ) -> Result<Self> {
        let name = name.into();
        let total: usize = signature
            .ops()
            .iter()
            .map(|o| checked_table_len(size, o.arity).unwrap_or(usize::MAX))
            .fold(0usize, |a, b| a.saturating_add(b));
        if total > TABLE_BUDGET {
            return Err(SimalError::BudgetExceeded(format!(
                "operation tables of `{name}` ({size} elements) need {total} entries"
            )));
        }
        let mut tables = Vec::with_capacity(signature.len());
        for (op, sym) in signature.ops().iter().enumerate() {
            let mut table = Vec::with_capacity(checked_table_len(size, sym.arity).unwrap_or(0));
            let mut err = None;
            for_each_tuple(size, sym.arity, |args| {
                if err.is_some() {
                    return;
                }
                match interpret(op, args) {
                    Ok(v) if v < size => table.push(v as u32),
                    Ok(v) => {
                        err = Some(SimalError::MalformedTable {
                            op: sym.name.clone(),
                            detail: format!("value {v} out of range in `{name}`"),
                        })
                    }
                    Err(e) => err = Some(e),
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
            tables.push(table);
        }
        Ok(FiniteAlgebra {
            name,
            signature,
            size,
            tables,
            maltsev,
        })
    }

    pub fn validate_maltsev(&self) -> Result<()> {
        let n = self.size;
        for x in 0..n {
            for y in 0..n {
                let got = self.maltsev(x, y, y);
                if got != x {
                    return Err(SimalError::NotMaltsev {
                        identity: "p(x,y,y)=x",
                        x,
                        y,
                        got,
                        expected: x,
                    });
                }
                let got = self.maltsev(x, x, y);
                if got != y {
                    return Err(SimalError::NotMaltsev {
                        identity: "p(x,x,y)=y",
                        x,
                        y,
                        got,
                        expected: y,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn maltsev_term(&self) -> &Arc<Term> {
        &self.maltsev
    }

    pub fn table(&self, op: usize) -> &[u32] {
        &self.tables[op]
    }

    pub fn same_signature(&self, other: &FiniteAlgebra) -> bool {
        Arc::ptr_eq(&self.signature, &other.signature) || self.signature == other.signature
    }

    #[inline]
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        let mut idx = 0usize;
        for &a in args {
            idx = idx * self.size + a;
        }
        self.tables[op][idx] as usize
    }

    pub fn maltsev(&self, x: usize, y: usize, z: usize) -> usize {
        self.maltsev
            .eval(&[x, y, z], &|op, args| self.apply(op, args))
    }

    /// Values of the nullary operations.
    pub fn constants(&self) -> Vec<usize> {
        self.signature
            .ops()
            .iter()
            .enumerate()
            .filter(|(_, o)| o.arity == 0)
            .map(|(i, _)| self.tables[i][0] as usize)
            .collect()
    }

    pub fn with_name(&self, name: impl Into<String>) -> FiniteAlgebra {
        FiniteAlgebra {
            name: name.into(),
            ..self.clone()
        }
    }

    /// Sorted carrier of the subalgebra generated by `seeds`.
    pub fn generated(&self, seeds: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.size];
        let mut elems: Vec<usize> = Vec::new();
        for c in self.constants().into_iter().chain(seeds.iter().copied()) {
            if !inside[c] {
                inside[c] = true;
                elems.push(c);
            }
        }
        let mut old = 0;
        loop {
            let cur = elems.len();
            if old == cur && old > 0 {
                break;
            }
            let mut fresh = Vec::new();
            for (op, sym) in self.signature.ops().iter().enumerate() {
                if sym.arity == 0 {
                    continue;
                }
                for_each_tuple(cur, sym.arity, |ix| {
                    if ix.iter().all(|&i| i < old) {
                        return;
                    }
                    let args: Vec<usize> = ix.iter().map(|&i| elems[i]).collect();
                    let v = self.apply(op, &args);
                    if !inside[v] {
                        inside[v] = true;
                        fresh.push(v);
                    }
                });
            }
            old = cur;
            elems.extend(fresh);
            if elems.len() == cur {
                break;
            }
        }
        elems.sort_unstable();
        elems
    }

    /// A small generating set, chosen greedily by increasing element index.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut covered = vec![false; self.size];
        for c in self.generated(&[]) {
            covered[c] = true;
        }
        for a in 0..self.size {
            if !covered[a] {
                gens.push(a);
                for c in self.generated(&gens) {
                    covered[c] = true;
                }
            }
        }
        gens
    }
}

impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.signature == other.signature && self.tables == other.tables
    }
}

impl Eq for FiniteAlgebra {}

pub(crate) fn checked_table_len(size: usize, arity: usize) -> Option<usize> {
    let mut len = 1usize;
    for _ in 0..arity {
        len = len.checked_mul(size)?;
    }
    Some(len)
}

/// Calls `f` on every tuple of `{0..n-1}^k` in row-major order.
pub fn for_each_tuple(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k == 0 {
        f(&[]);
        return;
    }
    if n == 0 {
        return;
    }
    let mut t = vec![0usize; k];
    loop {
        f(&t);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: usize) -> FiniteAlgebra {
        let sig = Arc::new(Signature::abelian_group());
        let p = Term::parse("add(add(x,neg(y)),z)", &sig).unwrap();
        let add = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        let neg = (0..n).map(|a| ((n - a) % n) as u32).collect();
        FiniteAlgebra::new(format!("Z{n}"), sig, n, vec![add, neg, vec![0]], p).unwrap()
    }

    #[test]
    fn tuple_iteration_is_row_major() {
        let mut seen = Vec::new();
        for_each_tuple(2, 2, |t| seen.push(t.to_vec()));
        assert_eq!(seen, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let mut count = 0;
        for_each_tuple(3, 0, |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn generation_and_generators() {
        let z6 = zn(6);
        assert_eq!(z6.generated(&[2]), vec![0, 2, 4]);
        assert_eq!(z6.generated(&[]), vec![0]);
        assert_eq!(z6.generating_set(), vec![1]);
    }

    #[test]
    fn rejects_out_of_range_entry() {
        let sig = Arc::new(Signature::abelian_group());
        let p = Term::parse("add(add(x,neg(y)),z)", &sig).unwrap();
        let mut add: Vec<u32> = (0..16).map(|i| ((i / 4 + i % 4) % 4) as u32).collect();
        add[5] = 7;
        let neg = (0..4).map(|a| ((4 - a) % 4) as u32).collect();
        let r = FiniteAlgebra::new("bad", sig, 4, vec![add, neg, vec![0]], p);
        assert!(matches!(r, Err(SimalError::MalformedTable { .. })));
    }

    #[test]
    fn rejects_non_maltsev_term() {
        let sig = Arc::new(Signature::abelian_group());
        let p = Term::parse("add(x,add(y,z))", &sig).unwrap();
        let add = (0..9).map(|i| ((i / 3 + i % 3) % 3) as u32).collect();
        let neg = (0..3).map(|a| ((3 - a) % 3) as u32).collect();
        let r = FiniteAlgebra::new("Z3", sig, 3, vec![add, neg, vec![0]], p);
        assert!(matches!(r, Err(SimalError::NotMaltsev { .. })));
    }
}
