use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimalError};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpSymbol {
    pub name: String,
    pub arity: usize,
}

impl OpSymbol {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        OpSymbol {
            name: name.into(),
            arity,
        }
    }
}

/// An ordered list of operation symbols. Two algebras can only be related by
/// homomorphisms when their signatures are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    ops: Vec<OpSymbol>,
}

impl Signature {
    pub fn new(ops: Vec<OpSymbol>) -> Result<Self> {
        let mut seen = HashSet::new();
        for op in &ops {
            if !is_identifier(&op.name) {
                return Err(SimalError::InvalidSignature(format!(
                    "`{}` is not an identifier",
                    op.name
                )));
            }
            if matches!(op.name.as_str(), "x" | "y" | "z") {
                return Err(SimalError::InvalidSignature(format!(
                    "`{}` is reserved for term variables",
                    op.name
                )));
            }
            if !seen.insert(op.name.as_str()) {
                return Err(SimalError::InvalidSignature(format!(
                    "duplicate operation `{}`",
                    op.name
                )));
            }
        }
        Ok(Signature { ops })
    }

    pub fn ops(&self) -> &[OpSymbol] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }

    pub fn arity(&self, op: usize) -> usize {
        self.ops[op].arity
    }

    pub fn has_constants(&self) -> bool {
        self.ops.iter().any(|o| o.arity == 0)
    }

    /// Abelian group signature `add/2, neg/1, zero/0`.
    pub fn abelian_group() -> Self {
        Signature {
            ops: vec![
                OpSymbol::new("add", 2),
                OpSymbol::new("neg", 1),
                OpSymbol::new("zero", 0),
            ],
        }
    }

    /// Group signature `mul/2, inv/1, e/0`.
    pub fn group() -> Self {
        Signature {
            ops: vec![
                OpSymbol::new("mul", 2),
                OpSymbol::new("inv", 1),
                OpSymbol::new("e", 0),
            ],
        }
    }

    /// Heyting algebra signature `meet/2, join/2, imp/2, bot/0, top/0`.
    pub fn heyting() -> Self {
        Signature {
            ops: vec![
                OpSymbol::new("meet", 2),
                OpSymbol::new("join", 2),
                OpSymbol::new("imp", 2),
                OpSymbol::new("bot", 0),
                OpSymbol::new("top", 0),
            ],
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .ops
            .iter()
            .map(|o| format!("{}/{}", o.name, o.arity))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_reserved_names() {
        let dup = Signature::new(vec![OpSymbol::new("f", 1), OpSymbol::new("f", 2)]);
        assert!(matches!(dup, Err(SimalError::InvalidSignature(_))));
        let reserved = Signature::new(vec![OpSymbol::new("x", 0)]);
        assert!(matches!(reserved, Err(SimalError::InvalidSignature(_))));
        let bad = Signature::new(vec![OpSymbol::new("1f", 0)]);
        assert!(bad.is_err());
    }

    #[test]
    fn presets_have_constants() {
        for sig in [
            Signature::abelian_group(),
            Signature::group(),
            Signature::heyting(),
        ] {
            assert!(sig.has_constants());
            assert!(Signature::new(sig.ops().to_vec()).is_ok());
        }
    }
}
