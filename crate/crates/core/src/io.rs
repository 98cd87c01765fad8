//! JSON interchange for algebras, homomorphisms, truncated simplicial
//! algebras and simplicial morphisms.
//!
//! Algebra:
//! `{"name", "size", "operations": [{"name", "arity", "table"}], "maltsev": {"term"}}`
//! where `table` is a nested row-major array of depth `arity` (a one-element
//! array for constants).
//!
//! Homomorphism: `{"dom", "cod", "map"}`. `dom` and `cod` are algebra names
//! (resolved against an enclosing `algebras` array), inline algebra
//! documents, or file references.
//!
//! Simplicial object:
//! `{"name", "truncation", "algebras": [...], "levels": [...], "faces": [[...]], "degeneracies": [[...]]}`
//! with `faces[n-1][i]` the face `d_i` out of level `n` and
//! `degeneracies[n][i]` the degeneracy `s_i` out of level `n`. Each hom may be
//! inline (`{"map": [...]}` or a bare array) or a file reference.
//!
//! Simplicial morphism: `{"dom", "cod", "components": [...]}` where `dom`
//! and `cod` are inline simplicial documents or file references.
//!
//! A file reference is either a string path or `{"file": path}`, resolved
//! relative to the referring file. Output uses sorted keys, so identical
//! structures serialize to identical bytes.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::algebra::{Alg, FiniteAlgebra, Homomorphism, OpSymbol, Signature, Term};
use crate::corpus::Artifact;
use crate::error::{Result, SimalError};
use crate::simplicial::{Sim, SimplicialMorphism, TruncatedSimplicialAlgebra};

#[derive(Clone, Debug)]
pub enum Document {
    Algebra(Alg),
    Homomorphism(Homomorphism),
    Simplicial(Sim),
    Morphism(SimplicialMorphism),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Algebra(_) => "algebra",
            Document::Homomorphism(_) => "homomorphism",
            Document::Simplicial(_) => "simplicial",
            Document::Morphism(_) => "morphism",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Document::Algebra(a) => algebra_to_json(a),
            Document::Homomorphism(h) => hom_to_json(h),
            Document::Simplicial(x) => simplicial_to_json(x),
            Document::Morphism(f) => morphism_to_json(f),
        }
    }
}

impl From<Artifact> for Document {
    fn from(a: Artifact) -> Self {
        match a {
            Artifact::Algebra(a) => Document::Algebra(a),
            Artifact::Graph(x) | Artifact::Simplicial(x) => Document::Simplicial(x),
            Artifact::Morphism(f) => Document::Morphism(f),
        }
    }
}

fn parse_err(msg: impl Into<String>) -> SimalError {
    SimalError::Parse(msg.into())
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| SimalError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| parse_err(format!("{}: {e}", path.display())))
}

/// Loads any of the four document kinds, detected by its keys.
pub fn load(path: &Path) -> Result<Document> {
    let value = read_json(path)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("input");
    parse_document(&value, &base, stem)
}

pub fn parse_document(value: &Value, base: &Path, default_name: &str) -> Result<Document> {
    let obj = value
        .as_object()
        .ok_or_else(|| parse_err("top-level JSON value must be an object"))?;
    if obj.contains_key("components") {
        Ok(Document::Morphism(parse_morphism(value, base)?))
    } else if obj.contains_key("levels") {
        Ok(Document::Simplicial(Arc::new(parse_simplicial(
            value,
            base,
            default_name,
        )?)))
    } else if obj.contains_key("map") {
        let ctx = Context::from_object(obj, base)?;
        Ok(Document::Homomorphism(ctx.hom(value, None, None)?))
    } else if obj.contains_key("operations") {
        Ok(Document::Algebra(Arc::new(parse_algebra(
            value,
            default_name,
        )?)))
    } else {
        Err(parse_err(
            "unrecognized document: expected `operations`, `map`, `levels` or `components`",
        ))
    }
}

fn file_ref(value: &Value) -> Option<&str> {
    match value {
        Value::String(s) => Some(s),
        Value::Object(m) if m.len() == 1 => m.get("file").and_then(Value::as_str),
        _ => None,
    }
}

fn resolve(base: &Path, rel: &str) -> PathBuf {
    let p = Path::new(rel);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn load_ref(base: &Path, rel: &str) -> Result<(Value, PathBuf)> {
    let path = resolve(base, rel);
    let value = read_json(&path)?;
    Ok((
        value,
        path.parent().map(Path::to_path_buf).unwrap_or_default(),
    ))
}

fn usize_field(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    obj.get(key)
        .and_then(Value::as_u64)
        .map(|v| v as usize)
        .ok_or_else(|| parse_err(format!("missing or non-integer field `{key}`")))
}

fn flatten_table(
    value: &Value,
    depth: usize,
    size: usize,
    out: &mut Vec<u32>,
    op: &str,
) -> Result<()> {
    let bad = |detail: String| SimalError::MalformedTable {
        op: op.to_string(),
        detail,
    };
    if depth == 0 {
        let v = value
            .as_u64()
            .ok_or_else(|| bad(format!("expected an element, found {value}")))?;
        out.push(u32::try_from(v).map_err(|_| bad(format!("entry {v} out of range")))?);
        return Ok(());
    }
    let rows = value
        .as_array()
        .ok_or_else(|| bad(format!("expected a nested array at depth {depth}")))?;
    if rows.len() != size {
        return Err(bad(format!(
            "row of length {} where {size} was expected",
            rows.len()
        )));
    }
    for row in rows {
        flatten_table(row, depth - 1, size, out, op)?;
    }
    Ok(())
}

pub fn parse_algebra(value: &Value, default_name: &str) -> Result<FiniteAlgebra> {
    let obj = value
        .as_object()
        .ok_or_else(|| parse_err("algebra must be an object"))?;
    let name = obj
        .get("name")
        .and_then(Value::as_str)
        .unwrap_or(default_name);
    let size = usize_field(obj, "size")?;
    let ops = obj
        .get("operations")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err(format!("algebra `{name}`: missing `operations` array")))?;
    let mut symbols = Vec::with_capacity(ops.len());
    let mut tables = Vec::with_capacity(ops.len());
    for op in ops {
        let o = op
            .as_object()
            .ok_or_else(|| parse_err(format!("algebra `{name}`: operation must be an object")))?;
        let op_name = o
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| parse_err(format!("algebra `{name}`: operation without a name")))?;
        let arity = usize_field(o, "arity")?;
        let table = o.get("table").ok_or_else(|| {
            parse_err(format!(
                "algebra `{name}`: operation `{op_name}` has no table"
            ))
        })?;
        let mut flat = Vec::new();
        if arity == 0 {
            let cells = table.as_array().filter(|a| a.len() == 1).ok_or_else(|| {
                SimalError::MalformedTable {
                    op: op_name.to_string(),
                    detail: "a constant's table is a one-element array".into(),
                }
            })?;
            flatten_table(&cells[0], 0, size, &mut flat, op_name)?;
        } else {
            flatten_table(table, arity, size, &mut flat, op_name)?;
        }
        symbols.push(OpSymbol::new(op_name, arity));
        tables.push(flat);
    }
    let signature = Arc::new(Signature::new(symbols)?);
    let term_src = obj
        .get("maltsev")
        .and_then(|m| m.get("term"))
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err(format!("algebra `{name}`: missing `maltsev.term`")))?;
    let term = Term::parse(term_src, &signature)?;
    FiniteAlgebra::new(name, signature, size, tables, term)
}

/// Algebras visible to hom references, keyed by name.
struct Context {
    base: PathBuf,
    algebras: BTreeMap<String, Alg>,
}

impl Context {
    fn from_object(obj: &Map<String, Value>, base: &Path) -> Result<Self> {
        let mut ctx = Context {
            base: base.to_path_buf(),
            algebras: BTreeMap::new(),
        };
        if let Some(list) = obj.get("algebras") {
            let list = list
                .as_array()
                .ok_or_else(|| parse_err("`algebras` must be an array"))?;
            for (i, entry) in list.iter().enumerate() {
                let a = ctx.algebra(entry, &format!("A{i}"))?;
                if ctx
                    .algebras
                    .insert(a.name().to_string(), a.clone())
                    .is_some()
                {
                    return Err(parse_err(format!("duplicate algebra name `{}`", a.name())));
                }
            }
        }
        Ok(ctx)
    }

    /// An algebra given by name, inline document or file reference.
    fn algebra(&self, value: &Value, default_name: &str) -> Result<Alg> {
        if let Value::String(s) = value {
            if let Some(a) = self.algebras.get(s) {
                return Ok(a.clone());
            }
        }
        if let Some(rel) = file_ref(value) {
            let (v, _) = load_ref(&self.base, rel)?;
            let stem = Path::new(rel)
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or(default_name);
            return Ok(Arc::new(parse_algebra(&v, stem)?));
        }
        if value.is_object() {
            return Ok(Arc::new(parse_algebra(value, default_name)?));
        }
        Err(parse_err(format!(
            "cannot resolve algebra reference {value}"
        )))
    }

    /// A homomorphism given inline, as a bare map or by file reference. The
    /// expected endpoints, when known, take precedence over names in the
    /// document but must agree with them.
    fn hom(&self, value: &Value, dom: Option<&Alg>, cod: Option<&Alg>) -> Result<Homomorphism> {
        if let Some(rel) = file_ref(value) {
            let (v, sub_base) = load_ref(&self.base, rel)?;
            let sub = Context {
                base: sub_base,
                algebras: self.algebras.clone(),
            };
            return sub.hom(&v, dom, cod);
        }
        let (map_value, obj) = match value {
            Value::Array(_) => (value, None),
            Value::Object(o) => (
                o.get("map")
                    .ok_or_else(|| parse_err("homomorphism without `map`"))?,
                Some(o),
            ),
            _ => return Err(parse_err(format!("cannot read homomorphism from {value}"))),
        };
        let endpoint = |key: &str, expected: Option<&Alg>| -> Result<Alg> {
            let given = obj.and_then(|o| o.get(key));
            match (given, expected) {
                (Some(v), Some(e)) => {
                    let named_ok = matches!(v, Value::String(s) if s == e.name());
                    if !named_ok {
                        let a = self.algebra(v, key)?;
                        if a.size() != e.size() || a.signature() != e.signature() {
                            return Err(parse_err(format!(
                                "homomorphism `{key}` is `{}` but `{}` is required here",
                                a.name(),
                                e.name()
                            )));
                        }
                    }
                    Ok(e.clone())
                }
                (None, Some(e)) => Ok(e.clone()),
                (Some(v), None) => self.algebra(v, key),
                (None, None) => Err(parse_err(format!("homomorphism without `{key}`"))),
            }
        };
        let d = endpoint("dom", dom)?;
        let c = endpoint("cod", cod)?;
        let map: Vec<u32> = map_value
            .as_array()
            .ok_or_else(|| parse_err("`map` must be an array"))?
            .iter()
            .map(|v| {
                v.as_u64()
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| parse_err(format!("map entry {v} is not an element index")))
            })
            .collect::<Result<_>>()?;
        Homomorphism::new(d, c, map)
    }
}

pub fn parse_simplicial(
    value: &Value,
    base: &Path,
    default_name: &str,
) -> Result<TruncatedSimplicialAlgebra> {
    if let Some(rel) = file_ref(value) {
        let (v, sub_base) = load_ref(base, rel)?;
        let stem = Path::new(rel)
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or(default_name);
        return parse_simplicial(&v, &sub_base, stem);
    }
    let obj = value
        .as_object()
        .ok_or_else(|| parse_err("simplicial document must be an object"))?;
    let name = obj
        .get("name")
        .and_then(Value::as_str)
        .unwrap_or(default_name);
    let ctx = Context::from_object(obj, base)?;
    let levels: Vec<Alg> = obj
        .get("levels")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("`levels` must be an array"))?
        .iter()
        .enumerate()
        .map(|(n, v)| ctx.algebra(v, &format!("{name}_{n}")))
        .collect::<Result<_>>()?;
    if levels.is_empty() {
        return Err(SimalError::MalformedSimplicial("no levels".into()));
    }
    let top = levels.len() - 1;
    if let Some(t) = obj.get("truncation") {
        let t = t
            .as_u64()
            .ok_or_else(|| parse_err("`truncation` must be an integer"))? as usize;
        if t != top {
            return Err(SimalError::MalformedSimplicial(format!(
                "truncation {t} but {} levels",
                levels.len()
            )));
        }
    }
    let rows = |key: &str, count: usize| -> Result<Vec<Value>> {
        let rows = match obj.get(key) {
            Some(Value::Array(r)) => r.clone(),
            None if count == 0 => Vec::new(),
            _ => return Err(parse_err(format!("`{key}` must be an array"))),
        };
        if rows.len() != count {
            return Err(SimalError::MalformedSimplicial(format!(
                "`{key}` has {} rows, expected {count}",
                rows.len()
            )));
        }
        Ok(rows)
    };
    let mut faces = Vec::with_capacity(top);
    for (k, row) in rows("faces", top)?.iter().enumerate() {
        let n = k + 1;
        let row = row
            .as_array()
            .ok_or_else(|| parse_err("each face row must be an array"))?;
        if row.len() != n + 1 {
            return Err(SimalError::MalformedSimplicial(format!(
                "level {n} needs {} faces, found {}",
                n + 1,
                row.len()
            )));
        }
        faces.push(
            row.iter()
                .map(|h| ctx.hom(h, Some(&levels[n]), Some(&levels[n - 1])))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let mut degeneracies = Vec::with_capacity(top);
    for (n, row) in rows("degeneracies", top)?.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| parse_err("each degeneracy row must be an array"))?;
        if row.len() != n + 1 {
            return Err(SimalError::MalformedSimplicial(format!(
                "level {n} needs {} degeneracies, found {}",
                n + 1,
                row.len()
            )));
        }
        degeneracies.push(
            row.iter()
                .map(|h| ctx.hom(h, Some(&levels[n]), Some(&levels[n + 1])))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    TruncatedSimplicialAlgebra::new(name, levels, faces, degeneracies)
}

pub fn parse_morphism(value: &Value, base: &Path) -> Result<SimplicialMorphism> {
    let obj = value
        .as_object()
        .ok_or_else(|| parse_err("morphism document must be an object"))?;
    let side = |key: &str| -> Result<Sim> {
        let v = obj
            .get(key)
            .ok_or_else(|| parse_err(format!("morphism without `{key}`")))?;
        Ok(Arc::new(parse_simplicial(v, base, key)?))
    };
    let dom = side("dom")?;
    let cod = side("cod")?;
    let ctx = Context::from_object(obj, base)?;
    let comps = obj
        .get("components")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("`components` must be an array"))?;
    if comps.len() != dom.truncation() + 1 {
        return Err(SimalError::MalformedSimplicial(format!(
            "{} components for truncation {}",
            comps.len(),
            dom.truncation()
        )));
    }
    let components = comps
        .iter()
        .enumerate()
        .map(|(n, h)| ctx.hom(h, Some(dom.level(n)), Some(cod.level(n))))
        .collect::<Result<Vec<_>>>()?;
    SimplicialMorphism::new(dom, cod, components)
}

pub fn algebra_to_json(a: &FiniteAlgebra) -> Value {
    let size = a.size();
    let operations: Vec<Value> = a
        .signature()
        .ops()
        .iter()
        .enumerate()
        .map(|(i, op)| {
            let table = nest(a.table(i), size, op.arity);
            json!({"name": op.name, "arity": op.arity, "table": table})
        })
        .collect();
    json!({
        "name": a.name(),
        "size": size,
        "operations": operations,
        "maltsev": {"term": a.maltsev_term().display(a.signature()).to_string()},
    })
}

fn nest(flat: &[u32], size: usize, arity: usize) -> Value {
    if arity == 0 {
        return json!([flat[0]]);
    }
    if arity == 1 {
        return json!(flat);
    }
    let stride = flat.len() / size.max(1);
    Value::Array(
        (0..size)
            .map(|i| nest(&flat[i * stride..(i + 1) * stride], size, arity - 1))
            .collect(),
    )
}

pub fn hom_to_json(h: &Homomorphism) -> Value {
    json!({
        "algebras": [algebra_to_json(h.dom()), algebra_to_json(h.cod())],
        "dom": h.dom().name(),
        "cod": h.cod().name(),
        "map": h.map(),
    })
}

/// Level names for output, disambiguated when two different algebras share a
/// name.
fn level_names(x: &TruncatedSimplicialAlgebra) -> Vec<String> {
    let mut seen: Vec<(String, &Alg)> = Vec::new();
    let mut names = Vec::new();
    for (n, a) in x.levels().iter().enumerate() {
        let reused = seen
            .iter()
            .find(|(_, b)| Arc::ptr_eq(a, b) || same_algebra(a, b))
            .map(|(name, _)| name.clone());
        let name = match reused {
            Some(name) => name,
            None => {
                let mut name = a.name().to_string();
                if seen.iter().any(|(s, _)| *s == name) {
                    name = format!("{name}@{n}");
                }
                seen.push((name.clone(), a));
                name
            }
        };
        names.push(name);
    }
    names
}

fn same_algebra(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    a.name() == b.name()
        && a.size() == b.size()
        && a.signature() == b.signature()
        && (0..a.signature().len()).all(|i| a.table(i) == b.table(i))
}

pub fn simplicial_to_json(x: &TruncatedSimplicialAlgebra) -> Value {
    let names = level_names(x);
    let mut algebras = Vec::new();
    let mut emitted: Vec<&str> = Vec::new();
    for (n, name) in names.iter().enumerate() {
        if !emitted.contains(&name.as_str()) {
            emitted.push(name);
            let mut doc = algebra_to_json(x.level(n));
            doc["name"] = json!(name);
            algebras.push(doc);
        }
    }
    let hom = |h: &Homomorphism, dom: usize, cod: usize| json!({"dom": names[dom], "cod": names[cod], "map": h.map()});
    let faces: Vec<Value> = x
        .faces()
        .iter()
        .enumerate()
        .map(|(k, row)| Value::Array(row.iter().map(|h| hom(h, k + 1, k)).collect()))
        .collect();
    let degeneracies: Vec<Value> = x
        .degeneracies()
        .iter()
        .enumerate()
        .map(|(n, row)| Value::Array(row.iter().map(|h| hom(h, n, n + 1)).collect()))
        .collect();
    json!({
        "name": x.name(),
        "truncation": x.truncation(),
        "algebras": algebras,
        "levels": names,
        "faces": faces,
        "degeneracies": degeneracies,
    })
}

pub fn morphism_to_json(f: &SimplicialMorphism) -> Value {
    let components: Vec<Value> = f.components().iter().map(|h| json!(h.map())).collect();
    json!({
        "dom": simplicial_to_json(f.dom()),
        "cod": simplicial_to_json(f.cod()),
        "components": components,
    })
}

/// Pretty JSON with a trailing newline; keys are sorted.
pub fn to_pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}
