use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};
use simal_core::algebra::Congruence;
use simal_core::corpus::{default_corpus, generate, GeneratorSpec};
use simal_core::galois::{
    classify_extension, em_factorization, ml_factorization, Factorization, ML_NODE_BUDGET,
};
use simal_core::io::{self, morphism_to_json, simplicial_to_json, to_pretty, Document};
use simal_core::reflection::{commutator_chain_check, graph_reflection, is_internal_groupoid, pi1};
use simal_core::simplicial::{
    coskeleton, kan_check, kan_fibration_check, KanReport, Sim, SimplicialMorphism,
};
use simal_core::suite::run_suite;
use simal_core::{Result, SimalError};

use crate::report::{hash_input, sha256_hex, InputRecord, Outcome};
use crate::{Cli, Command, Mode};

pub fn describe(c: &Command) -> Value {
    match c {
        Command::Validate { file }
        | Command::Reflect { file }
        | Command::GroupoidCheck { file }
        | Command::Classify { file }
        | Command::Kan { file }
        | Command::Commutators { file } => json!({ "file": file }),
        Command::Gen { kind, params, spec } => {
            json!({ "kind": kind, "params": params, "spec": spec })
        }
        Command::Factorize { file, mode } => {
            json!({ "file": file, "mode": format!("{mode:?}").to_lowercase() })
        }
        Command::Cosk { file, to } => json!({ "file": file, "to": to }),
        Command::Suite { criteria } => json!({ "criteria": criteria }),
    }
}

fn load(path: &Path, inputs: &mut Vec<InputRecord>) -> Result<Document> {
    inputs.push(hash_input(path)?);
    io::load(path)
}

fn load_simplicial(path: &Path, inputs: &mut Vec<InputRecord>) -> Result<Sim> {
    match load(path, inputs)? {
        Document::Simplicial(x) => Ok(x),
        d => Err(SimalError::Parse(format!(
            "expected a simplicial object, found a {}",
            d.kind()
        ))),
    }
}

fn load_morphism(path: &Path, inputs: &mut Vec<InputRecord>) -> Result<SimplicialMorphism> {
    match load(path, inputs)? {
        Document::Morphism(f) => Ok(f),
        d => Err(SimalError::Parse(format!(
            "expected a simplicial morphism, found a {}",
            d.kind()
        ))),
    }
}

fn congruence_json(c: &Congruence) -> Value {
    json!({ "classes": c.num_classes(), "blocks": c.blocks() })
}

fn write_file(path: &Path, value: &Value) -> Result<Value> {
    let text = to_pretty(value);
    std::fs::write(path, &text).map_err(|e| SimalError::Io(format!("{}: {e}", path.display())))?;
    Ok(json!({ "path": path.display().to_string(), "sha256": sha256_hex(text.as_bytes()) }))
}

fn out_dir(out: &Option<PathBuf>) -> Result<Option<&Path>> {
    match out {
        Some(d) => {
            std::fs::create_dir_all(d)
                .map_err(|e| SimalError::Io(format!("{}: {e}", d.display())))?;
            Ok(Some(d.as_path()))
        }
        None => Ok(None),
    }
}

/// Stores an emitted document: written to `--out` when given, embedded in
/// the results otherwise.
fn place_document(
    results: &mut Map<String, Value>,
    out: &Option<PathBuf>,
    doc: Value,
) -> Result<()> {
    match out {
        Some(path) => {
            results.insert("written".into(), write_file(path, &doc)?);
        }
        None => {
            results.insert("document".into(), doc);
        }
    }
    Ok(())
}

pub fn dispatch(cli: &Cli, inputs: &mut Vec<InputRecord>) -> Result<Outcome> {
    let mut o = Outcome::default();
    o.results = match &cli.command {
        Command::Validate { file } => validate(file, inputs)?,
        Command::Gen { kind, params, spec } => {
            gen(cli, kind.as_deref(), params, spec.as_deref(), inputs)?
        }
        Command::Reflect { file } => reflect(cli, file, inputs, &mut o)?,
        Command::GroupoidCheck { file } => {
            let x = load_simplicial(file, inputs)?;
            serde_json::to_value(is_internal_groupoid(&x)?)?
        }
        Command::Classify { file } => {
            let f = load_morphism(file, inputs)?;
            serde_json::to_value(classify_extension(&f)?)?
        }
        Command::Factorize { file, mode } => factorize(cli, file, *mode, inputs)?,
        Command::Kan { file } => kan(file, inputs, &mut o)?,
        Command::Cosk { file, to } => {
            let x = load_simplicial(file, inputs)?;
            let c = coskeleton(&x, *to)?;
            let mut r = Map::new();
            r.insert("level_sizes".into(), json!(c.level_sizes()));
            place_document(&mut r, &cli.out, simplicial_to_json(&c))?;
            Value::Object(r)
        }
        Command::Commutators { file } => commutators(file, inputs, &mut o)?,
        Command::Suite { criteria } => {
            let corpus = default_corpus(cli.profile.into())?;
            let report = run_suite(&corpus, criteria);
            for (id, v) in report.violations() {
                o.violation(
                    format!("criterion {id}: {}", v.property),
                    format!("{}: {}", v.subject, v.witness),
                );
            }
            o.budget_exceeded = report.budget_exceeded();
            serde_json::to_value(&report)?
        }
    };
    o.inputs = std::mem::take(inputs);
    Ok(o)
}

fn validate(file: &Path, inputs: &mut Vec<InputRecord>) -> Result<Value> {
    let doc = load(file, inputs)?;
    Ok(match &doc {
        Document::Algebra(a) => json!({
            "kind": "algebra", "name": a.name(), "size": a.size(),
            "signature": a.signature().to_string(), "valid": true,
        }),
        Document::Homomorphism(h) => json!({
            "kind": "homomorphism", "dom": h.dom().name(), "cod": h.cod().name(),
            "surjective": h.is_surjective(), "valid": true,
        }),
        Document::Simplicial(x) => json!({
            "kind": "simplicial", "name": x.name(), "truncation": x.truncation(),
            "level_sizes": x.level_sizes(), "valid": true,
        }),
        Document::Morphism(f) => json!({
            "kind": "morphism", "dom": f.dom().name(), "cod": f.cod().name(),
            "levelwise_surjective": f.is_levelwise_surjective(), "valid": true,
        }),
    })
}

/// Fills `seed` into every random graph spec that lacks one.
fn fill_seeds(v: &mut Value, seed: u64) {
    match v {
        Value::Object(m) => {
            if m.get("shape").and_then(Value::as_str) == Some("random") && !m.contains_key("seed") {
                m.insert("seed".into(), json!(seed));
            }
            for child in m.values_mut() {
                fill_seeds(child, seed);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|c| fill_seeds(c, seed)),
        _ => {}
    }
}

fn gen(
    cli: &Cli,
    kind: Option<&str>,
    params: &[String],
    spec_file: Option<&Path>,
    inputs: &mut Vec<InputRecord>,
) -> Result<Value> {
    let mut spec = match spec_file {
        Some(p) => {
            inputs.push(hash_input(p)?);
            io::read_json(p)?
        }
        None => json!({}),
    };
    let obj = spec
        .as_object_mut()
        .ok_or_else(|| SimalError::Parse("generator spec must be a JSON object".into()))?;
    if let Some(k) = kind {
        obj.insert("kind".into(), json!(k));
    }
    for p in params {
        let (key, raw) = p.split_once('=').ok_or_else(|| {
            SimalError::InvalidParameters(format!("parameter `{p}` is not key=value"))
        })?;
        let value = serde_json::from_str(raw).unwrap_or_else(|_| json!(raw));
        obj.insert(key.to_string(), value);
    }
    fill_seeds(&mut spec, cli.seed);
    let parsed: GeneratorSpec = serde_json::from_value(spec.clone())
        .map_err(|e| SimalError::InvalidParameters(e.to_string()))?;
    let artifact = generate(&parsed)?;
    let kind = artifact.kind();
    let doc = Document::from(artifact);
    let mut r = Map::new();
    r.insert("spec".into(), spec);
    r.insert("artifact".into(), json!(kind));
    place_document(&mut r, &cli.out, doc.to_json())?;
    Ok(Value::Object(r))
}

fn reflect(
    cli: &Cli,
    file: &Path,
    inputs: &mut Vec<InputRecord>,
    o: &mut Outcome,
) -> Result<Value> {
    let x = load_simplicial(file, inputs)?;
    let r = pi1(&x)?;
    let bijective: Vec<bool> = r
        .eta
        .components()
        .iter()
        .map(|h| h.is_bijective())
        .collect();
    let input_is_groupoid = x.truncation() >= 2 && is_internal_groupoid(&x)?.holds;
    if input_is_groupoid && !bijective.iter().all(|&b| b) {
        o.violation(
            "unit_bijective_on_groupoid",
            format!("levels {bijective:?}"),
        );
    }
    let mut res = json!({
        "input_is_groupoid": input_is_groupoid,
        "groupoid": {
            "objects": r.pi1.x0().size(),
            "arrows": r.pi1.x1().size(),
            "equivalence_relation": r.pi1.is_equivalence_relation(),
        },
        "nerve_level_sizes": r.nerve.sim.level_sizes(),
        "unit_bijective": bijective,
        "h": r.h.iter().map(congruence_json).collect::<Vec<_>>(),
    });
    if let Some(dir) = out_dir(&cli.out)? {
        res["written"] = json!([
            write_file(
                &dir.join("groupoid.json"),
                &simplicial_to_json(&r.nerve.sim)
            )?,
            write_file(&dir.join("unit.json"), &morphism_to_json(&r.eta))?,
            write_file(
                &dir.join("h.json"),
                &json!(r.h.iter().map(congruence_json).collect::<Vec<_>>())
            )?,
        ]);
    }
    Ok(res)
}

fn factorization_json(fz: &Factorization) -> Value {
    json!({
        "middle_level_sizes": fz.e.cod().level_sizes(),
        "e_bijective": fz.e.is_levelwise_bijective(),
        "m_bijective": fz.m.is_levelwise_bijective(),
    })
}

fn factorize(cli: &Cli, file: &Path, mode: Mode, inputs: &mut Vec<InputRecord>) -> Result<Value> {
    let f = load_morphism(file, inputs)?;
    let (fz, mut res) = match mode {
        Mode::Em => {
            let fz = em_factorization(&f)?;
            let r = json!({ "mode": "em", "factorization": factorization_json(&fz) });
            (fz, r)
        }
        Mode::Ml => {
            let nodes = cli.budget.unwrap_or(ML_NODE_BUDGET);
            let ml = ml_factorization(&f, nodes)?;
            let r = json!({
                "mode": "ml",
                "factorization": factorization_json(&ml.factorization),
                "explored": ml.explored,
                "minimal_central_quotients": ml.minimal_successes,
                "samples_inverted": ml.samples_inverted,
                "theta": ml.theta.levels().iter().map(congruence_json).collect::<Vec<_>>(),
            });
            (ml.factorization, r)
        }
    };
    if let Some(dir) = out_dir(&cli.out)? {
        res["written"] = json!([
            write_file(&dir.join("e.json"), &morphism_to_json(&fz.e))?,
            write_file(&dir.join("m.json"), &morphism_to_json(&fz.m))?,
        ]);
    }
    Ok(res)
}

fn kan_violations(report: &KanReport, property: &str, o: &mut Outcome) {
    for e in report.entries.iter().filter(|e| !e.surjective) {
        o.violation(
            property,
            format!(
                "n={} k={}: image {} of {}",
                e.n, e.k, e.image_size, e.target_size
            ),
        );
    }
}

fn kan(file: &Path, inputs: &mut Vec<InputRecord>, o: &mut Outcome) -> Result<Value> {
    Ok(match load(file, inputs)? {
        Document::Simplicial(x) => {
            let r = kan_check(&x)?;
            kan_violations(&r, "kan_condition", o);
            json!({ "kind": "object", "report": r })
        }
        Document::Morphism(f) => {
            let r = kan_fibration_check(&f)?;
            kan_violations(&r, "kan_fibration", o);
            json!({ "kind": "fibration", "report": r })
        }
        d => {
            return Err(SimalError::Parse(format!(
                "kan needs a simplicial object or morphism, found a {}",
                d.kind()
            )))
        }
    })
}

fn commutators(file: &Path, inputs: &mut Vec<InputRecord>, o: &mut Outcome) -> Result<Value> {
    let x = load_simplicial(file, inputs)?;
    if x.truncation() >= 2 {
        let ch = commutator_chain_check(&x)?;
        if !ch.holds {
            o.violation("commutator_chain", "[D0,D1] <= H1 <= D0^D1 fails");
        }
        return Ok(json!({
            "commutator": congruence_json(&ch.commutator),
            "h1": congruence_json(&ch.h1),
            "d0_meet_d1": congruence_json(&ch.d0_meet_d1),
            "chain_holds": ch.holds,
        }));
    }
    let g = graph_reflection(&x)?;
    Ok(json!({
        "commutator": congruence_json(&g.commutator),
        "d0_meet_d1": congruence_json(&x.face_meet(1, 0, 1)),
        "reflection_arrows": g.groupoid.x1().size(),
    }))
}

/// Plain-text rendering of an outcome.
pub fn summary(command: &str, o: &Outcome) -> String {
    let mut s = String::new();
    if command == "suite" {
        if let Some(criteria) = o.results.get("criteria").and_then(Value::as_array) {
            for c in criteria {
                let _ = writeln!(
                    s,
                    "criterion {:>2} {:<28} {}  checks={} violations={}",
                    c["id"].as_u64().unwrap_or(0),
                    c["name"].as_str().unwrap_or(""),
                    if c["passed"] == true { "PASS" } else { "FAIL" },
                    c["checks"],
                    c["violations"].as_array().map_or(0, Vec::len)
                );
            }
        }
    } else {
        s.push_str(&to_pretty(&o.results));
    }
    for v in &o.violations {
        let _ = writeln!(s, "VIOLATION {}: {}", v.property, v.witness);
    }
    let status = if o.results.get("error").is_some() {
        "error"
    } else if o.violations.is_empty() {
        "ok"
    } else {
        "violations found"
    };
    let _ = writeln!(s, "{command}: {status}");
    s
}
