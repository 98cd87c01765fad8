use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn simal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simal"))
        .args(args)
        .env_remove("SIMAL_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("process exited normally")
}

/// Runs `simal gen` and writes the generated document into `dir/name`.
fn generate(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let out = path.to_str().unwrap().to_string();
    full.extend_from_slice(&["--out", &out]);
    let o = simal(&full);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn json_report(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let o = simal(&full);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!(
            "report is JSON ({e}): {}",
            String::from_utf8_lossy(&o.stdout)
        )
    });
    (code(&o), v)
}

const PAIR_Z4: &str =
    r#"of={"kind":"pair_groupoid","algebra":{"kind":"cyclic_group","n":4},"truncation":2}"#;

#[test]
fn validate_accepts_a_generated_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let z4 = generate(dir.path(), "z4.json", &["cyclic_group", "n=4"]);
    let (c, r) = json_report(&["validate", z4.to_str().unwrap()]);
    assert_eq!(c, 0);
    assert_eq!(r["results"]["kind"], "algebra");
    assert_eq!(r["results"]["size"], 4);
    assert_eq!(r["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn malformed_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&simal(&["validate", bad.to_str().unwrap()])), 1);
    assert_eq!(code(&simal(&["validate", "/nonexistent/file.json"])), 1);

    // A well-formed algebra whose Mal'tsev term fails the identities.
    let table = r#"{"name":"M","size":2,"operations":[{"name":"meet","arity":2,
        "table":[[0,0],[0,1]]}],"maltsev":{"term":"meet(x, meet(y, z))"}}"#;
    std::fs::write(&bad, table).unwrap();
    assert_eq!(code(&simal(&["validate", bad.to_str().unwrap()])), 1);
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(code(&simal(&["frobnicate"])), 1);
    assert_eq!(
        code(&simal(&["factorize", "x.json", "--mode", "sideways"])),
        1
    );
    assert_eq!(code(&simal(&["--help"])), 0);
}

#[test]
fn reflecting_a_groupoid_nerve_gives_a_bijective_unit() {
    let dir = tempfile::tempdir().unwrap();
    let x = generate(
        dir.path(),
        "pair.json",
        &[
            "pair_groupoid",
            r#"algebra={"kind":"cyclic_group","n":3}"#,
            "truncation=2",
        ],
    );
    let (c, r) = json_report(&["reflect", x.to_str().unwrap()]);
    assert_eq!(c, 0);
    assert_eq!(r["results"]["input_is_groupoid"], true);
    assert_eq!(
        r["results"]["unit_bijective"],
        serde_json::json!([true, true, true])
    );
    assert_eq!(r["results"]["groupoid"]["equivalence_relation"], true);

    let out = dir.path().join("reflected");
    std::fs::create_dir(&out).unwrap();
    let o = simal(&[
        "reflect",
        x.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    for f in ["groupoid.json", "unit.json", "h.json"] {
        assert!(out.join(f).exists(), "{f} missing");
    }
    // The written nerve validates and is a groupoid.
    let (c, g) = json_report(&[
        "groupoid-check",
        out.join("groupoid.json").to_str().unwrap(),
    ]);
    assert_eq!(c, 0);
    assert_eq!(g["results"]["holds"], true);
}

#[test]
fn classify_and_factorize_a_quotient_extension() {
    let dir = tempfile::tempdir().unwrap();
    let f = generate(
        dir.path(),
        "q.json",
        &["quotient_extension", PAIR_Z4, "pairs=[[0,0,2]]"],
    );
    let path = f.to_str().unwrap();
    let (c, r) = json_report(&["classify", path]);
    assert_eq!(c, 0, "{r}");
    let res = &r["results"];
    assert_eq!(res["central_by_conditions"], res["central_by_definition"]);
    assert_eq!(res["trivial_by_lattice"], res["trivial_by_comparison"]);

    for mode in ["em", "ml"] {
        let (c, r) = json_report(&["factorize", path, "--mode", mode]);
        assert_eq!(c, 0, "{mode}: {r}");
    }
    let (c, _) = json_report(&["kan", path]);
    assert_eq!(c, 0);
}

#[test]
fn tiny_budget_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let f = generate(
        dir.path(),
        "q.json",
        &["quotient_extension", PAIR_Z4, "pairs=[[0,0,2]]"],
    );
    let o = simal(&["classify", f.to_str().unwrap(), "--budget", "5"]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
    let o = Command::new(env!("CARGO_BIN_EXE_simal"))
        .args(["classify", f.to_str().unwrap()])
        .env("SIMAL_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn reports_are_deterministic_apart_from_the_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let x = generate(
        dir.path(),
        "g.json",
        &[
            "coskeleton_of_graph",
            r#"graph={"shape":"random","algebra":{"kind":"cyclic_group","n":3}}"#,
            "truncation=2",
        ],
    );
    let run = || json_report(&["commutators", x.to_str().unwrap(), "--seed", "7"]).1;
    let (mut a, mut b) = (run(), run());
    assert_eq!(a["determinism_hash"], b["determinism_hash"]);
    assert!(a["sidecar"]["elapsed_ms"].is_number());
    a.as_object_mut().unwrap().remove("sidecar");
    b.as_object_mut().unwrap().remove("sidecar");
    assert_eq!(a, b);
}

#[test]
fn gen_is_reproducible_under_a_seed() {
    let args = |seed: &'static str| {
        vec![
            "gen",
            "graph",
            r#"graph={"shape":"random","algebra":{"kind":"cyclic_group","n":4}}"#,
            "--seed",
            seed,
        ]
    };
    let a = simal(&args("3"));
    let b = simal(&args("3"));
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn coskeleton_and_commutators_of_a_congruence_nerve() {
    let dir = tempfile::tempdir().unwrap();
    let x = generate(
        dir.path(),
        "n.json",
        &[
            "congruence_nerve",
            r#"algebra={"kind":"cyclic_group","n":4}"#,
            "pairs=[[0,2]]",
            "truncation=2",
        ],
    );
    let c3 = dir.path().join("c3.json");
    let o = simal(&[
        "cosk",
        x.to_str().unwrap(),
        "--to",
        "3",
        "--out",
        c3.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (c, v) = json_report(&["validate", c3.to_str().unwrap()]);
    assert_eq!(c, 0);
    assert_eq!(v["results"]["truncation"], 3);

    let (c, r) = json_report(&["commutators", x.to_str().unwrap()]);
    assert_eq!(c, 0, "{r}");
    assert!(r["violations"].as_array().unwrap().is_empty());
}

#[test]
fn suite_subset_passes() {
    let (c, r) = json_report(&["suite", "--criteria", "1,2"]);
    assert_eq!(c, 0, "{}", r["violations"]);
    let ids: Vec<u64> = r["results"]["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_u64().unwrap())
        .collect();
    assert_eq!(ids, vec![1, 2]);
}
