//! Acceptance battery over the desk corpus. Prints one PASS/FAIL line per
//! criterion and exits non-zero if any criterion fails. Built without the
//! libtest harness so the lines are never captured.

use std::process::ExitCode;
use std::time::Instant;

use simal_core::corpus::{default_corpus, Profile};
use simal_core::suite::{run_criterion, CRITERIA};

fn main() -> ExitCode {
    let t0 = Instant::now();
    let corpus = default_corpus(Profile::Desk).expect("desk corpus builds");
    println!(
        "corpus: {} algebras, {} graphs, {} objects, {} extensions ({:.2?})",
        corpus.algebras.len(),
        corpus.graphs.len(),
        corpus.objects.len(),
        corpus.extensions.len(),
        t0.elapsed()
    );
    let results: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .map(|&(id, _)| {
                let corpus = &corpus;
                s.spawn(move || {
                    let t = Instant::now();
                    (run_criterion(id, corpus), t.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut failed = Vec::new();
    for (r, elapsed) in &results {
        println!(
            "criterion {:>2} {:<28} {}  checks={} skipped={} violations={} time={:.2?}",
            r.id,
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.checks,
            r.skipped,
            r.violations.len(),
            elapsed
        );
        println!("    details: {}", r.details);
        for v in r.violations.iter().take(5) {
            println!("    {} on {}: {}", v.property, v.subject, v.witness);
        }
        if !r.passed {
            failed.push(r.id);
        }
    }
    println!("total {:.2?}", t0.elapsed());
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", results.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
