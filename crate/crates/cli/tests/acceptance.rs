//! One PASS/FAIL line per acceptance criterion. Criterion 12 additionally
//! runs the `glq` binary twice and compares its bytes.

use std::process::Command;

use glq_core::acceptance::{run_all, Tolerances};

fn density_output(jobs: &str, format: &str) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_glq"))
        .args(["gl2-density", "--X", "10000", "--format", format, "--jobs", jobs])
        .output()
        .expect("run glq");
    assert!(out.status.code().is_some_and(|c| c <= 1), "glq exited with {:?}", out.status);
    out.stdout
}

#[test]
fn acceptance() {
    let tol = Tolerances::default();
    let mut results = run_all(&tol, 8).expect("acceptance checks ran");
    let binary_same = ["csv", "json", "pretty"].iter().all(|f| density_output("1", f) == density_output("8", f));
    if let Some(last) = results.iter_mut().find(|r| r.id == 12) {
        last.pass &= binary_same;
        last.detail = format!("{}; glq gl2-density --jobs 1 vs --jobs 8 output {}", last.detail, if binary_same { "identical" } else { "differs" });
    }
    println!();
    for r in &results {
        println!("{r}");
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.pass).map(|r| r.id).collect();
    assert!(failed.is_empty(), "criteria failing: {failed:?}");
}
