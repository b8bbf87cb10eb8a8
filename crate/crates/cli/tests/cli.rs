use std::process::{Command, Output};

fn glq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glq")).args(args).output().expect("run glq")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn even_q_is_a_usage_error() {
    for args in [&["gl2-table", "--q", "8"][..], &["gl2-reps", "--q", "4"], &["gln-stats", "--q", "6", "--n", "2"]] {
        assert_eq!(glq(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(glq(&["gl2-table"]).status.code(), Some(2));
    assert_eq!(glq(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn table_exit_codes_follow_verdicts() {
    let ok = glq(&["gl2-table", "--q", "7"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("[PASS] table q=7"));
    let bad = glq(&["gl2-table", "--q", "3"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("[FAIL] table q=3: differs on Cuspidal"));
}

#[test]
fn density_snapshot_x30() {
    let o = glq(&["gl2-density", "--X", "30", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "q,residue_mod8,w2_zero,orthogonal,published_total,closed_form,published_count,class_running_ratio,global_running_ratio\n\
         3,3,4,6,5,4,2,0.666667,0.666667\n\
         5,5,3,8,7,3,1,0.375000,0.500000\n\
         7,7,5,10,9,5,O(1),0.500000,0.500000\n\
         9,1,10,12,11,10,11,0.833333,0.611111\n\
         11,3,10,14,13,10,4,0.700000,0.640000\n\
         13,5,5,16,15,5,3,0.333333,0.560606\n\
         17,1,16,20,19,16,19,0.812500,0.616279\n\
         19,3,16,22,21,16,6,0.714286,0.638889\n\
         23,7,9,26,25,9,O(1),0.388889,0.582090\n\
         25,1,22,28,27,22,27,0.800000,0.617284\n\
         27,3,22,30,29,22,8,0.722222,0.635417\n\
         29,5,9,32,31,9,7,0.303571,0.584821\n"
    );
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let csv = stdout(&glq(&["gl2-density", "--X", "60", "--format", "csv"]));
    let json: serde_json::Value = serde_json::from_str(&stdout(&glq(&["gl2-density", "--X", "60", "--format", "json"]))).unwrap();
    assert_eq!(json["config"]["X"], "60");
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let rows = json["rows"].as_array().unwrap();
    for (line, row) in lines.zip(rows) {
        for (col, cell) in header.iter().zip(line.split(',')) {
            let v = &row[*col];
            let text = match v {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) if n.is_f64() => format!("{:.6}", n.as_f64().unwrap()),
                other => other.to_string(),
            };
            assert_eq!(text, cell, "column {col}");
        }
    }
    assert!(!json["verdicts"].as_array().unwrap().is_empty());
}

#[test]
fn census_through_gln_stats() {
    let o = glq(&["gln-stats", "--q", "3", "--n", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["rows"][0]["labels"], 8);
    assert_eq!(json["rows"][0]["self_dual"], 6);
}

#[test]
fn sn_stats_small() {
    let o = glq(&["sn-stats", "--n-max", "12", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("n,partitions,histogram"));
    // n = 1: one partition, v = 0 < 1 + log_2 1.
    assert!(text.contains("\n1,1,0:1,1,1/1,1.000000,"));
    for line in text.lines().skip(2) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[6], cells[7], "{line}");
    }
}

#[test]
fn verify_with_zero_density_tolerance_names_the_failure() {
    let o = glq(&["verify", "--density-tolerance", "0", "--no-fallback"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.starts_with("[FAIL]  7 density limits")));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("[PASS]") || l.starts_with("[FAIL]")).count(), 12);
}
