use std::process::{Command, Output};

fn rvq(args: &[&str], cache: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rvq")).args(args).env("RVQ_CACHE_DIR", cache).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn stratum_of_genus_two_witness() {
    let dir = tempfile::tempdir().unwrap();
    let o = rvq(&["stratum", "1 2 3 A A 4 / 4 3 B B 2 1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Q(6,-1,-1) genus=2");
    let o = rvq(&["stratum", "1 2 3 4 / 4 3 2 1"], dir.path());
    assert_eq!(stdout(&o).trim(), "H(2) [as Q(4)] genus=2");
}

#[test]
fn validate_letter_count() {
    let dir = tempfile::tempdir().unwrap();
    let o = rvq(&["validate", "1 2 / 2 2 1"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("appears 3 times") || stdout(&o).contains("letter"), "{}", stdout(&o));
    let o = rvq(&["--json", "validate", "1 2 / 2 2 1"], dir.path());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["valid"], false);
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(rvq(&["frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(rvq(&["cocycle", "1 2 / 2 1"], dir.path()).status.code(), Some(2));
    assert_eq!(rvq(&["cocycle", "1 2 / 2 1", "--walk", "tx"], dir.path()).status.code(), Some(2));
}

#[test]
fn verify_table_passes_and_caches() {
    let dir = tempfile::tempdir().unwrap();
    let o = rvq(&["verify-table"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS row")).count(), 12);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= 4);
    // second run reads the cache and prints the same report
    let again = rvq(&["verify-table"], dir.path());
    assert_eq!(stdout(&again), out);
    let o = rvq(&["--json", "verify-table", "--rows", "11-12", "--low-genus"], dir.path());
    let rows: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r["passed"] == true));
    assert_eq!(rows[0]["start_identified"], "H(3,3)^nonhyp");
}

#[test]
fn deterministic_class_output() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--json", "class", "--reduced", "1 2 3 A A 4 / 4 3 B B 2 1"];
    let a = rvq(&args, dir.path());
    let b = rvq(&["--threads", "1", "--json", "class", "--reduced", "1 2 3 A A 4 / 4 3 B B 2 1"], dir.path());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(stdout(&a).trim()).unwrap();
    assert_eq!(v["complete"], true);
    let dot1 = rvq(&["class", "--dot", "tau_sym(5)"], dir.path());
    let dot2 = rvq(&["--threads", "2", "class", "--dot", "tau_sym(5)"], dir.path());
    assert_eq!(dot1.stdout, dot2.stdout);
    assert!(stdout(&dot1).starts_with("digraph"));
}

#[test]
fn budget_truncation_is_negative() {
    let dir = tempfile::tempdir().unwrap();
    let o = rvq(&["--budget", "5", "class", "tau_zorich(3)"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("complete=false"));
}

#[test]
fn cocycle_cover_identify_group() {
    let dir = tempfile::tempdir().unwrap();
    let o = rvq(&["cocycle", "1 2 / 2 1", "--walk", "t"], dir.path());
    assert_eq!(stdout(&o), "1 1\n0 1\n");
    let o = rvq(&["cover", "1 2 3 A A 4 / 4 3 B B 2 1"], dir.path());
    assert!(stdout(&o).starts_with("H(3,3) + 2 marked genus=4"), "{}", stdout(&o));
    assert!(stdout(&o).contains("minus_eligible=true"));
    let o = rvq(&["identify", "1 2 3 4 5 6 / 6 4 2 5 3 1"], dir.path());
    assert!(stdout(&o).starts_with("H(4)^odd"));
    let o = rvq(&["--json", "group", "tau_zorich(3)", "--mod", "2"], dir.path());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["index"], "28");
    let o = rvq(&["group", "1 2 / 2 1", "--mod", "4"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn extend_and_search() {
    let dir = tempfile::tempdir().unwrap();
    let o = rvq(&["extend", "tau_sym(4)", "--singularity", "0", "--orders", "3,1"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Q(3,1)"));
    let o = rvq(&["extend", "tau_sym(6)", "--singularity", "0", "--orders", "3,3,2"], dir.path());
    assert!(stdout(&o).contains("Q(3,3,2) genus=3"), "{}", stdout(&o));
    let o = rvq(&["--json", "search", "--from", "tau_sym(4)", "--target-stratum", "6,-1,-1", "--nonhyp", "--max", "400"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let found: Vec<String> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["extended"].as_str().unwrap().to_string())
        .collect();
    assert!(!found.is_empty());
    let o = rvq(&["search", "--from", "tau_sym(4)", "--target-stratum", "6,3,-1"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}
