use std::path::Path;
use std::process::{Command, Output};

use sigmat::extremal::Verdict;
use sigmat_cli::{ReportFile, CSV_HEADER};

fn sigmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sigmat")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn read_csv(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    assert_eq!(r.headers().unwrap().iter().collect::<Vec<_>>(), CSV_HEADER);
    r.records().map(|row| row.unwrap().iter().map(String::from).collect()).collect()
}

#[test]
fn compute_reports_all_indices() {
    let out = sigmat(&["compute", "--seq", "1,1,1,2,2,2,3", "--f", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["sigma_t_classic"], 24);
    assert_eq!(v["sigma_t_f"], 24.0);
    assert_eq!(v["irr_t"], 18);
    assert_eq!(v["first_zagreb"], 24);
    assert_eq!(v["graphical"], true);
    assert_eq!(v["tree_sequence"], true);

    let regular = json(&sigmat(&["compute", "--seq", "3,3,3,3", "--f", "0.7"]));
    assert_eq!(regular["sigma_t_f"], 0.0);

    let anti = json(&sigmat(&["compute", "--seq", "3,2,2,1", "--f", "bin-threshold"]));
    assert!(anti["sigma_t_f"].as_f64().unwrap() > 5.0);
    let f = anti["f"].as_f64().unwrap();
    assert!((f - (10f64 / 8.0).ln() / 2f64.ln()).abs() < 1e-12);
}

#[test]
fn verify_problem1_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let out = sigmat(&["verify", "--theorem", "problem1", "--n", "4..11", "--out", out_dir]);
    assert_eq!(out.status.code(), Some(0));
    let rows = read_csv(&dir.path().join("problem1_summary.csv"));
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r[5] == "confirmed" && r[3] == "2"));
    for n in 4..=11 {
        let file = ReportFile::read(&dir.path().join(format!("problem1_n{n}.json"))).unwrap();
        assert_eq!(file.reports.len(), 1);
        assert_eq!(file.manifest.verdicts[0].verdict, Verdict::Confirmed);
        assert_eq!(file.manifest.domain_sizes[0].label, file.reports[0].label);
    }
}

#[test]
fn seq_strong_small_case_is_a_tie() {
    let dir = tempfile::tempdir().unwrap();
    let out = sigmat(&["verify", "--theorem", "seq-strong", "--n", "4", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let file = ReportFile::read(&dir.path().join("seq-strong_n4.json")).unwrap();
    assert_eq!(file.reports[0].verdict, Verdict::TieDetected);
    assert_eq!(file.reports[0].optimizers.len(), 3);
}

#[test]
fn chem_max_range() {
    let dir = tempfile::tempdir().unwrap();
    let out = sigmat(&["verify", "--theorem", "chem-max", "--n", "7..=16", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let rows = read_csv(&dir.path().join("chem-max_summary.csv"));
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r[5] != "refuted"));
}

#[test]
fn search_trees_and_shard_independence() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path();
    let run = |sub: &str, shards: &str, extra: &[&str]| {
        let out_dir = base.join(sub);
        let mut args = vec!["search", "--domain", "trees", "--n", "12", "--shards", shards, "--out"];
        args.push(out_dir.to_str().unwrap());
        args.extend_from_slice(extra);
        let out = sigmat(&args);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        ReportFile::read(&out_dir.join("trees_n12.json")).unwrap().reports.remove(0)
    };

    let star = run("a", "1", &["--f", "1/n", "--min"]);
    assert_eq!(star.optimizers[0].to_string(), "(11,1,1,1,1,1,1,1,1,1,1,1)");
    assert!((star.optimum.value - 11.0 * 10f64.powf(1.0 / 12.0)).abs() < 1e-9);

    let path = run("b", "1", &["--f", "2", "--min"]);
    assert_eq!(path.optimizers[0].to_string(), "(2,2,2,2,2,2,2,2,2,2,1,1)");
    assert_eq!(path.exact_optimum, Some(20));

    let one = run("c", "1", &["--f", "1/n", "--max"]);
    let four = run("d", "4", &["--f", "1/n", "--max"]);
    assert!(one.same_result(&four));
    assert_eq!(one.verdict, Verdict::Explored);
}

#[test]
fn report_merges_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert!(sigmat(&["verify", "--theorem", "tree-min", "--n", "5..6", "--out", d]).status.success());
    let csv = dir.path().join("merged.csv");
    let out = sigmat(&[
        "report",
        dir.path().join("tree-min_n5.json").to_str().unwrap(),
        dir.path().join("tree-min_n6.json").to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let merged = read_csv(&csv);
    let direct = read_csv(&dir.path().join("tree-min_summary.csv"));
    assert_eq!(merged, direct);
    assert_eq!(merged.len(), 10);

    // JSON round-trips exactly
    let file = ReportFile::read(&dir.path().join("tree-min_n5.json")).unwrap();
    let again = serde_json::from_str::<ReportFile>(&serde_json::to_string(&file).unwrap()).unwrap();
    assert_eq!(file, again);
}

#[test]
fn malformed_inputs_exit_with_usage_code() {
    let cases: &[&[&str]] = &[
        &["compute", "--seq", "1,2,x"],
        &["compute", "--seq", ""],
        &["compute", "--seq", "1,2,3", "--f", "-1"],
        &["compute", "--seq", "1,2,3", "--f", "c:1.5"],
        &["compute", "--seq", "1,2,3", "--f", "bin-threshold"],
        &["compute", "--seq", "1,2,3", "--f", "threshold"],
        &["verify", "--theorem", "nope", "--n", "5"],
        &["verify", "--theorem", "problem1", "--n", "7..5"],
        &["verify", "--theorem", "problem1", "--n", "a..b"],
        &["verify", "--theorem", "problem1", "--n", "2"],
        &["verify", "--theorem", "chem-max", "--n", "5"],
        &["verify", "--theorem", "problem2", "--n", "5", "--c", "1.2"],
        &["search", "--domain", "forest", "--n", "5", "--f", "1", "--max"],
        &["search", "--domain", "trees", "--n", "5", "--f", "1", "--max", "--shards", "0"],
        &["search", "--domain", "trees", "--n", "5", "--f", "1", "--min", "--max"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = sigmat(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
    let out = sigmat(&["compute", "--seq", "1,2,x"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains('x'));
}

#[test]
fn budget_refusal_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_sigmat"))
        .env("SIGMA_BUDGET", "1000")
        .args(["search", "--domain", "graphical", "--n", "12", "--f", "1/n", "--max", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1352078"));
}
