use std::fs;

use homideal_cli::{fib_outcome, oracle_outcome, run, CommandOutcome, OracleRow};
use homideal_core::fib::fib_partition;
use homideal_core::nakayama::{Classification, SubsetSpec};

fn homideal(args: &[&str]) -> CommandOutcome {
    let mut argv = vec!["homideal"];
    argv.extend_from_slice(args);
    run(argv)
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.records()
        .map(|rec| rec.unwrap().iter().map(str::to_string).collect())
        .collect()
}

#[test]
fn nhit_table_last_row() {
    let out = homideal(&["triangle", "nhit", "--rows", "7"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("n,k,value\n"));
    let rows = csv_rows(&out.stdout);
    let last: Vec<String> = rows
        .iter()
        .filter(|r| r[0] == "7")
        .map(|r| r[2].clone())
        .collect();
    assert_eq!(last, ["16", "24", "28", "30", "31"]);
    assert_eq!(rows.first().unwrap(), &["3", "2", "1"]);
    assert_eq!(rows.last().unwrap(), &["7", "6", "31"]);
    let rec = homideal(&["triangle", "nhit", "--rows", "7", "--method", "recurrence"]);
    assert_eq!(rec.stdout, out.stdout);
}

#[test]
fn hit_table() {
    let out = homideal(&["triangle", "hit", "--rows", "5"]);
    let values: Vec<String> = csv_rows(&out.stdout)
        .into_iter()
        .map(|r| r[2].clone())
        .collect();
    assert_eq!(values, ["7", "14", "13", "28", "26", "25"]);
}

#[test]
fn fibonacci_verify_reports() {
    let out = homideal(&["fibonacci", "verify", "--upto", "4"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].starts_with("f_2 = 1"));
    assert_eq!(lines[3], "f_8 = 21 = 0*0 + 3*3 + 0*0 + 1*12 ok");
    assert!(lines[4].starts_with("f_10 = 55 ="));
}

#[test]
fn oracle_verify_small() {
    let out = homideal(&["oracle", "verify", "--n", "4", "--i", "1", "--k", "3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let rows = csv_rows(&out.stdout);
    assert_eq!(rows.len(), 16);
    assert_eq!(rows.iter().filter(|r| r[1] == "NonHomological").count(), 3);
    assert!(rows.iter().all(|r| r[1] == r[2]));
    let one = homideal(&[
        "oracle",
        "verify",
        "--n",
        "4",
        "--i",
        "1",
        "--k",
        "3",
        "--subset",
        "2,3",
        "--ext-from",
        "1",
    ]);
    assert_eq!(
        csv_rows(&one.stdout),
        [["{2,3}", "NonHomological", "NonHomological", "1"]]
    );
}

#[test]
fn jobs_do_not_change_output() {
    let base = homideal(&["nakayama", "sweep", "--n", "6", "--i", "2", "--k", "3"]);
    let par = homideal(&[
        "nakayama", "sweep", "--n", "6", "--i", "2", "--k", "3", "--jobs", "3",
    ]);
    assert_eq!(base, par);
    assert_eq!(csv_rows(&base.stdout).len(), 64);
    let a = homideal(&[
        "oracle", "verify", "--n", "5", "--i", "1", "--k", "2", "--jobs", "1",
    ]);
    let b = homideal(&[
        "oracle", "verify", "--n", "5", "--i", "1", "--k", "2", "--jobs", "4",
    ]);
    assert_eq!(a, b);
}

#[test]
fn classify_single_subset() {
    let out = homideal(&[
        "nakayama", "classify", "--n", "6", "--i", "2", "--k", "3", "--subset", "3,4",
    ]);
    assert_eq!(
        out.stdout,
        "subset,classification\n\"{3,4}\",NonHomological\n"
    );
    let out = homideal(&[
        "nakayama", "classify", "--n", "4", "--i", "1", "--k", "3", "--subset", "7",
    ]);
    assert_eq!(out.code, 1);
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["frobnicate"][..],
        &["triangle", "nhit"],
        &["triangle", "nhit", "--rows", "7", "--color"],
        &["nakayama", "sweep", "--n", "4", "--i", "3", "--k", "3"],
        &[
            "oracle",
            "verify",
            "--n",
            "4",
            "--i",
            "1",
            "--k",
            "3",
            "--ext-from",
            "2",
        ],
        &["message", "--n", "2"],
        &["triangle", "sums", "--rows", "2"],
        &[
            "nakayama", "sweep", "--n", "4", "--i", "1", "--k", "2", "--jobs", "0",
        ],
        &[],
    ] {
        let out = homideal(args);
        assert_eq!(out.code, 1, "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
    assert_eq!(homideal(&["--help"]).code, 0);
    assert!(homideal(&["--version"]).stdout.contains("homideal"));
}

#[test]
fn message_output() {
    let out = homideal(&["message", "--n", "6", "--map", "pow2", "--fold", "diff"]);
    assert_eq!(
        out.stdout,
        "message: (4)(3) + (4)(2) + (4)(1) + (4)(0)\nwords: 8 12 14 15\nspecialized: 49\n"
    );
    let plain = homideal(&["message", "--n", "5"]);
    assert_eq!(plain.stdout, "message: (3)(2) + (3)(1) + (3)(0)\n");
    let ext = homideal(&["message", "--n", "3", "--map", "pow2"]);
    assert!(ext.stdout.contains("specialized: 1 (extrapolated"));
    assert_eq!(
        homideal(&["message", "--n", "3", "--map", "identity"]).code,
        1
    );
}

#[test]
fn row_sums_agree_with_messages() {
    let out = homideal(&["triangle", "sums", "--rows", "12"]);
    assert_eq!(out.code, 0);
    for r in csv_rows(&out.stdout) {
        assert_eq!(r[1], r[2]);
    }
}

#[test]
fn brauer_commands_on_gamma() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g5.json");
    let doc = homideal(&["brauer", "gamma", "--n", "5"]);
    assert_eq!(doc.code, 0);
    fs::write(&path, &doc.stdout).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(homideal(&["brauer", "validate", p]).stdout, "valid\n");
    let dims = homideal(&["brauer", "dims", p]).stdout;
    assert!(dims.contains("quiver_vertices: 3\n"));
    assert!(dims.contains("arrows: 6\n"));
    assert!(dims.contains("special_cycle_classes: 4\n"));
    assert!(dims.contains("algebra_dimension: 18\n"));
    assert!(dims.contains("center_dimension: 10\n"));
    let dot = homideal(&["brauer", "quiver", p]).stdout;
    assert!(dot.starts_with("digraph Q {"));
    assert_eq!(dot.matches(" -> ").count(), 6);
    let rels = homideal(&["brauer", "relations", p]).stdout;
    assert!(rels
        .lines()
        .all(|l| ["I: ", "II: ", "III: "].iter().any(|p| l.starts_with(p))));
}

#[test]
fn brauer_rejects_bad_documents() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"vertices":[{"id":"a","mu":1}],"polygons":[["a"]]}"#,
    )
    .unwrap();
    let out = homideal(&["brauer", "validate", bad.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(
        out.stderr.contains("not a Brauer configuration"),
        "{}",
        out.stderr
    );
    let junk = dir.path().join("junk.json");
    fs::write(
        &junk,
        r#"{"schema": 1, "vertices": [], "polygons": [], "extra": 0}"#,
    )
    .unwrap();
    assert_eq!(
        homideal(&["brauer", "dims", junk.to_str().unwrap()]).code,
        1
    );
    assert_eq!(homideal(&["brauer", "dims", "/nonexistent/x.json"]).code, 1);
}

#[test]
fn oeis_check_runs_offline_and_detects_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let ok = homideal(&[
        "oeis",
        "check",
        "--id",
        "A000337",
        "--against",
        "row-sums",
        "--rows",
        "12",
        "--cache-dir",
        cache,
    ]);
    assert_eq!(ok.code, 0, "{}", ok.stderr);
    assert!(ok.stdout.contains("10/10 aligned terms match"));
    assert!(ok.stdout.contains("source: bundled"));

    // a cached copy takes precedence over the bundled one
    fs::write(dir.path().join("b000337.txt"), "1 1\n2 5\n3 18\n4 49\n").unwrap();
    let bad = homideal(&[
        "oeis",
        "check",
        "--id",
        "A000337",
        "--against",
        "row-sums",
        "--rows",
        "12",
        "--cache-dir",
        cache,
    ]);
    assert_eq!(bad.code, 2);
    assert!(bad
        .stdout
        .contains("first mismatch at position 2: generated 17, expected 18"));
    assert!(bad.stdout.contains("source: cache"));
    let report_only = homideal(&[
        "oeis",
        "check",
        "--id",
        "A000337",
        "--against",
        "row-sums",
        "--cache-dir",
        cache,
        "--report-only",
    ]);
    assert_eq!(report_only.code, 0);
}

#[test]
fn oeis_fixture_columns() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    for (id, against) in [
        ("A132262", "d-column0"),
        ("A110122", "d-column1"),
        ("A000045", "fibonacci"),
        ("A000337", "messages"),
    ] {
        let out = homideal(&[
            "oeis",
            "check",
            "--id",
            id,
            "--against",
            against,
            "--cache-dir",
            cache,
        ]);
        assert_eq!(out.code, 0, "{id}: {}", out.stdout);
    }
    let unknown = homideal(&[
        "oeis",
        "check",
        "--id",
        "A000001",
        "--against",
        "fibonacci",
        "--cache-dir",
        cache,
    ]);
    assert_eq!(unknown.code, 1);
    let diag = homideal(&[
        "oeis",
        "check",
        "--id",
        "A274868",
        "--against",
        "diagonal",
        "--rows",
        "20",
        "--cache-dir",
        cache,
    ]);
    assert_eq!(diag.code, 0);
    assert!(diag.stdout.starts_with("A274868: shift"));
}

#[test]
fn corrupted_fib_report_exits_2() {
    let mut reports: Vec<_> = (0..=4).map(|i| fib_partition(i).unwrap()).collect();
    assert_eq!(fib_outcome(&reports).code, 0);
    reports[3].reference += 1;
    let out = fib_outcome(&reports);
    assert_eq!(out.code, 2);
    assert!(out
        .stdout
        .contains("f_8 = 21 = 0*0 + 3*3 + 0*0 + 1*12 MISMATCH (expected 22)"));
    assert!(out.stderr.contains("f_8"));
}

#[test]
fn corrupted_oracle_row_exits_2() {
    let mut rows = vec![
        OracleRow {
            subset: SubsetSpec::from_members([2]),
            oracle: Classification::NonHomological,
            classifier: Classification::NonHomological,
            max_nonzero_ext: Some(1),
        },
        OracleRow {
            subset: SubsetSpec::empty(),
            oracle: Classification::Homological,
            classifier: Classification::Homological,
            max_nonzero_ext: None,
        },
    ];
    assert_eq!(oracle_outcome(&rows, false).code, 0);
    rows[1].classifier = Classification::NonHomological;
    let out = oracle_outcome(&rows, false);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("disagree on 1 subset(s): {}"));
}

#[test]
fn seed_docs_writes_tables() {
    let dir = tempfile::tempdir().unwrap();
    let docs = dir.path().join("docs");
    let out = homideal(&["--seed-docs", "--docs-dir", docs.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let nhit = fs::read_to_string(docs.join("nhit.csv")).unwrap();
    assert!(nhit.ends_with("7,2,16\n7,3,24\n7,4,28\n7,5,30\n7,6,31\n"));
    let hit = fs::read_to_string(docs.join("hit.csv")).unwrap();
    assert!(hit.ends_with("7,6,97\n"));
    let d = fs::read_to_string(docs.join("d_array.csv")).unwrap();
    assert!(d.contains("6,0,29\n"));
    assert!(d.ends_with("7,7,1\n"));
    let diag = fs::read_to_string(docs.join("a274868_diagonals.txt")).unwrap();
    assert!(diag.contains("n+k constant"));
    assert!(diag.contains("n-k constant"));
    let again = homideal(&["--seed-docs", "--docs-dir", docs.to_str().unwrap()]);
    assert_eq!(again.code, 0);
    assert_eq!(fs::read_to_string(docs.join("nhit.csv")).unwrap(), nhit);
}

#[test]
fn pretty_tables() {
    let out = homideal(&["--pretty", "triangle", "hit", "--rows", "4"]);
    assert_eq!(
        out.stdout,
        "n  k  value\n3  2      7\n4  2     14\n4  3     13\n"
    );
    let d = homideal(&["fibonacci", "triangle", "--rows", "2"]);
    assert_eq!(
        d.stdout,
        "i,c,value\n0,0,1\n1,0,0\n1,1,1\n2,0,2\n2,1,0\n2,2,1\n"
    );
}

#[test]
fn hooks_table() {
    let out = homideal(&["fibonacci", "hooks", "--upto", "15"]);
    assert_eq!(out.code, 0);
    let rows = csv_rows(&out.stdout);
    assert_eq!(rows.len(), 14);
    assert!(rows.iter().all(|r| r[3] == "true" && r[1] == r[2]));
    assert_eq!(homideal(&["fibonacci", "hooks", "--upto", "1"]).code, 1);
}
