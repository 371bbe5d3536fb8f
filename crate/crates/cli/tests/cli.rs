use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_icis-cli"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

/// Header and rows of a CSV report, comment lines skipped.
fn csv_table(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let mut rdr = csv::Reader::from_reader(body.as_bytes());
    let header = rdr.headers().unwrap().iter().map(String::from).collect();
    let rows = rdr
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn json_records(text: &str) -> Vec<serde_json::Map<String, Value>> {
    text.lines()
        .map(|l| match serde_json::from_str(l).unwrap() {
            Value::Object(m) => m,
            other => panic!("not an object: {other}"),
        })
        .collect()
}

fn json_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[test]
fn invariants_counterexample_row() {
    let (header, rows) = csv_table(&stdout(&[
        "invariants",
        "--n",
        "2",
        "--degrees",
        "3,3",
        "--format",
        "csv",
    ]));
    assert_eq!(
        header,
        [
            "n",
            "r",
            "degrees",
            "mu",
            "pg",
            "chi",
            "strong_verdict",
            "new_verdict",
            "bound_value"
        ]
    );
    assert_eq!(
        rows,
        [[
            "2",
            "2",
            "3,3",
            "80",
            "15",
            "81",
            "strong-durfee-violated",
            "new-conjecture-holds",
            "60/1"
        ]]
    );
}

#[test]
fn unsorted_degrees_are_echoed_sorted() {
    let out = stdout(&[
        "invariants",
        "--n",
        "3",
        "--degrees",
        "4,2",
        "--format",
        "csv",
    ]);
    assert!(
        out.contains("# note: degrees sorted: input 4,2 echoed as 2,4"),
        "{out}"
    );
    let (_, rows) = csv_table(&out);
    assert_eq!(rows[0][2], "2,4");
}

#[test]
fn linear_degrees_are_reduced() {
    let out = stdout(&[
        "invariants",
        "--n",
        "2",
        "--degrees",
        "1,3",
        "--format",
        "csv",
    ]);
    assert!(out.contains("reduced"), "{out}");
    let (_, rows) = csv_table(&out);
    assert_eq!(
        (
            rows[0][1].as_str(),
            rows[0][3].as_str(),
            rows[0][4].as_str()
        ),
        ("1", "8", "1")
    );
}

#[test]
fn invalid_input_exits_with_two() {
    for args in [
        &["invariants", "--n", "0", "--degrees", "3"][..],
        &["invariants", "--n", "2", "--degrees", "1,1"],
        &["invariants", "--n", "2", "--degrees", "0,3"],
        &["search", "--n", "2", "--r", "2", "--p", "5..3"],
        &["trace", "--n", "2", "--r", "2", "--p", "1"],
        &["bounds", "--n-max", "0", "--r-max", "3"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn bad_order_variable_exits_with_two() {
    let out = Command::new(env!("CARGO_BIN_EXE_icis-cli"))
        .arg("selftest")
        .env("ICIS_SERIES_ORDER", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_reports_each_bound() {
    let (_, rows) = csv_table(&stdout(&[
        "verify",
        "--n",
        "2",
        "--degrees",
        "3,3",
        "--format",
        "csv",
    ]));
    let summary: Vec<(&str, &str, &str)> = rows
        .iter()
        .map(|r| (r[0].as_str(), r[3].as_str(), r[4].as_str()))
        .collect();
    assert_eq!(
        summary,
        [
            ("strong-durfee", "90/1", "<"),
            ("new-conjecture", "60/1", ">"),
            ("c-bound", "540/7", ">"),
        ]
    );
}

#[test]
fn search_finds_the_minimal_counterexample() {
    let records = json_records(&stdout(&[
        "search",
        "--n",
        "2",
        "--r",
        "2",
        "--p",
        "2..10",
        "--equal",
        "--format",
        "json-lines",
    ]));
    let meta = &records[0];
    assert_eq!(meta["minimal_violation"], "3,3");
    assert_eq!(meta["minimal_violation.mu"], 80);
    assert_eq!(meta["minimal_violation.pg"], 15);
    assert_eq!(meta["strong_violations"], 8);
}

#[test]
fn hypersurface_search_has_no_violation() {
    let records = json_records(&stdout(&[
        "search",
        "--n",
        "2",
        "--r",
        "1",
        "--p",
        "2..12",
        "--format",
        "json-lines",
    ]));
    assert_eq!(records[0]["minimal_violation"], "none");
    assert_eq!(records.len(), 1);
}

#[test]
fn bounds_table_is_exact() {
    let (_, rows) = csv_table(&stdout(&[
        "bounds",
        "--n-max",
        "3",
        "--r-max",
        "3",
        "--decimal",
        "--format",
        "csv",
    ]));
    let c: Vec<&str> = rows.iter().map(|r| r[2].as_str()).collect();
    assert_eq!(
        c,
        ["2/1", "2/1", "2/1", "6/1", "36/7", "24/5", "24/1", "16/1", "40/3"]
    );
    assert_eq!(rows[4][6], "5.142857");
}

#[test]
fn csv_and_json_lines_carry_the_same_cells() {
    for args in [
        &["search", "--n", "2", "--r", "3", "--p", "2..6", "--full"][..],
        &[
            "trace",
            "--n",
            "3",
            "--r",
            "2",
            "--p",
            "3,10,50",
            "--decimal",
        ],
        &["bounds", "--n-max", "4", "--r-max", "5"],
        &["invariants", "--n", "4", "--degrees", "2,3,5"],
    ] {
        let with = |format: &str| {
            let mut a = args.to_vec();
            a.extend(["--format", format]);
            stdout(&a)
        };
        let (header, rows) = csv_table(&with("csv"));
        let records = json_records(&with("json-lines"));
        assert_eq!(records[0]["record"], "meta");
        assert_eq!(records.len() - 1, rows.len(), "{args:?}");
        for (rec, row) in records[1..].iter().zip(&rows) {
            assert_eq!(rec["record"], "row");
            for (col, cell) in header.iter().zip(row) {
                assert_eq!(&json_text(&rec[col]), cell, "{args:?} column {col}");
            }
        }
    }
}

#[test]
fn integers_are_unquoted_json_numbers() {
    let records = json_records(&stdout(&[
        "trace",
        "--n",
        "5",
        "--r",
        "3",
        "--p",
        "2000",
        "--format",
        "json-lines",
    ]));
    assert!(records[1]["mu"].is_number());
    assert!(records[1]["mu"].to_string().len() > 25);
    assert!(records[1]["ratio"].as_str().unwrap().contains('/'));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &[
            "search", "--n", "3", "--r", "2", "--p", "2..7", "--full", "--format", "csv",
        ][..],
        &[
            "trace",
            "--n",
            "2",
            "--r",
            "2",
            "--p",
            "5,10,20,50",
            "--format",
            "table",
        ],
    ] {
        assert_eq!(stdout(args), stdout(args));
    }
}

#[test]
fn timing_goes_to_stderr_only() {
    let args = [
        "invariants",
        "--n",
        "2",
        "--degrees",
        "3,3",
        "--format",
        "csv",
    ];
    let mut timed = args.to_vec();
    timed.push("--timing");
    let out = run(&timed);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), stdout(&args));
    assert!(String::from_utf8(out.stderr).unwrap().contains("elapsed"));
}

#[test]
fn trace_reports_exact_deviations() {
    let records = json_records(&stdout(&[
        "trace",
        "--n",
        "2",
        "--r",
        "2",
        "--p",
        "5,10",
        "--format",
        "json-lines",
    ]));
    assert_eq!(records[0]["limit"], "36/7");
    assert_eq!(records[1]["deviation"], "4/175");
    assert_eq!(records[2]["deviation"], "369/10325");
    assert_eq!(records[0]["deviations_strictly_decreasing"], false);
}
