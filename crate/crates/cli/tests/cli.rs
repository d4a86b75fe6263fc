#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::Path;
use std::process::{Command, Output};

use immunet::generators::barabasi_albert;

fn immunet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_immunet"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows (non-comment, non-header) split on commas.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn karate() -> String {
    common::karate_path().to_str().unwrap().to_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn immunize_reports_lambda_and_labels() {
    let out = stdout(&immunet(&[
        "immunize",
        "--graph",
        &karate(),
        "--k",
        "3",
        "--method",
        "greedy3",
    ]));
    assert!(out.starts_with("# schema=1\n"));
    let r = rows(&out);
    assert_eq!(r.len(), 1);
    let lam: f64 = r[0][3].parse().unwrap();
    assert!((lam - common::dense_lambda1(&common::karate())).abs() < 1e-6);
    assert_eq!(r[0][7].split(';').count(), 3);
    assert_eq!(r[0][8], "ok");
}

#[test]
fn zero_budget_has_zero_drop() {
    let out = stdout(&immunet(&["immunize", "--graph", &karate(), "--k", "0"]));
    assert_eq!(rows(&out)[0][5], "0");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = common::rng(5);
    let big = barabasi_albert(10_670, 2, &mut rng);
    let mut buf = Vec::new();
    big.write_edge_list(&mut buf).unwrap();
    let big_path = write(dir.path(), "big.txt", std::str::from_utf8(&buf).unwrap());

    let guard = immunet(&[
        "immunize", "--graph", &big_path, "--k", "5", "--method", "brute",
    ]);
    assert_eq!(guard.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&guard.stderr).contains("capability"));

    let missing = immunet(&["immunize", "--graph", "/nonexistent/g.txt", "--k", "1"]);
    assert_eq!(missing.status.code(), Some(2));

    let bad = write(dir.path(), "bad.txt", "1 2\n3\n");
    assert_eq!(
        immunet(&["eval", "--graph", &bad, "--nodes", "1"])
            .status
            .code(),
        Some(2)
    );

    assert_eq!(
        immunet(&[
            "immunize",
            "--graph",
            &karate(),
            "--k",
            "1",
            "--method",
            "nope"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(immunet(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        immunet(&[
            "sis",
            "--graph",
            &karate(),
            "--beta",
            "1.2",
            "--delta",
            "0.1"
        ])
        .status
        .code(),
        Some(1)
    );

    let slow = immunet(&[
        "eval",
        "--graph",
        &karate(),
        "--nodes",
        "1",
        "--tol",
        "1e-300",
        "--max-iter",
        "3",
    ]);
    assert_eq!(slow.status.code(), Some(4));
}

#[test]
fn eval_examples() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "star.txt", "hub a\nhub b\nhub c\n");
    let r = rows(&stdout(&immunet(&[
        "eval", "--graph", &s, "--nodes", "hub",
    ])));
    let pct: f64 = r[0][3].parse().unwrap();
    assert!((pct - 100.0).abs() < 1e-9);

    let r = rows(&stdout(&immunet(&["eval", "--graph", &s, "--nodes", ""])));
    assert_eq!(r[0][2], "0");

    let missing = immunet(&["eval", "--graph", &s, "--nodes", "hub,zzz"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("zzz"));
}

#[test]
fn sis_without_transmission_never_grows() {
    let out = stdout(&immunet(&[
        "sis",
        "--graph",
        &karate(),
        "--beta",
        "0",
        "--delta",
        "0.3",
        "--steps",
        "30",
        "--trials",
        "5",
    ]));
    let means: Vec<f64> = rows(&out)
        .iter()
        .filter(|r| r[0] != "summary")
        .map(|r| r[1].parse().unwrap())
        .collect();
    assert_eq!(means.len(), 31);
    assert!(means.windows(2).all(|w| w[1] <= w[0]));
    assert!(out.contains("# rng=ChaCha8"));
    assert!(out.contains("# beta=0\n"));
}

#[test]
fn sis_immunized_run_infects_fewer() {
    let k = karate();
    let picks = rows(&stdout(&immunet(&[
        "immunize", "--graph", &k, "--k", "5", "--method", "greedy3",
    ])))[0][7]
        .clone();
    let dir = tempfile::tempdir().unwrap();
    let imm = write(dir.path(), "imm.txt", &picks.replace(';', "\n"));
    let empty = write(dir.path(), "none.txt", "");
    let summary = |file: &str| -> f64 {
        let out = stdout(&immunet(&[
            "sis",
            "--graph",
            &k,
            "--beta",
            "0.1",
            "--delta",
            "0.2",
            "--steps",
            "200",
            "--trials",
            "30",
            "--seed",
            "3",
            "--immunize-file",
            file,
        ]));
        let last = rows(&out).pop().unwrap();
        assert_eq!(last[0], "summary");
        last[1].parse().unwrap()
    };
    assert!(summary(&imm) < summary(&empty));
}

#[test]
fn bench_grid_and_monotone_drop() {
    let out = stdout(&immunet(&[
        "bench",
        "--graph",
        &karate(),
        "--methods",
        "maxdeg,greedy3",
        "--k-sweep",
        "1,2,3,4,5",
    ]));
    let r = rows(&out);
    assert_eq!(r.len(), 10);
    for group in r.chunks(5) {
        assert!(group.iter().all(|row| row[1] == group[0][1]));
        let pct: Vec<f64> = group.iter().map(|row| row[5].parse().unwrap()).collect();
        assert!(pct.windows(2).all(|w| w[1] >= w[0] - 1e-7), "{pct:?}");
    }
}

#[test]
fn bench_records_guard_failures_and_continues() {
    let out = stdout(&immunet(&[
        "bench",
        "--graph",
        &karate(),
        "--methods",
        "brute,greedy3",
        "--k-sweep",
        "1,17",
    ]));
    let r = rows(&out);
    assert_eq!(r.len(), 4);
    assert_eq!(r[0][8], "ok");
    assert!(r[1][8].contains("capability guard"), "{:?}", r[1]);
    assert_eq!(r[3][8], "ok");
}

#[test]
fn timing_column_is_opt_in() {
    let out = stdout(&immunet(&[
        "immunize",
        "--graph",
        &karate(),
        "--k",
        "2",
        "--timing",
    ]));
    let ms: f64 = rows(&out)[0][6].parse().unwrap();
    assert!(ms >= 0.0);
}

#[test]
fn ids_sidecar_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let ids = dir.path().join("karate.ids");
    let csv = dir.path().join("out.csv");
    let o = immunet(&[
        "immunize",
        "--graph",
        &karate(),
        "--k",
        "1",
        "--ids-out",
        ids.to_str().unwrap(),
        "--output",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success() && o.stdout.is_empty());
    let labels = std::fs::read_to_string(ids).unwrap();
    assert_eq!(labels.lines().count(), 34);
    assert_eq!(labels.lines().next(), Some("1"));
    assert!(std::fs::read_to_string(csv)
        .unwrap()
        .starts_with("# schema=1"));
}

#[test]
fn sweep_matches_single_runs() {
    let k = karate();
    let sweep = rows(&stdout(&immunet(&[
        "immunize",
        "--graph",
        &k,
        "--k-sweep",
        "2,4",
        "--method",
        "updmaxdeg",
    ])));
    let single = rows(&stdout(&immunet(&[
        "immunize",
        "--graph",
        &k,
        "--k",
        "4",
        "--method",
        "updmaxdeg",
    ])));
    assert_eq!(sweep[1], single[0]);
}
