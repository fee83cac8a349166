use std::path::PathBuf;
use std::process::{Command, Output};

use negmono::output::JsonReport;

fn negmono(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_negmono")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(p).unwrap()
}

fn temp_path(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(format!("{}-{name}", std::process::id()))
}

/// Values of one CSV column, `NA` as `None`.
fn column(csv: &str, name: &str) -> Vec<Option<f64>> {
    let mut lines = csv.lines();
    let idx = lines.next().unwrap().split(',').position(|h| h == name).unwrap();
    lines
        .map(|l| {
            let cell = l.split(',').nth(idx).unwrap();
            (cell != "NA").then(|| cell.parse().unwrap())
        })
        .collect()
}

fn census_line<'a>(err: &'a str, score: &str) -> &'a str {
    err.lines().find(|l| l.starts_with(score)).unwrap()
}

#[test]
fn score_gghz_json() {
    let o = negmono(&[
        "score",
        "--family",
        "gghz",
        "--params",
        "0.7071067811865476,0.7071067811865476",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let r = JsonReport::parse(&text).unwrap();
    assert!((r.scores.delta4.unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(r.family, "gghz");
    assert_eq!(r.render(), text);
}

#[test]
fn score_s42_is_not_applicable() {
    let o = negmono(&["score", "--family", "dicke", "--params", "4,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("negative delta residual"));
    let r = JsonReport::parse(&stdout(&o)).unwrap();
    assert_eq!(r.scores.delta4, None);
    assert!(r.scores.pi4.unwrap() >= 0.0);
}

#[test]
fn score_csv_and_complex_tokens() {
    let o = negmono(&[
        "score",
        "--family",
        "w-ones",
        "--params",
        "0.6@0.3,-0.8",
        "--format",
        "csv",
        "--mu3-delta",
        "2.8",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2);
    assert!(text.starts_with("sample_index,alpha_re,alpha_im,beta_re,beta_im,delta1,"));
}

#[test]
fn invalid_input_exits_one() {
    for args in [
        &["score", "--family", "gghz", "--params", "1,1"][..],
        &["score", "--family", "nope", "--params", "1"],
        &["score", "--family", "dicke", "--params", "4,1", "--mu3-delta", "0"],
        &["sample", "--family", "class-c", "--samples", "10"],
        &["sweep", "--family", "w-ones", "--grid", "0:1"],
        &[
            "threshold",
            "--family",
            "dicke",
            "--params",
            "4,1",
            "--score",
            "delta",
            "--bracket",
            "0.5:1",
        ],
        &["frobnicate"],
    ] {
        let o = negmono(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!stderr(&o).is_empty());
    }
    assert_eq!(negmono(&["--version"]).status.code(), Some(0));
}

#[test]
fn w_ones_sweep_sign_depends_on_mu3() {
    let high = stdout(&negmono(&[
        "sweep",
        "--family",
        "w-ones",
        "--grid",
        "0:1:101",
        "--mu3-delta",
        "2.8",
    ]));
    let d = column(&high, "delta4");
    assert_eq!(d.len(), 101);
    assert!(d.iter().all(|v| v.unwrap() >= -1e-9));

    let low = stdout(&negmono(&["sweep", "--family", "w-ones", "--grid", "0:1:101"]));
    assert!(column(&low, "delta4").iter().any(|v| v.unwrap() < 0.0));
}

#[test]
fn wwt_sweep_pi_positive() {
    let o = negmono(&["sweep", "--family", "wwt", "--grid", "0:1:101:open", "--grid2", "0:3:4"]);
    assert_eq!(o.status.code(), Some(0));
    let pi4 = column(&stdout(&o), "pi4");
    assert_eq!(pi4.len(), 404);
    assert!(pi4.iter().all(|v| v.unwrap() > 0.0));
}

#[test]
fn sample_matches_golden_files() {
    let hist = temp_path("hist.csv");
    let o = negmono(&[
        "sample",
        "--family",
        "class-c",
        "--samples",
        "50",
        "--seed",
        "42",
        "--bins",
        "10",
        "--range",
        "-1:1",
        "--hist-out",
        hist.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("class_c_seed42_n50.csv"));
    assert_eq!(
        std::fs::read_to_string(&hist).unwrap(),
        golden("class_c_seed42_n50_hist.csv")
    );
    let _ = std::fs::remove_file(hist);
}

#[test]
fn class_c_census_has_no_violations() {
    for (filter, score) in [("nonneg-delta3", "delta4"), ("nonneg-pi3", "pi4")] {
        let out = temp_path(&format!("{filter}.csv"));
        let o = negmono(&[
            "sample",
            "--family",
            "class-c",
            "--samples",
            "10000",
            "--seed",
            "42",
            "--filter",
            filter,
            "--mu3-delta",
            "1.5",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        let err = stderr(&o);
        assert!(census_line(&err, score).contains("violations 0,"), "{err}");
        let csv = std::fs::read_to_string(&out).unwrap();
        assert_eq!(csv.lines().count(), 10_001);
        let _ = std::fs::remove_file(out);
    }
}

#[test]
fn gw_ground_census_has_no_violations() {
    let o = negmono(&[
        "sample",
        "--family",
        "gw-ground",
        "--samples",
        "10000",
        "--seed",
        "7",
        "--mu3-delta",
        "3",
        "--mu3-pi",
        "2.5",
        "--format",
        "json",
        "--out",
        "/dev/null",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let err = stderr(&o);
    assert!(census_line(&err, "delta4").contains("violations 0,"), "{err}");
    assert!(census_line(&err, "pi4").contains("violations 0,"), "{err}");
}

#[test]
fn verify_exit_codes() {
    let o = negmono(&["verify", "--family", "class-b", "--tol", "1e-8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("family,component,status,max_abs,worst_point,compared\n"));

    let o = negmono(&["verify", "--family", "gghz", "--tol", "1e-10"]);
    assert_eq!(o.status.code(), Some(0));

    let o = negmono(&["verify", "--family", "w-ones"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning: published expression differs: w-ones printed.delta2"));
    assert!(stdout(&o).contains("w-ones,printed.delta2,reported,0.5,"));

    let o = negmono(&["verify", "--family", "all", "--points", "11", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 6);
}

#[test]
fn thresholds() {
    let parse = |o: Output| -> f64 {
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        column(&stdout(&o), "mu3")[0].unwrap()
    };
    let w = parse(negmono(&[
        "threshold",
        "--family",
        "dicke",
        "--params",
        "4,1",
        "--score",
        "delta",
        "--bracket",
        "1:2",
        "--tol",
        "1e-5",
    ]));
    assert!((w - 1.02053).abs() < 1e-3);
    let wp = parse(negmono(&["threshold", "--family", "w-ones", "--score", "pi"]));
    assert!(wp <= 1.4, "{wp}");
    let gw = parse(negmono(&[
        "threshold",
        "--family",
        "gw-ground",
        "--samples",
        "2000",
        "--seed",
        "3",
        "--score",
        "delta",
    ]));
    assert!(gw <= 3.0, "{gw}");

    let o = negmono(&["threshold", "--family", "dicke", "--params", "4,2", "--score", "delta"]);
    assert_eq!(o.status.code(), Some(2));
    let o = negmono(&[
        "threshold",
        "--family",
        "gghz",
        "--params",
        "0.6,0.8",
        "--score",
        "delta",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "no_threshold_in_bracket");
}
