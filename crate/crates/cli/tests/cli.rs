//! End-to-end runs of the `orderstat` binary.

use std::io::Write as _;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orderstat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).expect("valid json"))
}

fn corpus_file(name: &str, text: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("orderstat-cli-{}-{name}.txt", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(text.as_bytes()).unwrap();
    path
}

#[test]
fn stats_reports_exact_averages() {
    for (spec, o) in [("A5", "211/60"), ("C6", "7/2"), ("A5 x C7", "9073/420"), ("S5", "157/40")] {
        let out = run(&["stats", spec]);
        assert_eq!(out.status.code(), Some(0), "{spec}");
        assert!(stdout(&out).contains(&format!("o         {o} ")), "{spec}: {}", stdout(&out));
    }
}

#[test]
fn json_rationals_round_trip() {
    let (code, v) = json(&["stats", "A5"]);
    assert_eq!(code, 0);
    assert_eq!(v["o"]["num"], 211);
    assert_eq!(v["o"]["den"], 60);
    assert_eq!(v["o"]["display"], "211/60");
    assert_eq!(v["psi"], 211);
    assert_eq!(v["order"], 60);
    let spectrum: Vec<(u64, u64)> = v["spectrum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["order"].as_u64().unwrap(), e["count"].as_u64().unwrap()))
        .collect();
    assert_eq!(spectrum, vec![(1, 1), (2, 15), (3, 20), (5, 24)]);
}

#[test]
fn text_and_json_agree() {
    for spec in ["S4", "D5", "SL(2,5)", "C2 x C2 x C2"] {
        let text = stdout(&run(&["stats", spec]));
        let (_, v) = json(&["stats", spec]);
        let o = v["o"]["display"].as_str().unwrap();
        assert!(text.contains(&format!("o         {o} ")), "{spec}");
        assert!(text.contains(&format!("psi       {}\n", v["psi"])), "{spec}");
        assert!(text.contains(&format!("order     {}\n", v["order"])), "{spec}");
    }
}

#[test]
fn verify_exit_codes() {
    let a5 = run(&["verify", "A5"]);
    assert_eq!(a5.status.code(), Some(0));
    let text = stdout(&a5);
    assert!(text.contains("a5_boundary          exempt"), "{text}");
    assert!(text.contains("boundary: o = o(A5) = 211/60"), "{text}");

    let (code, v) = json(&["verify", "S3"]);
    assert_eq!(code, 0);
    assert_eq!(v["consistent"], true);
    assert!(v["certificates"].as_array().unwrap().iter().any(|c| c.as_str().unwrap().contains("S3")));

    assert_eq!(run(&["verify", "Z9"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "D2"]).status.code(), Some(2));
    assert_eq!(run(&["--cap", "4", "verify", "S3"]).status.code(), Some(4));
    assert_eq!(run(&["--cap", "100", "stats", "S5"]).status.code(), Some(4));
    assert_eq!(run(&["--cap", "0", "stats", "S3"]).status.code(), Some(2));
}

#[test]
fn series_prints_derived_orders() {
    let text = stdout(&run(&["series", "S4"]));
    assert!(text.contains("[24, 12, 4, 1]"), "{text}");
    assert!(text.contains("solvable"), "{text}");
    let text = stdout(&run(&["series", "A5"]));
    assert!(text.contains("[60, 60]"), "{text}");
}

#[test]
fn invert_reports_ratios() {
    let c8 = stdout(&run(&["invert", "C8"]));
    assert!(c8.contains("inversion ratio  1 "), "{c8}");
    let a5 = stdout(&run(&["invert", "A5"]));
    assert!(a5.contains("identity ratio   4/15 "), "{a5}");
    assert!(a5.contains("n/a (non-abelian)"), "{a5}");
    let s5 = stdout(&run(&["invert", "S5"]));
    assert!(s5.contains("max inner ratio  13/60 "), "{s5}");
}

#[test]
fn default_scan_is_clean() {
    let out = run(&["scan"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("failed 0 vacuous"), "{text}");
    assert!(!text.contains("INCONSISTENT"));

    let (code, v) = json(&["--jobs", "2", "scan"]);
    assert_eq!(code, 0);
    assert_eq!(v["clean"], true);
    let sorted = v["sorted_by_o"].as_array().unwrap();
    assert_eq!(sorted[0]["spec"], "C1");
    let a5 = sorted.iter().position(|e| e["spec"] == "A5").unwrap();
    let s3 = sorted.iter().position(|e| e["spec"] == "S3").unwrap();
    assert!(s3 < a5);
}

#[test]
fn scan_of_a_file() {
    let ok = corpus_file("ok", "# one group\nA5\n\n");
    let out = run(&["scan", ok.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("consistent (A5 boundary exemption)"));

    let bad = corpus_file("bad", "A5\nnot a group\n");
    let out = run(&["scan", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("error:"));

    let big = corpus_file("big", "C3\nS5\n");
    assert_eq!(run(&["--cap", "50", "scan", big.to_str().unwrap()]).status.code(), Some(4));

    assert_eq!(run(&["scan", "/nonexistent/corpus.txt"]).status.code(), Some(2));
    for p in [ok, bad, big] {
        let _ = std::fs::remove_file(p);
    }
}
