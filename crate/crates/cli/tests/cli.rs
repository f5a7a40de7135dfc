use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn grstar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grstar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).display().to_string()
}

#[test]
fn c4_certificate_has_k_plus_3_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let (cert, dot) = (path(dir.path(), "c4.json"), path(dir.path(), "c4.dot"));
    let out = grstar(&["construct", "c4", "--k", "5", "--out", &cert, "--dot", &dot]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(doc["host"], "K8");
    assert_eq!(doc["counts"]["actual_vertices"], 8);
    assert_eq!(doc["manifest"]["command"], "construct");
    assert!(fs::read_to_string(&dot)
        .unwrap()
        .starts_with("graph coloring {"));
}

#[test]
fn star_certificate_is_the_two_pentagons() {
    let out = grstar(&["construct", "star", "--m", "3", "--k", "3"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["host"], "K5");
    let colors: Vec<u64> = doc["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e[2].as_u64().unwrap())
        .collect();
    assert_eq!(colors.iter().filter(|&&c| c == 1).count(), 5);
    assert_eq!(colors.iter().filter(|&&c| c == 2).count(), 5);
}

#[test]
fn every_certificate_reverifies() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["c4", "--k", "4"],
        &["c4-ext", "--k", "4"],
        &["p4", "--k", "4"],
        &["p4-ext", "--k", "4"],
        &["star", "--m", "5", "--k", "4"],
        &["star-ext", "--m", "12", "--k", "3"],
        &["bipartite", "--k", "4", "--target", "P4"],
        &["bipartite-ext", "--k", "4", "--target", "C4"],
        &["tower", "--k", "4", "--target", "K3"],
        &["tower-ext", "--k", "5", "--target", "C5"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let file = path(dir.path(), &format!("{i}.json"));
        let mut full = vec!["construct"];
        full.extend_from_slice(args);
        full.extend_from_slice(&["--out", &file]);
        assert_eq!(code(&grstar(&full)), 0, "{args:?}");
        let out = grstar(&["verify", &file, "--partition"]);
        assert_eq!(code(&out), 0, "{args:?}");
        let report = json(&out);
        assert_eq!(report["matches_recorded"], true);
        assert_eq!(report["pass"], true);
    }
}

#[test]
fn clone_and_blowup_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let pentagons = path(dir.path(), "c5.json");
    assert_eq!(
        code(&grstar(&[
            "construct",
            "star",
            "--m",
            "3",
            "--k",
            "2",
            "--out",
            &pentagons
        ])),
        2
    );
    assert_eq!(
        code(&grstar(&[
            "construct",
            "star",
            "--m",
            "3",
            "--k",
            "3",
            "--out",
            &pentagons
        ])),
        0
    );
    let clone = path(dir.path(), "clone.json");
    let out = grstar(&[
        "construct",
        "clone",
        "--coloring",
        &pentagons,
        "--u",
        "2",
        "--target",
        "K3",
        "--out",
        &clone,
    ]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_str(&fs::read_to_string(&clone).unwrap()).unwrap();
    assert_eq!(doc["counts"]["actual_star"], 4);

    let outer = path(dir.path(), "outer.txt");
    let inner = path(dir.path(), "inner.txt");
    fs::write(&outer, "K2 2\n0 1 1\n").unwrap();
    fs::write(&inner, "K2 2\n0 1 2\n").unwrap();
    let out = grstar(&["construct", "blowup", "--outer", &outer, "--inner", &inner]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("K4 2\n"));
    let out = grstar(&[
        "construct",
        "blowup",
        "--outer",
        &outer,
        "--inner",
        &inner,
        "--target",
        "C4",
    ]);
    assert_eq!(code(&out), 3);
    let out = grstar(&[
        "construct",
        "blowup",
        "--outer",
        &outer,
        "--inner",
        &inner,
        "--target",
        "P4",
    ]);
    assert_eq!(code(&out), 3);
    let out = grstar(&[
        "construct",
        "blowup",
        "--outer",
        &outer,
        "--inner",
        &inner,
        "--target",
        "K3",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn verify_reports_violations() {
    let dir = tempfile::tempdir().unwrap();
    let rainbow = path(dir.path(), "rainbow.txt");
    fs::write(&rainbow, "K3 3\n0 1 1\n0 2 2\n1 2 3\n").unwrap();
    let out = grstar(&["verify", &rainbow]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["rainbow_triangle"], serde_json::json!([0, 1, 2]));

    let mono = path(dir.path(), "mono.txt");
    let mut text = String::from("K5 1\n");
    for u in 0..5 {
        for v in u + 1..5 {
            text.push_str(&format!("{u} {v} 1\n"));
        }
    }
    fs::write(&mono, text).unwrap();
    let out = grstar(&["verify", &mono, "--target", "C4"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["colors"][0]["copy"].as_array().unwrap().len(), 4);

    let junk = path(dir.path(), "junk.txt");
    fs::write(&junk, "K3 2\n0 1 1\n").unwrap();
    assert_eq!(code(&grstar(&["verify", &junk])), 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&grstar(&["construct", "c4", "--k", "1"])), 2);
    assert_eq!(code(&grstar(&["construct", "c4"])), 2);
    assert_eq!(
        code(&grstar(&["construct", "star-ext", "--m", "6", "--k", "3"])),
        2
    );
    assert_eq!(
        code(&grstar(&[
            "construct",
            "tower",
            "--k",
            "3",
            "--target",
            "C4"
        ])),
        2
    );
    assert_eq!(code(&grstar(&["construct", "nonsense"])), 2);
    assert_eq!(code(&grstar(&["search", "gr", "--target", "Q7"])), 2);
    assert_eq!(code(&grstar(&["table", "thm4", "--m", "6"])), 2);
}

fn table_rows(args: &[&str]) -> Vec<(u64, u64, String)> {
    let mut full = vec!["table"];
    full.extend_from_slice(args);
    full.push("--json");
    let out = grstar(&full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    json(&out)["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["formula"].as_u64().unwrap(),
                r["value"].as_u64().unwrap(),
                r["source"].as_str().unwrap().to_string(),
            )
        })
        .collect()
}

#[test]
fn tables_match_the_formulas() {
    let thm3 = table_rows(&["thm3", "--k", "1..3"]);
    assert_eq!(
        thm3.iter().map(|r| (r.0, r.1)).collect::<Vec<_>>(),
        vec![(1, 1), (2, 2), (3, 3)]
    );
    let lemma5 = table_rows(&["lemma5", "--k", "1..3"]);
    assert_eq!(
        lemma5.iter().map(|r| (r.0, r.1)).collect::<Vec<_>>(),
        vec![(4, 4), (5, 5), (6, 6)]
    );
    let thm4 = table_rows(&["thm4", "--m", "3", "--k", "3"]);
    assert_eq!((thm4[0].0, thm4[0].1), (3, 3));
    assert!(table_rows(&["lemma3"])
        .iter()
        .all(|r| r.0 == r.1 && r.2 == "computed"));
}

#[test]
fn exhausted_tables_fall_back_to_witnesses() {
    let rows = table_rows(&["thm4", "--m", "7", "--k", "3", "--nodes", "10000"]);
    assert_eq!(
        (rows[0].0, rows[0].1, rows[0].2.as_str()),
        (7, 7, "witness-only")
    );
}

#[test]
fn fullness_table_agrees() {
    let out = grstar(&["table", "fullness", "--k", "2", "--json"]);
    assert_eq!(code(&out), 0);
    for row in json(&out)["rows"].as_array().unwrap() {
        assert_eq!(row["report"]["agreement"], true, "{row}");
    }
}

#[test]
fn searches_and_resumable_budget() {
    let out = grstar(&["search", "gr", "--target", "C4", "--k", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["value"], 7);

    let out = grstar(&[
        "search",
        "gr-star",
        "--target",
        "P4",
        "--k",
        "3",
        "--strategy",
        "direct",
    ]);
    assert_eq!(json(&out)["value"], 3);

    let out = grstar(&[
        "search", "gr", "--target", "K3", "--k", "3", "--nodes", "100",
    ]);
    assert_eq!(code(&out), 4);
    assert_eq!(json(&out)["budget_exceeded"], true);

    let dir = tempfile::tempdir().unwrap();
    let cp = path(dir.path(), "cp.txt");
    let base = [
        "search",
        "arrows",
        "--host",
        "K7",
        "--k",
        "3",
        "--target",
        "C4",
        "--nodes",
        "5000",
        "--checkpoint",
        &cp,
    ];
    assert_eq!(code(&grstar(&base)), 4);
    assert!(!fs::read_to_string(&cp).unwrap().is_empty());
    let mut resumed = base.to_vec();
    resumed.extend_from_slice(&["--resume", &cp]);
    let result = loop {
        let out = grstar(&resumed);
        if code(&out) != 4 {
            break out;
        }
    };
    assert_eq!(code(&result), 0);
    assert_eq!(json(&result)["arrows"], true);
}

#[test]
fn randomized_check_passes_and_records_seed() {
    let out = grstar(&["check", "--seed", "11", "--count", "100"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["manifest"]["seed"], 11);
}
