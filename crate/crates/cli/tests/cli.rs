use std::process::{Command, Output};

use serde_json::Value;

fn pgaudit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgaudit"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("spawn pgaudit")
}

fn machine(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("machine report is JSON")
}

fn entries(doc: &Value) -> &Vec<Value> {
    doc["entries"].as_array().unwrap()
}

#[test]
fn audit_dihedral_8() {
    let out = pgaudit(&["audit", "--family", "dihedral:8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("6 witnesses"), "{text}");

    let out = pgaudit(&["audit", "--family", "dihedral:8", "--format", "machine"]);
    let doc = machine(&out);
    let e = &entries(&doc)[0];
    assert_eq!(e["verdict"], "pass");
    assert_eq!(e["details"]["exhaustive_witnesses"], 6);
    assert_eq!(e["details"]["branch"], "a");
}

#[test]
fn lemma_r_is_vacuous_for_q8() {
    let out = pgaudit(&[
        "lemmas",
        "--family",
        "quaternion:8",
        "--only",
        "R",
        "--format",
        "machine",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = machine(&out);
    let e = entries(&doc);
    assert_eq!(e.len(), 1);
    assert_eq!(e[0]["lemma"], "R");
    assert_eq!(e[0]["verdict"], "vacuous");
}

#[test]
fn depth_violation_reports_position() {
    let out = pgaudit(&["check", "tests/fixtures/badfile.pc"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("badfile.pc"), "{err}");
    assert!(err.contains("line 3, column 14"), "{err}");
}

#[test]
fn planted_inconsistency_fails_check() {
    let out = pgaudit(&["check", "tests/fixtures/planted.pc", "--format", "machine"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = machine(&out);
    let e = &entries(&doc)[0];
    assert_eq!(e["lemma"], "consistency");
    assert_eq!(e["verdict"], "fail");
    assert_eq!(e["counterexample"]["overlap"], serde_json::json!([1, 1, 1]));
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(pgaudit(&[]).status.code(), Some(2));
    assert_eq!(pgaudit(&["audit"]).status.code(), Some(2));
    assert_eq!(
        pgaudit(&["audit", "--family", "dihedral:12"]).status.code(),
        Some(2)
    );
    assert_eq!(
        pgaudit(&["lemmas", "--family", "dihedral:8", "--only", "Z"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        pgaudit(&["check", "tests/fixtures/missing.pc"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        pgaudit(&["audit", "--family", "dihedral:64", "--max-order", "32"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        pgaudit(&["audit", "--family", "dihedral:8", "--format", "xml"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn witness_modes() {
    let out = pgaudit(&["witness", "--family", "heisenberg:3", "--format", "machine"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = machine(&out);
    let e = entries(&doc);
    assert_eq!(e.len(), 2);
    assert_eq!(e[0]["lemma"], "witness_constructive");
    assert_eq!(e[1]["lemma"], "witness_exhaustive");
    let x = &e[0]["details"]["x"];
    assert!(e[1]["details"]["witnesses"].as_array().unwrap().contains(x));

    let out = pgaudit(&[
        "witness",
        "--family",
        "unitriangular4:2",
        "--constructive",
        "--format",
        "machine",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = machine(&out);
    assert_eq!(entries(&doc).len(), 1);
    assert_eq!(entries(&doc)[0]["verdict"], "vacuous");
}

#[test]
fn timings_only_when_requested() {
    let plain = machine(&pgaudit(&[
        "audit",
        "--family",
        "quaternion:16",
        "--format",
        "machine",
    ]));
    assert!(entries(&plain)[0]["timings"].is_null());
    let timed = machine(&pgaudit(&[
        "audit",
        "--family",
        "quaternion:16",
        "--format",
        "machine",
        "--timings",
    ]));
    assert!(entries(&timed)[0]["timings"].is_number());
}

#[test]
fn entries_keep_target_order_across_jobs() {
    let args = |jobs: &'static str| {
        pgaudit(&[
            "lemmas",
            "--family",
            "dihedral:32",
            "--family",
            "heisenberg:3",
            "--family",
            "quaternion:16",
            "--only",
            "D,C",
            "--format",
            "machine",
            "--jobs",
            jobs,
        ])
        .stdout
    };
    let one = args("1");
    assert_eq!(one, args("3"));
    let doc: Value = serde_json::from_slice(&one).unwrap();
    let groups: Vec<_> = entries(&doc)
        .iter()
        .map(|e| e["group"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(
        groups,
        [
            "dihedral:32",
            "dihedral:32",
            "heisenberg:3",
            "heisenberg:3",
            "quaternion:16",
            "quaternion:16"
        ]
    );
}
