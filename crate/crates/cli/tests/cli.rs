use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn models() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/models")
}

fn model(name: &str) -> String {
    models().join(name).display().to_string()
}

fn hyperlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&o.stdout)
        )
    })
}

fn assert_one_line_error(o: &Output) {
    assert_eq!(code(o), 1, "{}", String::from_utf8_lossy(&o.stderr));
    let err = String::from_utf8_lossy(&o.stderr);
    assert_eq!(err.trim_end().lines().count(), 1, "diagnostic: {err:?}");
    assert!(o.stdout.is_empty());
}

#[test]
fn check_krasner_addition() {
    let o = hyperlab(&[
        "check",
        &model("krasner.txt"),
        "--laws",
        "associative,reproductive",
        "--json",
    ]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["op"], "add");
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    assert!(results.iter().all(|r| r["holds"] == true));
}

#[test]
fn check_failure_exits_two_with_witness() {
    let o = hyperlab(&[
        "check",
        &model("difference3.txt"),
        "--laws",
        "associative",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 2);
    let v = stdout_json(&o);
    assert_eq!(v["results"][0]["holds"], false);
    assert!(v["results"][0]["witness"].is_object());
}

#[test]
fn classify_degenerate_table() {
    let o = hyperlab(&["classify", &model("degenerate2.txt"), "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout_json(&o)["labels"],
        serde_json::json!(["partial-hypergroupoid"])
    );
}

#[test]
fn classify_one_operation() {
    let o = hyperlab(&["classify", &model("krasner.txt"), "--op", "add", "--json"]);
    assert_eq!(code(&o), 0);
    let labels = stdout_json(&o)["labels"].clone();
    assert!(labels
        .as_array()
        .unwrap()
        .contains(&Value::from("canonical-hypergroup")));
}

#[test]
fn verify_t3_order_two_oracle() {
    let o = hyperlab(&[
        "verify",
        "--theorem",
        "T3",
        "--order",
        "2",
        "--oracle",
        "--json",
    ]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["space_size"], 256);
    assert_eq!(v["conclusion_holds"], true);
}

#[test]
fn enumerate_json_array_and_summary_on_stderr() {
    let o = hyperlab(&[
        "enumerate",
        "--order",
        "2",
        "--structure",
        "hypergroup",
        "--up-to-iso",
        "--json",
    ]);
    assert_eq!(code(&o), 0);
    let models = stdout_json(&o);
    let summary: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(
        models.as_array().unwrap().len() as u64,
        summary["canonical_count"].as_u64().unwrap()
    );
}

#[test]
fn enumerate_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("groups.txt");
    let o = hyperlab(&[
        "enumerate",
        "--order",
        "3",
        "--structure",
        "group",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    // Z/3 with the identity at each of the three points
    assert_eq!(text.matches("order 3").count(), 3);
}

#[test]
fn dorroh_json_matches_committed_report() {
    let o = hyperlab(&["dorroh", "--range", "2", "--json"]);
    assert_eq!(code(&o), 0);
    let committed: Value = serde_json::from_str(
        &std::fs::read_to_string(
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/dorroh_krasner_n2.json"),
        )
        .unwrap(),
    )
    .unwrap();
    assert_eq!(stdout_json(&o), committed);
}

#[test]
fn golden_check_bundled_and_perturbed() {
    let o = hyperlab(&["golden-check", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["pass"], true);

    let mut cat: Value = serde_json::from_str(hyperlab::enumerate::CATALOG).unwrap();
    let entries = cat["entries"].as_array_mut().unwrap();
    entries.retain(|e| e["job"]["order"] == 2);
    let n = entries[0]["raw_count"].as_u64().unwrap();
    entries[0]["raw_count"] = Value::from(n + 1);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("golden.json");
    std::fs::write(&p, serde_json::to_string(&cat).unwrap()).unwrap();
    let o = hyperlab(&["golden-check", p.to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 2);
    assert_eq!(stdout_json(&o)["pass"], false);
}

#[test]
fn worker_count_does_not_change_output() {
    let run = |w: &str| {
        hyperlab(&[
            "--workers",
            w,
            "verify",
            "--theorem",
            "T2",
            "--order",
            "2",
            "--drop-premises",
            "--json",
        ])
    };
    let mut a = stdout_json(&run("1"));
    let mut b = stdout_json(&run("4"));
    for v in [&mut a, &mut b] {
        v.as_object_mut().unwrap().remove("wall_time");
    }
    assert_eq!(a, b);
}

#[test]
fn usage_errors_name_the_flag() {
    for (args, flag) in [
        (&["verify", "--theorem", "T3"][..], "--order"),
        (&["verify", "--theorem", "T3", "--order", "x"], "--order"),
        (&["enumerate", "--order", "2", "--bogus"], "--bogus"),
        (&["dorroh", "--range", "-3"], "-3"),
        (&["--format", "yaml", "dorroh", "--range", "1"], "--format"),
    ] {
        let o = hyperlab(args);
        assert_one_line_error(&o);
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains(flag), "{args:?}: {err}");
    }
}

#[test]
fn runtime_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.txt");
    let cases: Vec<Vec<String>> = vec![
        vec!["classify".into(), missing.display().to_string()],
        vec![
            "verify".into(),
            "--theorem".into(),
            "T99".into(),
            "--order".into(),
            "2".into(),
        ],
        vec![
            "verify".into(),
            "--theorem".into(),
            "T3".into(),
            "--order".into(),
            "9".into(),
        ],
        vec![
            "enumerate".into(),
            "--order".into(),
            "2".into(),
            "--laws".into(),
            "frobnicate".into(),
        ],
        vec![
            "enumerate".into(),
            "--order".into(),
            "9".into(),
            "--structure".into(),
            "group".into(),
        ],
        vec![
            "check".into(),
            model("total2.txt"),
            "--laws".into(),
            "sign-rule".into(),
        ],
        vec![
            "check".into(),
            model("z2.txt"),
            "--laws".into(),
            "associative".into(),
            "--op".into(),
            "nope".into(),
        ],
        vec![
            "--workers".into(),
            "0".into(),
            "dorroh".into(),
            "--range".into(),
            "1".into(),
        ],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = hyperlab(&args);
        assert_one_line_error(&o);
    }
}

/// Truncations and byte substitutions of every bundled model file: each run
/// either succeeds or fails cleanly, never panics.
#[test]
fn malformed_model_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("m.txt");
    let mut runs = 0;
    for entry in std::fs::read_dir(models()).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let bytes = text.as_bytes();
        let mut variants: Vec<Vec<u8>> = Vec::new();
        for cut in (0..bytes.len()).step_by(7) {
            variants.push(bytes[..cut].to_vec());
        }
        for (i, junk) in (0..bytes.len()).step_by(5).zip(b"9{}x \n".iter().cycle()) {
            let mut v = bytes.to_vec();
            v[i] = *junk;
            variants.push(v);
        }
        for v in variants {
            std::fs::write(&p, &v).unwrap();
            for args in [
                &["classify", p.to_str().unwrap(), "--json"][..],
                &[
                    "check",
                    p.to_str().unwrap(),
                    "--laws",
                    "associative",
                    "--json",
                ],
            ] {
                let o = hyperlab(args);
                runs += 1;
                match code(&o) {
                    0 | 2 => {
                        stdout_json(&o);
                    }
                    1 => assert_one_line_error(&o),
                    c => panic!("exit {c} on {:?}", String::from_utf8_lossy(&v)),
                }
            }
        }
    }
    assert!(runs > 100);
}
