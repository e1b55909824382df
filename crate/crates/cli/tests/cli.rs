use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).expect("json output");
    assert_eq!(v["schema"], "orbitforge/1");
    v["result"].clone()
}

fn text(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success());
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn orbit_fields() {
    let v = json(&["orbit", "2,1,1", "-1"]);
    assert_eq!(v["dim"], 4);
    assert_eq!(v["d_chi"], 2);
    assert_eq!(v["rigid"], true);
    assert_eq!(v["almost_rigid"], true);
    assert_eq!(
        v["grading_dims"],
        serde_json::json!([[-2, 1], [-1, 2], [0, 4], [1, 2], [2, 1]])
    );
}

#[test]
fn algebra_dimensions() {
    let v = json(&["algebra", "5", "1"]);
    assert_eq!(v["name"], "so_5");
    assert_eq!(v["dim"], 10);
    assert_eq!(v["rank"], 2);
    let v = json(&["algebra", "6", "-1"]);
    assert_eq!(v["dim"], 21);
    assert_eq!(v["positive_roots"], 9);
}

#[test]
fn centralizer_and_slice() {
    let v = json(&["centralizer", "2,1,1", "-1"]);
    assert_eq!(v["dim"], 6);
    assert_eq!(v["derived_codim"], 0);
    assert_eq!(v["generated_by_01"], true);
    let v = json(&["slice", "2,1,1", "-1"]);
    assert_eq!(v["s"], 1);
    assert_eq!(v["m_dim"], 2);
    assert_eq!(v["saturated"], true);
}

#[test]
fn wgen_low_degree_augmentation_vanishes() {
    let v = json(&["wgen", "2,1,1", "-1", "--degree-bound", "2"]);
    assert_eq!(v["generators_complete"], true);
    let n = &v["augmentation"]["normalized"];
    for k in 1..=5 {
        assert_eq!(n[k.to_string()], "0");
    }
    assert_eq!(v["casimir_shape"]["shape_ok"], true);
}

#[test]
fn verma_and_induce() {
    let v = json(&["verma", "2,2", "-1", "--levi", "2", "-p", "3"]);
    assert_eq!(v["dim"], 27);
    assert_eq!(v["d_chi"], 3);
    assert_eq!(v["p_character_ok"], true);
    assert_eq!(v["bracket_ok"], true);
    let v = json(&["verma", "4", "-1", "--levi", "1,1", "--prime", "5"]);
    assert_eq!(v["dim"], 625);
    let v = json(&["induce", "1", "1|2", "-1"]);
    assert_eq!(v["induced"]["partition"], "4");
}

#[test]
fn rigidity_agrees_with_oracle() {
    let v = json(&["rigidity", "2,2", "-1"]);
    assert_eq!(v["rigid"], false);
    assert_eq!(v["agrees"], true);
    let v = json(&["rigidity", "2,1,1", "-1"]);
    assert_eq!(v["rigid"], true);
    assert!(v["witness"].is_null());
}

#[test]
fn explain_examples() {
    assert!(text(&["explain", "2,1,1", "-1"]).contains("rigid: true, d(χ)=2"));
    assert!(text(&["explain", "4", "-1"]).contains("rigid: false (Richardson"));
    assert!(text(&["explain", "1,1,1,1", "-1"]).contains("zero orbit"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["orbit", "3", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["orbit", "2,1", "7"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--primes", "2,3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--max-n", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suites", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_writes_identical_reports() {
    let dir = std::env::temp_dir().join(format!("orbitforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let paths = [dir.join("a.json"), dir.join("b.json")];
    for (i, p) in paths.iter().enumerate() {
        let out = Command::new(env!("CARGO_BIN_EXE_orbitforge"))
            .args(["verify", "--max-n", "6", "--output", p.to_str().unwrap()])
            .env("ORBITFORGE_THREADS", if i == 0 { "1" } else { "2" })
            .output()
            .unwrap();
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let a = std::fs::read(&paths[0]).unwrap();
    let b = std::fs::read(&paths[1]).unwrap();
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["ok"], true);
    assert_eq!(v["config"]["max_n"], 6);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn verify_output_to_missing_directory_is_reported() {
    let out = run(&[
        "verify",
        "--max-n",
        "2",
        "--output",
        "/nonexistent/dir/r.json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/dir/r.json"));
}
