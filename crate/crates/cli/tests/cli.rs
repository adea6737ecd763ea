//! Behavior tests of the binary: command surfaces, exit codes, JSON shape.

use std::process::{Command, Output};

fn pairkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pairkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn instance_list_covers_registry() {
    let out = pairkit(&["instance", "--list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in [
        "supertropical-boolean",
        "puiseux",
        "phase-hyperpair",
        "m2-stb",
    ] {
        assert!(text.contains(name), "missing {name}");
    }
}

#[test]
fn verify_json_has_stable_shape() {
    let out = pairkit(&["verify", "boolean", "--suite", "pair.*", "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["instance"], "boolean");
    assert_eq!(doc["suite"], "pair.*");
    let checks = doc["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    let mut ids: Vec<&str> = checks
        .iter()
        .map(|c| c["lawId"].as_str().unwrap())
        .collect();
    let sorted = {
        let mut s = ids.clone();
        s.sort();
        s
    };
    assert_eq!(ids, sorted, "checks are ordered by law id");
    ids.dedup();
    assert_eq!(ids.len(), checks.len(), "each law appears once");
    for c in checks {
        assert!(c["statement"]
            .as_str()
            .map(|s| !s.is_empty())
            .unwrap_or(false));
        if c["status"] == "fail" {
            assert!(c["witness"].is_string(), "failures carry witnesses");
        }
    }
}

#[test]
fn matrix_and_poly_commands() {
    let out = pairkit(&[
        "matrix",
        "adjoint",
        "--instance",
        "supertropical-boolean",
        "--matrix",
        r#"[["1","0"],["mu1","1"]]"#,
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["adjoint"][0][0], "1");

    let out = pairkit(&[
        "poly",
        "divides",
        "--instance",
        "supertropical-boolean",
        "--poly",
        "l^2 + 1",
        "--by",
        "l + 1",
        "--kind",
        "surpass",
        "--degree-bound",
        "1",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["witness"].is_array());

    // Max-plus literals parse rational coefficients.
    let out = pairkit(&[
        "poly",
        "eval",
        "--instance",
        "max-plus-q",
        "--poly",
        "3*l^2 + 9*l^4",
        "--at",
        "1/2",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["value"], "11");

    // The dash needs a negation witness; max-plus has none.
    let out = pairkit(&[
        "poly",
        "eval",
        "--instance",
        "max-plus-q",
        "--poly",
        "l - 1",
        "--at",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn linalg_conditions_command() {
    let out = pairkit(&[
        "linalg",
        "conditions",
        "--instance",
        "supertropical-boolean",
        "--nmax",
        "2",
        "--palette",
        "0,1,mu1",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["a1"]["holds"], true);
    assert_eq!(doc["nmax"], 2);
}

#[test]
fn morphism_check_command() {
    let dir = std::env::temp_dir().join("pairkit-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("forget.json");
    std::fs::write(
        &path,
        r#"{"from":"supertropical-boolean","to":"boolean",
            "graph":{"0":"0","1":"1","mu1":"1"}}"#,
    )
    .unwrap();
    let out = pairkit(&[
        "morphism",
        "check",
        "--map",
        path.to_str().unwrap(),
        "--class",
        "hom",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["hom"], true);

    // The unit embedding the other way is not weak; exit 1 reports it.
    let path = dir.join("embed.json");
    std::fs::write(
        &path,
        r#"{"from":"boolean","to":"supertropical-boolean",
            "graph":{"0":"0","1":"1"}}"#,
    )
    .unwrap();
    let out = pairkit(&[
        "morphism",
        "check",
        "--map",
        path.to_str().unwrap(),
        "--class",
        "weak",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn hyper_quotient_command() {
    let out = pairkit(&["hyper", "quotient", "--field", "F5", "--subgroup", "1,4"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["axiomsPass"], true);
    assert_eq!(doc["hypergroup"]["carrier"].as_array().unwrap().len(), 3);

    let out = pairkit(&["hyper", "quotient", "--field", "F6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seed_and_bound_are_recorded() {
    let out = pairkit(&[
        "--seed",
        "7",
        "--bound",
        "3",
        "verify",
        "boolean",
        "--suite",
        "pair.axioms",
        "--json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["seed"], 7);
    assert_eq!(doc["bound"], 3);
}
