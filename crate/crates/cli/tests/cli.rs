use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn floer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_floer")).args(args).env("NO_COLOR", "1").output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn fixtures() -> Value {
    serde_json::from_str(include_str!("../fixtures/recipes.json")).unwrap()
}

#[test]
fn usage_errors_exit_two() {
    for args in [&["no-such-command"][..], &["surgery", "-n"], &["lattice", "alpha"], &["--format", "xml", "cfk", "K(1, T3)"]] {
        assert_eq!(floer(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn domain_errors_exit_one() {
    let cases: [(&[&str], &str); 3] = [
        (&["cfk", "K(1, T2^1)"], "error:"),
        (&["surgery", "--knot", "K(1, T3)", "-n", "0"], "ZeroSurgeryUnsupported"),
        (&["recipe", "nonsense"], "UnknownRecipe"),
    ];
    for (args, needle) in cases {
        let o = floer(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains(needle), "{args:?}");
    }
}

#[test]
fn every_recipe_matches_its_fixture() {
    let list = json(&floer(&["recipe", "--list"]));
    let names: Vec<&str> = list.as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert_eq!(names.len(), 10);
    for n in names {
        let o = floer(&["recipe", n]);
        assert!(o.status.success(), "{n}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(json(&o)["matches_fixture"], true);
    }
}

#[test]
fn corrupted_fixture_fails_selftest() {
    let dir = tempfile::tempdir().unwrap();
    let mut fx = fixtures();
    for r in fx["recipes"].as_array_mut().unwrap() {
        if r["name"] == "k-minus1" {
            r["expected"]["towers"] = serde_json::json!([2]);
        }
    }
    fs::write(dir.path().join("recipes.json"), fx.to_string()).unwrap();
    let o = floer(&["selftest", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["pass"], false);
    let failed: Vec<&str> =
        v["criteria"].as_array().unwrap().iter().filter(|c| c["pass"] == false).map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(failed, ["A4"]);

    fs::write(dir.path().join("recipes.json"), "{\"recipes\": 3}").unwrap();
    let o = floer(&["selftest", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Malformed"));
}

#[test]
fn selftest_is_deterministic() {
    let a = floer(&["selftest", "--format", "table"]);
    let b = floer(&["selftest", "--format", "table"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains("PASS")).count(), 10);
    assert!(!text.contains('\x1b'));
}

#[test]
fn surgery_from_a_complex_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.json");
    fs::write(&path, include_str!("../fixtures/k.json")).unwrap();
    let v = json(&floer(&["surgery", "--complex", path.to_str().unwrap(), "-n", "-1", "--mode", "homology"]));
    assert_eq!(v["reduced"]["torsion"].as_array().unwrap().len(), 2);
    assert_eq!(v["cone"]["grading"], "absolute");
    let t = floer(&["--format", "table", "surgery", "--complex", path.to_str().unwrap(), "-n", "-2"]);
    assert!(t.status.success());
}

#[test]
fn triangle_from_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let input = serde_json::json!({
        "slots": [
            {"flavor": "minus", "towers": [-1, -2], "torsion": []},
            {"flavor": "minus", "towers": [-3, -2, -2, -1], "torsion": [{"degree": -1, "order": 1}, {"degree": -1, "order": 1}, {"degree": -2, "order": 1}, {"degree": -2, "order": 1}]},
            null
        ],
        "map_degrees": [null, 0, null],
        "b": 1,
        "ag": true
    });
    fs::write(&path, input.to_string()).unwrap();
    let o = floer(&["triangle", "--input", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["solved"]["slot"], 3);
    assert_eq!(v["up_to_shift"], false);
}

#[test]
fn lattice_commands() {
    let v = json(&floer(&["lattice", "dim", "-m", "2"]));
    assert_eq!(v["dimension"], "4");
    let v = json(&floer(&["lattice", "count", "-k", "3"]));
    assert_eq!(v["count"], "48");
}
