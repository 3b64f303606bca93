use std::process::{Command, Output};

fn nefdex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nefdex"))
        .args(args)
        .env_remove("NEFDEX_ITER_CAP")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn tau_of_surfaces() {
    let o = nefdex(&["tau", "dP6"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3/2");
    let o = nefdex(&["tau", "dP4", "--ring", "z"]);
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn certificate_is_json_after_the_value() {
    let o = nefdex(&["tau", "P1xP1", "--ring", "Z", "--certificate"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let (value, json) = text.split_once('\n').unwrap();
    assert_eq!(value, "4");
    let cert: serde_json::Value = serde_json::from_str(json).unwrap();
    assert_eq!(cert["ring"], "Z");
    assert_eq!(cert["objective"], "4");
    assert_eq!(cert["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn config_goes_to_stderr() {
    let o = nefdex(&["tau", "P2"]);
    let err = String::from_utf8(o.stderr).unwrap();
    let line = err.lines().find(|l| l.starts_with("config: ")).unwrap();
    let cfg: serde_json::Value = serde_json::from_str(&line["config: ".len()..]).unwrap();
    assert_eq!(cfg["command"], "tau");
    assert_eq!(cfg["target"], "P2");
}

#[test]
fn tau_of_polytope_and_fan_files() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("square.json");
    std::fs::write(&poly, r#"{"dim":2,"vertices":[[-1,-1],[1,-1],[1,1],[-1,1]]}"#).unwrap();
    let o = nefdex(&["tau", poly.to_str().unwrap(), "--certificate"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("4\n"));
    assert!(text.contains("minkowski"));

    let fan = dir.path().join("p2.json");
    std::fs::write(&fan, r#"{"rays":[[1,0],[0,1],[-1,-1]],"cones":[[0,1],[1,2],[2,0]]}"#).unwrap();
    let o = nefdex(&["tau", fan.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "3");
}

#[test]
fn shipped_cube_file() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/cube3.json");
    let o = nefdex(&["tau", path]);
    assert_eq!(stdout(&o).trim(), "6");
}

#[test]
fn curves_and_nef_check() {
    let o = nefdex(&["curves", "dP3"]);
    let curves: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(curves.len(), 6);
    assert_eq!(stdout(&nefdex(&["nef-check", "dP4", "[2,1,1,1,1]"])).trim(), "true");
    assert_eq!(stdout(&nefdex(&["nef-check", "dP4", "[1,1,1,0,0]"])).trim(), "false");
}

#[test]
fn catalog_lists_sixteen_polygons() {
    let o = nefdex(&["catalog"]);
    let polys: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(polys.len(), 16);
    assert_eq!(nefdex(&["catalog", "--dim", "3"]).status.code(), Some(2));
}

#[test]
fn report_formats() {
    let o = nefdex(&["report", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 11);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",PASS")));
}

#[test]
fn verify_suites_succeed() {
    for suite in ["polygons", "threefolds"] {
        let o = nefdex(&["verify", suite]);
        assert!(o.status.success(), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).contains("counterexamples: none"));
    }
    let o = nefdex(&["verify", "fujita", "--samples", "20", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["counterexample"].is_null());
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(nefdex(&["tau", "dP9"]).status.code(), Some(2));
    assert_eq!(nefdex(&["nef-check", "dP4", "[2,1,"]).status.code(), Some(2));
    assert_eq!(nefdex(&["nef-check", "dP4", "[2,1]"]).status.code(), Some(2));
    assert_eq!(nefdex(&["verify", "nonsense"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"dim\":2,").unwrap();
    assert_eq!(nefdex(&["tau", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn iteration_cap_from_environment() {
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_nefdex"))
            .args(["tau", "dP6"])
            .env("NEFDEX_ITER_CAP", cap)
            .output()
            .unwrap()
    };
    assert_eq!(run("0").status.code(), Some(3));
    assert_eq!(run("lots").status.code(), Some(2));
    assert!(run("100000").status.success());
}
