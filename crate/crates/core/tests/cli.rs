use std::process::{Command, Output};

fn windtree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_windtree"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn pipeline_prints_flat_json() {
    let out = windtree(&["pipeline"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for key in ["eta0", "E", "mu0", "lambda0", "delta"] {
        assert!(v[key].is_f64(), "missing {key}");
    }
    let delta = v["delta"].as_f64().unwrap();
    assert!(delta > 0.9884 && delta < 0.9885);
    assert_eq!(v["provenance"]["eta0"], "configured");
    assert_eq!(v["provenance"]["E"], "computed");
}

#[test]
fn pipeline_with_published_constants() {
    let out = windtree(&["pipeline", "--published-constants"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["provenance"]["mu0"], "paper-constant");
}

#[test]
fn energy_and_gg() {
    let out = windtree(&["energy", "--eta", "0.5", "--area", "6.283185307179586", "--tol", "1e-10"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("E* = 2.575"));
    let out = windtree(&["gg", "--automaton", "builtin", "--tol", "1e-10"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("mu0 >= 0.4647"));
}

#[test]
fn gg_reads_automaton_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tree.json");
    let json = r#"{"generator_count": 4, "root": 0, "types": [
        {"successors": [1, 1, 1, 1], "predecessors": 0},
        {"successors": [1, 1, 1], "predecessors": 1}]}"#;
    std::fs::write(&path, json).unwrap();
    let out = windtree(&["gg", "--automaton", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    // 4 − 2√3
    assert!(stdout(&out).contains("mu0 >= 0.535898"), "{}", stdout(&out));

    std::fs::write(&path, "{\"generator_count\": 4}").unwrap();
    assert_eq!(windtree(&["gg", "--automaton", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn cone_and_relator_checks() {
    assert_eq!(windtree(&["cone-verify", "--radius", "8"]).status.code(), Some(0));
    assert_eq!(windtree(&["relators-check"]).status.code(), Some(0));
    // relators have length 6, so a longer search finds them
    assert_eq!(windtree(&["relators-check", "--max-len", "6"]).status.code(), Some(2));
}

#[test]
fn orbital_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("orbital.csv");
    let out = windtree(&[
        "orbital", "--group", "gamma0", "--rmax", "3", "--depth", "20", "--csv", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("threshold,count,exact_flag,depth"));
    assert!(text.contains("\n3,13,true,20\n"), "{text}");
}

#[test]
fn cylinders_to_stdout() {
    let out = windtree(&["cylinders", "--group", "bad", "--sigma", "mp", "--lmax", "4", "--depth", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("threshold,count,exact_flag,depth\n1,1,false,6\n"), "{text}");
}

#[test]
fn veech_check_exit_codes() {
    let out = windtree(&["veech-check", "--a", "1/2", "--b", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "true");
    let out = windtree(&["veech-check", "--a", "2/1 + -1/1*sqrt(2)", "--b", "1/1 + -1/2*sqrt(2)"]);
    assert_eq!(out.status.code(), Some(0));
    let out = windtree(&["veech-check", "--a", "2 - sqrt(2)", "--b", "1/2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout(&out).trim(), "false");
    assert_eq!(windtree(&["veech-check", "--a", "3/2", "--b", "1/2"]).status.code(), Some(1));
    assert_eq!(windtree(&["veech-check", "--a", "x", "--b", "1/2"]).status.code(), Some(1));
}

#[test]
fn usage_errors() {
    assert_eq!(windtree(&[]).status.code(), Some(1));
    assert_eq!(windtree(&["bogus"]).status.code(), Some(1));
    assert_eq!(windtree(&["cone-verify", "--radius", "ten"]).status.code(), Some(1));
    assert_eq!(windtree(&["orbital", "--group", "nope"]).status.code(), Some(1));
    assert_eq!(windtree(&["energy", "--eta", "-1"]).status.code(), Some(1));
    assert_eq!(windtree(&["--help"]).status.code(), Some(0));
}
