use std::process::{Command, Output};

use tailwalk::experiments::{search_run, Placement};

fn tailwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tailwalk")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn search_json_on_stdout() {
    let out = tailwalk(&["search", "--n", "256", "--gamma", "n", "--placement", "clique-vertex", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["experiment"], "search");
    assert_eq!(v["n"], 256);
    assert!(v["F_star"].as_f64().unwrap() >= 0.9);
}

#[test]
fn spectrum_has_states_and_polynomials() {
    let out = tailwalk(&["spectrum", "--n", "64", "--gamma", "n", "--placement", "root"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["bound_states"].as_array().unwrap().len(), 2);
    assert!(!v["polynomials"].as_array().unwrap().is_empty());
}

#[test]
fn every_subcommand_runs_and_reruns_identically() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("search.csv", vec!["search", "--n", "32", "--format", "csv"]),
        ("oblivious.json", vec!["oblivious", "--n", "16"]),
        ("spectrum.svg", vec!["spectrum", "--n", "16", "--format", "svg"]),
        ("reduce.json", vec!["reduce", "--n", "16", "--gamma", "n+1"]),
        ("lower.csv", vec!["lowerbound", "--n", "64", "--gamma", "n", "--format", "csv"]),
        ("sweep.csv", vec!["sweep", "--n-list", "16,32"]),
        ("evolve.json", vec!["evolve", "--n", "16", "--t-max", "1.0", "--t-steps", "50", "--format", "json"]),
    ];
    for (name, args) in cases {
        let path = dir.path().join(name);
        let path_str = path.to_str().unwrap();
        let mut first = args.clone();
        first.extend(["--output", path_str]);
        assert_eq!(code(&tailwalk(&first)), 0, "{args:?}");
        let a = std::fs::read(&path).unwrap();
        assert_eq!(code(&tailwalk(&first)), 0);
        let b = std::fs::read(&path).unwrap();
        assert!(!a.is_empty());
        assert_eq!(a, b, "{name}");
    }
    // Only the requested files remain: temp files were renamed into place.
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 7);
    let lower = std::fs::read_to_string(dir.path().join("lower.csv")).unwrap();
    assert!(lower.starts_with("t,M\n"));
    let sweep = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert_eq!(sweep.lines().count(), 3);
}

#[test]
fn graph_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cube.txt");
    std::fs::write(&path, "8 12\n1 2\n1 3\n1 5\n2 4\n2 6\n3 4\n3 7\n4 8\n5 6\n5 7\n6 8\n7 8\nroot 8\n").unwrap();
    let p = path.to_str().unwrap();
    let out = tailwalk(&["evolve", "--graph", p, "--w", "1", "--gamma", "1", "--t-max", "3", "--t-steps", "40"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("t,fidelity,leakage\n"));
    assert_eq!(code(&tailwalk(&["reduce", "--graph", p, "--gamma", "2"])), 0);
    assert_eq!(code(&tailwalk(&["lowerbound", "--graph", p, "--gamma", "8"])), 0);

    std::fs::write(&path, "3 1\n1 2\nroot 1\n").unwrap();
    let out = tailwalk(&["reduce", "--graph", p]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&tailwalk(&[])), 2);
    assert_eq!(code(&tailwalk(&["search", "--n", "16", "--unknown"])), 2);
    assert_eq!(code(&tailwalk(&["search", "--n", "16", "--format", "xml"])), 2);
    assert_eq!(code(&tailwalk(&["reduce", "--n", "16", "--format", "svg"])), 2);
    assert_eq!(code(&tailwalk(&["lowerbound", "--graph", "/nonexistent/graph.txt"])), 2);
    assert_eq!(code(&tailwalk(&["search", "--help"])), 0);

    // Leakage can never meet a tolerance below zero-ish rounding with a tiny tail.
    let out = tailwalk(&[
        "search", "--n", "16", "--t-max", "200", "--t-steps", "64", "--truncation", "1", "--leakage-tol", "1e-300",
    ]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("propagate"));
}

#[test]
fn svg_peak_marker_sits_on_the_peak() {
    let out = tailwalk(&["search", "--n", "256", "--format", "svg"]);
    assert_eq!(code(&out), 0);
    let svg = String::from_utf8(out.stdout).unwrap();
    let marker = svg.split(r#"class="peak" data-t=""#).nth(1).unwrap();
    let t: f64 = marker[..marker.find('"').unwrap()].parse().unwrap();
    let run = search_run(256, 256.0, Placement::CliqueVertex).unwrap();
    let cell = run.curve.times[1] - run.curve.times[0];
    assert!((t - run.report.t_star).abs() <= cell);
    assert_eq!(svg.matches("<polyline").count(), 1);
}
