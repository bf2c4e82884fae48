use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polychora"))
}

#[test]
fn info_reports_counts() {
    let out = bin().args(["info", "24-cell"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("cells: 24\n"));
    assert!(text.contains("dual degree: 8\n"));
    let out = bin().args(["info", "--polytope", "8-cell"]).output().unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().contains("cells: 8\n"));
}

#[test]
fn unknown_polytope_exits_2() {
    let out = bin().args(["info", "7-cell"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("7-cell"));
}

#[test]
fn export_json() {
    let dir = tempfile::tempdir().unwrap();
    let run = |file: &str, transform: &str| {
        let path = dir.path().join(file);
        let status = bin()
            .args(["export", "--polytope", "5-cell", "--format", "json", "--subdiv", "0"])
            .args(["--transform", transform, "--out"])
            .arg(&path)
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(path).unwrap()
    };
    let a = run("a.json", "1,0,0,0");
    let b = run("b.json", "1,0,0,0");
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["triangles"].as_array().unwrap().len(), 60);
    let c: serde_json::Value = serde_json::from_slice(&run("c.json", "0,1,0,0")).unwrap();
    assert_ne!(v["vertices3"], c["vertices3"]);
}

#[test]
fn export_obj() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cell.obj");
    let status = bin()
        .args(["export", "--polytope", "8-cell", "--format", "obj", "--subdiv", "1", "--out"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    let obj = std::fs::read_to_string(&path).unwrap();
    let mtl = std::fs::read_to_string(dir.path().join("cell.mtl")).unwrap();
    assert!(obj.starts_with("mtllib cell.mtl\n"));
    assert_eq!(obj.lines().filter(|l| l.starts_with("g cell_")).count(), 8);
    assert!(mtl.contains("newmtl c0\n"));
}

#[test]
fn export_to_missing_directory_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["export", "--polytope", "5-cell", "--out"])
        .arg(dir.path().join("missing/x.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn simulate_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("tour.jsonl");
    let status = bin()
        .args(["plan", "--polytope", "16-cell", "--trajectory", "nn-tour", "--out"])
        .arg(&plan)
        .status()
        .unwrap();
    assert!(status.success());
    let logs: Vec<Vec<u8>> = (0..2)
        .map(|k| {
            let log = dir.path().join(format!("events{k}.jsonl"));
            let out = bin()
                .args(["simulate", "--polytope", "16-cell", "--trajectory"])
                .arg(&plan)
                .arg("--out")
                .arg(&log)
                .output()
                .unwrap();
            assert!(out.status.success());
            assert!(String::from_utf8(out.stdout).unwrap().contains("won: true"));
            std::fs::read(log).unwrap()
        })
        .collect();
    assert_eq!(logs[0], logs[1]);
    assert_eq!(logs[0].iter().filter(|&&b| b == b'\n').count(), 16);
}

#[test]
fn spin360_does_not_win() {
    let out = bin()
        .args(["simulate", "--polytope", "8-cell", "--trajectory", "spin360"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("won: false"));
}

#[test]
fn truncated_trajectory_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cut.jsonl");
    std::fs::write(&path, "{\"t\":0.0,\"q\":[1.0,0.0,0.0,0.0]}\n{\"t\":0.1,\"q\":[1.0,0").unwrap();
    let out = bin()
        .args(["simulate", "--polytope", "5-cell", "--trajectory"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2"));
}
