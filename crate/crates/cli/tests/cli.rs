use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn pmqp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmqp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn stat(out: &str, key: &str) -> String {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in {out}"))
        .to_string()
}

fn path6(dir: &Path) -> PathBuf {
    write(dir, "path6.txt", "# six-node path\n0 1\n1 2\n2 3\n3 4\n4 5\n")
}

#[test]
fn decompose_path_reports_optimal_depth() {
    let dir = TempDir::new().unwrap();
    let g = path6(dir.path());
    let o = pmqp(&["decompose", "--graph", g.to_str().unwrap(), "--pauli", "ZZZZZZ", "--verify", "symbolic"]);
    assert!(o.status.success(), "{o:?}");
    let out = stdout(&o);
    assert_eq!(stat(&out, "two_qubit_depth"), "5");
    assert_eq!(stat(&out, "two_qubit_gates"), "9");
    assert_eq!(stat(&out, "bound_met"), "true");
    assert!(out.contains("result=pass"));
}

#[test]
fn decompose_star_from_json_graph() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "star.json", r#"{"n": 6, "edges": [[0,1],[0,2],[0,3],[0,4],[0,5]]}"#);
    let o = pmqp(&["decompose", "--graph", g.to_str().unwrap(), "--pauli", "ZZZZZZ", "--verify", "numeric"]);
    assert!(o.status.success(), "{o:?}");
    let out = stdout(&o);
    assert_eq!(stat(&out, "strategy"), "star");
    assert_eq!(stat(&out, "two_qubit_depth"), "3");
    assert_eq!(stat(&out, "two_qubit_gates"), "9");
}

#[test]
fn csv_stats() {
    let dir = TempDir::new().unwrap();
    let g = path6(dir.path());
    let o = pmqp(&["decompose", "--graph", g.to_str().unwrap(), "--pauli", "XYZXYZ", "--vm", "1", "--stats-format", "csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let depth = header.iter().position(|h| *h == "two_qubit_depth").unwrap();
    assert_eq!(row[depth], "9");
}

#[test]
fn circuit_output_is_deterministic_and_canonical() {
    let dir = TempDir::new().unwrap();
    let g = path6(dir.path());
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = pmqp(&[
            "decompose", "--graph", g.to_str().unwrap(), "--pauli", "-XZYZXY", "--output", out.to_str().unwrap(),
            "--seed", "7", "--verify", "statevector",
        ]);
        assert!(o.status.success(), "{o:?}");
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let parsed = pmqp_core::format::read_circuit(&text).unwrap();
    assert_eq!(pmqp_core::format::write_circuit(&parsed), text);
    assert!(text.contains("\"+pi/4\""));
    assert!(parsed.layers.is_some());
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let g = path6(dir.path());
    let gs = g.to_str().unwrap();
    let code = |args: &[&str]| pmqp(args).status.code().unwrap();

    assert_eq!(code(&["decompose", "--graph", gs, "--pauli", "ZQ"]), 4);
    assert_eq!(code(&["decompose", "--graph", gs, "--pauli", "ZZ"]), 4);
    assert_eq!(code(&["decompose", "--graph", gs, "--pauli", "IIIIII"]), 4);
    assert_eq!(code(&["decompose", "--graph", "/nonexistent/graph", "--pauli", "ZZ"]), 1);
    let bad = write(dir.path(), "bad.txt", "0 1 2\n");
    assert_eq!(code(&["decompose", "--graph", bad.to_str().unwrap(), "--pauli", "ZZ"]), 3);
    let split = write(dir.path(), "split.txt", "0 1\n2 3\n");
    assert_eq!(code(&["decompose", "--graph", split.to_str().unwrap(), "--pauli", "ZIIZ"]), 5);
    assert_eq!(code(&["decompose", "--graph", gs, "--pauli", "ZZZZZZ", "--strategy", "star"]), 7);
    assert_eq!(code(&["decompose", "--graph", gs, "--pauli", "ZZZZZZ", "--vm", "9"]), 7);
    assert_eq!(code(&["decompose", "--graph", gs]), 2);
    assert_eq!(code(&["decompose", "--graph", gs, "--pauli", "ZZZZZZ", "--strategy", "spiral"]), 2);
}

#[test]
fn lhz_single_plaquette_and_column() {
    let dir = TempDir::new().unwrap();
    let one = write(dir.path(), "one.json", r#"{"rows":1,"cols":1,"J":[0,0,0,0],"C":[[1]]}"#);
    let out_file = dir.path().join("eq.json");
    let o = pmqp(&["lhz", "--problem", one.to_str().unwrap(), "--output", out_file.to_str().unwrap()]);
    assert!(o.status.success(), "{o:?}");
    let c = pmqp_core::format::read_circuit(&fs::read_to_string(&out_file).unwrap()).unwrap();
    let gates: Vec<String> = c.gates.iter().map(|g| g.to_string()).collect();
    assert_eq!(gates[2], "exp(i·+gamma·Y1Y3)");
    assert_eq!(c.len(), 5);

    let col = write(dir.path(), "col.json", r#"{"rows":3,"cols":1,"J":[0,0,0,0,0,0,0,0],"C":[[1],[1],[1]]}"#);
    let out_file = dir.path().join("col_out.json");
    let o = pmqp(&["lhz", "--problem", col.to_str().unwrap(), "--output", out_file.to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(stat(&out, "gates_cancelled"), "4");
    assert_eq!(stat(&out, "two_qubit_depth"), "3");
    let c = pmqp_core::format::read_circuit(&fs::read_to_string(&out_file).unwrap()).unwrap();
    let layers = c.layers.unwrap();
    let central: Vec<usize> = layers
        .iter()
        .enumerate()
        .filter(|(_, l)| l.iter().any(|&i| c.gates[i].as_rotation().unwrap().angle.is_param()))
        .map(|(k, _)| k)
        .collect();
    assert_eq!(central.len(), 1);
}

#[test]
fn lhz_grid_with_verification() {
    let dir = TempDir::new().unwrap();
    let p = write(
        dir.path(),
        "grid.json",
        r#"{"rows":2,"cols":2,"J":[0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9],"C":[[1,-1],[0.5,2]]}"#,
    );
    let o = pmqp(&["lhz", "--problem", p.to_str().unwrap(), "--verify", "statevector", "--seed", "3"]);
    assert!(o.status.success(), "{o:?}");
    let out = stdout(&o);
    assert!(out.contains("result=pass"));
    assert_eq!(stat(&out, "two_qubit_depth"), "5");
    assert_eq!(stat(&out, "total_depth"), "6");

    let broken = write(dir.path(), "broken.json", r#"{"rows":2,"cols":2,"J":[0],"C":[[1]]}"#);
    assert_eq!(pmqp(&["lhz", "--problem", broken.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn baseline_table() {
    let dir = TempDir::new().unwrap();
    let g = path6(dir.path());
    let o = pmqp(&["baseline", "--graph", g.to_str().unwrap(), "--pauli", "ZZZZZZ", "--stats-format", "csv"]);
    assert!(o.status.success(), "{o:?}");
    let out = stdout(&o);
    assert!(out.contains("ladder,10,10"), "{out}");
    assert!(out.contains("x_shaped,10,6"), "{out}");
    assert!(out.contains("this_work,9,5"), "{out}");

    let o = pmqp(&["baseline", "--graph", g.to_str().unwrap(), "--pauli", "ZZ", "--variant", "ladder"]);
    assert_eq!(o.status.code(), Some(4));

    let star = write(dir.path(), "star.txt", "0 1\n0 2\n0 3\n");
    let o = pmqp(&["baseline", "--graph", star.to_str().unwrap(), "--pauli", "ZZZZ"]);
    assert_eq!(o.status.code(), Some(7));
}
