//! End-to-end tests against the built binary: exact output bytes for the
//! documented invocations, exit-code discipline, determinism, and file
//! round trips.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_homkit")
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn k2(dir: &Path) -> PathBuf {
    write(dir, "k2.grf", "n 2\ne 0 1\n")
}

fn k3(dir: &Path) -> PathBuf {
    write(dir, "k3.grf", "n 3\ne 0 1\ne 0 2\ne 1 2\n")
}

/// The 5-vertex dismantlable example: loops on 0..=3, vertex 4 unlooped.
fn gadget5(dir: &Path) -> PathBuf {
    write(
        dir,
        "gadget5.grf",
        "n 5\ne 0 0\ne 0 1\ne 0 4\ne 1 1\ne 1 2\ne 2 2\ne 2 3\ne 2 4\ne 3 3\ne 3 4\n",
    )
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("HOMKIT_CAP")
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn classes_prints_the_documented_line() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = k2(dir.path());
    let k3 = k3(dir.path());
    let out = run(&["classes", k2.to_str().unwrap(), k3.to_str().unwrap()]);
    assert_eq!(stdout_of(&out), "classes: 1 (sizes: [6])\n");

    let out = run(&["classes", k2.to_str().unwrap(), k2.to_str().unwrap()]);
    assert_eq!(stdout_of(&out), "classes: 2 (sizes: [1, 1])\n");
}

#[test]
fn dismantlable_prints_true_and_the_trace() {
    let dir = tempfile::tempdir().unwrap();
    let g = gadget5(dir.path());
    let out = run(&["dismantlable", g.to_str().unwrap()]);
    let text = stdout_of(&out);
    assert!(text.starts_with("true\n"));
    assert_eq!(text.lines().count(), 5); // "true" + four folds
    assert_eq!(text.lines().nth(1), Some("fold 3 2"));

    let k2 = k2(dir.path());
    let out = run(&["dismantlable", k2.to_str().unwrap()]);
    assert_eq!(stdout_of(&out), "false\n");
}

#[test]
fn bound_matches_the_documented_shape() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = k3(dir.path());
    let out = run(&["bound", k3.to_str().unwrap(), "--lovasz", "--chi"]);
    assert_eq!(stdout_of(&out), "lovasz: 3, chi: 3, tight\n");
}

#[test]
fn chi_prints_the_number() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write(dir.path(), "c5.grf", "n 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 0 4\n");
    let out = run(&["chi", c5.to_str().unwrap()]);
    assert_eq!(stdout_of(&out), "3\n");
}

#[test]
fn parse_errors_exit_2_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.grf", "n 2\ne 0 9\n");
    let out = run(&["chi", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(":2:"), "{err}");
}

#[test]
fn domain_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let one = write(dir.path(), "one.grf", "n 1\ne 0 0\n");
    let out = run(&["chi", one.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("loop"));
}

#[test]
fn resource_cap_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = k2(dir.path());
    let k3 = k3(dir.path());
    let out = run(&[
        "hom",
        k2.to_str().unwrap(),
        k3.to_str().unwrap(),
        "--cap",
        "hom_elements=2",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn env_caps_are_honored() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = k2(dir.path());
    let k3 = k3(dir.path());
    let out = Command::new(bin())
        .args(["hom", k2.to_str().unwrap(), k3.to_str().unwrap()])
        .env("HOMKIT_CAP", "hom_elements=2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_cap_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = k2(dir.path());
    let out = run(&["chi", k2.to_str().unwrap(), "--cap", "nope=3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("valid caps"));
}

#[test]
fn identical_invocations_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = k2(dir.path());
    let k3 = k3(dir.path());
    for args in [
        vec!["hom", k2.to_str().unwrap(), k3.to_str().unwrap()],
        vec![
            "invariants",
            k2.to_str().unwrap(),
            k3.to_str().unwrap(),
            "--json",
        ],
        vec!["equiv", k2.to_str().unwrap(), k2.to_str().unwrap()],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn product_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = k2(dir.path());
    let out_path = dir.path().join("p.grf");
    let out = run(&[
        "product",
        k2.to_str().unwrap(),
        k2.to_str().unwrap(),
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(text, "n 4\ne 0 3\ne 1 2\n");

    let out = run(&["coproduct", k2.to_str().unwrap(), k2.to_str().unwrap()]);
    assert_eq!(stdout_of(&out), "n 4\ne 0 1\ne 2 3\n");
}

#[test]
fn exponential_writes_graph_and_decode_table() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = k2(dir.path());
    let out_path = dir.path().join("exp.grf");
    let out = run(&[
        "exp",
        k2.to_str().unwrap(),
        k2.to_str().unwrap(),
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let graph = std::fs::read_to_string(&out_path).unwrap();
    // K2^K2: loops at the two bijections, plus the constants joined to them.
    assert!(graph.starts_with("n 4\n"));
    let dec = std::fs::read_to_string(dir.path().join("exp.dec")).unwrap();
    assert_eq!(dec, "d 0 0 0\nd 1 0 1\nd 2 1 0\nd 3 1 1\n");
}

#[test]
fn hom_dump_has_the_documented_shape() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = k2(dir.path());
    let out = run(&["hom", k2.to_str().unwrap(), k2.to_str().unwrap()]);
    assert_eq!(stdout_of(&out), "k 2\nh 0 0|1\nh 1 1|0\n");
}

#[test]
fn homotopic_consumes_map_files_and_prints_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = k2(dir.path());
    let k3 = k3(dir.path());
    let f = write(dir.path(), "f.map", "m 0 0\nm 1 1\n");
    let g = write(dir.path(), "g.map", "m 0 2\nm 1 1\n");
    let out = run(&[
        "homotopic",
        k2.to_str().unwrap(),
        k3.to_str().unwrap(),
        f.to_str().unwrap(),
        g.to_str().unwrap(),
    ]);
    let text = stdout_of(&out);
    assert!(text.starts_with("homotopic: true\n# step 0\nm 0 0\nm 1 1\n"));
    assert!(text.ends_with("m 0 2\nm 1 1\n"));

    // The two self-maps of an edge are in different classes.
    let id = write(dir.path(), "id.map", "m 0 0\nm 1 1\n");
    let swap = write(dir.path(), "swap.map", "m 0 1\nm 1 0\n");
    let out = run(&[
        "homotopic",
        k2.to_str().unwrap(),
        k2.to_str().unwrap(),
        id.to_str().unwrap(),
        swap.to_str().unwrap(),
    ]);
    assert_eq!(stdout_of(&out), "homotopic: false\n");
}

#[test]
fn based_homotopy_flags() {
    let dir = tempfile::tempdir().unwrap();
    let i2 = write(dir.path(), "i2.grf", "n 3\ne 0 0\ne 0 1\ne 1 1\ne 1 2\ne 2 2\n");
    let id = write(dir.path(), "id.map", "m 0 0\nm 1 1\nm 2 2\n");
    let c0 = write(dir.path(), "c0.map", "m 0 0\nm 1 0\nm 2 0\n");
    let out = run(&[
        "homotopic",
        i2.to_str().unwrap(),
        i2.to_str().unwrap(),
        id.to_str().unwrap(),
        c0.to_str().unwrap(),
        "--cartesian",
        "--base",
        "0",
        "0",
    ]);
    assert!(stdout_of(&out).starts_with("homotopic: true\n"));
}

#[test]
fn fold_and_stiff_pipelines() {
    let dir = tempfile::tempdir().unwrap();
    let g = gadget5(dir.path());
    let out = run(&["fold", g.to_str().unwrap()]);
    assert_eq!(stdout_of(&out), "fold 3 2\n");

    let out = run(&["fold", g.to_str().unwrap(), "--apply", "3", "2"]);
    let text = stdout_of(&out);
    assert!(text.starts_with("n 4\n"));

    let out = run(&["stiff", g.to_str().unwrap()]);
    let text = stdout_of(&out);
    assert!(text.contains("# stiff core\nn 1\ne 0 0\n"));

    // Applying a non-fold is a domain error.
    let out = run(&["fold", g.to_str().unwrap(), "--apply", "0", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn equiv_finds_the_terminal_equivalence() {
    let dir = tempfile::tempdir().unwrap();
    let g = gadget5(dir.path());
    let one = write(dir.path(), "one.grf", "n 1\ne 0 0\n");
    let out = run(&["equiv", g.to_str().unwrap(), one.to_str().unwrap()]);
    let text = stdout_of(&out);
    assert!(text.starts_with("equivalent: true\n"));

    let k2 = k2(dir.path());
    let k3 = k3(dir.path());
    let out = run(&["equiv", k2.to_str().unwrap(), k3.to_str().unwrap()]);
    assert_eq!(stdout_of(&out), "equivalent: false\n");
}

#[test]
fn invariants_text_and_smp_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = k2(dir.path());
    let k3 = k3(dir.path());
    let smp = dir.path().join("hex.smp");
    let out = run(&[
        "invariants",
        k2.to_str().unwrap(),
        k3.to_str().unwrap(),
        "-o",
        smp.to_str().unwrap(),
    ]);
    assert_eq!(
        stdout_of(&out),
        "components: 1, betti: [0, 1], euler: 0, conn_est (homological, GF(2)): 0\n"
    );
    // Re-reading the dumped complex reproduces the invariants.
    let out = run(&["invariants", smp.to_str().unwrap()]);
    assert_eq!(
        stdout_of(&out),
        "components: 1, betti: [0, 1], euler: 0, conn_est (homological, GF(2)): 0\n"
    );
}

#[test]
fn invariants_json_has_schema_and_values() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = k2(dir.path());
    let k3 = k3(dir.path());
    let out = run(&[
        "invariants",
        k2.to_str().unwrap(),
        k3.to_str().unwrap(),
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["components"], 1);
    assert_eq!(v["betti"], serde_json::json!([0, 1]));
    assert_eq!(v["euler"], 0);
    assert_eq!(v["conn_est"], 0);
}

#[test]
fn dot_export_is_available() {
    let dir = tempfile::tempdir().unwrap();
    let k2 = k2(dir.path());
    let out = run(&["product", k2.to_str().unwrap(), k2.to_str().unwrap(), "--dot"]);
    let text = stdout_of(&out);
    assert!(text.starts_with("graph {\n"));
    assert!(text.contains("0 -- 3;"));

    let out = run(&["invariants", k2.to_str().unwrap(), k2.to_str().unwrap(), "--dot"]);
    assert!(stdout_of(&out).starts_with("graph {\n"));
}
