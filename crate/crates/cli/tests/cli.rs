use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crossalg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_example_one_passes() {
    let o = run(&["check", path(&corpus("example1.xmod.json"))]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("[pass] CM1"));
    assert!(out.contains("[pass] CM2"));
}

#[test]
fn check_precrossed_specimen_shows_witness() {
    let o = run(&["check", path(&corpus("precrossed_specimen.xmod.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] CM2  witness [0, 0]"));
}

#[test]
fn exhaustive_check_of_multiplication_two_algebra() {
    let o = run(&["check", "--exhaustive", path(&corpus("mult_dual.2alg.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("EXH.ICHG-EXH"));
}

#[test]
fn roundtrip_prints_witnesses() {
    let o = run(&["roundtrip", path(&corpus("example1.xmod.json"))]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("forward level 1"));
    assert!(out.contains("RT-COORD"));
}

#[test]
fn psi_then_gamma_reproduces_file() {
    let dir = tempfile::tempdir().unwrap();
    let two = dir.path().join("a.2alg.json");
    let back = dir.path().join("b.xmod.json");
    let src = corpus("example1.xmod.json");
    assert_eq!(run(&["to-2alg", path(&src), "-o", two.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(run(&["to-xmod", two.to_str().unwrap(), "-o", back.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(fs::read_to_string(back).unwrap(), fs::read_to_string(src).unwrap());
}

#[test]
fn psi_of_precrossed_input_warns() {
    let o = run(&["to-2alg", path(&corpus("precrossed_specimen.xmod.json"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("interchange not guaranteed"));
}

#[test]
fn construct_matches_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.json");
    let dual = corpus("dual.algebra.json");
    let o = run(&["construct", "mult", path(&dual), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&out).unwrap(), fs::read_to_string(corpus("example3.xmod.json")).unwrap());

    let o = run(&["construct", "ideal", path(&dual), "--gen", "0,1", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&out).unwrap(), fs::read_to_string(corpus("example1.xmod.json")).unwrap());

    let o = run(&["construct", "mult", "--two-algebra", path(&dual)]);
    assert_eq!(stdout(&o), fs::read_to_string(corpus("mult_dual.2alg.json")).unwrap());
}

#[test]
fn construct_zero_boundary() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.algebra.json");
    fs::write(&m, "{\"data\": {\"mul\": [], \"rank\": 1}, \"kind\": \"algebra\", \"modulus\": 2}").unwrap();
    let z2 = corpus("z2.algebra.json");
    let o = run(&["construct", "zero", m.to_str().unwrap(), path(&z2), "--act", "0,0,0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), fs::read_to_string(corpus("example2.xmod.json")).unwrap());
}

#[test]
fn homotopy_commands() {
    let der = corpus("example1_x.derivation.json");
    assert_eq!(run(&["homotopy", "check", path(&der)]).status.code(), Some(0));
    let o = run(&["homotopy", "to-2alg", path(&der)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), fs::read_to_string(corpus("example1_x.2alg_homotopy.json")).unwrap());
    let o = run(&["homotopy", "to-xmod", path(&corpus("example1_x.2alg_homotopy.json"))]);
    assert_eq!(stdout(&o), fs::read_to_string(&der).unwrap());
    // h ends at g ≠ id, so h cannot be followed by itself
    assert_eq!(run(&["homotopy", "compose", path(&der), path(&der)]).status.code(), Some(2));
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"kind\": \"algebra\", \"modulus\": 2, \"data\": {\"rank\": 1, \"mul\": [[0,0,0,2]]}}").unwrap();
    let o = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("data.mul[0][3]"));
    assert_eq!(run(&["check", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn enumerate_counts() {
    let o = run(&["enumerate", "--modulus", "2", "--rank-c", "1", "--rank-r", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("crossed"));
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn reports_are_deterministic() {
    let f = corpus("mult_z6.2alg.json");
    assert_eq!(stdout(&run(&["check", path(&f)])), stdout(&run(&["check", path(&f)])));
}
