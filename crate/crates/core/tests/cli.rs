use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use palg::cli::{InstanceConfig, IsoData};
use palg::fixtures;
use palg::Instance;

fn palg(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_palg"));
    cmd.args(args).env_remove("PALG_SEED").stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("spawn palg");
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn config(dir: &Path, name: &str, inst: &Instance) -> PathBuf {
    write(dir, name, &serde_json::to_string_pretty(&InstanceConfig::from_instance(inst)).unwrap())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = config(dir.path(), "a.json", &fixtures::fix_a());
    let o = palg(&["validate", s(&a)], None);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);

    let mut cfg = InstanceConfig::from_instance(&fixtures::fix_e());
    cfg.phi[1][0] = "1".into();
    let bad = write(dir.path(), "e.json", &serde_json::to_string(&cfg).unwrap());
    let o = palg(&["validate", s(&bad), "--format", "text"], None);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("FAIL skew (1,2)"), "{}", stdout(&o));

    let trunc = write(dir.path(), "t.json", "{\"shape\": {\"l0\": 1");
    assert_eq!(code(&palg(&["validate", s(&trunc)], None)), 3);
    assert_eq!(code(&palg(&["validate", "/nonexistent/file.json"], None)), 3);
    assert_eq!(code(&palg(&["frobnicate"], None)), 3);
}

#[test]
fn axioms_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let d = config(dir.path(), "d.json", &fixtures::fix_d());
    let args = ["axioms", s(&d), "--samples", "40", "--seed", "7"];
    let first = palg(&args, None);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, palg(&args, None).stdout);
    assert_eq!(first.stdout, palg(&[&args[..], &["--sequential"]].concat(), None).stdout);
    let empty = palg(&["axioms", s(&d), "--samples", "0"], None);
    assert_eq!(code(&empty), 0);

    let mut with_env = Command::new(env!("CARGO_BIN_EXE_palg"));
    let env_out = with_env.args(["axioms", s(&d), "--samples", "40"]).env("PALG_SEED", "7").output().unwrap();
    assert_eq!(env_out.stdout, first.stdout);
}

#[test]
fn bracket_outputs_canonical_elements() {
    let dir = tempfile::tempdir().unwrap();
    let d = config(dir.path(), "d.json", &fixtures::fix_d());
    let u = write(dir.path(), "u", "t1");
    let o = palg(&["bracket", s(&d), s(&u), "-", "--format", "text"], Some("t1b"));
    assert_eq!((code(&o), stdout(&o)), (0, "1\n".to_string()));
    let o = palg(&["bracket", s(&d), s(&u), s(&u), "--format", "text"], None);
    assert_eq!(stdout(&o), "0\n");

    let e = config(dir.path(), "e.json", &fixtures::fix_e());
    let x1 = write(dir.path(), "x1", "x^{e1}");
    let x2 = write(dir.path(), "x2", "{\"terms\":[{\"a0\":[0,1],\"a1\":[],\"t\":[],\"c\":\"1\"}]}");
    let o = palg(&["bracket", s(&e), s(&x1), s(&x2), "--format", "text"], None);
    assert_eq!(stdout(&o), "x^{(1,1)}\n");
    let o = palg(&["bracket", s(&e), s(&x1), s(&x2)], None);
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["terms"][0]["c"], "1");

    let bad = write(dir.path(), "bad", "t7");
    assert_eq!(code(&palg(&["bracket", s(&d), s(&bad), s(&u)], None)), 3);
    assert_eq!(code(&palg(&["bracket", s(&d), "-", "-"], Some("t1"))), 3);
}

#[test]
fn fingerprint_reconstructs() {
    let dir = tempfile::tempdir().unwrap();
    for (name, inst, l0) in [("a", fixtures::fix_a(), 1), ("b", fixtures::fix_b(), 0), ("d", fixtures::fix_d(), 0)] {
        let p = config(dir.path(), &format!("{name}.json"), &inst);
        let o = palg(&["fingerprint", s(&p)], None);
        assert_eq!(code(&o), 0, "{name}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["result"]["reconstructed"]["l0"], l0);
        assert_eq!(v["result"]["matches"], true);
    }
}

#[test]
fn iso_build_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let a = config(dir.path(), "a.json", &fixtures::fix_a());
    let b = config(dir.path(), "b.json", &fixtures::fix_b());
    let shear = write(dir.path(), "shear.json", r#"{"blocks": [[["1","0"],["5","1"]]]}"#);
    let map = dir.path().join("map.json");
    let o = palg(&["iso-build", s(&a), s(&a), s(&shear), "--out", s(&map)], None);
    assert_eq!(code(&o), 0);
    let o = palg(&["iso-verify", s(&a), s(&a), s(&map), "--samples", "100", "--seed", "3"], None);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let o = palg(&["iso-build", s(&a), s(&b), s(&shear)], None);
    assert_eq!(code(&o), 2);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["failure"]["condition"], "shape");

    let mut data = IsoData::from_json(&std::fs::read_to_string(&map).unwrap()).unwrap();
    data.chi_values = Some(vec!["3".into(), "1".into()]);
    let corrupt = write(dir.path(), "corrupt.json", &serde_json::to_string(&data).unwrap());
    let o = palg(&["iso-verify", s(&a), s(&a), s(&corrupt), "--samples", "10", "--format", "text"], None);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("witness: (t1, x^{(0,1)})"), "{}", stdout(&o));
}
