use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use quatnil::decompose::verify_decomposition;
use quatnil::{Algebra, QMatrix};
use quatnil_cli::io::{decomposition_from_json, matrix_to_json, read_json, read_matrix, write_json, DecompositionJson};
use tempfile::TempDir;

fn quatnil(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quatnil"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_matrix(dir: &TempDir, name: &str, m: &QMatrix) -> PathBuf {
    let p = dir.path().join(name);
    write_json(&p, &matrix_to_json(m)).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn hamilton_diag(entries: &[[i64; 4]]) -> QMatrix {
    let h = Algebra::hamilton();
    QMatrix::diag(&h, &entries.iter().map(|&c| h.from_ints(c)).collect::<Vec<_>>())
}

#[test]
fn classify_diag_i00_reports_type_ii() {
    let dir = TempDir::new().unwrap();
    let m = hamilton_diag(&[[0, 1, 0, 0], [0; 4], [0; 4]]);
    let p = write_matrix(&dir, "m.json", &m);
    let out = quatnil(&["classify", "-i", s(&p)]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).starts_with("TypeII, supertrace=[t=0,N=1] rep=i, decision=NO"));
}

#[test]
fn classify_json_format() {
    let dir = TempDir::new().unwrap();
    let m = hamilton_diag(&[[5, 0, 0, 0], [5, 0, 0, 0]]);
    let p = write_matrix(&dir, "m.json", &m);
    let out = quatnil(&["--format", "json", "classify", "-i", s(&p)]);
    assert_eq!(code(&out), 3);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["decision"], "NO");
    assert_eq!(v["verdict"], "TypeI");
}

#[test]
fn decompose_antidiagonal_example() {
    let dir = TempDir::new().unwrap();
    let h = Algebra::hamilton();
    let m = QMatrix::from_rows(&h, vec![vec![h.zero(), h.i()], vec![h.i(), h.zero()]]).unwrap();
    let p = write_matrix(&dir, "m.json", &m);
    let d = dir.path().join("d.json");
    let out = quatnil(&["decompose", "-i", s(&p), "-o", s(&d)]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let dj: DecompositionJson = read_json(&d).unwrap();
    let dec = decomposition_from_json(&dj).unwrap();
    assert!(verify_decomposition(&m, &dec.n1, &dec.n2));
    let check = quatnil(&["check", "-i", s(&p), "-d", s(&d)]);
    assert_eq!(code(&check), 0);
    assert_eq!(stdout(&check).trim(), "valid");
}

#[test]
fn decompose_refuses_no_instances() {
    let dir = TempDir::new().unwrap();
    let m = hamilton_diag(&[[0, 1, 0, 0], [0, 1, 0, 0], [0, 1, 0, 0]]);
    let p = write_matrix(&dir, "m.json", &m);
    let d = dir.path().join("d.json");
    let out = quatnil(&["decompose", "-i", s(&p), "-o", s(&d)]);
    assert_eq!(code(&out), 3);
    assert!(!d.exists());
}

#[test]
fn gen_decompose_check_round_trip() {
    let dir = TempDir::new().unwrap();
    for n in 2..=4 {
        for kind in ["generic-trace-zero", "type-II-zero"] {
            let m = dir.path().join(format!("{kind}-{n}.json"));
            let d = dir.path().join(format!("{kind}-{n}.dec.json"));
            let n_s = n.to_string();
            let g = quatnil(&["gen", "--kind", kind, "-n", &n_s, "--seed", "7", "-o", s(&m)]);
            assert_eq!(code(&g), 0, "gen {kind} {n}");
            let out = quatnil(&["decompose", "-i", s(&m), "-o", s(&d)]);
            assert_eq!(code(&out), 0, "decompose {kind} {n}");
            let check = quatnil(&["check", "-i", s(&m), "-d", s(&d)]);
            assert_eq!(code(&check), 0, "check {kind} {n}");
        }
    }
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let g = quatnil(&["gen", "--kind", "type-III", "-n", "3", "--seed", "11", "-o", s(p)]);
        assert_eq!(code(&g), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let out = quatnil(&["classify", "-i", s(&a)]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).starts_with("TypeIII"));
}

#[test]
fn check_rejects_tampered_decomposition() {
    let dir = TempDir::new().unwrap();
    let m = dir.path().join("m.json");
    let d = dir.path().join("d.json");
    assert_eq!(code(&quatnil(&["gen", "--kind", "generic-trace-zero", "-n", "3", "-o", s(&m)])), 0);
    assert_eq!(code(&quatnil(&["decompose", "-i", s(&m), "-o", s(&d)])), 0);
    let mut dj: DecompositionJson = read_json(&d).unwrap();
    dj.n1.entries[0][0] = ["1".into(), "0".into(), "0".into(), "0".into()];
    write_json(&d, &dj).unwrap();
    let out = quatnil(&["check", "-i", s(&m), "-d", s(&d)]);
    assert_eq!(code(&out), 3);
    assert_eq!(stdout(&out).trim(), "invalid");
}

#[test]
fn error_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&quatnil(&["classify", "-i", s(&bad)])), 2);

    let split = dir.path().join("split.json");
    std::fs::write(
        &split,
        r#"{"algebra":{"a":"1","b":"1"},"rows":1,"cols":1,"entries":[[["0","0","0","0"]]]}"#,
    )
    .unwrap();
    assert_eq!(code(&quatnil(&["classify", "-i", s(&split)])), 4);

    let out = dir.path().join("o.json");
    assert_eq!(
        code(&quatnil(&["gen", "--kind", "type-III", "-n", "4", "-o", s(&out)])),
        2
    );
    assert_eq!(
        code(&quatnil(&["gen", "--kind", "type-I", "-n", "2", "--algebra", "1,1", "-o", s(&out)])),
        4
    );
    assert_eq!(code(&quatnil(&["frobnicate"])), 2);
}

#[test]
fn other_algebra_round_trip() {
    let dir = TempDir::new().unwrap();
    let m = dir.path().join("m.json");
    let d = dir.path().join("d.json");
    let g = quatnil(&["gen", "--kind", "generic-trace-zero", "-n", "3", "--algebra", "-1,3", "-o", s(&m)]);
    assert_eq!(code(&g), 0);
    let mat = read_matrix(&m).unwrap();
    assert_eq!(mat.algebra().b(), &quatnil::rational::int(3));
    assert_eq!(code(&quatnil(&["decompose", "-i", s(&m), "-o", s(&d)])), 0);
    assert_eq!(code(&quatnil(&["check", "-i", s(&m), "-d", s(&d)])), 0);
}
