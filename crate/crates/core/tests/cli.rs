use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use quatsvd::format::{read_qmat, read_rmat, write_qmat, write_rmat};
use quatsvd::qmat::{conj_transpose, matmul};
use quatsvd::{QMatrix, Quaternion};

fn quatsvd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quatsvd")).args(args).output().expect("binary runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// gen + svd; returns (A, out_dir).
fn decompose(dir: &Path, rows: usize, cols: usize, seed: u64) -> (PathBuf, PathBuf) {
    let a = dir.join("A.qmat");
    let out = dir.join("out");
    let g = quatsvd(&["gen", "--rows", &rows.to_string(), "--cols", &cols.to_string(), "--seed", &seed.to_string(), "--out", s(&a)]);
    assert_eq!(g.status.code(), Some(0), "{}", stderr(&g));
    let d = quatsvd(&["svd", s(&a), "--out-dir", s(&out)]);
    assert_eq!(d.status.code(), Some(0), "{}", stderr(&d));
    (a, out)
}

fn check(a: &Path, out: &Path) -> Output {
    quatsvd(&[
        "check",
        s(a),
        "--u",
        s(&out.join("U.qmat")),
        "--s",
        s(&out.join("S.rmat")),
        "--v",
        s(&out.join("V.qmat")),
    ])
}

fn failing_line<'a>(text: &'a str, name: &str) -> Option<&'a str> {
    text.lines().find(|l| l.starts_with(name) && l.contains("FAIL"))
}

#[test]
fn svd_then_check_passes() {
    let dir = tempfile::tempdir().unwrap();
    for (r, c, seed) in [(4, 3, 1), (3, 4, 2), (1, 1, 3), (6, 6, 4)] {
        let (a, out) = decompose(dir.path(), r, c, seed);
        let o = check(&a, &out);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        let text = stdout(&o);
        for name in ["reconstruction", "unitarity(U)", "unitarity(V)", "ordering", "nonnegativity", "oracle", "diagonal(S)"] {
            assert!(text.contains(name), "missing {name} in {text}");
        }
        assert!(text.trim_end().ends_with("PASS"));
    }
}

#[test]
fn svd_writes_rectangular_sigma() {
    let dir = tempfile::tempdir().unwrap();
    let (_, out) = decompose(dir.path(), 5, 2, 9);
    assert_eq!(read_rmat(&out.join("S.rmat")).unwrap().shape(), (5, 2));
    assert_eq!(read_qmat(&out.join("U.qmat")).unwrap().shape(), (5, 5));
    assert_eq!(read_qmat(&out.join("V.qmat")).unwrap().shape(), (2, 2));
}

#[test]
fn values_only_writes_sigma_alone() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("A.qmat");
    let out = dir.path().join("vals");
    assert_eq!(quatsvd(&["gen", "--rows", "3", "--cols", "2", "--seed", "5", "--out", s(&a)]).status.code(), Some(0));
    assert_eq!(quatsvd(&["svd", s(&a), "--out-dir", s(&out), "--values-only"]).status.code(), Some(0));
    assert!(out.join("S.rmat").exists());
    assert!(!out.join("U.qmat").exists());
    assert!(!out.join("V.qmat").exists());
}

#[test]
fn corrupted_u_names_unitarity() {
    let dir = tempfile::tempdir().unwrap();
    let (a, out) = decompose(dir.path(), 4, 4, 17);
    let u_path = out.join("U.qmat");
    let u = read_qmat(&u_path).unwrap();
    let bumped = QMatrix::from_fn(4, 4, |i, j| if (i, j) == (1, 2) { u[(i, j)] + Quaternion::real(0.1) } else { u[(i, j)] });
    write_qmat(&u_path, &bumped).unwrap();
    let o = check(&a, &out);
    assert_eq!(o.status.code(), Some(1));
    assert!(failing_line(&stdout(&o), "unitarity(U)").is_some(), "{}", stdout(&o));
    assert!(failing_line(&stdout(&o), "unitarity(V)").is_none());
}

#[test]
fn swapped_values_name_ordering() {
    let dir = tempfile::tempdir().unwrap();
    let (a, out) = decompose(dir.path(), 3, 3, 21);
    let s_path = out.join("S.rmat");
    let mut sigma = read_rmat(&s_path).unwrap();
    let (s0, s1) = (sigma[(0, 0)], sigma[(1, 1)]);
    sigma[(0, 0)] = s1;
    sigma[(1, 1)] = s0;
    write_rmat(&s_path, &sigma).unwrap();
    let o = check(&a, &out);
    assert_eq!(o.status.code(), Some(1));
    assert!(failing_line(&stdout(&o), "ordering").is_some(), "{}", stdout(&o));
}

#[test]
fn negated_value_names_nonnegativity() {
    let dir = tempfile::tempdir().unwrap();
    let (a, out) = decompose(dir.path(), 3, 2, 22);
    // Flip the sign of the last value and of the matching column of U, so the
    // product is unchanged and only the sign convention is violated.
    let s_path = out.join("S.rmat");
    let u_path = out.join("U.qmat");
    let mut sigma = read_rmat(&s_path).unwrap();
    sigma[(1, 1)] = -sigma[(1, 1)];
    write_rmat(&s_path, &sigma).unwrap();
    let u = read_qmat(&u_path).unwrap();
    let flipped = QMatrix::from_fn(3, 3, |i, j| if j == 1 { -u[(i, j)] } else { u[(i, j)] });
    write_qmat(&u_path, &flipped).unwrap();
    let o = check(&a, &out);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(failing_line(&text, "nonnegativity").is_some(), "{text}");
    assert!(failing_line(&text, "reconstruction").is_none(), "{text}");
}

#[test]
fn off_diagonal_sigma_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let (a, out) = decompose(dir.path(), 2, 2, 23);
    let s_path = out.join("S.rmat");
    let mut sigma = read_rmat(&s_path).unwrap();
    sigma[(0, 1)] = 1e-3;
    write_rmat(&s_path, &sigma).unwrap();
    let o = check(&a, &out);
    assert_eq!(o.status.code(), Some(1));
    assert!(failing_line(&stdout(&o), "diagonal(S)").is_some(), "{}", stdout(&o));
}

#[test]
fn perturbed_input_names_reconstruction() {
    let dir = tempfile::tempdir().unwrap();
    let (a, out) = decompose(dir.path(), 3, 3, 24);
    let m = read_qmat(&a).unwrap();
    let shifted = QMatrix::from_fn(3, 3, |i, j| if (i, j) == (0, 0) { m[(i, j)] + Quaternion::J } else { m[(i, j)] });
    write_qmat(&a, &shifted).unwrap();
    let o = check(&a, &out);
    assert_eq!(o.status.code(), Some(1));
    assert!(failing_line(&stdout(&o), "reconstruction").is_some(), "{}", stdout(&o));
}

#[test]
fn shape_mismatched_v_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let (a, out) = decompose(dir.path(), 3, 2, 30);
    write_qmat(&out.join("V.qmat"), &QMatrix::identity(3)).unwrap();
    let o = check(&a, &out);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("V.qmat"));
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("version.qmat", "QMAT 2\n1 1\n1 0 0 0\n", "line 1"),
        ("magic.qmat", "RMAT 1\n1 1\n1\n", "line 1"),
        ("components.qmat", "QMAT 1\n1 2\n1 0 0 0\n1 0 0\n", "line 4"),
        ("number.qmat", "QMAT 1\n1 1\n1 zero 0 0\n", "line 3"),
        ("truncated.qmat", "QMAT 1\n2 1\n1 0 0 0\n", ""),
        ("dims.qmat", "QMAT 1\n0 1\n", "line 2"),
        ("trailing.qmat", "QMAT 1\n1 1\n1 0 0 0\n2 0 0 0\n", "line 4"),
    ];
    for (name, text, needle) in cases {
        let p = dir.path().join(name);
        fs::write(&p, text).unwrap();
        for sub in [vec!["svd", s(&p), "--out-dir", s(dir.path())], vec!["adjoint-svs", s(&p)]] {
            let o = quatsvd(&sub);
            assert_eq!(o.status.code(), Some(2), "{name}: {}", stderr(&o));
            assert!(stderr(&o).contains(needle), "{name}: {}", stderr(&o));
        }
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(quatsvd(&[]).status.code(), Some(2));
    assert_eq!(quatsvd(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(quatsvd(&["check", "a", "--u", "u", "--s", "s", "--v", "v", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(quatsvd(&["--help"]).status.code(), Some(0));
}

#[test]
fn bidiag_writes_consistent_factors() {
    let dir = tempfile::tempdir().unwrap();
    for (r, c) in [(4, 2), (2, 4)] {
        let a_path = dir.path().join("A.qmat");
        let out = dir.path().join(format!("bd{r}{c}"));
        quatsvd(&["gen", "--rows", &r.to_string(), "--cols", &c.to_string(), "--seed", "3", "--out", s(&a_path)]);
        let o = quatsvd(&["bidiag", s(&a_path), "--out-dir", s(&out)]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let a = read_qmat(&a_path).unwrap();
        let l = read_qmat(&out.join("L.qmat")).unwrap();
        let b = read_rmat(&out.join("B.rmat")).unwrap();
        let rr = read_qmat(&out.join("R.qmat")).unwrap();
        let lar = matmul(&matmul(&l, &a).unwrap(), &rr).unwrap();
        assert!(lar.sub(&QMatrix::from_real(&b)).unwrap().frobenius_norm() < 1e-12 * a.frobenius_norm() * 4.0);
        let back = matmul(&matmul(&conj_transpose(&l), &QMatrix::from_real(&b)).unwrap(), &conj_transpose(&rr)).unwrap();
        assert!(a.sub(&back).unwrap().frobenius_norm() < 1e-12 * a.frobenius_norm() * 4.0);
    }
}

#[test]
fn adjoint_svs_prints_descending_values() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("d.qmat");
    write_qmat(&p, &QMatrix::diag(&[Quaternion::ONE, Quaternion::new(1.0, 1.0, 1.0, 1.0)])).unwrap();
    let o = quatsvd(&["adjoint-svs", s(&p)]);
    assert_eq!(o.status.code(), Some(0));
    let values: Vec<f64> = stdout(&o).lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(values.len(), 2);
    assert!((values[0] - 2.0).abs() < 1e-14 && (values[1] - 1.0).abs() < 1e-14);
}

#[test]
fn gen_output_is_seed_determined() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.qmat");
    let b = dir.path().join("b.qmat");
    let c = dir.path().join("c.qmat");
    quatsvd(&["gen", "--rows", "3", "--cols", "2", "--seed", "99", "--out", s(&a)]);
    quatsvd(&["gen", "--rows", "3", "--cols", "2", "--seed", "99", "--out", s(&b)]);
    quatsvd(&["gen", "--rows", "3", "--cols", "2", "--seed", "100", "--out", s(&c)]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
}
