use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn ergokit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ergokit"))
        .args(args)
        .env_remove("ERGOKIT_TOL_EIG")
        .output()
        .expect("binary runs")
}

fn json_out(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn werner(p: f64) -> Vec<Vec<f64>> {
    let d = (1.0 - p) / 4.0;
    vec![
        vec![d, 0.0, 0.0, 0.0],
        vec![0.0, d + p / 2.0, -p / 2.0, 0.0],
        vec![0.0, -p / 2.0, d + p / 2.0, 0.0],
        vec![0.0, 0.0, 0.0, d],
    ]
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn state_file(dir: &TempDir, name: &str, state: Value) -> PathBuf {
    write(dir, name, &state.to_string())
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gap_of_werner_state() {
    let dir = TempDir::new().unwrap();
    let path = state_file(
        &dir,
        "w.json",
        json!({"d1": 2, "d2": 2, "matrix_re": werner(0.7)}),
    );
    let report = json_out(&ergokit(&["gap", p(&path)]));
    assert!((report["gap"]["gap"].as_f64().unwrap() - 0.7).abs() < 1e-9);
    assert_eq!(report["command"], "gap");
    assert!(report["input_digest"]
        .as_str()
        .unwrap()
        .starts_with("sha256:"));
    assert_eq!(report["tolerances"]["eig"], 1e-9);
}

#[test]
fn gap_of_product_states_is_zero() {
    let dir = TempDir::new().unwrap();
    // diag(0.8, 0.2) (x) diag(0.6, 0.4): qubit products never show a gap
    let (a, b) = ([0.8, 0.2], [0.6, 0.4]);
    let mut m = vec![vec![0.0; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            m[2 * i + j][2 * i + j] = a[i] * b[j];
        }
    }
    let path = state_file(&dir, "prod.json", json!({"d1": 2, "d2": 2, "matrix_re": m}));
    let report = json_out(&ergokit(&["gap", p(&path)]));
    assert!(report["gap"]["gap"].as_f64().unwrap().abs() < 1e-12);

    // pure product |1> (x) |2> in 2x3
    let mut m = vec![vec![0.0; 6]; 6];
    m[5][5] = 1.0;
    let path = state_file(&dir, "pure.json", json!({"d1": 2, "d2": 3, "matrix_re": m}));
    let report = json_out(&ergokit(&["gap", p(&path)]));
    assert!(report["gap"]["gap"].as_f64().unwrap().abs() < 1e-12);
    assert!((report["gap"]["global_ergotropy"].as_f64().unwrap() - 3.0).abs() < 1e-12);
}

#[test]
fn complex_entries_are_read() {
    let dir = TempDir::new().unwrap();
    // |psi> = (|00> + i|11>)/sqrt2
    let path = state_file(
        &dir,
        "c.json",
        json!({
            "d1": 2, "d2": 2,
            "matrix_re": [[0.5,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0.5]],
            "matrix_im": [[0,0,0,-0.5],[0,0,0,0],[0,0,0,0],[0.5,0,0,0]]
        }),
    );
    let report = json_out(&ergokit(&["gap", p(&path)]));
    assert!((report["gap"]["gap"].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn gap_output_round_trips() {
    let dir = TempDir::new().unwrap();
    let path = state_file(
        &dir,
        "w.json",
        json!({"d1": 2, "d2": 2, "matrix_re": werner(0.37)}),
    );
    let out_path = dir.path().join("report.json");
    let out = ergokit(&["gap", p(&path), "--out", p(&out_path)]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let first: Value = serde_json::from_str(&text).unwrap();
    let reparsed: Value = serde_json::from_str(&serde_json::to_string(&first).unwrap()).unwrap();
    assert_eq!(first, reparsed);
    // every number is written in a form that parses back to the same f64
    for key in ["energy_initial", "global_ergotropy", "gap"] {
        let x = first["gap"][key].as_f64().unwrap();
        assert!(text.contains(&format!(
            "\"{key}\": {}",
            serde_json::to_string(&x).unwrap()
        )));
    }
    let second = json_out(&ergokit(&["gap", p(&path)]));
    assert_eq!(first, second);
}

#[test]
fn malformed_json_exits_2() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "bad.json", "{\"d1\": 2, \"d2\": ");
    assert_eq!(ergokit(&["gap", p(&path)]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(ergokit(&["certify", p(&missing)]).status.code(), Some(2));
}

#[test]
fn invalid_state_exits_3() {
    let dir = TempDir::new().unwrap();
    let not_psd = state_file(
        &dir,
        "neg.json",
        json!({"d1": 2, "d2": 1, "matrix_re": [[1.5, 0], [0, -0.5]]}),
    );
    assert_eq!(ergokit(&["gap", p(&not_psd)]).status.code(), Some(3));
    let wrong_shape = state_file(
        &dir,
        "shape.json",
        json!({"d1": 2, "d2": 2, "matrix_re": [[1.0]]}),
    );
    assert_eq!(ergokit(&["gap", p(&wrong_shape)]).status.code(), Some(3));
}

#[test]
fn unequal_spacings_exit_4_for_certify() {
    let dir = TempDir::new().unwrap();
    let path = state_file(
        &dir,
        "s.json",
        json!({"d1": 2, "d2": 2, "matrix_re": werner(0.5), "spacing_a": 1.0, "spacing_b": 2.0}),
    );
    assert_eq!(ergokit(&["certify", p(&path)]).status.code(), Some(4));
    // the gap itself is defined for any spacings
    let report = json_out(&ergokit(&["gap", p(&path)]));
    assert!(report["gap"]["gap"].as_f64().unwrap() > 0.0);
}

#[test]
fn certify_verdicts_are_data() {
    let dir = TempDir::new().unwrap();
    for (prob, verdict) in [(0.5, "Entangled"), (0.2, "Separable")] {
        let path = state_file(
            &dir,
            "w.json",
            json!({"d1": 2, "d2": 2, "matrix_re": werner(prob)}),
        );
        let report = json_out(&ergokit(&["certify", p(&path)]));
        assert_eq!(report["certificate"]["verdict"], verdict);
        assert!((report["certificate"]["gap"].as_f64().unwrap() - prob).abs() < 1e-9);
    }
    let path = state_file(
        &dir,
        "w.json",
        json!({"d1": 2, "d2": 2, "matrix_re": werner(0.5)}),
    );
    let report = json_out(&ergokit(&["certify", p(&path)]));
    assert!((report["certificate"]["bound"].as_f64().unwrap() - 0.25).abs() < 1e-9);
}

#[test]
fn bound_values() {
    let m = |d1: &str, d2: &str| {
        json_out(&ergokit(&["bound", "--d1", d1, "--d2", d2]))["dimension_bound"]["value"]
            .as_f64()
            .unwrap()
    };
    assert_eq!(m("2", "2"), 0.5);
    assert!((m("2", "3") - 5.0 / 6.0).abs() < 1e-12);
    let report = json_out(&ergokit(&[
        "bound",
        "--d1",
        "2",
        "--d2",
        "2",
        "--spectrum",
        "0.75,0.25,0,0",
    ]));
    assert!((report["bound"]["bound"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    assert_eq!(
        ergokit(&["bound", "--d1", "1", "--d2", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ergokit(&["bound", "--d1", "2", "--d2", "2", "--spectrum", "0.5,x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ergokit(&[
            "bound",
            "--d1",
            "2",
            "--d2",
            "2",
            "--spectrum",
            "0.9,0.9,0,0"
        ])
        .status
        .code(),
        Some(3)
    );
}

#[test]
fn witness_dimension() {
    for (gap, dim) in [("1.5", "3"), ("1.0", "2"), ("2.7", "4"), ("0", "1")] {
        let out = ergokit(&["witness-dim", "--gap", gap, "--spacing", "1"]);
        assert!(out.status.success());
        assert_eq!(
            String::from_utf8(out.stdout).unwrap().trim(),
            dim,
            "gap {gap}"
        );
    }
    assert_eq!(
        ergokit(&["witness-dim", "--gap", "-1"]).status.code(),
        Some(3)
    );
    assert_eq!(
        ergokit(&["witness-dim", "--gap", "abc"]).status.code(),
        Some(2)
    );
}

#[test]
fn werner_sweep_csv() {
    let out = ergokit(&["sweep", "--family", "werner", "--n", "21"]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>().join(","),
        "seed,d1,d2,param,gap,bound_spectral,bound_dimensional,bound,nk_holds,ppt_separable,verdict"
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 21);
    for row in &rows {
        let param: f64 = row[3].parse().unwrap();
        let gap: f64 = row[4].parse().unwrap();
        assert!((gap - param).abs() < 1e-9);
        let expected = if param > 1.0 / 3.0 {
            "Entangled"
        } else {
            "Separable"
        };
        assert_eq!(&row[10], expected);
        assert_eq!(&row[9], if param > 1.0 / 3.0 { "false" } else { "true" });
    }
}

#[test]
fn separable_sweep_has_no_violations() {
    let out = ergokit(&[
        "sweep",
        "--family",
        "separable",
        "--dims",
        "2x2",
        "--n",
        "10000",
        "--seed",
        "3",
    ]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let mut count = 0;
    for row in reader.records() {
        let row = row.unwrap();
        let gap: f64 = row[4].parse().unwrap();
        let bound: f64 = row[7].parse().unwrap();
        assert!(gap <= bound + 1e-9);
        assert_eq!(&row[8], "true");
        assert_ne!(&row[10], "Entangled");
        count += 1;
    }
    assert_eq!(count, 10_000);
}

#[test]
fn sweeps_are_deterministic() {
    let dir = TempDir::new().unwrap();
    for format in ["csv", "json"] {
        let a = dir.path().join(format!("a.{format}"));
        let b = dir.path().join(format!("b.{format}"));
        for path in [&a, &b] {
            let out = ergokit(&[
                "sweep",
                "--family",
                "haar",
                "--dims",
                "2x3",
                "--n",
                "200",
                "--seed",
                "42",
                "--format",
                format,
                "--out",
                p(path),
            ]);
            assert!(out.status.success());
        }
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }
    let json: Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("a.json")).unwrap()).unwrap();
    assert_eq!(json["records"].as_array().unwrap().len(), 200);
    assert_eq!(json["summary"]["samples"], 200);
}

#[test]
fn bad_sweep_flags_exit_2() {
    for args in [
        &["sweep", "--family", "ghz"][..],
        &["sweep", "--family", "werner", "--dims", "3x3"],
        &["sweep", "--family", "haar", "--dims", "2by2"],
        &["sweep", "--family", "haar", "--format", "xml"],
    ] {
        assert_eq!(ergokit(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn tolerance_flag_and_env() {
    let dir = TempDir::new().unwrap();
    let path = state_file(
        &dir,
        "w.json",
        json!({"d1": 2, "d2": 2, "matrix_re": werner(0.3)}),
    );
    let report = json_out(&ergokit(&["gap", p(&path), "--tol-eig", "1e-7"]));
    assert_eq!(report["tolerances"]["eig"], 1e-7);
    let out = Command::new(env!("CARGO_BIN_EXE_ergokit"))
        .args(["gap", p(&path)])
        .env("ERGOKIT_TOL_EIG", "1e-6")
        .output()
        .unwrap();
    assert_eq!(json_out(&out)["tolerances"]["eig"], 1e-6);
    assert_eq!(
        ergokit(&["gap", p(&path), "--tol-eig", "-1"]).status.code(),
        Some(2)
    );
}

#[test]
fn swapped_factors_are_reported() {
    let dir = TempDir::new().unwrap();
    // diag(0.5, 0.3, 0.2) (x) |0><0| listed qutrit-first, and the same state
    // listed qubit-first
    let weights = [0.5, 0.3, 0.2];
    let mut swapped = vec![vec![0.0; 6]; 6];
    let mut canonical = vec![vec![0.0; 6]; 6];
    for (i, v) in weights.into_iter().enumerate() {
        swapped[2 * i][2 * i] = v;
        canonical[i][i] = v;
    }
    let a = state_file(
        &dir,
        "swap.json",
        json!({"d1": 3, "d2": 2, "matrix_re": swapped}),
    );
    let b = state_file(
        &dir,
        "canon.json",
        json!({"d1": 2, "d2": 3, "matrix_re": canonical}),
    );
    let ra = json_out(&ergokit(&["gap", p(&a)]));
    let rb = json_out(&ergokit(&["gap", p(&b)]));
    assert_eq!(ra["swapped"], true);
    assert_eq!(rb["swapped"], false);
    assert_eq!((ra["d1"].as_u64(), ra["d2"].as_u64()), (Some(2), Some(3)));
    assert_eq!(ra["gap"], rb["gap"]);
    // a product of a pure qubit and a mixed qutrit is not globally passive
    assert!((ra["gap"]["gap"].as_f64().unwrap() - 0.2).abs() < 1e-12);
}
