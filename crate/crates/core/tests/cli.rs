use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tailmax::schema::{parse_tail_copula, tail_copula_to_json};
use tailmax::NacTree;

fn tailmax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tailmax"))
        .args(args)
        .env_remove("TAILMAX_SEED")
        .output()
        .expect("run tailmax")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn marshall_olkin_closed_form_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let mo = write(
        dir.path(),
        "mo.json",
        r#"{"family": "marshall_olkin", "dimension": 3, "params": {"alpha": [0.2, 0.5, 0.8]}}"#,
    );
    let out = tailmax(&["mtcm", "--model", mo.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("lambda* = 0.430887"), "{text}");
    assert!(text.contains("closed_mo"));
}

#[test]
fn eval_comonotone_is_min() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "comonotone3.json", r#"{"family": "comonotone", "dimension": 3}"#);
    let out = tailmax(&["eval", "--model", m.to_str().unwrap(), "--x", "2,3,5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "2.000000");
}

#[test]
fn sealevel_rows_all_pass() {
    let out = tailmax(&["sealevel", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r.ends_with(",true")), "{text}");
    for label in ["I-1", "I-2", "I-3", "II-1", "II-2"] {
        assert!(rows.iter().any(|r| r.starts_with(&format!("{label},"))));
    }
}

#[test]
fn non_convergence_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "tawn2.json",
        r#"{"family": "tawn2", "params": {"s": 1.69, "r": 1.25, "t": 7.44, "phi": 0.74}}"#,
    );
    let cfg = write(dir.path(), "opt.json", r#"{"max_evals": 4}"#);
    let out = tailmax(&["mtcm", "--model", m.to_str().unwrap(), "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("converge"));
}

#[test]
fn schema_errors_carry_field_paths() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "bad.json",
        r#"{"family": "mixture", "params": {"weight": 0.5,
            "first": {"family": "marshall_olkin", "params": {"alpha": [0.5, 1.2]}},
            "second": {"family": "comonotone", "dimension": 2}}}"#,
    );
    let out = tailmax(&["mtcm", "--model", m.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.json: params.first.params.alpha[1]"), "{err}");

    let cfg = write(dir.path(), "opt.json", r#"{"starts": 4, "tolerance": 1e-6}"#);
    let out = tailmax(&["sealevel", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("tolerance"));

    let tree = write(dir.path(), "tree.json", r#"{"alpha": 1, "children": [{}, {"alpha": 2, "children": [{}]}]}"#);
    let out = tailmax(&["nac", "--tree", tree.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("children[1].children") && err.contains("collapse"), "{err}");

    let out = tailmax(&["mtcm", "--model", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.json"));
}

#[test]
fn emitted_tree_reparses_identically() {
    let dir = tempfile::tempdir().unwrap();
    let tree = write(
        dir.path(),
        "tree.json",
        r#"{"alpha": 2.5, "children": [{"leaf": 3}, {"alpha": 1.25, "children": [{"leaf": 1}, {"leaf": 4}]},
            {"alpha": 0.5, "children": [{"leaf": 2}, {"leaf": 5}]}]}"#,
    );
    let out = tailmax(&["nac", "--tree", tree.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let original = NacTree::from_json(&serde_json::from_str(&std::fs::read_to_string(&tree).unwrap()).unwrap()).unwrap();
    let emitted = NacTree::from_json(&v["tree"]).unwrap();
    assert_eq!(emitted, original);
    assert_eq!(v["lambda_star"].as_f64(), Some(original.mtcm_closed(0).unwrap()));

    // a nac model file is accepted in place of a bare tree
    let model = tail_copula_to_json(&tailmax::TailCopulaModel::nac(original.clone()));
    let path = write(dir.path(), "model.json", &model.to_string());
    let again = tailmax(&["nac", "--tree", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(again.stdout, out.stdout);
    assert_eq!(parse_tail_copula(&model).unwrap(), tailmax::TailCopulaModel::nac(original));
}

#[test]
fn seed_sources_and_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "tawn1.json",
        r#"{"family": "tawn1", "params": {"s": 1.51, "r": 1.0, "theta1": 0.3, "theta2": 0.9, "theta3": 0.6}}"#,
    );
    let m = m.to_str().unwrap();
    let run = |extra: &[&str], env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_tailmax"));
        cmd.args(["mtcm", "--model", m, "--format", "json"]).args(extra);
        match env {
            Some(s) => cmd.env("TAILMAX_SEED", s),
            None => cmd.env_remove("TAILMAX_SEED"),
        };
        let out = cmd.output().unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let via_env = run(&[], Some("99"));
    let via_flag = run(&["--seed", "99"], None);
    assert_eq!(via_env, via_flag);
    assert_eq!(run(&["--seed", "99"], Some("5")), via_flag);
    assert_eq!(run(&[], None), run(&["--seed", "271828"], None));
    let bad = Command::new(env!("CARGO_BIN_EXE_tailmax"))
        .args(["mtcm", "--model", m])
        .env("TAILMAX_SEED", "abc")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn json_output_is_byte_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "mix.json",
        r#"{"family": "mixture_tc", "params": {"weight": 0.4,
            "first": {"family": "tawn2", "params": {"s": 2.1, "r": 1.5, "t": 3.0, "phi": 0.5}},
            "second": {"family": "archimedean", "dimension": 3, "params": {"alpha": 0.8}}}}"#,
    );
    let runs: Vec<Vec<u8>> = ["1", "3", "8"]
        .iter()
        .map(|t| {
            Command::new(env!("CARGO_BIN_EXE_tailmax"))
                .args(["mtcm", "--model", m.to_str().unwrap(), "--format", "json"])
                .env("RAYON_NUM_THREADS", t)
                .env_remove("TAILMAX_SEED")
                .output()
                .unwrap()
                .stdout
        })
        .collect();
    assert!(!runs[0].is_empty());
    assert!(runs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn surface_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("surface.csv");
    let out = tailmax(&[
        "surface",
        "--label",
        "I-3",
        "--grid-n",
        "11",
        "--log-range",
        "1.5",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(target).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x1,x2,lambda"));
    let values: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(values.len(), 121);
    assert_eq!(values[0][0], -1.5);
    assert_eq!(values[120][1], 1.5);
    assert!(values.iter().all(|r| (0.0..=1.0).contains(&r[2])));
}

#[test]
fn oracle_and_validate_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "logistic.json", r#"{"family": "logistic", "dimension": 3, "params": {"s": 1.59}}"#);
    let out = tailmax(&["oracle", "--model", m.to_str().unwrap(), "--grid-n", "201", "--log-range", "2.302585092994046", "--no-refine", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["method"], "oracle");
    assert!((v["lambda_star"].as_f64().unwrap() - 0.356).abs() <= 2e-3);

    let out = tailmax(&["validate", "--model", m.to_str().unwrap(), "--samples", "2000", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["samples"], 2000);
}
