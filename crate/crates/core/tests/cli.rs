use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_leverage");

const TWO_DIRAC: &str =
    r#"{"states": [0.04, 0.06], "members": [[1, 0], [0, 1]], "label": "two-dirac"}"#;

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", stderr(out));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn roc_human_output() {
    let out = run(&[
        "roc",
        "--capital",
        "10",
        "--borrowed",
        "90",
        "--roi",
        "6",
        "--cof",
        "5",
        "--coc",
        "5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("LEV                  10.0000"), "{text}");
    assert!(text.contains("ROC (general)        10.0000%"), "{text}");
    assert!(text.contains("ROC (leverage form)  10.0000%"), "{text}");

    let out = run(&[
        "roc",
        "--capital",
        "10",
        "--borrowed",
        "90",
        "--roi",
        "4",
        "--cof",
        "5",
        "--coc",
        "5",
    ]);
    assert!(stdout(&out).contains("ROC (general)        -10.0000%"));

    let out = run(&[
        "--quiet",
        "roc",
        "--capital",
        "10",
        "--borrowed",
        "0",
        "--roi",
        "6",
        "--coc",
        "5",
    ]);
    assert_eq!(stdout(&out), "1.0000%\n");
}

#[test]
fn roc_with_distinct_costs_uses_the_general_expansion() {
    let v = json(&run(&[
        "roc",
        "--json",
        "--capital",
        "10",
        "--borrowed",
        "30",
        "--roi",
        "8",
        "--cof",
        "3",
        "--coc",
        "6",
    ]));
    // 4·0.08 − 3·0.03 − 0.06 = 0.17
    assert!((v["roc_general"].as_f64().unwrap() - 0.17).abs() < 1e-12);
    assert!((v["roc_leverage_form"].as_f64().unwrap() - 0.17).abs() < 1e-12);
}

#[test]
fn roc_rejects_bad_values() {
    for (args, flag) in [
        (
            vec![
                "roc",
                "--capital",
                "-1",
                "--borrowed",
                "0",
                "--roi",
                "6",
                "--coc",
                "5",
            ],
            "--capital",
        ),
        (
            vec![
                "roc",
                "--capital",
                "1",
                "--borrowed",
                "-5",
                "--roi",
                "6",
                "--coc",
                "5",
            ],
            "--borrowed",
        ),
        (
            vec![
                "roc",
                "--capital",
                "1",
                "--borrowed",
                "0",
                "--roi",
                "six",
                "--coc",
                "5",
            ],
            "--roi",
        ),
        (
            vec!["roc", "--capital", "1", "--borrowed", "0", "--roi", "6"],
            "--coc",
        ),
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(stderr(&out).contains(flag), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn eval_criteria_on_two_dirac_file() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", TWO_DIRAC);
    let eval = |criterion: &str, u: &str| {
        json(&run(&[
            "eval",
            "--json",
            "--regularity",
            s(&q),
            "--u",
            u,
            "--price",
            "5",
            "--criterion",
            criterion,
        ]))
    };
    let averse = eval("averse", "10");
    assert_eq!(averse["criterion"], "averse");
    assert_eq!(averse["u"].as_f64(), Some(10.0));
    assert_eq!(averse["p"].as_f64(), Some(0.05));
    assert!((averse["value"].as_f64().unwrap() + 0.10).abs() < 1e-12);

    let wald = eval("wald", "10");
    assert!((wald["value"].as_f64().unwrap() + 0.10).abs() < 1e-12);
    assert!((eval("prone", "10")["value"].as_f64().unwrap() - 0.10).abs() < 1e-12);

    for c in ["averse", "prone", "wald", "expected"] {
        assert_eq!(eval(c, "0")["value"].as_f64(), Some(0.0), "{c}");
    }
}

#[test]
fn eval_expected_with_member_and_utility() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", TWO_DIRAC);
    let v = json(&run(&[
        "eval",
        "--json",
        "--regularity",
        s(&q),
        "--u",
        "10",
        "--price",
        "5",
        "--criterion",
        "expected",
        "--dist",
        "1",
    ]));
    assert!((v["value"].as_f64().unwrap() - 0.10).abs() < 1e-12);

    let v = json(&run(&[
        "eval",
        "--json",
        "--regularity",
        s(&q),
        "--u",
        "10",
        "--price",
        "5",
        "--criterion",
        "expected",
        "--dist",
        "1",
        "--utility",
        "exp:2",
    ]));
    let expected = (1.0 - (-2.0f64 * 0.1).exp()) / 2.0;
    assert!((v["value"].as_f64().unwrap() - expected).abs() < 1e-12);

    let out = run(&[
        "eval",
        "--regularity",
        s(&q),
        "--u",
        "1",
        "--price",
        "5",
        "--criterion",
        "expected",
        "--dist",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "eval",
        "--regularity",
        s(&q),
        "--u",
        "1",
        "--price",
        "5",
        "--criterion",
        "expected",
        "--utility",
        "log:1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn utility_or_dist_with_other_criteria_is_misuse() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", TWO_DIRAC);
    for extra in [["--utility", "identity"], ["--dist", "0"]] {
        for c in ["averse", "prone", "wald"] {
            let mut args = vec![
                "eval",
                "--regularity",
                s(&q),
                "--u",
                "1",
                "--price",
                "5",
                "--criterion",
                c,
            ];
            args.extend(extra);
            assert_eq!(run(&args).status.code(), Some(3), "{args:?}");
        }
    }
}

#[test]
fn optimize_examples() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", TWO_DIRAC);
    let opt = |c: &str, price: &str, extra: &[&str]| {
        let mut args = vec![
            "optimize",
            "--json",
            "--regularity",
            s(&q),
            "--u-min",
            "0",
            "--u-max",
            "10",
            "--price",
            price,
            "--criterion",
            c,
        ];
        args.extend(extra);
        json(&run(&args))
    };
    let averse = opt("averse", "5", &[]);
    assert_eq!(averse["best_u"].as_f64(), Some(0.0));
    assert_eq!(averse["best_value"].as_f64(), Some(0.0));
    assert_eq!(averse["edge_case"], "lower_bound");

    let prone = opt("prone", "5", &[]);
    assert_eq!(prone["best_u"].as_f64(), Some(10.0));
    assert!((prone["best_value"].as_f64().unwrap() - 0.10).abs() < 1e-12);
    assert_eq!(prone["edge_case"], "upper_bound");

    let flat = opt("prone", "6", &[]);
    assert_eq!(flat["best_u"].as_f64(), Some(0.0));
    assert_eq!(flat["best_value"].as_f64(), Some(0.0));
    assert_eq!(flat["edge_case"], "flat");

    let grid = opt("prone", "5", &["--grid-steps", "101"]);
    assert_eq!(grid["best_u"].as_f64(), Some(10.0));
}

#[test]
fn optimize_errors() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", TWO_DIRAC);
    let base = ["optimize", "--regularity", s(&q), "--price", "5"];

    let mut args = base.to_vec();
    args.extend(["--u-min", "3", "--u-max", "1", "--criterion", "averse"]);
    assert_eq!(run(&args).status.code(), Some(2));

    let mut args = base.to_vec();
    args.extend([
        "--u-min",
        "0",
        "--u-max",
        "1",
        "--criterion",
        "expected",
        "--utility",
        "pow:0.5",
    ]);
    assert_eq!(run(&args).status.code(), Some(3));
    args.extend(["--grid-steps", "11"]);
    assert!(run(&args).status.success());

    let mut args = base.to_vec();
    args.extend([
        "--u-min",
        "0",
        "--u-max",
        "1",
        "--criterion",
        "averse",
        "--grid-steps",
        "1",
    ]);
    assert_eq!(run(&args).status.code(), Some(2));
}

#[test]
fn chain_examples() {
    let dir = TempDir::new().unwrap();
    let triple = write(
        &dir,
        "triple.json",
        r#"{"levels": [{"u": 10, "p": 0}, {"u": 10, "p": 0}, {"u": 10, "p": 0}],
            "primitive": {"states": [-0.001, 0.002], "members": [[1, 0], [0, 1]]}}"#,
    );
    let v = json(&run(&["chain", "--json", "--chain", s(&triple)]));
    assert_eq!(v["see_through"].as_f64(), Some(1000.0));
    assert!((v["averse_value"].as_f64().unwrap() + 1.0).abs() < 1e-12);
    assert!((v["prone_value"].as_f64().unwrap() - 2.0).abs() < 1e-12);

    let single = write(
        &dir,
        "single.json",
        r#"{"levels": [{"u": 10, "p": 0.05}], "primitive": {"states": [0.06], "members": [[1]]}}"#,
    );
    let v = json(&run(&["chain", "--json", "--chain", s(&single)]));
    assert_eq!(v["see_through"].as_f64(), Some(10.0));
    assert!((v["averse_value"].as_f64().unwrap() - 0.10).abs() < 1e-12);

    let zero = write(
        &dir,
        "zero.json",
        r#"{"levels": [{"u": 0, "p": 0}, {"u": 0, "p": 0}], "primitive": {"states": [-0.5, 0.5], "members": [[1, 0], [0, 1]]}}"#,
    );
    let v = json(&run(&["chain", "--json", "--chain", s(&zero)]));
    assert_eq!(v["averse_value"].as_f64(), Some(0.0));
    assert_eq!(v["prone_value"].as_f64(), Some(0.0));

    let text = stdout(&run(&["chain", "--chain", s(&triple)]));
    assert!(text.contains("see-through leverage  1000"), "{text}");
    assert!(text.contains("-100.0000%"), "{text}");
}

#[test]
fn scheme_csv_dump() {
    let dir = TempDir::new().unwrap();
    let z = write(
        &dir,
        "z.json",
        r#"{"decisions": [{"u": 10, "p": 0.05}, {"u": 0, "p": 0.05}], "states": [0.04, 0.06]}"#,
    );
    let out = run(&["scheme", "--scheme", s(&z)]);
    assert!(out.status.success());
    let mut reader = csv::ReaderBuilder::new().from_reader(out.stdout.as_slice());
    assert_eq!(reader.headers().unwrap(), vec!["decision", "0.04", "0.06"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(&rows[0][0], "10,0.05");
    assert!((rows[0][1].parse::<f64>().unwrap() + 0.10).abs() < 1e-12);
    assert!((rows[0][2].parse::<f64>().unwrap() - 0.10).abs() < 1e-12);
    assert_eq!(&rows[1][0], "0,0.05");
    assert_eq!(rows[1][1].parse::<f64>().unwrap(), 0.0);

    let v = json(&run(&["scheme", "--json", "--scheme", s(&z)]));
    assert_eq!(v["consequences"].as_array().unwrap().len(), 2);
}

#[test]
fn regularity_build_examples() {
    let dir = TempDir::new().unwrap();

    let constant = write(&dir, "const.csv", "# flat series\n0.05\n0.05\n0.05\n0.05\n");
    let out_path = dir.path().join("const.json");
    let v = json(&run(&[
        "regularity",
        "build",
        "--json",
        "--samples",
        s(&constant),
        "--window",
        "2",
        "--stride",
        "1",
        "--out",
        s(&out_path),
    ]));
    assert_eq!(v["members"], 1);
    assert_eq!(v["states"], 1);

    let alternating = write(&dir, "alt.csv", "0.04\n0.04\n0.06\n0.06\n");
    let alt_out = dir.path().join("alt.json");
    let out = run(&[
        "regularity",
        "build",
        "--samples",
        s(&alternating),
        "--window",
        "2",
        "--stride",
        "2",
        "--out",
        s(&alt_out),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("members 2"));
    let written: Value = serde_json::from_str(&fs::read_to_string(&alt_out).unwrap()).unwrap();
    assert_eq!(written["states"], serde_json::json!([0.04, 0.06]));
    assert_eq!(
        written["members"],
        serde_json::json!([[1.0, 0.0], [0.0, 1.0]])
    );

    // The written file is a valid regularity input.
    let v = json(&run(&[
        "eval",
        "--json",
        "--regularity",
        s(&alt_out),
        "--u",
        "10",
        "--price",
        "5",
        "--criterion",
        "averse",
    ]));
    assert!((v["value"].as_f64().unwrap() + 0.10).abs() < 1e-12);

    let too_big = run(&[
        "regularity",
        "build",
        "--samples",
        s(&alternating),
        "--window",
        "9",
        "--stride",
        "1",
        "--out",
        s(&alt_out),
    ]);
    assert_eq!(too_big.status.code(), Some(2));

    let empty = write(&dir, "empty.csv", "# nothing here\n");
    let out = run(&[
        "regularity",
        "build",
        "--samples",
        s(&empty),
        "--window",
        "1",
        "--out",
        s(&alt_out),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("empty"), "{}", stderr(&out));
}

#[test]
fn regularity_file_is_rewritten_bit_faithfully() {
    let dir = TempDir::new().unwrap();
    let samples = write(
        &dir,
        "s.csv",
        "0.013\n-0.007\n0.021\n0.013\n0.1\n-0.007\n0.021\n",
    );
    let first = dir.path().join("a.json");
    let run_build = |out: &Path| {
        run(&[
            "regularity",
            "build",
            "--samples",
            s(&samples),
            "--window",
            "3",
            "--out",
            s(out),
        ])
    };
    assert!(run_build(&first).status.success());
    let second = dir.path().join("b.json");
    assert!(run_build(&second).status.success());
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());

    // Parsing and re-serializing reproduces every number exactly.
    let text = fs::read_to_string(&first).unwrap();
    let file = leverage::io::RegularityFile::from_json(&text).unwrap();
    let q = file.to_regularity::<f64>().unwrap();
    let again = leverage::io::RegularityFile::from_regularity(&q);
    assert_eq!(again, file);
    assert_eq!(again.to_json() + "\n", text);
}

#[test]
fn json_outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", TWO_DIRAC);
    let args = [
        "optimize",
        "--json",
        "--regularity",
        s(&q),
        "--u-min",
        "1",
        "--u-max",
        "7",
        "--price",
        "4.5",
        "--criterion",
        "prone",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn malformed_files_exit_two_without_panicking() {
    let dir = TempDir::new().unwrap();
    let bad_bodies = [
        "",
        "{",
        "[]",
        r#"{"states": [0.06, 0.04], "members": [[1, 0]]}"#,
        r#"{"states": [0.04, 0.06], "members": [[0.9, 0.3]]}"#,
        r#"{"states": [0.04, 0.06], "members": [[-1, 2]]}"#,
        r#"{"states": [], "members": [[]]}"#,
        r#"{"states": [0.04], "members": []}"#,
        r#"{"states": ["a"], "members": [[1]]}"#,
    ];
    for (i, body) in bad_bodies.iter().enumerate() {
        let path = write(&dir, &format!("bad{i}.json"), body);
        for args in [
            vec![
                "eval",
                "--regularity",
                s(&path),
                "--u",
                "1",
                "--price",
                "1",
                "--criterion",
                "averse",
            ],
            vec![
                "optimize",
                "--regularity",
                s(&path),
                "--u-min",
                "0",
                "--u-max",
                "1",
                "--price",
                "1",
                "--criterion",
                "prone",
            ],
            vec!["chain", "--chain", s(&path)],
            vec!["scheme", "--scheme", s(&path)],
        ] {
            let out = run(&args);
            assert_eq!(out.status.code(), Some(2), "{body} {args:?}");
            assert!(!stderr(&out).contains("panicked"), "{}", stderr(&out));
        }
    }
    let missing = dir.path().join("missing.json");
    let out = run(&["chain", "--chain", s(&missing)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn version_flag() {
    let out = run(&["--version"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        format!("leverage {}", env!("CARGO_PKG_VERSION"))
    );
}
