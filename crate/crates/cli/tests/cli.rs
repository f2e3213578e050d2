use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use w22_core::{parse_rational, HWParams, Poly, VermaModule};

fn w22(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_w22"))
        .args(args)
        .env_remove("W22_MAX_LEVEL")
        .env_remove("W22_MAX_SYMBOLIC_LEVEL")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = w22(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn documented_outputs() {
    assert_eq!(
        stdout(&["criterion", "--c0", "0", "--c1", "5"]),
        "{\"reducible\":true,\"witness_m\":1}\n"
    );
    assert_eq!(
        stdout(&["det", "--level", "1", "--symbolic"]),
        "{\"det\":\"-4*c0^2\"}\n"
    );
    assert_eq!(
        stdout(&["gram", "--level", "1", "--symbolic", "--format", "csv"]),
        "0,-2*c0\n-2*c0,-2*lambda\n"
    );
    assert_eq!(
        stdout(&["gram", "--level", "0", "--symbolic"]),
        "{\"level\":0,\"basis\":[\"1\"],\"entries\":[[\"1\"]]}\n"
    );
    let j = json(&["jacobi", "--max-index", "3"]);
    assert_eq!(j["violations"], 0);
    assert_eq!(j["triples_checked"], 16 * 16 * 16);
}

#[test]
fn criterion_examples() {
    let r = json(&["criterion", "--c0", "-1", "--c1", "8"]);
    assert_eq!(r["reducible"], true);
    assert_eq!(r["witness_m"], 2);
    let r = json(&["criterion", "--c0", "1", "--c1", "1"]);
    assert_eq!(r["reducible"], false);
    assert!(r["witness_m"].is_null());
    let r = json(&[
        "criterion",
        "--c0",
        "1",
        "--c1",
        "8",
        "--bracket-convention",
    ]);
    assert_eq!(r["witness_m"], 2);
}

#[test]
fn rationals_are_exact_strings() {
    let g = json(&[
        "gram", "--level", "1", "--lambda", "3/4", "--c", "0", "--c0", "-3/4", "--c1", "0",
    ]);
    assert_eq!(
        g["entries"],
        serde_json::json!([["0", "3/2"], ["3/2", "-3/2"]])
    );
}

#[test]
fn matrix_json_schema() {
    let raw = stdout(&["gram", "--level", "2", "--symbolic"]);
    let at = |key: &str| raw.find(&format!("\"{key}\":")).unwrap();
    assert!(
        raw.starts_with("{\"level\":2,")
            && at("level") < at("basis")
            && at("basis") < at("entries")
    );
    let g: Value = serde_json::from_str(&raw).unwrap();
    assert_eq!(
        g["basis"],
        serde_json::json!(["I(-2)", "I(-1)I(-1)", "I(-1)L(-1)", "L(-2)", "L(-1)L(-1)"])
    );
}

#[test]
fn emitted_polynomials_reparse_to_the_engine_values() {
    let m = VermaModule::new(HWParams::symbolic()).with_max_level(3);
    for level in 0..=3 {
        let g = json(&["gram", "--level", &level.to_string(), "--symbolic"]);
        let expected = m.gram_matrix(level).unwrap().matrix;
        for (i, row) in g["entries"].as_array().unwrap().iter().enumerate() {
            for (j, e) in row.as_array().unwrap().iter().enumerate() {
                let p = Poly::parse(e.as_str().unwrap()).unwrap();
                assert_eq!(&p, expected.get(i, j));
                assert_eq!(p.to_string(), e.as_str().unwrap());
            }
        }
    }
    let d = json(&["det", "--level", "3", "--symbolic"]);
    let p = Poly::parse(d["det"].as_str().unwrap()).unwrap();
    assert_eq!(p, m.shapovalov_det(3).unwrap());
}

#[test]
fn emitted_rationals_reparse() {
    let args = [
        "--lambda", "5/3", "--c", "-1/2", "--c0", "7/5", "--c1", "-2",
    ];
    let mut all = vec!["gram", "--level", "3"];
    all.extend(args);
    let g = json(&all);
    for row in g["entries"].as_array().unwrap() {
        for e in row.as_array().unwrap() {
            let s = e.as_str().unwrap();
            assert_eq!(parse_rational(s).unwrap().to_string(), s);
        }
    }
    let mut all = vec!["i0", "--level", "2"];
    all.extend(args);
    let r = json(&all);
    assert_eq!(r["bound_holds"], true);
    assert_eq!(r["diagonalizable"], false);
    for row in r["entries"].as_array().unwrap() {
        for e in row.as_array().unwrap() {
            parse_rational(e.as_str().unwrap()).unwrap();
        }
    }
}

#[test]
fn output_is_deterministic() {
    let runs: &[&[&str]] = &[
        &["gram", "--level", "3", "--symbolic"],
        &[
            "singular", "--level", "2", "--lambda", "0", "--c", "1", "--c0", "1", "--c1", "8",
        ],
        &["realization", "--window", "4", "--format", "csv"],
        &["verma-dim", "--level", "8"],
    ];
    for args in runs {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}

#[test]
fn singular_report() {
    let r = json(&[
        "singular", "--level", "1", "--lambda", "2", "--c", "1", "--c0", "0", "--c1", "5",
    ]);
    assert_eq!(r["basis"], serde_json::json!(["I(-1)", "L(-1)"]));
    assert_eq!(
        r["vectors"],
        serde_json::json!([{"coords": ["1", "0"], "i0_eigenvector": true, "killed_by_positive_modes": true}])
    );
    let csv = stdout(&[
        "singular", "--level", "1", "--lambda", "2", "--c", "1", "--c0", "1", "--c1", "1",
        "--format", "csv",
    ]);
    assert_eq!(csv, "I(-1),L(-1),i0_eigenvector,killed_by_positive_modes\n");
}

#[test]
fn verma_dims() {
    assert_eq!(
        json(&["verma-dim", "--level", "6"])["dims"],
        serde_json::json!([1, 2, 5, 10, 20, 36, 65])
    );
}

#[test]
fn realization_report() {
    let r = json(&["realization", "--window", "8", "--a", "1/2", "--b", "3"]);
    for c in r["checks"].as_array().unwrap() {
        assert_eq!(c["failures"], serde_json::json!([]), "{}", c["check"]);
    }
    assert_eq!(r["witt_table_mismatches"], 0);
}

#[test]
fn suite_exits_zero_with_recorded_errata() {
    let out = stdout(&["paper-suite", "--format", "csv"]);
    let fails = out
        .lines()
        .filter(|l| l.contains(",expected-fail,"))
        .count();
    assert!(out
        .lines()
        .all(|l| !l.contains(",FAIL,") && !l.contains("UNEXPECTED")));
    assert!(out.contains("[L-2,I4]=6I2"));
    // two identity errata plus the mirrored criterion rows
    assert!(fails >= 2);
    let identity_fails = out
        .lines()
        .filter(|l| l.starts_with("identity,") && l.contains(",expected-fail,"))
        .count();
    assert_eq!(identity_fails, 2);
}

fn code(args: &[&str]) -> Option<i32> {
    w22(args).status.code()
}

#[test]
fn usage_errors_exit_two() {
    let bad: &[&[&str]] = &[
        &["criterion", "--c0", "1.5", "--c1", "2"],
        &["criterion", "--c0", "1e3", "--c1", "2"],
        &["criterion", "--c0", "1/0", "--c1", "2"],
        &[
            "det", "--level", "9", "--lambda", "0", "--c", "0", "--c0", "0", "--c1", "0",
        ],
        &["det", "--level", "5", "--symbolic"],
        &["gram", "--level", "1", "--symbolic", "--c0", "1"],
        &["singular", "--level", "1", "--symbolic"],
        &["i0", "--level", "1", "--symbolic"],
        &["gram", "--level", "1"],
        &[
            "singular", "--level", "0", "--lambda", "0", "--c", "0", "--c0", "0", "--c1", "0",
        ],
        &["jacobi", "--max-index", "-1"],
        &["frobnicate"],
        &["gram", "--level", "1", "--symbolic", "--format", "xml"],
    ];
    for args in bad {
        assert_eq!(code(args), Some(2), "{args:?}");
    }
}

#[test]
fn level_bound_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_w22"))
        .args(["verma-dim", "--level", "3"])
        .env("W22_MAX_LEVEL", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_w22"))
        .args(["verma-dim", "--level", "10"])
        .env("W22_MAX_LEVEL", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn unexpected_violations_exit_one() {
    let mut corpus = std::env::temp_dir();
    corpus.push(format!("w22-bad-corpus-{}.toml", std::process::id()));
    let mut f = std::fs::File::create(&corpus).unwrap();
    writeln!(
        f,
        "[[case]]\nname = \"wrong\"\nanchor = \"x\"\nexpr = \"(br (L 1) (L -1))\"\nexpected = \"(L 0)\"\nexpect_pass = true"
    )
    .unwrap();
    drop(f);
    let out = w22(&[
        "paper-suite",
        "--corpus",
        corpus.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    std::fs::remove_file(&corpus).ok();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("identity,wrong,x,FAIL,"));

    // the stated predicate disagrees with the determinants here
    assert_eq!(
        code(&[
            "criterion",
            "--c0",
            "1",
            "--c1",
            "8",
            "--check-levels",
            "2",
            "--lambda",
            "0",
            "--c",
            "0"
        ]),
        Some(1)
    );
    assert_eq!(
        code(&[
            "criterion",
            "--c0",
            "1",
            "--c1",
            "8",
            "--check-levels",
            "2",
            "--lambda",
            "0",
            "--c",
            "0",
            "--bracket-convention"
        ]),
        Some(0)
    );
}

#[test]
fn missing_corpus_is_a_usage_error() {
    assert_eq!(
        code(&["paper-suite", "--corpus", "/nonexistent/corpus.toml"]),
        Some(2)
    );
}
