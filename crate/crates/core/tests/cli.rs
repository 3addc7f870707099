use std::path::{Path, PathBuf};
use std::process::Command;

use ginspace::cli::run;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn corpus(name: &str) -> String {
    root().join("corpus").join(name).display().to_string()
}

/// Run in-process; `corpus/` prefixes are resolved against the workspace.
fn exec(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["ginspace".to_string()];
    for a in args {
        argv.push(match a.strip_prefix("corpus/") {
            Some(rest) => corpus(rest),
            None => a.to_string(),
        });
    }
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(root().join("schema/reports.schema.json")).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&value).expect("schema compiles")
}

fn assert_valid(schema: &jsonschema::JSONSchema, text: &str) -> serde_json::Value {
    let value: serde_json::Value = serde_json::from_str(text).unwrap_or_else(|e| panic!("{e}: {text}"));
    if let Err(errors) = schema.validate(&value) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("schema violations: {msgs:#?}\n{text}");
    }
    value
}

#[test]
fn corpus_fixtures_reproduce() {
    let dir = root().join("corpus/expected");
    let mut names: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "out"))
        .collect();
    names.sort();
    assert!(names.len() >= 15, "fixtures missing in {}", dir.display());
    for path in names {
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        let args = lines.next().unwrap().strip_prefix("# args: ").unwrap();
        let exit: i32 = lines.next().unwrap().strip_prefix("# exit: ").unwrap().parse().unwrap();
        let expected: Vec<&str> = lines.collect();
        let argv: Vec<&str> = args.split_whitespace().collect();
        let (code, out, err) = exec(&argv);
        assert_eq!(code, exit, "{}: exit code (stderr: {err})", path.display());
        assert_eq!(
            out.trim_end().lines().collect::<Vec<_>>(),
            expected,
            "{}: stdout differs",
            path.display()
        );
    }
}

#[test]
fn gin_on_coordinate_points_example() {
    let (code, out, _) = exec(&["gin", "corpus/thm26_b.forms", "--seed", "7"]);
    assert_eq!(code, 0);
    assert!(out.contains("seed: 7"));
    assert!(out.contains("gin: {x1^3, x1^2*x2, x1*x2^2, x1^2*x3}"));
}

#[test]
fn jideal_line() {
    let (code, out, _) = exec(&["jideal", "corpus/thm26_b.forms"]);
    assert_eq!(code, 0);
    assert!(out.contains("gens: x1^2 (deg 2), x1*x2^2 (deg 3); generator in degree d: yes"));
}

#[test]
fn examples_suite_json() {
    let (code, out, _) = exec(&["verify", "examples-2.6", "--json"]);
    assert_eq!(code, 0);
    let v = assert_valid(&schema(), &out);
    let cases = v["report"]["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 3);
    assert!(cases.iter().all(|c| c["pass"] == true));
}

#[test]
fn every_report_matches_the_schema() {
    let schema = schema();
    let runs: &[&[&str]] = &[
        &["in", "corpus/thm26_b.forms"],
        &["gin", "corpus/thm26_a.forms", "--trials", "2"],
        &["gin", "corpus/thm26_b.forms", "--prime"],
        &["colon", "corpus/thm26_b.forms", "--by", "x3"],
        &["colon", "corpus/thm26_b.forms", "--by-form", "x1 - x3"],
        &["restrict", "corpus/thm26_c.forms", "--drop", "1"],
        &["jideal", "corpus/linear_times_three_variables.forms", "--restrict", "1"],
        &["hilbert", "corpus/thm26_c.forms", "--max-degree", "6"],
        &["hilbert", "corpus/thm26_c.forms", "--quotient"],
        &["locus", "corpus/thm26_b.forms", "--witness", "1,0,0", "--witness", "1/2,1,0"],
        &["staircase", "corpus/thm26_a.forms", "--format", "json"],
        &["staircase", "corpus/thm26_a.forms", "--as-given"],
        &["verify", "main-a", "corpus/linear_times_quadrics.forms"],
        &["verify", "main-a", "corpus/thm26_b.forms"],
        &["verify", "main-b", "corpus/linear_times_three_variables.forms", "--depth", "1"],
        &["verify", "corollary", "corpus/thm26_c.forms"],
        &["verify", "example-2.7"],
        &["verify", "example-2.7", "corpus/quadric_multiples_plus_quartic.forms"],
        &["verify", "theorem-1", "--a", "2", "--b", "1"],
        &["verify", "theorem-1", "--a", "9", "--b", "9"],
        &["gin", "corpus/missing.forms"],
    ];
    for args in runs {
        let mut argv = args.to_vec();
        argv.push("--json");
        let (code, out, _) = exec(&argv);
        let v = assert_valid(&schema, &out);
        assert_eq!(v["exit_code"], code, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    // verification failure: the hypothesis fails for the coordinate-points space
    assert_eq!(exec(&["verify", "main-a", "corpus/thm26_b.forms"]).0, 2);
    // witness that does not vanish
    assert_eq!(exec(&["locus", "corpus/thm26_b.forms", "--witness", "1,1,1"]).0, 2);
    // inconclusive: a curve needs more degrees than a two-degree window offers
    let (code, out, _) = exec(&["locus", "corpus/linear_times_quadrics.forms", "--max-degree", "4"]);
    assert_eq!(code, 3, "{out}");
    // usage
    assert_eq!(exec(&["gin"]).0, 1);
    assert_eq!(exec(&["frobnicate"]).0, 1);
    assert_eq!(exec(&["staircase", "corpus/linear_times_three_variables.forms"]).0, 1);
    assert_eq!(exec(&["--help"]).0, 0);
}

#[test]
fn parse_errors_point_at_the_problem() {
    let dir = std::env::temp_dir().join(format!("ginspace-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.forms");
    std::fs::write(&bad, "vars: 3\nx1^2*x3\nx1*(x2 + x3)\n").unwrap();
    let (code, _, err) = exec(&["in", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 3, column 4"), "{err}");

    std::fs::write(&bad, "vars: 3\nx1^2*x3\nx1*x2\n").unwrap();
    let (code, _, err) = exec(&["in", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 3") && err.contains("degree"), "{err}");

    std::fs::write(&bad, "vars: 2\nx1*x3\n").unwrap();
    let (code, _, err) = exec(&["in", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("out of range"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn seed_from_environment() {
    let bin = env!("CARGO_BIN_EXE_ginspace");
    let out = Command::new(bin)
        .args(["gin", &corpus("thm26_b.forms")])
        .env("GINSPACE_SEED", "12345")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("seed: 12345"));

    let out = Command::new(bin)
        .args(["gin", &corpus("thm26_b.forms"), "--seed", "9"])
        .env("GINSPACE_SEED", "12345")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&out.stdout).contains("seed: 9"));
}

#[test]
fn file_options_apply_when_flags_are_absent() {
    let dir = std::env::temp_dir().join(format!("ginspace-opts-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("seeded.forms");
    let body = std::fs::read_to_string(corpus("thm26_c.forms")).unwrap();
    std::fs::write(&f, format!("{body}seed: 77\ntrials: 2\nmaxdeg: 5\n")).unwrap();
    let (_, out, _) = exec(&["gin", f.to_str().unwrap()]);
    assert!(out.contains("seed: 77") && out.contains("trials: 2 agreeing"), "{out}");
    let (_, out, _) = exec(&["hilbert", f.to_str().unwrap()]);
    assert_eq!(out.lines().last(), Some("5: 21"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["--json", "gin", "corpus/thm26_c.forms", "--seed", "5"][..],
        &["--json", "verify", "theorem-1", "--seed", "3"][..],
        &["--json", "verify", "corollary", "corpus/linear_times_quadrics.forms"][..],
    ] {
        assert_eq!(exec(args), exec(args));
    }
}
