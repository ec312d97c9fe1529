use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn homext(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_homext")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, stdout, _) = homext(&full);
    (code, serde_json::from_str(&stdout).unwrap())
}

#[test]
fn help_and_version() {
    let (code, out, _) = homext(&["--help"]);
    assert_eq!(code, 0);
    for sub in ["check", "solve-w", "solve-e", "extend", "ore-mul", "bridge-verify", "probe-type0", "example", "audit"] {
        assert!(out.contains(sub), "{sub} missing from help");
    }
    let (code, out, _) = homext(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn usage_errors_exit_two() {
    let pass = fixture("pass.hx");
    let cases: [&[&str]; 5] = [
        &[],
        &["check", "datum", "/nonexistent/doc.hx"],
        &["check", "nonsense", &pass],
        &["check", "datum", "--datum", "nope", &pass],
        &["audit", "family=9"],
    ];
    for args in cases {
        let (code, _, err) = homext(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn parse_errors_report_position() {
    let dir = std::env::temp_dir().join(format!("homext-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.hx");
    std::fs::write(&path, "algebra A field Q dim 1\nsc 1 1 1 x\nend\n").unwrap();
    let (code, _, err) = homext(&["check", "datum", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn check_datum_pass_and_fail() {
    let (code, out, _) = homext(&["check", "datum", &fixture("pass.hx")]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS datum axioms"));
    assert!(out.contains("summary: 3 checks, 3 passed, 0 failed"));
    let (code, out, _) = homext(&["check", "datum", &fixture("fail.hx")]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL datum axioms"));
    assert!(out.contains("lhs =") && out.contains("rhs ="));
}

#[test]
fn json_reports_carry_schema_and_command() {
    let pass = fixture("pass.hx");
    let (code, v) = json(&["check", "datum", &pass]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], format!("--json check datum {pass}"));
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    assert!(checks.iter().all(|c| c["passed"] == true));
    let (code, v) = json(&["check", "datum", &fixture("fail.hx")]);
    assert_eq!(code, 1);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["passed"] == false));
}

#[test]
fn solve_w_lists_thirteen_solutions() {
    let (code, out, _) = homext(&["solve-w", "--varsigma", "0", &fixture("pass.hx")]);
    assert_eq!(code, 0);
    assert!(out.contains("[w solutions (13)]"), "{out}");
    let (code, out, _) = homext(&["solve-w", "--alpha", "zero", &fixture("pass.hx")]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS alpha extends"));
}

#[test]
fn family_one_pipeline() {
    let doc = fixture("family1.hx");
    let (code, out, _) = homext(&["check", "skew", &doc]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = homext(&["solve-e", &doc]);
    assert_eq!(code, 0);
    assert!(out.contains("[e solutions (1)]") && out.contains("  e12"), "{out}");
    let (code, out, _) = homext(&["extend", &doc]);
    assert_eq!(code, 0);
    assert!(out.contains("[alpha_S]") && out.contains("[delta_S]"));
    assert!(out.contains("@sigma -> e12 + @sigma"), "{out}");
    let (code, out, _) = homext(&["bridge-verify", "--samples", "10", &doc]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn check_endo_and_deriv_on_quintuple() {
    let doc = fixture("family1.hx");
    for kind in ["endo", "deriv"] {
        let (code, out, _) = homext(&["check", kind, &doc]);
        assert_eq!(code, 0, "{kind}: {out}");
    }
}

#[test]
fn ore_mul_on_document_polynomials() {
    let doc = fixture("ore.hx");
    let (code, out, _) = homext(&["ore-mul", "--left", "p", "--right", "q", &doc]);
    assert_eq!(code, 0);
    assert!(out.contains("4*t3·x + 2*t2·x^2"), "{out}");
    let (code, out, _) = homext(&["ore-mul", "--left", "q", "--right", "p", &doc]);
    assert_eq!(code, 0);
    assert!(out.contains("t3·x + 2*t2·x^2"), "{out}");
    let (code, _, err) = homext(&["ore-mul", "--left", "p", "--right", "nope", &doc]);
    assert_eq!(code, 2);
    assert!(err.contains("nope"));
}

#[test]
fn examples_round_trip_through_files() {
    let dir = std::env::temp_dir().join(format!("homext-ex-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("zm.hx");
    let (code, text, _) = homext(&["example", "zeromult", "--field", "Q", "--varsigma", "0", "--seed", "3"]);
    assert_eq!(code, 0);
    std::fs::write(&path, &text).unwrap();
    let (code, out, _) = homext(&["extend", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = homext(&["probe-type0", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("[kernel element]"));
    std::fs::remove_dir_all(dir).unwrap();

    let (code, v) = json(&["example", "daleth", "--n", "4", "--k", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    let doc = v["document"].as_str().unwrap();
    assert_eq!(homext::dsl::parse(doc).unwrap().to_string(), doc);
}

#[test]
fn audits() {
    let (code, out, _) = homext(&["audit", "family=rlin"]);
    assert_eq!(code, 1);
    assert!(out.contains("dimension 7 versus 3"));
    let (code, out, _) = homext(&["audit", "family=zeromult", "--samples", "5"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = homext(&["audit", "family=1", "--n", "3", "--k", "2"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn probe_requires_a_quintuple() {
    let (code, _, err) = homext(&["probe-type0", &fixture("pass.hx")]);
    assert_eq!(code, 2);
    assert!(err.contains("no quintuple"));
}
