use std::process::{Command, Output};

fn ot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ot")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn tmp(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("ot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn compare_prints_a_sign() {
    let o = ot(&["compare", "0", "Om"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "<\n");
    assert_eq!(stdout(&ot(&["compare", "psi(L; 0)", "S"])), ">\n");
    assert_eq!(stdout(&ot(&["compare", "Om + 0", "Om"])), "=\n");
}

#[test]
fn collapse_of_s_is_rho() {
    let rho = "psi(S; 1; {1: 1})";
    let o = ot(&["collapse", "S", rho]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), rho);
}

#[test]
fn normalize_prints_canonical_form() {
    assert_eq!(stdout(&ot(&["normalize", "1 + Om + phi(0, Om) + 1"])).trim(), "Om + Om + 1");
}

#[test]
fn validate_reports_the_failed_condition() {
    let o = ot(&["validate", "psi(S; 0; {1: 2})"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("max SC(f)"));
    let o = ot(&["validate", "psi(S; 2; {1: 2})"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("valid"));
}

#[test]
fn syntax_errors_show_a_span_and_exit_1() {
    let o = ot(&["compare", "phi(0, Om", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let e = stderr(&o);
    assert!(e.contains("syntax error at 9..9"), "{e}");
    assert!(e.contains('^'));
    assert!(!e.contains("panicked"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(ot(&["bogus"]).status.code(), Some(2));
    assert_eq!(ot(&["compare", "0"]).status.code(), Some(2));
    assert_eq!(ot(&["enumerate", "--generators", "nope"]).status.code(), Some(2));
    assert_eq!(ot(&["compare", "@/nonexistent/term", "0"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_1() {
    let o = ot(&["collapse", "S", "Om"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("Ψ_S"));
    assert_eq!(ot(&["omeasure", "{1: 1, 2: 1}"]).status.code(), Some(1));
}

#[test]
fn file_arguments() {
    let a = tmp("a.term", "psi(Om; 1)\n");
    let arg = format!("@{}", a.display());
    assert_eq!(stdout(&ot(&["compare", &arg, "Om"])), "<\n");
    let x = tmp("x.set", "Om\n\n1\n");
    let o = ot(&["closure", "1", "0", x.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "true");
}

#[test]
fn hull_and_measures() {
    assert_eq!(stdout(&ot(&["hull", "psi(L; Om)", "Om", "0"])).trim(), "false");
    assert_eq!(stdout(&ot(&["omeasure", "{1: 1}"])).trim(), "th(1,phi(0,1) + 1)");
    let a = stdout(&ot(&["attrs", "Om"]));
    assert!(a.contains("O  1"), "{a}");
}

#[test]
fn structured_output_is_json() {
    let o = ot(&["--format", "structured", "normalize", "Om + 1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["command"], "normalize");
    assert_eq!(v["term"]["text"], "Om + 1");
    assert_eq!(v["term"]["tree"]["k"], "sum");
    let o = ot(&["--format", "structured", "compare", "bad(", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let e: serde_json::Value = serde_json::from_str(&stderr(&o)).unwrap();
    assert_eq!(e["error"]["kind"], "domain");
}

#[test]
fn enumerate_lists_increasing_terms() {
    let o = ot(&["enumerate", "--max-size", "1"]);
    assert_eq!(stdout(&o), "0\n1\nOm\nS\nL\n");
    let o = ot(&["enumerate", "--max-size", "3", "--below", "Om"]);
    let below: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(below[..5], ["0", "1", "2", "3", "phi(0,1)"]);
    assert_eq!(below.last().unwrap(), "psi(Om; L)");
    let o = ot(&["--format", "structured", "enumerate", "--max-size", "3", "--generators", "sum"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"].as_u64().unwrap() as usize, v["terms"].as_array().unwrap().len());
}

#[test]
fn stress_terminates_deterministically() {
    let args = ["stress", "--chains", "20", "--seed", "3"];
    let (a, b) = (ot(&args), ot(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("chains 20 terminated 20"));
}

#[test]
fn quick_selftest_passes_and_mutations_fail() {
    let o = ot(&["selftest", "--quick", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("result: pass\n"));
    for m in ["veblen-swap", "psi-drop-hull", "theta-flip"] {
        let o = ot(&["selftest", "--quick", "--mutation", m]);
        assert_eq!(o.status.code(), Some(1), "{m}");
        assert!(stdout(&o).contains("result: FAIL"));
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["--format", "structured", "selftest", "--quick", "--seed", "11", "--jobs", "2"];
    let (a, b) = (ot(&args), ot(&args));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
}
