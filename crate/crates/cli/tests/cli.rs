use std::path::PathBuf;
use std::process::{Command, Output};

fn lie2alg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lie2alg")).args(args).output().expect("binary runs")
}

fn spec(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs").join(name).display().to_string()
}

fn scratch(name: &str, body: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn check_cs5_on_so3_demo_passes() {
    let o = lie2alg(&["pontryagin", "check-cs5", &spec("so3.spec")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let s = stdout(&o);
    for name in ["cs5.primitive", "consistency.r-gamma", "consistency.i-gamma", "consistency.5form"] {
        assert!(s.lines().any(|l| l.starts_with("PASS") && l.contains(name)), "{name} missing:\n{s}");
    }
}

#[test]
fn broken_lie2_exits_one_with_residual() {
    let f = scratch("broken.spec", "kind lie2\ng = 1\na = 1\nl1 = [[1]]\naction = [(1, 1, 1, 1)]\n");
    let o = lie2alg(&["verify", "lie2", &f, "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], false);
    let failing: Vec<_> = v["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|c| c["residual"].as_str().is_some_and(|r| !r.is_empty())));
}

#[test]
fn malformed_polynomial_points_after_the_caret() {
    let f = scratch("caret.spec", "kind gamma_connection\nfiber = so3\nA = \"x1^*dx1*e1\"\nB = \"0\"\n");
    let o = lie2alg(&["pontryagin", "check-cs5", &f]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    // The literal opens at column 5, so `^` sits at column 8.
    assert!(e.contains("caret.spec:3:9:"), "{e}");
}

#[test]
fn value_space_mismatch_is_reported() {
    let f = scratch("mismatch.spec", "kind gamma_connection\nfiber = so3\nA = \"x2*dx1*f1\"\nB = \"0\"\n");
    let o = lie2alg(&["verify", "algebroid", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("value space mismatch"), "{}", stderr(&o));
}

#[test]
fn wrong_kind_is_an_error() {
    let o = lie2alg(&["verify", "lie2", &spec("so3.spec")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("expected kind lie2"));
}

#[test]
fn compute_json_is_deterministic() {
    let a = lie2alg(&["pontryagin", "compute", "--json", "--seed", "11"]);
    let b = lie2alg(&["pontryagin", "compute", "--json", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["schema"], "lie2alg-report/1");
    assert_eq!(v["seed"], 11);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    let outputs = v["outputs"].as_array().unwrap();
    assert!(outputs.iter().any(|o| o["name"] == "pontryagin-5form" && o["value"].as_str().unwrap().contains("dx1^dx2^dx3^dx4^dx5")));
    let c = lie2alg(&["pontryagin", "compute", "--json", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn abelian_demo_reports_the_worked_example() {
    let o = lie2alg(&["demo", "abelian", "--md"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("- pontryagin-5form: `x1*dx1^dx2^dx3^dx4^dx5`"), "{}", stdout(&o));
}

#[test]
fn chart_flag_overrides_file() {
    let o = lie2alg(&["pontryagin", "check-closed", &spec("abelian.spec"), "--chart-dim", "5", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["chart_dim"], 5);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "vacuous"));
}

#[test]
fn print_spec_round_trips() {
    let o = lie2alg(&["demo", "heisenberg", "--print-spec"]);
    let f = scratch("heis.spec", &stdout(&o));
    let r = lie2alg(&["pontryagin", "check-gauge", &f]);
    assert_eq!(r.status.code(), Some(0), "{}", stdout(&r));
}
