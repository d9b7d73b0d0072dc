use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

const LAURENT: &str = r#"{"kind":"laurent","vars":["t"]}"#;
const QUADRIC: &str = r#"{"kind":"quotient","vars":["a","b","c"],"relations":["a^2+b*c-1"],"point":{"a":"1","b":"0","c":"0"}}"#;
const A1: &str = r#"{"type":"A","rank":1}"#;
const A2: &str = r#"{"type":"A","rank":2}"#;
const H: &str = r#"{"h":{"1":"1"}}"#;

struct Job {
    dir: TempDir,
}

impl Job {
    fn new() -> Self {
        Job { dir: TempDir::new().unwrap() }
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn madlie(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_madlie")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn report(args: &[&str]) -> (i32, Value) {
    let (code, text) = madlie(args);
    (code, serde_json::from_str(&text).unwrap_or_else(|e| panic!("not JSON ({e}): {text}")))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_diag_on_h() {
    let j = Job::new();
    let (r, a, e) = (j.file("r", LAURENT), j.file("a", A1), j.file("e", H));
    let (code, v) = report(&["check-diag", "--ring", s(&r), "--algebra", s(&a), "--element", s(&e)]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["diagonalizable"], true);
    assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);
    assert!(v["wall_clock_ms"].is_u64());
}

#[test]
fn nondiagonalizable_is_a_result() {
    let j = Job::new();
    let (r, a, e) = (j.file("r", LAURENT), j.file("a", A1), j.file("e", r#"{"e":{"alpha1":"t"}}"#));
    let (code, v) = report(&["check-diag", "--ring", s(&r), "--algebra", s(&a), "--element", s(&e)]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["diagonalizable"], false);
    assert_eq!(v["result"]["failure_reason"], "minpoly_not_squarefree_witness");
}

#[test]
fn quadric_demo_report() {
    let (code, v) = report(&["quadric-demo"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["f_reg"], "4");
    assert_eq!(r["diagonalizable"], true);
    assert_eq!(r["eigenvalues"], serde_json::json!(["0", "2", "-2"]));
    assert_eq!(r["certificate"]["verdict"], "nonfree_rank1");
    assert_eq!(r["certificate"]["rank"], 1);
    assert_eq!(r["certificate"]["min_gens"], 2);
    assert_eq!(r["conjugation"]["status"], "obstructed");
}

#[test]
fn conjugate_embeds_verification() {
    let j = Job::new();
    let r = j.file("r", LAURENT);
    let a = j.file("a", A1);
    let p = j.file("p", r#"{"h":{"1":"1"},"e":{"alpha1":"-2*t"}}"#);
    let h = j.file("h", H);
    let (code, v) = report(&["conjugate", "--ring", s(&r), "--algebra", s(&a), "--element", s(&p), "--target", s(&h)]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["status"], "solved");
    assert_eq!(v["result"]["verification"]["all_zero"], true);
    assert_eq!(v["result"]["witness"]["defining_matrix"], serde_json::json!([["1", "-t"], ["0", "1"]]));
}

#[test]
fn obstruction_exits_zero() {
    let j = Job::new();
    let r = j.file("r", QUADRIC);
    let a = j.file("a", A1);
    let p = j.file("p", r#"{"h":{"1":"a"},"e":{"alpha1":"b"},"f":{"alpha1":"c"}}"#);
    let h = j.file("h", H);
    let (code, v) = report(&["conjugate", "--ring", s(&r), "--algebra", s(&a), "--element", s(&p), "--target", s(&h)]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["status"], "obstructed");
    assert!(v["result"].get("verification").is_none());
}

#[test]
fn eigenmodules_with_certificates() {
    let j = Job::new();
    let r = j.file("r", QUADRIC);
    let a = j.file("a", A1);
    let p = j.file("p", r#"{"h":{"1":"a"},"e":{"alpha1":"b"},"f":{"alpha1":"c"}}"#);
    let (code, v) = report(&["eigenmodules", "--ring", s(&r), "--algebra", s(&a), "--element", s(&p), "--no-timing"]);
    assert_eq!(code, 0);
    let mods = v["result"]["eigenmodules"].as_array().unwrap();
    assert_eq!(mods.len(), 3);
    let two = mods.iter().find(|m| m["eigenvalue"] == "2").unwrap();
    assert_eq!(two["min_gens"], 2);
    assert_eq!(two["certificate"]["verdict"], "nonfree_rank1");
}

#[test]
fn regular_and_traces_at_points() {
    let j = Job::new();
    let r = j.file("r", LAURENT);
    let a = j.file("a", A2);
    let p = j.file("p", r#"{"coweights":{"1":"1","2":"1"},"e":{"alpha1":"t","alpha1+alpha2":"t^-1"}}"#);
    let base = ["--ring", s(&r), "--algebra", s(&a), "--element", s(&p)];
    let (code, v) = report(&[&["regular"], &base[..], &["--point", "t=2", "--samples", "5", "--seed", "3"]].concat());
    assert_eq!(code, 0);
    assert_eq!(v["result"]["regular"], true);
    let pts = v["result"]["at_points"].as_array().unwrap();
    assert_eq!(pts.len(), 6);
    assert!(pts.iter().all(|x| x["agree"] == true));
    let (code, v) = report(&[&["traces"], &base[..], &["--m-max", "6", "--point", "t=1", "--samples", "4"]].concat());
    assert_eq!(code, 0);
    assert_eq!(v["result"]["constant"], true);
    assert_eq!(v["result"]["traces"].as_array().unwrap().len(), 6);
    assert_eq!(v["result"]["residue_check"]["char_polys_agree"], true);
}

#[test]
fn mad_and_lift() {
    let j = Job::new();
    let r = j.file("r", LAURENT);
    let a = j.file("a", A2);
    let c = j.file("c", r#"{"elements":[{"coweights":{"1":"1"},"e":{"alpha1":"-t"}}]}"#);
    let (code, v) = report(&["mad", "--ring", s(&r), "--algebra", s(&a), "--candidate", s(&c)]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["check"]["dim"], 1);
    assert_eq!(v["result"]["check"]["maximal_by_dimension"], false);
    assert_eq!(v["result"]["conjugation"]["verification"]["all_in_cartan"], true);
    assert!(!v["result"]["conjugation"]["levi_steps"][0]["levi_indices"].as_array().unwrap().is_empty());

    let tr = j.file("tr", r#"{"kind":"truncated","vars":["eps"],"relations":["eps^4"]}"#);
    let a1 = j.file("a1", A1);
    let p = j.file("p", r#"{"h":{"1":"1"},"e":{"alpha1":"-2-2*eps"}}"#);
    let h = j.file("h", H);
    let pbar = j.file("pbar", r#"{"word":[{"root":"alpha1","coeff":"-1"}]}"#);
    let args = ["lift", "--ring", s(&tr), "--algebra", s(&a1), "--element", s(&p), "--target", s(&h), "--pbar", s(&pbar)];
    let (code, v) = report(&args);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verification"]["all_zero"], true);
    assert!(v["result"]["rounds"].as_u64().unwrap() <= 2);
}

#[test]
fn reports_are_deterministic() {
    let j = Job::new();
    let r = j.file("r", LAURENT);
    let a = j.file("a", A2);
    let p = j.file("p", r#"{"coweights":{"1":"2","2":"-1"},"e":{"alpha2":"t^2"}}"#);
    let args = ["traces", "--ring", s(&r), "--algebra", s(&a), "--element", s(&p), "--samples", "3", "--seed", "11", "--no-timing"];
    let first = madlie(&args);
    assert_eq!(first.0, 0);
    assert_eq!(first, madlie(&args));
    let (_, other_seed) = madlie(&[&args[..8], &["--seed", "12", "--no-timing"]].concat());
    assert_ne!(first.1, other_seed);
}

#[test]
fn out_file() {
    let j = Job::new();
    let out = j.path("report.json");
    let (code, stdout) = madlie(&["quadric-demo", "--out", s(&out), "--no-timing"]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["command"], "quadric-demo");
}

#[test]
fn malformed_json_reports_position() {
    let j = Job::new();
    let r = j.file("r", "{\n  \"kind\": \"laurent\",\n  \"vars\": [\"t\"\n}");
    let (a, e) = (j.file("a", A1), j.file("e", H));
    let (code, v) = report(&["check-diag", "--ring", s(&r), "--algebra", s(&a), "--element", s(&e)]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "input");
    assert_eq!(v["error"]["line"], 4);
    assert!(v["error"]["column"].as_u64().unwrap() >= 1);
}

#[test]
fn input_error_corpus() {
    let j = Job::new();
    let r = j.file("r", LAURENT);
    let q = j.file("q", QUADRIC);
    let a = j.file("a", A1);
    let e = j.file("e", H);
    let cases: Vec<(&str, Vec<String>)> = vec![
        ("missing element", vec!["check-diag".into(), "--ring".into(), s(&r).into(), "--algebra".into(), s(&a).into()]),
        ("missing file", vec!["regular".into(), "--ring".into(), s(&j.path("nope")).into(), "--algebra".into(), s(&a).into(), "--element".into(), s(&e).into()]),
    ];
    for (name, args) in &cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(madlie(&args).0, 2, "{name}");
    }
    let bad_files = [
        ("ring missing vars", "r2", r#"{"kind":"laurent"}"#, "ring"),
        ("ring unknown field", "r3", r#"{"kind":"laurent","vars":["t"],"colour":1}"#, "ring"),
        ("point off the quadric", "r4", r#"{"kind":"quotient","vars":["a","b","c"],"relations":["a^2+b*c-1"],"point":{"a":"2","b":"0","c":"0"}}"#, "ring"),
        ("infinite type", "a2", r#"{"matrix":[[2,-3],[-3,2]]}"#, "algebra"),
        ("not a Cartan matrix", "a3", r#"{"matrix":[[2,1],[1,2]]}"#, "algebra"),
        ("unknown type", "a4", r#"{"type":"Q","rank":2}"#, "algebra"),
        ("bad root label", "e2", r#"{"e":{"alpha7":"1"}}"#, "element"),
        ("bad coefficient", "e3", r#"{"h":{"1":"t^^2"}}"#, "element"),
        ("Cartan index out of range", "e4", r#"{"h":{"3":"1"}}"#, "element"),
    ];
    for (name, file, body, role) in bad_files {
        let f = j.file(file, body);
        let mut args = vec!["check-diag", "--ring", s(&r), "--algebra", s(&a), "--element", s(&e)];
        let slot = match role {
            "ring" => 2,
            "algebra" => 4,
            _ => 6,
        };
        args[slot] = s(&f);
        let (code, v) = report(&args);
        assert_eq!(code, 2, "{name}: {v}");
        assert_eq!(v["error"]["kind"], "input", "{name}");
    }
    let (code, _) = report(&["check-diag", "--ring", s(&r), "--algebra", s(&a), "--element", s(&e), "--point", "t=0"]);
    assert_eq!(code, 2, "t = 0 is not a point of the torus");
    let (code, _) = report(&["regular", "--ring", s(&q), "--algebra", s(&a), "--element", s(&e), "--point", "a=1,b=1,c=1"]);
    assert_eq!(code, 2, "point off the quadric");
    assert_eq!(madlie(&["frobnicate"]).0, 2);
    assert_eq!(madlie(&["traces", "--m-max", "0"]).0, 2);
}

#[test]
fn resource_limit_exit_code() {
    let j = Job::new();
    let r = j.file(
        "r",
        r#"{"kind":"quotient","vars":["x","y","z"],"relations":["x^3-y*z","y^3-x*z","z^3-x*y"],"limits":{"max_terms":100000,"max_basis":2}}"#,
    );
    let (a, e) = (j.file("a", A1), j.file("e", H));
    let (code, v) = report(&["check-diag", "--ring", s(&r), "--algebra", s(&a), "--element", s(&e)]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "resource_limit");
}
