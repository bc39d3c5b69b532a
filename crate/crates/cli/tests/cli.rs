use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn ptamtl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptamtl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const CADENCE: &str = "alphabet: a b
clocks: x y
params: p
locations: 1 2 3
init: 1
final: 3
edge: 1 a \"x=p\" {x} 1
edge: 1 a \"x=p & y=1\" {x, y} 2
edge: 2 b \"x=p\" {x} 2
edge: 2 b \"x=p & y=1\" {} 3
";

#[test]
fn eval_prints_truth_value() {
    let o = ptamtl(&["eval", "a U[1,2) (b & !c)", "a@0 b@3/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "true\n");
    let o = ptamtl(&["eval", "F[=1] b", "a@0 b@1/2", "--json"]);
    assert_eq!(stdout(&o).replace(char::is_whitespace, ""), r#"{"satisfies":false}"#);
}

#[test]
fn parse_errors_exit_with_one() {
    let o = ptamtl(&["eval", "a U[1,2 b", "a@0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1:9"));
    assert_eq!(ptamtl(&["eval", "a", "a@1 b@0"]).status.code(), Some(1));
    assert_eq!(ptamtl(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(ptamtl(&["search", &data("single_message.machine"), "s9"]).status.code(), Some(1));
}

#[test]
fn membership_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cadence.pta");
    std::fs::write(&path, CADENCE).unwrap();
    let a = path.display().to_string();
    let o = ptamtl(&["member", &a, "p=1/2", "a@1/2 a@1 b@3/2 b@2"]);
    assert_eq!(stdout(&o), "accepted\n");
    let o = ptamtl(&["member", &a, "p=2/3", "a@2/3 a@4/3"]);
    assert_eq!(stdout(&o), "rejected\n");
    assert_eq!(stdout(&ptamtl(&["det-check", &a])), "not deterministic\n");
    let fixed = CADENCE
        .replace("edge: 1 a \"x=p\"", "edge: 1 a \"x=p & y<1\"")
        .replace("edge: 2 b \"x=p\"", "edge: 2 b \"x=p & y<1\"");
    assert_eq!(stdout(&ptamtl(&["det-check", &fixed])), "deterministic\n");
}

#[test]
fn reduce_writes_three_files() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("c1");
    let o = ptamtl(&["reduce", &data("single_message.machine"), "s2", "--out", &base.display().to_string()]);
    assert_eq!(o.status.code(), Some(0));
    for ext in ["pta", "mtl", "alphabet"] {
        assert!(base.with_extension(ext).is_file());
    }
    let pta = base.with_extension("pta").display().to_string();
    assert_eq!(stdout(&ptamtl(&["det-check", &pta])), "deterministic\n");
}

#[test]
fn encode_decode_round_trip() {
    let m = data("single_message.machine");
    let gamma = "s0[] m! s1[m] m? s2[]";
    let w = stdout(&ptamtl(&["encode", &m, "s2", gamma]));
    assert_eq!(w, "s0@0 #@1/2 m!@1 s1@2 m@5/2 m?@3 s2@4 #@9/2 *@5\n");
    assert_eq!(stdout(&ptamtl(&["check-lcn", &m, "s2", "1", w.trim()])), "member\n");
    assert_eq!(stdout(&ptamtl(&["decode", &m, "s2", w.trim()])), format!("{gamma}\n"));
    let shifted = stdout(&ptamtl(&["encode", &m, "s2", gamma, "--delta", "1/3", "--slots", "1/4"]));
    assert!(shifted.starts_with("s0@1/3 #@7/12"));
    let o = ptamtl(&["check-lcn", &m, "s2", "1", "s0@0 #@1/2 m!@1"]);
    assert!(stdout(&o).starts_with("not a member"));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn search_reports_each_outcome() {
    let found = stdout(&ptamtl(&["search", &data("two_message.machine"), "q4", "--steps", "8", "--chan", "3"]));
    assert_eq!(found, "found: q0[] a! q1[a] b! q2[a,b] a? q3[b] b? q4[]\n");
    let none = stdout(&ptamtl(&["search", &data("no_receive.machine"), "s2"]));
    assert!(none.starts_with("unreachable"));
}

#[test]
fn mc_bounded_text_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("c1");
    ptamtl(&["reduce", &data("single_message.machine"), "s2", "--out", &base.display().to_string()]);
    let phi = std::fs::read_to_string(base.with_extension("mtl")).unwrap();
    let neg = format!("!({})", phi.trim());
    let pta = base.with_extension("pta").display().to_string();
    let args = ["mc-bounded", &pta, &neg, "--candidates", "p=1/2", "--grid", "1/2", "--horizon", "5", "--max-events", "9"];
    let o = ptamtl(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("counterexample under p=1/2: s0@0 #@1/2 m!@1"));
    let mut with_json = args.to_vec();
    with_json.push("--json");
    let v: serde_json::Value = serde_json::from_slice(&ptamtl(&with_json).stdout).unwrap();
    assert_eq!(v["outcome"]["CounterexampleFound"]["valuation"]["p"], "1/2");
    assert_eq!(v["max_events"], 9);
}

#[test]
fn verify_reduction_verdicts() {
    let o = ptamtl(&["verify-reduction", &data("single_message.machine"), "s2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("verdict: pass\n"));
    let o = ptamtl(&["verify-reduction", &data("no_receive.machine"), "s2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "Inconclusive");
}
