use std::path::{Path, PathBuf};

use serde_json::Value;
use smtd_cli::{run, Outcome};

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn smtd(args: &[&str]) -> Outcome {
    let mut argv = vec!["smtd"];
    argv.extend_from_slice(args);
    run(argv)
}

fn doc(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {:?}", o))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn verify_running_example() {
    let o = smtd(&["verify", &data("ex1.json"), "--matching", &data("ex1_m1.json"), "--mode", "strict"]);
    assert_eq!(o.code, 0, "{o:?}");
    let d = doc(&o);
    assert_eq!(d["feasibility"]["feasible"], true);
    assert_eq!(d["certificate"]["student"], "u3");
    assert_eq!(d["certificate"]["college"], "w2");
    assert_eq!(d["certificate"]["witness"], serde_json::json!(["u2", "u4"]));

    let o = smtd(&["verify", &data("ex1.json"), "--matching", &data("ex1_m1.json"), "--mode", "d"]);
    assert_eq!(doc(&o)["stable"], true);
    let o = smtd(&["verify", &data("ex1.json"), "--matching", &data("ex1_m2.json"), "--mode", "feasible"]);
    assert_eq!(doc(&o)["feasibility"]["feasible"], true);
    let o = smtd(&["verify", &data("ex1.json"), "--matching", &data("ex1_m2.json"), "--mode", "coalition"]);
    assert_eq!(o.code, 0, "{o:?}");
}

#[test]
fn solve_running_example() {
    let o = smtd(&["solve", &data("ex1.json"), "--mode", "stable"]);
    assert_eq!(o.code, 0);
    let d = doc(&o);
    assert_eq!(d["status"], "no");
    assert!(d["matching"].is_null());

    for algo in ["brute", "few-students", "xp-mq", "dp-mt"] {
        let o = smtd(&["solve", &data("ex1.json"), "--algo", algo, "--canonical"]);
        assert_eq!(doc(&o)["status"], "no", "{algo}");
        assert!(doc(&o)["stats"].get("elapsed_ms").is_none());
    }
    let o = smtd(&["solve", &data("ex1.json"), "--mode", "d-stable", "--canonical"]);
    assert_eq!(doc(&o)["status"], "yes");
}

#[test]
fn exit_codes() {
    assert_eq!(smtd(&["validate", &data("broken.json")]).code, 3);
    assert!(smtd(&["validate", &data("broken.json")]).stdout.contains("asymmetry"));
    assert_eq!(smtd(&["validate", &data("ex1.json")]).code, 0);
    assert_eq!(smtd(&["solve", &data("ex1.json"), "--algo", "dp-mt", "--mode", "d-stable"]).code, 2);
    assert_eq!(smtd(&["solve", &data("ex1.json"), "--algo", "gs-branch"]).code, 2);
    assert_eq!(smtd(&["solve", &data("ex1.json"), "--algo", "brute", "--budget", "3"]).code, 4);
    assert_eq!(smtd(&["solve", &data("broken.json")]).code, 3);
    assert_eq!(smtd(&["solve", "/nonexistent/instance.json"]).code, 2);
    assert_eq!(smtd(&["frobnicate"]).code, 2);
    assert_eq!(smtd(&["--help"]).code, 0);

    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{ not json");
    assert_eq!(smtd(&["validate", bad.to_str().unwrap()]).code, 2);
    let m = write(dir.path(), "m.json", r#"{"pairs":[["u4","w1"]]}"#);
    assert_eq!(smtd(&["verify", &data("ex1.json"), "--matching", m.to_str().unwrap()]).code, 3);
}

#[test]
fn feasible_and_lp_export() {
    let dir = tempfile::tempdir().unwrap();
    let lp = dir.path().join("ex1.lp");
    let o = smtd(&["feasible", &data("ex1.json"), "--emit-lp", lp.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert_eq!(doc(&o)["status"], "yes");
    assert_eq!(doc(&o)["algorithm"], "ilp");
    let text = std::fs::read_to_string(lp).unwrap();
    assert!(text.starts_with("Minimize") && text.contains("x__w1__g"));
    let o = smtd(&["feasible", &data("ex1.json"), "--algo", "brute"]);
    assert_eq!(doc(&o)["status"], "yes");
}

#[test]
fn generate_then_solve() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "path.txt", "3 2\n1 2\n2 3\n");
    let out = dir.path().join("indset.json");
    let o = smtd(&["generate", "--from", "indset", "-i", g.to_str().unwrap(), "--k", "2", "-o", out.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{o:?}");
    assert_eq!(smtd(&["validate", out.to_str().unwrap()]).code, 0);
    let o = smtd(&["solve", out.to_str().unwrap(), "--algo", "gs-branch"]);
    assert_eq!(doc(&o)["status"], "yes");
    let g3 = smtd(&["generate", "--from", "indset", "-i", g.to_str().unwrap(), "--k", "3"]);
    let inst3 = write(dir.path(), "indset3.json", &g3.stdout);
    assert_eq!(doc(&smtd(&["solve", inst3.to_str().unwrap(), "--algo", "gs-branch"]))["status"], "no");

    let sets = write(dir.path(), "x3c.txt", "1 2 3\n1 2 3\n1 2 3\n");
    let o = smtd(&["generate", "--from", "x3c", "-i", sets.to_str().unwrap()]);
    let d = doc(&o);
    assert_eq!(d["instance"]["colleges"][0]["id"], "w");
    assert_eq!(d["matching"]["pairs"].as_array().unwrap().len(), 3);
    let inst = dir.path().join("x3c.json");
    let o = smtd(&["generate", "--from", "x3c", "-i", sets.to_str().unwrap(), "-o", inst.to_str().unwrap()]);
    let m = write(dir.path(), "x3c_m.json", &o.stdout);
    let v = doc(&smtd(&["verify", inst.to_str().unwrap(), "--matching", m.to_str().unwrap()]));
    assert_eq!(v["certificate"]["student"], "d");

    let q = write(dir.path(), "q.txt", "p cnf 2 1\nx 1\n1 2 -2 0\n");
    let o = smtd(&["generate", "--from", "not1in3", "-i", q.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{o:?}");
    let cnf = write(dir.path(), "f.cnf", "p cnf 3 4\n1 2 3 0\n-1 -2 -3 0\n1 -2 3 0\n-1 2 -3 0\n");
    for kind in ["sat22", "sat22-feasible"] {
        assert_eq!(smtd(&["generate", "--from", kind, "-i", cnf.to_str().unwrap()]).code, 0);
    }
    let sys = write(dir.path(), "s.txt", "1\n2\n1 2\n");
    for kind in ["setcover", "setpacking"] {
        assert_eq!(smtd(&["generate", "--from", kind, "-i", sys.to_str().unwrap(), "--k", "1"]).code, 0);
    }
    assert_eq!(smtd(&["generate", "--from", "setcover", "-i", sys.to_str().unwrap()]).code, 2);
    let o = smtd(&["generate", "--from", "gadget", "--students", "1", "--capacities", "1"]);
    assert_eq!(doc(&o)["students"].as_array().unwrap().len(), 4);
    let a = smtd(&["generate", "--from", "random", "--seed", "3"]);
    assert_eq!(a, smtd(&["generate", "--from", "random", "--seed", "3"]));
}

#[test]
fn bench_reports() {
    let o = smtd(&["bench", "--suite", "gadget"]);
    assert_eq!(o.code, 0);
    assert_eq!(doc(&o)["passed"], true);
    let a = smtd(&["bench", "--suite", "oracle", "--seed", "9", "--count", "20"]);
    let b = smtd(&["bench", "--suite", "oracle", "--seed", "9", "--count", "20", "--jobs", "1"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(doc(&a)["passed"], true);
    let p = smtd(&["--pretty", "bench", "--suite", "oracle", "--seed", "9", "--count", "5"]);
    assert!(p.stdout.contains("\n  ") && p.stderr.contains("agreement.dp_mt"));
    assert_eq!(smtd(&["bench", "--suite", "oracle", "--ties", "2"]).code, 2);
}
