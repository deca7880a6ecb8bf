use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn samples() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../samples")
}

fn sample(name: &str) -> String {
    samples().join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gamma-cycles"))
        .args(args)
        .env_remove("GAMMA_CYCLES_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str, contents: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn charpoly_of_two_zero_plus_one() {
    let o = run(&["charpoly", "--law", &sample("law.json"), "--element", "x"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "charpoly: t^2 - t^3\n");
}

#[test]
fn tangent_dimension_at_origin() {
    let o = run(&["tangent", "--algebra", &sample("Qx4.json"), "--point", "0", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("dimension: 2\n"));
    let o = run(&["tangent", "--algebra", &sample("trunc_xy.json"), "--point", "0,0", "--degree", "2"]);
    assert!(stdout(&o).starts_with("dimension: 5\n"));
}

#[test]
fn verify_all_passes_and_is_deterministic() {
    let a = run(&["verify-all", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(stdout(&a).lines().filter(|l| l.starts_with("PASS")).count(), 10);
    assert!(stderr(&a).contains("suite 1:"));
    let b = run(&["verify-all", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_environment_variable_overrides_flag() {
    let o = Command::new(env!("CARGO_BIN_EXE_gamma-cycles"))
        .args(["verify-all", "--seed", "7", "--suite", "6"])
        .env("GAMMA_CYCLES_SEED", "11")
        .output()
        .unwrap();
    assert!(stdout(&o).starts_with("seed: 11\n"));
}

#[test]
fn trace_then_norm_round_trips() {
    let o = run(&["trace", "--law", &sample("law.json"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let trace = scratch("trace_rt.json", &stdout(&o));
    let back = run(&["norm", "--trace", &trace, "--json"]);
    let law: serde_json::Value = serde_json::from_slice(&back.stdout).unwrap();
    let orig: serde_json::Value = serde_json::from_str(&fs::read_to_string(sample("law.json")).unwrap()).unwrap();
    assert_eq!(law["psi"], orig["psi"]);
}

#[test]
fn characteristic_error_names_the_factorial() {
    let t = scratch(
        "f2_trace.json",
        r#"{"degree":2,"carrier":{"ring":{"kind":"Fp","p":2},"rank":2,"basis":["1","x"],"one":[1,0],
            "mul":[[[1,0],[0,1]],[[0,1],[1,1]]]},"theta":[0,1]}"#,
    );
    let o = run(&["norm", "--trace", &t]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("2! is not invertible in characteristic 2"), "{}", stderr(&o));
}

#[test]
fn malformed_inputs_exit_two() {
    let bad = scratch("bad.json", "{not json");
    assert_eq!(run(&["law-check", "--law", &bad]).status.code(), Some(2));
    let extra = scratch("extra.json", r#"{"ambient":"poly:Q[x]","points":[],"colour":"red"}"#);
    let o = run(&["cycle-law", "--cycle", &extra]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("colour"), "{}", stderr(&o));
    let o = run(&["law-eval", "--law", &sample("law.json"), "--element", "z"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("\"z\""));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn failed_checks_exit_one() {
    let o = run(&["law-check", "--law", &sample("not_multiplicative.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("multiplicative: no"));
    let o = run(&["equiv", "--left", &sample("zero_twice.json"), "--right", &sample("two_zero_one.json")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sum_equals_combined_cycle() {
    let o = run(&["sum", "--cycle", &sample("zero_twice.json"), "--cycle", &sample("one.json"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["degree"], 3);
    let o = run(&["equiv", "--left", &sample("two_zero_one.json"), "--right", &sample("two_zero_one.json")]);
    assert_eq!(stdout(&o), "equivalent: yes\n");
}

#[test]
fn pushforward_of_plane_cycle() {
    let o = run(&["pushforward", "--cycle", &sample("plane.json"), "--to", "poly:Q[u]", "--map", "x + y"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("degree: 3"));
    let o = run(&["pushforward", "--cycle", &sample("plane.json"), "--to", "poly:Q[u,v]", "--map", "x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cocycle_and_chow_reports() {
    let o = run(&["cocycle-norm", "--cocycle", &sample("cocycle.json")]);
    assert!(stdout(&o).contains("n(phi_01) = 2"));
    let o = run(&["chow-form", "--cycle", &sample("two_points.json"), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["psi"]["1,1"], "1");
    assert_eq!(v["psi"]["0,2"], "1");
    assert!(v["psi"].get("2,0").is_none_or(|c| c == "0"));
    let o = run(&["chow-check", "--cycle", &sample("three_points.json"), "--against", &sample("two_points.json"), "--top", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("consistent: yes"));
}

#[test]
fn gamma_products() {
    let o = run(&["gamma-mul", "--left", &sample("gamma_left.json"), "--right", &sample("gamma_right.json")]);
    assert_eq!(stdout(&o), "1/2*γ^(1,2) + 2*γ^(2,1)\n");
    let o = run(&["gamma-mul", "--left", &sample("gamma_right.json"), "--right", &sample("gamma_square.json"), "--algebra", &sample("split.json")]);
    assert_eq!(stdout(&o), "32*γ^(0,2) - 14*γ^(1,1) + 6*γ^(2,0)\n");
}
