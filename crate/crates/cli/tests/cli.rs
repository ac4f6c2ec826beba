use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxcob")).args(args).current_dir(root()).output().expect("spawn coxcob")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxcob"))
        .args(args)
        .env(key, value)
        .current_dir(root())
        .output()
        .expect("spawn coxcob")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn validate(schema: &str, v: &Value) {
    let text = std::fs::read_to_string(root().join("schemas").join(format!("{schema}.schema.json"))).unwrap();
    let schema_value: Value = serde_json::from_str(&text).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema_value).expect("valid schema");
    let msgs: Vec<String> = match compiled.validate(v) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{schema} schema rejected output: {msgs:?}");
}

const CENTER: &str = "[x^3, x*y, y^4]";
const F: &str = "x^3 + x*y + y^4";

#[test]
fn cobord_matches_the_golden_presentation() {
    let o = run(&["cobord", "--in", "data/monomial_center.txt"]);
    assert_eq!(code(&o), 0);
    let golden = std::fs::read_to_string(root().join("crates/core/tests/golden/cobord_k3_l4.json")).unwrap();
    let expected: Value = serde_json::from_str(&golden).unwrap();
    assert_eq!(json_of(&o), expected);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["cobord", "--ideal", "[x^2*y, x*z^3, y^2*z]"]);
    let b = run(&["cobord", "--ideal", "[x^2*y, x*z^3, y^2*z]"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn every_subcommand_matches_its_schema() {
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("newton", vec!["newton", "--ideal", CENTER]),
        ("normalfan", vec!["normalfan", "--ideal", CENTER]),
        ("presentation", vec!["cobord", "--ideal", CENTER]),
        ("presentation", vec!["weighted", "--weights", "4,3", "--vars", "x,y"]),
        ("presentation", vec!["multiweighted", "--b", "2,3", "--ideal", CENTER]),
        ("presentation", vec!["stable", "--ideal", CENTER]),
        ("rees", vec!["simple", "--exponent", "1/2", "--ideal", CENTER]),
        ("transform", vec!["transform", "--center", CENTER, "--poly", F]),
        ("dualcomplex", vec!["dualcomplex", "--ideal", CENTER]),
        ("bundle", vec!["bundle", "--omega", "0", "--ideal", CENTER]),
        ("quotient", vec!["quotient", "--ideal", CENTER]),
        ("quotient", vec!["quotient", "--stable", "--ideal", CENTER]),
        ("report", vec!["check", "res", "--poly", F]),
        ("report", vec!["check", "res2", "--in", "data/two_blocks_p3.txt"]),
        ("report", vec!["check", "A", "--primes", "7", "--poly", F]),
        ("report", vec!["check", "AQ", "--primes", "7", "--poly", F]),
        ("report", vec!["check", "order", "--d", "1", "--primes", "5", "--in", "data/order_ideal.txt"]),
        ("report", vec!["verify", "--primes", "7", "--poly", F]),
    ];
    for (schema, args) in cases {
        let o = run(&args);
        assert!(code(&o) <= 1, "{args:?} exited {}: {}", code(&o), String::from_utf8_lossy(&o.stderr));
        validate(schema, &json_of(&o));
    }
}

#[test]
fn res_fails_in_characteristic_two() {
    let o = run(&["check", "res", "--char", "2", "--poly", "x^2+y^2"]);
    assert_eq!(code(&o), 1);
    let v = json_of(&o);
    assert_eq!(v["verdict"], "fail");
    assert!(v["conditions"].as_array().unwrap().iter().all(|c| c["witness"].is_object()));
}

#[test]
fn res_passes_where_the_char_allows() {
    let o = run(&["check", "res", "--char", "3", "--poly", "x^2+y^2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_of(&o)["verdict"], "pass");
}

#[test]
fn res2_reads_a_block_system() {
    let o = run(&["check", "res2", "--in", "data/two_blocks_p3.txt"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_of(&o)["check"], "res2");
}

#[test]
fn verify_resolves_away_from_five() {
    let o = run(&["verify", "--poly", F, "--primes", "7,11"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let v = json_of(&o);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["budget"]["primes"], serde_json::json!([7, 11]));
}

// Over F_5 the transform x'y' + s2^5 x'^3 + s1^5 y'^4 is singular at
// s1 = s2 = 1, x' = 2, y' = 3, so the default primes report a failure.
#[test]
fn verify_finds_the_singular_point_over_f5() {
    let o = run(&["verify", "--poly", F, "--primes", "5,7"]);
    assert_eq!(code(&o), 1);
    let v = json_of(&o);
    let w = v["conditions"]
        .as_array()
        .unwrap()
        .iter()
        .find_map(|c| c.get("witness").filter(|w| w["kind"] == "point"))
        .expect("a point witness")
        .clone();
    assert_eq!(w["prime"], 5);
    let vars: Vec<&str> = w["variables"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    let coords: Vec<u64> = w["coordinates"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    let at = |name: &str| coords[vars.iter().position(|v| *v == name).unwrap()];
    let (s1, s2, x, y) = (at("s1"), at("s2"), at("x'"), at("y'"));
    // g and both chart partials of g in x', y' vanish mod 5.
    let g = (x * y + s2.pow(5) * x.pow(3) + s1.pow(5) * y.pow(4)) % 5;
    let gx = (y + 3 * s2.pow(5) * x.pow(2)) % 5;
    let gy = (x + 4 * s1.pow(5) * y.pow(3)) % 5;
    assert_eq!((g, gx, gy), (0, 0, 0));
}

#[test]
fn parse_errors_exit_two_with_a_position() {
    let o = run(&["newton", "--ideal", "[x^2,"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 1, column 6"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["bundle", "--ideal", CENTER])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn a_small_budget_exits_three() {
    let o = run_env(&["verify", "--poly", F, "--primes", "7"], "COXCOB_BUDGET", "10");
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn pretty_prints_text() {
    let o = run(&["--pretty", "check", "res", "--char", "2", "--poly", "x^2+y^2"]);
    assert_eq!(code(&o), 1);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(serde_json::from_str::<Value>(&text).is_err());
    assert!(text.to_lowercase().contains("fail"), "{text}");
}

#[test]
fn transform_output_is_the_weak_transform() {
    let o = run(&["transform", "--center", CENTER, "--poly", F]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_eq!(v["g"], "s1^5*y'^4 + s2^5*x'^3 + x'*y'");
    assert_eq!(v["shift"], serde_json::json!([3, 4]));
}
