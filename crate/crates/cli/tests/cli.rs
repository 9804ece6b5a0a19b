use std::path::PathBuf;
use std::process::{Command, Output};

fn algeo(args: &[&str]) -> Output {
    algeo_env(args, None)
}

fn algeo_env(args: &[&str], budget: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_algeo"));
    cmd.args(args).env_remove("ALGEO_BUDGET");
    if let Some(b) = budget {
        cmd.env("ALGEO_BUDGET", b);
    }
    cmd.output().unwrap()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../algebras")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn passing_suites_exit_zero() {
    let out = algeo(&["coherence", "qz3"]);
    assert_eq!(code(&out), 0);
    let md = String::from_utf8(out.stdout).unwrap();
    assert!(md.starts_with("# algeo coherence report: qz3"));
    let out = algeo(&["functions", &fixture("heisenberg.json"), "--trials", "4"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn a_failing_check_exits_one() {
    let out = algeo(&[
        "forms",
        "m2q",
        "--carrier",
        "a",
        "--trials",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["forms.A.a-linearity"]);
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(code(&algeo(&[])), 2);
    assert_eq!(code(&algeo(&["verify"])), 2);
    assert_eq!(code(&algeo(&["verify", "m2q", "--format", "xml"])), 2);
    assert_eq!(code(&algeo(&["verify", "no-such-algebra"])), 2);
    assert_eq!(code(&algeo(&["verify", "m2q", "--max-arity", "1"])), 2);
    let dir = std::env::temp_dir().join(format!("algeo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"field\": \"Q\"").unwrap();
    let out = algeo(&["verify", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert_eq!(code(&algeo(&["--help"])), 0);
}

#[test]
fn budget_flag_and_environment() {
    let out = algeo(&["coherence", "m2q", "--budget", "10"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    // The environment overrides the flag in both directions.
    assert_eq!(
        code(&algeo_env(
            &["coherence", "m2q", "--budget", "10"],
            Some("100000")
        )),
        0
    );
    assert_eq!(code(&algeo_env(&["coherence", "m2q"], Some("10"))), 2);
    assert_eq!(code(&algeo_env(&["coherence", "m2q"], Some("lots"))), 2);
}

#[test]
fn json_reports_are_byte_identical() {
    let args = [
        "report", "sl2", "--trials", "4", "--seed", "3", "--format", "json",
    ];
    let a = algeo(&args);
    let b = algeo(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = algeo(&[
        "report", "sl2", "--trials", "4", "--seed", "4", "--format", "json",
    ]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn octonions_have_no_coherence_order() {
    let out = algeo(&["coherence", "octonions", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let check = &v["checks"][0];
    assert_eq!(check["id"], "coherence.order");
    assert!(check["value"]["order"].is_null());
}
