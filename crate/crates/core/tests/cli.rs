use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const REFERENCE: &str = r#"{"format_version": 1, "vertices": [["0","0","1"], ["4","0","1"], ["5","3","1"], ["1","4","1"]], "g": ["0","1","1"]}"#;
const PARALLELOGRAM_OMEGA: &str = r#"{"format_version": 1, "vertices": [["0","0","1"], ["4","0","1"], ["5","3","1"], ["1","4","1"]], "g": ["0","0","1"]}"#;

fn projgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_projgeo")).args(args).output().unwrap()
}

fn script(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scripts").join(name).display().to_string()
}

fn text(b: &[u8]) -> String {
    String::from_utf8_lossy(b).into_owned()
}

fn write(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn generate_is_deterministic() {
    let a = projgeo(&["generate", "--seed", "7"]);
    let b = projgeo(&["generate", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, projgeo(&["generate", "--seed", "8"]).stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["format_version"], 1);
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 4);
}

#[test]
fn generate_omega_and_bad_bound() {
    let out = projgeo(&["generate", "--omega"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["g"], serde_json::json!(["0", "0", "1"]));
    let out = projgeo(&["generate", "--bound", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).starts_with("error:"));
}

#[test]
fn construct_reference_pair() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(&dir, "ref.json", REFERENCE);
    let out = projgeo(&["construct", input.to_str().unwrap(), "--pair", "12"]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let derived = &doc["derived"];
    assert_eq!(derived["M.12^3"], serde_json::json!(["228", "-48", "61"]));
    assert!(derived.get("G.12").is_some());
    assert!(derived.get("G.34").is_none());
    assert_eq!(derived["G"], serde_json::json!(["109", "31", "49"]));

    // the output is itself a valid input and re-validates
    let again = write(&dir, "built.json", &text(&out.stdout));
    let out = projgeo(&["construct", again.to_str().unwrap(), "--pair", "12"]);
    assert!(out.status.success());
}

#[test]
fn construct_omega_gives_midpoints() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(&dir, "omega.json", PARALLELOGRAM_OMEGA);
    let out = projgeo(&["construct", input.to_str().unwrap(), "--pair", "21"]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // midpoint of (0,0) and (4,0)
    assert_eq!(doc["derived"]["G.12"], serde_json::json!(["2", "0", "1"]));
}

#[test]
fn construct_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let missing = write(&dir, "missing.json", r#"{"format_version": 1, "vertices": [["0","0","1"]], "g": ["0","1","1"]}"#);
    let out = projgeo(&["construct", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("vertices"), "{}", text(&out.stderr));

    let good = write(&dir, "ref.json", REFERENCE);
    for args in [["--pair", "11"], ["--selection", "1123"]] {
        let out = projgeo(&["construct", good.to_str().unwrap(), args[0], args[1]]);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let out = projgeo(&["construct", dir.path().join("nope.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_single_check() {
    let out = projgeo(&["verify", "--check", "prop4", "--trials", "10"]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    let stdout = text(&out.stdout);
    assert_eq!(stdout.lines().count(), 1);
    let report: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(report["check_id"], "prop4");
    assert_eq!(report["passed"], true);
    assert!(report["failures"].as_array().unwrap().is_empty());
    assert_eq!(text(&out.stderr).trim(), "1 checks, 0 failed");

    let again = projgeo(&["verify", "--check", "prop4", "--trials", "10"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn verify_rejects_unknown_and_bad_config() {
    let out = projgeo(&["verify", "--check", "prop4", "--check", "nosuch"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(text(&out.stderr).contains("nosuch"));
    assert_eq!(projgeo(&["verify", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(projgeo(&["verify", "--bound", "0"]).status.code(), Some(2));
}

#[test]
fn run_exit_codes() {
    let ok = projgeo(&["run", &script("problem2.geo")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(text(&ok.stdout).lines().all(|l| l.starts_with("PASS") || l.ends_with("passed")));

    let failing = projgeo(&["run", &script("failing_assert.geo")]);
    assert_eq!(failing.status.code(), Some(1));
    assert!(text(&failing.stdout).contains("FAIL"));

    let broken = projgeo(&["run", &script("broken_syntax.geo")]);
    assert_eq!(broken.status.code(), Some(2));
    assert!(text(&broken.stderr).contains("broken_syntax.geo:2:16:"));

    let dir = tempfile::tempdir().unwrap();
    let degenerate = write(&dir, "d.geo", "point A = (0, 0)\nline l = join(A, A)\n");
    assert_eq!(projgeo(&["run", degenerate.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn render_hyperbola_has_two_branches() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(&dir, "ref.json", REFERENCE);
    let out = projgeo(&["render", input.to_str().unwrap(), "--preset", "ninepoint"]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    let svg = text(&out.stdout);
    assert!(svg.starts_with("<?xml"));
    assert_eq!(svg.matches(r#"<path class="k9""#).count(), 2);
}

#[test]
fn render_options() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(&dir, "ref.json", REFERENCE);
    let path = input.to_str().unwrap();
    let svg = dir.path().join("out.svg");
    let out = projgeo(&[
        "render", path, "--preset", "quartets", "--viewport", "-1,-1,6,5", "--width", "400", "--height", "300", "-o",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    let body = std::fs::read_to_string(&svg).unwrap();
    assert!(body.contains(r#"width="400""#) && body.contains(r#"height="300""#));

    assert_eq!(projgeo(&["render", path, "--preset", "nosuch"]).status.code(), Some(2));
    assert_eq!(projgeo(&["render", path, "--viewport", "1,1,0,0"]).status.code(), Some(2));
    assert_eq!(projgeo(&["render", path, "--viewport", "100,100,101,101"]).status.code(), Some(2));
}

#[test]
fn cases_lists_48() {
    let out = projgeo(&["cases"]);
    assert!(out.status.success());
    assert_eq!(text(&out.stdout).lines().count(), 48);
}
