//! The command-line front end: file grammar, rendering, exit status.

mod common;

use std::path::PathBuf;
use std::process::{Command, Output};

use accessibility::cli::{self, Flags, EXIT_CAP, EXIT_INPUT, EXIT_OK};
use accessibility::sysfile::SystemFile;
use common::system_file;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_accessibility"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn sys_path(name: &str) -> String {
    format!("{}/systems/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("accessibility-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn index_on_the_two_state_example() {
    let o = bin(&["index", &sys_path("ex41.sys")]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert!(stdout(&o).contains("r* = 2; S_∞: ⟨x1, x2⟩"), "{}", stdout(&o));
}

#[test]
fn singular_reports_the_closed_ideal() {
    let o = bin(&["singular", &sys_path("ex42.sys")]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert!(stdout(&o).contains("S_∞: ⟨x1^4, x1^2*x2, x1*x2^2, x2^3⟩"), "{}", stdout(&o));
}

#[test]
fn unicycle_rank_three_is_accessible_everywhere() {
    let o = bin(&["rank", "--l", "3", &sys_path("unicycle.sys")]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let text = stdout(&o);
    assert!(text.contains("empty intersection with im T"), "{text}");
    assert!(text.contains("accessible everywhere"), "{text}");
}

#[test]
fn structured_output_is_versioned_and_deterministic() {
    let args = ["full", "--format", "structured", "--seed", "11", &sys_path("ex41.sys")];
    let a = bin(&args);
    let b = bin(&args);
    assert_eq!(a.status.code(), Some(EXIT_OK));
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["analyses"][0]["index_value"], 2);
    assert_eq!(doc["diagnostics"]["mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn missing_component_is_a_positioned_error() {
    let path = temp_file("missing.sys", "vars x1 x2\ninput g1: x2\n");
    let o = bin(&["index", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(EXIT_INPUT));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("2:13") && err.contains("expected 2 components"), "{err}");
    std::fs::remove_file(&path).ok();
    let e = SystemFile::parse("vars x1 x2\ninput g1: x2\n").unwrap_err();
    assert!(e.to_string().starts_with("2:"), "{e}");
}

#[test]
fn unreadable_file_is_an_input_error() {
    let o = bin(&["index", "/nonexistent/system.sys"]);
    assert_eq!(o.status.code(), Some(EXIT_INPUT));
}

#[test]
fn strict_flag_turns_a_cap_into_a_failure() {
    let path = sys_path("ex41.sys");
    assert_eq!(bin(&["index", "--max-depth", "0", &path]).status.code(), Some(EXIT_OK));
    assert_eq!(bin(&["index", "--max-depth", "0", "--strict", &path]).status.code(), Some(EXIT_CAP));
    assert_eq!(bin(&["index", "--strict", &path]).status.code(), Some(EXIT_OK));
}

#[test]
fn files_round_trip_through_printing() {
    for name in ["ex31.sys", "ex41.sys", "ex42.sys", "unicycle.sys", "pendulum.sys", "sincos.sys"] {
        let parsed = SystemFile::parse(&system_file(name)).unwrap();
        let again = SystemFile::parse(&parsed.to_string()).unwrap();
        assert_eq!(parsed, again, "{name}");
        let a = parsed.load(None).unwrap().system;
        let b = again.load(None).unwrap().system;
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn two_state_example_parses_to_the_expected_fields() {
    let sys = common::load("ex41.sys");
    assert!(sys.drift().is_zero());
    let rows: Vec<Vec<String>> = sys
        .inputs()
        .iter()
        .map(|g| g.components().iter().map(ToString::to_string).collect())
        .collect();
    assert_eq!(rows, [["x2", "0"], ["0", "x1^2"]]);
}

#[test]
fn pendulum_file_parses_to_the_immersed_data() {
    let m = SystemFile::parse(&system_file("pendulum.sys")).unwrap().load(None).unwrap();
    assert_eq!(m.system.ring().nvars(), 7);
    assert_eq!(m.immersion.as_ref().unwrap().map.declared_relations().len(), 2);
    let f: Vec<String> = m.system.drift().components().iter().map(ToString::to_string).collect();
    assert_eq!(f[6], "2*z4*z5*z6*z7^2");
}

#[test]
fn immerse_without_an_immersion_block_is_rejected() {
    let err = cli::run(cli::Command::Immerse { check: true }, &system_file("ex41.sys"), &Flags::default());
    assert!(err.is_err());
}
