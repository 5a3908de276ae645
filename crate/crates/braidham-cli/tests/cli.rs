//! Behavior tests for the binary: config file handling, output routing,
//! logging separation, and the report formats of each subcommand.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn braidham(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidham"))
        .args(args)
        .env_remove("BRAIDHAM_LOG")
        .output()
        .expect("binary launches")
}

fn braidham_with_log(args: &[&str], log: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidham"))
        .args(args)
        .env("BRAIDHAM_LOG", log)
        .output()
        .expect("binary launches")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("terminated normally")
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout is a JSON report")
}

fn stderr_text(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).to_string()
}

fn write_config(dir: &Path, contents: &str) -> String {
    let path = dir.join("braidham.conf");
    fs::write(&path, contents).expect("config written");
    path.to_str().expect("utf-8 path").to_string()
}

#[test]
fn config_file_supplies_missing_flags() {
    let dir = tempfile::tempdir().expect("tempdir");
    let config = write_config(dir.path(), "mass=3\npz=4\nformat=json\n");

    let out = braidham(&["derive", "--config", &config]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_text(&out));
    let report = stdout_json(&out);
    assert_eq!(report["inputs"]["m"].as_f64(), Some(3.0));
    assert_eq!(report["inputs"]["p"][2].as_f64(), Some(4.0));
    assert_eq!(report["pass"], Value::Bool(true));
}

#[test]
fn flags_override_config_values_key_by_key() {
    let dir = tempfile::tempdir().expect("tempdir");
    let config = write_config(dir.path(), "mass=1\npx=1\n");

    // mass comes from the flag, px survives from the file
    let out = braidham(&[
        "derive", "--config", &config, "--mass", "3", "--pz", "4", "--format", "json",
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_text(&out));
    let report = stdout_json(&out);
    assert_eq!(report["inputs"]["m"].as_f64(), Some(3.0));
    assert_eq!(report["inputs"]["p"][0].as_f64(), Some(1.0));
    assert_eq!(report["inputs"]["p"][2].as_f64(), Some(4.0));
}

#[test]
fn config_comments_and_blank_lines_are_ignored() {
    let dir = tempfile::tempdir().expect("tempdir");
    let config = write_config(
        dir.path(),
        "# full-line comment\n\nmass=3  # trailing comment\n   \npz=4\n",
    );

    let out = braidham(&["derive", "--config", &config]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_text(&out));
}

#[test]
fn unknown_config_key_is_an_input_error() {
    let dir = tempfile::tempdir().expect("tempdir");
    let config = write_config(dir.path(), "mass=3\nmasss=4\n");

    let out = braidham(&["derive", "--config", &config]);
    assert_eq!(exit_code(&out), 2);
    let stderr = stderr_text(&out);
    assert!(stderr.contains("unknown key 'masss'"), "stderr: {stderr}");
    assert!(stderr.contains("line 2"), "stderr: {stderr}");
}

#[test]
fn malformed_config_line_is_an_input_error() {
    let dir = tempfile::tempdir().expect("tempdir");
    let config = write_config(dir.path(), "mass 3\n");

    let out = braidham(&["derive", "--config", &config]);
    assert_eq!(exit_code(&out), 2);
    assert!(
        stderr_text(&out).contains("expected key=value"),
        "stderr: {}",
        stderr_text(&out)
    );
}

#[test]
fn missing_config_file_is_an_input_error() {
    let out = braidham(&[
        "derive",
        "--mass",
        "3",
        "--config",
        "/nonexistent/braidham.conf",
    ]);
    assert_eq!(exit_code(&out), 2);
    assert!(
        stderr_text(&out).contains("cannot read config file"),
        "stderr: {}",
        stderr_text(&out)
    );
}

#[test]
fn bad_format_value_in_config_is_an_input_error() {
    let dir = tempfile::tempdir().expect("tempdir");
    let config = write_config(dir.path(), "mass=3\npz=4\nformat=yaml\n");

    let out = braidham(&["derive", "--config", &config]);
    assert_eq!(exit_code(&out), 2);
    assert!(
        stderr_text(&out).contains("expected text or json"),
        "stderr: {}",
        stderr_text(&out)
    );
}

#[test]
fn out_flag_writes_the_report_to_a_file_instead_of_stdout() {
    let dir = tempfile::tempdir().expect("tempdir");
    let report_path = dir.path().join("report.json");
    let report_arg = report_path.to_str().expect("utf-8 path");

    let filed = braidham(&[
        "derive", "--mass", "3", "--pz", "4", "--format", "json", "--out", report_arg,
    ]);
    assert_eq!(exit_code(&filed), 0, "stderr: {}", stderr_text(&filed));
    assert!(filed.stdout.is_empty(), "report must not echo to stdout");

    let written = fs::read(&report_path).expect("report file exists");
    let report: Value = serde_json::from_slice(&written).expect("file holds a JSON report");
    assert_eq!(report["pass"], Value::Bool(true));

    // the file holds exactly what stdout would have carried
    let printed = braidham(&["derive", "--mass", "3", "--pz", "4", "--format", "json"]);
    assert_eq!(written, printed.stdout);
}

#[test]
fn diagnostics_go_to_stderr_and_never_touch_the_report() {
    let quiet = braidham(&["derive", "--mass", "3", "--pz", "4", "--format", "json"]);
    assert!(quiet.stderr.is_empty(), "quiet run must not write stderr");

    let loud = braidham_with_log(
        &["derive", "--mass", "3", "--pz", "4", "--format", "json"],
        "info",
    );
    assert_eq!(exit_code(&loud), 0);
    assert!(
        stderr_text(&loud).contains("derive"),
        "stderr: {}",
        stderr_text(&loud)
    );
    assert_eq!(
        quiet.stdout, loud.stdout,
        "logging must not change the report"
    );
}

#[test]
fn unknown_log_level_warns_and_stays_quiet() {
    let out = braidham_with_log(&["derive", "--mass", "3", "--pz", "4"], "chatty");
    assert_eq!(exit_code(&out), 0);
    assert!(
        stderr_text(&out).contains("unknown BRAIDHAM_LOG value 'chatty'"),
        "stderr: {}",
        stderr_text(&out)
    );
}

#[test]
fn braid_words_aba_and_bab_evaluate_to_the_same_matrix() {
    let left = braidham(&["braid-word", "--word", "aba", "--format", "json"]);
    let right = braidham(&["braid-word", "--word", "bab", "--format", "json"]);
    assert_eq!(exit_code(&left), 0);
    assert_eq!(exit_code(&right), 0);

    // equal as matrices, not as bytes: the two products round differently
    // in the last digit
    let left_matrix = stdout_json(&left)["matrix"].clone();
    let right_matrix = stdout_json(&right)["matrix"].clone();
    assert!(left_matrix.is_array());
    for row in 0..2 {
        for col in 0..2 {
            for part in 0..2 {
                let l = left_matrix[row][col][part].as_f64().expect("entry part");
                let r = right_matrix[row][col][part].as_f64().expect("entry part");
                assert!(
                    (l - r).abs() < 1e-12,
                    "entry ({row},{col}) differs: {l} vs {r}"
                );
            }
        }
    }
}

#[test]
fn double_exchange_word_has_order_four() {
    let out = braidham(&["braid-word", "--word", "abba", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["order"].as_u64(), Some(4));
    assert_eq!(report["minus_identity_powers"], serde_json::json!([2]));
}

#[test]
fn full_twist_word_is_the_identity() {
    let out = braidham(&["braid-word", "--word", "aaaaaaaa", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["order"].as_u64(), Some(1));
    let diagonal = report["matrix"][0][0][0]
        .as_f64()
        .expect("real part present");
    assert!((diagonal - 1.0).abs() < 1e-12);
}

#[test]
fn word_parse_error_reports_the_character_position() {
    let out = braidham(&["braid-word", "--word", "abxb"]);
    assert_eq!(exit_code(&out), 2);
    let stderr = stderr_text(&out);
    assert!(stderr.contains("'x'"), "stderr: {stderr}");
    assert!(stderr.contains("position 2"), "stderr: {stderr}");
}

#[test]
fn word_can_come_from_the_config_file() {
    let dir = tempfile::tempdir().expect("tempdir");
    let config = write_config(dir.path(), "word=aba\nformat=json\n");

    let out = braidham(&["braid-word", "--config", &config]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_text(&out));
    assert_eq!(
        stdout_json(&out)["inputs"]["word"],
        Value::String("aba".into())
    );
}

#[test]
fn solve_b_reports_the_partner_in_json() {
    let out = braidham(&["solve-b", "--format", "json"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_text(&out));
    let report = stdout_json(&out);
    assert_eq!(report["found"], Value::Bool(true));
    assert!(report["residual"].as_f64().expect("residual present") < 1e-10);
    assert!(report["b"].is_array());
    assert!(report["matches_fixed_partner"].is_boolean());
}

#[test]
fn single_sample_sweep_reruns_identically() {
    let first = braidham(&["sweep", "--samples", "1", "--seed", "0", "--format", "json"]);
    let second = braidham(&["sweep", "--samples", "1", "--seed", "0", "--format", "json"]);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn derive_text_report_names_every_check() {
    let out = braidham(&["derive", "--mass", "3", "--pz", "4"]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    for name in [
        "v_unitarity",
        "diagonalization",
        "r1_block_form",
        "braid_relation",
        "r2_back_conjugation",
        "h_closed_form",
        "h_involution",
        "h_hermiticity",
        "anticommutation",
        "bogoliubov_match",
        "energy_match",
    ] {
        assert!(text.contains(name), "missing check '{name}' in:\n{text}");
    }
    assert!(text.contains("pass: true"), "text:\n{text}");
    assert!(text.contains("orders: a=8 b=8"), "text:\n{text}");
}

#[test]
fn missing_subcommand_is_an_input_error() {
    let out = braidham(&[]);
    assert_eq!(exit_code(&out), 2);

    let help = braidham(&["--help"]);
    assert_eq!(exit_code(&help), 0);
}
