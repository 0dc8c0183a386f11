//! End-to-end checks of the binary: exit-code contract, document round
//! trips, and byte-stable outputs against committed golden files.

use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn ordim(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordim"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).expect("golden file")
}

#[test]
fn gen_dim_verify_happy_path() {
    let dir = TempDir::new().unwrap();
    let out = ordim(&["gen", "fn", "--n", "3", "--out-dir", "f3"], dir.path());
    assert_eq!(code(&out), 0, "{out:?}");

    let out = ordim(&["dim", "f3/poset.json", "--oracle"], dir.path());
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("dim 3"), "{text}");
    assert!(text.contains("oracle 3 (agrees)"), "{text}");

    let out = ordim(&["verify", "f3/poset.json", "f3/realizer.json"], dir.path());
    assert_eq!(code(&out), 0);
}

#[test]
fn verify_reports_violation_with_exit_two() {
    let dir = TempDir::new().unwrap();
    ordim(&["gen", "fn", "--n", "3", "--out-dir", "f3"], dir.path());
    // Drop one extension: some pair is never reversed.
    let path = dir.path().join("f3/realizer.json");
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let exts = doc["extensions"].as_array_mut().unwrap();
    exts.truncate(2);
    std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();

    let out = ordim(&["verify", "f3/poset.json", "f3/realizer.json"], dir.path());
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("never reversed"), "{err}");
}

#[test]
fn mismatched_element_sets_exit_one() {
    let dir = TempDir::new().unwrap();
    ordim(&["gen", "fn", "--n", "3", "--out-dir", "f3"], dir.path());
    ordim(&["gen", "fn", "--n", "4", "--out-dir", "f4"], dir.path());
    let out = ordim(&["verify", "f4/poset.json", "f3/realizer.json"], dir.path());
    assert_eq!(code(&out), 1);
}

#[test]
fn unreadable_input_exits_one() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("junk.json"), "{ not json").unwrap();
    let out = ordim(&["dim", "junk.json"], dir.path());
    assert_eq!(code(&out), 1);
}

#[test]
fn exhausted_budget_exits_three() {
    let dir = TempDir::new().unwrap();
    ordim(&["gen", "fn", "--n", "4", "--out-dir", "f4"], dir.path());
    let out = ordim(&["dim", "f4/poset.json", "--budget", "1"], dir.path());
    assert_eq!(code(&out), 3);
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("<= dim <="), "{err}");
}

#[test]
fn generated_documents_reparse_identically() {
    use ordim_cli::docs::{PosetDocument, RealizerDocument};
    let dir = TempDir::new().unwrap();
    ordim(&["gen", "fn", "--n", "4", "--out-dir", "f4"], dir.path());
    ordim(
        &[
            "gen",
            "variant",
            "--variant",
            "single-chain",
            "--first",
            "0",
            "--second",
            "1",
            "--levels",
            "2",
            "--out-dir",
            "v",
        ],
        dir.path(),
    );
    for file in ["f4/poset.json", "v/poset.json"] {
        let text = std::fs::read_to_string(dir.path().join(file)).unwrap();
        let doc: PosetDocument = serde_json::from_str(&text).unwrap();
        let mut rendered = serde_json::to_string_pretty(&doc).unwrap();
        rendered.push('\n');
        assert_eq!(text, rendered, "{file} round trip");
        assert!(doc.to_poset().is_ok(), "{file} parses to a valid poset");
    }
    for file in ["f4/realizer.json", "v/base-realizer.json"] {
        let text = std::fs::read_to_string(dir.path().join(file)).unwrap();
        let doc: RealizerDocument = serde_json::from_str(&text).unwrap();
        let mut rendered = serde_json::to_string_pretty(&doc).unwrap();
        rendered.push('\n');
        assert_eq!(text, rendered, "{file} round trip");
    }
}

#[test]
fn point_mode_extends_chain_plus_point() {
    let dir = TempDir::new().unwrap();
    // A chain with an isolated extra point: the sharp case for the point bound.
    std::fs::write(
        dir.path().join("poset.json"),
        r#"{
  "format_version": 1,
  "kind": "poset",
  "elements": ["a", "b", "c", "z"],
  "relation": [["a", "b"], ["b", "c"]],
  "marked_point": "z"
}
"#,
    )
    .unwrap();
    std::fs::write(
        dir.path().join("base.json"),
        r#"{
  "format_version": 1,
  "kind": "realizer",
  "extensions": [["a", "b", "c"]]
}
"#,
    )
    .unwrap();
    let out = ordim(
        &[
            "extend",
            "--mode",
            "point",
            "poset.json",
            "base.json",
            "--out",
            "ext.json",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{out:?}");
    assert!(stdout(&out).contains("extensions 1 -> 2"));
    let out = ordim(&["verify", "poset.json", "ext.json"], dir.path());
    assert_eq!(code(&out), 0);
}

#[test]
fn chain_extension_pipeline_reports_levels() {
    let dir = TempDir::new().unwrap();
    ordim(
        &[
            "gen",
            "variant",
            "--variant",
            "single-chain",
            "--first",
            "0,3",
            "--second",
            "1",
            "--levels",
            "4",
            "--out-dir",
            "v",
        ],
        dir.path(),
    );
    let out = ordim(
        &[
            "extend",
            "--mode",
            "incomparable-chains",
            "v/poset.json",
            "v/base-realizer.json",
            "--out",
            "v/ext.json",
            "--separator-threshold",
            "1",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("extensions 2 -> 4"), "{text}");
    let levels_line = text
        .lines()
        .find(|l| l.starts_with("levels"))
        .expect("levels line");
    assert!(
        levels_line.contains('0') && levels_line.contains('3'),
        "{levels_line}"
    );
    assert!(!levels_line.contains('1'), "{levels_line}");
}

#[test]
fn realizer_output_matches_golden_bytes() {
    let dir = TempDir::new().unwrap();
    ordim(&["gen", "fn", "--n", "3", "--out-dir", "f3"], dir.path());
    let produced = std::fs::read_to_string(dir.path().join("f3/realizer.json")).unwrap();
    assert_eq!(produced, golden("fn3-realizer.json"));
}

#[test]
fn diagonalize_matches_golden_transcript() {
    let dir = TempDir::new().unwrap();
    let config = golden("diag-config.json");
    std::fs::write(dir.path().join("diag.json"), config).unwrap();
    let out = ordim(
        &["diagonalize", "diag.json", "--out-dir", "out"],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{out:?}");
    let transcript = std::fs::read_to_string(dir.path().join("out/transcript.log")).unwrap();
    assert_eq!(transcript, golden("diag-transcript.log"));
    let verdicts = std::fs::read_to_string(dir.path().join("out/verdicts.txt")).unwrap();
    assert_eq!(verdicts, golden("diag-verdicts.txt"));
}

#[test]
fn consecutive_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    for run in ["one", "two"] {
        let sub = dir.path().join(run);
        std::fs::create_dir_all(&sub).unwrap();
        ordim(&["gen", "fn", "--n", "4", "--out-dir", "."], &sub);
        ordim(&["dim", "poset.json", "--witness-out", "w.json"], &sub);
    }
    for file in ["poset.json", "realizer.json", "w.json"] {
        let a = std::fs::read(dir.path().join("one").join(file)).unwrap();
        let b = std::fs::read(dir.path().join("two").join(file)).unwrap();
        assert_eq!(a, b, "{file}");
    }
}

#[test]
fn separate_and_dbp_reversal_round_trip() {
    let dir = TempDir::new().unwrap();
    std::fs::write(
        dir.path().join("inst.json"),
        r#"{
  "format_version": 1,
  "kind": "separator_instance",
  "elements": ["u0", "u1", "u2", "u3"],
  "lower": ["u0", "u1"],
  "upper": ["u2", "u3"]
}
"#,
    )
    .unwrap();
    let out = ordim(
        &[
            "separate",
            "inst.json",
            "--mode",
            "minimal",
            "--elements",
            "--xc1-roundtrip",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("separator {u0, u1}"), "{text}");
    assert!(
        text.contains("separator elements at instances {0}"),
        "{text}"
    );

    let out = ordim(
        &["gen", "dbp-reversal", "inst.json", "--out-dir", "dbp"],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{out:?}");
    let out = ordim(
        &[
            "extend",
            "--mode",
            "point",
            "dbp/poset.json",
            "dbp/realizer.json",
            "--out",
            "dbp/e.json",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{out:?}");
    let out = ordim(&["verify", "dbp/poset.json", "dbp/e.json"], dir.path());
    assert_eq!(code(&out), 0);
}

#[test]
fn remaining_gen_targets() {
    let dir = TempDir::new().unwrap();

    let out = ordim(
        &[
            "gen",
            "random",
            "--n",
            "6",
            "--density",
            "0.4",
            "--seed",
            "7",
            "--out-dir",
            "r",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{out:?}");
    let out = ordim(&["dim", "r/poset.json", "--oracle"], dir.path());
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("(agrees)"));

    let out = ordim(
        &[
            "gen",
            "pk",
            "--k",
            "4",
            "--first",
            "1",
            "--second",
            "0",
            "--levels",
            "3",
            "--out-dir",
            "pk",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{out:?}");
    let text = std::fs::read_to_string(dir.path().join("pk/poset.json")).unwrap();
    assert!(text.contains("\"levels\""), "level data present");

    let out = ordim(
        &[
            "gen",
            "sharpness",
            "--case",
            "one-chain",
            "--n",
            "2",
            "--out-dir",
            "s",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{out:?}");
    assert!(
        stdout(&out).contains("dim 4 before, 2 after"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn separate_rejects_unseparated_instance() {
    let dir = TempDir::new().unwrap();
    std::fs::write(
        dir.path().join("bad.json"),
        r#"{
  "format_version": 1,
  "kind": "separator_instance",
  "elements": ["u0", "u1"],
  "lower": ["u1"],
  "upper": ["u0"]
}
"#,
    )
    .unwrap();
    let out = ordim(&["separate", "bad.json"], dir.path());
    assert_eq!(code(&out), 1);
}
