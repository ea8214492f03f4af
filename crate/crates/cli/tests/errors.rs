//! Exit codes, error attribution and counterexample replay, driven through
//! the real binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sepmm_cli::replay::CounterexampleFile;
use sepmm_cli::{CliError, ModelFile};
use sepmm_core::verify::{generate_case, BoundKind, Check, Counterexample, Suite};
use tempfile::TempDir;

fn sepmm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepmm"))
        .args(args)
        .output()
        .unwrap()
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const QUBIT_HEADER: &str = r#""version": "1",
  "states": {
    "zero": [[[1,0],[0,0]],[[0,0],[0,0]]],
    "qutrit": [[[1,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0]]]
  }"#;

const Z_OBSERVABLE: &str = r#""z": {
      "outcomes": [{"label": "up", "value": 1}, {"label": "down", "value": -1}],
      "effects": [[[[1,0],[0,0]],[[0,0],[0,0]]], [[[0,0],[0,0]],[[0,0],[1,0]]]]
    }"#;

#[test]
fn minimal_file_loads() {
    let dir = TempDir::new().unwrap();
    let text = format!("{{ {QUBIT_HEADER}, \"observables\": {{ {Z_OBSERVABLE} }} }}");
    let path = write(&dir, "min.json", &text);
    let out = sepmm(&["validate", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(String::from_utf8_lossy(&out.stdout).contains("2 states, 1 observables"));
}

#[test]
fn broken_completeness_names_the_observable() {
    let dir = TempDir::new().unwrap();
    let text = format!(
        r#"{{ {QUBIT_HEADER}, "observables": {{ "leaky": {{
      "outcomes": [{{"label": "up"}}, {{"label": "down"}}],
      "effects": [[[[1,0],[0,0]],[[0,0],[0,0]]], [[[0,0],[0,0]],[[0,0],[0.5,0]]]]
    }} }} }}"#
    );
    let path = write(&dir, "leaky.json", &text);
    let out = sepmm(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(
        err.contains("ValidationError in observables.leaky"),
        "{err}"
    );
    assert!(err.contains("IncompleteObservable"), "{err}");
}

#[test]
fn mismatched_dims_is_an_input_error() {
    let out = sepmm(&[
        "measure",
        &fixture("luders_delta.json"),
        "--model",
        "z_meter",
        "--state",
        "zero",
    ]);
    assert!(out.status.success());

    let dir = TempDir::new().unwrap();
    let mut file: ModelFile =
        serde_json::from_str(&std::fs::read_to_string(fixture("luders_delta.json")).unwrap())
            .unwrap();
    let qutrit: ModelFile = serde_json::from_str(&format!("{{ {QUBIT_HEADER} }}")).unwrap();
    file.states
        .insert("qutrit".into(), qutrit.states["qutrit"].clone());
    let path = write(&dir, "dims.json", &file.to_canonical_json());
    let out = sepmm(&[
        "measure",
        path.to_str().unwrap(),
        "--model",
        "z_meter",
        "--state",
        "qutrit",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("DimensionMismatch"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn channel_with_wrong_probe_state_count_is_rejected() {
    let dir = TempDir::new().unwrap();
    let text = format!(
        r#"{{ {QUBIT_HEADER}, "observables": {{ {Z_OBSERVABLE} }},
  "instruments": {{ "l": {{"kind": "luders", "observable": "z"}} }},
  "channels": {{ "nu": {{"instrument": "l", "probe_states": ["zero"]}} }} }}"#
    );
    let path = write(&dir, "count.json", &text);
    let out = sepmm(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("channels.nu"), "{}", stderr(&out));
}

#[test]
fn missing_outcome_values_are_reported_by_label() {
    let out = sepmm(&[
        "stats",
        &fixture("kraus_product.json"),
        "--model",
        "sequential",
        "--state",
        "plus",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(
        err.contains("NotRealValued") && err.contains("(up,plus)"),
        "{err}"
    );
}

#[test]
fn unresolved_reference_and_cycles() {
    let dir = TempDir::new().unwrap();
    let text = format!(
        r#"{{ {QUBIT_HEADER}, "instruments": {{ "l": {{"kind": "luders", "observable": "nope"}} }} }}"#
    );
    let path = write(&dir, "unresolved.json", &text);
    let out = sepmm(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("UnresolvedReference in instruments.l"),
        "{}",
        stderr(&out)
    );

    let text = format!(
        r#"{{ {QUBIT_HEADER}, "models": {{
      "a": {{"kind": "sequential", "first": "b", "second": "b"}},
      "b": {{"kind": "conditioned", "given": "a", "then": "a"}} }} }}"#
    );
    let file = ModelFile::parse(&text).unwrap();
    assert!(matches!(
        sepmm_cli::resolve(&file),
        Err(CliError::Cycle { .. })
    ));
}

#[test]
fn parse_errors_carry_positions_and_reject_unknown_fields() {
    let err = ModelFile::parse("{\n  \"version\": \"1\",\n  \"states\": {\n    \"x\": [[[1, 0]]]\n  },\n  \"colour\": 1\n}")
        .unwrap_err();
    match err {
        CliError::Parse { line, message, .. } => {
            assert_eq!(line, 6);
            assert!(message.contains("colour"), "{message}");
        }
        other => panic!("unexpected {other}"),
    }
    let err = ModelFile::parse("{\"version\": \"1\",\n\"states\": {\"x\": [[[1, 0], [0, 0]]]}}")
        .unwrap_err();
    assert!(matches!(err, CliError::Parse { line: 2, .. }), "{err}");
    assert!(ModelFile::parse("{\"version\": \"2\"}").is_err());
}

#[test]
fn canonical_form_is_a_fixed_point() {
    let out = sepmm(&["validate", "--canonical", &fixture("holevo_product.json")]);
    assert!(out.status.success());
    let dir = TempDir::new().unwrap();
    let path = write(
        &dir,
        "canon.json",
        &String::from_utf8(out.stdout.clone()).unwrap(),
    );
    let again = sepmm(&["validate", "--canonical", path.to_str().unwrap()]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn invalid_verify_config_is_an_input_error() {
    let out = sepmm(&["verify", "--seed", "1", "--trials", "0", "--dims", "2,2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = sepmm(&["verify", "--seed", "1", "--trials", "1", "--dims", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = sepmm(&[
        "verify", "--seed", "1", "--trials", "1", "--dims", "2,2", "--suites", "thm99",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_and_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let ce = dir.path().join("ce.json");
    let args = [
        "verify",
        "--seed",
        "5",
        "--trials",
        "5",
        "--dims",
        "2,3",
        "--suites",
        "thm31,thm42",
        "--counterexample",
        ce.to_str().unwrap(),
    ];
    let (a, b) = (sepmm(&args), sepmm(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.contains("suite thm31 trials 5 PASS"));
    assert!(text.contains("suite thm42 trials 5 PASS"));
    assert!(!ce.exists());
}

fn counterexample(suite: Suite) -> CounterexampleFile {
    let case = generate_case(suite, 3, 0, 2, 2).unwrap();
    CounterexampleFile::from_counterexample(&Counterexample {
        suite,
        master_seed: 3,
        trial: 0,
        check: Check {
            name: "branch",
            value: 1.0,
            limit: 1e-9,
            kind: BoundKind::AtMost,
        },
        case,
    })
}

#[test]
fn replay_of_a_sound_case_passes() {
    let dir = TempDir::new().unwrap();
    for suite in Suite::ALL {
        let path = write(&dir, "ok.json", &counterexample(suite).to_json());
        let out = sepmm(&["replay", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{suite}: {}", stderr(&out));
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains("recorded branch = 1.00000000000e0"));
        assert!(text.ends_with("result PASS\n"));
    }
}

#[test]
fn corrupted_channel_fails_validation_not_the_check() {
    let dir = TempDir::new().unwrap();
    let mut file = counterexample(Suite::Lemma21);
    let k = &mut file.case.models[0].alpha.kraus_lists[0][0];
    *k = k.scale_real(1.5);
    let path = write(&dir, "bad.json", &file.to_json());
    let out = sepmm(&["replay", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(
        err.contains("ValidationError in case.models[0].alpha"),
        "{err}"
    );
    assert!(out.stdout.is_empty());
}

#[test]
fn replay_rejects_a_case_of_the_wrong_shape() {
    let dir = TempDir::new().unwrap();
    let mut file = counterexample(Suite::Lemma21);
    file.suite = "thm31".into();
    let path = write(&dir, "short.json", &file.to_json());
    let out = sepmm(&["replay", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}
