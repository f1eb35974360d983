//! End-to-end checks of the `repdim` binary: output shapes, the exit-code
//! contract (0 ok, 1 mismatch, 2 parse error, 3 bound), flags, and the
//! cache lifecycle.

use std::path::Path;
use std::process::{Command, Output};

fn repdim(args: &[&str], cache_dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repdim"))
        .args(args)
        .env("REPDIM_CACHE", cache_dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn table_emits_schema_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = repdim(&["table", "symmetric(3)", "--cache", "off"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let json: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(json["spec"], "symmetric(3)");
    assert_eq!(json["order"], 6);
    assert_eq!(json["conductor"], 6);
    assert_eq!(json["classes"].as_array().unwrap().len(), 3);
    assert_eq!(json["characters"].as_array().unwrap().len(), 3);
    assert_eq!(json["characters"][2]["degree"], 2);
    // Cyclo serialization shape.
    assert!(json["characters"][0]["values"][0]["e"].is_u64());
    assert!(json["characters"][0]["values"][0]["coeffs"].is_array());
}

#[test]
fn table_of_a_generator_given_group() {
    let dir = tempfile::tempdir().unwrap();
    let out = repdim(&["table", "perm(3:\"(1,2)\")", "--cache", "off"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let json: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(json["order"], 2);
    assert_eq!(json["characters"].as_array().unwrap().len(), 2);
    assert_eq!(json["spec"], "perm(3:\"(1,2)\")");
}

#[test]
fn pretty_table_renders_zeta_notation() {
    let dir = tempfile::tempdir().unwrap();
    let out = repdim(&["table", "cyclic(3)", "--pretty", "--cache", "off"], dir.path());
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("Character table of cyclic(3)"), "{text}");
    assert!(text.contains('\u{3b6}'), "zeta notation expected: {text}");
    assert!(text.contains("chi_2"), "{text}");
}

#[test]
fn delta_prints_value_then_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = repdim(
        &["delta", "product(alternating(4),dihedral(10))", "--cache", "off"],
        dir.path(),
    );
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("5"));
    let witness = lines.next().unwrap();
    assert!(witness.starts_with("witness:"), "{witness}");
    assert!(witness.contains("degree 2") && witness.contains("degree 3"), "{witness}");
}

#[test]
fn delta_irr_and_gap_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = repdim(&["delta-irr", "abelian(2,2)", "--cache", "off"], dir.path());
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "does not exist");

    let zero = repdim(
        &["delta-irr", "abelian(2,2)", "--gap-zero", "--cache", "off"],
        dir.path(),
    );
    assert_eq!(stdout(&zero).trim(), "0");

    let some = repdim(&["delta-irr", "dicyclic(8)", "--cache", "off"], dir.path());
    assert_eq!(stdout(&some).trim(), "2");

    let cyclic = repdim(&["delta", "cyclic(9)", "--cache", "off"], dir.path());
    assert_eq!(stdout(&cyclic).lines().next(), Some("1"));
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for bad in ["nonsense(3)", "cyclic(", "perm(3:\"(1,5)\")", "dihedral(7)"] {
        let out = repdim(&["table", bad, "--cache", "off"], dir.path());
        assert_eq!(out.status.code(), Some(2), "{bad}: {}", stderr(&out));
    }
}

#[test]
fn order_bound_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = repdim(&["table", "symmetric(8)", "--cache", "off"], dir.path());
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    let tight = repdim(
        &["delta", "cyclic(100)", "--bound", "10", "--cache", "off"],
        dir.path(),
    );
    assert_eq!(tight.status.code(), Some(3));
}

#[test]
fn verify_passes_on_formula_families() {
    let dir = tempfile::tempdir().unwrap();
    for spec in ["extraspecial(2,32,plus)", "frobenius72()", "symmetric(6)", "cyclic(6)"] {
        let out = repdim(&["verify", spec, "--cache", "off"], dir.path());
        assert!(out.status.success(), "{spec}: {}", stderr(&out));
        let text = stdout(&out);
        assert!(text.contains("all checks passed"), "{spec}: {text}");
    }
    // Prediction values surface in the report.
    let out = repdim(&["verify", "extraspecial(2,32,plus)", "--cache", "off"], dir.path());
    assert!(stdout(&out).contains("delta = 4"));
    let out = repdim(&["verify", "frobenius72()", "--cache", "off"], dir.path());
    assert!(stdout(&out).contains("delta = 8"));
    let out = repdim(&["verify", "symmetric(6)", "--cache", "off"], dir.path());
    assert!(stdout(&out).contains("delta = 5"));
}

/// The closed-form coprime-product value disagrees with the exact
/// computation (5 vs 6); verify must report the mismatch and exit 1.
#[test]
fn verify_reports_the_known_product_formula_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let out = repdim(
        &["verify", "product(frobenius_affine(7,2),dicyclic(8))", "--cache", "off"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let text = stderr(&out);
    assert!(text.contains("MISMATCH"), "{text}");
    assert!(text.contains("predicted delta 6"), "{text}");
}

#[test]
fn export_import_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("table.json");
    let out = repdim(
        &["export", "dicyclic(8)", file.to_str().unwrap(), "--cache", "off"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let imported = repdim(&["import", file.to_str().unwrap(), "--cache", "off"], dir.path());
    assert!(imported.status.success(), "{}", stderr(&imported));
    let text = stdout(&imported);
    assert!(text.contains("orthogonality: ok"), "{text}");
    assert!(text.contains("delta = 2"), "{text}");
    assert!(text.contains("delta_irr = 2"), "{text}");

    // Tampered import fails verification with exit 1.
    let payload = std::fs::read_to_string(&file).unwrap();
    let bad = payload.replacen("\"degree\":2", "\"degree\":3", 1);
    let bad_file = dir.path().join("bad.json");
    std::fs::write(&bad_file, bad).unwrap();
    let rejected = repdim(&["import", bad_file.to_str().unwrap(), "--cache", "off"], dir.path());
    assert_eq!(rejected.status.code(), Some(1), "{}", stdout(&rejected));
}

#[test]
fn cache_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    // Two cold runs in separate processes agree byte for byte.
    let cold_a = repdim(&["table", "symmetric(4)", "--cache", "off"], dir.path());
    let cold_b = repdim(&["table", "symmetric(4)", "--cache", "off"], dir.path());
    assert!(cold_a.status.success(), "{}", stderr(&cold_a));
    assert_eq!(stdout(&cold_a), stdout(&cold_b), "cold runs are deterministic");

    let cold = repdim(&["table", "symmetric(4)"], dir.path());
    assert!(cold.status.success(), "{}", stderr(&cold));
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1, "one cache entry written");
    let warm = repdim(&["table", "symmetric(4)"], dir.path());
    assert_eq!(stdout(&cold), stdout(&warm), "cache hit is byte-identical");
    assert_eq!(stdout(&cold), stdout(&cold_a), "cached equals cold");
}

#[test]
fn poisoned_cache_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let cold = repdim(&["table", "symmetric(4)"], dir.path());
    assert!(cold.status.success());
    let entry = std::fs::read_dir(dir.path())
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    let poisoned = std::fs::read_to_string(&entry)
        .unwrap()
        .replace("\\\"order\\\":24", "\\\"order\\\":25");
    std::fs::write(&entry, poisoned).unwrap();
    let out = repdim(&["table", "symmetric(4)"], dir.path());
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    assert!(stderr(&out).contains("checksum"), "{}", stderr(&out));
}

#[test]
fn cache_modes_off_and_ro() {
    let dir = tempfile::tempdir().unwrap();
    let off = repdim(&["table", "cyclic(5)", "--cache", "off"], dir.path());
    assert!(off.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0, "off writes nothing");
    let ro = repdim(&["table", "cyclic(5)", "--cache", "ro"], dir.path());
    assert!(ro.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0, "ro writes nothing");
    let rw = repdim(&["table", "cyclic(5)"], dir.path());
    assert!(rw.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn corpus_filter_runs_matching_criteria() {
    let dir = tempfile::tempdir().unwrap();
    let out = repdim(&["corpus", "--filter", "symmetric", "--cache", "off"], dir.path());
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("PASS criterion  6"), "{text}");
    assert!(!text.contains("criterion  1:"), "{text}");

    // Case-insensitive: the Frobenius-family criteria.
    let fr = repdim(&["corpus", "--filter", "frobenius", "--cache", "off"], dir.path());
    assert!(fr.status.success(), "{}", stdout(&fr));
    let text = stdout(&fr);
    assert!(text.contains("PASS criterion 10"), "{text}");
    assert!(text.contains("PASS criterion 11"), "{text}");
    assert_eq!(text.lines().count(), 2, "{text}");

    let none = repdim(&["corpus", "--filter", "zzz", "--cache", "off"], dir.path());
    assert_eq!(none.status.code(), Some(1));
}

/// The full corpus honestly reports the two criteria whose pinned
/// closed-form values the exact computation refutes, and exits nonzero.
#[test]
fn full_corpus_reports_thirteen_passes_and_the_two_known_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = repdim(&["corpus", "--cache", "off"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let passes = text.lines().filter(|l| l.starts_with("PASS")).count();
    let fails: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(passes, 13, "{text}");
    assert_eq!(fails.len(), 2, "{text}");
    assert!(fails[0].contains("criterion 13"), "{text}");
    assert!(fails[1].contains("criterion 14"), "{text}");
    assert!(text.contains("PASS criterion 15"), "{text}");
}
