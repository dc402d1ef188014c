use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn ipo<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_ipo")).args(args).output().expect("run ipo")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn enumerate_matches_golden_counts() {
    let out = ipo(["enumerate", "--class", "ipo_semigroup", "--size", "1-6"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), golden("enumerate_ipo_semigroup_1-6.txt"));

    let out = ipo(["enumerate", "--class", "comm_idem_ipo_monoid", "--size", "1-8"]);
    assert_eq!(stdout(&out), golden("enumerate_comm_idem_ipo_monoid_1-8.txt"));
}

#[test]
fn enumerate_output_is_independent_of_workers() {
    let run = |w: &str| stdout(&ipo(["enumerate", "--class", "loc_int_ipo_semigroup", "--size", "1-6", "--retain", "--workers", w]));
    let one = run("1");
    assert_eq!(one, run("4"));
    assert_eq!(one, run("0"));
}

#[test]
fn enumerate_over_budget_is_a_usage_error() {
    let out = ipo(["enumerate", "--class", "ipo_semigroup", "--size", "40"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    assert!(out.stdout.is_empty());
}

#[test]
fn enumerate_rejects_bad_arguments() {
    assert_eq!(code(&ipo(["enumerate", "--class", "groups", "--size", "3"])), 2);
    assert_eq!(code(&ipo(["enumerate", "--class", "ipo_semigroup", "--size", "5-3"])), 2);
    assert_eq!(code(&ipo(["enumerate", "--class", "ipo_semigroup", "--size", "0"])), 2);
}

#[test]
fn enumerate_json_rows() {
    let out = ipo(["--format", "json", "enumerate", "--class", "boolean_algebra", "--size", "4", "--retain"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["count"], 1);
    assert_eq!(v[0]["representatives"].as_array().unwrap().len(), 1);
}

#[test]
fn check_report_matches_golden() {
    let out = ipo([Path::new("check"), &data("local_identities.json")]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), golden("check_local_identities.txt"));
}

#[test]
fn check_json_lists_classes() {
    let out = ipo([Path::new("--format"), Path::new("json"), Path::new("check"), &data("two.json")]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["flags"]["ipo_semigroup"], true);
    let classes: Vec<&str> = v["classes"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert!(classes.contains(&"boolean_algebra"));
}

#[test]
fn check_fails_on_a_broken_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(data("two.json")).unwrap()).unwrap();
    // identity negations are not antitone
    doc["payload"]["tilde"] = serde_json::json!([0, 1]);
    doc["payload"]["minus"] = serde_json::json!([0, 1]);
    let path = dir.path().join("broken.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = ipo([Path::new("check"), &path]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("antitone               false"));
}

#[test]
fn malformed_documents_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ \"format_version\": 1,\n  \"kind\": \"algebra\", oops }").unwrap();
    let out = ipo([Path::new("check"), &path]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(code(&ipo(["check", "/nonexistent/file.json"])), 2);
}

#[test]
fn strict_mode_rejects_unknown_fields() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(data("two.json")).unwrap()).unwrap();
    doc["payload"]["colour"] = serde_json::json!("red");
    let path = dir.path().join("extra.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    assert_eq!(code(&ipo([Path::new("check"), &path])), 0);
    let out = ipo([Path::new("--strict"), Path::new("check"), &path]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("payload.colour"));
}

#[test]
fn decompose_then_glue_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let src = data("non_lattice.json");
    let out = ipo([Path::new("--format"), Path::new("json"), Path::new("decompose"), &src]);
    assert_eq!(code(&out), 0);
    let sys = dir.path().join("system.json");
    std::fs::write(&sys, &out.stdout).unwrap();
    let out = ipo([Path::new("glue"), &sys]);
    assert_eq!(code(&out), 0);
    let glued = dir.path().join("glued.json");
    std::fs::write(&glued, &out.stdout).unwrap();
    assert_eq!(code(&ipo([Path::new("iso"), &src, &glued])), 0);
}

#[test]
fn decompose_rejects_non_locally_integral() {
    assert_eq!(code(&ipo([Path::new("decompose"), &data("noncyclic.json")])), 1);
}

#[test]
fn glue_reports_defects() {
    let out = ipo([Path::new("glue"), &data("diamond_system.json")]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), golden("glue_diamond_system.txt"));
}

#[test]
fn linear_glue_of_two_under_four() {
    let out = ipo([Path::new("glue"), Path::new("--linear"), &data("two.json"), &data("boolean_square.json")]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["payload"]["tilde"].as_array().unwrap().len(), 6);
    assert_eq!(v["payload"]["unit"], 1);
}

#[test]
fn subreduct_and_extend_agree() {
    let bad = data("local_identities.json");
    assert_eq!(code(&ipo([Path::new("subreduct"), &bad])), 1);
    assert_eq!(code(&ipo([Path::new("extend"), &bad])), 1);

    let good = data("non_lattice.json");
    assert_eq!(code(&ipo([Path::new("subreduct"), &good])), 0);
    let out = ipo([Path::new("extend"), &good]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["payload"]["unit"].is_u64());
    assert_eq!(v["metadata"]["embedding"].as_array().unwrap().len(), 8);
}

#[test]
fn extend_with_a_custom_bottom() {
    let out = ipo([Path::new("extend"), &data("non_lattice.json"), Path::new("--bottom"), &data("l3.json")]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["payload"]["tilde"].as_array().unwrap().len(), 11);
}

#[test]
fn dualize_matches_golden_and_primalizes_back() {
    let src = data("non_lattice.json");
    let out = ipo([Path::new("dualize"), &src]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), golden("dualize_non_lattice.json"));

    let dir = tempfile::tempdir().unwrap();
    let dual = dir.path().join("dual.json");
    std::fs::write(&dual, &out.stdout).unwrap();
    let out = ipo([Path::new("primalize"), &dual]);
    assert_eq!(code(&out), 0);
    let back = dir.path().join("back.json");
    std::fs::write(&back, &out.stdout).unwrap();
    assert_eq!(code(&ipo([Path::new("iso"), &src, &back])), 0);
}

#[test]
fn dualize_refuses_non_idempotent() {
    assert_eq!(code(&ipo([Path::new("dualize"), &data("l3.json")])), 1);
}

#[test]
fn primalized_duals_have_the_advertised_sizes() {
    for (file, n) in [("dual13.json", 13), ("dual14.json", 14)] {
        let out = ipo([Path::new("primalize"), &data(file)]);
        assert_eq!(code(&out), 0);
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["payload"]["tilde"].as_array().unwrap().len(), n);
    }
}

#[test]
fn export_matches_golden() {
    let out = ipo([Path::new("export"), Path::new("--mode"), Path::new("dual"), &data("dual14.json")]);
    assert_eq!(stdout(&out), golden("export_dual14.dot"));
    let out = ipo([Path::new("export"), Path::new("--mode"), Path::new("order"), &data("local_identities.json")]);
    assert_eq!(stdout(&out), golden("export_order_local_identities.dot"));
}

#[test]
fn export_mode_must_fit_the_document() {
    let out = ipo([Path::new("export"), Path::new("--mode"), Path::new("order"), &data("dual14.json")]);
    assert_eq!(code(&out), 2);
    let out = ipo([Path::new("export"), Path::new("--mode"), Path::new("mult_order"), &data("l3.json")]);
    assert_eq!(code(&out), 2);
}

#[test]
fn iso_compares_like_with_like() {
    assert_eq!(code(&ipo([Path::new("iso"), &data("two.json"), &data("two.json")])), 0);
    assert_eq!(code(&ipo([Path::new("iso"), &data("two.json"), &data("l3.json")])), 1);
    assert_eq!(code(&ipo([Path::new("iso"), &data("dual13.json"), &data("dual13.json")])), 0);
    assert_eq!(code(&ipo([Path::new("iso"), &data("dual13.json"), &data("dual14.json")])), 1);
    assert_eq!(code(&ipo([Path::new("iso"), &data("two.json"), &data("dual14.json")])), 2);
}
