use std::path::{Path, PathBuf};
use std::process::Command;

use proptest::prelude::*;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_parhom"));
    for var in ["PARHOM_BUDGET_VERTICES", "PARHOM_BUDGET_CANDIDATES", "PARHOM_BUDGET_INSTANCE"] {
        c.env_remove(var);
    }
    c
}

fn run(args: &[&str]) -> parhom_cli::Outcome {
    parhom_cli::run(std::iter::once("parhom").chain(args.iter().copied()))
}

fn report(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let json = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.code, json)
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn reducible_host_is_polynomial() {
    let out = bin().arg("classify").arg(fixture("fig1-h2.graph")).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("polynomial"));
    let (code, r) = report(&["classify", s(&fixture("fig1-h2.graph"))]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["kind"], "polynomial");
    assert_eq!(r["schema"], parhom_cli::SCHEMA);
}

#[test]
fn square_free_rigid_host_is_hard() {
    let (code, r) = report(&["classify", s(&fixture("fig1-h1.graph"))]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["kind"], "parity-p-complete");
}

#[test]
fn edge_into_triangle_has_even_count() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.graph", "vertices: a b\na b\n");
    let h = write(dir.path(), "h.graph", "vertices: x y z\nx y\ny z\nx z\n");
    let (code, r) = report(&["count", "--mod2", s(&g), s(&h)]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["parity"], 0);
    let (_, r) = report(&["count", "--exact", s(&g), s(&h)]);
    assert_eq!(r["result"]["count"]["exact"], "6");
    let pins = write(dir.path(), "p.pins", "a -> x\n");
    let (_, r) = report(&["count", s(&g), s(&h), "--pinning", s(&pins)]);
    assert_eq!(r["result"]["count"]["exact"], "2");
}

#[test]
fn stored_certificate_passes_the_small_battery() {
    let out = bin()
        .args(["verify", "--gadget"])
        .arg(fixture("tree7.cert.json"))
        .arg("--host")
        .arg(fixture("tree7.graph"))
        .args(["--battery", "small"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let (code, r) = report(&[
        "verify",
        "--gadget",
        s(&fixture("tree7.cert.json")),
        "--host",
        s(&fixture("tree7.graph")),
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["host_digest_matches"], true);
    assert!(r["result"]["accepted"].as_u64().unwrap() > 20);
}

#[test]
fn certificate_rejected_on_the_wrong_host() {
    let (code, r) = report(&[
        "gadget",
        s(&fixture("fig1-h1.graph")),
        "--verify",
        s(&fixture("tree7.cert.json")),
    ]);
    assert_eq!(code, 1);
    assert_eq!(r["result"]["host_digest_matches"], false);
    assert_eq!(r["result"]["verdict"]["verdict"], "rejected");
}

#[test]
fn gadget_round_trip_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    let host = fixture("fig1-h1.graph");
    let out = run(&["gadget", s(&host), "--out", s(&cert)]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let (code, r) = report(&["gadget", s(&host), "--verify", s(&cert)]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["host_digest_matches"], true);
    let g = write(dir.path(), "p3.graph", "vertices: a b c\na b\nb c\n");
    let inst = dir.path().join("j.json");
    let (code, r) = report(&["compile", s(&g), "--gadget", s(&cert), "--host", s(&host), "--out", s(&inst)]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["edge_anchors"].as_array().unwrap().len(), 2);
    let stored: Value = serde_json::from_str(&std::fs::read_to_string(&inst).unwrap()).unwrap();
    assert_eq!(stored["payload_sha256"], r["payload_sha256"]);
    let (code, r) = report(&["verify", "--gadget", s(&cert), "--host", s(&host), "--graph", s(&g)]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["graphs"], 1);
}

#[test]
fn malformed_graph_reports_its_line() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "bad.graph", "# comment\nvertices: a b\na c\n");
    let out = run(&["classify", s(&g)]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);
    assert!(out.stderr.contains("bad.graph"));
    let cert = write(dir.path(), "bad.json", "{\n  \"gadget\": [\n");
    let out = run(&["gadget", s(&fixture("tree7.graph")), "--verify", s(&cert)]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("bad.json:3"), "{}", out.stderr);
    let out = run(&["classify", s(&dir.path().join("missing.graph"))]);
    assert_eq!(out.code, 2);
    assert_eq!(run(&["classify"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
}

#[test]
fn precondition_failure_exits_one() {
    // the Petersen graph has an involution, so the gadget search refuses it
    let out = run(&["gadget", s(&fixture("petersen.graph"))]);
    assert_eq!(out.code, 1, "{}", out.stderr);
}

#[test]
fn exhausted_budget_is_inconclusive() {
    let (code, r) = report(&["--budget-candidates", "1", "classify", s(&fixture("bipartite-odd.graph"))]);
    assert_eq!(code, 3);
    assert_eq!(r["result"]["kind"], "inconclusive");
    assert_eq!(r["budget"]["max_candidates"], 1);
}

#[test]
fn reports_are_reproducible() {
    for args in [
        vec!["classify", "fig1-h1.graph"],
        vec!["analyze", "petersen.graph"],
        vec!["reduce", "fig3.graph"],
        vec!["gadget", "tree7.graph"],
    ] {
        let path = fixture(args[1]);
        let argv = [args[0], s(&path)];
        let (_, a) = report(&argv);
        let (_, b) = report(&argv);
        assert_eq!(a["payload_sha256"], b["payload_sha256"]);
        let strip = |mut v: Value| {
            v.as_object_mut().unwrap().remove("wall_time_ms");
            v
        };
        assert_eq!(strip(a), strip(b));
    }
}

#[test]
fn flags_override_environment_budgets() {
    let host = fixture("tree7.graph");
    let parse = |out: std::process::Output| -> Value { serde_json::from_slice(&out.stdout).unwrap() };
    let r = parse(
        bin()
            .env("PARHOM_BUDGET_VERTICES", "5")
            .env("PARHOM_BUDGET_INSTANCE", "300")
            .args(["--json", "classify"])
            .arg(&host)
            .output()
            .unwrap(),
    );
    assert_eq!(r["budget"]["max_candidate_vertices"], 5);
    assert_eq!(r["budget"]["max_instance_vertices"], 300);
    let r = parse(
        bin()
            .env("PARHOM_BUDGET_VERTICES", "5")
            .args(["--json", "--budget-vertices", "6", "classify"])
            .arg(&host)
            .output()
            .unwrap(),
    );
    assert_eq!(r["budget"]["max_candidate_vertices"], 6);
    let r = parse(bin().args(["--json", "classify"]).arg(&host).output().unwrap());
    assert_eq!(r["budget"]["max_candidate_vertices"], 7);
}

#[test]
fn fixture_corpus_passes() {
    let (code, r) = report(&["battery", s(&fixture(""))]);
    assert_eq!(code, 0, "{r}");
    let entries = r["result"]["entries"].as_array().unwrap();
    assert!(entries.len() >= 12);
    let certs = entries.iter().filter(|e| e["kind"] == "certificate").count();
    assert!(certs >= 4);
    assert!(entries.iter().all(|e| e["status"] == "pass"));
}

#[test]
fn empty_directory_passes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = report(&["battery", s(dir.path())]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["entries"].as_array().unwrap().len(), 0);
    assert_eq!(r["result"]["flagged"].as_array().unwrap().len(), 0);
}

fn corpus_with_broken_certificate() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for name in ["tree7.graph", "tree7.cert.json", "fig1-h1.graph", "fig1-h1.cert.json", "petersen.graph"] {
        std::fs::copy(fixture(name), dir.path().join(name)).unwrap();
    }
    let path = dir.path().join("tree7.cert.json");
    let mut cert: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let gadget = &mut cert["result"]["gadget"];
    let other = gadget["omega_y"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| **v != gadget["i"])
        .unwrap()
        .clone();
    gadget["i"] = other;
    std::fs::write(&path, serde_json::to_string(&cert).unwrap()).unwrap();
    dir
}

#[test]
fn corrupted_certificate_fails_the_battery() {
    let dir = corpus_with_broken_certificate();
    write(dir.path(), "notes.txt", "ignored");
    let (code, r) = report(&["battery", s(dir.path())]);
    assert_eq!(code, 1);
    let flagged: Vec<&str> = r["result"]["flagged"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(flagged.len(), 1);
    assert!(flagged[0].ends_with("tree7.cert.json"));
    assert_eq!(r["result"]["entries"].as_array().unwrap().len(), 5);
}

#[test]
fn unreadable_entries_do_not_stop_the_battery_unless_asked() {
    let dir = corpus_with_broken_certificate();
    write(dir.path(), "a-broken.graph", "vertices: a\na a a\n");
    write(dir.path(), "orphan.pins", "x -> a\n");
    let (code, r) = report(&["battery", s(dir.path())]);
    assert_eq!(code, 1);
    let entries = r["result"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 7);
    assert_eq!(entries.iter().filter(|e| e["status"] == "error").count(), 2);
    let (code, r) = report(&["battery", "--fail-fast", s(dir.path())]);
    assert_eq!(code, 1);
    assert_eq!(r["result"]["entries"].as_array().unwrap().len(), 1);
    assert_eq!(r["result"]["skipped"], 6);
}

#[test]
fn pinning_targets_must_exist() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(fixture("tree7.graph"), dir.path().join("tree7.graph")).unwrap();
    write(dir.path(), "tree7.pins", "w -> c\nu -> nowhere\n");
    let (code, r) = report(&["battery", s(dir.path())]);
    assert_eq!(code, 1);
    assert_eq!(r["result"]["fail"], 1);
}

fn graph_text() -> impl Strategy<Value = String> {
    let line = prop_oneof![
        Just("vertices: a b c".to_string()),
        Just("vertices: a a".to_string()),
        "[a-d] [a-e]",
        "[a-c]",
        "# [a-z ]{0,6}",
        Just(String::new()),
        "[a-z:>-]{1,5} [a-z]{0,2}",
    ];
    prop::collection::vec(line, 0..6).prop_map(|ls| ls.join("\n"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exit_codes_follow_the_contract(text in graph_text()) {
        let dir = tempfile::tempdir().unwrap();
        let g = write(dir.path(), "g.graph", &text);
        let out = run(&["analyze", s(&g)]);
        match parhom::format::parse_graph(&text) {
            Ok(_) => prop_assert_eq!(out.code, 0),
            Err(e) => {
                prop_assert_eq!(out.code, 2);
                prop_assert!(out.stderr.contains("g.graph"));
                if let Some(line) = e.line() {
                    let expected = format!("line {line}");
                    prop_assert!(out.stderr.contains(&expected));
                }
            }
        }
        let out = run(&["count", "--mod2", s(&g), s(&fixture("tree7.graph"))]);
        prop_assert!(out.code == 0 || out.code == 2);
    }
}
