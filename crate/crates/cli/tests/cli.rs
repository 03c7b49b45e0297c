use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use cmtorus::classify::CampaignReport;
use cmtorus::groups;
use cmtorus::json::PairJson;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmtorus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

/// Value column of a `key  value` text line.
fn text_value<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).filter(|rest| rest.starts_with("  ")))
        .unwrap_or_else(|| panic!("no line for {key:?} in\n{text}"))
        .trim()
}

#[test]
fn verify_shioda_passes_all_five_assertions() {
    let o = run(&["verify-shioda", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let asserts = v["assertions"].as_array().unwrap();
    assert_eq!(asserts.len(), 5);
    assert!(asserts.iter().all(|a| a["passed"] == true));
    assert_eq!(v["dim_mt_product"], 4);
    assert_eq!(v["status_pi1"], "ISO");
}

#[test]
fn rho_inside_a_subgroup_is_an_input_error_naming_rho() {
    let o = run(&["pair", "--input", fixture("bad_rho_pair.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("rho"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn malformed_json_names_the_field_path() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (
            r#"{"group":{"kind":"cyclic","n":8},"rho":4,"factor1":{"H":"e","phi":[0]},"factor2":{"H":[0],"phi":[0]}}"#,
            "factor1.H",
        ),
        (
            r#"{"group":{"kind":"cyclic","n":8},"rho":4,"factor1":{"H":[0],"phi":[0,1,2,3]},"factor2":{"H":[0],"phi":[0,4,1,2]}}"#,
            "factor2.phi",
        ),
        (
            r#"{"group":{"kind":"cyclic","n":8},"rho":3,"factor1":{"H":[0],"phi":[0,1,2,3]},"factor2":{"H":[0],"phi":[0,1,2,3]}}"#,
            "rho",
        ),
        (
            r#"{"group":{"kind":"quaternion","n":8},"rho":4,"factor1":{"H":[0],"phi":[0]},"factor2":{"H":[0],"phi":[0]}}"#,
            "group",
        ),
    ];
    for (i, (body, field)) in cases.iter().enumerate() {
        let path = dir.path().join(format!("case{i}.json"));
        std::fs::write(&path, body).unwrap();
        let o = run(&["pair", "--input", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "case {i}");
        assert!(stderr(&o).contains(&format!("`{field}")), "case {i}: {}", stderr(&o));
    }
    let o = run(&["pair", "--input", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn default_classification_has_no_violations() {
    let o = run(&["classify-threefolds", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rep: CampaignReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rep.groups_examined, 4);
    assert_eq!(rep.violations, 0);
    assert_eq!(rep.total_tuples, 64 + 2304 + 1024 + 9216);
    assert!(rep.elapsed_ms.is_none());
}

#[test]
fn classification_json_round_trips_and_revalidates() {
    let o = run(&["classify-threefolds", "--groups", "c6,d12", "--full-records", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rep: CampaignReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rep.records.len(), rep.total_tuples);
    let again = serde_json::to_string_pretty(&rep).unwrap() + "\n";
    assert_eq!(again.as_bytes(), o.stdout.as_slice());
    for rec in &rep.records {
        let which: cmtorus::classify::ThreefoldGroup = rec.group.parse().unwrap();
        let g = Arc::new(groups::make_group(&which.spec()).unwrap());
        let rho = groups::central_involutions(&g)[0];
        assert!(rec.revalidate(&g, rho).unwrap());
    }
}

#[test]
fn classification_output_is_independent_of_jobs() {
    let a = run(&["classify-threefolds", "--groups", "d12,c2xa4", "--format", "json"]);
    let b = run(&["classify-threefolds", "--groups", "d12,c2xa4", "--format", "json", "--jobs", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn classification_text_and_json_agree() {
    let t = run(&["classify-threefolds", "--groups", "c6,c2xa4"]);
    let j = run(&["classify-threefolds", "--groups", "c6,c2xa4", "--format", "json"]);
    let text = stdout(&t);
    let rep: CampaignReport = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(text_value(&text, "total tuples"), rep.total_tuples.to_string());
    assert_eq!(text_value(&text, "equal dims"), rep.equal_dims.to_string());
    assert_eq!(text_value(&text, "violations"), rep.violations.to_string());
    for g in &rep.groups {
        let line = text.lines().find(|l| l.starts_with(&format!("{} ", g.group))).unwrap();
        let cells: Vec<&str> = line.split_whitespace().collect();
        let nums: Vec<String> = [g.order, g.subgroups, g.cm_types, g.primitive_cm_types, g.tuples, g.analyses, g.equal_dims, g.violations]
            .iter()
            .map(|n| n.to_string())
            .collect();
        assert_eq!(cells[1..9], nums[..], "{line}");
    }
}

#[test]
fn pair_text_and_json_agree() {
    for name in ["g4_pair.json", "g6_pair.json", "shioda_pair.json"] {
        let input = fixture(name);
        let input = input.to_str().unwrap();
        let t = run(&["pair", "--input", input]);
        let j = run(&["pair", "--input", input, "--format", "json"]);
        assert_eq!((t.status.code(), j.status.code()), (Some(0), Some(0)));
        let text = stdout(&t);
        let v = json(&j);
        let a = &v["analysis"];
        let (l1, l2) = (v["factor1"]["label"].as_str().unwrap(), v["factor2"]["label"].as_str().unwrap());
        assert_eq!(text_value(&text, &format!("dim MT({l1})")), a["dim_mt_1"].to_string());
        assert_eq!(text_value(&text, &format!("dim MT({l2})")), a["dim_mt_2"].to_string());
        assert_eq!(text_value(&text, &format!("dim MT({l1} x {l2})")), a["dim_mt_product"].to_string());
        assert_eq!(text_value(&text, "kernel rank"), a["kernel_rank"].to_string());
        let pi1 = text_value(&text, &format!("pi1: MT({l1} x {l2}) -> MT({l1})"));
        assert_eq!(pi1, a["status_pi1"].as_str().unwrap());
    }
}

#[test]
fn reference_pairs_are_iso_both_ways() {
    for name in ["g4_pair.json", "g6_pair.json"] {
        let o = run(&["pair", "--input", fixture(name).to_str().unwrap(), "--format", "json"]);
        let v = json(&o);
        assert_eq!(v["analysis"]["status_pi1"], "ISO", "{name}");
        assert_eq!(v["analysis"]["status_pi2"], "ISO", "{name}");
        assert_eq!(v["factor1"]["primitive"], true);
        assert_eq!(v["factor2"]["primitive"], true);
    }
}

#[test]
fn pair_fixture_round_trips() {
    let text = std::fs::read_to_string(fixture("shioda_pair.json")).unwrap();
    let j: PairJson = serde_json::from_str(&text).unwrap();
    let p = j.resolve().unwrap();
    let back = PairJson::from_input(&p, j.group.clone());
    assert_eq!(back, j);
}

#[test]
fn search_finds_the_reference_surface_pair() {
    let o = run(&[
        "search",
        "--input",
        fixture("g4_search.json").to_str().unwrap(),
        "--mode",
        "iso",
        "--primitive",
        "--essentially-different",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let recs = v["records"].as_array().unwrap();
    assert_eq!(v["count"].as_u64().unwrap() as usize, recs.len());
    assert!(recs
        .iter()
        .any(|r| r["phi1"] == serde_json::json!([2, 3, 4, 5]) && r["phi2"] == serde_json::json!([0, 2, 5, 7])));
}

#[test]
fn search_on_sextic_cyclic_field_is_empty() {
    let o = run(&[
        "search",
        "--input",
        fixture("c6_search.json").to_str().unwrap(),
        "--essentially-different",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["count"], 0);
}

#[test]
fn family_command() {
    let o = run(&["family", "--g", "9", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["r"], 2);
    assert_eq!(v["checks_passed"], true);
    assert_eq!(v["phi1"]["primitive"], true);
    let o = run(&["family", "--g", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains('g'));
}

#[test]
fn reflex_command() {
    let o = run(&["reflex", "--input", fixture("shioda_x_type.json").to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["reflex_type_labels"], "{σ1, σ5, σ7}");
    assert_eq!(v["cm_type"]["primitive"], true);
}

#[test]
fn output_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("shioda.json");
    let o = run(&["verify-shioda", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["assertions"].as_array().unwrap().len(), 5);
}

#[test]
fn bad_arguments_exit_with_input_error() {
    assert_eq!(run(&["classify-threefolds", "--jobs", "0"]).status.code(), Some(2));
    let o = run(&["classify-threefolds", "--groups", "c6,a5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("groups"));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn run_cli_is_callable_in_process() {
    assert_eq!(cmtorus_cli::run_cli(["cmtorus", "family", "--g", "3"]), 2);
    assert_eq!(cmtorus_cli::run_cli(["cmtorus", "--help"]), 0);
}
