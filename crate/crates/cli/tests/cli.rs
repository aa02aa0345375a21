use std::process::{Command, Output};

use serde_json::Value;

fn schubert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schubert"))
        .args(args)
        .env_remove("SCHUBERT_MAX_N")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn analyze_25413() {
    let out = schubert(&["analyze", "[25413]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["is_toric"], true);
    assert_eq!(v["dim_Y"], 5);
    assert_eq!(v["regions"]["q"], 14);
    assert_eq!(v["regions"]["Ess"], serde_json::json!([[1, 3], [3, 3], [4, 2]]));
}

#[test]
fn degenerate_rejects_25413() {
    let out = schubert(&["degenerate", "[25413]"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "NotOneDominant");
}

#[test]
fn degenerate_15342() {
    let out = schubert(&["degenerate", "15342"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["tree"]["edges"], serde_json::json!([[1, 2], [2, 3], [2, 5], [4, 5], [5, 6]]));
    assert_eq!(v["realization"]["pass"], true);
    assert_eq!(v["degeneration"]["image_check"], true);
}

#[test]
fn triangulate_1243() {
    let out = schubert(&["triangulate", "[1243]", "--validate"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["facet_count"], 6);
    assert_eq!(v["validation"]["volume"], 6);
    assert_eq!(v["regularity"]["matches_nat"], true);
}

#[test]
fn subword_14523() {
    let out = schubert(&["subword", "[14523]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["realization"]["pass"], true);
    assert!(v["shape"]["Qword"].is_array());
}

#[test]
fn bad_input_exits_2() {
    let out = schubert(&["analyze", "[1134]"]);
    assert_eq!(out.status.code(), Some(2));
    let out = schubert(&["verify", "--n", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "SizeLimitExceeded");
    let out = schubert(&["verify", "--n", "3", "--checks", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = schubert(&["oracle", "no-such-oracle"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_n4_all_checks() {
    let out = schubert(&["verify", "--n", "4", "--deep"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["permutations"], 24);
    assert_eq!(v["failures"], 0);
    assert_eq!(v["convention_audit"]["chosen"], "weak");
}

#[test]
fn verify_toric_n3() {
    let out = schubert(&["verify", "--n", "3", "--checks", "toric"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 6);
    for r in results {
        let d = &r["results"][0]["detail"];
        assert_eq!(d["hooks"], d["dimension_route"]);
    }
}

#[test]
fn verify_output_is_deterministic() {
    let a = schubert(&["verify", "--n", "4", "--sequential"]);
    let b = schubert(&["verify", "--n", "4", "--threads", "3"]);
    let c = schubert(&["verify", "--n", "4"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn oracles_agree() {
    for name in ["word-convention", "rank", "reduced-words", "pipe-dreams", "dot-drop", "cone-membership", "alternating-trees", "path-counts"] {
        let out = schubert(&["oracle", name, "--n", "4"]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(json(&out)["mismatches"], 0, "{name}");
    }
}

#[test]
fn env_override_lowers_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_schubert"))
        .args(["verify", "--n", "4"])
        .env("SCHUBERT_MAX_N", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
