use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use suralg::io::{from_document, parse_document, render_document, stage_document, to_document};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn suralg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_suralg")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit status")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

const GOOD: [&str; 7] = ["sa0", "sa1", "sa2", "st0", "st1", "st2", "no3"];
const MUTATED: [&str; 4] = ["mutated_sa1_neg", "mutated_sa1_t", "mutated_st1_cycle", "mutated_no3_t"];

#[test]
fn fixtures_verify() {
    for name in GOOD {
        let path = fixture(&format!("{name}.json"));
        let out = suralg(&["verify", "--input", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{name}: {}", String::from_utf8_lossy(&out.stdout));
        assert_eq!(report(&out)["passed"], true);
    }
}

#[test]
fn mutated_fixtures_fail_verification() {
    for name in MUTATED {
        let path = fixture(&format!("{name}.json"));
        let out = suralg(&["verify", "--input", path.to_str().unwrap()]);
        assert_eq!(code(&out), 1, "{name}");
        assert_eq!(report(&out)["passed"], false, "{name}");
    }
}

#[test]
fn failing_verdicts_name_the_axiom() {
    let path = fixture("mutated_st1_cycle.json");
    let r = report(&suralg(&["verify", "--input", path.to_str().unwrap()]));
    let failed: Vec<&str> = r["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|v| v["passed"] == false)
        .map(|v| v["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"pS1"), "{failed:?}");
}

#[test]
fn fixtures_round_trip_byte_for_byte() {
    for name in GOOD {
        let text = fs::read_to_string(fixture(&format!("{name}.json"))).unwrap();
        let loaded = from_document(&parse_document(&text).unwrap()).unwrap();
        let doc = match &loaded.stage {
            Some(stage) => stage_document(stage),
            None => {
                let mut d = to_document(&loaded.structure);
                d.algebra = parse_document(&text).unwrap().algebra;
                d
            }
        };
        assert_eq!(render_document(&doc), text, "{name}");
    }
}

#[test]
fn stage_export_reproduces_the_fixture() {
    let dir = tempfile::tempdir().unwrap();
    for (algebra, alpha, name) in [("sa", "2", "sa2"), ("st", "1", "st1"), ("no", "3", "no3")] {
        let json = dir.path().join(format!("{name}.json"));
        let dot = dir.path().join(format!("{name}.dot"));
        let out = suralg(&[
            "stage", "--algebra", algebra, "--alpha", alpha,
            "--json", json.to_str().unwrap(), "--dot", dot.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
        assert_eq!(fs::read(&json).unwrap(), fs::read(fixture(&format!("{name}.json"))).unwrap());
        assert!(fs::read_to_string(&dot).unwrap().starts_with("digraph"));
    }
    let r = report(&suralg(&["stage", "--algebra", "sa", "--alpha", "2"]));
    assert_eq!(r["elements"], 17);
    let r = report(&suralg(&["stage", "--algebra", "st", "--alpha", "2"]));
    assert_eq!(r["elements"], 20);
}

#[test]
fn claims_report_the_minimal_rank_failure() {
    let sa1 = fixture("sa1.json");
    let out = suralg(&["verify", "--input", sa1.to_str().unwrap(), "--claims"]);
    assert_eq!(code(&out), 0);
    let st2 = fixture("st2.json");
    assert_eq!(code(&suralg(&["verify", "--input", st2.to_str().unwrap(), "--claims"])), 0);

    let sa2 = fixture("sa2.json");
    let out = suralg(&["verify", "--input", sa2.to_str().unwrap(), "--claims"]);
    assert_eq!(code(&out), 1);
    let r = report(&out);
    let failed: Vec<&str> = r["claims"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|v| v["passed"] == false)
        .map(|v| v["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["Claim 12"]);

    let no3 = fixture("no3.json");
    assert_eq!(code(&suralg(&["verify", "--input", no3.to_str().unwrap(), "--claims"])), 2);
}

#[test]
fn full_verification_needs_a_total_cut_map() {
    let sa1 = fixture("sa1.json");
    let out = suralg(&["verify", "--input", sa1.to_str().unwrap(), "--kind", "sur"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn morphism_search() {
    let (sa1, no3, st2) = (fixture("sa1.json"), fixture("no3.json"), fixture("st2.json"));
    let (sa1, no3, st2) = (sa1.to_str().unwrap(), no3.to_str().unwrap(), st2.to_str().unwrap());
    let out = suralg(&["morphism", "--from", sa1, "--to", no3, "--kind", "psur", "--canonical"]);
    assert_eq!(code(&out), 0);
    let pairs = &report(&out)["morphism"]["pairs"];
    assert_eq!(pairs.as_array().unwrap().len(), 3);

    let out = suralg(&["morphism", "--from", sa1, "--to", no3, "--kind", "psur", "--enumerate"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["count"], 1);

    let out = suralg(&["morphism", "--from", no3, "--to", st2, "--kind", "psur"]);
    assert_eq!(code(&out), 1);
    assert_eq!(report(&out)["passed"], false);
}

#[test]
fn cut_algebra_and_pushout_write_documents() {
    let dir = tempfile::tempdir().unwrap();
    let sa1 = fixture("sa1.json");
    let ca = dir.path().join("ca.json");
    let out = suralg(&["cut-algebra", "--input", sa1.to_str().unwrap(), "--out", ca.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["elements"], 3);
    assert_eq!(code(&suralg(&["verify", "--input", ca.to_str().unwrap()])), 0);

    let po = dir.path().join("po.json");
    let out = suralg(&["pushout", "--input", sa1.to_str().unwrap(), "--out", po.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!((r["elements"].clone(), r["new"].clone()), (17.into(), 14.into()));
    assert_eq!(code(&suralg(&["verify", "--input", po.to_str().unwrap()])), 0);
}

#[test]
fn eval_prints_dyadic_then_signs() {
    let out = suralg(&["eval", "1/2 + 1/2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1\n+\n");
    let out = suralg(&["eval", "--dyadic", "{0|1} * 3"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "3/2\n");
    let out = suralg(&["eval", "1/2 < 1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "true\n");
}

#[test]
fn usage_errors_exit_two() {
    let missing = fixture("missing.json");
    let out = suralg(&["verify", "--input", missing.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("suralg: "));
    assert_eq!(code(&suralg(&["eval", "1/3"])), 2);
    assert_eq!(code(&suralg(&["stage", "--algebra", "xx", "--alpha", "1"])), 2);
    assert_eq!(code(&suralg(&["frobnicate"])), 2);
    assert_eq!(code(&suralg(&["--help"])), 0);
}

#[test]
fn in_process_runner_matches_the_binary() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let status = suralg::cli::run(["suralg", "eval", "{|} - 1"], &mut out, &mut err);
    assert_eq!(status, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "-1\n-\n");
    assert!(err.is_empty());
}
