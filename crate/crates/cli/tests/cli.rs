use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use subelect::fixtures::WORKED_EXAMPLE_PROFILE;
use subelect::{parse_election, SubelectionWitness, WitnessKind};
use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
    election: PathBuf,
}

fn workspace() -> Workspace {
    let dir = tempfile::tempdir().unwrap();
    let election = dir.path().join("star.txt");
    std::fs::write(&election, WORKED_EXAMPLE_PROFILE).unwrap();
    Workspace { dir, election }
}

fn subelect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subelect"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> Value {
    let out = subelect(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON report")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn indices(v: &Value) -> Vec<usize> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap() as usize)
        .collect()
}

/// Rebuilds a witness from its JSON form.
fn witness_from_json(e: &subelect::Election, w: &Value) -> SubelectionWitness {
    let labels = |key: &str| -> Vec<usize> {
        w[key]
            .as_array()
            .unwrap()
            .iter()
            .map(|l| e.candidate_index(l.as_str().unwrap()).unwrap())
            .collect()
    };
    match w["kind"].as_str().unwrap() {
        "identity" => SubelectionWitness::identity(labels("order"), indices(&w["voters"])),
        "antagonism" => SubelectionWitness::antagonism(
            labels("order"),
            indices(&w["group_a"]),
            indices(&w["group_b"]),
        ),
        "clone" => SubelectionWitness::clone_set(labels("candidates"), indices(&w["voters"])),
        other => panic!("unknown witness kind {other}"),
    }
}

#[test]
fn report_shape() {
    let ws = workspace();
    let report = run_json(&["clones", p(&ws.election), "3"]);
    assert_eq!(report["command"], "clones");
    assert_eq!(report["status"], "ok");
    assert_eq!(report["inputs"]["m_prime"], 3);
    assert!(report["wall_time_ms"].as_f64().unwrap() >= 0.0);
}

#[test]
fn max_clone_values() {
    let ws = workspace();
    assert_eq!(
        run_json(&["clones", p(&ws.election), "3"])["result"]["value"],
        5
    );
    assert_eq!(
        run_json(&["clones", p(&ws.election), "1"])["result"]["value"],
        6
    );
    let counted = run_json(&["clones", p(&ws.election), "2", "6", "--count"]);
    assert_eq!(counted["result"]["count"], 2);
}

#[test]
fn clone_swap_distance_of_a_clone_set_is_zero() {
    let ws = workspace();
    let report = run_json(&["clones", p(&ws.election), "3", "5", "--swap-set", "a,b,c"]);
    assert_eq!(report["result"]["distance"], 0);
    let closest = run_json(&["clones", p(&ws.election), "3", "6", "--closest"]);
    assert!(closest["result"]["distance"].as_u64().unwrap() > 0);
}

#[test]
fn identity_queries() {
    let ws = workspace();
    let sig = run_json(&["identity", p(&ws.election), "--signature"]);
    let points: Vec<(u64, u64)> = sig["result"]["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|pt| (pt[0].as_u64().unwrap(), pt[1].as_u64().unwrap()))
        .collect();
    assert_eq!(points, vec![(1, 6), (2, 5), (3, 4), (4, 3), (5, 2), (6, 1)]);

    let single = run_json(&["identity", p(&ws.election), "--voters", "v1", "6"]);
    assert_eq!(single["status"], "ok");
    assert_eq!(
        single["result"]["witness"]["voters"],
        serde_json::json!([0])
    );

    let missing = run_json(&["identity", p(&ws.election), "5", "3"]);
    assert_eq!(missing["status"], "not_found");
    assert_eq!(missing["result"]["found"], false);

    assert_eq!(
        run_json(&["identity", p(&ws.election), "3"])["result"]["value"],
        4
    );
}

#[test]
fn antagonism_queries() {
    let ws = workspace();
    assert_eq!(
        run_json(&["antagonism", p(&ws.election), "3"])["result"]["value"],
        6
    );
    assert_eq!(
        run_json(&["antagonism", p(&ws.election), "1"])["result"]["value"],
        6
    );
    let product = run_json(&["antagonism", p(&ws.election), "3", "--variant", "product"]);
    assert!(product["result"]["value"].as_u64().unwrap() >= 9);
    let found = run_json(&["antagonism", p(&ws.election), "3", "6"]);
    assert_eq!(found["status"], "ok");
}

#[test]
fn witnesses_reverify() {
    let ws = workspace();
    let e = parse_election(WORKED_EXAMPLE_PROFILE).unwrap();
    let runs: [&[&str]; 5] = [
        &["clones", "3"],
        &["identity", "4", "3"],
        &["identity", "2"],
        &["antagonism", "3", "6"],
        &["antagonism", "4"],
    ];
    for args in runs {
        let mut full = vec![args[0], p(&ws.election)];
        full.extend_from_slice(&args[1..]);
        let report = run_json(&full);
        let witness = witness_from_json(&e, &report["result"]["witness"]);
        assert!(witness.verify(&e), "{args:?} gave {witness:?}");
    }
}

#[test]
fn ilp_export_and_solve() {
    let ws = workspace();
    let lp = ws.dir.path().join("id.lp");
    let report = run_json(&[
        "identity",
        p(&ws.election),
        "4",
        "3",
        "--lp-out",
        p(&lp),
        "--solve",
    ]);
    assert_eq!(report["result"]["objective"], 0);
    let text = std::fs::read_to_string(&lp).unwrap();
    assert!(text.starts_with("Minimize"), "{}", &text[..40]);

    let e = parse_election(WORKED_EXAMPLE_PROFILE).unwrap();
    let witness = witness_from_json(&e, &report["result"]["witness"]);
    assert_eq!(witness.kind, WitnessKind::Identity);
    assert!(witness.verify(&e));

    let an = run_json(&["antagonism", p(&ws.election), "4", "6", "--solve"]);
    assert_eq!(an["status"], "not_found");

    let only_export = ws.dir.path().join("an.lp");
    let report = run_json(&[
        "antagonism",
        p(&ws.election),
        "3",
        "--lp-out",
        p(&only_export),
        "--backend",
        "none",
    ]);
    assert!(report["result"].get("objective").is_none());
    assert!(std::fs::read_to_string(&only_export)
        .unwrap()
        .starts_with("Maximize"));
}

#[test]
fn curve_csv() {
    let ws = workspace();
    let out = ws.dir.path().join("curve.csv");
    run_json(&["curve", p(&ws.election), "--kind", "id", "--out", p(&out)]);
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv, "m_prime,value\n1,6\n2,5\n3,4\n4,3\n5,2\n6,1\n");
}

#[test]
fn generate_then_analyze() {
    let ws = workspace();
    let out = ws.dir.path().join("gen.txt");
    let args = [
        "generate",
        "--culture",
        "mallows",
        "--param",
        "phi=0.3",
        "--m",
        "7",
        "--n",
        "9",
        "--seed",
        "5",
    ];
    let mut with_out = args.to_vec();
    with_out.extend(["--out", p(&out)]);
    run_json(&with_out);
    let written = std::fs::read_to_string(&out).unwrap();

    let printed = subelect(&args);
    assert_eq!(printed.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(printed.stdout).unwrap().trim_end(),
        written.trim_end()
    );

    let e = parse_election(&written).unwrap();
    assert_eq!((e.m(), e.n()), (7, 9));
    let report = run_json(&["clones", p(&out), "2"]);
    assert!(report["result"]["value"].as_u64().unwrap() >= 1);
}

#[test]
fn batch_stats_summary() {
    let ws = workspace();
    let out = ws.dir.path().join("batch.csv");
    let report = run_json(&[
        "batch-stats",
        "--culture",
        "sp_conitzer",
        "--seed",
        "11",
        "--repeat",
        "6",
        "--metric",
        "maxclone2",
        "--out",
        p(&out),
    ]);
    let values = indices(&report["result"]["values"]);
    assert_eq!(values.len(), 6);
    let mean = values.iter().sum::<usize>() as f64 / 6.0;
    assert!((report["result"]["mean"].as_f64().unwrap() - mean).abs() < 1e-12);
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 7);
    assert!(csv.starts_with("sample,seed,value\n0,11,"));
}

#[test]
fn exit_codes() {
    let ws = workspace();
    let missing = ws.dir.path().join("missing.txt");
    assert_eq!(
        subelect(&["clones", p(&missing), "2"]).status.code(),
        Some(2)
    );

    let garbage = ws.dir.path().join("garbage.txt");
    std::fs::write(&garbage, "not an election\n").unwrap();
    assert_eq!(
        subelect(&["clones", p(&garbage), "2"]).status.code(),
        Some(2)
    );

    assert_eq!(
        subelect(&["clones", p(&ws.election), "9"]).status.code(),
        Some(3)
    );
    assert_eq!(
        subelect(&["antagonism", p(&ws.election), "3", "3"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        subelect(&[
            "generate",
            "--culture",
            "compass_an",
            "--n",
            "5",
            "--seed",
            "1"
        ])
        .status
        .code(),
        Some(3)
    );

    let over = subelect(&[
        "identity",
        p(&ws.election),
        "3",
        "3",
        "--budget",
        "1",
        "--strategy",
        "by-voters",
    ]);
    assert_eq!(over.status.code(), Some(4));
    let report: Value = serde_json::from_slice(&over.stdout).unwrap();
    assert_eq!(report["status"], "budget_exceeded");
}

#[test]
fn preflib_input() {
    let ws = workspace();
    let soc = ws.dir.path().join("tiny.soc");
    std::fs::write(
        &soc,
        "# FILE NAME: tiny.soc\n# NUMBER ALTERNATIVES: 3\n# NUMBER VOTERS: 4\n\
         # ALTERNATIVE NAME 1: x\n# ALTERNATIVE NAME 2: y\n# ALTERNATIVE NAME 3: z\n\
         3: 1,2,3\n1: 3,2,1\n",
    )
    .unwrap();
    let report = run_json(&["antagonism", p(&soc), "3", "--format", "preflib-soc"]);
    assert_eq!(report["result"]["value"], 2);
}
