use std::path::PathBuf;
use std::process::{Command, Output};

use snarklab::manifest::RunManifest;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_snarklab"))
}

fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn color_petersen() {
    let o = run(&["color", fixture("graphs/petersen.cub").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "uncolorable, obstruction=P10\n");
    let o = run(&["color", fixture("graphs/petersen_triangle.cub").to_str().unwrap()]);
    assert_eq!(stdout(&o), "uncolorable, obstruction=P10\n");
}

#[test]
fn color_prism_lists_a_proper_coloring() {
    let o = run(&["color", fixture("graphs/prism3.cub").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("colorable"));
    let edges: Vec<(usize, usize, u8)> = lines
        .map(|l| {
            let t: Vec<&str> = l.split_whitespace().collect();
            (t[0].parse().unwrap(), t[1].parse().unwrap(), t[2].parse().unwrap())
        })
        .collect();
    assert_eq!(edges.len(), 9);
    for v in 0..6 {
        let mut seen: Vec<u8> = edges.iter().filter(|e| e.0 == v || e.1 == v).map(|e| e.2).collect();
        seen.sort_unstable();
        assert_eq!(seen, vec![0, 1, 2], "vertex {v}");
    }
}

#[test]
fn kempe_count() {
    let o = run(&["kempe", "--r", "4", "--kind", "planar"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "kempe r=4 kind=planar count=14\n");
}

#[test]
fn kempe_cache_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin().args(["kempe", "--r", "3", "--kind", "projective"]).env("SNARKLAB_CACHE", dir.path()).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("kempe-projective-3.txt").exists());
    let again = bin().args(["kempe", "--r", "3", "--kind", "projective"]).env("SNARKLAB_CACHE", dir.path()).output().unwrap();
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn families_pi_3_6() {
    let o = run(&["families", "--family", "pi", "--y", "3", "--k", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("id\tvertices\tring\tverdict\tcontraction_size"));
    assert_eq!(lines.count(), 14);
    assert!(String::from_utf8_lossy(&o.stderr).contains("count 14"));
}

#[test]
fn families_needs_parameters() {
    let o = run(&["families", "--family", "gamma", "--y", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["color", "--no-such-flag", "x"]).status.code(), Some(2));
    assert_eq!(run(&["color", "/definitely/missing.cub"]).status.code(), Some(2));
    assert_eq!(run(&["cut-analysis", "--cut-size", "6"]).status.code(), Some(2));
    assert_eq!(run(&["kempe", "--r", "0"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one() {
    let o = run(&["color", fixture("graphs/bad_degree4.cub").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["dist5", fixture("confs/bad_gamma.conf").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn cuts_report_is_json_lines() {
    let o = run(&["cuts", fixture("graphs/petersen.cub").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let recs: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs[0]["cyclic_edge_connectivity"], 5);
    assert_eq!(recs.len(), 1 + 6);
    assert!(recs[1..].iter().all(|r| r["size"] == 5));
}

#[test]
fn petersen_like_trace() {
    let o = run(&["petersen-like", fixture("graphs/petersen_triangle.cub").to_str().unwrap()]);
    let text = stdout(&o);
    assert!(text.starts_with("petersen-like true\n"));
    assert!(text.contains("step 1 cut"));
    assert!(text.ends_with("terminal order 10\n"));
    let o = run(&["petersen-like", fixture("graphs/cube.cub").to_str().unwrap()]);
    assert!(stdout(&o).starts_with("petersen-like false\n"));
}

#[test]
fn structure_verbs() {
    let o = run(&["dist5", fixture("confs/strip5.conf").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let recs: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let last = recs.last().unwrap();
    assert_eq!(last["possible"], false);
    assert_eq!(last["cases"], 24);

    let o = run(&["safety", fixture("confs/conf1.conf").to_str().unwrap(), "--contraction", "0-4 1-6 3-9"]);
    let rec: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(rec["k6_risk"], false);
    assert_eq!(rec["core_order"], 7);
    let o = run(&["safety", fixture("confs/conf1.conf").to_str().unwrap()]);
    let rec: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(rec["k6_risk"], true);
    let o = run(&["safety", fixture("confs/conf1.conf").to_str().unwrap(), "--contraction", "0-x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reduce_check_conf1() {
    let o = run(&["reduce-check", fixture("confs/conf1.conf").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rec: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(rec["verdict"], "C");
    assert_eq!(rec["contraction"].as_array().unwrap().len(), 6);
}

#[test]
fn discharge_on_dual_graphs() {
    let rules = fixture("rules/sample.rule");
    for (g, total) in [("graphs/dodecahedron.cub", 120), ("graphs/petersen.cub", 60)] {
        let o = run(&["discharge", "--rules", rules.to_str().unwrap(), "--graph", fixture(g).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{g}");
        let last: serde_json::Value = serde_json::from_str(stdout(&o).lines().last().unwrap()).unwrap();
        assert_eq!(last["total"], total);
        assert_eq!(last["conserved"], true);
    }
    let o = run(&["discharge", "--rules", rules.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cut_analysis_sweep() {
    let o = run(&["cut-analysis", "--cut-size", "4", "--count", "6", "--seed", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let recs: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 7);
    assert!(recs[..6].iter().all(|r| r["k"] == 4));
    assert_eq!(recs[6]["violations"], 0);
}

#[test]
fn reports_and_manifests_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let conf = fixture("confs/strip5.conf");
    let mut digests = Vec::new();
    for (i, jobs) in ["1", "2"].iter().enumerate() {
        let out = dir.path().join(format!("r{i}.jsonl"));
        let man = dir.path().join(format!("m{i}.json"));
        let o = run(&[
            "dist5",
            conf.to_str().unwrap(),
            "--jobs",
            jobs,
            "--seed",
            "4",
            "--out",
            out.to_str().unwrap(),
            "--manifest",
            man.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
        let m: RunManifest = serde_json::from_str(&std::fs::read_to_string(&man).unwrap()).unwrap();
        assert_eq!(m.seed, 4);
        assert_eq!(m.inputs.len(), 1);
        assert_eq!(m.result_digest, snarklab::manifest::digest(&std::fs::read(&out).unwrap()));
        digests.push((m.inputs[0].sha256.clone(), m.result_digest));
    }
    assert_eq!(digests[0], digests[1]);
}

#[test]
fn verify_all_localizes_a_corrupt_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let graphs = dir.path().join("graphs");
    std::fs::create_dir_all(&graphs).unwrap();
    // a 3-connected but colorable graph under the Petersen name
    std::fs::copy(fixture("graphs/prism5.cub"), graphs.join("petersen.cub")).unwrap();
    std::fs::copy(fixture("graphs/petersen_triangle.cub"), graphs.join("petersen_triangle.cub")).unwrap();
    let opts = snarklab::verify::Options::new(dir.path());
    let bad = snarklab::verify::run(1, &opts);
    assert!(!bad.passed);
    assert!(bad.line().starts_with("FAIL  1 petersen suite"));
    for id in [2, 9] {
        assert!(snarklab::verify::run(id, &opts).passed, "criterion {id}");
    }
}
