use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn sst(args: &[&str]) -> Output {
    sst_in(args, None, &[])
}

fn sst_in(args: &[&str], dir: Option<&Path>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sst"));
    cmd.args(args).env_remove("SST_ALIASES");
    if let Some(d) = dir {
        cmd.current_dir(d);
    }
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn f(name: &str) -> String {
    fixture(name).display().to_string()
}

const FIXTURES: &[&str] = &[
    "appendix_possible.sst",
    "appendix_unlikely.sst",
    "butterfly.sst",
    "cluedo.sst",
    "confluence.sst",
    "properties.sst",
    "splitter.sst",
    "syllogism.sst",
];

#[test]
fn exit_codes() {
    assert_eq!(code(&sst(&["--help"])), 0);
    assert_eq!(code(&sst(&["--version"])), 0);
    assert_eq!(code(&sst(&["validate", "--help"])), 0);
    assert_eq!(code(&sst(&["validate", &f("appendix_possible.sst")])), 0);
    assert_eq!(code(&sst(&["validate", &f("appendix_wrong.sst")])), 1);
    assert_eq!(code(&sst(&["validate", "/definitely/not/here.sst"])), 3);
    assert_eq!(code(&sst(&["export", &f("butterfly.sst"), "--format", "png"])), 4);
    assert_eq!(code(&sst(&["export", &f("butterfly.sst"), "--family", "X"])), 4);
    assert_eq!(code(&sst(&["frobnicate"])), 4);
    assert_eq!(code(&sst(&[])), 4);
    assert_eq!(code(&sst(&["rank", &f("butterfly.sst"), "--damping", "1.5"])), 4);
    assert_eq!(code(&sst(&["trace", &f("butterfly.sst"), "--from", "nobody"])), 4);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sst");
    std::fs::write(&bad, "node \"x\" :: event\nnode \"y\" : animal\n").unwrap();
    let o = sst(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert_eq!(stderr(&o).lines().count(), 2);
    assert!(stderr(&o).contains("bad.sst:1:10:"));
}

#[test]
fn empty_file_is_valid() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.sst");
    std::fs::write(&empty, "").unwrap();
    let o = sst(&["validate", empty.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("0 statements"));
}

#[test]
fn wrong_statements_get_one_diagnostic_each() {
    let o = sst(&["validate", &f("appendix_wrong.sst")]);
    let lines: Vec<String> = stderr(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 3);
    for (line, want) in lines.iter().zip([3, 4, 5]) {
        assert!(line.contains(&format!("appendix_wrong.sst:{want}:")), "{line}");
        assert!(line.contains("forbidden transition"), "{line}");
    }
    let json = report(&sst(&["validate", "--json", &f("appendix_wrong.sst")]));
    let codes: Vec<&str> =
        json["diagnostics"].as_array().unwrap().iter().map(|d| d["code"].as_str().unwrap()).collect();
    assert_eq!(codes, vec!["forbidden-transition"; 3]);
}

fn strip_time(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("generated_at_unix");
    v
}

fn every_report(file: &str) -> Vec<(String, Output)> {
    let commands: Vec<Vec<&str>> = vec![
        vec!["validate", "--json", file],
        vec!["lint", file],
        vec!["rank", file],
        vec!["rank", file, "--damping", "0.85"],
        vec!["entropy", file, "--family", "all"],
        vec!["analyze", file],
        vec!["infer", file],
    ];
    commands.into_iter().map(|c| (c.join(" "), sst(&c))).collect()
}

#[test]
fn reports_follow_the_schema_and_are_deterministic() {
    let schema: Value = serde_json::from_str(sst_cli::report::SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let mut checked = 0;
    for name in FIXTURES {
        let file = f(name);
        let first = every_report(&file);
        let second = every_report(&file);
        for ((label, a), (_, b)) in first.iter().zip(&second) {
            assert_eq!(code(a), 0, "{label}: {}", stderr(a));
            let v = report(a);
            let errors: Vec<String> =
                validator.iter_errors(&v).map(|e| format!("{e} at {}", e.instance_path)).collect();
            assert!(errors.is_empty(), "{label}: {errors:?}");
            assert_eq!(strip_time(v), strip_time(report(b)), "{label}");
            checked += 1;
        }
    }
    for extra in [
        sst(&["skeleton"]),
        sst(&["trace", &f("properties.sst"), "--from", "diagram", "--family", "E"]),
        sst(&["validate", "--json", &f("appendix_wrong.sst")]),
    ] {
        assert!(validator.is_valid(&report(&extra)), "{}", stdout(&extra));
        checked += 1;
    }
    assert_eq!(checked, FIXTURES.len() * 7 + 3);
}

#[test]
fn butterfly_dot_has_four_nodes_and_three_arrows() {
    let dot = stdout(&sst(&["export", &f("butterfly.sst"), "--format", "dot"]));
    assert!(dot.starts_with("digraph sst {"));
    assert_eq!(dot.lines().filter(|l| l.contains("shape=")).count(), 4);
    let edges: Vec<&str> = dot.lines().filter(|l| l.contains("->")).collect();
    assert_eq!(edges.len(), 3);
    assert!(edges.iter().all(|e| e.contains(r#"family="L""#) && !e.contains("dir=")));
}

#[test]
fn near_links_are_undirected_in_dot() {
    let dot = stdout(&sst(&["export", &f("appendix_unlikely.sst"), "--format", "dot", "--family", "N"]));
    let edges: Vec<&str> = dot.lines().filter(|l| l.contains("->")).collect();
    assert_eq!(edges.len(), 1);
    assert!(edges[0].contains(r#"dir="none""#));
}

#[test]
fn confluence_csv() {
    let csv = stdout(&sst(&["export", &f("confluence.sst"), "--format", "csv-adjacency"]));
    assert_eq!(csv, ",0,1,2\n0,0,0,0\n1,1,0,0\n2,1,0,0\n");
    let c_only = stdout(&sst(&["export", &f("confluence.sst"), "--format", "csv-adjacency", "--family", "C"]));
    assert_eq!(c_only, ",0,1,2\n0,0,0,0\n1,0,0,0\n2,0,0,0\n");
}

#[test]
fn json_export_is_stable_through_import() {
    let dir = tempfile::tempdir().unwrap();
    for name in FIXTURES {
        let first = stdout(&sst(&["export", &f(name), "--format", "json"]));
        let path = dir.path().join(name.replace(".sst", ".json"));
        std::fs::write(&path, &first).unwrap();
        let second = sst(&["export", path.to_str().unwrap(), "--format", "json"]);
        assert_eq!(code(&second), 0);
        assert_eq!(stdout(&second), first, "{name}");
        let dot_a = stdout(&sst(&["export", &f(name)]));
        let dot_b = stdout(&sst(&["export", path.to_str().unwrap()]));
        assert_eq!(dot_a.lines().count(), dot_b.lines().count());
    }
}

#[test]
fn rank_warns_at_absorbing_nodes() {
    let o = sst(&["rank", &f("confluence.sst")]);
    assert_eq!(code(&o), 0);
    let rank = &report(&o)["sections"]["rank"];
    assert_eq!(rank["warning"], "absorbing nodes detected");
    assert!(rank["suggestion"].as_str().unwrap().contains("--damping"));
    assert_eq!(rank["degenerate"], true);
    assert!(stderr(&o).contains("absorbing nodes detected"));

    let damped = report(&sst(&["rank", &f("confluence.sst"), "--damping", "0.85"]));
    let rank = &damped["sections"]["rank"];
    assert_eq!(rank["warning"], Value::Null);
    assert_eq!(rank["converged"], true);
    let scores = rank["scores"].as_array().unwrap();
    assert!(scores.iter().all(|s| s["score"].as_f64().unwrap() > 0.0));
    assert_eq!(scores[0]["node"]["name"], "0");
    let total: f64 = scores.iter().map(|s| s["score"].as_f64().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-9);
}

#[test]
fn splitter_hub_gains_one_bit() {
    let r = report(&sst(&["entropy", &f("splitter.sst"), "--node", "hub"]));
    let nodes = r["sections"]["entropy"]["families"][0]["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 1);
    assert!((nodes[0]["delta"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn cluedo_copresence_is_listed() {
    let r = report(&sst(&["infer", &f("cluedo.sst")]));
    let hs = r["sections"]["infer"]["hypotheses"].as_array().unwrap();
    let co: Vec<&Value> = hs.iter().filter(|h| h["kind"] == "event-copresence").collect();
    assert_eq!(co.len(), 3);
    assert!(co.iter().all(|h| h["scope"]["name"] == "The event of plumb murders scarlet"));
    assert!(hs.iter().all(|h| h["tier"] == "possible"));
}

#[test]
fn lint_reports_unlikely_modelling() {
    let o = sst(&["lint", &f("appendix_unlikely.sst")]);
    assert_eq!(code(&o), 0);
    let warnings = report(&o)["sections"]["lint"]["warnings"].as_array().unwrap().clone();
    let rules: Vec<&str> = warnings.iter().map(|w| w["rule"].as_str().unwrap()).collect();
    assert_eq!(rules, vec!["unanchored-concepts", "likeness-between-things"]);
    assert_eq!(stderr(&o).lines().count(), 2);

    let syl = report(&sst(&["lint", &f("syllogism.sst")]));
    let w = &syl["sections"]["lint"]["warnings"][0];
    assert_eq!(w["rule"], "invalid-generalization");
    assert_eq!(w["hypothesis"]["tier"], "invalid");
}

#[test]
fn trace_and_analyze() {
    let r = report(&sst(&["trace", &f("properties.sst"), "--from", "diagram", "--family", "E"]));
    let chain = &r["sections"]["trace"]["chains"][0];
    assert_eq!(chain["hops"], 5);
    assert_eq!(chain["termination"], "terminated-at-sink");
    assert_eq!(chain["conforms"], true);
    assert_eq!(chain["path"][5]["name"], "Hz");

    let a = report(&sst(&["analyze", &f("confluence.sst"), "--family", "L"]));
    let fam = &a["sections"]["analyze"]["families"][0];
    assert_eq!(fam["absorbing_regions"][0][0]["name"], "0");
    let sink = fam["roles"].as_array().unwrap().iter().find(|r| r["node"]["name"] == "0").unwrap();
    assert!(sink["roles"].as_array().unwrap().contains(&Value::from("hub")));
    assert_eq!(fam["supernodes"][0]["members"].as_array().unwrap().len(), 2);
}

#[test]
fn skeleton_reports_the_divergences() {
    let r = report(&sst(&["skeleton"]));
    let s = &r["sections"]["skeleton"];
    assert_eq!(s["consistent"], false);
    assert_eq!(s["factorization"]["cartan_diagonal"], serde_json::json!([4, 2, 2]));
    assert_eq!(s["join_mismatches"], 3);
    assert!(s["join_table"].as_str().unwrap().contains('*'));
}

const CUSTOM: &str = "node \"a\" : event\nnode \"b\" : event\n\"a\" (spawns) \"b\"\n";

#[test]
fn alias_sources_stack_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.sst");
    std::fs::write(&g, CUSTOM).unwrap();
    let g = g.to_str().unwrap();
    let family_of = |o: &Output| {
        let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
        doc["links"][0]["family"].as_str().unwrap().to_string()
    };

    assert_eq!(code(&sst_in(&["validate", g], Some(dir.path()), &[])), 1);

    std::fs::write(dir.path().join("sst.toml"), "[aliases]\n\"spawns\" = \"+L\"\n").unwrap();
    let o = sst_in(&["export", g, "--format", "json"], Some(dir.path()), &[]);
    assert_eq!(family_of(&o), "L");

    // Environment beats config.
    let env_file = dir.path().join("env.aliases");
    std::fs::write(&env_file, "alias \"spawns\" = +C\n").unwrap();
    let env = [("SST_ALIASES", env_file.to_str().unwrap())];
    let o = sst_in(&["export", g, "--format", "json"], Some(dir.path()), &env);
    assert_eq!(family_of(&o), "C");

    let flag_file = dir.path().join("flag.aliases");
    std::fs::write(&flag_file, "# near it\nalias \"spawns\" = N\n").unwrap();
    let o =
        sst_in(&["--aliases", flag_file.to_str().unwrap(), "export", g, "--format", "json"], Some(dir.path()), &env);
    assert_eq!(family_of(&o), "N");

    let shadowed = dir.path().join("shadow.sst");
    std::fs::write(&shadowed, format!("alias \"spawns\" = -L\n{CUSTOM}")).unwrap();
    let o = sst_in(
        &["--aliases", flag_file.to_str().unwrap(), "export", shadowed.to_str().unwrap(), "--format", "json"],
        Some(dir.path()),
        &env,
    );
    assert_eq!(family_of(&o), "L");

    std::fs::write(dir.path().join("sst.toml"), "[aliases]\n\"spawns\" = \"+Q\"\n").unwrap();
    assert_eq!(code(&sst_in(&["validate", g], Some(dir.path()), &[])), 4);
    let missing = [("SST_ALIASES", "/no/such/aliases")];
    assert_eq!(code(&sst_in(&["--config", "/dev/null", "validate", g], Some(dir.path()), &missing)), 3);
}
