//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails or overruns its time limit.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use sst_core::analysis::{classify_view, supernodes, FamilyView};
use sst_core::generate::{random_graph, GraphShape};
use sst_core::inference::{
    flag_invalid_generalizations, infer_equivalence, infer_event_copresence, infer_property_inheritance,
    infer_proximity,
};
use sst_core::matrix::{
    adjacency, backward_step, check_factorization, determinant, entropy, forward_step, principal_eigenvector,
    singularity_report, skeleton, AdjacencyView, ValueVector,
};
use sst_core::notation::{build, parse, serialize};
use sst_core::{allowed_transition, join_types, AliasTable, Graph, LinkFamily, MetaType, NodeId, SignedLinkType};

const EIGEN_TOL: f64 = 1e-9;
const ENTROPY_TOL: f64 = 1e-12;
const MEMORY_TOL: f64 = 1e-12;
const SPECTRAL_CASES: usize = 60;
const SUPERNODE_CASES: usize = 60;
const INFERENCE_CASES: usize = 120;
const ROUND_TRIP_CASES: usize = 120;

type Outcome = Result<String, String>;

fn fixture_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn metas(s: &str) -> Vec<MetaType> {
    match s {
        "*" => MetaType::ALL.to_vec(),
        other => vec![MetaType::from_symbol(other.chars().next().unwrap()).unwrap()],
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = Vec<&str>> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(|l| l.split_whitespace().collect())
}

/// Legal triples from the hand-written table, closed under reversal.
fn table() -> BTreeSet<(MetaType, SignedLinkType, MetaType)> {
    let mut out = BTreeSet::new();
    for f in data_lines(&fixture("transitions.txt")) {
        let t: SignedLinkType = f[1].parse().unwrap();
        let (s, d) = (metas(f[0])[0], metas(f[2])[0]);
        out.insert((s, t, d));
        out.insert((d, t.negate(), s));
    }
    out
}

fn c1_transition_table() -> Outcome {
    let legal = table();
    let mut checked = 0;
    for s in MetaType::ALL {
        for t in SignedLinkType::ALL {
            for d in MetaType::ALL {
                let want = legal.contains(&(s, t, d));
                ensure(allowed_transition(s, t, d) == want, || format!("{s} {t} {d}: expected {want}"))?;
                checked += 1;
            }
        }
    }
    ensure(checked == 63, || format!("{checked} combinations"))?;
    let mut rules = BTreeSet::new();
    let mut facts = 0;
    for f in data_lines(&fixture("rules.txt")) {
        let t: SignedLinkType = f[2].parse().unwrap();
        let want = f[4] == "allowed";
        for s in metas(f[1]) {
            for d in metas(f[3]) {
                ensure(allowed_transition(s, t, d) == want, || format!("rule {}: {s} {t} {d}", f[0]))?;
                facts += 1;
            }
        }
        rules.insert(f[0].to_string());
    }
    ensure(rules.len() == 9, || format!("{} rules encoded", rules.len()))?;
    Ok(format!("63 combinations, {facts} rule facts over 9 rules"))
}

fn sst(args: &[&str]) -> (i32, Value, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = sst_cli::run(std::iter::once("sst").chain(args.iter().copied()), &mut out, &mut err);
    let json = serde_json::from_slice(&out).unwrap_or(Value::Null);
    (code, json, String::from_utf8_lossy(&err).into_owned())
}

/// Line numbers of link statements in a fixture.
fn link_lines(text: &str) -> Vec<usize> {
    text.lines().enumerate().filter(|(_, l)| l.starts_with('"')).map(|(i, _)| i + 1).collect()
}

fn c2_appendix_corpus() -> Outcome {
    let possible = fixture_path("appendix_possible.sst");
    let (code, json, err) = sst(&["validate", "--json", possible.to_str().unwrap()]);
    ensure(code == 0, || format!("possible/likely corpus exited {code}: {err}"))?;
    let statements = json["sections"]["validate"]["links"].as_u64().unwrap_or(0);

    let wrong = fixture_path("appendix_wrong.sst");
    let (code, json, _) = sst(&["validate", "--json", wrong.to_str().unwrap()]);
    ensure(code == 1, || format!("wrong corpus exited {code}"))?;
    let diags = json["diagnostics"].as_array().cloned().unwrap_or_default();
    let got: Vec<(u64, String)> =
        diags.iter().map(|d| (d["line"].as_u64().unwrap(), d["code"].as_str().unwrap().to_string())).collect();
    let want: Vec<(u64, String)> = link_lines(&fixture("appendix_wrong.sst"))
        .into_iter()
        .map(|l| (l as u64, "forbidden-transition".to_string()))
        .collect();
    ensure(got == want, || format!("wrong corpus diagnostics {got:?}, expected {want:?}"))?;

    let unlikely = fixture_path("appendix_unlikely.sst");
    let (code, _, _) = sst(&["validate", unlikely.to_str().unwrap()]);
    ensure(code == 0, || format!("unlikely corpus should build, exited {code}"))?;
    let (code, json, _) = sst(&["lint", unlikely.to_str().unwrap()]);
    ensure(code == 0, || format!("lint exited {code}"))?;
    let got: Vec<(u64, String)> = json["sections"]["lint"]["warnings"]
        .as_array()
        .cloned()
        .unwrap_or_default()
        .iter()
        .map(|w| (w["line"].as_u64().unwrap_or(0), w["rule"].as_str().unwrap().to_string()))
        .collect();
    let want = vec![(6, "unanchored-concepts".to_string()), (9, "likeness-between-things".to_string())];
    ensure(got == want, || format!("unlikely corpus warnings {got:?}, expected {want:?}"))?;
    Ok(format!("{statements} possible links accepted, {} wrong rejected, 2 unlikely linted", want.len() + 1))
}

fn c3_skeleton_factorization() -> Outcome {
    let sk = skeleton();
    let mut product = [[0u32; 3]; 3];
    for (i, row) in product.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..6).map(|k| sk.i_plus[i][k] * sk.i_minus[k][j]).sum();
        }
    }
    let legal = table();
    let families = |a: MetaType, b: MetaType| -> BTreeSet<LinkFamily> {
        legal.iter().filter(|&&(s, _, d)| s == a && d == b).map(|&(_, t, _)| t.family()).collect()
    };
    let r = check_factorization();
    ensure(r.product == product, || format!("reported product {:?} differs from {product:?}", r.product))?;
    let diag = [product[0][0], product[1][1], product[2][2]];
    ensure(r.cartan_diagonal == diag, || format!("diagonal reported as {:?}", r.cartan_diagonal))?;

    let derived: BTreeMap<(usize, usize), BTreeSet<SignedLinkType>> = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| {
            let (a, b) = (MetaType::ALL[i], MetaType::ALL[j]);
            ((i, j), legal.iter().filter(|&&(s, _, d)| s == a && d == b).map(|&(_, t, _)| t).collect())
        })
        .collect();
    let printed_diffs = derived.iter().filter(|((i, j), set)| &&sk.a_meta[*i][*j] != set).count();
    ensure(r.meta_adjacency_mismatches.len() == printed_diffs, || {
        format!(
            "{} printed meta-adjacency differences reported, {printed_diffs} exist",
            r.meta_adjacency_mismatches.len()
        )
    })?;

    let mut off = Vec::new();
    for (i, a) in MetaType::ALL.into_iter().enumerate() {
        for (j, b) in MetaType::ALL.into_iter().enumerate() {
            let n = families(a, b).len() as u32;
            if i != j && product[i][j] != n {
                off.push(format!("({},{}) product {} vs table {n}", a.symbol(), b.symbol(), product[i][j]));
            }
        }
    }
    ensure(off.is_empty(), || {
        format!("off-diagonal of I+·I- disagrees with the derived meta-adjacency: {}", off.join("; "))
    })?;
    Ok(format!("C = diag{diag:?}"))
}

fn c4_stepping_loses_memory() -> Outcome {
    let mut g = Graph::new();
    let ids: Vec<NodeId> =
        ["0", "1", "2"].iter().map(|n| g.add_node(n, MetaType::Event, Default::default()).unwrap()).collect();
    let (f1, f2) = (0.75, 1.25);
    g.add_typed_link(ids[1], SignedLinkType::LEADS_TO, None, ids[0], f1).unwrap();
    g.add_typed_link(ids[2], SignedLinkType::LEADS_TO, None, ids[0], f2).unwrap();
    let a = adjacency(&g, None);
    let sink = a.position(ids[0]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let values: Vec<f64> = (0..3).map(|_| rng.gen_range(0.5..10.0)).collect();
        let v = ValueVector::new(a.node_order.clone(), values.clone()).unwrap();
        let fv = forward_step(&a, &v).unwrap();
        for (i, &x) in fv.values.iter().enumerate() {
            ensure((i == sink) == (x != 0.0), || format!("F·v = {:?}", fv.values))?;
        }
        let bfv = backward_step(&a, &fv).unwrap();
        let gap = bfv.values.iter().zip(&values).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        ensure(gap > MEMORY_TOL, || format!("B·F·v recovered v within {gap}"))?;
    }
    let f_matrix = a.transpose();
    let det = determinant(&f_matrix.entries);
    let oracle = DMatrix::from_fn(3, 3, |i, j| f_matrix.entries[i][j]).determinant();
    ensure(det == 0.0 && oracle.abs() < MEMORY_TOL, || format!("det(F) = {det}, dense {oracle}"))?;
    ensure(!singularity_report(&a).invertible, || "reported invertible".into())?;
    Ok("F·v keeps only the sink, B·F·v ≠ v, det F = 0".into())
}

fn strongly_connected(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
    let mut m = vec![vec![0.0; n]; n];
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    for k in 0..n {
        m[perm[k]][perm[(k + 1) % n]] = rng.gen_range(0.5..2.0);
    }
    for x in m.iter_mut().flatten() {
        if rng.gen_bool(0.3) {
            *x += rng.gen_range(0.0..1.0);
        }
    }
    let d = rng.gen_range(0..n);
    m[d][d] += rng.gen_range(0.1..1.0);
    m
}

fn dense_principal(op: &DMatrix<f64>) -> (f64, Vec<f64>) {
    let n = op.nrows();
    let lambda = op.clone().complex_eigenvalues().iter().map(|c| c.re).fold(f64::NEG_INFINITY, f64::max);
    let svd = (op - DMatrix::identity(n, n) * lambda).svd(false, true);
    let vt = svd.v_t.unwrap();
    let k = (0..n).min_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b])).unwrap();
    let v: Vec<f64> = vt.row(k).iter().copied().collect();
    let sum: f64 = v.iter().sum();
    (lambda, v.iter().map(|x| x / sum).collect())
}

fn c5_spectral_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for case in 0..SPECTRAL_CASES {
        let n = rng.gen_range(2..=6);
        let m = strongly_connected(&mut rng, n);
        let a = AdjacencyView::from_rows(m.clone()).map_err(|e| e.to_string())?;
        for damping in [None, Some(0.85)] {
            let r = principal_eigenvector(&a, damping, EIGEN_TOL * 1e-4, 1_000_000).map_err(|e| e.to_string())?;
            let mut op = DMatrix::from_fn(n, n, |i, j| m[j][i]);
            if let Some(d) = damping {
                op = op * d + DMatrix::from_element(n, n, (1.0 - d) / n as f64);
            }
            let (lambda, v) = dense_principal(&op);
            let err = r
                .vector
                .values
                .iter()
                .zip(&v)
                .map(|(x, y)| (x - y).abs())
                .fold((r.eigenvalue - lambda).abs(), f64::max);
            worst = worst.max(err);
            ensure(err <= EIGEN_TOL, || format!("case {case} damping {damping:?}: error {err:e}"))?;
        }
    }
    let shape = GraphShape { metas: vec![MetaType::Event], families: vec![LinkFamily::LeadsTo], ..Default::default() };
    let mut sinks = 0;
    for _ in 0..SPECTRAL_CASES {
        let g = random_graph(&mut rng, &shape);
        let a = adjacency(&g, None);
        if a.zero_rows().is_empty() || g.link_count() == 0 {
            continue;
        }
        let r = principal_eigenvector(&a, None, EIGEN_TOL, 10_000).map_err(|e| e.to_string())?;
        ensure(r.degenerate, || "graph with a sink not flagged degenerate".into())?;
        sinks += 1;
    }
    ensure(sinks > 10, || format!("only {sinks} graphs with sinks"))?;
    Ok(format!("{SPECTRAL_CASES} matrices x 2 modes, max error {worst:.1e}; {sinks} sink graphs flagged"))
}

fn c6_entropy_bounds() -> Outcome {
    let config = Config { cases: 512, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let vectors = (1usize..40).prop_flat_map(|n| {
        (prop::collection::vec(prop_oneof![Just(0.0), 0.0f64..1e3], n), 2u32..16, 0..n, 1e-3f64..1e3)
    });
    runner
        .run(&vectors, |(v, base, at, scale)| {
            let n = v.len();
            let max = (n as f64).ln() / f64::from(base).ln();
            if v.iter().any(|&x| x > 0.0) {
                let s = entropy(&v, base).unwrap();
                prop_assert!(s >= -ENTROPY_TOL && s <= max + ENTROPY_TOL, "S = {} outside [0, {}]", s, max);
            }
            let mut point = vec![0.0; n];
            point[at] = scale;
            prop_assert!(entropy(&point, base).unwrap().abs() <= ENTROPY_TOL);
            let uniform = entropy(&vec![scale; n], base).unwrap();
            prop_assert!((uniform - max).abs() <= ENTROPY_TOL, "uniform {} vs {}", uniform, max);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("512 cases".into())
}

/// Clones `x` onto `copies` new nodes with every one of its links.
fn plant(g: &mut Graph, x: NodeId, copies: usize) -> Vec<NodeId> {
    let node = g.node(x).clone();
    let links: Vec<_> = g.links().iter().filter(|l| l.touches(x)).cloned().collect();
    let mut group = vec![x];
    for k in 0..copies {
        let c = g.add_node(&format!("{} copy {k}", node.proper_name), node.meta, node.attributes.clone()).unwrap();
        for l in &links {
            let sub = |n: NodeId| if n == x { c } else { n };
            g.add_typed_link(sub(l.src), l.typ, Some(&l.label), sub(l.dst), l.weight).unwrap();
        }
        group.push(c);
    }
    group
}

fn signature_groups(g: &Graph, family: LinkFamily) -> BTreeSet<BTreeSet<NodeId>> {
    let mut succ = vec![BTreeSet::new(); g.node_count()];
    let mut pred = vec![BTreeSet::new(); g.node_count()];
    for l in g.links().iter().filter(|l| l.family() == family) {
        let (a, b) = l.forward_endpoints();
        succ[a.index()].insert(b);
        pred[b.index()].insert(a);
        if family == LinkFamily::Near && a != b {
            succ[b.index()].insert(a);
            pred[a.index()].insert(b);
        }
    }
    let linked = |i: usize| !succ[i].is_empty() || !pred[i].is_empty();
    let mut out = BTreeSet::new();
    for i in (0..g.node_count()).filter(|&i| linked(i)) {
        let group: BTreeSet<NodeId> = (0..g.node_count())
            .filter(|&j| linked(j) && succ[i] == succ[j] && pred[i] == pred[j])
            .map(NodeId::new)
            .collect();
        if group.len() >= 2 {
            out.insert(group);
        }
    }
    out
}

fn c7_supernode_contraction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut planted_found = 0;
    let mut contractions = 0;
    let mut cases = 0;
    while cases < SUPERNODE_CASES {
        let mut g = random_graph(&mut rng, &GraphShape { nodes: 8, links: 18, ..Default::default() });
        let candidates: Vec<NodeId> = g
            .node_ids()
            .filter(|&n| g.links().iter().any(|l| l.touches(n)) && !g.links().iter().any(|l| l.src == n && l.dst == n))
            .collect();
        if candidates.is_empty() {
            continue;
        }
        let x = candidates[rng.gen_range(0..candidates.len())];
        let planted: BTreeSet<NodeId> = plant(&mut g, x, rng.gen_range(1..=2)).into_iter().collect();
        cases += 1;
        for family in LinkFamily::ALL {
            let groups = supernodes(&g, family);
            let found: BTreeSet<BTreeSet<NodeId>> =
                groups.iter().map(|s| s.members.iter().copied().collect()).collect();
            let oracle = signature_groups(&g, family);
            ensure(found == oracle, || format!("{family}: found {found:?}, oracle {oracle:?}"))?;
            if g.links().iter().any(|l| l.family() == family && l.touches(x)) {
                ensure(found.iter().any(|s| s.is_superset(&planted)), || format!("{family}: planted group missed"))?;
                planted_found += 1;
            }
            for group in groups.iter().filter(|s| !s.partial) {
                let view = FamilyView::new(&g, family);
                let merged = view.contract(&group.members).map_err(|e| e.to_string())?;
                let order = g.sorted_node_ids();
                let before = classify_view(&view, &order);
                for r in classify_view(&merged, &order).iter().filter(|r| !group.members.contains(&r.node)) {
                    let old = before.iter().find(|o| o.node == r.node);
                    ensure(old == Some(r), || format!("{family}: role of {} changed", g.describe(r.node)))?;
                }
                contractions += 1;
            }
        }
    }
    ensure(contractions > 0, || "no non-partial group was contracted".into())?;
    Ok(format!("{cases} graphs, {planted_found} planted groups found, {contractions} contractions"))
}

type Key = (Option<usize>, Vec<usize>);

fn arcs(g: &Graph, family: LinkFamily) -> BTreeSet<(usize, usize)> {
    g.links()
        .iter()
        .filter(|l| l.family() == family && l.src != l.dst)
        .map(|l| {
            let (a, b) = l.forward_endpoints();
            (a.index(), b.index())
        })
        .collect()
}

fn keys(hs: &[sst_core::Hypothesis]) -> BTreeSet<Key> {
    hs.iter().map(|h| (h.scope.map(NodeId::index), h.subjects.iter().map(|n| n.index()).collect())).collect()
}

fn c8_inference_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut produced = 0;
    for case in 0..INFERENCE_CASES {
        let nodes = rng.gen_range(1..=8);
        let g = random_graph(&mut rng, &GraphShape { nodes, links: 20, ..Default::default() });
        let n = g.node_count();
        let meta = |i: usize| g.node(NodeId::new(i)).meta;
        let c = arcs(&g, LinkFamily::Contains);
        let e = arcs(&g, LinkFamily::Expresses);
        let near = arcs(&g, LinkFamily::Near);
        let is_near = |a: usize, b: usize| near.contains(&(a, b)) || near.contains(&(b, a));

        let (mut prox, mut co, mut inherit) = (BTreeSet::new(), BTreeSet::new(), BTreeSet::new());
        for s in 0..n {
            for b in 0..n {
                for d in b + 1..n {
                    if c.contains(&(s, b)) && c.contains(&(s, d)) {
                        if !is_near(b, d) {
                            prox.insert((Some(s), vec![b, d]));
                        }
                        if meta(s) == MetaType::Event && meta(b) == MetaType::Thing && meta(d) == MetaType::Thing {
                            co.insert((Some(s), vec![b, d]));
                        }
                    }
                }
            }
        }
        for m in 0..n {
            for p in (0..n).filter(|&p| p != m && !e.contains(&(m, p))) {
                for s in 0..n {
                    if c.contains(&(s, m)) && e.contains(&(s, p)) {
                        inherit.insert((Some(s), vec![m, p]));
                    }
                    if is_near(s, m) && e.contains(&(s, p)) {
                        inherit.insert((None, vec![m, p]));
                    }
                }
            }
        }
        let checks = [
            ("proximity", keys(&infer_proximity(&g)), prox),
            ("copresence", keys(&infer_event_copresence(&g)), co),
            ("inheritance", keys(&infer_property_inheritance(&g)), inherit),
        ];
        for (name, got, want) in checks {
            ensure(got == want, || format!("case {case} {name}: got {got:?}, expected {want:?}"))?;
            produced += got.len();
        }

        let eq: BTreeSet<(LinkFamily, BTreeSet<NodeId>)> =
            infer_equivalence(&g).iter().map(|h| (h.family.unwrap(), h.subjects.iter().copied().collect())).collect();
        let want: BTreeSet<(LinkFamily, BTreeSet<NodeId>)> = LinkFamily::ALL
            .into_iter()
            .flat_map(|f| signature_groups(&g, f).into_iter().map(move |s| (f, s)))
            .collect();
        ensure(eq == want, || format!("case {case} equivalence: got {eq:?}, expected {want:?}"))?;
        produced += eq.len();

        for s in 0..n {
            for p in (0..n).filter(|&p| p != s) {
                let supporting = (0..n).any(|m| c.contains(&(s, m)) && e.contains(&(m, p)));
                let lifted = (0..n).any(|up| c.contains(&(up, s)) && e.contains(&(up, p)));
                let want = supporting && !e.contains(&(s, p)) && !lifted;
                let got = flag_invalid_generalizations(&g, NodeId::new(s), NodeId::new(p)).is_some();
                ensure(got == want, || format!("case {case} generalization {s}->{p}: got {got}"))?;
                produced += usize::from(got);
            }
        }
    }
    ensure(produced > 100, || format!("only {produced} hypotheses over all cases"))?;
    Ok(format!("{INFERENCE_CASES} graphs, {produced} hypotheses matched"))
}

fn c9_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let aliases = AliasTable::default();
    for case in 0..ROUND_TRIP_CASES {
        let shape = GraphShape {
            nodes: rng.gen_range(0..12),
            links: rng.gen_range(0..30),
            awkward_names: true,
            custom_labels: 0.3,
            ..Default::default()
        };
        let g = random_graph(&mut rng, &shape);
        let doc = parse(&serialize(&g)).map_err(|e| format!("case {case}: {e:?}"))?;
        let back = build(&doc, &aliases).map_err(|e| format!("case {case}: {e:?}"))?;
        ensure(back.is_isomorphic(&g), || format!("case {case}: notation round trip not isomorphic"))?;
        let json = sst_core::json::export(&g);
        let again = sst_core::json::import(&json).map_err(|e| format!("case {case}: {e}"))?;
        ensure(sst_core::json::export(&again) == json, || format!("case {case}: JSON not byte-stable"))?;
    }
    Ok(format!("{ROUND_TRIP_CASES} graphs"))
}

/// Cells where the printed join matrix is known to differ from the table.
const DOCUMENTED_JOIN_DIFFS: &[(&str, &str)] = &[("E", "C"), ("E", "E"), ("E", "N")];

fn c10_join_matrix() -> Outcome {
    let legal = table();
    let (code, first, _) = sst(&["skeleton"]);
    let (_, second, _) = sst(&["skeleton"]);
    ensure(code == 0, || format!("skeleton exited {code}"))?;
    let a = &first["sections"]["skeleton"];
    ensure(a == &second["sections"]["skeleton"], || "skeleton report is not stable".into())?;
    let cells = a["join"]["cells"].as_array().cloned().unwrap_or_default();
    ensure(cells.len() == 16, || format!("{} join cells", cells.len()))?;
    let mut diffs = Vec::new();
    for cell in &cells {
        let f1: LinkFamily = cell["first"].as_str().unwrap().parse().unwrap();
        let f2: LinkFamily = cell["second"].as_str().unwrap().parse().unwrap();
        let oracle: BTreeSet<MetaType> = MetaType::ALL
            .into_iter()
            .filter(|&m| {
                legal.iter().any(|&(_, t, d)| d == m && t == f1.forward())
                    && legal.iter().any(|&(s, t, _)| s == m && t == f2.forward())
            })
            .collect();
        let derived: BTreeSet<MetaType> = serde_json::from_value(cell["derived"].clone()).map_err(|e| e.to_string())?;
        ensure(derived == oracle && derived == join_types(f1, f2), || format!("J[{f1},{f2}] = {derived:?}"))?;
        ensure(cell["published"].is_array(), || "published cell missing".into())?;
        if cell["matches"] == false {
            diffs.push((f1.to_string(), f2.to_string()));
        }
    }
    let documented: Vec<(String, String)> =
        DOCUMENTED_JOIN_DIFFS.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    ensure(diffs == documented, || format!("join differences {diffs:?}, documented {documented:?}"))?;
    ensure(a["join_table"].as_str().is_some_and(|t| t.matches('*').count() == diffs.len()), || {
        "join table does not mark every difference".into()
    })?;
    Ok(format!("16 cells emitted, {} documented differences", diffs.len()))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, name: "transition-table completeness", limit: Duration::from_secs(1), run: c1_transition_table },
    Criterion { id: 2, name: "appendix corpus", limit: Duration::from_secs(1), run: c2_appendix_corpus },
    Criterion { id: 3, name: "skeleton factorization", limit: Duration::from_secs(1), run: c3_skeleton_factorization },
    Criterion {
        id: 4,
        name: "stepping-operator information loss",
        limit: Duration::from_secs(1),
        run: c4_stepping_loses_memory,
    },
    Criterion { id: 5, name: "spectral oracle", limit: Duration::from_secs(10), run: c5_spectral_oracle },
    Criterion { id: 6, name: "entropy bounds", limit: Duration::from_secs(1), run: c6_entropy_bounds },
    Criterion { id: 7, name: "supernode contraction", limit: Duration::from_secs(5), run: c7_supernode_contraction },
    Criterion { id: 8, name: "inference oracle", limit: Duration::from_secs(10), run: c8_inference_oracle },
    Criterion { id: 9, name: "round-trip", limit: Duration::from_secs(5), run: c9_round_trip },
    Criterion { id: 10, name: "join-matrix derivation", limit: Duration::from_secs(1), run: c10_join_matrix },
];

fn main() {
    if std::env::args().any(|a| a == "--list") {
        for c in CRITERIA {
            println!("criterion_{:02}: test", c.id);
        }
        return;
    }
    std::env::remove_var("SST_ALIASES");
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > c.limit => Err(format!("took {elapsed:?}, limit {:?}", c.limit)),
            other => other,
        };
        let time = format!("{:.0} ms / {} ms", elapsed.as_secs_f64() * 1e3, c.limit.as_millis());
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} {} [{time}] {detail}", c.id, c.name),
            Err(reason) => {
                failed += 1;
                println!("FAIL criterion {:>2} {} [{time}] {reason}", c.id, c.name);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", CRITERIA.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
