//! Random legal graphs, for property tests and benchmarks.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::alias::AliasTable;
use crate::graph::Graph;
use crate::transition::allowed_types;
use crate::types::{LinkFamily, MetaType, SignedLinkType};

/// Shape of a generated graph.
#[derive(Debug, Clone)]
pub struct GraphShape {
    pub nodes: usize,
    /// Link attempts; illegal pairs and duplicates are skipped.
    pub links: usize,
    pub metas: Vec<MetaType>,
    pub families: Vec<LinkFamily>,
    /// Probability that a link gets a non-unit weight.
    pub weighted: f64,
    /// Use names with quotes, backslashes and other awkward characters.
    pub awkward_names: bool,
    /// Probability that a link uses a freshly invented label.
    pub custom_labels: f64,
}

impl Default for GraphShape {
    fn default() -> Self {
        GraphShape {
            nodes: 8,
            links: 16,
            metas: MetaType::ALL.to_vec(),
            families: LinkFamily::ALL.to_vec(),
            weighted: 0.3,
            awkward_names: false,
            custom_labels: 0.0,
        }
    }
}

const AWKWARD: &[&str] = &["\"", "\\", " ", "#", "(", ")", ":", "é", "=", "\t"];

fn node_name<R: Rng>(rng: &mut R, i: usize, awkward: bool) -> String {
    if !awkward {
        return format!("n{i}");
    }
    let mut name = format!("node {i}");
    for _ in 0..rng.gen_range(0..3) {
        let pos = rng.gen_range(0..=name.len());
        if name.is_char_boundary(pos) {
            name.insert_str(pos, AWKWARD.choose(rng).unwrap());
        }
    }
    name
}

/// Generates a graph whose every link is legal. Node names are unique, so
/// the shape of the result depends only on the random stream.
pub fn random_graph<R: Rng>(rng: &mut R, shape: &GraphShape) -> Graph {
    let mut g = Graph::with_aliases(AliasTable::default());
    let defaults: Vec<(String, SignedLinkType)> =
        AliasTable::default().iter().map(|(l, t)| (l.to_string(), t)).collect();
    let mut ids = Vec::with_capacity(shape.nodes);
    for i in 0..shape.nodes {
        let meta = *shape.metas.choose(rng).expect("at least one meta-type");
        let mut attrs = BTreeMap::new();
        if rng.gen_bool(0.2) {
            attrs.insert("k".to_string(), format!("v\"{i}\\"));
        }
        let name = node_name(rng, i, shape.awkward_names);
        ids.push(g.add_node(&name, meta, attrs).expect("generated names are valid"));
    }
    if ids.is_empty() {
        return g;
    }
    for _ in 0..shape.links {
        let src = *ids.choose(rng).unwrap();
        let dst = *ids.choose(rng).unwrap();
        let (sm, dm) = (g.node(src).meta, g.node(dst).meta);
        let types: Vec<SignedLinkType> =
            allowed_types(sm, dm).into_iter().filter(|t| shape.families.contains(&t.family())).collect();
        let Some(&typ) = types.choose(rng) else { continue };
        let weight = if rng.gen_bool(shape.weighted) { (rng.gen_range(1..=40) as f64) * 0.25 } else { 1.0 };
        let label = if rng.gen_bool(shape.custom_labels) {
            format!("rel {typ} {}", rng.gen_range(0..5)).replace(['+', '-'], "x")
        } else {
            let candidates: Vec<&String> = defaults.iter().filter(|(_, t)| *t == typ).map(|(l, _)| l).collect();
            candidates.choose(rng).unwrap().to_string()
        };
        let _ = g.add_typed_link(src, typ, Some(&label), dst, weight);
    }
    g
}
