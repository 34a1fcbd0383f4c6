//! DOT and CSV renderings.
//!
//! DOT styling is fixed:
//!
//! | family | edge attributes |
//! |--------|-----------------|
//! | L | `color="black"` |
//! | C | `color="blue", arrowhead="diamond"` |
//! | E | `color="darkgreen", style="dashed"` |
//! | N | `color="gray50", style="dotted", dir="none"` |
//!
//! Events are ellipses, things boxes, concepts hexagons. Nodes are named
//! `n0`, `n1`, … in `(meta, name)` order and edges follow link order.

use std::collections::HashMap;
use std::fmt::Write;

use sst_core::matrix::adjacency;
use sst_core::{Graph, LinkFamily, MetaType};

fn edge_style(family: LinkFamily) -> &'static str {
    match family {
        LinkFamily::LeadsTo => r#"color="black""#,
        LinkFamily::Contains => r#"color="blue", arrowhead="diamond""#,
        LinkFamily::Expresses => r#"color="darkgreen", style="dashed""#,
        LinkFamily::Near => r#"color="gray50", style="dotted", dir="none""#,
    }
}

fn node_shape(meta: MetaType) -> &'static str {
    match meta {
        MetaType::Event => "ellipse",
        MetaType::Thing => "box",
        MetaType::Concept => "hexagon",
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if matches!(c, '"' | '\\') {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub fn dot(g: &Graph, family: Option<LinkFamily>) -> String {
    let rank = g.node_ranks();
    let mut out = String::from("digraph sst {\n");
    for id in g.sorted_node_ids() {
        let n = g.node(id);
        let _ = writeln!(
            out,
            "  n{} [label={}, shape=\"{}\", meta=\"{}\"];",
            rank[id.index()],
            quote(&n.proper_name),
            node_shape(n.meta),
            n.meta
        );
    }
    for l in g.links().iter().filter(|l| family.is_none_or(|f| l.family() == f)) {
        let _ = writeln!(
            out,
            "  n{} -> n{} [label={}, family=\"{}\", {}];",
            rank[l.src.index()],
            rank[l.dst.index()],
            quote(&l.label),
            l.family(),
            edge_style(l.family())
        );
    }
    out.push_str("}\n");
    out
}

/// Header names: proper names, qualified with `:meta` only when two nodes
/// share a name.
fn header_names(g: &Graph) -> Vec<String> {
    let mut uses: HashMap<&str, usize> = HashMap::new();
    for n in g.nodes() {
        *uses.entry(n.proper_name.as_str()).or_default() += 1;
    }
    g.sorted_node_ids()
        .into_iter()
        .map(|id| {
            let n = g.node(id);
            if uses[n.proper_name.as_str()] > 1 {
                g.describe(id)
            } else {
                n.proper_name.clone()
            }
        })
        .collect()
}

pub fn csv_adjacency(g: &Graph, family: Option<LinkFamily>) -> String {
    let a = adjacency(g, family);
    let names = header_names(g);
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let header = std::iter::once(String::new()).chain(names.iter().cloned());
    w.write_record(header).expect("writing to memory");
    for (name, row) in names.iter().zip(&a.entries) {
        let cells = std::iter::once(name.clone()).chain(row.iter().map(|x| x.to_string()));
        w.write_record(cells).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv of utf-8 fields")
}
