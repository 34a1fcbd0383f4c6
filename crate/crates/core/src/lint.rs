//! Modelling warnings for graphs that pass the transition rules but are
//! probably not what the author meant.

use std::collections::BTreeSet;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::alias::{label_key, PROXIMITY_LABELS};
use crate::graph::{Graph, LinkId, NodeId};
use crate::inference::{flag_invalid_generalizations, Hypothesis};
use crate::types::{LinkFamily, MetaType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LintRule {
    InvalidGeneralization,
    LikenessBetweenThings,
    UnanchoredConcepts,
    SelfLoop,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LintWarning {
    pub rule: LintRule,
    /// Source line of the offending link, when known.
    pub line: Option<usize>,
    pub message: String,
    pub nodes: Vec<NodeId>,
    pub links: Vec<LinkId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypothesis: Option<Hypothesis>,
}

/// Runs every rule. `link_lines[i]` is the source line of link `i`; pass
/// an empty slice when there is no source.
pub fn lint(g: &Graph, link_lines: &[usize]) -> Vec<LintWarning> {
    let line = |id: LinkId| link_lines.get(id.index()).copied();
    let mut out = Vec::new();

    for id in g.link_ids() {
        let l = g.link(id);
        if l.src == l.dst {
            out.push(LintWarning {
                rule: LintRule::SelfLoop,
                line: line(id),
                message: format!("{} ({}) links to itself", g.describe(l.src), l.label),
                nodes: vec![l.src],
                links: vec![id],
                hypothesis: None,
            });
        }

        let (from, to) = l.forward_endpoints();
        match l.family() {
            LinkFamily::Near
                if g.node(from).meta == MetaType::Thing
                    && !PROXIMITY_LABELS.contains(&label_key(&l.label).as_str()) =>
            {
                out.push(LintWarning {
                    rule: LintRule::LikenessBetweenThings,
                    line: line(id),
                    message: format!(
                        "things {} and {} are linked by likeness ({}); things can only be near, \
                         likeness belongs between their concepts",
                        g.describe(from),
                        g.describe(to),
                        l.label
                    ),
                    nodes: vec![from, to],
                    links: vec![id],
                    hypothesis: None,
                });
            }
            LinkFamily::Expresses => {
                // Judged on the graph as written up to this link.
                if let Some(h) = flag_invalid_generalizations(&g.with_link_prefix(id.index()), from, to) {
                    out.push(LintWarning {
                        rule: LintRule::InvalidGeneralization,
                        line: line(id),
                        message: format!(
                            "{} expresses {} only because members do; this generalizes upward",
                            g.describe(from),
                            g.describe(to)
                        ),
                        nodes: vec![from, to],
                        links: vec![id],
                        hypothesis: Some(h),
                    });
                }
            }
            _ => {}
        }
    }

    out.extend(concept_islands(g, &line));
    out.sort_by(|a, b| (a.line, a.rule, &a.nodes).cmp(&(b.line, b.rule, &b.nodes)));
    out
}

/// Connected groups of two or more concepts that no event or thing
/// links into.
fn concept_islands(g: &Graph, line: &dyn Fn(LinkId) -> Option<usize>) -> Vec<LintWarning> {
    let mut uf = UnionFind::<usize>::new(g.node_count());
    for l in g.links() {
        uf.union(l.src.index(), l.dst.index());
    }
    let labels = uf.into_labeling();
    let rank = g.node_ranks();
    let mut out = Vec::new();
    let roots: BTreeSet<usize> = labels.iter().copied().collect();
    for root in roots {
        let mut nodes: Vec<NodeId> = g.node_ids().filter(|n| labels[n.index()] == root).collect();
        if nodes.len() < 2 || nodes.iter().any(|&n| g.node(n).meta != MetaType::Concept) {
            continue;
        }
        nodes.sort_by_key(|n| rank[n.index()]);
        let links: Vec<LinkId> = g.link_ids().filter(|&id| labels[g.link(id).src.index()] == root).collect();
        let names: Vec<String> = nodes.iter().map(|&n| g.describe(n)).collect();
        out.push(LintWarning {
            rule: LintRule::UnanchoredConcepts,
            line: links.iter().filter_map(|&id| line(id)).min(),
            message: format!(
                "concepts {} are linked only to each other; no event or thing expresses them",
                names.join(", ")
            ),
            nodes,
            links,
            hypothesis: None,
        });
    }
    out
}
