use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use super::{Direction, FamilyView};
use crate::graph::{Graph, NodeId};
use crate::types::LinkFamily;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbsorbingRegion {
    /// Sorted by node order of the graph.
    pub nodes: Vec<NodeId>,
    pub family: LinkFamily,
}

pub fn absorbing_regions(g: &Graph, family: LinkFamily) -> Vec<AbsorbingRegion> {
    absorbing_regions_in(g, family, Direction::Forward)
}

/// Terminal strongly connected components of the family subgraph, read in
/// `direction`. Nodes without links of the family are ignored.
pub fn absorbing_regions_in(g: &Graph, family: LinkFamily, direction: Direction) -> Vec<AbsorbingRegion> {
    let view = FamilyView::new(g, family);
    let rank = g.node_ranks();
    let mut pg: DiGraph<NodeId, ()> = DiGraph::new();
    let idx: Vec<_> = g.node_ids().map(|n| pg.add_node(n)).collect();
    for n in g.node_ids() {
        for &m in view.successors(n).keys() {
            let (a, b) = match direction {
                Direction::Forward => (n, m),
                Direction::Backward => (m, n),
            };
            pg.add_edge(idx[a.index()], idx[b.index()], ());
        }
    }

    let mut comp = vec![0; g.node_count()];
    let sccs = tarjan_scc(&pg);
    for (c, members) in sccs.iter().enumerate() {
        for &i in members {
            comp[pg[i].index()] = c;
        }
    }
    let mut regions: Vec<AbsorbingRegion> = sccs
        .iter()
        .enumerate()
        .filter(|(c, members)| {
            members.iter().any(|&i| view.is_linked(pg[i]))
                && members.iter().all(|&i| pg.neighbors(i).all(|j| comp[pg[j].index()] == *c))
        })
        .map(|(_, members)| {
            let mut nodes: Vec<NodeId> = members.iter().map(|&i| pg[i]).collect();
            nodes.sort_by_key(|n| rank[n.index()]);
            AbsorbingRegion { nodes, family }
        })
        .collect();
    regions.sort_by_key(|r| rank[r.nodes[0].index()]);
    regions
}
