use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::FamilyView;
use crate::graph::{Graph, NodeId};
use crate::types::LinkFamily;

/// In-neighbour and out-neighbour sets of a node for one family.
pub type Signature = (BTreeSet<NodeId>, BTreeSet<NodeId>);

pub fn signature_of(view: &FamilyView, n: NodeId) -> Signature {
    (view.predecessors(n).keys().copied().collect(), view.successors(n).keys().copied().collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupernodeGroup {
    /// At least two, in graph node order.
    pub members: Vec<NodeId>,
    pub family: LinkFamily,
    /// `in={…} out={…}` with neighbours written as `name:meta`.
    pub signature: String,
    pub partial: bool,
    /// Other families in which the members' signatures disagree.
    pub differing_families: Vec<LinkFamily>,
    /// Members share neighbours but not link weights.
    pub weights_differ: bool,
}

fn encode(g: &Graph, rank: &[usize], sig: &Signature) -> String {
    let side = |s: &BTreeSet<NodeId>| {
        let mut ids: Vec<NodeId> = s.iter().copied().collect();
        ids.sort_by_key(|n| rank[n.index()]);
        ids.iter().map(|&n| g.describe(n)).collect::<Vec<_>>().join(", ")
    };
    format!("in={{{}}} out={{{}}}", side(&sig.0), side(&sig.1))
}

/// Groups nodes with identical neighbour sets for `family`. A group is
/// partial when the members differ in another family or in link weights.
pub fn supernodes(g: &Graph, family: LinkFamily) -> Vec<SupernodeGroup> {
    let rank = g.node_ranks();
    let view = FamilyView::new(g, family);
    let others: Vec<(LinkFamily, FamilyView)> =
        LinkFamily::ALL.into_iter().filter(|&f| f != family).map(|f| (f, FamilyView::new(g, f))).collect();

    let mut groups: BTreeMap<Signature, Vec<NodeId>> = BTreeMap::new();
    for n in g.sorted_node_ids() {
        if view.is_linked(n) {
            groups.entry(signature_of(&view, n)).or_default().push(n);
        }
    }

    let mut out: Vec<SupernodeGroup> = groups
        .into_iter()
        .filter(|(_, members)| members.len() >= 2)
        .map(|(sig, members)| {
            let differing_families: Vec<LinkFamily> = others
                .iter()
                .filter(|(_, v)| {
                    let first = signature_of(v, members[0]);
                    members[1..].iter().any(|&m| signature_of(v, m) != first)
                })
                .map(|(f, _)| *f)
                .collect();
            let weights = |m: NodeId| (view.predecessors(m).clone(), view.successors(m).clone());
            let w0 = weights(members[0]);
            let weights_differ = members[1..].iter().any(|&m| weights(m) != w0);
            SupernodeGroup {
                signature: encode(g, &rank, &sig),
                family,
                partial: weights_differ || !differing_families.is_empty(),
                differing_families,
                weights_differ,
                members,
            }
        })
        .collect();
    out.sort_by_key(|grp| rank[grp.members[0].index()]);
    out
}
