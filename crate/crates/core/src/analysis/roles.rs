use std::collections::BTreeSet;

use serde::Serialize;

use super::FamilyView;
use crate::graph::{Graph, NodeId};
use crate::types::LinkFamily;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Source,
    Sink,
    /// In-degree of at least two.
    Appointed,
    /// Out-degree of at least two.
    Appointing,
    /// Same nodes as `Appointed`.
    Hub,
    /// Same nodes as `Appointing`.
    Authority,
    /// Appointed, with at least half of its appointers appointed too.
    Central,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeRole {
    pub node: NodeId,
    pub family: LinkFamily,
    pub roles: BTreeSet<Role>,
    pub in_degree: usize,
    pub out_degree: usize,
}

/// Roles of every node with at least one link of `family`, in
/// [`Graph::sorted_node_ids`] order.
pub fn classify_roles(g: &Graph, family: LinkFamily) -> Vec<NodeRole> {
    let view = FamilyView::new(g, family);
    let order: Vec<NodeId> = g.sorted_node_ids();
    classify_view(&view, &order)
}

/// Roles over a (possibly contracted) view, listing nodes of `order` that
/// are still present.
pub fn classify_view(view: &FamilyView, order: &[NodeId]) -> Vec<NodeRole> {
    let appointed = |n: NodeId| view.in_degree(n) >= 2;
    order
        .iter()
        .copied()
        .filter(|&n| view.contains(n) && view.is_linked(n))
        .map(|n| {
            let (din, dout) = (view.in_degree(n), view.out_degree(n));
            let mut roles = BTreeSet::new();
            if din == 0 && dout > 0 {
                roles.insert(Role::Source);
            }
            if dout == 0 && din > 0 {
                roles.insert(Role::Sink);
            }
            if din >= 2 {
                roles.extend([Role::Appointed, Role::Hub]);
                let appointed_in: usize =
                    view.predecessors(n).keys().filter(|&&m| appointed(m)).map(|&m| view.multiplicity(m)).sum();
                if 2 * appointed_in >= din {
                    roles.insert(Role::Central);
                }
            }
            if dout >= 2 {
                roles.extend([Role::Appointing, Role::Authority]);
            }
            NodeRole { node: n, family: view.family, roles, in_degree: din, out_degree: dout }
        })
        .collect()
}
