//! Structural diagnostics over one link family at a time.

mod absorbing;
mod roles;
mod supernode;
mod trace;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, NodeId};
use crate::types::LinkFamily;

pub use absorbing::{absorbing_regions, absorbing_regions_in, AbsorbingRegion};
pub use roles::{classify_roles, classify_view, NodeRole, Role};
pub use supernode::{signature_of, supernodes, Signature, SupernodeGroup};
pub use trace::{trace, ChainTrace, Termination, DEFAULT_TRACE_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("no node with id {0}")]
    UnknownNode(NodeId),
    #[error("trace budget must be at least 1")]
    ZeroBudget,
    #[error("a supernode group needs at least two members")]
    GroupTooSmall,
}

/// Forward arrows of one family as weighted neighbour maps, with a
/// multiplicity per node so that a contracted group still counts as the
/// nodes it replaced.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyView {
    pub family: LinkFamily,
    present: Vec<bool>,
    multiplicity: Vec<usize>,
    outs: Vec<BTreeMap<NodeId, f64>>,
    ins: Vec<BTreeMap<NodeId, f64>>,
}

impl FamilyView {
    pub fn new(g: &Graph, family: LinkFamily) -> Self {
        let n = g.node_count();
        let mut view = FamilyView {
            family,
            present: vec![true; n],
            multiplicity: vec![1; n],
            outs: vec![BTreeMap::new(); n],
            ins: vec![BTreeMap::new(); n],
        };
        for a in g.arrows(Some(family)) {
            *view.outs[a.from.index()].entry(a.to).or_default() += a.weight;
            *view.ins[a.to.index()].entry(a.from).or_default() += a.weight;
        }
        view
    }

    /// Nodes still present, in id order.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.present.len()).filter(|&i| self.present[i]).map(NodeId::new)
    }

    pub fn contains(&self, n: NodeId) -> bool {
        self.present.get(n.index()).copied().unwrap_or(false)
    }

    pub fn successors(&self, n: NodeId) -> &BTreeMap<NodeId, f64> {
        &self.outs[n.index()]
    }

    pub fn predecessors(&self, n: NodeId) -> &BTreeMap<NodeId, f64> {
        &self.ins[n.index()]
    }

    pub fn multiplicity(&self, n: NodeId) -> usize {
        self.multiplicity[n.index()]
    }

    /// Distinct predecessors, each counted with its multiplicity.
    pub fn in_degree(&self, n: NodeId) -> usize {
        self.ins[n.index()].keys().map(|&m| self.multiplicity(m)).sum()
    }

    pub fn out_degree(&self, n: NodeId) -> usize {
        self.outs[n.index()].keys().map(|&m| self.multiplicity(m)).sum()
    }

    pub fn is_linked(&self, n: NodeId) -> bool {
        !self.ins[n.index()].is_empty() || !self.outs[n.index()].is_empty()
    }

    /// Merges `group` into its smallest member. Weights into and out of
    /// the group are summed; links inside the group become self-loops.
    pub fn contract(&self, group: &[NodeId]) -> Result<FamilyView, AnalysisError> {
        let members: BTreeSet<NodeId> = group.iter().copied().collect();
        if members.len() < 2 {
            return Err(AnalysisError::GroupTooSmall);
        }
        if let Some(&bad) = members.iter().find(|&&m| !self.contains(m)) {
            return Err(AnalysisError::UnknownNode(bad));
        }
        let rep = *members.iter().next().expect("non-empty");
        let map = |n: NodeId| if members.contains(&n) { rep } else { n };
        let mut out = self.clone();
        for (i, present) in out.present.iter_mut().enumerate() {
            if members.contains(&NodeId::new(i)) && NodeId::new(i) != rep {
                *present = false;
            }
        }
        out.multiplicity[rep.index()] = members.iter().map(|&m| self.multiplicity(m)).sum();
        for side in [&mut out.outs, &mut out.ins] {
            for adj in side.iter_mut() {
                *adj = std::mem::take(adj).into_iter().fold(BTreeMap::new(), |mut acc, (n, w)| {
                    *acc.entry(map(n)).or_default() += w;
                    acc
                });
            }
        }
        for &m in members.iter().filter(|&&m| m != rep) {
            let (o, i) = (std::mem::take(&mut out.outs[m.index()]), std::mem::take(&mut out.ins[m.index()]));
            for (n, w) in o {
                *out.outs[rep.index()].entry(n).or_default() += w;
            }
            for (n, w) in i {
                *out.ins[rep.index()].entry(n).or_default() += w;
            }
        }
        Ok(out)
    }
}
