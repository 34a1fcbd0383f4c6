use serde::Serialize;

use super::{AnalysisError, Direction};
use crate::graph::{Graph, LinkId, NodeId};
use crate::types::{LinkFamily, MetaType};

pub const DEFAULT_TRACE_BUDGET: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    TerminatedAtSink,
    /// The last node of the path repeats an earlier one.
    CycleDetected,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainTrace {
    pub path: Vec<NodeId>,
    /// Link used for each hop.
    pub links: Vec<LinkId>,
    pub family: LinkFamily,
    pub termination: Termination,
    /// What a chain of this family is expected to end on.
    pub expected_terminal: &'static str,
    /// Whether the chain ends as expected; `None` when the budget ran out.
    pub conforms: Option<bool>,
}

impl ChainTrace {
    pub fn hops(&self) -> usize {
        self.path.len() - 1
    }
}

fn expected_terminal(family: LinkFamily) -> &'static str {
    match family {
        LinkFamily::LeadsTo => "final event or never",
        LinkFamily::Contains => "atomic thing (component)",
        LinkFamily::Expresses => "atomic concept (property)",
        LinkFamily::Near => "no termination requirement",
    }
}

fn conforms(family: LinkFamily, termination: Termination, last: MetaType) -> Option<bool> {
    match (termination, family) {
        (Termination::BudgetExhausted, _) => None,
        (_, LinkFamily::Near) => Some(true),
        (Termination::CycleDetected, f) => Some(f == LinkFamily::LeadsTo),
        (_, LinkFamily::LeadsTo) => Some(last == MetaType::Event),
        (_, LinkFamily::Contains) => Some(last == MetaType::Thing),
        (_, LinkFamily::Expresses) => Some(last == MetaType::Concept),
    }
}

struct Walker<'a> {
    g: &'a Graph,
    family: LinkFamily,
    next: Vec<Vec<(NodeId, LinkId)>>,
    budget: usize,
    out: Vec<ChainTrace>,
}

impl Walker<'_> {
    fn emit(&mut self, path: &[NodeId], links: &[LinkId], termination: Termination) {
        let last = self.g.node(*path.last().expect("non-empty path")).meta;
        self.out.push(ChainTrace {
            path: path.to_vec(),
            links: links.to_vec(),
            family: self.family,
            termination,
            expected_terminal: expected_terminal(self.family),
            conforms: conforms(self.family, termination, last),
        });
    }

    /// Returns false once the budget is spent.
    fn walk(&mut self, path: &mut Vec<NodeId>, links: &mut Vec<LinkId>) -> bool {
        let here = *path.last().expect("non-empty path");
        // A symmetric link is not walked straight back.
        let steps: Vec<(NodeId, LinkId)> =
            self.next[here.index()].iter().copied().filter(|&(_, l)| links.last() != Some(&l)).collect();
        if steps.is_empty() {
            self.emit(path, links, Termination::TerminatedAtSink);
            return true;
        }
        for (to, link) in steps {
            if self.budget == 0 {
                self.emit(path, links, Termination::BudgetExhausted);
                return false;
            }
            self.budget -= 1;
            path.push(to);
            links.push(link);
            let go_on = if path[..path.len() - 1].contains(&to) {
                self.emit(path, links, Termination::CycleDetected);
                true
            } else {
                self.walk(path, links)
            };
            path.pop();
            links.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Enumerates maximal paths of one family from `start`, depth first. Each
/// hop costs one unit of `budget`; when it runs out the current path is
/// reported as budget-exhausted and enumeration stops.
pub fn trace(
    g: &Graph,
    start: NodeId,
    family: LinkFamily,
    direction: Direction,
    budget: usize,
) -> Result<Vec<ChainTrace>, AnalysisError> {
    if g.get_node(start).is_none() {
        return Err(AnalysisError::UnknownNode(start));
    }
    if budget == 0 {
        return Err(AnalysisError::ZeroBudget);
    }
    let rank = g.node_ranks();
    let mut next = vec![Vec::new(); g.node_count()];
    for a in g.arrows(Some(family)) {
        let (from, to) = match direction {
            Direction::Forward => (a.from, a.to),
            Direction::Backward => (a.to, a.from),
        };
        next[from.index()].push((to, a.link));
    }
    for steps in &mut next {
        steps.sort_by_key(|&(to, l)| (rank[to.index()], l));
    }
    let mut w = Walker { g, family, next, budget, out: Vec::new() };
    w.walk(&mut vec![start], &mut Vec::new());
    Ok(w.out)
}
