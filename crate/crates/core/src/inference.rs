//! "Might" hypotheses drawn from structural patterns.
//!
//! Every generator is read-only and returns hypotheses sorted by kind,
//! then subjects. A hypothesis lists as `basis` all links that support it;
//! nothing here ever adds a link to the graph.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::analysis::supernodes;
use crate::graph::{Graph, LinkId, NodeId};
use crate::types::{LinkFamily, MetaType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HypothesisKind {
    MightBeNear,
    EventCopresence,
    MightHaveProperty,
    FunctionalEquivalence,
    InvalidGeneralization,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Possible,
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Hypothesis {
    pub kind: HypothesisKind,
    /// Pairs are `(a, b)` with `a < b`; property hypotheses are
    /// `(holder, property)`; equivalences list the group.
    pub subjects: Vec<NodeId>,
    /// The container or event the hypothesis is scoped to.
    pub scope: Option<NodeId>,
    /// Sorted, without duplicates.
    pub basis: Vec<LinkId>,
    pub tier: Tier,
    pub family: Option<LinkFamily>,
    pub notes: Vec<String>,
}

impl Hypothesis {
    fn possible(kind: HypothesisKind, subjects: Vec<NodeId>, scope: Option<NodeId>, basis: Vec<LinkId>) -> Self {
        let mut basis = basis;
        basis.sort();
        basis.dedup();
        Hypothesis { kind, subjects, scope, basis, tier: Tier::Possible, family: None, notes: Vec::new() }
    }
}

type Pairs = BTreeMap<(NodeId, NodeId), Vec<LinkId>>;

/// Forward links of one family keyed by `(from, to)`, self-loops dropped.
/// `N` links are keyed with the smaller id first.
fn pairs(g: &Graph, family: LinkFamily) -> Pairs {
    let mut out: Pairs = BTreeMap::new();
    for id in g.link_ids() {
        let l = g.link(id);
        if l.family() != family {
            continue;
        }
        let (a, b) = l.forward_endpoints();
        if a == b {
            continue;
        }
        let key = if family == LinkFamily::Near { (a.min(b), a.max(b)) } else { (a, b) };
        out.entry(key).or_default().push(id);
    }
    out
}

fn grouped(p: &Pairs) -> BTreeMap<NodeId, Vec<NodeId>> {
    let mut out: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
    for &(a, b) in p.keys() {
        out.entry(a).or_default().push(b);
    }
    out
}

fn member_pairs(g: &Graph, kind: HypothesisKind, keep: impl Fn(NodeId, NodeId, NodeId) -> bool) -> Vec<Hypothesis> {
    let contains = pairs(g, LinkFamily::Contains);
    let mut out = Vec::new();
    for (container, members) in grouped(&contains) {
        for (i, &b) in members.iter().enumerate() {
            for &c in &members[i + 1..] {
                if keep(container, b, c) {
                    let basis = [contains[&(container, b)].as_slice(), &contains[&(container, c)]].concat();
                    out.push(Hypothesis::possible(kind, vec![b, c], Some(container), basis));
                }
            }
        }
    }
    out.sort();
    out
}

/// Two members of one container might be near each other on the scale of
/// the container. Pairs already linked by `N` are skipped.
pub fn infer_proximity(g: &Graph) -> Vec<Hypothesis> {
    let near = pairs(g, LinkFamily::Near);
    member_pairs(g, HypothesisKind::MightBeNear, |_, b, c| !near.contains_key(&(b, c)))
}

/// Two things taking part in the same event were near each other then.
pub fn infer_event_copresence(g: &Graph) -> Vec<Hypothesis> {
    let is = |n: NodeId, m: MetaType| g.node(n).meta == m;
    member_pairs(g, HypothesisKind::EventCopresence, |e, b, c| {
        is(e, MetaType::Event) && is(b, MetaType::Thing) && is(c, MetaType::Thing)
    })
}

/// Properties handed down from a container to its members, and across a
/// single `N` link. Holders that already express the property are skipped.
pub fn infer_property_inheritance(g: &Graph) -> Vec<Hypothesis> {
    let contains = pairs(g, LinkFamily::Contains);
    let expresses = pairs(g, LinkFamily::Expresses);
    let near = pairs(g, LinkFamily::Near);
    let props = grouped(&expresses);
    let has = |n: NodeId, p: NodeId| expresses.contains_key(&(n, p));
    let mut out = Vec::new();

    for (&(container, member), c_links) in &contains {
        for &p in props.get(&container).into_iter().flatten() {
            if p != member && !has(member, p) {
                let basis = [c_links.as_slice(), &expresses[&(container, p)]].concat();
                let mut h =
                    Hypothesis::possible(HypothesisKind::MightHaveProperty, vec![member, p], Some(container), basis);
                h.notes.push(format!("inherited from container {}", g.describe(container)));
                out.push(h);
            }
        }
    }

    for (&(a, b), n_links) in &near {
        for (x, y) in [(a, b), (b, a)] {
            for &p in props.get(&x).into_iter().flatten() {
                if p != y && !has(y, p) {
                    let basis = [n_links.as_slice(), &expresses[&(x, p)]].concat();
                    let mut h = Hypothesis::possible(HypothesisKind::MightHaveProperty, vec![y, p], None, basis);
                    h.notes.push(format!("shared with similar node {}", g.describe(x)));
                    out.push(h);
                }
            }
        }
    }
    out.sort();
    out
}

/// Checks a would-be `container +E property` link. When some members
/// express the property and nothing else does (neither the container
/// itself nor any container of it), the link would generalize upward from
/// members and an invalid-tier hypothesis is returned. `None` means the
/// rule does not apply.
pub fn flag_invalid_generalizations(g: &Graph, container: NodeId, property: NodeId) -> Option<Hypothesis> {
    let contains = pairs(g, LinkFamily::Contains);
    let expresses = pairs(g, LinkFamily::Expresses);
    let has = |n: NodeId, p: NodeId| expresses.contains_key(&(n, p));

    let members: Vec<NodeId> = contains.keys().filter(|k| k.0 == container).map(|k| k.1).collect();
    let supporting: Vec<NodeId> = members.iter().copied().filter(|&m| has(m, property)).collect();
    if supporting.is_empty() || has(container, property) {
        return None;
    }
    let super_basis = contains.keys().any(|&(s, c)| c == container && has(s, property));
    if super_basis {
        return None;
    }

    let basis: Vec<LinkId> = supporting
        .iter()
        .flat_map(|&m| contains[&(container, m)].iter().chain(&expresses[&(m, property)]))
        .copied()
        .collect();
    let mut h =
        Hypothesis::possible(HypothesisKind::InvalidGeneralization, vec![container, property], Some(container), basis);
    h.tier = Tier::Invalid;
    h.family = Some(LinkFamily::Expresses);
    let names: Vec<String> = supporting.iter().map(|&m| g.describe(m)).collect();
    h.notes.push(format!("generalizes upward from {} to the container {}", names.join(", "), g.describe(container)));
    if supporting.len() == members.len() {
        h.notes.push("unanimous members".to_string());
    }
    Some(h)
}

/// Functional equivalence of nodes with identical neighbours, for every
/// family.
pub fn infer_equivalence(g: &Graph) -> Vec<Hypothesis> {
    let mut out = Vec::new();
    for family in LinkFamily::ALL {
        for group in supernodes(g, family) {
            let members: BTreeSet<NodeId> = group.members.iter().copied().collect();
            let basis = g
                .link_ids()
                .filter(|&id| {
                    let l = g.link(id);
                    l.family() == family && (members.contains(&l.src) || members.contains(&l.dst))
                })
                .collect();
            let mut h =
                Hypothesis::possible(HypothesisKind::FunctionalEquivalence, members.into_iter().collect(), None, basis);
            h.family = Some(family);
            h.notes.push(format!("signature {}", group.signature));
            if group.partial {
                h.notes.push("partial but not complete equivalence".to_string());
                for f in &group.differing_families {
                    h.notes.push(format!("differs in family {f}"));
                }
                if group.weights_differ {
                    h.notes.push("link weights differ".to_string());
                }
            }
            out.push(h);
        }
    }
    out.sort();
    out
}

/// All possible-tier generators, merged and sorted.
pub fn infer_all(g: &Graph) -> Vec<Hypothesis> {
    let mut out = infer_proximity(g);
    out.extend(infer_event_copresence(g));
    out.extend(infer_property_inheritance(g));
    out.extend(infer_equivalence(g));
    out.sort();
    out
}
