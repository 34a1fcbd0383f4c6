//! The typed graph store.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::alias::{check_label, label_key, tidy_label, AliasTable};
use crate::transition::{check_transition, TransitionRule};
use crate::types::{LinkFamily, MetaType, Orientation, SignedLinkType};

/// Weight given to links whose weight is not stated.
pub const DEFAULT_WEIGHT: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct NodeId(usize);

impl NodeId {
    /// An id for position `index`. Only meaningful for the graph (or raw
    /// matrix) that the index came from.
    pub fn new(index: usize) -> Self {
        NodeId(index)
    }

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct LinkId(usize);

impl LinkId {
    pub fn new(index: usize) -> Self {
        LinkId(index)
    }

    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub id: NodeId,
    pub proper_name: String,
    pub meta: MetaType,
    pub attributes: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Link {
    pub src: NodeId,
    pub dst: NodeId,
    pub typ: SignedLinkType,
    /// The label as written, whitespace tidied.
    pub label: String,
    pub weight: f64,
}

impl Link {
    pub fn family(&self) -> LinkFamily {
        self.typ.family()
    }

    /// Swaps the endpoints and negates the orientation. The label is kept.
    pub fn reverse(&self) -> Link {
        Link { src: self.dst, dst: self.src, typ: self.typ.negate(), label: self.label.clone(), weight: self.weight }
    }

    /// The forward reading of this link (unchanged for `+X` and `N`).
    pub fn canonical(&self) -> Link {
        if self.typ.is_reverse() {
            self.reverse()
        } else {
            self.clone()
        }
    }

    /// `(from, to)` of the forward reading.
    pub fn forward_endpoints(&self) -> (NodeId, NodeId) {
        if self.typ.is_reverse() {
            (self.dst, self.src)
        } else {
            (self.src, self.dst)
        }
    }

    pub fn touches(&self, node: NodeId) -> bool {
        self.src == node || self.dst == node
    }
}

/// One directed step of the forward reading of a link. `N` links yield an
/// arrow in each direction (one for a self-loop).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arrow {
    pub from: NodeId,
    pub to: NodeId,
    pub family: LinkFamily,
    pub weight: f64,
    pub link: LinkId,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("proper name is empty")]
    EmptyName,
    #[error("proper name {0:?} contains a line break")]
    InvalidName(String),
    #[error("attribute key {0:?} is not a plain identifier")]
    InvalidAttribute(String),
    #[error("no node with id {0}")]
    UnknownNode(NodeId),
    #[error("unknown link alias `{0}`")]
    UnknownAlias(String),
    #[error("invalid link label: {0}")]
    InvalidLabel(String),
    #[error("forbidden transition {src_meta} ({typ}) {dst_meta}: {rule}")]
    ForbiddenTransition { src_meta: MetaType, typ: SignedLinkType, dst_meta: MetaType, rule: TransitionRule },
    #[error("link weight {0} is not a finite non-negative number")]
    InvalidWeight(f64),
    #[error("duplicate link {src:?} ({label}) {dst:?}")]
    DuplicateLink { src: String, label: String, dst: String },
    #[error("label `{label}` already means {existing}, cannot also mean {requested}")]
    AliasConflict { label: String, existing: SignedLinkType, requested: SignedLinkType },
}

/// Attribute keys are plain identifiers: letters, digits, `_`, `-`, `.`.
pub fn valid_attribute_key(key: &str) -> bool {
    !key.is_empty() && key.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

type LinkKey = (NodeId, SignedLinkType, NodeId, String);

/// A typed directed multigraph over event, thing and concept nodes.
///
/// Nodes are keyed by `(proper name, meta-type)`. Every stored link passes
/// [`check_transition`] on its endpoint meta-types; exact duplicates of
/// `(src, type, dst, label)` are rejected.
#[derive(Debug, Clone)]
pub struct Graph {
    nodes: Vec<Node>,
    by_key: HashMap<(String, MetaType), NodeId>,
    links: Vec<Link>,
    link_keys: HashSet<LinkKey>,
    aliases: AliasTable,
}

impl Default for Graph {
    fn default() -> Self {
        Graph::with_aliases(AliasTable::default())
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_aliases(aliases: AliasTable) -> Self {
        Graph { nodes: Vec::new(), by_key: HashMap::new(), links: Vec::new(), link_keys: HashSet::new(), aliases }
    }

    pub fn aliases(&self) -> &AliasTable {
        &self.aliases
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// # Panics
    /// If `id` does not belong to this graph.
    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.0]
    }

    pub fn get_node(&self, id: NodeId) -> Option<&Node> {
        self.nodes.get(id.0)
    }

    pub fn link(&self, id: LinkId) -> &Link {
        &self.links[id.0]
    }

    pub fn get_link(&self, id: LinkId) -> Option<&Link> {
        self.links.get(id.0)
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).map(NodeId)
    }

    pub fn link_ids(&self) -> impl Iterator<Item = LinkId> + '_ {
        (0..self.links.len()).map(LinkId)
    }

    pub fn find(&self, proper_name: &str, meta: MetaType) -> Option<NodeId> {
        self.by_key.get(&(proper_name.to_string(), meta)).copied()
    }

    /// All nodes with this proper name, in meta-type order.
    pub fn find_by_name(&self, proper_name: &str) -> Vec<NodeId> {
        MetaType::ALL.iter().filter_map(|&m| self.find(proper_name, m)).collect()
    }

    /// Short human-readable node reference: `name:meta`.
    pub fn describe(&self, id: NodeId) -> String {
        let n = self.node(id);
        format!("{}:{}", n.proper_name, n.meta)
    }

    /// Adds a node, or returns the existing id for the same `(name, meta)`
    /// after merging `attributes` into it.
    pub fn add_node(
        &mut self,
        proper_name: &str,
        meta: MetaType,
        attributes: BTreeMap<String, String>,
    ) -> Result<NodeId, GraphError> {
        if proper_name.is_empty() {
            return Err(GraphError::EmptyName);
        }
        if proper_name.contains(['\n', '\r']) {
            return Err(GraphError::InvalidName(proper_name.to_string()));
        }
        if let Some(key) = attributes.keys().find(|k| !valid_attribute_key(k)) {
            return Err(GraphError::InvalidAttribute(key.clone()));
        }
        if let Some(value) = attributes.values().find(|v| v.contains(['\n', '\r'])) {
            return Err(GraphError::InvalidAttribute(value.clone()));
        }
        let key = (proper_name.to_string(), meta);
        if let Some(&id) = self.by_key.get(&key) {
            self.nodes[id.0].attributes.extend(attributes);
            return Ok(id);
        }
        let id = NodeId(self.nodes.len());
        self.nodes.push(Node { id, proper_name: proper_name.to_string(), meta, attributes });
        self.by_key.insert(key, id);
        Ok(id)
    }

    /// Registers a label. Fails if stored links already use the label with
    /// a different type.
    pub fn register_alias(&mut self, label: &str, typ: SignedLinkType) -> Result<(), GraphError> {
        check_label(label).map_err(GraphError::InvalidLabel)?;
        let key = label_key(label);
        if let Some(existing) = self.links.iter().find(|l| label_key(&l.label) == key && l.typ != typ) {
            return Err(GraphError::AliasConflict { label: tidy_label(label), existing: existing.typ, requested: typ });
        }
        self.aliases.insert(label, typ).map_err(GraphError::InvalidLabel)?;
        Ok(())
    }

    /// Adds a link whose type is looked up from `label`.
    pub fn add_link(&mut self, src: NodeId, label: &str, dst: NodeId, weight: f64) -> Result<Link, GraphError> {
        let typ = self.aliases.resolve(label).ok_or_else(|| GraphError::UnknownAlias(tidy_label(label)))?;
        self.insert_link(src, typ, tidy_label(label), dst, weight)
    }

    /// Adds a link of an explicit type. Without a label, a default alias of
    /// the type is used; a new label is registered in the alias table.
    pub fn add_typed_link(
        &mut self,
        src: NodeId,
        typ: SignedLinkType,
        label: Option<&str>,
        dst: NodeId,
        weight: f64,
    ) -> Result<Link, GraphError> {
        let label = match label {
            Some(l) => {
                check_label(l).map_err(GraphError::InvalidLabel)?;
                tidy_label(l)
            }
            None => self.aliases.default_label(typ).map(str::to_string).unwrap_or_else(|| typ.to_string()),
        };
        let known = match self.aliases.resolve(&label) {
            Some(existing) if existing != typ => {
                return Err(GraphError::AliasConflict { label, existing, requested: typ })
            }
            found => found.is_some(),
        };
        let link = self.insert_link(src, typ, label, dst, weight)?;
        if !known {
            self.aliases.insert(&link.label, typ).map_err(GraphError::InvalidLabel)?;
        }
        Ok(link)
    }

    fn insert_link(
        &mut self,
        src: NodeId,
        typ: SignedLinkType,
        label: String,
        dst: NodeId,
        weight: f64,
    ) -> Result<Link, GraphError> {
        let src_meta = self.get_node(src).ok_or(GraphError::UnknownNode(src))?.meta;
        let dst_meta = self.get_node(dst).ok_or(GraphError::UnknownNode(dst))?.meta;
        if !weight.is_finite() || weight < 0.0 {
            return Err(GraphError::InvalidWeight(weight));
        }
        check_transition(src_meta, typ, dst_meta).map_err(|rule| GraphError::ForbiddenTransition {
            src_meta,
            typ,
            dst_meta,
            rule,
        })?;
        let key = (src, typ, dst, label_key(&label));
        if self.link_keys.contains(&key) {
            return Err(GraphError::DuplicateLink { src: self.describe(src), label, dst: self.describe(dst) });
        }
        self.link_keys.insert(key);
        let link = Link { src, dst, typ, label, weight };
        self.links.push(link.clone());
        Ok(link)
    }

    /// Re-checks every stored link from scratch.
    pub fn validate(&self) -> Vec<GraphError> {
        let mut errors = Vec::new();
        let mut seen = HashSet::new();
        for link in &self.links {
            let (Some(s), Some(d)) = (self.get_node(link.src), self.get_node(link.dst)) else {
                errors.push(GraphError::UnknownNode(link.src.max(link.dst)));
                continue;
            };
            if let Err(rule) = check_transition(s.meta, link.typ, d.meta) {
                errors.push(GraphError::ForbiddenTransition {
                    src_meta: s.meta,
                    typ: link.typ,
                    dst_meta: d.meta,
                    rule,
                });
            }
            if !link.weight.is_finite() || link.weight < 0.0 {
                errors.push(GraphError::InvalidWeight(link.weight));
            }
            if !seen.insert((link.src, link.typ, link.dst, label_key(&link.label))) {
                errors.push(GraphError::DuplicateLink {
                    src: self.describe(link.src),
                    label: link.label.clone(),
                    dst: self.describe(link.dst),
                });
            }
        }
        errors
    }

    /// Node ids ordered by `(meta, proper name)`. This is the order used by
    /// serialization and by every matrix view.
    pub fn sorted_node_ids(&self) -> Vec<NodeId> {
        let mut ids: Vec<NodeId> = self.node_ids().collect();
        ids.sort_by(|&a, &b| {
            let (na, nb) = (self.node(a), self.node(b));
            (na.meta, &na.proper_name).cmp(&(nb.meta, &nb.proper_name))
        });
        ids
    }

    /// Link ids ordered by `(src, family, dst, label)` with nodes compared
    /// in [`Graph::sorted_node_ids`] order.
    pub fn sorted_link_ids(&self) -> Vec<LinkId> {
        let rank = self.node_ranks();
        let mut ids: Vec<LinkId> = self.link_ids().collect();
        ids.sort_by(|&a, &b| {
            let (la, lb) = (self.link(a), self.link(b));
            (rank[la.src.0], la.family(), rank[la.dst.0], &la.label, la.typ).cmp(&(
                rank[lb.src.0],
                lb.family(),
                rank[lb.dst.0],
                &lb.label,
                lb.typ,
            ))
        });
        ids
    }

    /// Position of each node in [`Graph::sorted_node_ids`], indexed by id.
    pub fn node_ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.nodes.len()];
        for (pos, id) in self.sorted_node_ids().into_iter().enumerate() {
            rank[id.0] = pos;
        }
        rank
    }

    /// Forward-reading arrows of one family, or of all families.
    pub fn arrows(&self, family: Option<LinkFamily>) -> Vec<Arrow> {
        let mut out = Vec::new();
        for (i, link) in self.links.iter().enumerate() {
            let f = link.family();
            if family.is_some_and(|want| want != f) {
                continue;
            }
            let (from, to) = link.forward_endpoints();
            out.push(Arrow { from, to, family: f, weight: link.weight, link: LinkId(i) });
            if link.typ.orientation() == Orientation::Symmetric && from != to {
                out.push(Arrow { from: to, to: from, family: f, weight: link.weight, link: LinkId(i) });
            }
        }
        out
    }

    /// Links touching `node`.
    pub fn incident_links(&self, node: NodeId) -> impl Iterator<Item = (LinkId, &Link)> + '_ {
        self.links.iter().enumerate().filter(move |(_, l)| l.touches(node)).map(|(i, l)| (LinkId(i), l))
    }

    /// A copy of this graph without the given link. Node ids are kept.
    pub fn without_link(&self, id: LinkId) -> Graph {
        let mut g = Graph::with_aliases(self.aliases.clone());
        g.nodes = self.nodes.clone();
        g.by_key = self.by_key.clone();
        for (i, link) in self.links.iter().enumerate() {
            if i != id.0 {
                g.link_keys.insert((link.src, link.typ, link.dst, label_key(&link.label)));
                g.links.push(link.clone());
            }
        }
        g
    }

    /// A copy holding only the first `count` links. Node ids are kept.
    pub fn with_link_prefix(&self, count: usize) -> Graph {
        let mut g = Graph::with_aliases(self.aliases.clone());
        g.nodes = self.nodes.clone();
        g.by_key = self.by_key.clone();
        for link in self.links.iter().take(count) {
            g.link_keys.insert((link.src, link.typ, link.dst, label_key(&link.label)));
            g.links.push(link.clone());
        }
        g
    }

    /// Id-independent description of the graph: sorted nodes with their
    /// attributes and sorted links by endpoint key. Two graphs are
    /// isomorphic as SST graphs exactly when these are equal.
    pub fn canonical_form(&self) -> CanonicalForm {
        let key = |id: NodeId| {
            let n = self.node(id);
            (n.proper_name.clone(), n.meta)
        };
        let nodes = self
            .sorted_node_ids()
            .into_iter()
            .map(|id| {
                let n = self.node(id);
                (n.proper_name.clone(), n.meta, n.attributes.clone())
            })
            .collect();
        let mut links: Vec<_> = self
            .links
            .iter()
            .map(|l| CanonicalLink {
                src: key(l.src),
                typ: l.typ,
                dst: key(l.dst),
                label: l.label.clone(),
                weight_bits: l.weight.to_bits(),
            })
            .collect();
        links.sort();
        CanonicalForm { nodes, links }
    }

    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        self.canonical_form() == other.canonical_form()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalLink {
    pub src: (String, MetaType),
    pub typ: SignedLinkType,
    pub dst: (String, MetaType),
    pub label: String,
    pub weight_bits: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub nodes: Vec<(String, MetaType, BTreeMap<String, String>)>,
    pub links: Vec<CanonicalLink>,
}
