//! The canonical JSON graph document.
//!
//! ```json
//! {
//!   "nodes": [{"name": "egg", "meta": "event", "attrs": {}}],
//!   "links": [{"src": 0, "dst": 1, "family": "L", "sign": 1, "label": "gestates into", "weight": 1.0}],
//!   "aliases": {"gestates into": "+L"}
//! }
//! ```
//!
//! Nodes are ordered by `(meta, name)` and links by `(src, family, dst,
//! label)`. `src` and `dst` index into `nodes`, because a proper name alone
//! does not identify a node. `aliases` lists only labels that differ from
//! the default table. Export of an imported document is byte-identical.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alias::AliasTable;
use crate::graph::{Graph, GraphError, NodeId};
use crate::types::{LinkFamily, MetaType, SignedLinkType};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonNode {
    pub name: String,
    pub meta: MetaType,
    #[serde(default)]
    pub attrs: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonLink {
    pub src: usize,
    pub dst: usize,
    pub family: LinkFamily,
    pub sign: i8,
    pub label: String,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonGraph {
    pub nodes: Vec<JsonNode>,
    pub links: Vec<JsonLink>,
    #[serde(default)]
    pub aliases: BTreeMap<String, SignedLinkType>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JsonError {
    #[error("malformed document: {0}")]
    Syntax(String),
    #[error("node {index}: {source}")]
    Node { index: usize, source: GraphError },
    #[error("node {index} repeats {name:?} as {meta}")]
    DuplicateNode { index: usize, name: String, meta: MetaType },
    #[error("link {index}: endpoint {endpoint} is out of range")]
    BadEndpoint { index: usize, endpoint: usize },
    #[error("link {index}: family {family} cannot have sign {sign}")]
    BadSign { index: usize, family: LinkFamily, sign: i8 },
    #[error("alias {label:?}: {message}")]
    BadAlias { label: String, message: String },
    #[error("link {index}: {source}")]
    Link { index: usize, source: GraphError },
}

pub fn to_document(g: &Graph) -> JsonGraph {
    let order = g.sorted_node_ids();
    let rank = g.node_ranks();
    let nodes = order
        .iter()
        .map(|&id| {
            let n = g.node(id);
            JsonNode { name: n.proper_name.clone(), meta: n.meta, attrs: n.attributes.clone() }
        })
        .collect();
    let links = g
        .sorted_link_ids()
        .into_iter()
        .map(|id| {
            let l = g.link(id);
            JsonLink {
                src: rank[l.src.index()],
                dst: rank[l.dst.index()],
                family: l.family(),
                sign: l.typ.orientation().sign(),
                label: l.label.clone(),
                weight: l.weight,
            }
        })
        .collect();
    let defaults = AliasTable::default();
    let aliases = g.aliases().difference(&defaults).map(|(l, t)| (l.to_string(), t)).collect();
    JsonGraph { nodes, links, aliases }
}

/// Pretty-printed canonical document with a trailing newline.
pub fn export(g: &Graph) -> String {
    let mut s = serde_json::to_string_pretty(&to_document(g)).expect("graph documents always serialize");
    s.push('\n');
    s
}

pub fn from_document(doc: &JsonGraph) -> Result<Graph, JsonError> {
    let mut aliases = AliasTable::default();
    for (label, &typ) in &doc.aliases {
        aliases.insert(label, typ).map_err(|message| JsonError::BadAlias { label: label.clone(), message })?;
    }
    let mut g = Graph::with_aliases(aliases);
    let mut ids: Vec<NodeId> = Vec::with_capacity(doc.nodes.len());
    let mut seen: HashMap<(&str, MetaType), usize> = HashMap::new();
    for (index, n) in doc.nodes.iter().enumerate() {
        if seen.insert((n.name.as_str(), n.meta), index).is_some() {
            return Err(JsonError::DuplicateNode { index, name: n.name.clone(), meta: n.meta });
        }
        let id = g.add_node(&n.name, n.meta, n.attrs.clone()).map_err(|source| JsonError::Node { index, source })?;
        ids.push(id);
    }
    for (index, l) in doc.links.iter().enumerate() {
        let endpoint = |i: usize| ids.get(i).copied().ok_or(JsonError::BadEndpoint { index, endpoint: i });
        let (src, dst) = (endpoint(l.src)?, endpoint(l.dst)?);
        let typ = SignedLinkType::from_sign(l.family, l.sign).ok_or(JsonError::BadSign {
            index,
            family: l.family,
            sign: l.sign,
        })?;
        g.add_typed_link(src, typ, Some(&l.label), dst, l.weight)
            .map_err(|source| JsonError::Link { index, source })?;
    }
    Ok(g)
}

pub fn import(text: &str) -> Result<Graph, JsonError> {
    let doc: JsonGraph = serde_json::from_str(text).map_err(|e| JsonError::Syntax(e.to_string()))?;
    from_document(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::MetaType::*;

    fn sample() -> Graph {
        let mut g = Graph::new();
        let egg = g.add_node("egg", Event, BTreeMap::from([("colour".into(), "white".into())])).unwrap();
        let cat = g.add_node("caterpillar", Event, Default::default()).unwrap();
        let lib_t = g.add_node("library", Thing, Default::default()).unwrap();
        let lib_c = g.add_node("library", Concept, Default::default()).unwrap();
        g.add_typed_link(egg, SignedLinkType::LEADS_TO, Some("gestates into"), cat, 2.5).unwrap();
        g.add_typed_link(lib_t, SignedLinkType::EXPRESSES, None, lib_c, 1.0).unwrap();
        g
    }

    #[test]
    fn shape_and_round_trip() {
        let g = sample();
        let text = export(&g);
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["nodes"][0]["name"], "caterpillar");
        assert_eq!(doc["links"][0]["sign"], 1);
        assert_eq!(doc["links"][0]["family"], "L");
        assert_eq!(doc["aliases"]["gestates into"], "+L");
        let back = import(&text).unwrap();
        assert!(back.is_isomorphic(&g));
        assert_eq!(export(&back), text);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(import("{"), Err(JsonError::Syntax(_))));
        let bad_sign = r#"{"nodes":[{"name":"a","meta":"event"}],"links":[{"src":0,"dst":0,"family":"N","sign":1,"label":"near","weight":1}]}"#;
        assert!(matches!(import(bad_sign), Err(JsonError::BadSign { .. })));
        let forbidden = r#"{"nodes":[{"name":"a","meta":"concept"},{"name":"b","meta":"thing"}],"links":[{"src":0,"dst":1,"family":"C","sign":1,"label":"contains","weight":1}]}"#;
        assert!(matches!(import(forbidden), Err(JsonError::Link { .. })));
        let range = r#"{"nodes":[],"links":[{"src":0,"dst":0,"family":"L","sign":1,"label":"x","weight":1}]}"#;
        assert!(matches!(import(range), Err(JsonError::BadEndpoint { .. })));
        assert_eq!(export(&import(r#"{"nodes":[],"links":[]}"#).unwrap()), export(&Graph::new()));
    }
}
