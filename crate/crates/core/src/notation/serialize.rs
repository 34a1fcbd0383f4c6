use std::collections::HashMap;

use super::{format_statement, Endpoint, LinkDecl, Statement};
use crate::alias::AliasTable;
use crate::graph::{Graph, NodeId, DEFAULT_WEIGHT};

/// Writes a graph as notation.
///
/// Output is deterministic: a header comment, aliases that differ from the
/// default table, nodes ordered by `(meta, name)`, then links ordered by
/// `(src, family, dst, label)`. Endpoints carry an inline meta-type only
/// when their proper name is shared by several nodes.
pub fn serialize(g: &Graph) -> String {
    let mut out = format!("# sst graph: {} nodes, {} links\n", g.node_count(), g.link_count());

    let defaults = AliasTable::default();
    for (label, typ) in g.aliases().difference(&defaults) {
        out.push_str(&format_statement(&Statement::Alias { label: label.to_string(), typ }));
        out.push('\n');
    }

    let mut name_uses: HashMap<&str, usize> = HashMap::new();
    for n in g.nodes() {
        *name_uses.entry(n.proper_name.as_str()).or_default() += 1;
    }
    for id in g.sorted_node_ids() {
        let n = g.node(id);
        let s = Statement::Node { name: n.proper_name.clone(), meta: n.meta, attrs: n.attributes.clone() };
        out.push_str(&format_statement(&s));
        out.push('\n');
    }

    let endpoint = |id: NodeId| {
        let n = g.node(id);
        let shared = name_uses[n.proper_name.as_str()] > 1;
        Endpoint { name: n.proper_name.clone(), meta: shared.then_some(n.meta) }
    };
    for id in g.sorted_link_ids() {
        let l = g.link(id);
        let decl = LinkDecl {
            src: endpoint(l.src),
            label: l.label.clone(),
            dst: endpoint(l.dst),
            weight: (l.weight != DEFAULT_WEIGHT).then_some(l.weight),
        };
        out.push_str(&format_statement(&Statement::Link(decl)));
        out.push('\n');
    }
    out
}
