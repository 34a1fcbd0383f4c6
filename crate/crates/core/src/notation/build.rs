use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use super::{Document, Located, Part, Statement};
use crate::alias::{label_key, AliasTable};
use crate::graph::{Graph, GraphError, NodeId, DEFAULT_WEIGHT};
use crate::transition::TransitionRule;
use crate::types::{MetaType, SignedLinkType};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "code", rename_all = "kebab-case")]
pub enum DiagnosticKind {
    UnknownAlias,
    ForbiddenTransition { src_meta: MetaType, typ: SignedLinkType, dst_meta: MetaType, rule: TransitionRule },
    UndeclaredEndpoint,
    AmbiguousEndpoint,
    InvalidNode,
    InvalidWeight,
    DuplicateLink,
    AliasConflict,
}

/// A build-time problem with its source location. `offending_text` is the
/// source text found at `(line, column)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    #[serde(flatten)]
    pub kind: DiagnosticKind,
    pub message: String,
    pub offending_text: String,
}

impl Diagnostic {
    fn at(part: &Part, line: usize, kind: DiagnosticKind, message: String) -> Self {
        Diagnostic { line, column: part.column, kind, message, offending_text: part.text.clone() }
    }

    pub fn is_type_violation(&self) -> bool {
        matches!(self.kind, DiagnosticKind::ForbiddenTransition { .. })
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

/// Result of building a document, keeping whatever could be built.
#[derive(Debug, Clone)]
pub struct BuildOutput {
    pub graph: Graph,
    pub diagnostics: Vec<Diagnostic>,
    /// Source line of each stored link, indexed by link id.
    pub link_lines: Vec<usize>,
}

/// Builds a graph, failing with every diagnostic if any link or node was
/// rejected.
pub fn build(doc: &Document, base_aliases: &AliasTable) -> Result<Graph, Vec<Diagnostic>> {
    let out = build_partial(doc, base_aliases);
    if out.diagnostics.is_empty() {
        Ok(out.graph)
    } else {
        Err(out.diagnostics)
    }
}

/// Builds as much of the document as is legal. Aliases are gathered first,
/// then nodes (declared and inline-typed), then links in document order.
pub fn build_partial(doc: &Document, base_aliases: &AliasTable) -> BuildOutput {
    let mut diagnostics = Vec::new();

    let mut aliases = base_aliases.clone();
    let mut local: HashMap<String, SignedLinkType> = HashMap::new();
    for s in &doc.statements {
        if let Statement::Alias { label, typ } = &s.statement {
            match local.get(&label_key(label)) {
                Some(prev) if prev != typ => diagnostics.push(Diagnostic::at(
                    &s.parts[0],
                    s.line,
                    DiagnosticKind::AliasConflict,
                    format!("alias `{label}` already declared as {prev} in this document"),
                )),
                _ => {
                    local.insert(label_key(label), *typ);
                    aliases.insert(label, *typ).expect("labels are checked by the parser");
                }
            }
        }
    }

    let mut graph = Graph::with_aliases(aliases);
    for s in &doc.statements {
        match &s.statement {
            Statement::Node { name, meta, attrs } => {
                if let Err(e) = graph.add_node(name, *meta, attrs.clone()) {
                    diagnostics.push(Diagnostic::at(&s.parts[0], s.line, DiagnosticKind::InvalidNode, e.to_string()));
                }
            }
            Statement::Link(l) => {
                // Failures here resurface when the endpoint is resolved.
                for ep in [&l.src, &l.dst] {
                    if let Some(meta) = ep.meta {
                        let _ = graph.add_node(&ep.name, meta, BTreeMap::new());
                    }
                }
            }
            _ => {}
        }
    }

    let mut link_lines = Vec::new();
    for s in &doc.statements {
        let Statement::Link(l) = &s.statement else { continue };
        let src = resolve_endpoint(&graph, &l.src.name, l.src.meta, s, 0);
        let dst = resolve_endpoint(&graph, &l.dst.name, l.dst.meta, s, 2);
        let (src, dst) = match (src, dst) {
            (Ok(a), Ok(b)) => (a, b),
            (a, b) => {
                diagnostics.extend(a.err());
                diagnostics.extend(b.err());
                continue;
            }
        };
        match graph.add_link(src, &l.label, dst, l.weight.unwrap_or(DEFAULT_WEIGHT)) {
            Ok(_) => link_lines.push(s.line),
            Err(e) => diagnostics.push(link_diagnostic(e, s)),
        }
    }

    BuildOutput { graph, diagnostics, link_lines }
}

fn resolve_endpoint(
    graph: &Graph,
    name: &str,
    meta: Option<MetaType>,
    s: &Located,
    part: usize,
) -> Result<NodeId, Diagnostic> {
    let part = &s.parts[part];
    if let Some(m) = meta {
        // Inline-typed endpoints were created in the node pass unless invalid.
        return graph.find(name, m).ok_or_else(|| {
            let reason = if name.is_empty() { "proper name is empty" } else { "proper name contains a line break" };
            Diagnostic::at(part, s.line, DiagnosticKind::InvalidNode, reason.to_string())
        });
    }
    match graph.find_by_name(name).as_slice() {
        [id] => Ok(*id),
        [] => Err(Diagnostic::at(
            part,
            s.line,
            DiagnosticKind::UndeclaredEndpoint,
            format!("node {name:?} is not declared; declare it or add an inline `:meta`"),
        )),
        ids => {
            let metas: Vec<String> = ids.iter().map(|&i| graph.node(i).meta.to_string()).collect();
            Err(Diagnostic::at(
                part,
                s.line,
                DiagnosticKind::AmbiguousEndpoint,
                format!("node {name:?} exists as {}; add an inline `:meta`", metas.join(" and ")),
            ))
        }
    }
}

fn link_diagnostic(err: GraphError, s: &Located) -> Diagnostic {
    let whole = Part { column: s.column, text: s.text.clone() };
    match err {
        GraphError::UnknownAlias(label) => {
            Diagnostic::at(&s.parts[1], s.line, DiagnosticKind::UnknownAlias, format!("unknown link alias `{label}`"))
        }
        GraphError::ForbiddenTransition { src_meta, typ, dst_meta, rule } => Diagnostic::at(
            &whole,
            s.line,
            DiagnosticKind::ForbiddenTransition { src_meta, typ, dst_meta, rule },
            format!("forbidden transition {} ({typ}) {}: {rule}", src_meta.symbol(), dst_meta.symbol()),
        ),
        GraphError::InvalidWeight(w) => Diagnostic::at(
            s.parts.get(3).unwrap_or(&whole),
            s.line,
            DiagnosticKind::InvalidWeight,
            format!("link weight {w} must be non-negative"),
        ),
        e @ GraphError::DuplicateLink { .. } => {
            Diagnostic::at(&whole, s.line, DiagnosticKind::DuplicateLink, e.to_string())
        }
        e => Diagnostic::at(&whole, s.line, DiagnosticKind::InvalidNode, e.to_string()),
    }
}
