//! The JSON report printed by the analysis commands.
//!
//! Every report has the same header; each command fills one entry of
//! `sections`. Only `generated_at_unix` varies between runs on the same
//! input. The schema lives in `schema/report.schema.json`.

use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;
use sst_core::analysis::{absorbing_regions, classify_roles, supernodes, trace, ChainTrace, Role, Termination};
use sst_core::inference::infer_all;
use sst_core::lint::{lint, LintRule};
use sst_core::matrix::{
    adjacency, check_factorization, entropy, join_diff, node_entropy_delta, principal_eigenvector, MatrixError,
};
use sst_core::notation::Diagnostic;
use sst_core::{Direction, Graph, Hypothesis, HypothesisKind, LinkFamily, LinkId, MetaType, NodeId, Tier};

use crate::args::FamilyFilter;
use crate::error::CliError;
use crate::input::Loaded;

pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool_version: &'static str,
    pub input: Option<String>,
    pub generated_at_unix: u64,
    pub diagnostics: Vec<Diagnostic>,
    pub sections: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(input: Option<String>) -> Self {
        Report {
            tool_version: env!("CARGO_PKG_VERSION"),
            input,
            generated_at_unix: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            diagnostics: Vec::new(),
            sections: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, command: &str, section: impl Serialize) {
        let value = serde_json::to_value(section).expect("sections always serialize");
        self.sections.insert(command.to_string(), value);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct NodeRef {
    pub name: String,
    pub meta: MetaType,
}

fn node_ref(g: &Graph, id: NodeId) -> NodeRef {
    let n = g.node(id);
    NodeRef { name: n.proper_name.clone(), meta: n.meta }
}

fn node_refs(g: &Graph, ids: &[NodeId]) -> Vec<NodeRef> {
    ids.iter().map(|&n| node_ref(g, n)).collect()
}

#[derive(Debug, Serialize)]
pub struct LinkRef {
    pub src: NodeRef,
    pub label: String,
    pub dst: NodeRef,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
}

fn link_ref(g: &Graph, lines: &[usize], id: LinkId) -> LinkRef {
    let l = g.link(id);
    LinkRef {
        src: node_ref(g, l.src),
        label: l.label.clone(),
        dst: node_ref(g, l.dst),
        line: lines.get(id.index()).copied(),
    }
}

#[derive(Debug, Serialize)]
pub struct ValidateSection {
    pub statements: usize,
    pub nodes: usize,
    pub links: usize,
}

pub fn validate_section(loaded: &Loaded) -> ValidateSection {
    ValidateSection {
        statements: loaded.statements,
        nodes: loaded.graph.node_count(),
        links: loaded.graph.link_count(),
    }
}

#[derive(Debug, Serialize)]
pub struct HypothesisOut {
    pub kind: HypothesisKind,
    pub tier: Tier,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<LinkFamily>,
    pub subjects: Vec<NodeRef>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scope: Option<NodeRef>,
    pub basis: Vec<LinkRef>,
    pub notes: Vec<String>,
}

fn hypothesis_out(g: &Graph, lines: &[usize], h: &Hypothesis) -> HypothesisOut {
    HypothesisOut {
        kind: h.kind,
        tier: h.tier,
        family: h.family,
        subjects: node_refs(g, &h.subjects),
        scope: h.scope.map(|s| node_ref(g, s)),
        basis: h.basis.iter().map(|&l| link_ref(g, lines, l)).collect(),
        notes: h.notes.clone(),
    }
}

#[derive(Debug, Serialize)]
pub struct WarningOut {
    pub rule: LintRule,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    pub message: String,
    pub nodes: Vec<NodeRef>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypothesis: Option<HypothesisOut>,
}

#[derive(Debug, Serialize)]
pub struct LintSection {
    pub warnings: Vec<WarningOut>,
}

pub fn lint_section(loaded: &Loaded) -> LintSection {
    let g = &loaded.graph;
    let warnings = lint(g, &loaded.link_lines)
        .into_iter()
        .map(|w| WarningOut {
            rule: w.rule,
            line: w.line,
            message: w.message,
            nodes: node_refs(g, &w.nodes),
            hypothesis: w.hypothesis.as_ref().map(|h| hypothesis_out(g, &loaded.link_lines, h)),
        })
        .collect();
    LintSection { warnings }
}

#[derive(Debug, Serialize)]
pub struct InferSection {
    pub hypotheses: Vec<HypothesisOut>,
}

pub fn infer_section(loaded: &Loaded) -> InferSection {
    let g = &loaded.graph;
    InferSection { hypotheses: infer_all(g).iter().map(|h| hypothesis_out(g, &loaded.link_lines, h)).collect() }
}

#[derive(Debug, Serialize)]
pub struct Score {
    pub node: NodeRef,
    pub score: f64,
}

#[derive(Debug, Serialize)]
pub struct RankSection {
    pub family: String,
    pub damping: Option<f64>,
    pub tol: f64,
    pub max_iter: usize,
    pub converged: bool,
    pub degenerate: bool,
    pub eigenvalue: Option<f64>,
    pub iterations: usize,
    pub residual: Option<f64>,
    pub warning: Option<String>,
    pub suggestion: Option<String>,
    /// Nodes with no outgoing links in the ranked matrix.
    pub absorbing_nodes: Vec<NodeRef>,
    /// Highest score first; ties in node order.
    pub scores: Vec<Score>,
}

pub const ABSORBING_WARNING: &str = "absorbing nodes detected";
pub const DAMPING_SUGGESTION: &str = "pass --damping 0.85 to rank through absorbing nodes";

pub fn rank_section(
    g: &Graph,
    family: FamilyFilter,
    damping: Option<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<RankSection, CliError> {
    let a = adjacency(g, family.0);
    let absorbing_nodes = a.zero_rows().iter().map(|&i| node_ref(g, a.node_order[i])).collect();
    let mut section = RankSection {
        family: family.name(),
        damping,
        tol,
        max_iter,
        converged: false,
        degenerate: false,
        eigenvalue: None,
        iterations: 0,
        residual: None,
        warning: None,
        suggestion: None,
        absorbing_nodes,
        scores: Vec::new(),
    };
    let r = match principal_eigenvector(&a, damping, tol, max_iter) {
        Ok(r) => r,
        Err(MatrixError::Empty) => {
            section.warning = Some("graph has no nodes".to_string());
            return Ok(section);
        }
        Err(MatrixError::ZeroMatrix) => {
            section.warning = Some("no links to rank".to_string());
            section.degenerate = true;
            return Ok(section);
        }
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    section.converged = r.converged;
    section.degenerate = r.degenerate;
    section.eigenvalue = Some(r.eigenvalue);
    section.iterations = r.iterations;
    section.residual = Some(r.residual);
    if r.degenerate && damping.is_none() {
        section.warning = Some(ABSORBING_WARNING.to_string());
        section.suggestion = Some(DAMPING_SUGGESTION.to_string());
    } else if !r.converged {
        section.warning = Some(format!("no convergence within {max_iter} iterations"));
    }
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_by(|&i, &j| r.vector.values[j].total_cmp(&r.vector.values[i]).then(i.cmp(&j)));
    section.scores =
        order.into_iter().map(|i| Score { node: node_ref(g, a.node_order[i]), score: r.vector.values[i] }).collect();
    Ok(section)
}

#[derive(Debug, Serialize)]
pub struct NodeEntropy {
    pub node: NodeRef,
    pub in_degree: usize,
    pub out_degree: usize,
    pub delta: f64,
}

#[derive(Debug, Serialize)]
pub struct FamilyEntropy {
    pub family: LinkFamily,
    /// Entropy of the weighted in-degree distribution, base `max(N, 2)`.
    pub in_distribution: Option<f64>,
    pub out_distribution: Option<f64>,
    pub nodes: Vec<NodeEntropy>,
}

#[derive(Debug, Serialize)]
pub struct EntropySection {
    pub base: &'static str,
    pub families: Vec<FamilyEntropy>,
}

pub fn entropy_section(g: &Graph, family: FamilyFilter, node: Option<&str>) -> Result<EntropySection, CliError> {
    let only: Option<Vec<NodeId>> = node.map(|name| g.find_by_name(name));
    if only.as_ref().is_some_and(|ids| ids.is_empty()) {
        return Err(CliError::Usage(format!("no node named {:?}", node.unwrap_or_default())));
    }
    let base = g.node_count().max(2) as u32;
    let mut families = Vec::new();
    for f in family.families() {
        let a = adjacency(g, Some(f));
        let outs: Vec<f64> = a.entries.iter().map(|r| r.iter().sum()).collect();
        let ins: Vec<f64> = (0..a.len()).map(|j| a.entries.iter().map(|r| r[j]).sum()).collect();
        let dist = |v: &[f64]| entropy(v, base).ok();
        let view = sst_core::analysis::FamilyView::new(g, f);
        let mut nodes = Vec::new();
        for id in g.sorted_node_ids() {
            if only.as_ref().is_some_and(|ids| !ids.contains(&id)) {
                continue;
            }
            if let Ok(delta) = node_entropy_delta(g, id, f) {
                nodes.push(NodeEntropy {
                    node: node_ref(g, id),
                    in_degree: view.in_degree(id),
                    out_degree: view.out_degree(id),
                    delta,
                });
            }
        }
        families.push(FamilyEntropy { family: f, in_distribution: dist(&ins), out_distribution: dist(&outs), nodes });
    }
    Ok(EntropySection { base: "max(in-degree, out-degree, 2)", families })
}

#[derive(Debug, Serialize)]
pub struct RoleOut {
    pub node: NodeRef,
    pub roles: Vec<Role>,
    pub in_degree: usize,
    pub out_degree: usize,
}

#[derive(Debug, Serialize)]
pub struct SupernodeOut {
    pub members: Vec<NodeRef>,
    pub signature: String,
    pub partial: bool,
    pub differing_families: Vec<LinkFamily>,
    pub weights_differ: bool,
}

#[derive(Debug, Serialize)]
pub struct FamilyAnalysis {
    pub family: LinkFamily,
    pub roles: Vec<RoleOut>,
    pub absorbing_regions: Vec<Vec<NodeRef>>,
    pub supernodes: Vec<SupernodeOut>,
}

#[derive(Debug, Serialize)]
pub struct AnalyzeSection {
    pub families: Vec<FamilyAnalysis>,
}

pub fn analyze_section(g: &Graph, family: FamilyFilter) -> AnalyzeSection {
    let families = family
        .families()
        .into_iter()
        .map(|f| FamilyAnalysis {
            family: f,
            roles: classify_roles(g, f)
                .into_iter()
                .map(|r| RoleOut {
                    node: node_ref(g, r.node),
                    roles: r.roles.into_iter().collect(),
                    in_degree: r.in_degree,
                    out_degree: r.out_degree,
                })
                .collect(),
            absorbing_regions: absorbing_regions(g, f).iter().map(|r| node_refs(g, &r.nodes)).collect(),
            supernodes: supernodes(g, f)
                .into_iter()
                .map(|s| SupernodeOut {
                    members: node_refs(g, &s.members),
                    signature: s.signature,
                    partial: s.partial,
                    differing_families: s.differing_families,
                    weights_differ: s.weights_differ,
                })
                .collect(),
        })
        .collect();
    AnalyzeSection { families }
}

#[derive(Debug, Serialize)]
pub struct ChainOut {
    pub path: Vec<NodeRef>,
    pub labels: Vec<String>,
    pub hops: usize,
    pub termination: Termination,
    pub expected_terminal: &'static str,
    pub conforms: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct TraceSection {
    pub start: NodeRef,
    pub family: LinkFamily,
    pub direction: &'static str,
    pub budget: usize,
    pub chains: Vec<ChainOut>,
}

fn chain_out(g: &Graph, c: &ChainTrace) -> ChainOut {
    ChainOut {
        path: node_refs(g, &c.path),
        labels: c.links.iter().map(|&l| g.link(l).label.clone()).collect(),
        hops: c.hops(),
        termination: c.termination,
        expected_terminal: c.expected_terminal,
        conforms: c.conforms,
    }
}

pub fn resolve_node(g: &Graph, name: &str, meta: Option<MetaType>) -> Result<NodeId, CliError> {
    let found: Vec<NodeId> =
        g.find_by_name(name).into_iter().filter(|&n| meta.is_none_or(|m| g.node(n).meta == m)).collect();
    match found.as_slice() {
        [one] => Ok(*one),
        [] => Err(CliError::Usage(format!("no node named {name:?}"))),
        _ => Err(CliError::Usage(format!("{name:?} names several nodes; pass --meta"))),
    }
}

pub fn trace_section(
    g: &Graph,
    start: NodeId,
    family: LinkFamily,
    direction: Direction,
    budget: usize,
) -> Result<TraceSection, CliError> {
    let chains = trace(g, start, family, direction, budget).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(TraceSection {
        start: node_ref(g, start),
        family,
        direction: match direction {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        },
        budget,
        chains: chains.iter().map(|c| chain_out(g, c)).collect(),
    })
}

#[derive(Debug, Serialize)]
pub struct SkeletonSection {
    pub factorization: sst_core::matrix::FactorizationReport,
    pub consistent: bool,
    pub join: sst_core::matrix::JoinDiff,
    pub join_mismatches: usize,
    pub join_table: String,
}

pub fn skeleton_section() -> SkeletonSection {
    let factorization = check_factorization();
    let join = join_diff();
    SkeletonSection {
        consistent: factorization.is_consistent(),
        factorization,
        join_mismatches: join.mismatches().count(),
        join_table: join.to_table(),
        join,
    }
}
