use std::path::Path;

use sst_core::notation::{build_partial, parse_named, Diagnostic};
use sst_core::{AliasTable, Graph};

use crate::error::CliError;

pub struct Loaded {
    pub graph: Graph,
    pub statements: usize,
    /// Source line of each link, empty for JSON input.
    pub link_lines: Vec<usize>,
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// Reads a `.sst` file, or a canonical JSON graph document when the name
/// ends in `.json`. The graph must be free of diagnostics.
pub fn load(path: &Path, aliases: &AliasTable) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    if is_json(path) {
        let graph =
            sst_core::json::import(&text).map_err(|source| CliError::Json { path: path.to_path_buf(), source })?;
        let statements = graph.node_count() + graph.link_count();
        return Ok(Loaded { graph, statements, link_lines: Vec::new() });
    }
    let doc = parse_named(&path.display().to_string(), &text)
        .map_err(|errors| CliError::Parse { path: path.to_path_buf(), errors })?;
    let out = build_partial(&doc, aliases);
    if !out.diagnostics.is_empty() {
        return Err(CliError::Invalid { path: path.to_path_buf(), diagnostics: out.diagnostics });
    }
    Ok(Loaded { graph: out.graph, statements: doc.len(), link_lines: out.link_lines })
}

/// Diagnostics carried by an error, for the report header.
pub fn diagnostics_of(err: &CliError) -> Vec<Diagnostic> {
    match err {
        CliError::Invalid { diagnostics, .. } => diagnostics.clone(),
        _ => Vec::new(),
    }
}
