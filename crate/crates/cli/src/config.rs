//! Alias tables from the project config, the environment and the command
//! line. Later sources override earlier ones:
//!
//! 1. built-in defaults
//! 2. `[aliases]` in `sst.toml` (or `--config`)
//! 3. the alias file named by `SST_ALIASES`
//! 4. `--aliases`
//!
//! Aliases declared inside a graph file shadow all of these.
//!
//! ```toml
//! [aliases]
//! "gestates into" = "+L"
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use sst_core::notation::{parse_named, Statement};
use sst_core::{AliasTable, SignedLinkType};

use crate::error::CliError;

pub const CONFIG_FILE: &str = "sst.toml";
pub const ALIASES_ENV: &str = "SST_ALIASES";

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    #[serde(default)]
    aliases: BTreeMap<String, String>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn apply_config(table: &mut AliasTable, path: &Path) -> Result<(), CliError> {
    let config: Config =
        toml::from_str(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {}", path.display(), e.message())))?;
    for (label, typ) in config.aliases {
        let typ: SignedLinkType =
            typ.parse().map_err(|e| CliError::Usage(format!("{}: alias {label:?}: {e}", path.display())))?;
        table.insert(&label, typ).map_err(|e| CliError::Usage(format!("{}: alias {label:?}: {e}", path.display())))?;
    }
    Ok(())
}

/// Reads a file holding only `alias` statements and comments.
fn apply_alias_file(table: &mut AliasTable, path: &Path) -> Result<(), CliError> {
    let name = path.display().to_string();
    let doc =
        parse_named(&name, &read(path)?).map_err(|errors| CliError::Parse { path: path.to_path_buf(), errors })?;
    for s in &doc.statements {
        match &s.statement {
            Statement::Alias { label, typ } => {
                table.insert(label, *typ).map_err(|e| CliError::Usage(format!("{name}: {e}")))?;
            }
            Statement::Comment(_) => {}
            _ => return Err(CliError::Usage(format!("{name}:{}: alias files may only hold alias statements", s.line))),
        }
    }
    Ok(())
}

pub fn alias_table(config: Option<&Path>, aliases: Option<&Path>) -> Result<AliasTable, CliError> {
    let mut table = AliasTable::default();
    match config {
        Some(path) => apply_config(&mut table, path)?,
        None => {
            let implicit = PathBuf::from(CONFIG_FILE);
            if implicit.is_file() {
                apply_config(&mut table, &implicit)?;
            }
        }
    }
    if let Some(env) = std::env::var_os(ALIASES_ENV).filter(|v| !v.is_empty()) {
        apply_alias_file(&mut table, Path::new(&env))?;
    }
    if let Some(path) = aliases {
        apply_alias_file(&mut table, path)?;
    }
    Ok(table)
}
