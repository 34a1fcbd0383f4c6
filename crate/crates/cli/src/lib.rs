//! Command-line front end for `sst-core`.
//!
//! `validate` and `export` write plain text; every other command prints a
//! JSON [`report::Report`]. Exit codes are stable:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success, including help and version |
//! | 1 | the graph breaks a transition rule or another build check |
//! | 2 | parse error |
//! | 3 | I/O error |
//! | 4 | usage error: bad flag, bad value, unknown node |

pub mod args;
pub mod config;
pub mod error;
pub mod input;
pub mod render;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, Format};
use error::CliError;
use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            for line in e.lines() {
                let _ = writeln!(err, "{line}");
            }
            e.exit_code()
        }
    }
}

fn input_name(path: &Path) -> Option<String> {
    Some(path.display().to_string())
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    if let Command::Skeleton = cli.command {
        let mut r = Report::new(None);
        r.add("skeleton", report::skeleton_section());
        return emit(out, &r.to_json());
    }
    let aliases = config::alias_table(cli.config.as_deref(), cli.aliases.as_deref())?;

    match &cli.command {
        Command::Validate { file, json } => {
            let loaded = input::load(file, &aliases);
            if *json {
                let mut r = Report::new(input_name(file));
                match &loaded {
                    Ok(l) => r.add("validate", report::validate_section(l)),
                    Err(e) => r.diagnostics = input::diagnostics_of(e),
                }
                emit(out, &r.to_json())?;
            }
            let loaded = loaded?;
            if !*json {
                let s = report::validate_section(&loaded);
                emit(
                    out,
                    &format!(
                        "{}: ok ({} statements, {} nodes, {} links)\n",
                        file.display(),
                        s.statements,
                        s.nodes,
                        s.links
                    ),
                )?;
            }
            Ok(())
        }
        Command::Export { file, format, family } => {
            let loaded = input::load(file, &aliases)?;
            let text = match format {
                Format::Dot => render::dot(&loaded.graph, family.0),
                Format::CsvAdjacency => render::csv_adjacency(&loaded.graph, family.0),
                Format::Json => {
                    if family.0.is_some() {
                        return Err(CliError::Usage("--family does not apply to json export".into()));
                    }
                    sst_core::json::export(&loaded.graph)
                }
            };
            emit(out, &text)
        }
        Command::Lint { file } => {
            let loaded = input::load(file, &aliases)?;
            let mut r = Report::new(input_name(file));
            let section = report::lint_section(&loaded);
            for w in &section.warnings {
                let at = w.line.map(|l| format!(":{l}")).unwrap_or_default();
                let _ = writeln!(err, "{}{at}: warning: {}", file.display(), w.message);
            }
            r.add("lint", section);
            emit(out, &r.to_json())
        }
        Command::Rank { file, damping, tol, max_iter, family } => {
            let loaded = input::load(file, &aliases)?;
            let section = report::rank_section(&loaded.graph, *family, *damping, *tol, *max_iter)?;
            if let Some(w) = &section.warning {
                let _ = writeln!(err, "warning: {w}");
            }
            if let Some(s) = &section.suggestion {
                let _ = writeln!(err, "hint: {s}");
            }
            let mut r = Report::new(input_name(file));
            r.add("rank", section);
            emit(out, &r.to_json())
        }
        Command::Entropy { file, family, node } => {
            let loaded = input::load(file, &aliases)?;
            let mut r = Report::new(input_name(file));
            r.add("entropy", report::entropy_section(&loaded.graph, *family, node.as_deref())?);
            emit(out, &r.to_json())
        }
        Command::Analyze { file, family } => {
            let loaded = input::load(file, &aliases)?;
            let mut r = Report::new(input_name(file));
            r.add("analyze", report::analyze_section(&loaded.graph, *family));
            emit(out, &r.to_json())
        }
        Command::Infer { file } => {
            let loaded = input::load(file, &aliases)?;
            let mut r = Report::new(input_name(file));
            r.add("infer", report::infer_section(&loaded));
            emit(out, &r.to_json())
        }
        Command::Trace { file, from, meta, family, direction, budget } => {
            let loaded = input::load(file, &aliases)?;
            let start = report::resolve_node(&loaded.graph, from, *meta)?;
            let section = report::trace_section(&loaded.graph, start, *family, (*direction).into(), *budget)?;
            let mut r = Report::new(input_name(file));
            r.add("trace", section);
            emit(out, &r.to_json())
        }
        Command::Skeleton => unreachable!("handled above"),
    }
}
