use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use sst_core::{Direction, LinkFamily, MetaType};

#[derive(Debug, Parser)]
#[command(name = "sst", version, about = "Check, analyse and export semantic-spacetime graphs")]
#[command(after_help = "Exit codes: 0 ok, 1 invalid graph, 2 parse error, 3 I/O error, 4 usage error")]
pub struct Cli {
    /// Alias file of `alias "label" = +L` lines, applied last
    #[arg(long, global = true, value_name = "FILE")]
    pub aliases: Option<PathBuf>,

    /// Project config file [default: ./sst.toml when present]
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and type-check a graph file
    Validate {
        file: PathBuf,
        /// Print a JSON report instead of a summary line
        #[arg(long)]
        json: bool,
    },
    /// Report legal but doubtful modelling
    Lint { file: PathBuf },
    /// Write the graph as DOT, canonical JSON or a CSV adjacency matrix
    Export {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        /// L, C, E, N or all
        #[arg(long, default_value = "all", value_parser = parse_family)]
        family: FamilyFilter,
    },
    /// Rank nodes by the principal eigenvector of the adjacency matrix
    Rank {
        file: PathBuf,
        /// Damping factor in (0, 1]; omit for the plain matrix
        #[arg(long)]
        damping: Option<f64>,
        #[arg(long, default_value_t = sst_core::matrix::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = sst_core::matrix::DEFAULT_MAX_ITER)]
        max_iter: usize,
        /// L, C, E, N or all
        #[arg(long, default_value = "all", value_parser = parse_family)]
        family: FamilyFilter,
    },
    /// Entropy change across each node, outflow minus inflow
    Entropy {
        file: PathBuf,
        /// L, C, E, N or all
        #[arg(long, default_value = "L", value_parser = parse_family)]
        family: FamilyFilter,
        /// Only this node (proper name)
        #[arg(long)]
        node: Option<String>,
    },
    /// Roles, absorbing regions and supernodes
    Analyze {
        file: PathBuf,
        /// L, C, E, N or all
        #[arg(long, default_value = "all", value_parser = parse_family)]
        family: FamilyFilter,
    },
    /// Possible hypotheses drawn from the graph's structure
    Infer { file: PathBuf },
    /// Follow chains of one family from a node
    Trace {
        file: PathBuf,
        /// Start node (proper name)
        #[arg(long)]
        from: String,
        /// Meta-type of the start node, when the name is ambiguous
        #[arg(long, value_parser = parse_meta)]
        meta: Option<MetaType>,
        #[arg(long, default_value = "L", value_parser = parse_single_family)]
        family: LinkFamily,
        #[arg(long, value_enum, default_value_t = DirectionArg::Forward)]
        direction: DirectionArg,
        #[arg(long, default_value_t = sst_core::analysis::DEFAULT_TRACE_BUDGET)]
        budget: usize,
    },
    /// Check the published incidence, generator and join matrices against the transition table
    Skeleton,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Json,
    CsvAdjacency,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Forward,
    Backward,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::Forward => Direction::Forward,
            DirectionArg::Backward => Direction::Backward,
        }
    }
}

/// `None` selects every family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyFilter(pub Option<LinkFamily>);

impl FamilyFilter {
    pub fn families(self) -> Vec<LinkFamily> {
        match self.0 {
            Some(f) => vec![f],
            None => LinkFamily::ALL.to_vec(),
        }
    }

    pub fn name(self) -> String {
        self.0.map_or_else(|| "all".to_string(), |f| f.to_string())
    }
}

fn parse_family(s: &str) -> Result<FamilyFilter, String> {
    if s.eq_ignore_ascii_case("all") {
        Ok(FamilyFilter(None))
    } else {
        parse_single_family(s).map(|f| FamilyFilter(Some(f)))
    }
}

fn parse_single_family(s: &str) -> Result<LinkFamily, String> {
    s.to_ascii_uppercase().parse()
}

fn parse_meta(s: &str) -> Result<MetaType, String> {
    s.to_ascii_lowercase().parse()
}
