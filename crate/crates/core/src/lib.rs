//! Typed semantic-spacetime graphs.
//!
//! Nodes carry one of three meta-types (event, thing, concept) and links one
//! of four families (near, leads-to, contains, expresses) with a reading
//! direction. The crate covers:
//!
//! - [`types`], [`transition`], [`alias`], [`graph`]: the data model and the
//!   rules deciding which links are legal
//! - [`notation`]: the `.sst` authoring language
//! - [`json`]: the canonical JSON graph document
//! - [`matrix`]: adjacency views, stepping operators, spectral ranking,
//!   entropy and the meta-type skeleton matrices
//! - [`analysis`]: node roles, absorbing regions, supernodes, chain traces
//! - [`inference`]: "might" hypotheses from structural patterns
//! - [`lint`]: modelling warnings on top of the hard rules
//! - [`generate`]: random legal graphs for tests and benchmarks

pub mod alias;
pub mod analysis;
pub mod generate;
pub mod graph;
pub mod inference;
pub mod json;
pub mod lint;
pub mod matrix;
pub mod notation;
pub mod transition;
pub mod types;

pub use alias::AliasTable;
pub use analysis::Direction;
pub use graph::{Arrow, Graph, GraphError, Link, LinkId, Node, NodeId, DEFAULT_WEIGHT};
pub use inference::{Hypothesis, HypothesisKind, Tier};
pub use matrix::{AdjacencyView, ValueVector};
pub use notation::{Diagnostic, Document, ParseError};
pub use transition::{allowed_transition, check_transition, join_types, TransitionRule};
pub use types::{LinkFamily, MetaType, Orientation, SignedLinkType};
