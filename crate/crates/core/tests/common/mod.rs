#![allow(dead_code)]

use std::path::PathBuf;

use sst_core::notation::{build_partial, parse_named, BuildOutput};
use sst_core::AliasTable;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Parses and builds a fixture, panicking on parse errors.
pub fn load(name: &str) -> BuildOutput {
    let doc = parse_named(name, &fixture(name)).unwrap_or_else(|e| panic!("{name}: {e:?}"));
    build_partial(&doc, &AliasTable::default())
}
