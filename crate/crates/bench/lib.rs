//! Criterion benchmarks for `sst-core`; see `benches/`.
