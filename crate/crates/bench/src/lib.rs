//! Criterion benchmarks for the core algebra; see `benches/algebra.rs`.
