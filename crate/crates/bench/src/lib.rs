//! Benchmark-only crate; see `benches/workbench.rs`.
