//! Benchmark-only crate; see `benches/print.rs`.
