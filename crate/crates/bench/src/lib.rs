//! Benchmark-only crate; see `benches/suites.rs`.
