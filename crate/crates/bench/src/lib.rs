//! Benchmark-only crate; see `benches/conjugate_pairs.rs`.
