//! Benchmarks for the exact construction routines; see `benches/`.
