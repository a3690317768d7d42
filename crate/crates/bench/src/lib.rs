//! Criterion benchmarks for the verification routines; see `benches/`.
