//! Criterion benchmarks for spoofsim; see `benches/`.
