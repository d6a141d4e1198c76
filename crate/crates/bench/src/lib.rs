//! Criterion benchmarks for `quantic-core`; see `benches/`.
