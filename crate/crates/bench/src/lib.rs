//! Criterion benchmarks for the state-sum engine live in `benches/`.
