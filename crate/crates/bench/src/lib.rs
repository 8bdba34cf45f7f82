//! Criterion benchmarks for the subadd engines; see `benches/engines.rs`.
