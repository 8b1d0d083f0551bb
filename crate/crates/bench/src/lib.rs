//! Criterion benchmarks for `bergkern`; see `benches/`.
