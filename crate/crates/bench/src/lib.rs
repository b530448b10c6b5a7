//! Criterion benchmarks for counting, canonical forms and generation; see
//! `benches/`.
