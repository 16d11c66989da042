//! Criterion benchmarks for the `susy-qubit` crate live in `benches/`.
