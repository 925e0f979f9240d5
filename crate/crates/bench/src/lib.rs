//! Criterion benchmarks for the exact searches; see `benches/`.

pub use crossint_core::*;
