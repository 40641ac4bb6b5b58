//! Criterion benchmarks for the gridknot search engine; see `benches/`.
