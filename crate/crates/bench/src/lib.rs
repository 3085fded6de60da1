//! Benchmark harness for the invariant library; the benchmarks live in
//! `benches/` and use the library through this re-export.

pub use hypersing;
