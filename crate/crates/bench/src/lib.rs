//! Criterion benchmarks for decomposition, LHZ construction and
//! statevector verification. Run with `cargo bench -p pmqp-bench`.
