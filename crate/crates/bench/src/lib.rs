//! Benchmarks for the hot kernels of `gcm-core`: diagonalization, family gradients, pattern
//! counting and truncated series inversion. Run with `cargo bench -p gcm-bench`.
