//! Batch runner for the verification suites of `gcm-core`: configuration, deterministic
//! seeding, suite orchestration and JSON report emission.

pub mod config;
pub mod explain;
pub mod report;
pub mod suites;

pub use config::{parse_suites, RunConfig, Suite, UsageError};
pub use explain::explain;
pub use report::{run, RunOutcome, EXIT_FAIL, EXIT_PASS, EXIT_USAGE, SCHEMA_VERSION};

/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "GCM_LAB_THREADS";

/// Sizes the global worker pool from [`THREADS_ENV`], if set. Returns the cap applied.
pub fn configure_threads() -> Result<Option<usize>, UsageError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(None);
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|t| *t > 0)
        .ok_or_else(|| UsageError(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    // a pool built earlier in the same process keeps its size
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(Some(threads))
}
