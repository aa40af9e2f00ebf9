//! Run configuration and its validation.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

pub const DEFAULT_TRIALS: usize = 20;
pub const DEFAULT_TOL: f64 = 2e-5;
pub const DEFAULT_FD_STEP: f64 = 1e-5;
pub const DEFAULT_ORDER: usize = 6;
pub const DEFAULT_N: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Commute,
    Independence,
    Reduced,
    Patterns,
    Yangian,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Commute, Suite::Independence, Suite::Reduced, Suite::Patterns, Suite::Yangian];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Commute => "commute",
            Suite::Independence => "independence",
            Suite::Reduced => "reduced",
            Suite::Patterns => "patterns",
            Suite::Yangian => "yangian",
        }
    }

    /// Suites that sample a generic coadjoint orbit.
    pub fn needs_orbit(&self) -> bool {
        matches!(self, Suite::Commute | Suite::Independence | Suite::Reduced)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses one suite name; `all` is handled by [`parse_suites`].
impl FromStr for Suite {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, UsageError> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| UsageError(format!("unknown suite {s:?}; expected one of commute, independence, reduced, patterns, yangian, all")))
    }
}

/// Comma-separated suite names, `all` expanding to every suite. Sorted and deduplicated.
pub fn parse_suites(items: &[String]) -> Result<Vec<Suite>, UsageError> {
    let mut out = Vec::new();
    for item in items.iter().flat_map(|s| s.split(',')).map(str::trim).filter(|s| !s.is_empty()) {
        if item == "all" {
            out.extend(Suite::ALL);
        } else {
            out.push(item.parse()?);
        }
    }
    if out.is_empty() {
        out.extend(Suite::ALL);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Invalid configuration; the binary maps it to exit code 2.
#[derive(Clone, Debug, PartialEq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "usage error: {}", self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn parse_real_list(s: &str) -> Result<Vec<f64>, UsageError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| UsageError(format!("not a number: {t:?}"))))
        .collect()
}

pub fn parse_int_list(s: &str) -> Result<Vec<i64>, UsageError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| UsageError(format!("not an integer: {t:?}"))))
        .collect()
}

/// `(-1, -3, -5, ...)`.
pub fn default_lambda(n: usize) -> Vec<f64> {
    (0..n).map(|i| -(2.0 * i as f64 + 1.0)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub n: usize,
    pub lambda: Vec<f64>,
    pub trials: usize,
    pub tol: f64,
    /// Relative finite-difference step; the absolute step is `fd_step * (1 + |X|)`.
    pub fd_step: f64,
    pub order: usize,
    pub seed: u64,
    pub suites: Vec<Suite>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: DEFAULT_N,
            lambda: default_lambda(DEFAULT_N),
            trials: DEFAULT_TRIALS,
            tol: DEFAULT_TOL,
            fd_step: DEFAULT_FD_STEP,
            order: DEFAULT_ORDER,
            seed: 0,
            suites: Suite::ALL.to_vec(),
            out: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), UsageError> {
        if self.n == 0 {
            return Err(UsageError("n must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(UsageError("trials must be at least 1".into()));
        }
        if self.order == 0 {
            return Err(UsageError("order must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(UsageError(format!("tol must be positive, got {}", self.tol)));
        }
        if !(self.fd_step > 0.0 && self.fd_step.is_finite()) {
            return Err(UsageError(format!("fd-step must be positive, got {}", self.fd_step)));
        }
        if self.suites.iter().any(Suite::needs_orbit) {
            if self.lambda.len() != self.n {
                return Err(UsageError(format!("lambda has {} entries but n = {}", self.lambda.len(), self.n)));
            }
            let strict = self.lambda.iter().all(|v| v.is_finite())
                && self.lambda[0] < 0.0
                && self.lambda.windows(2).all(|w| w[0] > w[1]);
            if !strict {
                return Err(UsageError(format!(
                    "orbit suites need 0 > lambda_1 > ... > lambda_n, got {:?}",
                    self.lambda
                )));
            }
        }
        Ok(())
    }
}
