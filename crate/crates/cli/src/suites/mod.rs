//! One function per suite, each returning a pass flag and a JSON body.

pub mod orbit;
pub mod patterns;
pub mod yangian;

use crate::config::{RunConfig, Suite};

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub pass: bool,
    pub body: serde_json::Value,
}

pub fn yangian_params(cfg: &RunConfig) -> yangian::YangianParams {
    yangian::YangianParams { n: cfg.n, order: cfg.order, seed: cfg.seed, samples: cfg.trials }
}

pub fn run_suite(cfg: &RunConfig, suite: Suite) -> anyhow::Result<SuiteOutcome> {
    match suite {
        Suite::Commute => orbit::commute(cfg),
        Suite::Independence => orbit::independence(cfg),
        Suite::Reduced => orbit::reduced(cfg),
        Suite::Patterns => patterns::patterns(),
        Suite::Yangian => yangian::yangian(&yangian_params(cfg), &yangian::YangianCheck::ALL),
    }
}
