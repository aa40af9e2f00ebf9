//! Report emission: one JSON file per suite plus a summary.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{RunConfig, Suite};
use crate::suites::run_suite;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub reports: Vec<(Suite, Value)>,
    pub summary: Value,
    pub files: Vec<PathBuf>,
}

/// Adds the shared envelope fields to a suite body.
pub fn envelope(suite: Suite, seed: u64, pass: bool, body: Value) -> Value {
    let mut obj = match body {
        Value::Object(map) => map,
        other => {
            let mut map = serde_json::Map::new();
            map.insert("result".into(), other);
            map
        }
    };
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert("suite".into(), json!(suite.name()));
    obj.insert("seed".into(), json!(seed));
    obj.insert("pass".into(), json!(pass));
    Value::Object(obj)
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn write_file(dir: &Path, name: &str, v: &Value) -> anyhow::Result<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, to_pretty(v)).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

/// Validates, runs every selected suite in order, and writes reports when an output
/// directory is configured. A failing or erroring suite makes the exit code nonzero;
/// an invalid configuration is returned as a [`crate::config::UsageError`].
pub fn run(cfg: &RunConfig) -> anyhow::Result<RunOutcome> {
    cfg.validate()?;
    let mut reports = Vec::with_capacity(cfg.suites.len());
    let mut summaries = Vec::with_capacity(cfg.suites.len());
    for &suite in &cfg.suites {
        let (pass, body, error) = match run_suite(cfg, suite) {
            Ok(out) => (out.pass, out.body, None),
            Err(e) => (false, json!({ "error": format!("{e:#}") }), Some(format!("{e:#}"))),
        };
        summaries.push(SuiteSummary { suite, pass, error });
        reports.push((suite, envelope(suite, cfg.seed, pass, body)));
    }
    let all_pass = summaries.iter().all(|s| s.pass);
    let summary = json!({
        "schema_version": SCHEMA_VERSION,
        "config": cfg,
        "suites": summaries,
        "pass": all_pass,
    });
    let mut files = Vec::new();
    if let Some(dir) = &cfg.out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (suite, report) in &reports {
            files.push(write_file(dir, &format!("{}.json", suite.name()), report)?);
        }
        files.push(write_file(dir, "summary.json", &summary)?);
    }
    Ok(RunOutcome { exit_code: if all_pass { EXIT_PASS } else { EXIT_FAIL }, reports, summary, files })
}
