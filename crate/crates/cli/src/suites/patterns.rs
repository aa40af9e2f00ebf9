//! Pattern counts against the Weyl dimension formulas over fixed windows of top rows.

use gcm_core::patterns::{PatternKind, PatternSpec};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::SuiteOutcome;

pub const GL_MAX_N: usize = 4;
pub const GL_WINDOW: (i64, i64) = (0, 4);
pub const SP_MAX_N: usize = 3;
pub const SP_WINDOW: (i64, i64) = (-3, 0);
pub const LIST_LIMIT: usize = 100_000;

/// All nonincreasing vectors of length `n` with entries in `lo..=hi`.
pub fn chamber(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (lo..=hi).rev() {
        for mut rest in chamber(n - 1, lo, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub top: Vec<i64>,
    pub count: u128,
    pub weyl_dimension: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowResult {
    pub kind: PatternKind,
    pub cases: usize,
    pub mismatches: Vec<Mismatch>,
    pub largest_count: u128,
}

pub fn check_window(kind: PatternKind, max_n: usize, (lo, hi): (i64, i64)) -> WindowResult {
    let tops: Vec<Vec<i64>> = (1..=max_n).flat_map(|n| chamber(n, lo, hi)).collect();
    let results: Vec<(Vec<i64>, u128, u128)> = tops
        .into_par_iter()
        .map(|top| {
            let spec = PatternSpec::new(kind, top.clone()).expect("window rows lie in the chamber");
            (top, spec.count(), spec.weyl_dimension())
        })
        .collect();
    WindowResult {
        kind,
        cases: results.len(),
        largest_count: results.iter().map(|r| r.1).max().unwrap_or(0),
        mismatches: results
            .into_iter()
            .filter(|(_, c, w)| c != w)
            .map(|(top, count, weyl_dimension)| Mismatch { top, count, weyl_dimension })
            .collect(),
    }
}

pub fn patterns() -> anyhow::Result<SuiteOutcome> {
    let gl = check_window(PatternKind::Gl, GL_MAX_N, GL_WINDOW);
    let sp = check_window(PatternKind::Sp, SP_MAX_N, SP_WINDOW);
    let pass = gl.mismatches.is_empty() && sp.mismatches.is_empty();
    let body = json!({ "experiment": "patterns", "gl": gl, "sp": sp, "pass": pass });
    Ok(SuiteOutcome { pass, body })
}

/// Output of the `patterns` subcommand.
pub fn describe(kind: PatternKind, top: Vec<i64>, list: bool) -> anyhow::Result<serde_json::Value> {
    let spec = PatternSpec::new(kind, top)?;
    let mut out = json!({
        "kind": spec.kind,
        "top": spec.top_row,
        "row_lengths": spec.row_lengths(),
        "count": spec.count(),
        "weyl_dimension": spec.weyl_dimension(),
    });
    if list {
        out["patterns"] = serde_json::to_value(spec.list(LIST_LIMIT)?)?;
    }
    Ok(out)
}
