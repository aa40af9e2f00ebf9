//! Gel'fand-Cetlin patterns for `gl(n)` and symplectic patterns for `sp(2n)`.
//!
//! A gl pattern has rows of lengths `n, n-1, ..., 1`, each interleaving the row above:
//! `u_i >= l_i >= u_{i+1}`.
//!
//! A symplectic pattern has rows `lambda, lambda', mu, mu', ..., rho, rho'` of lengths
//! `n, n, n-1, n-1, ..., 1, 1`. A primed row sits between its unprimed row and the pinned zero,
//! `0 >= lambda'_1 >= lambda_1 >= lambda'_2 >= ... >= lambda'_n >= lambda_n`, and the next
//! unprimed row interleaves the primed one, `lambda'_1 >= mu_1 >= lambda'_2 >= ... >= mu_{n-1} >= lambda'_n`.

use std::collections::HashMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternKind {
    Gl,
    Sp,
}

impl std::str::FromStr for PatternKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gl" => Ok(PatternKind::Gl),
            "sp" => Ok(PatternKind::Sp),
            other => Err(Error::Parameter(format!("unknown pattern kind {other:?}, expected gl or sp"))),
        }
    }
}

/// A top row together with the rules for filling the rows below it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternSpec {
    pub kind: PatternKind,
    pub top_row: Vec<i64>,
}

/// Which rule produces the next row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Step {
    /// gl interleaving, one shorter.
    Gl,
    /// unprimed -> primed, same length, bounded above by the pinned zero.
    Prime,
    /// primed -> unprimed, one shorter.
    Unprime,
}

impl Step {
    fn next(self) -> Step {
        match self {
            Step::Gl => Step::Gl,
            Step::Prime => Step::Unprime,
            Step::Unprime => Step::Prime,
        }
    }

    /// Inclusive bounds `(lo, hi)` for each entry of the row below `upper`.
    fn ranges(self, upper: &[i64]) -> Vec<(i64, i64)> {
        match self {
            Step::Gl | Step::Unprime => upper.windows(2).map(|w| (w[1], w[0])).collect(),
            Step::Prime => (0..upper.len())
                .map(|i| (upper[i], if i == 0 { 0 } else { upper[i - 1] }))
                .collect(),
        }
    }
}

impl PatternSpec {
    pub fn new(kind: PatternKind, top_row: Vec<i64>) -> Result<Self> {
        let nonincreasing = top_row.windows(2).all(|w| w[0] >= w[1]);
        match kind {
            PatternKind::Gl if !nonincreasing => {
                Err(Error::InvalidSpectrum(format!("gl top row {top_row:?} is not nonincreasing")))
            }
            PatternKind::Sp if !nonincreasing || top_row.first().is_some_and(|v| *v > 0) => Err(
                Error::InvalidSpectrum(format!("sp top row {top_row:?} violates 0 >= l_1 >= ... >= l_n")),
            ),
            _ => Ok(PatternSpec { kind, top_row }),
        }
    }

    pub fn n(&self) -> usize {
        self.top_row.len()
    }

    /// Lengths of all rows, the top row included.
    pub fn row_lengths(&self) -> Vec<usize> {
        let n = self.n();
        match self.kind {
            PatternKind::Gl => (1..=n).rev().collect(),
            PatternKind::Sp => (1..=n).rev().flat_map(|l| [l, l]).collect(),
        }
    }

    fn first_step(&self) -> Step {
        match self.kind {
            PatternKind::Gl => Step::Gl,
            PatternKind::Sp => Step::Prime,
        }
    }

    pub fn count(&self) -> u128 {
        if self.top_row.is_empty() {
            return 1;
        }
        let mut memo = HashMap::new();
        count_below(&self.top_row, self.first_step(), &mut memo)
    }

    /// Every pattern as its list of rows, top row first. Stops with an error past `limit`.
    pub fn list(&self, limit: usize) -> Result<Vec<Vec<Vec<i64>>>> {
        let total = self.count();
        if total > limit as u128 {
            return Err(Error::Parameter(format!("{total} patterns exceed the listing limit {limit}")));
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut rows = vec![self.top_row.clone()];
        if self.top_row.is_empty() {
            return Ok(vec![rows]);
        }
        list_below(self.first_step(), &mut rows, &mut out);
        Ok(out)
    }

    /// Whether `rows` is a valid filling below this top row.
    pub fn is_valid(&self, rows: &[Vec<i64>]) -> bool {
        let lengths = self.row_lengths();
        if rows.len() != lengths.len() || rows[0] != self.top_row {
            return false;
        }
        let mut step = self.first_step();
        for pair in rows.windows(2) {
            let ranges = step.ranges(&pair[0]);
            if ranges.len() != pair[1].len() || !ranges.iter().zip(&pair[1]).all(|((lo, hi), v)| lo <= v && v <= hi) {
                return false;
            }
            step = step.next();
        }
        true
    }

    pub fn weyl_dimension(&self) -> u128 {
        match self.kind {
            PatternKind::Gl => weyl_dim_gl(&self.top_row),
            PatternKind::Sp => weyl_dim_sp(&self.top_row),
        }
    }
}

fn count_below(upper: &[i64], step: Step, memo: &mut HashMap<(Vec<i64>, Step), u128>) -> u128 {
    let ranges = step.ranges(upper);
    if ranges.is_empty() {
        return 1;
    }
    if let Some(c) = memo.get(&(upper.to_vec(), step)) {
        return *c;
    }
    let mut total = 0u128;
    let mut row: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        total += count_below(&row, step.next(), memo);
        // odometer over the independent entry ranges
        let mut i = 0;
        while i < row.len() && row[i] == ranges[i].1 {
            row[i] = ranges[i].0;
            i += 1;
        }
        if i == row.len() {
            break;
        }
        row[i] += 1;
    }
    memo.insert((upper.to_vec(), step), total);
    total
}

fn list_below(step: Step, rows: &mut Vec<Vec<i64>>, out: &mut Vec<Vec<Vec<i64>>>) {
    let ranges = step.ranges(rows.last().unwrap());
    if ranges.is_empty() {
        out.push(rows.clone());
        return;
    }
    let mut row: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        rows.push(row.clone());
        list_below(step.next(), rows, out);
        rows.pop();
        let mut i = 0;
        while i < row.len() && row[i] == ranges[i].1 {
            row[i] = ranges[i].0;
            i += 1;
        }
        if i == row.len() {
            break;
        }
        row[i] += 1;
    }
}

pub fn count_gl_patterns(lam: &[i64]) -> Result<u128> {
    Ok(PatternSpec::new(PatternKind::Gl, lam.to_vec())?.count())
}

pub fn count_sp_patterns(lam: &[i64]) -> Result<u128> {
    Ok(PatternSpec::new(PatternKind::Sp, lam.to_vec())?.count())
}

fn ratio_to_u128(r: Ratio<i128>) -> u128 {
    assert!(r.is_integer() && *r.numer() >= 0, "dimension {r} is not a nonnegative integer");
    r.to_integer() as u128
}

/// `prod_{i<j} (l_i - l_j + j - i) / (j - i)`.
pub fn weyl_dim_gl(lam: &[i64]) -> u128 {
    let n = lam.len();
    let mut d = Ratio::from_integer(1i128);
    for i in 0..n {
        for j in i + 1..n {
            let gap = (j - i) as i128;
            d *= Ratio::new(lam[i] as i128 - lam[j] as i128 + gap, gap);
        }
    }
    ratio_to_u128(d)
}

/// Symplectic Weyl dimension for a chamber weight `0 >= l_1 >= ... >= l_n`, through the
/// dominant weight `nu_i = |l_{n+1-i}|`.
pub fn weyl_dim_sp(lam: &[i64]) -> u128 {
    let n = lam.len();
    let mut nu: Vec<i128> = lam.iter().rev().map(|v| v.unsigned_abs() as i128).collect();
    nu.sort_by(|a, b| b.cmp(a));
    let l: Vec<i128> = (0..n).map(|i| nu[i] + (n - i) as i128).collect();
    let m: Vec<i128> = (0..n).map(|i| (n - i) as i128).collect();
    let mut d = Ratio::from_integer(1i128);
    for i in 0..n {
        d *= Ratio::new(l[i], m[i]);
        for j in i + 1..n {
            d *= Ratio::new(l[i] * l[i] - l[j] * l[j], m[i] * m[i] - m[j] * m[j]);
        }
    }
    ratio_to_u128(d)
}
