//! The Gel'fand-Cetlin-Molev function family on `u(n,H)* ~ u(n,H)`.
//!
//! With `Y = upper_left(X, n-k) = B D_mu B*` (block size `N = n - k`):
//!
//! - `thimm(k, m) = mu_m`, the chamber-ordered spectrum of `Y` for `k >= 1`;
//! - `g(k, m) = |b_{N,m}|^2` for `m < N`;
//! - `g_last(k)` = i-component of `Y_{N,N}`, the last torus moment map component;
//! - `f(k, m) = rtr(Y^{2m} E_{NN})`.
//!
//! The canonical family has exactly `n^2` members: `n(n-1)/2` Thimm functions and
//! `sum_k (n - k)` G-functions.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quat::{QMatrix, Quaternion};
use crate::spectral::{diagonalize, spectrum, OrbitPoint};

pub type CustomFn = Arc<dyn Fn(&QMatrix) -> Result<f64> + Send + Sync>;

/// What a family member computes.
#[derive(Clone)]
pub enum MemberKind {
    /// `m`-th eigenvalue (1-based, chamber order) of the block of size `n - level`.
    Thimm { level: usize, index: usize },
    /// Bottom-row norm-square of the block frame.
    G { level: usize, index: usize },
    /// i-component of the last diagonal entry of the block.
    GLast { level: usize },
    /// `rtr(Y^{2m} E_{NN})`.
    F { level: usize, index: usize },
    /// Any other scalar function, for controls and experiments.
    Custom(CustomFn),
}

impl fmt::Debug for MemberKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MemberKind::Thimm { level, index } => write!(f, "Thimm({level},{index})"),
            MemberKind::G { level, index } => write!(f, "G({level},{index})"),
            MemberKind::GLast { level } => write!(f, "GLast({level})"),
            MemberKind::F { level, index } => write!(f, "F({level},{index})"),
            MemberKind::Custom(_) => write!(f, "Custom"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Member {
    pub label: String,
    pub kind: MemberKind,
}

impl Member {
    pub fn thimm(level: usize, index: usize) -> Self {
        Member { label: format!("thimm({level},{index})"), kind: MemberKind::Thimm { level, index } }
    }

    pub fn g(level: usize, index: usize) -> Self {
        Member { label: format!("g({level},{index})"), kind: MemberKind::G { level, index } }
    }

    pub fn g_last(level: usize) -> Self {
        Member { label: format!("g_last({level})"), kind: MemberKind::GLast { level } }
    }

    pub fn f(level: usize, index: usize) -> Self {
        Member { label: format!("f({level},{index})"), kind: MemberKind::F { level, index } }
    }

    pub fn custom(label: impl Into<String>, func: impl Fn(&QMatrix) -> Result<f64> + Send + Sync + 'static) -> Self {
        Member { label: label.into(), kind: MemberKind::Custom(Arc::new(func)) }
    }

    /// The level `k` this member reads from, if it is a structured member.
    pub fn level(&self) -> Option<usize> {
        match self.kind {
            MemberKind::Thimm { level, .. }
            | MemberKind::G { level, .. }
            | MemberKind::GLast { level }
            | MemberKind::F { level, .. } => Some(level),
            MemberKind::Custom(_) => None,
        }
    }

    /// Evaluates this member alone.
    pub fn eval(&self, x: &QMatrix) -> Result<f64> {
        let mut cache = BlockCache::new(x)?;
        cache.eval(self)
    }
}

/// Values of every member at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyValues {
    pub values: Vec<f64>,
    /// Smallest spectral gap over the diagonalized blocks (`+inf` if none was needed).
    pub min_gap: f64,
}

/// Ordered list of scalar functions on `u(n,H)`.
#[derive(Clone, Debug)]
pub struct FunctionFamily {
    n: usize,
    members: Vec<Member>,
}

impl FunctionFamily {
    pub fn new(n: usize, members: Vec<Member>) -> Self {
        FunctionFamily { n, members }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.members.iter().map(|m| m.label.clone()).collect()
    }

    pub fn push(&mut self, member: Member) {
        self.members.push(member);
    }

    pub fn with_member(mut self, member: Member) -> Self {
        self.push(member);
        self
    }

    pub fn evaluate(&self, x: &QMatrix) -> Result<FamilyValues> {
        if x.rows() != self.n {
            return Err(Error::Dimension(format!("family is for n = {}, point has n = {}", self.n, x.rows())));
        }
        let mut cache = BlockCache::new(x)?;
        let values = self.members.iter().map(|m| cache.eval(m)).collect::<Result<Vec<_>>>()?;
        Ok(FamilyValues { values, min_gap: cache.min_gap() })
    }

    /// Smallest gap of every block spectrum the structured members depend on.
    pub fn min_spectral_gap(&self, x: &QMatrix) -> Result<f64> {
        let mut cache = BlockCache::new(x)?;
        for m in &self.members {
            match m.kind {
                MemberKind::Thimm { level, .. } | MemberKind::G { level, .. } => {
                    cache.block(self.n - level)?;
                }
                _ => {}
            }
        }
        Ok(cache.min_gap())
    }

    pub fn report(&self, x: &QMatrix, lambda: &[f64], point_seed: u64) -> Result<EvaluationReport> {
        let vals = self.evaluate(x)?;
        Ok(EvaluationReport {
            n: self.n,
            lambda: lambda.to_vec(),
            point_seed,
            values: self.labels().into_iter().zip(vals.values).collect(),
        })
    }
}

/// `{"n":…, "lambda":[…], "point_seed":…, "values": {label: value}}`.
#[derive(Clone, Debug, Serialize)]
pub struct EvaluationReport {
    pub n: usize,
    pub lambda: Vec<f64>,
    pub point_seed: u64,
    pub values: BTreeMap<String, f64>,
}

/// The canonical `n^2`-member family: Thimm components for block sizes `n-1, ..., 1`, then for
/// `k = 0..n-1` the components `g(k, 1..n-k-1)` and `g_last(k)`.
pub fn assemble_family(n: usize) -> FunctionFamily {
    let mut members = Vec::with_capacity(n * n);
    for level in 1..n {
        for index in 1..=n - level {
            members.push(Member::thimm(level, index));
        }
    }
    for level in 0..n {
        for index in 1..n - level {
            members.push(Member::g(level, index));
        }
        members.push(Member::g_last(level));
    }
    FunctionFamily::new(n, members)
}

/// Same layout as [`assemble_family`] with `f(k, m)` in place of `g(k, m)`.
pub fn assemble_f_family(n: usize) -> FunctionFamily {
    let mut members = Vec::with_capacity(n * n);
    for level in 1..n {
        for index in 1..=n - level {
            members.push(Member::thimm(level, index));
        }
    }
    for level in 0..n {
        for index in 1..n - level {
            members.push(Member::f(level, index));
        }
        members.push(Member::g_last(level));
    }
    FunctionFamily::new(n, members)
}

struct BlockCache<'a> {
    x: &'a QMatrix,
    n: usize,
    blocks: Vec<Option<OrbitPoint>>,
}

impl<'a> BlockCache<'a> {
    fn new(x: &'a QMatrix) -> Result<Self> {
        let n = x.require_square()?;
        Ok(BlockCache { x, n, blocks: vec![None; n + 1] })
    }

    fn block(&mut self, size: usize) -> Result<&OrbitPoint> {
        if self.blocks[size].is_none() {
            self.blocks[size] = Some(diagonalize(&self.x.upper_left(size)?)?);
        }
        Ok(self.blocks[size].as_ref().unwrap())
    }

    fn min_gap(&self) -> f64 {
        self.blocks.iter().flatten().map(|p| p.min_gap).fold(f64::INFINITY, f64::min)
    }

    fn size_for(&self, level: usize) -> Result<usize> {
        if level >= self.n {
            return Err(Error::Index(format!("level {level} outside 0..{}", self.n)));
        }
        Ok(self.n - level)
    }

    fn eval(&mut self, member: &Member) -> Result<f64> {
        let value = match &member.kind {
            MemberKind::Thimm { level, index } => {
                let size = self.size_for(*level)?;
                if *level == 0 || *index == 0 || *index > size {
                    return Err(Error::Index(format!("thimm({level},{index}) for n = {}", self.n)));
                }
                self.block(size)?.lam[index - 1]
            }
            MemberKind::G { level, index } => {
                let size = self.size_for(*level)?;
                if *index == 0 || *index >= size {
                    return Err(Error::Index(format!("g({level},{index}) for n = {}", self.n)));
                }
                self.block(size)?.a[(size - 1, index - 1)].norm_sqr()
            }
            MemberKind::GLast { level } => {
                let size = self.size_for(*level)?;
                self.x[(size - 1, size - 1)].im_i
            }
            MemberKind::F { level, index } => {
                let size = self.size_for(*level)?;
                if *index == 0 || *index > size {
                    return Err(Error::Index(format!("f({level},{index}) for n = {}", self.n)));
                }
                corner_trace_power(&self.x.upper_left(size)?, 2 * *index as u32)?
            }
            MemberKind::Custom(func) => func(self.x)?,
        };
        if !value.is_finite() {
            return Err(Error::Evaluation(format!("{} returned {value}", member.label)));
        }
        Ok(value)
    }
}

/// `rtr(Y^M E_{NN})` for square `Y` of size `N`.
pub fn corner_trace_power(y: &QMatrix, power: u32) -> Result<f64> {
    let size = y.require_square()?;
    Ok(2.0 * y.pow(power)?[(size - 1, size - 1)].re)
}

/// Chamber spectra of the blocks of sizes `n-1, n-2, ..., 1`.
pub fn thimm_values(x: &QMatrix) -> Result<Vec<Vec<f64>>> {
    let n = x.require_square()?;
    (1..n).map(|k| spectrum(&x.upper_left(n - k)?)).collect()
}

fn check_gf_indices(x: &QMatrix, level: usize, index: usize) -> Result<usize> {
    let n = x.require_square()?;
    if level >= n || index == 0 || index > n - level {
        return Err(Error::Index(format!("(level {level}, index {index}) for n = {n}")));
    }
    Ok(n - level)
}

/// `g(k, m)`: `|b_{N,m}|^2` for `m < N`, the i-component of `Y_{NN}` for `m = N`.
pub fn g_component(x: &QMatrix, level: usize, index: usize) -> Result<f64> {
    let size = check_gf_indices(x, level, index)?;
    if index == size {
        return Ok(x[(size - 1, size - 1)].im_i);
    }
    let p = diagonalize(&x.upper_left(size)?)?;
    if p.degenerate {
        return Err(Error::Degenerate(format!(
            "block of size {size} has spectral gap {:.3e}",
            p.min_gap
        )));
    }
    Ok(p.a[(size - 1, index - 1)].norm_sqr())
}

/// `f(k, m) = rtr(Y^{2m} E_{NN})`.
pub fn f_component(x: &QMatrix, level: usize, index: usize) -> Result<f64> {
    let size = check_gf_indices(x, level, index)?;
    corner_trace_power(&x.upper_left(size)?, 2 * index as u32)
}

/// The eigen-sum expression `sum_l (-1)^m mu_l^{2m} |b_{N,l}|^2`. Half of [`f_component`]
/// because the reduced trace doubles real parts.
pub fn f_sum_form(x: &QMatrix, level: usize, index: usize) -> Result<f64> {
    let size = check_gf_indices(x, level, index)?;
    let p = diagonalize(&x.upper_left(size)?)?;
    let sign = if index.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok((0..size)
        .map(|l| sign * p.lam[l].powi(2 * index as i32) * p.a[(size - 1, l)].norm_sqr())
        .sum())
}

/// Recovers the weights `|a_{n,l}|^2` (`l = 1..n`) from `f(0, 1..n)` and the spectrum by
/// solving `f_m = 2 sum_l (-1)^m lambda_l^{2m} w_l`.
pub fn recover_weights(f_values: &[f64], lam: &[f64]) -> Result<Vec<f64>> {
    let n = lam.len();
    if f_values.len() != n {
        return Err(Error::Dimension(format!("{} f-values for {n} eigenvalues", f_values.len())));
    }
    let scale = lam.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let distinct = lam.iter().all(|l| l.abs() > 1e-12 * scale.max(1.0))
        && (0..n).all(|i| (i + 1..n).all(|j| (lam[i].powi(2) - lam[j].powi(2)).abs() > 1e-12 * scale.max(1.0).powi(2)));
    if !distinct {
        return Err(Error::Degenerate(format!("spectrum {lam:?} has repeated or vanishing |lambda|")));
    }
    let matrix = DMatrix::from_fn(n, n, |m, l| {
        let power = 2 * (m as i32 + 1);
        let sign = if (m + 1) % 2 == 0 { 1.0 } else { -1.0 };
        2.0 * sign * lam[l].powi(power)
    });
    let rhs = DVector::from_column_slice(f_values);
    let sol = matrix
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Degenerate(format!("singular change of variables for {lam:?}")))?;
    if sol.iter().any(|v| !v.is_finite()) {
        return Err(Error::Degenerate(format!("singular change of variables for {lam:?}")));
    }
    Ok(sol.iter().copied().collect())
}

/// `g(0, m)` for `m < n` from `f(0, 1..n)` and the top spectrum.
pub fn g_from_f(f_values: &[f64], lam: &[f64]) -> Result<Vec<f64>> {
    let mut w = recover_weights(f_values, lam)?;
    w.pop();
    Ok(w)
}

/// The i-component of a quaternion, as used for torus moment map components.
pub fn torus_component(q: Quaternion) -> f64 {
    q.im_i
}
