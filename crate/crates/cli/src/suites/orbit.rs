//! Suites sampling a generic coadjoint orbit: commutativity, independence, reduced-space
//! invariance and formula consistency.

use gcm_core::gcm::{assemble_family, corner_trace_power, f_component, f_sum_form, Member};
use gcm_core::poisson::{certify_commutativity, certify_independence, sample_generic_point, CertifyConfig, DEFAULT_RANK_TOL};
use gcm_core::quat::random_unitary;
use gcm_core::spectral::{diagonalize, SpectrumRequest};
use gcm_core::QMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::SuiteOutcome;
use crate::config::RunConfig;

pub const INVARIANCE_TOL: f64 = 1e-9;
/// A control must move by more than this at some trial to count.
pub const CONTROL_MIN_CHANGE: f64 = 1e-6;
pub const FORM_TOL: f64 = 1e-10;
/// Odd corner traces are compared against `max(1, |Y|_F^M)`.
pub const ODD_TOL: f64 = 1e-12;
pub const ROW_TOL: f64 = 1e-10;

/// Absolute step for points of the orbit of `lambda`; `|X|` is constant along the orbit.
pub fn absolute_step(cfg: &RunConfig) -> f64 {
    cfg.fd_step * (1.0 + QMatrix::torus_diagonal(&cfg.lambda).frobenius_norm())
}

pub fn certify_config(cfg: &RunConfig) -> CertifyConfig {
    CertifyConfig {
        trials: cfg.trials,
        tol: cfg.tol,
        seed: cfg.seed,
        fd_step: Some(absolute_step(cfg)),
        ..Default::default()
    }
}

pub fn commute(cfg: &RunConfig) -> anyhow::Result<SuiteOutcome> {
    let report = certify_commutativity(&assemble_family(cfg.n), &cfg.lambda, &certify_config(cfg))?;
    Ok(SuiteOutcome { pass: report.pass, body: serde_json::to_value(&report)? })
}

pub fn independence(cfg: &RunConfig) -> anyhow::Result<SuiteOutcome> {
    let report = certify_independence(&assemble_family(cfg.n), &cfg.lambda, &certify_config(cfg), DEFAULT_RANK_TOL)?;
    Ok(SuiteOutcome { pass: report.pass, body: serde_json::to_value(&report)? })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ReducedTrial {
    /// Largest change of a level-0 member under conjugation by `diag(U', 1)`.
    pub level0_change: f64,
    /// Change of `thimm(n-1,1)` between `X` and `W X W*`, `W` in `U(n,H)`.
    pub thimm_orbit_change: Option<f64>,
    /// Change of `g_last(n-1)` under the same `diag(U', 1)` conjugation.
    pub control_change: Option<f64>,
    /// `|rtr form - 2 * sum form|`, relative to `max(1, |rtr form|)`.
    pub form_gap: f64,
    /// Largest `|rtr(Y^{2m-1} E_NN)|` over the blocks.
    pub odd_power: f64,
    /// `|sum_m |a_{n,m}|^2 - 1|`.
    pub row_defect: f64,
}

fn level0_members(n: usize) -> Vec<Member> {
    let mut out: Vec<Member> = (1..n).map(|m| Member::g(0, m)).collect();
    out.push(Member::g_last(0));
    out.extend((1..=n).map(|m| Member::f(0, m)));
    out
}

fn reduced_trial(cfg: &RunConfig, req: &SpectrumRequest, index: usize) -> anyhow::Result<ReducedTrial> {
    let n = cfg.n;
    let (x, _) = sample_generic_point(req, &certify_config(cfg), index)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
    rng.set_stream(index as u64);
    let u = random_unitary(n - 1, &mut rng).embed_upper_left(n)?;
    let y = x.conjugate_by(&u)?;
    let w = random_unitary(n, &mut rng);

    let mut trial = ReducedTrial::default();
    for member in level0_members(n) {
        let a = member.eval(&x)?;
        let b = member.eval(&y)?;
        trial.level0_change = trial.level0_change.max((a - b).abs() / a.abs().max(1.0));
    }
    if n >= 2 {
        let thimm = Member::thimm(n - 1, 1);
        trial.thimm_orbit_change = Some((thimm.eval(&x)? - thimm.eval(&x.conjugate_by(&w)?)?).abs());
        let control = Member::g_last(n - 1);
        trial.control_change = Some((control.eval(&x)? - control.eval(&y)?).abs());
    }
    for level in 0..n {
        let block = x.upper_left(n - level)?;
        for m in 1..=n - level {
            let rtr = f_component(&x, level, m)?;
            let sum = f_sum_form(&x, level, m)?;
            trial.form_gap = trial.form_gap.max((rtr - 2.0 * sum).abs() / rtr.abs().max(1.0));
            let power = 2 * m as i32 - 1;
            let scale = block.frobenius_norm().powi(power).max(1.0);
            trial.odd_power = trial.odd_power.max(corner_trace_power(&block, power as u32)?.abs() / scale);
        }
    }
    let p = diagonalize(&x)?;
    let row: f64 = (0..n).map(|m| p.a[(n - 1, m)].norm_sqr()).sum();
    trial.row_defect = (row - 1.0).abs();
    Ok(trial)
}

pub fn reduced(cfg: &RunConfig) -> anyhow::Result<SuiteOutcome> {
    let req = SpectrumRequest::new(cfg.lambda.clone(), true)?;
    let trials = (0..cfg.trials)
        .into_par_iter()
        .map(|t| reduced_trial(cfg, &req, t))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let fold = |f: fn(&ReducedTrial) -> f64| trials.iter().map(f).fold(0.0, f64::max);
    let level0 = fold(|t| t.level0_change);
    let form_gap = fold(|t| t.form_gap);
    let odd = fold(|t| t.odd_power);
    let row = fold(|t| t.row_defect);
    let max_of = |f: fn(&ReducedTrial) -> Option<f64>| {
        trials.iter().filter_map(f).fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m: f64| m.max(v))))
    };
    let thimm = max_of(|t| t.thimm_orbit_change);
    let control = max_of(|t| t.control_change);
    let control_ok = [thimm, control].iter().all(|c| c.is_none_or(|c| c > CONTROL_MIN_CHANGE));
    let invariance_pass = level0 < INVARIANCE_TOL && control_ok;
    let formulas_pass = form_gap < FORM_TOL && odd < ODD_TOL && row < ROW_TOL;
    let body = json!({
        "experiment": "reduced",
        "n": cfg.n,
        "lambda": cfg.lambda,
        "trials": cfg.trials,
        "invariance": {
            "max_level0_change": level0,
            "tol": INVARIANCE_TOL,
            "orbit_control_member": (cfg.n >= 2).then(|| format!("thimm({},1)", cfg.n - 1)),
            "max_orbit_control_change": thimm,
            "control_member": (cfg.n >= 2).then(|| format!("g_last({})", cfg.n - 1)),
            "max_control_change": control,
            "pass": invariance_pass,
        },
        "formulas": {
            "max_form_gap": form_gap,
            "max_odd_power": odd,
            "max_row_defect": row,
            "pass": formulas_pass,
        },
        "per_trial": trials,
        "pass": invariance_pass && formulas_pass,
    });
    Ok(SuiteOutcome { pass: invariance_pass && formulas_pass, body })
}
