//! Acceptance checks. Prints one `[PASS]`/`[FAIL]` line per criterion and exits nonzero
//! when any fails. Oracles below use their own quaternion arithmetic and integer formulas.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use gcm_cli::config::{RunConfig, Suite};
use gcm_cli::suites::orbit;
use gcm_cli::suites::patterns::chamber;
use gcm_cli::suites::yangian::{run_check, YangianCheck, YangianParams};
use gcm_core::gcm::{assemble_family, f_component, f_sum_form};
use gcm_core::patterns::{count_gl_patterns, count_sp_patterns, weyl_dim_gl, weyl_dim_sp};
use gcm_core::poisson::{certify_commutativity, certify_independence, poisson_bracket, DEFAULT_RANK_TOL};
use gcm_core::spectral::{diagonalize, random_orbit_point, SpectrumRequest};
use gcm_core::QMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// ---------- independent quaternion arithmetic ----------

type Q = [f64; 4];
type M = Vec<Vec<Q>>;

fn qmul(p: Q, q: Q) -> Q {
    let [a1, b1, c1, d1] = p;
    let [a2, b2, c2, d2] = q;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

fn qadd(p: Q, q: Q) -> Q {
    [p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3]]
}

fn qconj(p: Q) -> Q {
    [p[0], -p[1], -p[2], -p[3]]
}

fn to_m(x: &QMatrix) -> M {
    (0..x.rows()).map(|i| (0..x.cols()).map(|j| x[(i, j)].to_array()).collect()).collect()
}

fn mat_mul(a: &M, b: &M) -> M {
    let (r, k, c) = (a.len(), b.len(), b[0].len());
    (0..r)
        .map(|i| (0..c).map(|j| (0..k).fold([0.0; 4], |s, l| qadd(s, qmul(a[i][l], b[l][j])))).collect())
        .collect()
}

fn mat_sub(a: &M, b: &M) -> M {
    a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(p, q)| [p[0] - q[0], p[1] - q[1], p[2] - q[2], p[3] - q[3]]).collect()).collect()
}

fn adjoint(a: &M) -> M {
    (0..a[0].len()).map(|j| (0..a.len()).map(|i| qconj(a[i][j])).collect()).collect()
}

fn frob(a: &M) -> f64 {
    a.iter().flatten().map(|q| q.iter().map(|v| v * v).sum::<f64>()).sum::<f64>().sqrt()
}

fn real_trace_doubled(a: &M) -> f64 {
    2.0 * (0..a.len()).map(|i| a[i][i][0]).sum::<f64>()
}

fn leading(a: &M, size: usize) -> M {
    a[..size].iter().map(|r| r[..size].to_vec()).collect()
}

fn power(a: &M, p: u32) -> M {
    let n = a.len();
    let mut out: M = (0..n).map(|i| (0..n).map(|j| if i == j { [1.0, 0.0, 0.0, 0.0] } else { [0.0; 4] }).collect()).collect();
    for _ in 0..p {
        out = mat_mul(&out, a);
    }
    out
}

/// `2 Re (Y^p)_{NN}`.
fn corner_oracle(y: &M, p: u32) -> f64 {
    let n = y.len();
    2.0 * power(y, p)[n - 1][n - 1][0]
}

// ---------- independent integer dimension formulas ----------

/// Interlacing count, row by row.
fn gl_count_oracle(top: &[i64]) -> u128 {
    if top.len() <= 1 {
        return 1;
    }
    let mut total = 0;
    let mut row = vec![0i64; top.len() - 1];
    fn fill(top: &[i64], row: &mut Vec<i64>, i: usize, total: &mut u128) {
        if i == row.len() {
            *total += gl_count_oracle(row);
            return;
        }
        for v in top[i + 1]..=top[i] {
            row[i] = v;
            fill(top, row, i + 1, total);
        }
    }
    fill(top, &mut row, 0, &mut total);
    total
}

/// Product over positive roots of `<nu + rho, alpha> / <rho, alpha>` in type C_n, evaluated
/// with integer numerator and denominator.
fn sp_dim_oracle(chamber_row: &[i64]) -> u128 {
    let n = chamber_row.len();
    let mut nu: Vec<i128> = chamber_row.iter().map(|v| -(*v as i128)).collect();
    nu.sort_unstable_by(|a, b| b.cmp(a));
    let rho: Vec<i128> = (0..n).map(|i| (n - i) as i128).collect();
    let (mut num, mut den) = (1i128, 1i128);
    for i in 0..n {
        num *= 2 * (nu[i] + rho[i]);
        den *= 2 * rho[i];
        for j in i + 1..n {
            num *= (nu[i] + rho[i]) - (nu[j] + rho[j]);
            den *= rho[i] - rho[j];
            num *= (nu[i] + rho[i]) + (nu[j] + rho[j]);
            den *= rho[i] + rho[j];
        }
    }
    assert_eq!(num % den, 0);
    (num / den) as u128
}

// ---------- criteria ----------

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> anyhow::Result<Outcome> {
    Ok(Outcome { pass, detail })
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn orbit_cfg(n: usize, lambda: &[f64], trials: usize, suites: Vec<Suite>) -> RunConfig {
    RunConfig { n, lambda: lambda.to_vec(), trials, seed: 11, suites, ..RunConfig::default() }
}

const ORBITS: [(usize, &[f64]); 2] = [(2, &[-1.0, -3.0]), (3, &[-1.0, -2.0, -4.0])];

fn linear_bracket() -> anyhow::Result<Outcome> {
    let mut r = rng(101, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = r.gen_range(1..=4);
        let x = QMatrix::random_skew(n, &mut r);
        let z1 = QMatrix::random_skew(n, &mut r);
        let z2 = QMatrix::random_skew(n, &mut r);
        let f = |y: &QMatrix| y.matmul(&z1)?.rtr();
        let g = |y: &QMatrix| y.matmul(&z2)?.rtr();
        let numeric = poisson_bracket(f, g, &x, None)?;
        let (xm, a, b) = (to_m(&x), to_m(&z1), to_m(&z2));
        let comm = mat_sub(&mat_mul(&a, &b), &mat_mul(&b, &a));
        let oracle = real_trace_doubled(&mat_mul(&xm, &comm));
        worst = worst.max((numeric - oracle).abs() / oracle.abs());
    }
    outcome(worst < 1e-8, format!("max relative error {worst:.2e} over 100 cases (limit 1e-8)"))
}

fn commutativity() -> anyhow::Result<Outcome> {
    let mut parts = Vec::new();
    let mut pass = true;
    for (n, lam) in ORBITS {
        let cfg = orbit_cfg(n, lam, 20, vec![Suite::Commute]);
        let report = certify_commutativity(&assemble_family(n), lam, &orbit::certify_config(&cfg))?;
        let worst = report.worst.clone().map_or(0.0, |w| w.1);
        pass &= report.pass && worst < 2e-5 && report.max_abs_bracket.len() == n * n * (n * n - 1) / 2;
        parts.push(format!("n={n}: {} pairs, max |bracket| {worst:.2e}", report.max_abs_bracket.len()));
    }
    outcome(pass, format!("{} (limit 2e-5)", parts.join("; ")))
}

fn independence() -> anyhow::Result<Outcome> {
    let mut parts = Vec::new();
    let mut pass = true;
    for (n, lam) in ORBITS {
        let cfg = orbit_cfg(n, lam, 20, vec![Suite::Independence]);
        let report = certify_independence(&assemble_family(n), lam, &orbit::certify_config(&cfg), DEFAULT_RANK_TOL)?;
        let expected = [4, 9][n - 2];
        pass &= report.ranks.len() == 20 && report.ranks.iter().all(|&r| r == expected);
        let (lo, hi) = (report.ranks.iter().min().unwrap_or(&0), report.ranks.iter().max().unwrap_or(&0));
        parts.push(format!("n={n}: rank {lo}..{hi} (expected {expected})"));
    }
    outcome(pass, parts.join("; "))
}

fn reduced_invariance() -> anyhow::Result<Outcome> {
    let mut parts = Vec::new();
    let mut pass = true;
    for (n, lam) in ORBITS {
        let out = orbit::reduced(&orbit_cfg(n, lam, 20, vec![Suite::Reduced]))?;
        let inv = &out.body["invariance"];
        let level0 = inv["max_level0_change"].as_f64().unwrap_or(f64::INFINITY);
        let control = inv["max_orbit_control_change"].as_f64().unwrap_or(0.0);
        let sensitivity = inv["max_control_change"].as_f64().unwrap_or(0.0);
        pass &= level0 < 1e-9 && control > 1e-6 && sensitivity > 1e-6;
        parts.push(format!(
            "n={n}: level-0 change {level0:.1e}, {} moves {control:.2}, {} moves {sensitivity:.2}",
            inv["orbit_control_member"].as_str().unwrap_or("-"),
            inv["control_member"].as_str().unwrap_or("-"),
        ));
    }
    outcome(pass, parts.join("; "))
}

fn formula_consistency() -> anyhow::Result<Outcome> {
    let (mut form, mut oracle_gap, mut odd, mut row) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for (n, lam) in ORBITS {
        let req = SpectrumRequest::new(lam.to_vec(), true)?;
        for t in 0..50 {
            let x = random_orbit_point(&req, 500 + t).x;
            let xm = to_m(&x);
            for level in 0..n {
                let size = n - level;
                let y = leading(&xm, size);
                for m in 1..=size {
                    let rtr = f_component(&x, level, m)?;
                    let scale = rtr.abs().max(1.0);
                    form = form.max((rtr - 2.0 * f_sum_form(&x, level, m)?).abs() / scale);
                    oracle_gap = oracle_gap.max((rtr - corner_oracle(&y, 2 * m as u32)).abs() / scale);
                }
                for m in 0..size {
                    odd = odd.max(corner_oracle(&y, 2 * m as u32 + 1).abs());
                }
            }
            let a = to_m(&diagonalize(&x)?.a);
            let s: f64 = a[n - 1].iter().map(|q| q.iter().map(|v| v * v).sum::<f64>()).sum();
            row = row.max((s - 1.0).abs());
        }
    }
    outcome(
        form < 1e-10 && oracle_gap < 1e-10 && odd < 1e-12 && row < 1e-10,
        format!(
            "rtr vs 2*sum {form:.1e}, rtr vs oracle {oracle_gap:.1e}, odd powers {odd:.1e}, row sum {row:.1e} over 2x50 points"
        ),
    )
}

fn diagonalization() -> anyhow::Result<Outcome> {
    let mut r = rng(202, 0);
    let (mut recon, mut unit) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let n = r.gen_range(1..=5);
        let x = QMatrix::random_skew(n, &mut r);
        let p = diagonalize(&x)?;
        let a = to_m(&p.a);
        let d: M = (0..n).map(|i| (0..n).map(|j| if i == j { [0.0, p.lam[i], 0.0, 0.0] } else { [0.0; 4] }).collect()).collect();
        let back = mat_mul(&mat_mul(&a, &d), &adjoint(&a));
        recon = recon.max(frob(&mat_sub(&back, &to_m(&x))));
        let mut g = mat_mul(&adjoint(&a), &a);
        for (i, row) in g.iter_mut().enumerate() {
            row[i][0] -= 1.0;
        }
        unit = unit.max(frob(&g));
    }
    outcome(recon < 1e-9 && unit < 1e-9, format!("|A D A* - X| {recon:.1e}, |A*A - 1| {unit:.1e} over 100 cases"))
}

fn pattern_counts() -> anyhow::Result<Outcome> {
    let (mut gl_cases, mut sp_cases, mut bad) = (0, 0, Vec::new());
    for n in 1..=4 {
        for top in chamber(n, 0, 4) {
            gl_cases += 1;
            let (c, w, o) = (count_gl_patterns(&top)?, weyl_dim_gl(&top), gl_count_oracle(&top));
            if c != w || c != o {
                bad.push(format!("gl {top:?}: {c} vs {w} vs {o}"));
            }
        }
    }
    for n in 1..=3 {
        for top in chamber(n, -3, 0) {
            sp_cases += 1;
            let (c, w, o) = (count_sp_patterns(&top)?, weyl_dim_sp(&top), sp_dim_oracle(&top));
            if c != w || c != o {
                bad.push(format!("sp {top:?}: {c} vs {w} vs {o}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{gl_cases} gl and {sp_cases} sp top rows, mismatches: {bad:?}"))
}

fn gauge_series() -> anyhow::Result<Outcome> {
    let mut failed = Vec::new();
    for n in 1..=3 {
        let params = YangianParams { n, order: 6, seed: 303, samples: 50 };
        for check in YangianCheck::ALL {
            let out = run_check(check, &params)?;
            if !out.pass {
                failed.push(format!("n={n} {}", check.name()));
            }
        }
    }
    let names: Vec<&str> = YangianCheck::ALL.iter().map(|c| c.name()).collect();
    outcome(failed.is_empty(), format!("K=6, n=1..3, checks {}; failed: {failed:?}", names.join(",")))
}

fn run_cli(dir: &Path) -> anyhow::Result<i32> {
    let status = Command::new(env!("CARGO_BIN_EXE_gcm-lab"))
        .args(["run", "--n", "2", "--seed", "7", "--suite", "all", "--out"])
        .arg(dir)
        .stdout(std::process::Stdio::null())
        .status()?;
    Ok(status.code().unwrap_or(-1))
}

fn determinism() -> anyhow::Result<Outcome> {
    let (a, b) = (tempfile::tempdir()?, tempfile::tempdir()?);
    let codes = (run_cli(a.path())?, run_cli(b.path())?);
    let mut names: Vec<_> = std::fs::read_dir(a.path())?.map(|e| e.map(|e| e.file_name())).collect::<Result<_, _>>()?;
    names.sort();
    let mut differing = Vec::new();
    for name in &names {
        if std::fs::read(a.path().join(name))? != std::fs::read(b.path().join(name)).unwrap_or_default() {
            differing.push(name.to_string_lossy().into_owned());
        }
    }
    let count_b = std::fs::read_dir(b.path())?.count();
    outcome(
        codes == (0, 0) && differing.is_empty() && names.len() == 6 && count_b == names.len(),
        format!("exit codes {codes:?}, {} files, differing: {differing:?}", names.len()),
    )
}

fn main() {
    type Criterion = (usize, &'static str, fn() -> anyhow::Result<Outcome>);
    let criteria: [Criterion; 9] = [
        (1, "linear bracket oracle", linear_bracket),
        (2, "commutativity", commutativity),
        (3, "independence", independence),
        (4, "reduced-space invariance", reduced_invariance),
        (5, "formula consistency", formula_consistency),
        (6, "diagonalization round trip", diagonalization),
        (7, "pattern counts", pattern_counts),
        (8, "gauge-series suite", gauge_series),
        (9, "end-to-end determinism", determinism),
    ];
    let mut failures = 0;
    for (id, name, check) in criteria {
        let start = Instant::now();
        let result = check().unwrap_or_else(|e| Outcome { pass: false, detail: format!("error: {e:#}") });
        let tag = if result.pass { "PASS" } else { "FAIL" };
        failures += usize::from(!result.pass);
        println!("[{tag}] {id} {name}: {} ({:.2}s)", result.detail, start.elapsed().as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
