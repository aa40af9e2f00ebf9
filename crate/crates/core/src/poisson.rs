//! Lie-Poisson bracket on `u(n,H)* ~ u(n,H)` by finite differences.
//!
//! The dual is identified with the algebra through `<X, Y> = -rtr(XY)`, gradients are taken in
//! that inner product, and `{f, g}(X) = rtr(X [grad f, grad g])`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gcm::FunctionFamily;
use crate::quat::{QMatrix, Quaternion};
use crate::spectral::{orbit_point_from_rng, spectrum, SpectrumRequest};

/// Relative step of the central differences.
pub const DEFAULT_FD_STEP: f64 = 1e-5;
pub const DEFAULT_BRACKET_TOL: f64 = 2e-5;
pub const DEFAULT_RANK_TOL: f64 = 1e-6;
/// Sample points whose nested spectra come closer than this are redrawn.
pub const GAP_FLOOR: f64 = 1e-4;
pub const MAX_RESAMPLES: usize = 64;

/// `-rtr(XY)`, positive definite on skew-H-hermitian matrices.
pub fn inner_product(x: &QMatrix, y: &QMatrix) -> Result<f64> {
    Ok(-x.matmul(y)?.rtr()?)
}

/// Orthonormal basis of `u(n,H)`: `u E_pp / sqrt 2` for `u in {i,j,k}` and
/// `(u E_pq - conj(u) E_qp) / 2` for `p < q`, `u in {1,i,j,k}`.
#[derive(Clone, Debug)]
pub struct LieAlgebraBasis {
    n: usize,
    elements: Vec<QMatrix>,
}

impl LieAlgebraBasis {
    pub fn new(n: usize) -> Self {
        let imag = [Quaternion::I, Quaternion::J, Quaternion::K];
        let mut elements = Vec::with_capacity(2 * n * n + n);
        for p in 0..n {
            for u in imag {
                elements.push(QMatrix::unit(n, p, p, u.scale(std::f64::consts::FRAC_1_SQRT_2)));
            }
        }
        for p in 0..n {
            for q in p + 1..n {
                for u in [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K] {
                    let mut b = QMatrix::unit(n, p, q, u.scale(0.5));
                    b[(q, p)] = -u.conj().scale(0.5);
                    elements.push(b);
                }
            }
        }
        LieAlgebraBasis { n, elements }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[QMatrix] {
        &self.elements
    }

    pub fn coordinates(&self, x: &QMatrix) -> Result<Vec<f64>> {
        self.elements.iter().map(|b| inner_product(x, b)).collect()
    }

    pub fn from_coordinates(&self, coords: &[f64]) -> Result<QMatrix> {
        if coords.len() != self.len() {
            return Err(Error::Dimension(format!("{} coordinates for a basis of {}", coords.len(), self.len())));
        }
        let mut out = QMatrix::zeros(self.n, self.n);
        for (c, b) in coords.iter().zip(&self.elements) {
            out = &out + &b.scale(*c);
        }
        Ok(out)
    }
}

/// `h = DEFAULT_FD_STEP * (1 + |X|)`.
pub fn default_step(x: &QMatrix) -> f64 {
    DEFAULT_FD_STEP * (1.0 + x.frobenius_norm())
}

fn check_value(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Evaluation(format!("{what} returned {v}")))
    }
}

/// Central-difference gradient of `f` at `X` in the given basis.
pub fn gradient_in<F>(basis: &LieAlgebraBasis, f: F, x: &QMatrix, h: Option<f64>) -> Result<QMatrix>
where
    F: Fn(&QMatrix) -> Result<f64>,
{
    let h = h.unwrap_or_else(|| default_step(x));
    let mut coords = Vec::with_capacity(basis.len());
    for b in basis.elements() {
        let db = b.scale(h);
        let plus = check_value(f(&(x + &db))?, "function")?;
        let minus = check_value(f(&(x - &db))?, "function")?;
        coords.push((plus - minus) / (2.0 * h));
    }
    basis.from_coordinates(&coords)
}

pub fn gradient<F>(f: F, x: &QMatrix, h: Option<f64>) -> Result<QMatrix>
where
    F: Fn(&QMatrix) -> Result<f64>,
{
    gradient_in(&LieAlgebraBasis::new(x.require_square()?), f, x, h)
}

/// Gradients of every member of `family`, sharing one evaluation per perturbed point.
pub fn family_gradients(
    basis: &LieAlgebraBasis,
    family: &FunctionFamily,
    x: &QMatrix,
    h: Option<f64>,
) -> Result<Vec<QMatrix>> {
    let h = h.unwrap_or_else(|| default_step(x));
    let mut coords = vec![Vec::with_capacity(basis.len()); family.len()];
    for b in basis.elements() {
        let db = b.scale(h);
        let plus = family.evaluate(&(x + &db))?.values;
        let minus = family.evaluate(&(x - &db))?.values;
        for (i, c) in coords.iter_mut().enumerate() {
            c.push((plus[i] - minus[i]) / (2.0 * h));
        }
    }
    coords.iter().map(|c| basis.from_coordinates(c)).collect()
}

/// `rtr(X [A, B])` for gradients `A`, `B`.
pub fn bracket_of_gradients(x: &QMatrix, a: &QMatrix, b: &QMatrix) -> Result<f64> {
    x.matmul(&a.commutator(b)?)?.rtr()
}

pub fn poisson_bracket<F, G>(f: F, g: G, x: &QMatrix, h: Option<f64>) -> Result<f64>
where
    F: Fn(&QMatrix) -> Result<f64>,
    G: Fn(&QMatrix) -> Result<f64>,
{
    let basis = LieAlgebraBasis::new(x.require_square()?);
    let a = gradient_in(&basis, f, x, h)?;
    let b = gradient_in(&basis, g, x, h)?;
    bracket_of_gradients(x, &a, &b)
}

/// Smallest gap among the spectra of all leading blocks, counting `2|mu_1|` for each block.
pub fn nested_gap(x: &QMatrix) -> Result<f64> {
    let n = x.require_square()?;
    let mut gap = f64::INFINITY;
    for size in 1..=n {
        let mu = spectrum(&x.upper_left(size)?)?;
        gap = gap.min(2.0 * mu[0].abs());
        for w in mu.windows(2) {
            gap = gap.min(w[0] - w[1]);
        }
    }
    Ok(gap)
}

/// Settings shared by the two certification runs.
#[derive(Clone, Debug)]
pub struct CertifyConfig {
    pub trials: usize,
    pub tol: f64,
    pub seed: u64,
    /// Absolute step; `None` picks [`default_step`] at each point.
    pub fd_step: Option<f64>,
    pub gap_floor: f64,
    pub max_resamples: usize,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            trials: 20,
            tol: DEFAULT_BRACKET_TOL,
            seed: 0,
            fd_step: None,
            gap_floor: GAP_FLOOR,
            max_resamples: MAX_RESAMPLES,
        }
    }
}

/// Draws the point for trial `index`: stream `index` of the seeded generator, redrawn while
/// the nested spectra are closer than the gap floor. Returns the point and the redraw count.
pub fn sample_generic_point(req: &SpectrumRequest, cfg: &CertifyConfig, index: usize) -> Result<(QMatrix, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let mut last_gap = 0.0;
    for attempt in 0..=cfg.max_resamples {
        let x = orbit_point_from_rng(req, &mut rng).x;
        last_gap = nested_gap(&x)?;
        if last_gap >= cfg.gap_floor {
            return Ok((x, attempt));
        }
    }
    Err(Error::RetriesExhausted {
        attempts: cfg.max_resamples + 1,
        reason: format!("nested spectral gap {last_gap:.3e} below {:.1e}", cfg.gap_floor),
    })
}

fn strict_request(lam: &[f64]) -> Result<SpectrumRequest> {
    SpectrumRequest::new(lam.to_vec(), true)
}

pub fn pair_label(a: &str, b: &str) -> String {
    format!("{{{a}, {b}}}")
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutativityReport {
    pub experiment: String,
    pub n: usize,
    pub lambda: Vec<f64>,
    pub trials: usize,
    pub tol: f64,
    pub max_abs_bracket: BTreeMap<String, f64>,
    /// Largest bracket overall and the pair realizing it.
    pub worst: Option<(String, f64)>,
    pub resamples: usize,
    pub pass: bool,
}

/// Evaluates `|{f_i, f_j}|` for every pair at `trials` random points of the orbit of `lambda`.
pub fn certify_commutativity(family: &FunctionFamily, lambda: &[f64], cfg: &CertifyConfig) -> Result<CommutativityReport> {
    let req = strict_request(lambda)?;
    let n = family.n();
    if lambda.len() != n {
        return Err(Error::Dimension(format!("lambda has {} entries for n = {n}", lambda.len())));
    }
    let basis = LieAlgebraBasis::new(n);
    let m = family.len();
    let outcomes: Vec<Result<(Vec<f64>, usize)>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let (x, redraws) = sample_generic_point(&req, cfg, t)?;
            let grads = family_gradients(&basis, family, &x, cfg.fd_step)?;
            let mut vals = Vec::with_capacity(m * m.saturating_sub(1) / 2);
            for i in 0..m {
                for j in i + 1..m {
                    vals.push(bracket_of_gradients(&x, &grads[i], &grads[j])?.abs());
                }
            }
            Ok((vals, redraws))
        })
        .collect();
    let labels = family.labels();
    let mut maxima = vec![0.0f64; m * m.saturating_sub(1) / 2];
    let mut resamples = 0;
    for outcome in outcomes {
        let (vals, redraws) = outcome?;
        resamples += redraws;
        for (mx, v) in maxima.iter_mut().zip(vals) {
            *mx = mx.max(v);
        }
    }
    let mut max_abs_bracket = BTreeMap::new();
    let mut worst: Option<(String, f64)> = None;
    let mut k = 0;
    for i in 0..m {
        for j in i + 1..m {
            let label = pair_label(&labels[i], &labels[j]);
            if worst.as_ref().is_none_or(|(_, w)| maxima[k] > *w) {
                worst = Some((label.clone(), maxima[k]));
            }
            max_abs_bracket.insert(label, maxima[k]);
            k += 1;
        }
    }
    let pass = maxima.iter().all(|v| *v < cfg.tol);
    Ok(CommutativityReport {
        experiment: "commute".into(),
        n,
        lambda: lambda.to_vec(),
        trials: cfg.trials,
        tol: cfg.tol,
        max_abs_bracket,
        worst,
        resamples,
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceReport {
    pub experiment: String,
    pub n: usize,
    pub lambda: Vec<f64>,
    pub trials: usize,
    pub rank_tol: f64,
    pub expected_rank: usize,
    pub ranks: Vec<usize>,
    pub singular_values: Vec<Vec<f64>>,
    pub resamples: usize,
    pub pass: bool,
}

/// Numerical rank of the Hamiltonian vector fields `[X, grad f_i]` at `trials` orbit points.
/// The fields are tangent to the orbit, so full rank `n^2` means the family is independent on
/// the orbit and not merely in the ambient algebra. `cfg.tol` is ignored; `rank_tol` is
/// relative to the largest singular value.
pub fn certify_independence(
    family: &FunctionFamily,
    lambda: &[f64],
    cfg: &CertifyConfig,
    rank_tol: f64,
) -> Result<IndependenceReport> {
    let req = strict_request(lambda)?;
    let n = family.n();
    if lambda.len() != n {
        return Err(Error::Dimension(format!("lambda has {} entries for n = {n}", lambda.len())));
    }
    let basis = LieAlgebraBasis::new(n);
    let outcomes: Vec<Result<(Vec<f64>, usize)>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let (x, redraws) = sample_generic_point(&req, cfg, t)?;
            let grads = family_gradients(&basis, family, &x, cfg.fd_step)?;
            Ok((hamiltonian_singular_values(&basis, &x, &grads)?, redraws))
        })
        .collect();
    let mut singular_values = Vec::with_capacity(cfg.trials);
    let mut ranks = Vec::with_capacity(cfg.trials);
    let mut resamples = 0;
    for outcome in outcomes {
        let (sv, redraws) = outcome?;
        resamples += redraws;
        ranks.push(numerical_rank(&sv, rank_tol));
        singular_values.push(sv);
    }
    let expected_rank = n * n;
    let pass = ranks.iter().all(|r| *r == expected_rank);
    Ok(IndependenceReport {
        experiment: "independence".into(),
        n,
        lambda: lambda.to_vec(),
        trials: cfg.trials,
        rank_tol,
        expected_rank,
        ranks,
        singular_values,
        resamples,
        pass,
    })
}

/// Singular values, descending, of the matrix whose rows are the coordinates of `[X, g_i]`.
pub fn hamiltonian_singular_values(basis: &LieAlgebraBasis, x: &QMatrix, grads: &[QMatrix]) -> Result<Vec<f64>> {
    let rows = grads
        .iter()
        .map(|g| basis.coordinates(&x.commutator(g)?))
        .collect::<Result<Vec<_>>>()?;
    let mat = DMatrix::from_fn(rows.len(), basis.len(), |r, c| rows[r][c]);
    let mut sv: Vec<f64> = mat.svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

pub fn numerical_rank(sv: &[f64], rel_tol: f64) -> usize {
    let top = sv.iter().fold(0.0f64, |m, v| m.max(*v));
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|v| **v > rel_tol * top).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcm::{assemble_family, f_component, g_component, Member};
    use crate::spectral::random_orbit_point;

    fn linear(z: QMatrix) -> impl Fn(&QMatrix) -> Result<f64> {
        move |y: &QMatrix| y.matmul(&z)?.rtr()
    }

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn generic_point(lam: &[f64], seed: u64) -> QMatrix {
        let req = SpectrumRequest::new(lam.to_vec(), true).unwrap();
        sample_generic_point(&req, &CertifyConfig { seed, ..Default::default() }, 0).unwrap().0
    }

    #[test]
    fn basis_is_orthonormal_and_skew() {
        for n in 1..=4 {
            let basis = LieAlgebraBasis::new(n);
            assert_eq!(basis.len(), 2 * n * n + n);
            for (i, a) in basis.elements().iter().enumerate() {
                assert_eq!(a.skew_residual(), 0.0);
                for (j, b) in basis.elements().iter().enumerate() {
                    let ip = inner_product(a, b).unwrap();
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!((ip - expected).abs() < 1e-12, "<B{i}, B{j}> = {ip}");
                }
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let mut r = rng(1);
        let x = QMatrix::random_skew(3, &mut r);
        let basis = LieAlgebraBasis::new(3);
        let back = basis.from_coordinates(&basis.coordinates(&x).unwrap()).unwrap();
        assert!(back.distance(&x) < 1e-12);
    }

    #[test]
    fn gradient_of_linear_and_quadratic() {
        let mut r = rng(2);
        for n in 1..=3 {
            let x = QMatrix::random_skew(n, &mut r);
            let z = QMatrix::random_skew(n, &mut r);
            let g = gradient(linear(z.clone()), &x, None).unwrap();
            assert!(g.distance(&z.scale(-1.0)) < 1e-9);
            let g2 = gradient(|y: &QMatrix| y.matmul(y)?.rtr(), &x, None).unwrap();
            assert!(g2.distance(&x.scale(-2.0)) < 1e-7);
        }
    }

    #[test]
    fn nan_is_an_evaluation_error() {
        let x = QMatrix::torus_diagonal(&[-1.0]);
        let res = gradient(|_: &QMatrix| Ok(f64::NAN), &x, None);
        assert!(matches!(res, Err(Error::Evaluation(_))));
    }

    #[test]
    fn richardson_ratio_is_four() {
        // f(0,1) is quadratic, so central differences are exact for it; g(0,1) is not
        let x = generic_point(&[-1.0, -3.0], 3);
        let basis = LieAlgebraBasis::new(2);
        let f = |y: &QMatrix| g_component(y, 0, 1);
        let exact_ref = {
            let g1 = gradient_in(&basis, f, &x, Some(1e-3)).unwrap();
            let g2 = gradient_in(&basis, f, &x, Some(5e-4)).unwrap();
            // Richardson extrapolation of the two coarse steps
            (&g2.scale(4.0) - &g1).scale(1.0 / 3.0)
        };
        let mut errs = Vec::new();
        for h in [4e-2, 2e-2, 1e-2] {
            errs.push(gradient_in(&basis, f, &x, Some(h)).unwrap().distance(&exact_ref));
        }
        for w in errs.windows(2) {
            let ratio = w[0] / w[1];
            assert!((3.5..4.5).contains(&ratio), "ratio {ratio}, errors {errs:?}");
        }
        // the quadratic member is reproduced at any step
        let fq = |y: &QMatrix| f_component(y, 0, 1);
        let a = gradient_in(&basis, fq, &x, Some(1e-1)).unwrap();
        let b = gradient_in(&basis, fq, &x, Some(1e-4)).unwrap();
        assert!(a.distance(&b) < 1e-8);
    }

    #[test]
    fn bracket_of_linear_functions() {
        let mut r = rng(4);
        for n in 1..=3 {
            let x = QMatrix::random_skew(n, &mut r);
            let z1 = QMatrix::random_skew(n, &mut r);
            let z2 = QMatrix::random_skew(n, &mut r);
            let b = poisson_bracket(linear(z1.clone()), linear(z2.clone()), &x, None).unwrap();
            let expected = x.matmul(&z1.commutator(&z2).unwrap()).unwrap().rtr().unwrap();
            assert!((b - expected).abs() < 1e-8, "{b} vs {expected}");
        }
    }

    #[test]
    fn antisymmetry_and_self_bracket() {
        let mut r = rng(5);
        let x = generic_point(&[-1.0, -2.5, -4.0], 5);
        let z = QMatrix::random_skew(3, &mut r);
        let f = |y: &QMatrix| g_component(y, 0, 2);
        let g = linear(z);
        let fg = poisson_bracket(f, &g, &x, None).unwrap();
        let gf = poisson_bracket(&g, f, &x, None).unwrap();
        assert!((fg + gf).abs() < 1e-10);
        assert!(poisson_bracket(f, f, &x, None).unwrap().abs() < 1e-10);
    }

    #[test]
    fn leibniz_on_linear_functions() {
        let mut r = rng(6);
        let x = QMatrix::random_skew(2, &mut r);
        let (z1, z2, z3) = (QMatrix::random_skew(2, &mut r), QMatrix::random_skew(2, &mut r), QMatrix::random_skew(2, &mut r));
        let (f, g, h) = (linear(z1), linear(z2), linear(z3));
        let fg = |y: &QMatrix| Ok(f(y)? * g(y)?);
        let lhs = poisson_bracket(fg, &h, &x, None).unwrap();
        let rhs = f(&x).unwrap() * poisson_bracket(&g, &h, &x, None).unwrap()
            + g(&x).unwrap() * poisson_bracket(&f, &h, &x, None).unwrap();
        assert!((lhs - rhs).abs() < 1e-6, "{lhs} vs {rhs}");
    }

    #[test]
    fn casimirs_bracket_to_zero() {
        let lam = [-1.0, -2.0, -3.5];
        let x = generic_point(&lam, 7);
        let basis = LieAlgebraBasis::new(3);
        let fam = assemble_family(3);
        let grads = family_gradients(&basis, &fam, &x, None).unwrap();
        for i in 0..3 {
            let cas = move |y: &QMatrix| Ok(spectrum(y)?[i]);
            let gc = gradient_in(&basis, cas, &x, None).unwrap();
            for (m, g) in grads.iter().enumerate() {
                let b = bracket_of_gradients(&x, &gc, g).unwrap();
                assert!(b.abs() < 2e-5, "casimir {i} with {}: {b}", fam.labels()[m]);
            }
        }
        // top-level Thimm eigenvalues are Casimirs of the reduced block, hence commute with all
        let fam2 = assemble_family(2);
        let x2 = generic_point(&[-1.0, -3.0], 8);
        let grads2 = family_gradients(&LieAlgebraBasis::new(2), &fam2, &x2, None).unwrap();
        for g in &grads2[1..] {
            assert!(bracket_of_gradients(&x2, &grads2[0], g).unwrap().abs() < 2e-5);
        }
    }

    #[test]
    fn g_last_commutes_with_f_members() {
        for n in 2..=3 {
            let lam: Vec<f64> = (1..=n).map(|i| -(i as f64) * 1.3).collect();
            let x = generic_point(&lam, 9 + n as u64);
            let gl = |y: &QMatrix| g_component(y, 0, n);
            for m in 1..=n {
                let b = poisson_bracket(gl, |y: &QMatrix| f_component(y, 0, m), &x, None).unwrap();
                assert!(b.abs() < 2e-5, "n={n} m={m}: {b}");
            }
        }
    }

    #[test]
    fn commutativity_n2() {
        let cfg = CertifyConfig { trials: 20, seed: 11, ..Default::default() };
        let rep = certify_commutativity(&assemble_family(2), &[-1.0, -3.0], &cfg).unwrap();
        assert_eq!(rep.max_abs_bracket.len(), 6);
        assert!(rep.pass, "{rep:?}");
        assert!(rep.max_abs_bracket.values().all(|v| *v < 1e-5));
    }

    #[test]
    fn commutativity_n1_is_vacuous() {
        let cfg = CertifyConfig { trials: 3, ..Default::default() };
        let rep = certify_commutativity(&assemble_family(1), &[-2.0], &cfg).unwrap();
        assert!(rep.pass);
        assert!(rep.max_abs_bracket.is_empty());
    }

    #[test]
    fn negative_control_fails() {
        let fam = assemble_family(2).with_member(Member::custom("re(x12)", |y: &QMatrix| Ok(y[(0, 1)].re)));
        let cfg = CertifyConfig { trials: 5, seed: 12, ..Default::default() };
        let rep = certify_commutativity(&fam, &[-1.0, -3.0], &cfg).unwrap();
        assert!(!rep.pass);
        assert!(rep.worst.unwrap().1 > 1e-2);
    }

    #[test]
    fn independence_n2_and_duplicate() {
        let cfg = CertifyConfig { trials: 20, seed: 13, ..Default::default() };
        let rep = certify_independence(&assemble_family(2), &[-1.0, -3.0], &cfg, DEFAULT_RANK_TOL).unwrap();
        assert!(rep.pass, "{:?}", rep.ranks);
        assert!(rep.ranks.iter().all(|r| *r == 4));

        let base = assemble_family(2);
        let mut members = base.members().to_vec();
        members[1] = members[0].clone();
        let dup = FunctionFamily::new(2, members);
        let cfg = CertifyConfig { trials: 4, seed: 13, ..Default::default() };
        let rep = certify_independence(&dup, &[-1.0, -3.0], &cfg, DEFAULT_RANK_TOL).unwrap();
        assert!(!rep.pass);
        assert!(rep.ranks.iter().all(|r| *r == 3));
    }

    #[test]
    fn independence_n3() {
        let cfg = CertifyConfig { trials: 4, seed: 14, ..Default::default() };
        let rep = certify_independence(&assemble_family(3), &[-1.0, -2.0, -4.0], &cfg, DEFAULT_RANK_TOL).unwrap();
        assert!(rep.pass, "{:?}", rep.ranks);
    }

    #[test]
    fn rejects_non_strict_spectrum() {
        let cfg = CertifyConfig { trials: 1, ..Default::default() };
        assert!(certify_commutativity(&assemble_family(2), &[-1.0, -1.0], &cfg).is_err());
        assert!(certify_independence(&assemble_family(2), &[0.0, -1.0], &cfg, 1e-6).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_resamples_are_counted() {
        let req = SpectrumRequest::new(vec![-1.0, -3.0], true).unwrap();
        let cfg = CertifyConfig { seed: 21, ..Default::default() };
        let (a, _) = sample_generic_point(&req, &cfg, 3).unwrap();
        let (b, _) = sample_generic_point(&req, &cfg, 3).unwrap();
        assert_eq!(a, b);
        let strict_floor = CertifyConfig { gap_floor: 1e9, max_resamples: 2, ..cfg };
        assert!(matches!(sample_generic_point(&req, &strict_floor, 0), Err(Error::RetriesExhausted { attempts: 3, .. })));
        let p = random_orbit_point(&req, 1);
        assert!(nested_gap(&p.x).unwrap() <= 2.0);
    }
}
