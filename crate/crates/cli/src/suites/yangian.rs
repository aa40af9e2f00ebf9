//! Checks on truncated gauge series: factorization, the stabilizer subgroup, `h`-limits of the
//! basic automorphisms, the corner maps, the pullback identity and the coordinate bracket.

use std::fmt;
use std::str::FromStr;

use gcm_core::gauge::{
    act_on_pairing, basic_automorphism, coord_poisson_at, fixes_omega, is_in_h, jacobiator, multiplicativity_defect,
    pairing_of, psi0_corner, psi_chain, psi_h, quaternion_block, s_map, sample_h_element, sigma, skew_factorize,
    verify_fmn_pullback, Automorphism, Coord, GeneratorPolynomial, MatrixSeries, SkewPairingSeries,
};
use gcm_core::quat::{embed_complex, expm, random_unitary, sp_basis_element, symplectic_form, ComplexMatrix};
use gcm_core::spectral::{random_orbit_point, SpectrumRequest};
use gcm_core::{Error, QMatrix};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::SuiteOutcome;

pub const FACTORIZE_TOL: f64 = 1e-10;
pub const MEMBERSHIP_TOL: f64 = 1e-9;
pub const CHAIN_TOL: f64 = 1e-10;
pub const INVARIANCE_TOL: f64 = 1e-8;
pub const PULLBACK_TOL: f64 = 1e-10;
pub const BRACKET_TOL: f64 = 1e-9;
/// Size of random coefficients in sampled series.
pub const SERIES_SCALE: f64 = 0.6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum YangianCheck {
    Factorize,
    Stabilizer,
    Limits,
    Psi,
    Pullback,
    Poisson,
}

impl YangianCheck {
    pub const ALL: [YangianCheck; 6] = [
        YangianCheck::Factorize,
        YangianCheck::Stabilizer,
        YangianCheck::Limits,
        YangianCheck::Psi,
        YangianCheck::Pullback,
        YangianCheck::Poisson,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            YangianCheck::Factorize => "factorize",
            YangianCheck::Stabilizer => "stabilizer",
            YangianCheck::Limits => "limits",
            YangianCheck::Psi => "psi",
            YangianCheck::Pullback => "pullback",
            YangianCheck::Poisson => "poisson",
        }
    }
}

impl fmt::Display for YangianCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for YangianCheck {
    type Err = crate::config::UsageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        YangianCheck::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            crate::config::UsageError(format!(
                "unknown yangian suite {s:?}; expected factorize, stabilizer, limits, psi, pullback, poisson or all"
            ))
        })
    }
}

/// Parameters shared by the checks.
#[derive(Clone, Debug, Serialize)]
pub struct YangianParams {
    pub n: usize,
    pub order: usize,
    pub seed: u64,
    pub samples: usize,
}

fn rng_for(params: &YangianParams, check: YangianCheck) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(check as u64 + 1);
    rng
}

fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn series_scale(s: &MatrixSeries) -> f64 {
    s.coeffs().iter().map(max_abs).fold(1.0, f64::max)
}

pub fn factorize(p: &YangianParams) -> anyhow::Result<SuiteOutcome> {
    let mut rng = rng_for(p, YangianCheck::Factorize);
    let dim = 2 * p.n;
    let constant = SkewPairingSeries::constant(p.n, p.order);
    let constant_ok = skew_factorize(&constant)? == MatrixSeries::identity(dim, p.order);
    let mut max_residual: f64 = 0.0;
    for _ in 0..p.samples {
        let b = MatrixSeries::random_pointed(dim, p.order, SERIES_SCALE, &mut rng);
        let phi = act_on_pairing(&b, &constant)?;
        let c = skew_factorize(&phi)?;
        let residual = pairing_of(&c)?.distance(phi.series())? / series_scale(phi.series());
        max_residual = max_residual.max(residual);
    }
    // an antisymmetric first coefficient must be rejected at order 1
    let mut bad = constant.series().clone();
    if p.order >= 1 {
        let g = ComplexMatrix::from_fn(dim, dim, |r, c| Complex64::new((r as f64) - (c as f64), 0.0));
        *bad.coeff_mut(1) = g;
    }
    let rejected_order = match SkewPairingSeries::new(bad) {
        Err(Error::PairingParity { order, .. }) => Some(order),
        _ => None,
    };
    let parity_ok = p.order == 0 || rejected_order == Some(1) || p.n == 0;
    let pass = constant_ok && max_residual < FACTORIZE_TOL && parity_ok;
    Ok(SuiteOutcome {
        pass,
        body: json!({
            "check": "factorize",
            "constant_pairing_gives_identity": constant_ok,
            "max_relative_residual": max_residual,
            "tol": FACTORIZE_TOL,
            "parity_violation_rejected_at": rejected_order,
            "pass": pass,
        }),
    })
}

#[derive(Clone, Debug, Default, Serialize)]
struct MembershipTally {
    samples_in_h: usize,
    non_samples_outside_h: usize,
    criteria_agree: usize,
    total: usize,
}

pub fn stabilizer(p: &YangianParams) -> anyhow::Result<SuiteOutcome> {
    let mut rng = rng_for(p, YangianCheck::Stabilizer);
    let dim = 2 * p.n;
    let mut tally = MembershipTally::default();
    let mut closure_ok = true;
    let mut max_invariance: f64 = 0.0;
    let mut sigma_involution: f64 = 0.0;
    let mut sigma_hom: f64 = 0.0;
    let mut previous: Option<MatrixSeries> = None;
    for _ in 0..p.samples {
        let h = sample_h_element(p.n, p.order, SERIES_SCALE, &mut rng)?;
        let b = MatrixSeries::random_pointed(dim, p.order, SERIES_SCALE, &mut rng);
        for (series, expected) in [(&h, true), (&b, false)] {
            let by_s = is_in_h(series, MEMBERSHIP_TOL)?;
            let by_omega = fixes_omega(series, MEMBERSHIP_TOL)?;
            let by_sigma = sigma(series)?.distance(series)? < MEMBERSHIP_TOL;
            tally.total += 1;
            if by_s == by_omega && by_s == by_sigma {
                tally.criteria_agree += 1;
            }
            match (expected, by_s) {
                (true, true) => tally.samples_in_h += 1,
                (false, false) => tally.non_samples_outside_h += 1,
                _ => {}
            }
        }
        if let Some(prev) = &previous {
            closure_ok &= is_in_h(&prev.mul(&h)?, MEMBERSHIP_TOL)?;
        }
        let s1 = s_map(&b)?;
        max_invariance = max_invariance.max(s1.distance(&s_map(&b.mul(&h)?)?)? / series_scale(&s1));
        sigma_involution = sigma_involution.max(sigma(&sigma(&b)?)?.distance(&b)?);
        sigma_hom = sigma_hom.max(sigma(&b.mul(&h)?)?.distance(&sigma(&b)?.mul(&sigma(&h)?)?)?);
        previous = Some(h);
    }
    let pass = tally.samples_in_h == p.samples
        && tally.non_samples_outside_h == p.samples
        && tally.criteria_agree == tally.total
        && closure_ok
        && max_invariance < MEMBERSHIP_TOL
        && sigma_involution < MEMBERSHIP_TOL
        && sigma_hom < MEMBERSHIP_TOL;
    Ok(SuiteOutcome {
        pass,
        body: json!({
            "check": "stabilizer",
            "membership": tally,
            "product_closure": closure_ok,
            "max_s_map_right_invariance": max_invariance,
            "max_sigma_involution": sigma_involution,
            "max_sigma_homomorphism": sigma_hom,
            "tol": MEMBERSHIP_TOL,
            "pass": pass,
        }),
    })
}

fn sample_g(order: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    (0..=order)
        .map(|k| if k == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)) })
        .collect()
}

pub fn limits(p: &YangianParams) -> anyhow::Result<SuiteOutcome> {
    let mut rng = rng_for(p, YangianCheck::Limits);
    let dim = 2 * p.n;
    let hs = [1.0, 0.5, 0.25, 0.125, 0.0625];
    let mut identity_at_zero = true;
    let mut h_independent = true;
    let mut max_poly_gap: f64 = 0.0;
    let mut max_linear_ratio: f64 = 0.0;
    // polynomial images grow combinatorially with the size; keep their check small
    let poly_order = p.order.min(if dim <= 2 { 6 } else { 3 });
    for _ in 0..p.samples.min(10) {
        let a = MatrixSeries::random_pointed(dim, p.order, SERIES_SCALE, &mut rng);
        let g = sample_g(p.order, &mut rng);
        let shift = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        for which in [Automorphism::MultG(g.clone()), Automorphism::Shift(shift)] {
            identity_at_zero &= basic_automorphism(&a, &which, Some(0.0))? == a;
            // distance / h stays bounded as h shrinks
            for h in hs {
                let d = basic_automorphism(&a, &which, Some(h))?.distance(&a)?;
                max_linear_ratio = max_linear_ratio.max(d / h);
            }
        }
        for which in [Automorphism::Inv, Automorphism::BarTau] {
            let base = basic_automorphism(&a, &which, None)?;
            for h in [0.0, 0.5, 2.0] {
                h_independent &= basic_automorphism(&a, &which, Some(h))? == base;
            }
        }
        let small = MatrixSeries::new(a.coeffs()[..=poly_order].to_vec())?;
        for which in [Automorphism::MultG(g[..=poly_order].to_vec()), Automorphism::Shift(shift), Automorphism::Inv, Automorphism::BarTau] {
            let poly = GeneratorPolynomial::build(&which, dim, poly_order)?;
            for h in [1.0, 0.5, 0.0] {
                let direct = basic_automorphism(&small, &which, Some(h))?;
                max_poly_gap = max_poly_gap.max(poly.evaluate(&small, h)?.distance(&direct)? / series_scale(&direct));
            }
        }
    }
    let pass = identity_at_zero && h_independent && max_poly_gap < FACTORIZE_TOL && max_linear_ratio.is_finite();
    Ok(SuiteOutcome {
        pass,
        body: json!({
            "check": "limits",
            "deformations_identity_at_h0": identity_at_zero,
            "inv_bar_tau_h_independent": h_independent,
            "max_distance_over_h": max_linear_ratio,
            "h_grid": hs,
            "polynomial_order": poly_order,
            "max_polynomial_vs_series": max_poly_gap,
            "pass": pass,
        }),
    })
}

/// `X = Q^{-1} S` with `S` complex symmetric.
pub fn random_sp(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(2 * n, 2 * n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let s = (&g + g.transpose()) * Complex64::new(0.5, 0.0);
    -(symplectic_form(n) * s)
}

/// `exp` of a random combination of basis elements indexed by `+-1..+-(n-1)`.
pub fn random_sub_symplectic(n: usize, rng: &mut ChaCha8Rng) -> anyhow::Result<(ComplexMatrix, ComplexMatrix)> {
    let m = n as i32 - 1;
    let mut gen = ComplexMatrix::zeros(2 * n, 2 * n);
    for i in (-m..=m).filter(|v| *v != 0) {
        for j in (-m..=m).filter(|v| *v != 0) {
            gen += sp_basis_element(i, j, n)? * Complex64::new(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3));
        }
    }
    Ok((expm(&gen), expm(&(-gen))))
}

pub fn psi(p: &YangianParams) -> anyhow::Result<SuiteOutcome> {
    let mut rng = rng_for(p, YangianCheck::Psi);
    let mut chain_gap: f64 = 0.0;
    let mut sp_invariance: f64 = 0.0;
    let mut quaternion_gap: f64 = 0.0;
    let mut u_invariance: f64 = 0.0;
    for _ in 0..p.samples {
        let x = random_sp(p.n, &mut rng);
        let corner = psi0_corner(&x, p.order)?;
        let scale = series_scale(&corner);
        chain_gap = chain_gap.max(corner.distance(&psi_chain(&x, p.order)?)? / scale);
        if p.n >= 2 {
            let (g, g_inv) = random_sub_symplectic(p.n, &mut rng)?;
            let y = &g * &x * &g_inv;
            sp_invariance = sp_invariance.max(corner.distance(&psi0_corner(&y, p.order)?)? / scale);
        }

        let xq = QMatrix::random_skew(p.n, &mut rng);
        let coeffs = psi_h(&xq, p.order)?;
        let corners = psi0_corner(&embed_complex(&xq), p.order)?;
        for (m, q) in coeffs.iter().enumerate() {
            quaternion_gap = quaternion_gap.max(max_abs(&(quaternion_block(*q) - corners.coeff(m))) / (1.0 + q.norm()));
        }
        if p.n >= 2 {
            let u = random_unitary(p.n - 1, &mut rng).embed_upper_left(p.n)?;
            let moved = psi_h(&xq.conjugate_by(&u)?, p.order)?;
            for (a, b) in coeffs.iter().zip(&moved) {
                u_invariance = u_invariance.max((*a - *b).norm() / (1.0 + a.norm()));
            }
        }
    }
    let pass = chain_gap < CHAIN_TOL && sp_invariance < INVARIANCE_TOL && quaternion_gap < CHAIN_TOL && u_invariance < INVARIANCE_TOL;
    Ok(SuiteOutcome {
        pass,
        body: json!({
            "check": "psi",
            "max_chain_vs_corner": chain_gap,
            "max_sub_symplectic_change": sp_invariance,
            "max_quaternion_vs_corner": quaternion_gap,
            "max_sub_unitary_change": u_invariance,
            "pass": pass,
        }),
    })
}

pub fn pullback(p: &YangianParams) -> anyhow::Result<SuiteOutcome> {
    let mut rng = rng_for(p, YangianCheck::Pullback);
    let mut max_residual: f64 = 0.0;
    let mut max_odd: f64 = 0.0;
    let mut diagonal_ok = true;
    let lam: Vec<f64> = (1..=p.n).map(|i| -0.4 * i as f64).collect();
    let d = QMatrix::torus_diagonal(&lam);
    let rep = verify_fmn_pullback(&d, p.order, PULLBACK_TOL)?;
    for e in rep.entries.iter().filter(|e| e.order % 2 == 0) {
        let m = (e.order / 2) as i32;
        let expected = 2.0 * (-1f64).powi(m) * lam[p.n - 1].powi(2 * m);
        diagonal_ok &= (e.series_coordinate - expected).abs() < PULLBACK_TOL * expected.abs().max(1.0);
    }
    let req = SpectrumRequest::new(lam.clone(), true)?;
    for _ in 0..p.samples {
        let x = random_orbit_point(&req, rng.gen()).x;
        let rep = verify_fmn_pullback(&x, p.order, PULLBACK_TOL)?;
        max_residual = max_residual.max(rep.max_residual);
        max_odd = max_odd.max(rep.max_odd);
    }
    let pass = diagonal_ok && max_residual < PULLBACK_TOL && max_odd < PULLBACK_TOL;
    Ok(SuiteOutcome {
        pass,
        body: json!({
            "check": "pullback",
            "lambda": lam,
            "diagonal_closed_form": diagonal_ok,
            "max_relative_residual": max_residual,
            "max_odd_order": max_odd,
            "tol": PULLBACK_TOL,
            "pass": pass,
        }),
    })
}

fn random_coord(dim: usize, order: usize, rng: &mut ChaCha8Rng) -> Coord {
    Coord::new(rng.gen_range(0..dim), rng.gen_range(0..dim), order)
}

pub fn poisson(p: &YangianParams) -> anyhow::Result<SuiteOutcome> {
    let mut rng = rng_for(p, YangianCheck::Poisson);
    let dim = 2 * p.n;
    let k = p.order;
    let mut antisymmetry: f64 = 0.0;
    let mut jacobi: f64 = 0.0;
    let mut multiplicativity: f64 = 0.0;
    let mut checked = 0usize;
    for _ in 0..p.samples {
        let a = MatrixSeries::random_pointed(dim, k, SERIES_SCALE, &mut rng);
        let b = MatrixSeries::random_pointed(dim, k, SERIES_SCALE, &mut rng);
        // pairs need M + N - 1 <= K; Jacobi triples need M1 + M2 + M3 - 2 <= K
        let budget = k + 2;
        let m1 = rng.gen_range(1..=budget - 2);
        let m2 = rng.gen_range(1..=budget - 1 - m1);
        let m3 = rng.gen_range(1..=budget - m1 - m2);
        let x = random_coord(dim, m1, &mut rng);
        let y = random_coord(dim, m2, &mut rng);
        let z = random_coord(dim, m3, &mut rng);
        antisymmetry = antisymmetry.max((coord_poisson_at(x, y, &a)? + coord_poisson_at(y, x, &a)?).norm());
        multiplicativity = multiplicativity.max(multiplicativity_defect(x, y, &a, &b)?.norm());
        jacobi = jacobi.max(jacobiator(x, y, z, &a)?.norm());
        checked += 1;
    }
    let pass = antisymmetry < BRACKET_TOL && jacobi < BRACKET_TOL && multiplicativity < BRACKET_TOL;
    Ok(SuiteOutcome {
        pass,
        body: json!({
            "check": "poisson",
            "max_antisymmetry": antisymmetry,
            "max_jacobiator": jacobi,
            "jacobi_triples": checked,
            "max_multiplicativity_defect": multiplicativity,
            "tol": BRACKET_TOL,
            "pass": pass,
        }),
    })
}

pub fn run_check(check: YangianCheck, params: &YangianParams) -> anyhow::Result<SuiteOutcome> {
    match check {
        YangianCheck::Factorize => factorize(params),
        YangianCheck::Stabilizer => stabilizer(params),
        YangianCheck::Limits => limits(params),
        YangianCheck::Psi => psi(params),
        YangianCheck::Pullback => pullback(params),
        YangianCheck::Poisson => poisson(params),
    }
}

pub fn yangian(params: &YangianParams, checks: &[YangianCheck]) -> anyhow::Result<SuiteOutcome> {
    let mut results = serde_json::Map::new();
    let mut pass = true;
    for check in checks {
        let outcome = run_check(*check, params)?;
        pass &= outcome.pass;
        results.insert(check.name().to_string(), outcome.body);
    }
    Ok(SuiteOutcome {
        pass,
        body: json!({ "experiment": "yangian", "params": params, "checks": results, "pass": pass }),
    })
}
