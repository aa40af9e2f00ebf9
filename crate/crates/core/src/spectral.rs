//! Diagonalization of skew-H-hermitian matrices, `X = A D_lambda A*`, in the chamber
//! `0 >= lambda_1 >= ... >= lambda_n`, plus sampling of coadjoint orbit points.
//!
//! The quaternionic eigenproblem is solved through the complex picture: `-i * embed(X)` is
//! hermitian with eigenvalues `{±lambda_l}`. An eigenvector `v` for `i*lambda` read as a
//! quaternionic column `a` satisfies `X a = a (i lambda)`, and `v.j` is its partner for
//! `-i*lambda`, so half of the complex eigenvectors assemble into `A`.

use nalgebra::linalg::SymmetricEigen;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::quat::{embed_complex, quaternionic_gram_schmidt, random_unitary, QMatrix, Quaternion};

/// Eigenvalues closer than this (relative to `max(1, |lambda|_inf)`) count as one cluster.
pub const CLUSTER_GAP: f64 = 1e-8;
/// Relative tolerance for pairing `i mu` with `-i mu`.
pub const PAIRING_TOL: f64 = 1e-8;

/// A point of a coadjoint orbit with its diagonalization.
#[derive(Clone, Debug)]
pub struct OrbitPoint {
    pub x: QMatrix,
    pub a: QMatrix,
    pub lam: Vec<f64>,
    /// Smallest gap in `{±lambda_l}`: adjacent differences and `2|lambda_1|`.
    pub min_gap: f64,
    /// Set when some gap fell below [`CLUSTER_GAP`]; eigenvectors of such a cluster were
    /// orthonormalized together and are not individually meaningful.
    pub degenerate: bool,
}

impl OrbitPoint {
    /// `A D_lambda A*`.
    pub fn reconstruct(&self) -> QMatrix {
        let d = QMatrix::torus_diagonal(&self.lam);
        &(&self.a * &d) * &self.a.conj_transpose()
    }

    pub fn n(&self) -> usize {
        self.lam.len()
    }
}

/// Target spectrum for sampling.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumRequest {
    lam: Vec<f64>,
    strict: bool,
}

impl SpectrumRequest {
    /// `strict` asks for a generic orbit: `0 > lambda_1 > ... > lambda_n`.
    pub fn new(lam: Vec<f64>, strict: bool) -> Result<Self> {
        if lam.is_empty() {
            return Err(Error::InvalidSpectrum("empty spectrum".into()));
        }
        if lam.iter().any(|l| !l.is_finite()) {
            return Err(Error::InvalidSpectrum("non-finite entry".into()));
        }
        if lam[0] > 0.0 || lam.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidSpectrum(format!(
                "{lam:?} is not in the chamber 0 >= l1 >= ... >= ln"
            )));
        }
        if strict && (lam[0] == 0.0 || lam.windows(2).any(|w| w[0] == w[1])) {
            return Err(Error::InvalidSpectrum(format!(
                "{lam:?} is not generic (needs 0 > l1 > ... > ln)"
            )));
        }
        Ok(SpectrumRequest { lam, strict })
    }

    pub fn lam(&self) -> &[f64] {
        &self.lam
    }

    pub fn strict(&self) -> bool {
        self.strict
    }
}

fn require_skew(x: &QMatrix) -> Result<usize> {
    let n = x.require_square()?;
    let residual = x.skew_residual();
    if !x.is_finite() || residual > 1e-9 * x.max_abs().max(1.0) {
        return Err(Error::NotSkewHermitian { residual });
    }
    Ok(n)
}

/// Sorted eigenvalues of `-i * embed(X)` (ascending).
fn hermitian_spectrum(x: &QMatrix) -> Vec<f64> {
    let h = embed_complex(x) * Complex64::new(0.0, -1.0);
    let mut mu: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    mu.sort_by(|a, b| a.partial_cmp(b).unwrap());
    mu
}

fn paired_chamber(mu: &[f64]) -> Result<Vec<f64>> {
    let n = mu.len() / 2;
    let scale = mu.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tol = PAIRING_TOL * scale + 1e-12;
    let mut lam = Vec::with_capacity(n);
    // ascending mu: mu[k] pairs with mu[2n-1-k]; chamber order reads them from the middle out
    for l in 0..n {
        let lo = mu[n - 1 - l];
        let hi = mu[n + l];
        if (lo + hi).abs() > tol {
            return Err(Error::Pairing(format!("{lo:.6e} vs {hi:.6e}")));
        }
        lam.push(-(hi.abs() + lo.abs()) / 2.0);
    }
    Ok(lam)
}

fn min_gap(lam: &[f64]) -> f64 {
    let mut gap = 2.0 * lam[0].abs();
    for w in lam.windows(2) {
        gap = gap.min(w[0] - w[1]);
    }
    gap
}

/// Sorted chamber spectrum `0 >= lambda_1 >= ... >= lambda_n` of a skew-H-hermitian matrix.
pub fn spectrum(x: &QMatrix) -> Result<Vec<f64>> {
    require_skew(x)?;
    paired_chamber(&hermitian_spectrum(x))
}

/// Right-multiplies each column by the unit complex phase making the `C`-component of its
/// largest entry real and positive. Entries whose modulus is within `1e-12` of the maximum
/// count as ties and the first one wins.
pub fn normalize_torus(a: &mut QMatrix) {
    for c in 0..a.cols() {
        let col = a.column(c);
        let max = col.iter().map(Quaternion::norm).fold(0.0, f64::max);
        let pivot = col
            .iter()
            .find(|q| q.norm() >= max - 1e-12 * max.max(1.0))
            .copied()
            .unwrap_or(Quaternion::ZERO);
        let (alpha, beta) = pivot.complex_pair();
        let theta = if alpha.norm() > 1e-12 {
            -alpha.arg()
        } else if beta.norm() > 1e-12 {
            // purely j-valued pivot: make its beta real positive instead
            -beta.arg()
        } else {
            0.0
        };
        let rotated: Vec<_> = col.iter().map(|q| q.rotate_right(theta)).collect();
        a.set_column(c, &rotated);
    }
}

/// Diagonalizes `X = A D_lambda A*` with `A` in `U(n,H)`.
pub fn diagonalize(x: &QMatrix) -> Result<OrbitPoint> {
    let n = require_skew(x)?;
    let h = embed_complex(x) * Complex64::new(0.0, -1.0);
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let mu: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let lam = paired_chamber(&mu)?;

    // ascending mu: most negative first; zero clusters come after every negative eigenvalue
    let candidates: Vec<Vec<Quaternion>> = order
        .iter()
        .map(|&k| {
            let v = eig.eigenvectors.column(k);
            (0..n)
                .map(|p| Quaternion::from_complex_pair(v[n + p], v[n - 1 - p]))
                .collect()
        })
        .collect();
    let mut cols = quaternionic_gram_schmidt(&candidates, n, 0.5);
    if cols.len() != n {
        return Err(Error::Pairing(format!(
            "only {} of {n} quaternionic eigenvectors recovered",
            cols.len()
        )));
    }
    cols.reverse();
    let mut a = QMatrix::zeros(n, n);
    for (c, col) in cols.iter().enumerate() {
        a.set_column(c, col);
    }
    normalize_torus(&mut a);

    let gap = min_gap(&lam);
    let scale = lam.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    Ok(OrbitPoint { x: x.clone(), a, degenerate: gap < CLUSTER_GAP * scale, min_gap: gap, lam })
}

/// Samples `X = A D_lambda A*` with `A` from Gram-Schmidt over `H` on a Gaussian matrix.
pub fn random_orbit_point(req: &SpectrumRequest, seed: u64) -> OrbitPoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    orbit_point_from_rng(req, &mut rng)
}

pub fn orbit_point_from_rng<R: rand::Rng + ?Sized>(req: &SpectrumRequest, rng: &mut R) -> OrbitPoint {
    let n = req.lam.len();
    let mut a = random_unitary(n, rng);
    normalize_torus(&mut a);
    let d = QMatrix::torus_diagonal(&req.lam);
    let x = &(&a * &d) * &a.conj_transpose();
    let gap = min_gap(&req.lam);
    let scale = req.lam.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    OrbitPoint { x, a, lam: req.lam.clone(), min_gap: gap, degenerate: gap < CLUSTER_GAP * scale }
}

/// Leading `k x k` block of `X`.
pub fn upper_left_block(x: &QMatrix, k: usize) -> Result<QMatrix> {
    x.upper_left(k)
}
