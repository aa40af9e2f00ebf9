//! Skew pairings `Phi(u)` with `Phi(u)^t = -Phi(-u)` and their factorization
//! `Phi(u) = C(u)^t Q C(-u)` over pointed series.

use rand::Rng;

use super::series::{random_complex_matrix, MatrixSeries};
use crate::error::{Error, Result};
use crate::quat::{symplectic_form, ComplexMatrix};

/// Residual tolerance for the parity conditions on pairings.
pub const PARITY_TOL: f64 = 1e-10;

const HALF: num_complex::Complex64 = num_complex::Complex64::new(0.5, 0.0);

/// `Phi(u) = sum Phi_M u^{-M}` with `Phi_0 = Q`, `Phi_M` symmetric for odd `M` and
/// antisymmetric for even `M`.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewPairingSeries {
    series: MatrixSeries,
}

fn max_entry(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Size of the part of `m` with the wrong parity: antisymmetric part for odd orders,
/// symmetric part for even ones.
fn parity_residual(m: &ComplexMatrix, order: usize) -> f64 {
    if order % 2 == 1 {
        max_entry(&(m - m.transpose())) / 2.0
    } else {
        max_entry(&(m + m.transpose())) / 2.0
    }
}

impl SkewPairingSeries {
    pub fn new(series: MatrixSeries) -> Result<Self> {
        if !series.dim().is_multiple_of(2) {
            return Err(Error::Dimension(format!("pairing of odd size {}", series.dim())));
        }
        let q = symplectic_form(series.dim() / 2);
        let r0 = max_entry(&(series.coeff(0) - &q));
        if r0 > PARITY_TOL {
            return Err(Error::PairingParity { order: 0, residual: r0 });
        }
        for m in 1..=series.order() {
            let r = parity_residual(series.coeff(m), m);
            if r > PARITY_TOL * (1.0 + max_entry(series.coeff(m))) {
                return Err(Error::PairingParity { order: m, residual: r });
            }
        }
        Ok(SkewPairingSeries { series })
    }

    /// The constant pairing `Q`.
    pub fn constant(n: usize, order: usize) -> Self {
        let mut s = MatrixSeries::identity(2 * n, order);
        *s.coeff_mut(0) = symplectic_form(n);
        SkewPairingSeries { series: s }
    }

    pub fn series(&self) -> &MatrixSeries {
        &self.series
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn dim(&self) -> usize {
        self.series.dim()
    }
}

/// `(B . Phi)(u) = (B(u)^{-1})^t Phi(u) B(-u)^{-1}`.
pub fn act_on_pairing(b: &MatrixSeries, phi: &SkewPairingSeries) -> Result<SkewPairingSeries> {
    let left = b.inv()?.transpose();
    let right = b.negate_argument().inv()?;
    SkewPairingSeries::new(left.mul(phi.series())?.mul(&right)?)
}

/// `C(u)^t Q C(-u)`.
pub fn pairing_of(c: &MatrixSeries) -> Result<MatrixSeries> {
    let q = symplectic_form(c.dim() / 2);
    let qc = c.negate_argument().sandwich(&q, &ComplexMatrix::identity(c.dim(), c.dim()));
    c.transpose().mul(&qc)
}

/// Order-by-order solve of `Phi_m = sum_{k+l=m} (-1)^l C_k^t Q C_l` for pointed `C`. The
/// free part of `Y_m = Q C_m` at each order is supplied by `homogeneous(m)`, which must be
/// antisymmetric for odd `m` and symmetric for even `m`.
fn solve_pairing(
    phi: &MatrixSeries,
    mut homogeneous: impl FnMut(usize) -> Option<ComplexMatrix>,
) -> Result<MatrixSeries> {
    let dim = phi.dim();
    let n = dim / 2;
    let q = symplectic_form(n);
    let r0 = max_entry(&(phi.coeff(0) - &q));
    if r0 > PARITY_TOL {
        return Err(Error::PairingParity { order: 0, residual: r0 });
    }
    let mut c = MatrixSeries::identity(dim, phi.order());
    for m in 1..=phi.order() {
        let mut rhs = phi.coeff(m).clone();
        for k in 1..m {
            let l = m - k;
            let term = c.coeff(k).transpose() * &q * c.coeff(l);
            if l % 2 == 0 {
                rhs -= term;
            } else {
                rhs += term;
            }
        }
        let residual = parity_residual(&rhs, m);
        if residual > PARITY_TOL * (1.0 + max_entry(&rhs)) {
            return Err(Error::PairingParity { order: m, residual });
        }
        // -Y^t + (-1)^m Y = R: Y = -R/2 for odd m, Y = R/2 for even m
        let sign = if m % 2 == 1 { -0.5 } else { 0.5 };
        let mut y = rhs * num_complex::Complex64::new(sign, 0.0);
        if let Some(h) = homogeneous(m) {
            y += h;
        }
        // C_m = Q^{-1} Y = -Q Y
        *c.coeff_mut(m) = -(&q * y);
    }
    Ok(c)
}

/// Canonical pointed `C` with `Phi(u) = C(u)^t Q C(-u)`; the homogeneous part is zero at
/// every order.
pub fn skew_factorize(phi: &SkewPairingSeries) -> Result<MatrixSeries> {
    solve_pairing(phi.series(), |_| None)
}

/// Random element of the stabilizer of `Q`, from the same solve with random homogeneous parts
/// of size `scale`. `scale = 0` gives the identity.
pub fn sample_h_element<R: Rng + ?Sized>(n: usize, order: usize, scale: f64, rng: &mut R) -> Result<MatrixSeries> {
    let phi = SkewPairingSeries::constant(n, order);
    solve_pairing(phi.series(), |m| {
        if scale == 0.0 {
            return None;
        }
        let g = random_complex_matrix(2 * n, scale, rng);
        Some(if m % 2 == 1 { (&g - g.transpose()) * HALF } else { (&g + g.transpose()) * HALF })
    })
}

#[cfg(test)]
mod tests {
    use super::super::series::{fixes_omega, is_in_h, s_map};
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn constant_pairing_factorizes_to_identity() {
        for n in 1..=3 {
            let c = skew_factorize(&SkewPairingSeries::constant(n, 6)).unwrap();
            assert_eq!(c, MatrixSeries::identity(2 * n, 6));
        }
    }

    #[test]
    fn orbit_pairings_factorize() {
        let mut r = rng(1);
        for n in 1..=3 {
            for _ in 0..5 {
                let b = MatrixSeries::random_pointed(2 * n, 6, 0.8, &mut r);
                let phi = act_on_pairing(&b, &SkewPairingSeries::constant(n, 6)).unwrap();
                let c = skew_factorize(&phi).unwrap();
                assert!(c.is_pointed());
                let back = pairing_of(&c).unwrap();
                for d in back.coeff_distances(phi.series()).unwrap() {
                    assert!(d < 1e-10);
                }
            }
        }
    }

    #[test]
    fn parity_violation_reports_order() {
        let mut s = SkewPairingSeries::constant(2, 4).series().clone();
        let mut r = rng(2);
        let g = random_complex_matrix(4, 1.0, &mut r);
        *s.coeff_mut(1) = (&g - g.transpose()) * HALF;
        assert!(matches!(SkewPairingSeries::new(s.clone()), Err(Error::PairingParity { order: 1, .. })));
        assert!(matches!(solve_pairing(&s, |_| None), Err(Error::PairingParity { order: 1, .. })));
        let mut s0 = SkewPairingSeries::constant(2, 4).series().clone();
        *s0.coeff_mut(0) = ComplexMatrix::identity(4, 4);
        assert!(matches!(SkewPairingSeries::new(s0), Err(Error::PairingParity { order: 0, .. })));
        let mut s2 = SkewPairingSeries::constant(2, 4).series().clone();
        *s2.coeff_mut(2) = ComplexMatrix::identity(4, 4);
        assert!(matches!(SkewPairingSeries::new(s2), Err(Error::PairingParity { order: 2, .. })));
    }

    #[test]
    fn h_samples_are_stabilizers() {
        let mut r = rng(3);
        assert_eq!(sample_h_element(2, 0, 1.0, &mut r).unwrap(), MatrixSeries::identity(4, 0));
        assert_eq!(sample_h_element(2, 5, 0.0, &mut r).unwrap(), MatrixSeries::identity(4, 5));
        for n in 1..=3 {
            let a = sample_h_element(n, 6, 0.7, &mut r).unwrap();
            let b = sample_h_element(n, 6, 0.7, &mut r).unwrap();
            assert!(a.distance_to_identity() > 1e-3);
            assert!(is_in_h(&a, 1e-10).unwrap());
            assert!(fixes_omega(&a, 1e-10).unwrap());
            assert!(is_in_h(&(&a * &b), 1e-9).unwrap());
            assert!(is_in_h(&a.inv().unwrap(), 1e-9).unwrap());
        }
    }

    #[test]
    fn membership_tests_agree() {
        let mut r = rng(4);
        for trial in 0..12 {
            let a = if trial % 2 == 0 {
                sample_h_element(2, 5, 0.6, &mut r).unwrap()
            } else {
                MatrixSeries::random_pointed(4, 5, 0.6, &mut r)
            };
            let by_s = is_in_h(&a, 1e-9).unwrap();
            let by_omega = fixes_omega(&a, 1e-9).unwrap();
            let by_sigma = super::super::series::sigma(&a).unwrap().distance(&a).unwrap() < 1e-9;
            assert_eq!(by_s, trial % 2 == 0);
            assert_eq!(by_s, by_omega);
            assert_eq!(by_s, by_sigma);
        }
    }

    #[test]
    fn s_map_is_right_h_invariant() {
        let mut r = rng(5);
        for n in 1..=3 {
            let b = MatrixSeries::random_pointed(2 * n, 6, 0.6, &mut r);
            let h = sample_h_element(n, 6, 0.6, &mut r).unwrap();
            let s1 = s_map(&b).unwrap();
            let s2 = s_map(&(&b * &h)).unwrap();
            assert!(s1.distance(&s2).unwrap() < 1e-9);
        }
    }
}
