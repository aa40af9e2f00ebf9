//! Matrix power series in `u^{-1}` truncated at a fixed order.

use std::ops::Mul;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::quat::{symplectic_form, symplectic_transpose, ComplexMatrix};

/// `A(u) = sum_{M=0}^{K} A_M u^{-M}`. Products and inverses are exact through order `K`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixSeries {
    coeffs: Vec<ComplexMatrix>,
}

/// Scalar series `g(u) = sum g_K u^{-K}`.
pub type ScalarSeries = Vec<Complex64>;

pub(crate) fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub(crate) fn random_complex_matrix<R: Rng + ?Sized>(dim: usize, scale: f64, rng: &mut R) -> ComplexMatrix {
    DMatrix::from_fn(dim, dim, |_, _| complex_gaussian(rng) * scale)
}

impl MatrixSeries {
    pub fn new(coeffs: Vec<ComplexMatrix>) -> Result<Self> {
        let first = coeffs.first().ok_or_else(|| Error::Dimension("series needs at least A_0".into()))?;
        let dim = first.nrows();
        if coeffs.iter().any(|c| c.nrows() != dim || c.ncols() != dim) {
            return Err(Error::Dimension("series coefficients must be square of equal size".into()));
        }
        Ok(MatrixSeries { coeffs })
    }

    pub fn identity(dim: usize, order: usize) -> Self {
        let mut coeffs = vec![ComplexMatrix::zeros(dim, dim); order + 1];
        coeffs[0] = ComplexMatrix::identity(dim, dim);
        MatrixSeries { coeffs }
    }

    /// `1 + X u^{-1}`.
    pub fn linear(x: &ComplexMatrix, order: usize) -> Self {
        let mut s = Self::identity(x.nrows(), order);
        if order >= 1 {
            s.coeffs[1] = x.clone();
        }
        s
    }

    /// `sum_{M<=K} X^M u^{-M}`.
    pub fn geometric(x: &ComplexMatrix, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut p = ComplexMatrix::identity(x.nrows(), x.ncols());
        for _ in 0..=order {
            coeffs.push(p.clone());
            p = &p * x;
        }
        MatrixSeries { coeffs }
    }

    /// Pointed series with Gaussian coefficients of size `scale`.
    pub fn random_pointed<R: Rng + ?Sized>(dim: usize, order: usize, scale: f64, rng: &mut R) -> Self {
        let mut s = Self::identity(dim, order);
        for m in 1..=order {
            s.coeffs[m] = random_complex_matrix(dim, scale, rng);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].nrows()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ComplexMatrix] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> &ComplexMatrix {
        &self.coeffs[m]
    }

    pub fn coeff_mut(&mut self, m: usize) -> &mut ComplexMatrix {
        &mut self.coeffs[m]
    }

    /// `z_ij^{(M)}`, by array position.
    pub fn entry(&self, i: usize, j: usize, m: usize) -> Complex64 {
        self.coeffs[m][(i, j)]
    }

    pub fn is_pointed(&self) -> bool {
        self.coeffs[0] == ComplexMatrix::identity(self.dim(), self.dim())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() || self.order() != other.order() {
            return Err(Error::Dimension(format!(
                "series {}x{} order {} vs {}x{} order {}",
                self.dim(),
                self.dim(),
                self.order(),
                other.dim(),
                other.dim(),
                other.order()
            )));
        }
        Ok(())
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = (0..=self.order())
            .map(|m| {
                let mut c = ComplexMatrix::zeros(self.dim(), self.dim());
                for k in 0..=m {
                    c += &self.coeffs[k] * &other.coeffs[m - k];
                }
                c
            })
            .collect();
        Ok(MatrixSeries { coeffs })
    }

    /// Two-sided inverse. Pointed series use `B_M = -sum_{k>=1} A_k B_{M-k}`; otherwise
    /// `A_0` must be invertible.
    pub fn inv(&self) -> Result<Self> {
        let dim = self.dim();
        let a0_inv = if self.is_pointed() {
            ComplexMatrix::identity(dim, dim)
        } else {
            self.coeffs[0].clone().try_inverse().ok_or(Error::SingularSeries)?
        };
        let mut out: Vec<ComplexMatrix> = vec![a0_inv.clone()];
        for m in 1..=self.order() {
            let mut acc = ComplexMatrix::zeros(dim, dim);
            for k in 1..=m {
                acc += &self.coeffs[k] * &out[m - k];
            }
            out.push(-(&a0_inv * acc));
        }
        Ok(MatrixSeries { coeffs: out })
    }

    /// `A(-u)`: coefficient `M` picks up `(-1)^M`.
    pub fn negate_argument(&self) -> Self {
        self.map_indexed(|m, c| if m % 2 == 1 { -c } else { c.clone() })
    }

    /// `A(u + a)`, re-expanded in `u^{-1}` through order `K`.
    pub fn shift(&self, a: Complex64) -> Self {
        let k = self.order();
        let dim = self.dim();
        let mut coeffs = vec![ComplexMatrix::zeros(dim, dim); k + 1];
        coeffs[0] = self.coeffs[0].clone();
        for m in 1..=k {
            // (u + a)^{-m} = sum_r (-1)^r C(m + r - 1, r) a^r u^{-m-r}
            let mut ar = Complex64::new(1.0, 0.0);
            for r in 0..=k - m {
                let c = binomial(m + r - 1, r) * if r % 2 == 0 { 1.0 } else { -1.0 };
                coeffs[m + r] += &self.coeffs[m] * (ar * c);
                ar *= a;
            }
        }
        MatrixSeries { coeffs }
    }

    /// `A_M h^M`, i.e. `A(u / h)`.
    pub fn rescale(&self, h: f64) -> Self {
        self.map_indexed(|m, c| c * Complex64::new(h.powi(m as i32), 0.0))
    }

    pub fn transpose(&self) -> Self {
        self.map_indexed(|_, c| c.transpose())
    }

    /// Coefficientwise symplectic transpose.
    pub fn tau(&self) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(symplectic_transpose).collect::<Result<Vec<_>>>()?;
        Ok(MatrixSeries { coeffs })
    }

    pub fn scalar_mul(&self, g: &[Complex64]) -> Result<Self> {
        if g.len() != self.coeffs.len() {
            return Err(Error::Dimension(format!("scalar series of order {} vs {}", g.len() as i64 - 1, self.order())));
        }
        let coeffs = (0..=self.order())
            .map(|m| {
                let mut c = ComplexMatrix::zeros(self.dim(), self.dim());
                for k in 0..=m {
                    c += &self.coeffs[m - k] * g[k];
                }
                c
            })
            .collect();
        Ok(MatrixSeries { coeffs })
    }

    pub fn map_indexed(&self, f: impl Fn(usize, &ComplexMatrix) -> ComplexMatrix) -> Self {
        MatrixSeries { coeffs: self.coeffs.iter().enumerate().map(|(m, c)| f(m, c)).collect() }
    }

    /// Left and right multiplication by constant matrices.
    pub fn sandwich(&self, left: &ComplexMatrix, right: &ComplexMatrix) -> Self {
        self.map_indexed(|_, c| left * c * right)
    }

    /// Largest entry difference per order.
    pub fn coeff_distances(&self, other: &Self) -> Result<Vec<f64>> {
        self.check_compatible(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max))
            .collect())
    }

    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.coeff_distances(other)?.into_iter().fold(0.0, f64::max))
    }

    /// Distance to the identity series of the same shape.
    pub fn distance_to_identity(&self) -> f64 {
        self.distance(&Self::identity(self.dim(), self.order())).expect("same shape")
    }

    /// The `2x2` blocks on the array positions `{0, dim-1}` of every coefficient.
    pub fn corners(&self) -> Self {
        let last = self.dim() - 1;
        self.map_indexed(|_, c| {
            DMatrix::from_fn(2, 2, |r, s| {
                let pos = |t: usize| if t == 0 { 0 } else { last };
                c[(pos(r), pos(s))]
            })
        })
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.iter().all(|z| z.re.is_finite() && z.im.is_finite()))
    }
}

impl Mul for &MatrixSeries {
    type Output = MatrixSeries;

    fn mul(self, rhs: &MatrixSeries) -> MatrixSeries {
        MatrixSeries::mul(self, rhs).expect("series shapes must match")
    }
}

pub fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `sigma(A) = Q^{-1} (A(-u)^t)^{-1} Q`.
pub fn sigma(a: &MatrixSeries) -> Result<MatrixSeries> {
    a.negate_argument().inv()?.tau()
}

/// `S(A) = A(u) tau(A(-u))`.
pub fn s_map(a: &MatrixSeries) -> Result<MatrixSeries> {
    a.mul(&a.negate_argument().tau()?)
}

/// Whether `S(A) = 1` through order `K`, coefficientwise within `tol`.
pub fn is_in_h(a: &MatrixSeries, tol: f64) -> Result<bool> {
    Ok(s_map(a)?.distance_to_identity() < tol)
}

/// Whether `A` stabilizes the constant pairing `Q` under `(A^{-1})^t Q A(-u)^{-1}`.
pub fn fixes_omega(a: &MatrixSeries, tol: f64) -> Result<bool> {
    let n = a.dim() / 2;
    let q = symplectic_form(n);
    let image = a.inv()?.transpose().sandwich(&ComplexMatrix::identity(2 * n, 2 * n), &q);
    let acted = image.mul(&a.negate_argument().inv()?)?;
    let mut constant = MatrixSeries::identity(2 * n, a.order());
    *constant.coeff_mut(0) = q;
    Ok(acted.distance(&constant)? < tol)
}
