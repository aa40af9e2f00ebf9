use std::ops::{Add, Index, IndexMut, Mul, Sub};

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::Quaternion;
use crate::error::{Error, Result};

/// Dense quaternionic matrix, row-major. Acts on column vectors in `H^n` from the left;
/// scalars act on `H^n` from the right.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Quaternion>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, entries: vec![Quaternion::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Quaternion::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        QMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Quaternion>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries for {rows}x{cols}, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(QMatrix { rows, cols, entries })
    }

    /// Diagonal matrix with the given quaternion entries.
    pub fn diagonal(diag: &[Quaternion]) -> Self {
        let n = diag.len();
        let mut m = QMatrix::zeros(n, n);
        for (i, q) in diag.iter().enumerate() {
            m[(i, i)] = *q;
        }
        m
    }

    /// `D_lambda = diag(i lambda_1, ..., i lambda_n)`.
    pub fn torus_diagonal(lam: &[f64]) -> Self {
        let d: Vec<Quaternion> = lam.iter().map(|&l| Quaternion::new(0.0, l, 0.0, 0.0)).collect();
        QMatrix::diagonal(&d)
    }

    /// Unit matrix `E_{pq}` (0-based) scaled by `q`.
    pub fn unit(n: usize, p: usize, q: usize, value: Quaternion) -> Self {
        let mut m = QMatrix::zeros(n, n);
        m[(p, q)] = value;
        m
    }

    /// `n x n` matrix with independent standard Gaussian quaternion entries.
    pub fn gaussian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        QMatrix::from_fn(n, n, |_, _| {
            Quaternion::new(
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
            )
        })
    }

    /// Random skew-H-hermitian matrix `(G - G*)/2` with Gaussian `G`.
    pub fn random_skew<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let g = QMatrix::gaussian(n, rng);
        (&g - &g.conj_transpose()).scale(0.5)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.entries
    }

    pub fn column(&self, c: usize) -> Vec<Quaternion> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn set_column(&mut self, c: usize, col: &[Quaternion]) {
        for (r, q) in col.iter().enumerate() {
            self[(r, c)] = *q;
        }
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// `A* = conj(A)^t`.
    pub fn conj_transpose(&self) -> Self {
        QMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: f64) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|q| q.scale(s)).collect(),
        }
    }

    /// Left scalar multiplication `q * A`.
    pub fn left_scale(&self, q: Quaternion) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| q * *e).collect(),
        }
    }

    pub fn matmul(&self, rhs: &QMatrix) -> Result<QMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == Quaternion::ZERO {
                    continue;
                }
                for c in 0..rhs.cols {
                    out[(r, c)] += a * rhs[(k, c)];
                }
            }
        }
        Ok(out)
    }

    /// Integer power of a square matrix; `pow(0)` is the identity.
    pub fn pow(&self, m: u32) -> Result<QMatrix> {
        let n = self.require_square()?;
        let mut acc = QMatrix::identity(n);
        for _ in 0..m {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, rhs: &QMatrix) -> Result<QMatrix> {
        Ok(&self.matmul(rhs)? - &rhs.matmul(self)?)
    }

    /// Reduced trace `2 Re(sum of diagonal entries)`.
    pub fn rtr(&self) -> Result<f64> {
        let n = self.require_square()?;
        Ok(2.0 * (0..n).map(|i| self[(i, i)].re).sum::<f64>())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    /// Leading principal `k x k` submatrix.
    pub fn upper_left(&self, k: usize) -> Result<QMatrix> {
        let n = self.require_square()?;
        if k == 0 || k > n {
            return Err(Error::Index(format!("block size {k} outside 1..={n}")));
        }
        Ok(QMatrix::from_fn(k, k, |r, c| self[(r, c)]))
    }

    /// Block-diagonal `diag(self, 1, ..., 1)` padded to size `n`.
    pub fn embed_upper_left(&self, n: usize) -> Result<QMatrix> {
        let k = self.require_square()?;
        if k > n {
            return Err(Error::Dimension(format!("cannot embed {k}x{k} into {n}x{n}")));
        }
        let mut m = QMatrix::identity(n);
        for r in 0..k {
            for c in 0..k {
                m[(r, c)] = self[(r, c)];
            }
        }
        Ok(m)
    }

    /// Conjugation `U X U*`.
    pub fn conjugate_by(&self, u: &QMatrix) -> Result<QMatrix> {
        u.matmul(self)?.matmul(&u.conj_transpose())
    }

    /// Largest entry of `X* + X`.
    pub fn skew_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        (&self.conj_transpose() + self).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(Quaternion::is_finite)
    }

    /// Frobenius distance.
    pub fn distance(&self, other: &QMatrix) -> f64 {
        (self - other).frobenius_norm()
    }

    pub fn to_literal(&self) -> Result<MatrixLiteral> {
        let n = self.require_square()?;
        Ok(MatrixLiteral { n, entries: self.entries.iter().map(Quaternion::to_array).collect() })
    }

    pub fn from_literal(lit: &MatrixLiteral) -> Result<QMatrix> {
        QMatrix::from_rows(lit.n, lit.n, lit.entries.iter().copied().map(Quaternion::from_array).collect())
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(&self.to_literal()?).map_err(|e| Error::Json(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<QMatrix> {
        let lit: MatrixLiteral = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
        QMatrix::from_literal(&lit)
    }
}

/// Shared matrix literal: `{"n": n, "entries": [[a,b,c,d], ...]}`, row-major,
/// each entry `a + ib + jc + kd`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixLiteral {
    pub n: usize,
    pub entries: Vec<[f64; 4]>,
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quaternion {
        &mut self.entries[r * self.cols + c]
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| *a + *b).collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sub");
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| *a - *b).collect(),
        }
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        self.matmul(rhs).expect("shape mismatch in mul")
    }
}

/// Quaternionic hermitian form `<v, w> = sum conj(v_l) w_l`.
pub fn hermitian_form(v: &[Quaternion], w: &[Quaternion]) -> Quaternion {
    v.iter().zip(w).fold(Quaternion::ZERO, |acc, (a, b)| acc + a.conj() * *b)
}

/// Gram-Schmidt over `H` with right scalar multiplication. Columns whose residual norm falls
/// below `drop_tol` are skipped; stops once `limit` columns have been accepted.
pub fn quaternionic_gram_schmidt(
    candidates: &[Vec<Quaternion>],
    limit: usize,
    drop_tol: f64,
) -> Vec<Vec<Quaternion>> {
    let mut basis: Vec<Vec<Quaternion>> = Vec::with_capacity(limit);
    for cand in candidates {
        if basis.len() == limit {
            break;
        }
        let mut w = cand.clone();
        // two passes keep orthogonality at machine precision
        for _ in 0..2 {
            for b in &basis {
                let coeff = hermitian_form(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi = *wi - *bi * coeff;
                }
            }
        }
        let norm = w.iter().map(Quaternion::norm_sqr).sum::<f64>().sqrt();
        if norm > drop_tol {
            basis.push(w.into_iter().map(|q| q.scale(1.0 / norm)).collect());
        }
    }
    basis
}

/// Approximately Haar-distributed element of `U(n,H)`: Gram-Schmidt over `H` applied to
/// the columns of a Gaussian quaternion matrix.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> QMatrix {
    loop {
        let g = QMatrix::gaussian(n, rng);
        let cols: Vec<_> = (0..n).map(|c| g.column(c)).collect();
        let basis = quaternionic_gram_schmidt(&cols, n, 1e-8);
        if basis.len() == n {
            let mut u = QMatrix::zeros(n, n);
            for (c, col) in basis.iter().enumerate() {
                u.set_column(c, col);
            }
            return u;
        }
    }
}
