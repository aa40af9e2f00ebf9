//! The complex picture of `gl(n,H)`: restriction of scalars to `C^{2n}` in the ordered basis
//! `{e_{-n}, ..., e_{-1}, e_1, ..., e_n}` with `e_{-p} = e_p j`, the symplectic form `Q`,
//! the symplectic transpose, and the `F_{i,j}` basis of `sp(2n,C)`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{QMatrix, Quaternion};
use crate::error::{Error, Result};

pub type ComplexMatrix = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Array position of a signed basis index `i` in `{-n..-1, 1..n}`.
pub fn position(index: i32, n: usize) -> Result<usize> {
    let ni = n as i32;
    match index {
        i if (1..=ni).contains(&i) => Ok(n + i as usize - 1),
        i if (-ni..=-1).contains(&i) => Ok((ni + i) as usize),
        i => Err(Error::Index(format!("signed index {i} not in the index set for n = {n}"))),
    }
}

/// Signed basis index at array position `pos`.
pub fn signed_index(pos: usize, n: usize) -> i32 {
    if pos < n {
        pos as i32 - n as i32
    } else {
        (pos - n) as i32 + 1
    }
}

/// The index set `{-n, ..., -1, 1, ..., n}` in basis order.
pub fn index_set(n: usize) -> Vec<i32> {
    (0..2 * n).map(|p| signed_index(p, n)).collect()
}

/// Image of a quaternionic matrix under `gl(n,H) -> gl(2n,C)`. The entry `alpha + j beta`
/// at `(p, q)` fills rows `{-p, p}` and columns `{-q, q}` with
/// `[[conj(alpha), beta], [-conj(beta), alpha]]`.
pub fn embed_complex(a: &QMatrix) -> ComplexMatrix {
    let (r, c) = (a.rows(), a.cols());
    let mut m = ComplexMatrix::from_element(2 * r, 2 * c, ZERO);
    for p in 0..r {
        for q in 0..c {
            let (alpha, beta) = a[(p, q)].complex_pair();
            let (pm, pp) = (r - 1 - p, r + p);
            let (qm, qp) = (c - 1 - q, c + q);
            m[(pm, qm)] = alpha.conj();
            m[(pm, qp)] = beta;
            m[(pp, qm)] = -beta.conj();
            m[(pp, qp)] = alpha;
        }
    }
    m
}

/// Inverse of [`embed_complex`]; fails when the matrix lacks the quaternionic block
/// structure to within `tol`.
pub fn unembed(m: &ComplexMatrix, tol: f64) -> Result<QMatrix> {
    if !m.nrows().is_multiple_of(2) || !m.ncols().is_multiple_of(2) {
        return Err(Error::Dimension(format!("{}x{} has odd size", m.nrows(), m.ncols())));
    }
    let (r, c) = (m.nrows() / 2, m.ncols() / 2);
    let mut out = QMatrix::zeros(r, c);
    for p in 0..r {
        for q in 0..c {
            let (pm, pp) = (r - 1 - p, r + p);
            let (qm, qp) = (c - 1 - q, c + q);
            let alpha = m[(pp, qp)];
            let beta = m[(pm, qp)];
            let dev = (m[(pm, qm)] - alpha.conj()).norm() + (m[(pp, qm)] + beta.conj()).norm();
            if dev > tol {
                return Err(Error::Dimension(format!(
                    "entry ({p},{q}) is not a quaternion block (deviation {dev:.3e})"
                )));
            }
            out[(p, q)] = Quaternion::from_complex_pair(alpha, beta);
        }
    }
    Ok(out)
}

/// `Q = [[0, I~], [-I~, 0]]` with `I~` the antidiagonal identity.
pub fn symplectic_form(n: usize) -> ComplexMatrix {
    let mut q = ComplexMatrix::from_element(2 * n, 2 * n, ZERO);
    for r in 0..n {
        q[(r, 2 * n - 1 - r)] = ONE;
        q[(n + r, n - 1 - r)] = -ONE;
    }
    q
}

fn half_dim(m: &ComplexMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() || !m.nrows().is_multiple_of(2) {
        return Err(Error::Dimension(format!("expected 2n x 2n, got {}x{}", m.nrows(), m.ncols())));
    }
    Ok(m.nrows() / 2)
}

/// `tau(M) = Q^{-1} M^t Q`, the adjoint for `Q(v, w) = v^t Q w`.
pub fn symplectic_transpose(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = half_dim(m)?;
    let q = symplectic_form(n);
    // Q^{-1} = -Q
    Ok(-(&q * m.transpose() * &q))
}

/// `Q(v, w) = v^t Q w`.
pub fn symplectic_pairing(v: &nalgebra::DVector<Complex64>, w: &nalgebra::DVector<Complex64>) -> Complex64 {
    let n = v.len() / 2;
    (v.transpose() * symplectic_form(n) * w)[(0, 0)]
}

/// Basis element `F_{i,j} = E_{i,j} - sgn(i) sgn(j) E_{-j,-i}` of `sp(2n,C)`, signed indices.
///
/// The minus sign is the one compatible with `Q` above: `Q F_{i,j}` is then symmetric.
pub fn sp_basis_element(i: i32, j: i32, n: usize) -> Result<ComplexMatrix> {
    let mut f = ComplexMatrix::from_element(2 * n, 2 * n, ZERO);
    let sign = -(i.signum() * j.signum()) as f64;
    f[(position(i, n)?, position(j, n)?)] += ONE;
    f[(position(-j, n)?, position(-i, n)?)] += Complex64::new(sign, 0.0);
    Ok(f)
}

/// Matrix exponential by scaling and squaring with a Taylor core.
pub fn expm(m: &ComplexMatrix) -> ComplexMatrix {
    let norm = m.iter().map(|z| z.norm()).fold(0.0, f64::max) * m.nrows() as f64;
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = m / Complex64::new(2f64.powi(squarings as i32), 0.0);
    let dim = m.nrows();
    let mut term = ComplexMatrix::identity(dim, dim);
    let mut sum = term.clone();
    for k in 1..=24 {
        term = &term * &scaled / Complex64::new(k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Group and algebra membership tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `A* A = 1` over `H`.
    UnitaryH,
    /// `X* + X = 0` over `H`.
    SkewH,
    /// `A^t Q A = Q`.
    SpGroup,
    /// `X^t Q + Q X = 0`.
    SpAlgebra,
}

fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Membership of a quaternionic matrix; the `Sp` kinds test its complex image.
pub fn membership(m: &QMatrix, kind: Membership, tol: f64) -> bool {
    if !m.is_square() {
        return false;
    }
    let n = m.rows();
    match kind {
        Membership::UnitaryH => (&(&m.conj_transpose() * m) - &QMatrix::identity(n)).max_abs() <= tol,
        Membership::SkewH => m.skew_residual() <= tol,
        Membership::SpGroup | Membership::SpAlgebra => {
            complex_membership(&embed_complex(m), kind, tol).unwrap_or(false)
        }
    }
}

/// Membership of a complex `2n x 2n` matrix. The `H` kinds require the quaternionic
/// block structure.
pub fn complex_membership(m: &ComplexMatrix, kind: Membership, tol: f64) -> Result<bool> {
    let n = half_dim(m)?;
    let q = symplectic_form(n);
    Ok(match kind {
        Membership::SpGroup => max_abs(&(m.transpose() * &q * m - &q)) <= tol,
        Membership::SpAlgebra => max_abs(&(m.transpose() * &q + &q * m)) <= tol,
        Membership::UnitaryH | Membership::SkewH => match unembed(m, tol) {
            Ok(a) => membership(&a, kind, tol),
            Err(_) => false,
        },
    })
}

/// Largest entry of `X^t Q + Q X`.
pub fn sp_algebra_residual(m: &ComplexMatrix) -> Result<f64> {
    let n = half_dim(m)?;
    let q = symplectic_form(n);
    Ok(max_abs(&(m.transpose() * &q + &q * m)))
}
