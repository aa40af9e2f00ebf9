//! The classical-limit maps from `sp(2n,C)` and `u(n,H)` to series of `2x2` corners.

use serde::Serialize;

use super::series::MatrixSeries;
use crate::error::{Error, Result};
use crate::quat::{embed_complex, sp_algebra_residual, ComplexMatrix, QMatrix, Quaternion};

pub const SP_TOL: f64 = 1e-9;

fn require_sp(x: &ComplexMatrix) -> Result<()> {
    let residual = sp_algebra_residual(x)?;
    let scale = x.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if residual > SP_TOL * scale {
        return Err(Error::NotSymplecticAlgebra { residual });
    }
    Ok(())
}

/// Corner blocks at indices `{-n, n}` of `sum_{M<=K} X^M u^{-M}`.
pub fn psi0_corner(x: &ComplexMatrix, order: usize) -> Result<MatrixSeries> {
    require_sp(x)?;
    Ok(MatrixSeries::geometric(x, order).corners())
}

/// The same corners through the explicit chain: start at `1 + X u^{-1}`, apply
/// `S(u) -> S(-u)^{-1}`, take corners.
pub fn psi_chain(x: &ComplexMatrix, order: usize) -> Result<MatrixSeries> {
    require_sp(x)?;
    Ok(MatrixSeries::linear(x, order).negate_argument().inv()?.corners())
}

/// `(X^M)_{nn}` for `M = 0..=K`.
pub fn psi_h(x: &QMatrix, order: usize) -> Result<Vec<Quaternion>> {
    let n = x.require_square()?;
    let residual = x.skew_residual();
    if residual > SP_TOL * (1.0 + x.max_abs()) {
        return Err(Error::NotSkewHermitian { residual });
    }
    let mut out = Vec::with_capacity(order + 1);
    let mut p = QMatrix::identity(n);
    for _ in 0..=order {
        out.push(p[(n - 1, n - 1)]);
        p = p.matmul(x)?;
    }
    Ok(out)
}

/// `2x2` complex block of a single quaternion.
pub fn quaternion_block(q: Quaternion) -> ComplexMatrix {
    embed_complex(&QMatrix::diagonal(&[q]))
}

#[derive(Clone, Debug, Serialize)]
pub struct PullbackEntry {
    pub order: usize,
    /// `s_{-1,-1} + s_{1,1}` of the corner series.
    pub series_coordinate: f64,
    /// `2 Re` of the quaternion coefficient.
    pub two_re: f64,
    /// `rtr(X^M E_nn)`.
    pub rtr: f64,
    /// Imaginary part of the complex trace of the corner; zero in exact arithmetic.
    pub imag_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PullbackReport {
    pub order: usize,
    pub entries: Vec<PullbackEntry>,
    pub max_residual: f64,
    pub max_odd: f64,
    pub pass: bool,
}

/// Checks, for each `M <= K`, that the trace of the corner block equals `2 Re` of the
/// quaternion coefficient and `rtr(X^M E_nn)`, and that odd orders vanish.
pub fn verify_fmn_pullback(x: &QMatrix, order: usize, tol: f64) -> Result<PullbackReport> {
    let n = x.require_square()?;
    let coeffs = psi_h(x, order)?;
    let corners = psi0_corner(&embed_complex(x), order)?;
    let mut entries = Vec::with_capacity(order + 1);
    let mut max_residual: f64 = 0.0;
    let mut max_odd: f64 = 0.0;
    let mut p = QMatrix::identity(n);
    for (m, q) in coeffs.iter().enumerate() {
        let corner = corners.coeff(m);
        let trace = corner[(0, 0)] + corner[(1, 1)];
        let mut e_nn = QMatrix::zeros(n, n);
        e_nn[(n - 1, n - 1)] = Quaternion::ONE;
        let rtr = p.matmul(&e_nn)?.rtr()?;
        let entry = PullbackEntry { order: m, series_coordinate: trace.re, two_re: 2.0 * q.re, rtr, imag_residual: trace.im };
        let scale = 1.0 + rtr.abs();
        max_residual = max_residual
            .max((entry.series_coordinate - entry.two_re).abs() / scale)
            .max((entry.two_re - entry.rtr).abs() / scale)
            .max(entry.imag_residual.abs() / scale);
        if m % 2 == 1 {
            max_odd = max_odd.max(entry.series_coordinate.abs()).max(entry.rtr.abs());
        }
        entries.push(entry);
        p = p.matmul(x)?;
    }
    Ok(PullbackReport { order, entries, max_residual, max_odd, pass: max_residual < tol && max_odd < tol })
}
