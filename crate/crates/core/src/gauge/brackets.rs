//! The quadratic Poisson structure on the pointed gauge group in the coordinates
//! `z_ij^{(M)}(A) = (A_M)_ij`:
//!
//! `{z_ij^{(M)}, z_kl^{(N)}} = sum_{r=0}^{min(M,N)-1} (z_kj^{(r)} z_il^{(M+N-1-r)} - z_kj^{(M+N-1-r)} z_il^{(r)})`.

use num_complex::Complex64;

use super::series::MatrixSeries;
use crate::error::{Error, Result};
use crate::quat::position;

/// Coordinate by array position, `z^{(0)} = delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord {
    pub i: usize,
    pub j: usize,
    pub order: usize,
}

impl Coord {
    pub fn new(i: usize, j: usize, order: usize) -> Self {
        Coord { i, j, order }
    }

    pub fn value(&self, a: &MatrixSeries) -> Complex64 {
        a.entry(self.i, self.j, self.order)
    }
}

/// `sum coeff * prod coords`; an empty product is the constant 1.
pub type Polynomial = Vec<(Complex64, Vec<Coord>)>;

pub fn eval_polynomial(p: &Polynomial, a: &MatrixSeries) -> Complex64 {
    p.iter().map(|(c, f)| f.iter().fold(*c, |acc, z| acc * z.value(a))).sum()
}

/// The bracket of two coordinates as a quadratic polynomial in the coordinates.
pub fn coord_bracket_polynomial(x: Coord, y: Coord, order: usize) -> Result<Polynomial> {
    let (m, n) = (x.order, y.order);
    if m.min(n) == 0 {
        return Ok(Vec::new());
    }
    let top = m + n - 1;
    if top > order {
        return Err(Error::OrderOverflow { needed: top, order });
    }
    let mut out = Vec::with_capacity(2 * m.min(n));
    for r in 0..m.min(n) {
        let one = Complex64::new(1.0, 0.0);
        out.push((one, vec![Coord::new(y.i, x.j, r), Coord::new(x.i, y.j, top - r)]));
        out.push((-one, vec![Coord::new(y.i, x.j, top - r), Coord::new(x.i, y.j, r)]));
    }
    Ok(out)
}

/// `{z_ij^{(M)}, z_kl^{(N)}}(A)` for array positions.
pub fn coord_poisson_at(x: Coord, y: Coord, a: &MatrixSeries) -> Result<Complex64> {
    Ok(eval_polynomial(&coord_bracket_polynomial(x, y, a.order())?, a))
}

/// `{z_ij^{(M)}, z_kl^{(N)}}(A)` for signed indices.
#[allow(clippy::too_many_arguments)]
pub fn coord_poisson(i: i32, j: i32, m: usize, k: i32, l: i32, n_ord: usize, a: &MatrixSeries) -> Result<Complex64> {
    let half = a.dim() / 2;
    let x = Coord::new(position(i, half)?, position(j, half)?, m);
    let y = Coord::new(position(k, half)?, position(l, half)?, n_ord);
    coord_poisson_at(x, y, a)
}

/// `{f, p}` for a coordinate `f` and a polynomial `p`, by the Leibniz rule.
pub fn bracket_with_polynomial(f: Coord, p: &Polynomial, a: &MatrixSeries) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    for (c, factors) in p {
        for (idx, z) in factors.iter().enumerate() {
            let rest = factors
                .iter()
                .enumerate()
                .filter(|(o, _)| *o != idx)
                .fold(*c, |acc, (_, w)| acc * w.value(a));
            if rest == Complex64::new(0.0, 0.0) {
                continue;
            }
            total += rest * coord_poisson_at(f, *z, a)?;
        }
    }
    Ok(total)
}

/// `{x, {y, z}} + {y, {z, x}} + {z, {x, y}}` at `A`.
pub fn jacobiator(x: Coord, y: Coord, z: Coord, a: &MatrixSeries) -> Result<Complex64> {
    let k = a.order();
    Ok(bracket_with_polynomial(x, &coord_bracket_polynomial(y, z, k)?, a)?
        + bracket_with_polynomial(y, &coord_bracket_polynomial(z, x, k)?, a)?
        + bracket_with_polynomial(z, &coord_bracket_polynomial(x, y, k)?, a)?)
}

/// A function affine in the coordinates: `constant + sum coeff * z`.
#[derive(Clone, Debug, Default)]
pub struct Affine {
    pub constant: Complex64,
    pub terms: Vec<(Complex64, Coord)>,
}

impl Affine {
    fn push(&mut self, c: Complex64, z: Coord) {
        if z.order == 0 {
            if z.i == z.j {
                self.constant += c;
            }
        } else {
            self.terms.push((c, z));
        }
    }
}

pub fn bracket_affine(f: &Affine, g: &Affine, a: &MatrixSeries) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    for (cf, zf) in &f.terms {
        for (cg, zg) in &g.terms {
            total += cf * cg * coord_poisson_at(*zf, *zg, a)?;
        }
    }
    Ok(total)
}

/// `h -> z(g h)`, affine in the coordinates of `h`.
pub fn left_pullback(z: Coord, g: &MatrixSeries) -> Affine {
    let mut out = Affine::default();
    for b in 0..=z.order {
        for p in 0..g.dim() {
            out.push(g.entry(z.i, p, z.order - b), Coord::new(p, z.j, b));
        }
    }
    out
}

/// `h -> z(h g')`, affine in the coordinates of `h`.
pub fn right_pullback(z: Coord, g: &MatrixSeries) -> Affine {
    let mut out = Affine::default();
    for a in 0..=z.order {
        for p in 0..g.dim() {
            out.push(g.entry(p, z.j, z.order - a), Coord::new(z.i, p, a));
        }
    }
    out
}

/// `{f1, f2}(g g') - {L_g^* f1, L_g^* f2}(g') - {R_{g'}^* f1, R_{g'}^* f2}(g)`.
pub fn multiplicativity_defect(f1: Coord, f2: Coord, g: &MatrixSeries, g2: &MatrixSeries) -> Result<Complex64> {
    let prod = g.mul(g2)?;
    let lhs = coord_poisson_at(f1, f2, &prod)?;
    let left = bracket_affine(&left_pullback(f1, g), &left_pullback(f2, g), g2)?;
    let right = bracket_affine(&right_pullback(f1, g2), &right_pullback(f2, g2), g)?;
    Ok(lhs - left - right)
}
