//! The four basic automorphisms of the pointed gauge group, their `h`-families, and the same
//! maps written as polynomials in the coordinates `z_ij^{(M)}`.

use std::collections::HashMap;

use num_complex::Complex64;

use super::series::{binomial, MatrixSeries, ScalarSeries};
use crate::error::{Error, Result};
use crate::quat::{symplectic_transpose, ComplexMatrix};

#[derive(Clone, Debug, PartialEq)]
pub enum Automorphism {
    /// `A -> g(u) A(u)` for a scalar series with `g_0 = 1`.
    MultG(ScalarSeries),
    /// `A -> A(u + a)`.
    Shift(Complex64),
    /// `A -> A(-u)^{-1}`.
    Inv,
    /// `A -> tau(A(-u))`.
    BarTau,
}

impl Automorphism {
    pub fn name(&self) -> &'static str {
        match self {
            Automorphism::MultG(_) => "mult_g",
            Automorphism::Shift(_) => "shift_a",
            Automorphism::Inv => "inv",
            Automorphism::BarTau => "bar_tau",
        }
    }

    fn validate(&self) -> Result<()> {
        if let Automorphism::MultG(g) = self {
            let g0 = g.first().copied().unwrap_or_default();
            if (g0 - Complex64::new(1.0, 0.0)).norm() > 0.0 {
                return Err(Error::Parameter(format!("mult_g needs g_0 = 1, got {g0}")));
            }
        }
        Ok(())
    }
}

/// Applies the automorphism, or its `h`-deformation when `h` is given (`None` means `h = 1`).
/// The deformation multiplies by `g_h(u) = sum g_K h^K u^{-K}` and shifts by `a h`; the other
/// two maps do not depend on `h`.
pub fn basic_automorphism(a: &MatrixSeries, which: &Automorphism, h: Option<f64>) -> Result<MatrixSeries> {
    which.validate()?;
    if !a.is_pointed() {
        return Err(Error::Parameter("automorphisms act on pointed series".into()));
    }
    let h = h.unwrap_or(1.0);
    match which {
        Automorphism::MultG(g) => {
            if g.len() < a.order() + 1 {
                return Err(Error::OrderOverflow { needed: a.order(), order: g.len().saturating_sub(1) });
            }
            let gh: Vec<Complex64> = (0..=a.order()).map(|k| g[k] * h.powi(k as i32)).collect();
            a.scalar_mul(&gh)
        }
        Automorphism::Shift(t) => Ok(a.shift(t * h)),
        Automorphism::Inv => a.negate_argument().inv(),
        Automorphism::BarTau => a.negate_argument().tau(),
    }
}

/// Coordinate `z_ij^{(M)}` by array position. `z^{(0)}` is never a variable: it is `delta_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub i: usize,
    pub j: usize,
    pub order: usize,
}

/// `coeff * h^{h_power} * prod factors`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: Complex64,
    pub h_power: u32,
    pub factors: Vec<Generator>,
}

type Poly = HashMap<(u32, Vec<Generator>), Complex64>;

fn poly_add_term(p: &mut Poly, coeff: Complex64, h_power: u32, mut factors: Vec<Generator>) {
    if coeff == Complex64::new(0.0, 0.0) {
        return;
    }
    factors.sort();
    *p.entry((h_power, factors)).or_default() += coeff;
}

/// Image of the generator `z_ij^{(0)} = delta_ij`, or the variable itself.
fn variable(i: usize, j: usize, order: usize) -> Poly {
    let mut p = Poly::new();
    if order == 0 {
        if i == j {
            poly_add_term(&mut p, Complex64::new(1.0, 0.0), 0, vec![]);
        }
    } else {
        poly_add_term(&mut p, Complex64::new(1.0, 0.0), 0, vec![Generator { i, j, order }]);
    }
    p
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for ((ha, fa), ca) in a {
        for ((hb, fb), cb) in b {
            let mut f = fa.clone();
            f.extend_from_slice(fb);
            poly_add_term(&mut out, ca * cb, ha + hb, f);
        }
    }
    out
}

fn poly_axpy(out: &mut Poly, s: Complex64, a: &Poly) {
    for ((h, f), c) in a {
        poly_add_term(out, s * c, *h, f.clone());
    }
}

/// An automorphism as polynomial images of every generator `z_ij^{(M)}`, `1 <= M <= K`.
#[derive(Clone, Debug)]
pub struct GeneratorPolynomial {
    dim: usize,
    order: usize,
    /// `images[M - 1][i * dim + j]`.
    images: Vec<Vec<Vec<Term>>>,
}

impl GeneratorPolynomial {
    fn from_polys(dim: usize, order: usize, polys: Vec<Vec<Poly>>) -> Self {
        let images = polys
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|p| {
                        let mut terms: Vec<Term> = p
                            .into_iter()
                            .filter(|(_, c)| c.norm() > 0.0)
                            .map(|((h_power, factors), coeff)| Term { coeff, h_power, factors })
                            .collect();
                        terms.sort_by(|a, b| (a.h_power, &a.factors).cmp(&(b.h_power, &b.factors)));
                        terms
                    })
                    .collect()
            })
            .collect();
        GeneratorPolynomial { dim, order, images }
    }

    pub fn build(which: &Automorphism, dim: usize, order: usize) -> Result<Self> {
        which.validate()?;
        let polys = match which {
            Automorphism::MultG(g) => {
                if g.len() < order + 1 {
                    return Err(Error::OrderOverflow { needed: order, order: g.len().saturating_sub(1) });
                }
                (1..=order)
                    .map(|m| {
                        cells(dim)
                            .map(|(i, j)| {
                                let mut p = Poly::new();
                                for (k, gk) in g.iter().enumerate().take(m + 1) {
                                    for ((_, f), c) in variable(i, j, m - k) {
                                        poly_add_term(&mut p, gk * c, k as u32, f);
                                    }
                                }
                                p
                            })
                            .collect()
                    })
                    .collect()
            }
            Automorphism::Shift(a) => (1..=order)
                .map(|m| {
                    cells(dim)
                        .map(|(i, j)| {
                            // (u + a h)^{-L} contributes to order L + r with h^r
                            let mut p = Poly::new();
                            for l in 1..=m {
                                let r = m - l;
                                let c = binomial(l + r - 1, r) * if r % 2 == 0 { 1.0 } else { -1.0 };
                                poly_add_term(&mut p, a.powu(r as u32) * c, r as u32, vec![Generator { i, j, order: l }]);
                            }
                            p
                        })
                        .collect()
                })
                .collect(),
            Automorphism::BarTau => {
                let coeffs = tau_coefficients(dim)?;
                (1..=order)
                    .map(|m| {
                        let sign = if m % 2 == 1 { -1.0 } else { 1.0 };
                        cells(dim)
                            .map(|(i, j)| {
                                let mut p = Poly::new();
                                for &(r, s, c) in &coeffs[i * dim + j] {
                                    poly_add_term(&mut p, c * sign, 0, vec![Generator { i: r, j: s, order: m }]);
                                }
                                p
                            })
                            .collect()
                    })
                    .collect()
            }
            Automorphism::Inv => {
                // B = A(-u)^{-1}: B_M = -sum_{k=1}^{M} (-1)^k A_k B_{M-k}, expanded into compositions
                let mut b: Vec<Vec<Poly>> = vec![cells(dim).map(|(i, j)| variable(i, j, 0)).collect()];
                for m in 1..=order {
                    let row: Vec<Poly> = cells(dim)
                        .map(|(i, j)| {
                            let mut p = Poly::new();
                            for k in 1..=m {
                                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                                for l in 0..dim {
                                    let prod = poly_mul(&variable(i, l, k), &b[m - k][l * dim + j]);
                                    poly_axpy(&mut p, Complex64::new(sign, 0.0), &prod);
                                }
                            }
                            p
                        })
                        .collect();
                    b.push(row);
                }
                b.into_iter().skip(1).collect()
            }
        };
        Ok(Self::from_polys(dim, order, polys))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn image(&self, i: usize, j: usize, m: usize) -> &[Term] {
        &self.images[m - 1][i * self.dim + j]
    }

    pub fn term_count(&self) -> usize {
        self.images.iter().flatten().map(Vec::len).sum()
    }

    /// Largest power of `h` in the image of `z_ij^{(M)}`.
    pub fn max_h_power(&self, m: usize) -> u32 {
        self.images[m - 1].iter().flatten().map(|t| t.h_power).max().unwrap_or(0)
    }

    /// Substitutes the coordinates of `A` and the value of `h`.
    pub fn evaluate(&self, a: &MatrixSeries, h: f64) -> Result<MatrixSeries> {
        if a.dim() != self.dim || a.order() < self.order {
            return Err(Error::Dimension(format!(
                "polynomial for {}x{} order {} applied to {}x{} order {}",
                self.dim,
                self.dim,
                self.order,
                a.dim(),
                a.dim(),
                a.order()
            )));
        }
        let mut out = MatrixSeries::identity(self.dim, self.order);
        for m in 1..=self.order {
            let c: &mut ComplexMatrix = out.coeff_mut(m);
            for (i, j) in cells(self.dim) {
                c[(i, j)] = self
                    .image(i, j, m)
                    .iter()
                    .map(|t| {
                        t.factors.iter().fold(t.coeff * h.powi(t.h_power as i32), |acc, g| acc * a.entry(g.i, g.j, g.order))
                    })
                    .sum();
            }
        }
        Ok(out)
    }
}

fn cells(dim: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..dim).flat_map(move |i| (0..dim).map(move |j| (i, j)))
}

/// `tau(M)_{ij} = sum c * M_{rs}`, read off by applying `tau` to matrix units.
fn tau_coefficients(dim: usize) -> Result<Vec<Vec<(usize, usize, Complex64)>>> {
    let mut out = vec![Vec::new(); dim * dim];
    for (r, s) in cells(dim) {
        let mut e = ComplexMatrix::zeros(dim, dim);
        e[(r, s)] = Complex64::new(1.0, 0.0);
        let t = symplectic_transpose(&e)?;
        for (i, j) in cells(dim) {
            if t[(i, j)].norm() > 0.0 {
                out[i * dim + j].push((r, s, t[(i, j)]));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sample(dim: usize, order: usize, seed: u64) -> MatrixSeries {
        MatrixSeries::random_pointed(dim, order, 0.5, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    fn g_series(order: usize) -> ScalarSeries {
        (0..=order).map(|k| if k == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.3 / k as f64, -0.1 * k as f64) }).collect()
    }

    fn all_maps(order: usize) -> Vec<Automorphism> {
        vec![
            Automorphism::MultG(g_series(order)),
            Automorphism::Shift(Complex64::new(0.7, -0.3)),
            Automorphism::Inv,
            Automorphism::BarTau,
        ]
    }

    #[test]
    fn mult_g_examples() {
        let a = sample(4, 6, 1);
        let g = g_series(6);
        let which = Automorphism::MultG(g.clone());
        assert_eq!(basic_automorphism(&a, &which, Some(0.0)).unwrap(), a);
        let out = basic_automorphism(&a, &which, None).unwrap();
        for m in 0..=6 {
            let mut expected = ComplexMatrix::zeros(4, 4);
            for k in 0..=m {
                expected += a.coeff(m - k) * g[k];
            }
            assert!((out.coeff(m) - expected).norm() < 1e-13);
        }
        let bad = Automorphism::MultG(vec![Complex64::new(2.0, 0.0); 7]);
        assert!(basic_automorphism(&a, &bad, None).is_err());
    }

    #[test]
    fn h_independent_maps() {
        let a = sample(4, 5, 2);
        for which in [Automorphism::Inv, Automorphism::BarTau] {
            let base = basic_automorphism(&a, &which, None).unwrap();
            for h in [0.0, 0.25, 3.0] {
                assert_eq!(basic_automorphism(&a, &which, Some(h)).unwrap(), base);
            }
        }
    }

    #[test]
    fn inv_and_bar_tau_are_involutions() {
        let a = sample(4, 6, 3);
        for which in [Automorphism::Inv, Automorphism::BarTau] {
            let twice = basic_automorphism(&basic_automorphism(&a, &which, None).unwrap(), &which, None).unwrap();
            assert!(twice.distance(&a).unwrap() < 1e-10);
        }
    }

    #[test]
    fn deformations_approach_identity_linearly() {
        let a = sample(4, 6, 4);
        for which in [Automorphism::MultG(g_series(6)), Automorphism::Shift(Complex64::new(0.7, -0.3))] {
            assert_eq!(basic_automorphism(&a, &which, Some(0.0)).unwrap(), a);
            let mut prev = f64::INFINITY;
            for step in 0..8 {
                let h = 0.5f64.powi(step);
                let d = basic_automorphism(&a, &which, Some(h)).unwrap().distance(&a).unwrap();
                assert!(d <= prev);
                if step >= 2 {
                    // halving h roughly halves the distance
                    assert!(d / h < 10.0 && d / prev < 0.6, "{which:?}: d = {d}, h = {h}");
                }
                prev = d;
            }
        }
    }

    #[test]
    fn polynomials_match_series_realization() {
        for dim in [2, 4] {
            let order = if dim == 2 { 6 } else { 4 };
            let a = sample(dim, order, 5 + dim as u64);
            for which in all_maps(order) {
                let poly = GeneratorPolynomial::build(&which, dim, order).unwrap();
                for h in [1.0, 0.5, 0.0] {
                    let direct = basic_automorphism(&a, &which, Some(h)).unwrap();
                    let via_poly = poly.evaluate(&a, h).unwrap();
                    let d = direct.distance(&via_poly).unwrap();
                    assert!(d < 1e-10, "{} at h = {h}: {d}", which.name());
                }
            }
        }
    }

    #[test]
    fn h_power_bookkeeping() {
        let poly = GeneratorPolynomial::build(&Automorphism::MultG(g_series(5)), 2, 5).unwrap();
        for m in 1..=5 {
            assert_eq!(poly.max_h_power(m), m as u32);
        }
        let inv = GeneratorPolynomial::build(&Automorphism::Inv, 2, 5).unwrap();
        assert!((1..=5).all(|m| inv.max_h_power(m) == 0));
        // z^{(1)} maps to z^{(1)} under inv
        let t = inv.image(0, 1, 1);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].factors, vec![Generator { i: 0, j: 1, order: 1 }]);
        assert!(inv.term_count() > 0);
    }
}
