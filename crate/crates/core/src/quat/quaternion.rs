use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A real quaternion `re + i*im_i + j*im_j + k*im_k` with `i^2 = j^2 = k^2 = -1`, `ij = k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Quaternion {
    pub re: f64,
    pub im_i: f64,
    pub im_j: f64,
    pub im_k: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(re: f64, im_i: f64, im_j: f64, im_k: f64) -> Self {
        Quaternion { re, im_i, im_j, im_k }
    }

    pub const fn real(re: f64) -> Self {
        Quaternion::new(re, 0.0, 0.0, 0.0)
    }

    /// Builds `alpha + j*beta` from the splitting `H = C + jC`.
    pub fn from_complex_pair(alpha: Complex64, beta: Complex64) -> Self {
        // j(x + iy) = jx - ky
        Quaternion::new(alpha.re, alpha.im, beta.re, -beta.im)
    }

    /// The pair `(alpha, beta)` with `self = alpha + j*beta`.
    pub fn complex_pair(&self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.re, self.im_i),
            Complex64::new(self.im_j, -self.im_k),
        )
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.re, -self.im_i, -self.im_j, -self.im_k)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.re * self.re + self.im_i * self.im_i + self.im_j * self.im_j + self.im_k * self.im_k
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Imaginary part `i*b + j*c + k*d`.
    pub fn im(&self) -> Self {
        Quaternion::new(0.0, self.im_i, self.im_j, self.im_k)
    }

    pub fn scale(&self, s: f64) -> Self {
        Quaternion::new(self.re * s, self.im_i * s, self.im_j * s, self.im_k * s)
    }

    pub fn inverse(&self) -> Option<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            None
        } else {
            Some(self.conj().scale(1.0 / n2))
        }
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im_i.is_finite() && self.im_j.is_finite() && self.im_k.is_finite()
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.re, self.im_i, self.im_j, self.im_k]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }

    /// Multiplies on the right by the unit complex number `e^{i theta}`.
    pub fn rotate_right(&self, theta: f64) -> Self {
        *self * Quaternion::new(theta.cos(), theta.sin(), 0.0, 0.0)
    }
}

/// Hamilton product, `ij = k`, `ji = -k`.
pub fn qmul(a: Quaternion, b: Quaternion) -> Quaternion {
    Quaternion::new(
        a.re * b.re - a.im_i * b.im_i - a.im_j * b.im_j - a.im_k * b.im_k,
        a.re * b.im_i + a.im_i * b.re + a.im_j * b.im_k - a.im_k * b.im_j,
        a.re * b.im_j - a.im_i * b.im_k + a.im_j * b.re + a.im_k * b.im_i,
        a.re * b.im_k + a.im_i * b.im_j - a.im_j * b.im_i + a.im_k * b.re,
    )
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        qmul(self, rhs)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: f64) -> Quaternion {
        self.scale(rhs)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.re + r.re, self.im_i + r.im_i, self.im_j + r.im_j, self.im_k + r.im_k)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, r: Quaternion) {
        *self = *self + r;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.re - r.re, self.im_i - r.im_i, self.im_j - r.im_j, self.im_k - r.im_k)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        self.scale(-1.0)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}k", self.re, self.im_i, self.im_j, self.im_k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn unit_relations() {
        let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
        assert_eq!(i * j, k);
        assert_eq!(j * i, -k);
        assert_eq!(i * i, -Quaternion::ONE);
        assert_eq!(j * j, -Quaternion::ONE);
        assert_eq!(k * k, -Quaternion::ONE);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
    }

    #[test]
    fn identity_is_neutral() {
        let q = Quaternion::new(0.3, -1.2, 2.5, 0.7);
        assert_eq!(Quaternion::ONE * q, q);
        assert_eq!(q * Quaternion::ONE, q);
    }

    #[test]
    fn complex_pair_matches_j_splitting() {
        let q = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        let (alpha, beta) = q.complex_pair();
        let rebuilt = Quaternion::new(alpha.re, alpha.im, 0.0, 0.0)
            + Quaternion::J * Quaternion::new(beta.re, beta.im, 0.0, 0.0);
        assert!(close(rebuilt, q, 1e-15));
        assert_eq!(Quaternion::from_complex_pair(alpha, beta), q);
    }

    fn arb_q() -> impl Strategy<Value = Quaternion> {
        prop::array::uniform4(-3.0f64..3.0).prop_map(Quaternion::from_array)
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(p in arb_q(), q in arb_q()) {
            let lhs = (p * q).norm();
            let rhs = p.norm() * q.norm();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
        }

        #[test]
        fn conj_reverses_products(p in arb_q(), q in arb_q()) {
            prop_assert!(close((p * q).conj(), q.conj() * p.conj(), 1e-12));
        }

        #[test]
        fn norm_sqr_is_real_nonnegative(q in arb_q()) {
            let prod = q * q.conj();
            prop_assert!(prod.im().norm() <= 1e-12);
            prop_assert!(prod.re >= 0.0);
            prop_assert!((prod.re - q.norm_sqr()).abs() <= 1e-12);
        }

        #[test]
        fn associativity(p in arb_q(), q in arb_q(), r in arb_q()) {
            prop_assert!(close((p * q) * r, p * (q * r), 1e-11));
        }
    }
}
