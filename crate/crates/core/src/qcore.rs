//! Quaternions in the complex-pair model.
//!
//! A quaternion is stored as `q = z1 + z2·j` with `z1, z2 ∈ ℂ`. The only
//! relation needed beyond complex arithmetic is `z·j = j·z̄`, which is folded
//! into the closed-form product
//!
//! ```text
//! (z1 + z2 j)(w1 + w2 j) = z1 w1 − z2 w̄2 + (z1 w2 + z2 w̄1) j
//! ```
//!
//! The scalar type is generic so the same code serves the floating-point
//! paths (`Quat<f64>`) and the exact paths (`Quat<BigRational>`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{Num, One, Zero};

use crate::error::{Error, Result};

/// `z1 + z2·j`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Quat<T> {
    pub z1: Complex<T>,
    pub z2: Complex<T>,
}

/// Floating-point quaternion; also used for points of ℍ ≅ ℂ².
pub type Quat64 = Quat<f64>;

impl<T> Quat<T> {
    pub const fn new(z1: Complex<T>, z2: Complex<T>) -> Self {
        Self { z1, z2 }
    }
}

impl<T: Clone + Num> Quat<T> {
    pub fn zero() -> Self {
        Self::new(Complex::zero(), Complex::zero())
    }

    pub fn one() -> Self {
        Self::new(Complex::one(), Complex::zero())
    }

    /// The unit `j`.
    pub fn j() -> Self {
        Self::new(Complex::zero(), Complex::one())
    }

    pub fn from_complex(z: Complex<T>) -> Self {
        Self::new(z, Complex::zero())
    }

    pub fn from_real(x: T) -> Self {
        Self::from_complex(Complex::new(x, T::zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.z1.is_zero() && self.z2.is_zero()
    }

    /// `|z1|² + |z2|²`.
    pub fn modulus_sq(&self) -> T {
        self.z1.norm_sqr() + self.z2.norm_sqr()
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.z1.clone() * s.clone(), self.z2.clone() * s)
    }
}

impl<T: Clone + Num + Neg<Output = T>> Quat<T> {
    /// `q̄ = z̄1 − z2·j`.
    pub fn conj(&self) -> Self {
        Self::new(self.z1.conj(), -self.z2.clone())
    }

    /// Right product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let (z1, z2) = (&self.z1, &self.z2);
        let (w1, w2) = (&rhs.z1, &rhs.z2);
        Self::new(
            z1.clone() * w1.clone() - z2.clone() * w2.conj(),
            z1.clone() * w2.clone() + z2.clone() * w1.conj(),
        )
    }

    /// Right inverse `(|z1|² + |z2|²)⁻¹ (z̄1 − z2·j)`; it is also a left inverse.
    pub fn inv(&self) -> Result<Self> {
        let m = self.modulus_sq();
        if m.is_zero() {
            return Err(Error::ZeroDivision);
        }
        let c = self.conj();
        Ok(Self::new(c.z1 / m.clone(), c.z2 / m))
    }
}

impl Quat64 {
    pub fn from_parts(x1: f64, y1: f64, x2: f64, y2: f64) -> Self {
        Self::new(Complex::new(x1, y1), Complex::new(x2, y2))
    }

    /// `(re z1, im z1, re z2, im z2)`.
    pub fn to_parts(&self) -> [f64; 4] {
        [self.z1.re, self.z1.im, self.z2.re, self.z2.im]
    }

    /// Euclidean norm `‖q‖`.
    pub fn norm(&self) -> f64 {
        self.modulus_sq().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.to_parts().iter().all(|x| x.is_finite())
    }
}

impl<T: Clone + Num> Add for Quat<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.z1 + rhs.z1, self.z2 + rhs.z2)
    }
}

impl<T: Clone + Num> Sub for Quat<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.z1 - rhs.z1, self.z2 - rhs.z2)
    }
}

impl<T: Clone + Num + Neg<Output = T>> Neg for Quat<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.z1, -self.z2)
    }
}

impl<T: Clone + Num + Neg<Output = T>> Mul for Quat<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Quat::mul(&self, &rhs)
    }
}

impl<T: fmt::Display + Clone + Num + PartialOrd> fmt::Display for Quat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})j", self.z1, self.z2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(x1: f64, y1: f64, x2: f64, y2: f64) -> Quat64 {
        Quat64::from_parts(x1, y1, x2, y2)
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn products_from_the_complex_pair_formula() {
        let i = q(0.0, 1.0, 0.0, 0.0);
        let j = q(0.0, 0.0, 1.0, 0.0);
        assert_eq!(i * j, q(0.0, 0.0, 0.0, 1.0));
        assert_eq!(j * i, q(0.0, 0.0, 0.0, -1.0));
        assert_eq!(j * j, q(-1.0, 0.0, 0.0, 0.0));
        let a = q(1.0, 0.0, 1.0, 0.0);
        assert_eq!(a * q(1.0, 0.0, -1.0, 0.0), q(2.0, 0.0, 0.0, 0.0));
        assert_eq!(a * a.conj(), q(2.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn conjugation() {
        assert_eq!(q(1.0, 0.0, 0.0, 0.0).conj(), q(1.0, 0.0, 0.0, 0.0));
        assert_eq!(q(0.0, 1.0, 1.0, 0.0).conj(), q(0.0, -1.0, -1.0, 0.0));
        let p = q(2.0, 1.0, 3.0, -1.0);
        assert_eq!(p.conj().conj(), p);
    }

    #[test]
    fn modulus() {
        assert_eq!(Quat64::zero().modulus_sq(), 0.0);
        assert_eq!(q(3.0, 0.0, 0.0, 4.0).modulus_sq(), 25.0);
        let a = q(1.0, 0.0, 1.0, 0.0);
        let b = q(0.0, 1.0, 0.0, 0.0);
        assert_eq!((a * b).modulus_sq(), 2.0);
    }

    #[test]
    fn inverses() {
        assert_eq!(Quat64::one().inv().unwrap(), Quat64::one());
        assert_eq!(Quat64::j().inv().unwrap(), q(0.0, 0.0, -1.0, 0.0));
        let a = q(1.0, 0.0, 1.0, 0.0);
        let ai = a.inv().unwrap();
        assert_eq!(ai, q(0.5, 0.0, -0.5, 0.0));
        assert_eq!(ai * a, Quat64::one());
        assert_eq!(a * ai, Quat64::one());
        assert!(matches!(Quat64::zero().inv(), Err(Error::ZeroDivision)));
    }

    #[test]
    fn exact_inverse_is_two_sided_and_involutive() {
        let a = Quat::new(Complex::new(r(2), r(-3)), Complex::new(r(5), r(7)));
        let ai = a.inv().unwrap();
        assert_eq!(ai.clone() * a.clone(), Quat::one());
        assert_eq!(a.clone() * ai.clone(), Quat::one());
        assert_eq!(ai.inv().unwrap(), a);
        assert_eq!(a.clone() * a.conj(), Quat::from_real(a.modulus_sq()));
    }
}
