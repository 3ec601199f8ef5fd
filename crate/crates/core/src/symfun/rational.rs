use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{Coeff, ConjPoly, ExactPoint, NumPoly, Var};
use crate::error::{Error, Result};
use crate::qcore::Quat64;

/// Relative floor below which a denominator counts as vanishing.
pub const POLE_FLOOR: f64 = 1e-12;

/// `num / den` with a real-valued, nonzero denominator.
///
/// No gcd cancellation is attempted. Only constant denominators and common
/// self-conjugate monomials (`z1^a z̄1^a z2^c z̄2^c`) are divided out, which
/// keeps the denominator real.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConjRational {
    num: ConjPoly,
    den: ConjPoly,
}

impl ConjRational {
    pub fn new(num: ConjPoly, den: ConjPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if !den.is_real_valued() {
            return Err(Error::NonRealDenominator(den.to_string()));
        }
        Ok(Self::normalized(num, den))
    }

    /// Caller guarantees `den` is nonzero and real-valued.
    pub(crate) fn from_parts(num: ConjPoly, den: ConjPoly) -> Self {
        debug_assert!(!den.is_zero());
        debug_assert!(den.is_real_valued());
        Self::normalized(num, den)
    }

    fn normalized(num: ConjPoly, den: ConjPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.as_constant() {
            // Real constant, so dividing keeps everything exact.
            return Self {
                num: num.scale(&(Coeff::one() / c)),
                den: ConjPoly::one(),
            };
        }
        let (Some(gn), Some(gd)) = (num.min_exponents(), den.min_exponents()) else {
            return Self { num, den };
        };
        let a = gn[0].min(gn[1]).min(gd[0]).min(gd[1]);
        let c = gn[2].min(gn[3]).min(gd[2]).min(gd[3]);
        if a == 0 && c == 0 {
            return Self { num, den };
        }
        let m = [a, a, c, c];
        Self {
            num: num.div_monomial(&m),
            den: den.div_monomial(&m),
        }
    }

    pub fn zero() -> Self {
        Self {
            num: ConjPoly::zero(),
            den: ConjPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(ConjPoly::one())
    }

    pub fn from_poly(p: ConjPoly) -> Self {
        Self {
            num: p,
            den: ConjPoly::one(),
        }
    }

    pub fn constant(c: Coeff) -> Self {
        Self::from_poly(ConjPoly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(ConjPoly::var(v))
    }

    pub fn num(&self) -> &ConjPoly {
        &self.num
    }

    pub fn den(&self) -> &ConjPoly {
        &self.den
    }

    /// Identically zero (the numerator is the zero polynomial).
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&ConjPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    /// Real-valued function: `conj(f) = f` as rational functions.
    pub fn is_real_valued(&self) -> bool {
        self.num.is_real_valued()
    }

    pub fn is_holomorphic(&self) -> bool {
        self.num.is_holomorphic() && self.den.is_holomorphic()
    }

    fn combine_add(&self, rhs: &Self, sign: bool) -> Self {
        let rn = if sign { rhs.num.clone() } else { -&rhs.num };
        if self.den == rhs.den {
            return Self::from_parts(&self.num + &rn, self.den.clone());
        }
        Self::from_parts(
            &(&self.num * &rhs.den) + &(&rn * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.combine_add(rhs, true)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.combine_add(rhs, false)
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::from_parts(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        Self::from_parts(self.num.scale(c), self.den.clone())
    }

    pub fn scale_real(&self, x: &BigRational) -> Self {
        Self::from_parts(self.num.scale_real(x), self.den.clone())
    }

    /// Division by a real-valued rational function.
    pub fn div_real(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::IdenticallyZero);
        }
        if !rhs.is_real_valued() {
            return Err(Error::NonRealDenominator(rhs.to_string()));
        }
        Ok(Self::from_parts(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    /// Formal Wirtinger derivative (quotient rule).
    pub fn derive(&self, v: Var) -> Self {
        let dn = self.num.derive(v);
        if self.den.is_one() {
            return Self::from_poly(dn);
        }
        let dd = self.den.derive(v);
        if dd.is_zero() {
            return Self::from_parts(dn, self.den.clone());
        }
        Self::from_parts(
            &(&dn * &self.den) - &(&self.num * &dd),
            &self.den * &self.den,
        )
    }

    /// Formal conjugate; the denominator is already real so only the
    /// numerator changes.
    pub fn conjugate(&self) -> Self {
        Self {
            num: self.num.conjugate(),
            den: self.den.clone(),
        }
    }

    /// Exact identity test by cross-multiplication.
    pub fn equals(&self, rhs: &Self) -> bool {
        (&self.num * &rhs.den) == (&rhs.num * &self.den)
    }

    pub fn eval_exact(&self, q: &ExactPoint) -> Result<Coeff> {
        let d = self.den.eval_exact(q);
        if d.is_zero() {
            return Err(Error::ZeroDivision);
        }
        Ok(self.num.eval_exact(q) / d)
    }

    pub fn eval(&self, q: &Quat64) -> Result<Complex64> {
        NumRational::new(self).eval(q)
    }

    pub fn to_numeric(&self) -> NumRational {
        NumRational::new(self)
    }
}

impl fmt::Display for ConjRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Floating-point image of a [`ConjRational`].
#[derive(Clone, Debug)]
pub struct NumRational {
    num: NumPoly,
    den: NumPoly,
    den_is_one: bool,
}

impl NumRational {
    pub fn new(r: &ConjRational) -> Self {
        Self {
            num: r.num.to_numeric(),
            den: r.den.to_numeric(),
            den_is_one: r.den.is_one(),
        }
    }

    /// Numerator and denominator values; errors when the denominator is below
    /// the pole floor relative to its largest term.
    pub fn eval_parts(&self, q: &Quat64) -> Result<(Complex64, Complex64)> {
        let n = self.num.eval(q);
        if self.den_is_one {
            return Ok((n, Complex64::new(1.0, 0.0)));
        }
        let (d, scale) = self.den.eval_with_scale(q);
        if !(d.norm() > POLE_FLOOR * scale) {
            return Err(Error::pole_at(q));
        }
        Ok((n, d))
    }

    pub fn eval(&self, q: &Quat64) -> Result<Complex64> {
        let (n, d) = self.eval_parts(q)?;
        Ok(n / d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::poly::{coeff_int, int};

    fn v(var: Var) -> ConjPoly {
        ConjPoly::var(var)
    }

    fn rho() -> ConjPoly {
        &(&v(Var::Z1) * &v(Var::Zb1)) + &(&v(Var::Z2) * &v(Var::Zb2))
    }

    #[test]
    fn rejects_bad_denominators() {
        assert_eq!(
            ConjRational::new(ConjPoly::one(), ConjPoly::zero()),
            Err(Error::ZeroDenominator)
        );
        assert!(matches!(
            ConjRational::new(ConjPoly::one(), v(Var::Z1)),
            Err(Error::NonRealDenominator(_))
        ));
    }

    #[test]
    fn quotient_rule_example() {
        // d/dz̄1 [ z̄1 / ρ ] = z2 z̄2 / ρ²
        let f = ConjRational::new(v(Var::Zb1), rho()).unwrap();
        let d = f.derive(Var::Zb1);
        let expected = ConjRational::new(&v(Var::Z2) * &v(Var::Zb2), rho().pow(2)).unwrap();
        assert!(d.equals(&expected));
    }

    #[test]
    fn constant_denominators_fold_into_numerator() {
        let r = ConjRational::new(v(Var::Z1), ConjPoly::constant(coeff_int(4, 0))).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.num().coefficient(&[1, 0, 0, 0]), Coeff::new(super::super::poly::rat(1, 4), int(0)));
    }

    #[test]
    fn self_conjugate_monomials_cancel() {
        let m = &v(Var::Z1) * &v(Var::Zb1);
        let r = ConjRational::new(&m * &v(Var::Z2), &m * &rho()).unwrap();
        assert_eq!(r.num(), &v(Var::Z2));
        assert_eq!(r.den(), &rho());
        // z̄1 / (z1 z̄1) keeps its form: cancelling z̄1 alone would break reality.
        let g = ConjRational::new(v(Var::Zb1), m.clone()).unwrap();
        assert_eq!(g.den(), &m);
    }

    #[test]
    fn pole_floor() {
        let f = ConjRational::new(v(Var::Zb1), rho()).unwrap();
        assert!(matches!(f.eval(&Quat64::zero()), Err(Error::Pole { .. })));
        let z = f.eval(&Quat64::from_parts(1.0, 0.0, 0.0, 0.0)).unwrap();
        assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }
}
