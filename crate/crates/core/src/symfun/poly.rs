use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::qcore::{Quat, Quat64};

/// Exact complex-rational coefficient.
pub type Coeff = Complex<BigRational>;

/// Exact point of ℂ².
pub type ExactPoint = Quat<BigRational>;

/// Powers of `(z1, z̄1, z2, z̄2)`.
pub type Exponents = [u32; 4];

/// One of the four conjugate variables. Indices follow [`Exponents`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Z1,
    Zb1,
    Z2,
    Zb2,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Z1, Var::Zb1, Var::Z2, Var::Zb2];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The variable whose values are the complex conjugates of this one.
    pub fn conj(self) -> Var {
        match self {
            Var::Z1 => Var::Zb1,
            Var::Zb1 => Var::Z1,
            Var::Z2 => Var::Zb2,
            Var::Zb2 => Var::Z2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Z1 => "z1",
            Var::Zb1 => "c1",
            Var::Z2 => "z2",
            Var::Zb2 => "c2",
        }
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact rational value of a finite double.
pub fn rat_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

pub fn coeff(re: BigRational, im: BigRational) -> Coeff {
    Complex::new(re, im)
}

pub fn coeff_int(re: i64, im: i64) -> Coeff {
    Complex::new(int(re), int(im))
}

pub fn coeff_to_c64(c: &Coeff) -> Complex64 {
    Complex64::new(
        c.re.to_f64().unwrap_or(f64::NAN),
        c.im.to_f64().unwrap_or(f64::NAN),
    )
}

pub fn exact_point(q: &Quat64) -> Option<ExactPoint> {
    let [x1, y1, x2, y2] = q.to_parts();
    Some(Quat::new(
        Complex::new(rat_from_f64(x1)?, rat_from_f64(y1)?),
        Complex::new(rat_from_f64(x2)?, rat_from_f64(y2)?),
    ))
}

/// Sparse polynomial in `z1, z̄1, z2, z̄2` with exact complex-rational
/// coefficients. Zero coefficients are never stored, so structural equality
/// is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ConjPoly {
    terms: BTreeMap<Exponents, Coeff>,
}

impl ConjPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial([0; 4], c)
    }

    pub fn real(x: BigRational) -> Self {
        Self::constant(Complex::new(x, BigRational::zero()))
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Self::monomial(e, Coeff::one())
    }

    pub fn monomial(exps: Exponents, c: Coeff) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms(terms: impl IntoIterator<Item = (Exponents, Coeff)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exps: Exponents, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                *existing = existing.clone() + c;
                if existing.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &Exponents) -> Coeff {
        self.terms.get(exps).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 => self.terms.get(&[0; 4]).cloned(),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Largest exponent of each variable.
    pub fn max_exponents(&self) -> Exponents {
        let mut m = [0; 4];
        for e in self.terms.keys() {
            for k in 0..4 {
                m[k] = m[k].max(e[k]);
            }
        }
        m
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_exponents(&self) -> Option<Exponents> {
        let mut it = self.terms.keys();
        let mut m = *it.next()?;
        for e in it {
            for k in 0..4 {
                m[k] = m[k].min(e[k]);
            }
        }
        Some(m)
    }

    /// Contains no `z̄1`, `z̄2`.
    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|e| e[1] == 0 && e[3] == 0)
    }

    /// Takes only real values: equal to its own conjugate.
    pub fn is_real_valued(&self) -> bool {
        self.conjugate() == *self
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (*e, a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn scale_real(&self, x: &BigRational) -> Self {
        self.scale(&Complex::new(x.clone(), BigRational::zero()))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the monomial `exps`; every term must be divisible.
    pub(crate) fn div_monomial(&self, exps: &Exponents) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut d = *e;
                    for k in 0..4 {
                        d[k] -= exps[k];
                    }
                    (d, c.clone())
                })
                .collect(),
        }
    }

    /// Formal partial derivative, treating the four variables as independent.
    pub fn derive(&self, v: Var) -> Self {
        let k = v.index();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[k] == 0 {
                continue;
            }
            let mut d = *e;
            d[k] -= 1;
            out.add_term(d, c.clone() * int(e[k] as i64));
        }
        out
    }

    /// Formal conjugate: swaps `z ↔ z̄` and conjugates coefficients, so that
    /// evaluation commutes with complex conjugation.
    pub fn conjugate(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ([e[1], e[0], e[3], e[2]], c.conj()))
                .collect(),
        }
    }

    /// Exact evaluation at an exact point.
    pub fn eval_exact(&self, q: &ExactPoint) -> Coeff {
        let vals = [q.z1.clone(), q.z1.conj(), q.z2.clone(), q.z2.conj()];
        let mut acc = Coeff::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for k in 0..4 {
                for _ in 0..e[k] {
                    t = t * vals[k].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Floating-point evaluation.
    pub fn eval(&self, q: &Quat64) -> Complex64 {
        self.to_numeric().eval(q)
    }

    /// Substitutes `z ↦ q + w`: the result is the Taylor expansion at `q`,
    /// as a polynomial in the displacement `w`.
    pub fn translate(&self, q: &ExactPoint) -> Self {
        let shift = [q.z1.clone(), q.z1.conj(), q.z2.clone(), q.z2.conj()];
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            // Expand Π_k (w_k + s_k)^{e_k} by the binomial theorem.
            let mut partial: Vec<(Exponents, Coeff)> = vec![([0; 4], c.clone())];
            for k in 0..4 {
                if e[k] == 0 {
                    continue;
                }
                let n = e[k];
                let mut next = Vec::with_capacity(partial.len() * (n as usize + 1));
                let mut binom = BigInt::one();
                for m in 0..=n {
                    // binom = C(n, m); term w_k^m s_k^{n-m}
                    let mut sp = Coeff::one();
                    for _ in 0..(n - m) {
                        sp = sp * shift[k].clone();
                    }
                    let factor = sp * BigRational::from_integer(binom.clone());
                    if !factor.is_zero() {
                        for (pe, pc) in &partial {
                            let mut ne = *pe;
                            ne[k] += m;
                            next.push((ne, pc.clone() * factor.clone()));
                        }
                    }
                    binom = binom * BigInt::from(n - m) / BigInt::from(m + 1);
                }
                partial = next;
            }
            for (pe, pc) in partial {
                out.add_term(pe, pc);
            }
        }
        out
    }

    /// Lowest total degree among the stored terms, `None` for the zero polynomial.
    pub fn lowest_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn to_numeric(&self) -> NumPoly {
        NumPoly::new(self)
    }
}

impl Add for &ConjPoly {
    type Output = ConjPoly;
    fn add(self, rhs: &ConjPoly) -> ConjPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &ConjPoly {
    type Output = ConjPoly;
    fn sub(self, rhs: &ConjPoly) -> ConjPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &ConjPoly {
    type Output = ConjPoly;
    fn neg(self) -> ConjPoly {
        ConjPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &ConjPoly {
    type Output = ConjPoly;
    fn mul(self, rhs: &ConjPoly) -> ConjPoly {
        let mut out = ConjPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ConjPoly {
            type Output = ConjPoly;
            fn $m(self, rhs: ConjPoly) -> ConjPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ConjPoly {
    type Output = ConjPoly;
    fn neg(self) -> ConjPoly {
        -&self
    }
}

pub(crate) fn fmt_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Coefficient as it appears in the text syntax, without leading sign handling.
pub(crate) fn fmt_coeff(c: &Coeff) -> String {
    let re = &c.re;
    let im = &c.im;
    if im.is_zero() {
        if re.is_integer() {
            fmt_rational(re)
        } else {
            format!("({})", fmt_rational(re))
        }
    } else if re.is_zero() {
        if im.is_one() {
            "i".to_string()
        } else {
            format!("({}*i)", fmt_rational(im))
        }
    } else {
        let sign = if im.is_negative() { "-" } else { "+" };
        format!("({}{}{}*i)", fmt_rational(re), sign, fmt_rational(&im.abs()))
    }
}

impl fmt::Display for ConjPoly {
    /// Writes the polynomial in the parser's text syntax (`c1`, `c2` for the
    /// conjugate variables), so `parse(display(p)) == p`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative_real = c.im.is_zero() && c.re.is_negative();
            let c = if negative_real { -c.clone() } else { c.clone() };
            match (n, negative_real) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            let is_const = e.iter().all(|&k| k == 0);
            if !c.is_one() || is_const {
                factors.push(fmt_coeff(&c));
            }
            for v in Var::ALL {
                match e[v.index()] {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    k => factors.push(format!("{}^{}", v.name(), k)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Floating-point image of a [`ConjPoly`] for fast repeated evaluation.
#[derive(Clone, Debug, Default)]
pub struct NumPoly {
    terms: Vec<(Exponents, Complex64)>,
    max_exps: Exponents,
}

impl NumPoly {
    pub fn new(p: &ConjPoly) -> Self {
        Self {
            terms: p.terms().map(|(e, c)| (*e, coeff_to_c64(c))).collect(),
            max_exps: p.max_exponents(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value and the largest term magnitude at `q`.
    pub fn eval_with_scale(&self, q: &Quat64) -> (Complex64, f64) {
        if self.terms.is_empty() {
            return (Complex64::zero(), 0.0);
        }
        let vals = [q.z1, q.z1.conj(), q.z2, q.z2.conj()];
        let mut powers: [Vec<Complex64>; 4] = Default::default();
        for k in 0..4 {
            let mut pw = Vec::with_capacity(self.max_exps[k] as usize + 1);
            let mut acc = Complex64::new(1.0, 0.0);
            pw.push(acc);
            for _ in 0..self.max_exps[k] {
                acc *= vals[k];
                pw.push(acc);
            }
            powers[k] = pw;
        }
        let mut sum = Complex64::zero();
        let mut scale = 0.0f64;
        for (e, c) in &self.terms {
            let t = c
                * powers[0][e[0] as usize]
                * powers[1][e[1] as usize]
                * powers[2][e[2] as usize]
                * powers[3][e[3] as usize];
            scale = scale.max(t.norm());
            sum += t;
        }
        (sum, scale)
    }

    pub fn eval(&self, q: &Quat64) -> Complex64 {
        self.eval_with_scale(q).0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z1() -> ConjPoly {
        ConjPoly::var(Var::Z1)
    }
    fn c1() -> ConjPoly {
        ConjPoly::var(Var::Zb1)
    }
    fn z2() -> ConjPoly {
        ConjPoly::var(Var::Z2)
    }
    fn c2() -> ConjPoly {
        ConjPoly::var(Var::Zb2)
    }

    #[test]
    fn monomial_derivatives() {
        let p = &(&z1() * &z1()) * &c2();
        assert_eq!(p.derive(Var::Z1), (&z1() * &c2()).scale(&coeff_int(2, 0)));
        assert!(c1().derive(Var::Z1).is_zero());
        assert_eq!(p.derive(Var::Zb2), &z1() * &z1());
    }

    #[test]
    fn conjugation_swaps_variables_and_coefficients() {
        assert_eq!(z1().conjugate(), c1());
        let p = (&z1() * &c2()).scale(&coeff_int(2, 1));
        assert_eq!(p.conjugate(), (&c1() * &z2()).scale(&coeff_int(2, -1)));
        let rho = &(&z1() * &c1()) + &(&z2() * &c2());
        assert!(rho.is_real_valued());
        assert!(!z1().is_real_valued());
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = &z1() - &z1();
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
        assert!((&z1() * &ConjPoly::zero()).is_zero());
    }

    #[test]
    fn translate_gives_taylor_expansion() {
        // (1 + z1)^2 at q = (-1, 0) becomes w1^2.
        let p = (&ConjPoly::one() + &z1()).pow(2);
        let q = Quat::new(Complex::new(int(-1), int(0)), Complex::zero());
        assert_eq!(p.translate(&q), z1().pow(2));
        let rho = &(&z1() * &c1()) + &(&z2() * &c2());
        assert_eq!(rho.translate(&Quat::zero()), rho);
    }

    #[test]
    fn display_round_trip_examples() {
        let p = &(&z1().pow(2) * &c2()).scale(&coeff(rat(1, 2), rat(-3, 4))) - &ConjPoly::one();
        let s = p.to_string();
        assert_eq!(s, "(1/2-3/4*i)*z1^2*c2 - 1");
        assert_eq!(ConjPoly::zero().to_string(), "0");
    }

    #[test]
    fn numeric_evaluation_matches_exact() {
        let p = &(&z1() * &c2()).scale(&coeff_int(2, 1)) + &c1().pow(3);
        let q = Quat::new(Complex::new(int(1), int(2)), Complex::new(rat(1, 2), int(-1)));
        let exact = coeff_to_c64(&p.eval_exact(&q));
        let num = p.eval(&Quat64::from_parts(1.0, 2.0, 0.5, -1.0));
        assert!((exact - num).norm() < 1e-12);
    }
}
