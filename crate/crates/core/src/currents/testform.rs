use num_complex::Complex64;

use super::forms::{Form, DZ1, DZ2, DZB1, DZB2};
use crate::error::Result;
use crate::qcore::Quat64;
use crate::symfun::{coeff, parse_test_polynomial, rat_from_f64, ConjPoly, NumPoly};

/// `b(t) = exp(1 − 1/(1 − t²))` for `|t| < 1`, else 0; `b(0) = 1`.
pub fn bump(t: f64) -> f64 {
    let s = 1.0 - t * t;
    if s <= 0.0 {
        0.0
    } else {
        (1.0 - 1.0 / s).exp()
    }
}

#[derive(Clone, Debug)]
struct Term {
    poly: ConjPoly,
    num: NumPoly,
    center: Quat64,
    radius: f64,
}

/// Sum of terms `p(z, z̄) · b(‖q − c‖ / R)`.
#[derive(Clone, Debug, Default)]
pub struct Coefficient {
    terms: Vec<Term>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn bump(radius: f64) -> Self {
        Self::poly_bump(ConjPoly::one(), radius)
    }

    pub fn poly_bump(poly: ConjPoly, radius: f64) -> Self {
        Self::shifted(poly, Quat64::zero(), radius)
    }

    pub fn shifted(poly: ConjPoly, center: Quat64, radius: f64) -> Self {
        assert!(radius > 0.0, "bump radius must be positive");
        if poly.is_zero() {
            return Self::zero();
        }
        Self {
            terms: vec![Term {
                num: poly.to_numeric(),
                poly,
                center,
                radius,
            }],
        }
    }

    /// Parses the polynomial factor (the token `bump` may appear and
    /// stands for 1).
    pub fn parse(src: &str, center: Quat64, radius: f64) -> Result<Self> {
        Ok(Self::shifted(parse_test_polynomial(src)?, center, radius))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest `ρ` with the coefficient vanishing for `‖q‖ ≥ ρ`.
    pub fn support_radius(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.center.norm() + t.radius)
            .fold(0.0, f64::max)
    }

    pub fn eval(&self, q: &Quat64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let b = bump((*q - t.center).norm() / t.radius);
            if b != 0.0 {
                acc += t.num.eval(q) * b;
            }
        }
        acc
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                let poly = t
                    .poly
                    .scale(&coeff(rat_from_f64(c.re)?, rat_from_f64(c.im)?));
                (!poly.is_zero()).then(|| Term {
                    num: poly.to_numeric(),
                    poly,
                    center: t.center,
                    radius: t.radius,
                })
            })
            .collect();
        Self { terms }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            terms: self.terms.iter().chain(&o.terms).cloned().collect(),
        }
    }

    pub fn describe(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|t| {
                let [x1, y1, x2, y2] = t.center.to_parts();
                format!(
                    "({})*b(|q-({x1},{y1},{x2},{y2})|/{})",
                    t.poly, t.radius
                )
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `φ = φ11 dz1∧dz̄1 + φ12 dz1∧dz̄2 + φ21 dz2∧dz̄1 + φ22 dz2∧dz̄2`.
#[derive(Clone, Debug, Default)]
pub struct TestForm2 {
    pub phi11: Coefficient,
    pub phi12: Coefficient,
    pub phi21: Coefficient,
    pub phi22: Coefficient,
}

impl TestForm2 {
    pub fn coefficients(&self) -> [&Coefficient; 4] {
        [&self.phi11, &self.phi12, &self.phi21, &self.phi22]
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients().iter().all(|c| c.is_zero())
    }

    pub fn support_radius(&self) -> f64 {
        self.coefficients()
            .iter()
            .map(|c| c.support_radius())
            .fold(0.0, f64::max)
    }

    pub fn form_at(&self, q: &Quat64) -> Form {
        let one = Complex64::new(1.0, 0.0);
        let parts = [
            (&self.phi11, [DZ1, DZB1]),
            (&self.phi12, [DZ1, DZB2]),
            (&self.phi21, [DZ2, DZB1]),
            (&self.phi22, [DZ2, DZB2]),
        ];
        let mut f = Form::zero();
        for (c, idx) in parts {
            if !c.is_zero() {
                f = f.add(&Form::monomial(one, &idx).scale(c.eval(q)));
            }
        }
        f
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: Complex64, other: &Self, b: Complex64) -> Self {
        let mix = |x: &Coefficient, y: &Coefficient| x.scale(a).add(&y.scale(b));
        Self {
            phi11: mix(&self.phi11, &other.phi11),
            phi12: mix(&self.phi12, &other.phi12),
            phi21: mix(&self.phi21, &other.phi21),
            phi22: mix(&self.phi22, &other.phi22),
        }
    }
}

/// `ψ = ψ1 dz̄1∧dz2∧dz̄2 + ψ2 dz1∧dz̄1∧dz̄2`.
#[derive(Clone, Debug, Default)]
pub struct TestForm3 {
    pub psi1: Coefficient,
    pub psi2: Coefficient,
}

impl TestForm3 {
    pub fn is_zero(&self) -> bool {
        self.psi1.is_zero() && self.psi2.is_zero()
    }

    pub fn support_radius(&self) -> f64 {
        self.psi1.support_radius().max(self.psi2.support_radius())
    }

    pub fn form_at(&self, q: &Quat64) -> Form {
        let one = Complex64::new(1.0, 0.0);
        let mut f = Form::zero();
        if !self.psi1.is_zero() {
            f = f.add(&Form::monomial(one, &[DZB1, DZ2, DZB2]).scale(self.psi1.eval(q)));
        }
        if !self.psi2.is_zero() {
            f = f.add(&Form::monomial(one, &[DZ1, DZB1, DZB2]).scale(self.psi2.eval(q)));
        }
        f
    }

    pub fn combine(&self, a: Complex64, other: &Self, b: Complex64) -> Self {
        let mix = |x: &Coefficient, y: &Coefficient| x.scale(a).add(&y.scale(b));
        Self {
            psi1: mix(&self.psi1, &other.psi1),
            psi2: mix(&self.psi2, &other.psi2),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_values() {
        assert_eq!(bump(0.0), 1.0);
        assert_eq!(bump(1.0), 0.0);
        assert_eq!(bump(-1.5), 0.0);
        assert!((bump(0.5) - (1.0f64 - 1.0 / 0.75).exp()).abs() < 1e-16);
    }

    #[test]
    fn support_and_combination() {
        let c = Coefficient::parse("z1*bump", Quat64::from_parts(0.3, 0.0, 0.0, 0.0), 1.0).unwrap();
        assert!((c.support_radius() - 1.3).abs() < 1e-15);
        assert_eq!(c.eval(&Quat64::from_parts(1.4, 0.0, 0.0, 0.0)), Complex64::new(0.0, 0.0));
        let q = Quat64::from_parts(0.2, 0.1, -0.3, 0.0);
        let d = c.scale(Complex64::new(2.0, 0.0)).add(&c);
        assert!((d.eval(&q) - c.eval(&q) * 3.0).norm() < 1e-15);
    }
}
