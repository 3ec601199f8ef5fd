//! One complex variable: residue and principal-value currents of
//! `ω = g dz` with `g` meromorphic at 0, the reference theory for the
//! quaternionic pairings.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::estimate::{CurrentEstimate, EpsilonSchedule};
use super::quadrature::Adaptive;
use super::testform::bump;
use crate::error::Result;
use crate::qcore::Quat64;

/// Trapezoid points on circles.
pub const DEFAULT_N_THETA: usize = 256;

/// `Σ_{l=1}^{k} a_{−l} z^{−l} + Σ_m c_m z^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent1D {
    /// `principal[l − 1] = a_{−l}`.
    pub principal: Vec<Complex64>,
    pub tail: Vec<Complex64>,
}

impl Laurent1D {
    pub fn new(principal: Vec<Complex64>, tail: Vec<Complex64>) -> Self {
        Self { principal, tail }
    }

    /// `1 / z^k`.
    pub fn pole(k: usize) -> Self {
        let mut principal = vec![Complex64::new(0.0, 0.0); k];
        if k > 0 {
            principal[k - 1] = Complex64::new(1.0, 0.0);
        }
        Self::new(principal, Vec::new())
    }

    pub fn order(&self) -> usize {
        self.principal
            .iter()
            .rposition(|a| *a != Complex64::new(0.0, 0.0))
            .map_or(0, |i| i + 1)
    }

    /// The Cauchy residue `a_{−1}`.
    pub fn residue(&self) -> Complex64 {
        self.principal.first().copied().unwrap_or_default()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let inv = z.inv();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut p = inv;
        for a in &self.principal {
            acc += a * p;
            p *= inv;
        }
        let mut p = Complex64::new(1.0, 0.0);
        for c in &self.tail {
            acc += c * p;
            p *= z;
        }
        acc
    }

    /// `b_j = 2πi a_{−(j+1)} / j!`, the weight of `∂^jφ/∂z^j(0)` in the
    /// residue current.
    pub fn b(&self, j: usize) -> Complex64 {
        let a = self.principal.get(j).copied().unwrap_or_default();
        Complex64::new(0.0, 2.0 * PI) * a / factorial(j)
    }
}

fn factorial(j: usize) -> f64 {
    (1..=j).map(|k| k as f64).product()
}

/// `Σ c z^a z̄^b · b(|z − center| / R)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TestFunction1D {
    pub terms: Vec<(u32, u32, Complex64)>,
    pub center: Complex64,
    pub radius: f64,
}

impl TestFunction1D {
    pub fn bump(radius: f64) -> Self {
        Self::monomial(0, 0, Complex64::new(1.0, 0.0), radius)
    }

    pub fn monomial(a: u32, b: u32, c: Complex64, radius: f64) -> Self {
        Self {
            terms: vec![(a, b, c)],
            center: Complex64::new(0.0, 0.0),
            radius,
        }
    }

    pub fn shifted(mut self, center: Complex64) -> Self {
        self.center = center;
        self
    }

    pub fn support_radius(&self) -> f64 {
        self.center.norm() + self.radius
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let b = bump((z - self.center).norm() / self.radius);
        if b == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let poly: Complex64 = self
            .terms
            .iter()
            .map(|&(a, bb, c)| c * z.powu(a) * z.conj().powu(bb))
            .sum();
        poly * b
    }
}

fn as_quat(z: Complex64) -> Quat64 {
    Quat64::new(z, Complex64::new(0.0, 0.0))
}

/// `∫_{|z|=ε} g φ dz`, counterclockwise, by the trapezoid rule.
pub fn residue_1d(g: &Laurent1D, phi: &TestFunction1D, eps: f64, n_theta: usize) -> Complex64 {
    let h = 2.0 * PI / n_theta as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n_theta {
        let z = Complex64::from_polar(eps, h * k as f64);
        acc += g.eval(z) * phi.eval(z) * Complex64::i() * z;
    }
    acc * h
}

pub fn res_limit_1d(
    g: &Laurent1D,
    phi: &TestFunction1D,
    schedule: &EpsilonSchedule,
    n_theta: usize,
) -> Result<CurrentEstimate> {
    schedule.check_within(phi.support_radius())?;
    let eps = schedule.radii();
    let values = eps
        .iter()
        .map(|&e| as_quat(residue_1d(g, phi, e, n_theta)))
        .collect();
    Ok(CurrentEstimate::from_values(eps, values))
}

/// Numerical `λ_j` with `b_j = λ_j a_{−(j+1)}`: the pairing of `z^{−(j+1)}`
/// with `z^j / j! · b(|z|)`.
pub fn universal_constant(j: usize, schedule: &EpsilonSchedule) -> Result<CurrentEstimate> {
    let phi = TestFunction1D::monomial(j as u32, 0, Complex64::new(1.0 / factorial(j), 0.0), 1.0);
    res_limit_1d(&Laurent1D::pole(j + 1), &phi, schedule, DEFAULT_N_THETA)
}

/// `lim ∫_{|z|≥ε} g dz ∧ ψ0 dz̄ = lim −2i ∫_{|z|≥ε} g ψ0 dA`.
pub fn pv_1d(
    g: &Laurent1D,
    psi0: &TestFunction1D,
    schedule: &EpsilonSchedule,
    n_theta: usize,
) -> Result<CurrentEstimate> {
    let support = psi0.support_radius();
    schedule.check_within(support)?;
    let eps = schedule.radii();
    let h = 2.0 * PI / n_theta as f64;
    let ring = |r: f64| -> Result<(Complex64, f64)> {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        for k in 0..n_theta {
            let z = Complex64::from_polar(r, h * k as f64);
            let v = g.eval(z) * psi0.eval(z);
            acc += v;
            scale += v.norm();
        }
        Ok((acc * (h * r), scale * h * r))
    };
    let ad = Adaptive::new(12, 1e-13).with_min_panels(4);
    let mut acc = ad.integrate_scaled(eps[0], support, &ring)?;
    let mut values = vec![acc];
    for w in eps.windows(2) {
        acc += ad.integrate_scaled(w[1], w[0], &ring)?;
        values.push(acc);
    }
    let minus_2i = Complex64::new(0.0, -2.0);
    Ok(CurrentEstimate::from_values(
        eps,
        values.into_iter().map(|v| as_quat(v * minus_2i)).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cauchy_residue_of_simple_pole() {
        let s = EpsilonSchedule::one_dimensional(1.0);
        let est = res_limit_1d(&Laurent1D::pole(1), &TestFunction1D::bump(1.0), &s, DEFAULT_N_THETA)
            .unwrap();
        assert!((est.extrapolated.z1 - Complex64::new(0.0, 2.0 * PI)).norm() < 1e-10);
        assert!(est.converged);
    }

    #[test]
    fn holomorphic_g_has_no_residue() {
        let g = Laurent1D::new(vec![], vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)]);
        assert_eq!(g.order(), 0);
        let v = residue_1d(&g, &TestFunction1D::bump(1.0), 0.1, DEFAULT_N_THETA);
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn b_coefficients() {
        let g = Laurent1D::new(vec![Complex64::new(0.0, 0.0), Complex64::new(3.0, 0.0)], vec![]);
        assert_eq!(g.order(), 2);
        assert!((g.b(1) - Complex64::new(0.0, 6.0 * PI)).norm() < 1e-14);
        assert_eq!(g.b(0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn radial_psi_gives_zero_pv() {
        let s = EpsilonSchedule::default_for(1.0);
        let est = pv_1d(&Laurent1D::pole(1), &TestFunction1D::bump(1.0), &s, 64).unwrap();
        assert!(est.max_abs() < 1e-14);
    }
}
