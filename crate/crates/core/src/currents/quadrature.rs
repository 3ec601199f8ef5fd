use std::f64::consts::{FRAC_PI_2, PI};
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qcore::Quat64;

/// Values that quadrature can accumulate.
pub trait Accumulate: Copy + Send + Sync {
    fn zero() -> Self;
    fn plus(self, o: Self) -> Self;
    fn times(self, s: f64) -> Self;
    fn magnitude(self) -> f64;
}

impl Accumulate for f64 {
    fn zero() -> Self {
        0.0
    }
    fn plus(self, o: Self) -> Self {
        self + o
    }
    fn times(self, s: f64) -> Self {
        self * s
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Accumulate for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn plus(self, o: Self) -> Self {
        self + o
    }
    fn times(self, s: f64) -> Self {
        self * s
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

impl Accumulate for Quat64 {
    fn zero() -> Self {
        Quat64::zero()
    }
    fn plus(self, o: Self) -> Self {
        self + o
    }
    fn times(self, s: f64) -> Self {
        self.scale(s)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Sums in slice order.
pub fn ordered_sum<V: Accumulate>(values: impl IntoIterator<Item = V>) -> V {
    values.into_iter().fold(V::zero(), V::plus)
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GlRule {
    pairs: Vec<(f64, f64)>,
}

impl GlRule {
    pub fn new(n: usize) -> Self {
        let n = NonZeroUsize::new(n).expect("at least one node");
        Self {
            pairs: GaussLegendre::new(n).as_node_weight_pairs().to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        let (h, m) = (0.5 * (b - a), 0.5 * (b + a));
        self.pairs.iter().map(|&(x, w)| (m + h * x, h * w)).collect()
    }

    pub fn integrate<V: Accumulate>(
        &self,
        a: f64,
        b: f64,
        f: &impl Fn(f64) -> Result<V>,
    ) -> Result<V> {
        Ok(self.integrate_scaled(a, b, &|x| f(x).map(|v| (v, v.magnitude())))?.0)
    }

    /// For integrands returning `(value, scale)`: the integral and the
    /// integral of the scale.
    pub fn integrate_scaled<V: Accumulate>(
        &self,
        a: f64,
        b: f64,
        f: &impl Fn(f64) -> Result<(V, f64)>,
    ) -> Result<(V, f64)> {
        let mut acc = V::zero();
        let mut l1 = 0.0;
        for (x, w) in self.mapped(a, b) {
            let (v, m) = f(x)?;
            l1 += m * w.abs();
            acc = acc.plus(v.times(w));
        }
        Ok((acc, l1))
    }
}

/// Upper bound on panel splits in one adaptive integral.
const MAX_PANELS: usize = 4096;
/// Panel disagreement that counts as roundoff, relative to `∫|f|` on it.
const ROUNDOFF: f64 = 1e-14;

/// Adaptive Gauss-Legendre: a panel is accepted when it agrees with the sum
/// of its two halves.
#[derive(Clone, Debug)]
pub struct Adaptive {
    pub rule: GlRule,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: u32,
    pub min_panels: usize,
}

impl Adaptive {
    pub fn new(nodes: usize, rel_tol: f64) -> Self {
        Self {
            rule: GlRule::new(nodes),
            rel_tol,
            abs_tol: 1e-300,
            max_depth: 40,
            min_panels: 1,
        }
    }

    pub fn with_min_panels(mut self, n: usize) -> Self {
        self.min_panels = n.max(1);
        self
    }

    pub fn integrate<V: Accumulate>(
        &self,
        a: f64,
        b: f64,
        f: &impl Fn(f64) -> Result<V>,
    ) -> Result<V> {
        self.integrate_scaled(a, b, &|x| f(x).map(|v| (v, v.magnitude())))
    }

    /// Like [`Adaptive::integrate`] for integrands that report their own
    /// magnitude scale, such as inner sums with cancellation; tolerances are
    /// relative to the integral of that scale.
    pub fn integrate_scaled<V: Accumulate>(
        &self,
        a: f64,
        b: f64,
        f: &impl Fn(f64) -> Result<(V, f64)>,
    ) -> Result<V> {
        if a == b {
            return Ok(V::zero());
        }
        let n = self.min_panels;
        let h = (b - a) / n as f64;
        let mut panels = Vec::with_capacity(n);
        let mut l1 = 0.0;
        for k in 0..n {
            let (pa, pb) = (a + h * k as f64, if k + 1 == n { b } else { a + h * (k + 1) as f64 });
            let (v, m) = self.rule.integrate_scaled(pa, pb, f)?;
            l1 += m;
            panels.push((pa, pb, v));
        }
        // Relative to the scale so integrals that cancel to zero still terminate.
        let tol = self.abs_tol.max(self.rel_tol * l1);
        let width = (b - a).abs();
        let mut budget = MAX_PANELS;
        let mut acc = V::zero();
        for (pa, pb, v) in panels {
            acc = acc.plus(self.refine(pa, pb, v, f, tol, width, 0, &mut budget)?);
        }
        Ok(acc)
    }

    #[allow(clippy::too_many_arguments)]
    fn refine<V: Accumulate>(
        &self,
        a: f64,
        b: f64,
        whole: V,
        f: &impl Fn(f64) -> Result<(V, f64)>,
        tol: f64,
        width: f64,
        depth: u32,
        budget: &mut usize,
    ) -> Result<V> {
        let m = 0.5 * (a + b);
        let (left, l1l) = self.rule.integrate_scaled(a, m, f)?;
        let (right, l1r) = self.rule.integrate_scaled(m, b, f)?;
        let both = left.plus(right);
        let err = both.plus(whole.times(-1.0)).magnitude();
        let allowed = (tol * (b - a).abs() / width).max(ROUNDOFF * (l1l + l1r));
        if depth >= self.max_depth || *budget == 0 || err <= allowed {
            return Ok(both);
        }
        *budget -= 1;
        let l = self.refine(a, m, left, f, tol, width, depth + 1, budget)?;
        let r = self.refine(m, b, right, f, tol, width, depth + 1, budget)?;
        Ok(l.plus(r))
    }
}

/// Gauss-Legendre in `η ∈ [0, π/2]` times the periodic trapezoid rule in
/// `ξ1, ξ2 ∈ [0, 2π)`.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub n_eta: usize,
    pub n_xi: usize,
    eta: Vec<(f64, f64)>,
}

impl QuadratureRule {
    pub fn eta_nodes(&self) -> &[(f64, f64)] {
        &self.eta
    }

    /// `(ξ, weight)` pairs of the trapezoid rule.
    pub fn xi_nodes(&self) -> Vec<(f64, f64)> {
        let w = 2.0 * PI / self.n_xi as f64;
        (0..self.n_xi).map(|k| (w * k as f64, w)).collect()
    }

    /// `∫ f dη dξ1 dξ2` with no measure factor.
    pub fn integrate_chart<V: Accumulate>(
        &self,
        f: impl Fn(f64, f64, f64) -> Result<V> + Sync,
    ) -> Result<V> {
        let xi = self.xi_nodes();
        let rows: Vec<(f64, f64, f64, f64)> = self
            .eta
            .iter()
            .flat_map(|&(e, we)| xi.iter().map(move |&(x1, w1)| (e, we, x1, w1)))
            .collect();
        let sums: Vec<V> = rows
            .par_iter()
            .map(|&(e, we, x1, w1)| {
                let mut acc = V::zero();
                for &(x2, w2) in &xi {
                    acc = acc.plus(f(e, x1, x2)?.times(we * w1 * w2));
                }
                Ok(acc)
            })
            .collect::<Result<_>>()?;
        Ok(ordered_sum(sums))
    }

    /// `∫_{S³} f dσ` with `dσ = sin η cos η dη dξ1 dξ2`.
    pub fn integrate_sphere<V: Accumulate>(
        &self,
        f: impl Fn(f64, f64, f64) -> Result<V> + Sync,
    ) -> Result<V> {
        self.integrate_chart(|e, x1, x2| Ok(f(e, x1, x2)?.times(e.sin() * e.cos())))
    }

    /// `∫_{S³} f(u) dσ` for a function of the unit point.
    pub fn integrate_unit_sphere<V: Accumulate>(
        &self,
        f: impl Fn(&Quat64) -> V + Sync,
    ) -> V {
        self.integrate_sphere(|e, x1, x2| Ok(f(&super::chart::unit_point(e, x1, x2))))
            .expect("infallible integrand")
    }
}

pub fn build_quadrature(n_eta: usize, n_xi: usize) -> Result<QuadratureRule> {
    if n_eta < 4 || n_xi < 8 {
        return Err(Error::TooCoarse(format!(
            "n_eta = {n_eta}, n_xi = {n_xi}; need n_eta >= 4 and n_xi >= 8"
        )));
    }
    Ok(QuadratureRule {
        n_eta,
        n_xi,
        eta: GlRule::new(n_eta).mapped(0.0, FRAC_PI_2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adaptive_handles_a_narrow_peak() {
        let ad = Adaptive::new(10, 1e-12).with_min_panels(4);
        let v: f64 = ad
            .integrate(0.0, 1.0, &|x| Ok(1e-3 / ((x - 0.731).powi(2) + 1e-6)))
            .unwrap();
        let exact = (0.269f64 / 1e-3).atan() + (0.731f64 / 1e-3).atan();
        assert!((v - exact).abs() < 1e-9, "{v} vs {exact}");
    }

    #[test]
    fn coarse_rules_are_rejected() {
        assert!(matches!(build_quadrature(3, 64), Err(Error::TooCoarse(_))));
        assert!(matches!(build_quadrature(16, 7), Err(Error::TooCoarse(_))));
    }

    #[test]
    fn sphere_area() {
        let r = build_quadrature(16, 16).unwrap();
        let a = r.integrate_unit_sphere(|_| 1.0);
        assert!((a - 2.0 * PI * PI).abs() < 1e-12);
    }
}
