//! Pairings of `ω = f⁻¹ df = f⁻¹(df1 + df2·j)` with test forms on `ℂ²`.
//!
//! Moving `j` to the right conjugates forms, so
//! `ω ∧ φ = f⁻¹ · ((df1 ∧ φ) + (df2 ∧ φ̄)·j)`. Both complex forms are
//! evaluated on the chart's tangent vectors and combined with the value
//! of `f⁻¹` by the quaternion product.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use rayon::prelude::*;

use super::chart::{frame, orientation_sign, unit_tangents, unit_vector};
use super::estimate::{CurrentEstimate, EpsilonSchedule};
use super::forms::{basis_values, Form, Vector};
use super::quadrature::{ordered_sum, Accumulate, Adaptive, QuadratureRule};
use super::testform::{TestForm2, TestForm3};
use crate::error::{Error, Result};
use crate::qcore::Quat64;
use crate::symfun::{QuatField, WirtingerJet};

/// Region cut out around the zero of `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    /// `‖q‖ = ε` (residue) or `‖q‖ ≥ ε` (principal value).
    MetricBall,
    /// `|f| = ε` or `|f| ≥ ε`, located by a root search along each ray.
    LevelSet,
}

/// How the `η` direction is integrated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtaMode {
    /// The rule's Gauss-Legendre nodes.
    Fixed,
    /// Adaptive Gauss-Legendre panels; the rule's `n_eta` is the panel size.
    Adaptive,
}

#[derive(Clone, Debug)]
pub struct PairingOptions {
    pub rule: QuadratureRule,
    pub schedule: EpsilonSchedule,
    pub domain: Domain,
    pub eta: EtaMode,
    /// Relative tolerance of the adaptive integrators.
    pub tol: f64,
}

impl PairingOptions {
    /// Level sets `|f| = ε` with adaptive `η`.
    pub fn residue(rule: QuadratureRule, schedule: EpsilonSchedule) -> Self {
        Self {
            rule,
            schedule,
            domain: Domain::LevelSet,
            eta: EtaMode::Adaptive,
            tol: 1e-10,
        }
    }

    /// Metric balls with the fixed angular rule.
    pub fn principal_value(rule: QuadratureRule, schedule: EpsilonSchedule) -> Self {
        Self {
            rule,
            schedule,
            domain: Domain::MetricBall,
            eta: EtaMode::Fixed,
            tol: 1e-11,
        }
    }

    pub fn with_domain(mut self, d: Domain) -> Self {
        self.domain = d;
        self
    }

    pub fn with_eta(mut self, e: EtaMode) -> Self {
        self.eta = e;
        self
    }
}

/// Poles and zeros of `f` met at a node, located at `q`.
fn on_domain(e: Error, q: &Quat64) -> Error {
    match e {
        Error::Pole { x1, y1, x2, y2 } | Error::PoleOnDomain { x1, y1, x2, y2 } => {
            Error::PoleOnDomain { x1, y1, x2, y2 }
        }
        Error::ZeroDivision => {
            let [x1, y1, x2, y2] = q.to_parts();
            Error::PoleOnDomain { x1, y1, x2, y2 }
        }
        other => other,
    }
}

fn scaled(u: &Vector, t: f64) -> Quat64 {
    Quat64::new(u[0] * t, u[1] * t)
}

fn differentials(jet: &WirtingerJet) -> (Form, Form) {
    (
        Form::one_form(jet.partials[0]),
        Form::one_form(jet.partials[1]),
    )
}

/// `ω ∧ form` evaluated on `vs`, at a point with the given jet.
pub fn omega_wedge(jet: &WirtingerJet, form: &Form, vs: &[Vector]) -> Result<Quat64> {
    let inv = jet.value.inv()?;
    let (df1, df2) = differentials(jet);
    let p = df1.wedge(form).eval(vs);
    let q = df2.wedge(&form.conj()).eval(vs);
    Ok(inv * Quat64::new(p, q))
}

/// `d|f|²(V) = 2 Re Σ f̄_i df_i(V)`.
fn d_modulus_sq(jet: &WirtingerJet, v: &Vector) -> f64 {
    let b = basis_values(v);
    let vals = [jet.value.z1, jet.value.z2];
    (0..2)
        .map(|i| {
            let df: Complex64 = (0..4).map(|k| jet.partials[i][k] * b[k]).sum();
            2.0 * (vals[i].conj() * df).re
        })
        .sum()
}

/// First `t ∈ (0, t_max]` with `|f(t u)| = ε`, or `None` when `|f| < ε`
/// along the whole segment.
pub fn level_root<F: QuatField + ?Sized>(
    f: &F,
    u: &Vector,
    eps: f64,
    t_max: f64,
) -> Result<Option<f64>> {
    let g = |t: f64| -> Result<f64> {
        let q = scaled(u, t);
        Ok(f.eval(&q).map_err(|e| on_domain(e, &q))?.modulus_sq() - eps * eps)
    };
    let mut probes: Vec<f64> = (1..=32).map(|k| t_max * k as f64 / 32.0).collect();
    let mut t = eps / 64.0;
    while t < t_max {
        probes.push(t);
        t *= 2.0;
    }
    probes.sort_by(f64::total_cmp);
    let (mut a, mut ga) = (0.0, -eps * eps);
    let mut bracket = None;
    for p in probes {
        let gp = g(p)?;
        if gp >= 0.0 {
            bracket = Some((p, gp));
            break;
        }
        (a, ga) = (p, gp);
    }
    let Some((mut b, mut gb)) = bracket else {
        return Ok(None);
    };
    if gb == 0.0 {
        return Ok(Some(b));
    }
    // Illinois variant of regula falsi; keeps a bracket throughout.
    for _ in 0..200 {
        let c = (a * gb - b * ga) / (gb - ga);
        let gc = g(c)?;
        if gc == 0.0 {
            return Ok(Some(c));
        }
        if (gc > 0.0) == (gb > 0.0) {
            ga *= 0.5;
        } else {
            (a, ga) = (b, gb);
        }
        (b, gb) = (c, gc);
        if (b - a).abs() <= 4.0 * f64::EPSILON * b.abs() {
            break;
        }
    }
    Ok(Some(b))
}

/// The pulled-back residue integrand at one chart point for one `ε`.
fn residue_integrand<F: QuatField + ?Sized>(
    f: &F,
    phi: &TestForm2,
    support: f64,
    domain: Domain,
    eps: f64,
    angles: (f64, f64, f64),
) -> Result<Quat64> {
    let (eta, xi1, xi2) = angles;
    let u = unit_vector(eta, xi1, xi2);
    let tang = unit_tangents(eta, xi1, xi2);
    let t = match domain {
        Domain::MetricBall => eps,
        Domain::LevelSet => match level_root(f, &u, eps, support)? {
            Some(t) => t,
            None => return Ok(Quat64::zero()),
        },
    };
    if t >= support {
        return Ok(Quat64::zero());
    }
    let q = scaled(&u, t);
    let form = phi.form_at(&q);
    if form == Form::zero() {
        return Ok(Quat64::zero());
    }
    let jet = f.jet(&q).map_err(|e| on_domain(e, &q))?;
    let vs: Vec<Vector> = match domain {
        Domain::MetricBall => tang.iter().map(|v| [v[0] * t, v[1] * t]).collect(),
        Domain::LevelSet => {
            let du = d_modulus_sq(&jet, &u);
            if !(du > 0.0) {
                return Err(Error::NotStarShaped { eps });
            }
            tang.iter()
                .map(|v| {
                    let dt = -t * d_modulus_sq(&jet, v) / du;
                    [u[0] * dt + v[0] * t, u[1] * dt + v[1] * t]
                })
                .collect()
        }
    };
    let w = omega_wedge(&jet, &form, &vs).map_err(|e| on_domain(e, &q))?;
    Ok(w.scale(orientation_sign()))
}

/// Trapezoid sum over `ξ1, ξ2` at fixed `η`, with the sum of magnitudes.
fn xi_sum<V: Accumulate>(
    rule: &QuadratureRule,
    eta: f64,
    g: &(impl Fn(f64, f64, f64) -> Result<V> + Sync),
) -> Result<(V, f64)> {
    let xi = rule.xi_nodes();
    let rows: Vec<(V, f64)> = xi
        .par_iter()
        .map(|&(x1, w1)| {
            let mut acc = V::zero();
            let mut scale = 0.0;
            for &(x2, w2) in &xi {
                let v = g(eta, x1, x2)?;
                scale += v.magnitude() * w1 * w2;
                acc = acc.plus(v.times(w1 * w2));
            }
            Ok((acc, scale))
        })
        .collect::<Result<_>>()?;
    let scale = rows.iter().map(|r| r.1).sum();
    Ok((ordered_sum(rows.into_iter().map(|r| r.0)), scale))
}

/// `∫_{|f|=ε} ω ∧ φ` (or over `‖q‖ = ε`), the sphere oriented by its
/// outward normal.
pub fn residue_at<F: QuatField + ?Sized>(
    f: &F,
    phi: &TestForm2,
    opts: &PairingOptions,
    eps: f64,
) -> Result<Quat64> {
    if phi.is_zero() {
        return Ok(Quat64::zero());
    }
    let support = phi.support_radius();
    let g = |e: f64, a: f64, b: f64| residue_integrand(f, phi, support, opts.domain, eps, (e, a, b));
    match opts.eta {
        EtaMode::Fixed => opts.rule.integrate_chart(g),
        EtaMode::Adaptive => {
            let ad = Adaptive::new(opts.rule.n_eta, opts.tol).with_min_panels(4);
            ad.integrate_scaled(0.0, FRAC_PI_2, &|eta| xi_sum(&opts.rule, eta, &g))
        }
    }
}

/// `Res[ω](φ) = lim_{ε→0} ∫_{|f|=ε} ω ∧ φ`.
pub fn residue_pair<F: QuatField + ?Sized>(
    f: &F,
    phi: &TestForm2,
    opts: &PairingOptions,
) -> Result<CurrentEstimate> {
    let eps = opts.schedule.radii();
    if phi.is_zero() {
        return Ok(CurrentEstimate::zeros(eps));
    }
    opts.schedule.check_within(phi.support_radius())?;
    let values = eps
        .par_iter()
        .map(|&e| residue_at(f, phi, opts, e))
        .collect::<Result<Vec<_>>>()?;
    Ok(CurrentEstimate::from_values(eps, values))
}

/// `Vp[ω](ψ) = lim_{ε→0} ∫_{‖q‖≥ε} ω ∧ ψ` (or over `|f| ≥ ε`).
///
/// Each ray is integrated once from `ε_0` to the support and then shell by
/// shell inwards, so the whole schedule costs one radial sweep.
pub fn pv_pair<F: QuatField + ?Sized>(
    f: &F,
    psi: &TestForm3,
    opts: &PairingOptions,
) -> Result<CurrentEstimate> {
    let eps = opts.schedule.radii();
    if psi.is_zero() {
        return Ok(CurrentEstimate::zeros(eps));
    }
    let support = psi.support_radius();
    opts.schedule.check_within(support)?;
    let sign = orientation_sign();
    let radial = Adaptive::new(10, opts.tol);
    let outer = Adaptive::new(10, opts.tol).with_min_panels(4);
    let xi = opts.rule.xi_nodes();
    let rows: Vec<(f64, f64, f64, f64)> = opts
        .rule
        .eta_nodes()
        .iter()
        .flat_map(|&(e, we)| xi.iter().map(move |&(x1, w1)| (e, we, x1, w1)))
        .collect();

    let ray = |eta: f64, xi1: f64, xi2: f64| -> Result<Vec<Quat64>> {
        let u = unit_vector(eta, xi1, xi2);
        let lower: Vec<f64> = match opts.domain {
            Domain::MetricBall => eps.clone(),
            Domain::LevelSet => eps
                .iter()
                .map(|&e| Ok(level_root(f, &u, e, support)?.unwrap_or(support)))
                .collect::<Result<_>>()?,
        };
        let integrand = |lambda: f64| -> Result<Quat64> {
            let q = scaled(&u, lambda);
            let form = psi.form_at(&q);
            if form == Form::zero() {
                return Ok(Quat64::zero());
            }
            let jet = f.jet(&q).map_err(|e| on_domain(e, &q))?;
            Ok(omega_wedge(&jet, &form, &frame(lambda, eta, xi1, xi2))?.scale(sign))
        };
        let mut acc = if lower[0] < support {
            outer.integrate(lower[0], support, &integrand)?
        } else {
            Quat64::zero()
        };
        let mut out = Vec::with_capacity(lower.len());
        out.push(acc);
        for w in lower.windows(2) {
            let (hi, lo) = (w[0].min(support), w[1].min(support));
            acc = acc + radial.integrate(lo, hi, &integrand)?;
            out.push(acc);
        }
        Ok(out)
    };

    let sums: Vec<Vec<Quat64>> = rows
        .par_iter()
        .map(|&(e, we, x1, w1)| {
            let mut acc = vec![Quat64::zero(); eps.len()];
            for &(x2, w2) in &xi {
                let vals = ray(e, x1, x2)?;
                for (a, v) in acc.iter_mut().zip(vals) {
                    *a = *a + v.scale(we * w1 * w2);
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut values = vec![Quat64::zero(); eps.len()];
    for row in sums {
        for (a, v) in values.iter_mut().zip(row) {
            *a = *a + v;
        }
    }
    Ok(CurrentEstimate::from_values(eps, values))
}
