//! Hopf chart `(λ, η, ξ1, ξ2) ↦ (λ cos η e^{iξ1}, λ sin η e^{iξ2})`.
//!
//! Every constant relating the complex forms to real measures is computed
//! from the parametrization here rather than written down.

use std::sync::OnceLock;

use num_complex::Complex64;

use super::forms::{complex_volume, Vector};
use crate::qcore::Quat64;

pub fn unit_point(eta: f64, xi1: f64, xi2: f64) -> Quat64 {
    Quat64::new(
        Complex64::from_polar(eta.cos(), xi1),
        Complex64::from_polar(eta.sin(), xi2),
    )
}

pub fn unit_vector(eta: f64, xi1: f64, xi2: f64) -> Vector {
    let u = unit_point(eta, xi1, xi2);
    [u.z1, u.z2]
}

/// `∂u/∂η, ∂u/∂ξ1, ∂u/∂ξ2` on the unit sphere.
pub fn unit_tangents(eta: f64, xi1: f64, xi2: f64) -> [Vector; 3] {
    let (s, c) = eta.sin_cos();
    let e1 = Complex64::from_polar(1.0, xi1);
    let e2 = Complex64::from_polar(1.0, xi2);
    let i = Complex64::i();
    let z = Complex64::new(0.0, 0.0);
    [[e1 * (-s), e2 * c], [i * e1 * c, z], [z, i * e2 * s]]
}

fn real_coords(v: &Vector) -> [f64; 4] {
    [v[0].re, v[0].im, v[1].re, v[1].im]
}

fn det4(m: [[f64; 4]; 4]) -> f64 {
    let mut a = m;
    let mut d = 1.0;
    for col in 0..4 {
        let p = (col..4)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap();
        if a[p][col] == 0.0 {
            return 0.0;
        }
        if p != col {
            a.swap(p, col);
            d = -d;
        }
        d *= a[col][col];
        for r in col + 1..4 {
            let f = a[r][col] / a[col][col];
            for k in col..4 {
                a[r][k] -= f * a[col][k];
            }
        }
    }
    d
}

/// Frame `(∂/∂λ, ∂/∂η, ∂/∂ξ1, ∂/∂ξ2)` at `λ u(η, ξ)`.
pub fn frame(lambda: f64, eta: f64, xi1: f64, xi2: f64) -> [Vector; 4] {
    let u = unit_vector(eta, xi1, xi2);
    let t = unit_tangents(eta, xi1, xi2);
    let sc = |v: Vector| [v[0] * lambda, v[1] * lambda];
    [u, sc(t[0]), sc(t[1]), sc(t[2])]
}

/// `det ∂(x1, y1, x2, y2)/∂(λ, η, ξ1, ξ2)`.
pub fn real_jacobian(lambda: f64, eta: f64, xi1: f64, xi2: f64) -> f64 {
    let f = frame(lambda, eta, xi1, xi2);
    let mut m = [[0.0; 4]; 4];
    for (col, v) in f.iter().enumerate() {
        for (row, x) in real_coords(v).into_iter().enumerate() {
            m[row][col] = x;
        }
    }
    det4(m)
}

const SAMPLE: (f64, f64, f64, f64) = (0.9, 0.7, 0.4, 2.1);

/// Orientation of the chart relative to `dx1 ∧ dy1 ∧ dx2 ∧ dy2`; multiply
/// pulled-back 4-forms, and 3-forms on the spheres with outward normal
/// first, by this sign.
pub fn orientation_sign() -> f64 {
    static SIGN: OnceLock<f64> = OnceLock::new();
    *SIGN.get_or_init(|| {
        let (l, e, a, b) = SAMPLE;
        real_jacobian(l, e, a, b).signum()
    })
}

/// Constants of the chart, measured at a sample point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChartConstants {
    pub orientation: f64,
    /// `|det| / (λ³ sin η cos η)`; equals 1.
    pub radial_measure: f64,
    /// `(dz1∧dz̄1∧dz2∧dz̄2)(frame) / (λ³ sin η cos η)`.
    pub complex_volume: f64,
}

pub fn constants() -> ChartConstants {
    let (l, e, a, b) = SAMPLE;
    let sc = l.powi(3) * e.sin() * e.cos();
    ChartConstants {
        orientation: orientation_sign(),
        radial_measure: real_jacobian(l, e, a, b).abs() / sc,
        complex_volume: complex_volume().eval(&frame(l, e, a, b)).re / sc,
    }
}

/// Induced 3-volume density of the unit-sphere chart, from the Gram
/// determinant of the tangents.
pub fn sphere_density(eta: f64, xi1: f64, xi2: f64) -> f64 {
    let t = unit_tangents(eta, xi1, xi2).map(|v| real_coords(&v));
    let dot = |a: &[f64; 4], b: &[f64; 4]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let g: Vec<Vec<f64>> = (0..3).map(|i| (0..3).map(|j| dot(&t[i], &t[j])).collect()).collect();
    let d = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
        - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
        + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
    d.max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measure_and_orientation() {
        let k = constants();
        assert_eq!(k.orientation, -1.0);
        assert!((k.radial_measure - 1.0).abs() < 1e-13);
        assert!((k.complex_volume - 4.0).abs() < 1e-13);
        for (e, a, b) in [(0.3, 0.0, 1.0), (1.2, 2.0, 5.0)] {
            assert!((sphere_density(e, a, b) - e.sin() * e.cos()).abs() < 1e-14);
            let j = real_jacobian(1.7, e, a, b);
            assert!((j + 1.7f64.powi(3) * e.sin() * e.cos()).abs() < 1e-12);
        }
    }
}
