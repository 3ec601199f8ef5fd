use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::qcore::Quat64;

/// `ε_k = ε_0 ρ^k`, `k = 0..K`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EpsilonSchedule {
    pub eps0: f64,
    pub ratio: f64,
    pub count: usize,
}

/// Successive-difference ratio below which a step counts as contracting.
pub const CONVERGENCE_RATIO: f64 = 0.8;
/// Steps inspected by the convergence test.
pub const CONVERGENCE_WINDOW: usize = 4;
/// Points used by the extrapolation fit.
pub const FIT_POINTS: usize = 5;
/// Differences below `NOISE_FLOOR · (1 + |value|)` count as converged.
pub const NOISE_FLOOR: f64 = 1e-13;

impl EpsilonSchedule {
    pub fn new(eps0: f64, ratio: f64, count: usize) -> Result<Self> {
        if !(eps0 > 0.0 && eps0.is_finite()) {
            return Err(Error::InvalidSchedule(format!("eps0 = {eps0} must be positive")));
        }
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::InvalidSchedule(format!("ratio = {ratio} must lie in (0, 1)")));
        }
        if count == 0 {
            return Err(Error::InvalidSchedule("count must be at least 1".into()));
        }
        Ok(Self { eps0, ratio, count })
    }

    /// `(R/2, 0.7, 12)`.
    pub fn default_for(support: f64) -> Self {
        Self {
            eps0: support / 2.0,
            ratio: 0.7,
            count: 12,
        }
    }

    /// `(R/2, 0.5, 20)`, used by the one-variable pairings whose
    /// `O(ε)` bias needs smaller radii to reach `1e-8`.
    pub fn one_dimensional(support: f64) -> Self {
        Self {
            eps0: support / 2.0,
            ratio: 0.5,
            count: 20,
        }
    }

    pub fn radii(&self) -> Vec<f64> {
        (0..self.count)
            .map(|k| self.eps0 * self.ratio.powi(k as i32))
            .collect()
    }

    /// `ε_0` must lie strictly inside the support.
    pub fn check_within(&self, support: f64) -> Result<()> {
        if self.eps0 < support {
            Ok(())
        } else {
            Err(Error::InvalidSchedule(format!(
                "eps0 = {} is not below the support radius {support}",
                self.eps0
            )))
        }
    }
}

/// Per-`ε` values of a pairing with the extrapolated limit.
#[derive(Clone, Debug, PartialEq)]
pub struct CurrentEstimate {
    pub eps: Vec<f64>,
    pub values: Vec<Quat64>,
    pub extrapolated: Quat64,
    pub converged: bool,
    /// `|v_{k+1} − v_k|`.
    pub differences: Vec<f64>,
    /// `d_{k+1} / d_k`.
    pub ratios: Vec<f64>,
}

/// Least-squares `c0 + c1 x + … ` of the given degree; returns `c0`.
fn fit_intercept(xs: &[f64], ys: &[f64], degree: usize) -> f64 {
    let n = degree + 1;
    let scale = xs.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
    let mut a = vec![vec![0.0; n + 1]; n];
    for (&x, &y) in xs.iter().zip(ys) {
        let t = x / scale;
        let pw: Vec<f64> = (0..n).map(|k| t.powi(k as i32)).collect();
        for r in 0..n {
            for c in 0..n {
                a[r][c] += pw[r] * pw[c];
            }
            a[r][n] += pw[r] * y;
        }
    }
    for col in 0..n {
        let p = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, p);
        if a[col][col] == 0.0 {
            return ys.last().copied().unwrap_or(0.0);
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                for k in col..=n {
                    a[r][k] -= f * a[col][k];
                }
            }
        }
    }
    a[0][n] / a[0][0]
}

/// Componentwise quadratic fit in `ε` on the last points.
pub fn extrapolate(eps: &[f64], values: &[Quat64]) -> Quat64 {
    let n = values.len();
    if n == 0 {
        return Quat64::zero();
    }
    let m = n.min(FIT_POINTS);
    let xs = &eps[n - m..];
    let parts: Vec<[f64; 4]> = values[n - m..]
        .iter()
        .map(|v| v.to_parts())
        .collect();
    let degree = (m - 1).min(2);
    let c: Vec<f64> = (0..4)
        .map(|k| {
            let ys: Vec<f64> = parts.iter().map(|p| p[k]).collect();
            fit_intercept(xs, &ys, degree)
        })
        .collect();
    Quat64::from_parts(c[0], c[1], c[2], c[3])
}

impl CurrentEstimate {
    pub fn from_values(eps: Vec<f64>, values: Vec<Quat64>) -> Self {
        let differences: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
        let ratios: Vec<f64> = differences
            .windows(2)
            .map(|d| if d[0] == 0.0 { 0.0 } else { d[1] / d[0] })
            .collect();
        let extrapolated = extrapolate(&eps, &values);
        let floor = NOISE_FLOOR * (1.0 + extrapolated.norm());
        let converged = differences.len() > CONVERGENCE_WINDOW
            && differences
                .windows(2)
                .rev()
                .take(CONVERGENCE_WINDOW)
                .all(|d| d[1] <= floor || d[1] < CONVERGENCE_RATIO * d[0]);
        Self {
            eps,
            values,
            extrapolated,
            converged,
            differences,
            ratios,
        }
    }

    pub fn zeros(eps: Vec<f64>) -> Self {
        let n = eps.len();
        Self::from_values(eps, vec![Quat64::zero(); n])
    }

    /// Largest `|v_k|` over the schedule.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `eps,re1,im1,re_j,im_j` rows with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("eps,re1,im1,re_j,im_j\n");
        for (e, v) in self.eps.iter().zip(&self.values) {
            let [a, b, c, d] = v.to_parts();
            let _ = writeln!(s, "{e:.16e},{a:.16e},{b:.16e},{c:.16e},{d:.16e}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_validation() {
        assert!(EpsilonSchedule::new(0.5, 1.0, 3).is_err());
        assert!(EpsilonSchedule::new(-1.0, 0.5, 3).is_err());
        assert!(EpsilonSchedule::new(0.5, 0.5, 0).is_err());
        let s = EpsilonSchedule::default_for(1.0);
        assert_eq!(s.radii().len(), 12);
        assert!(s.check_within(1.0).is_ok());
        assert!(s.check_within(0.4).is_err());
    }

    #[test]
    fn quadratic_data_extrapolates_exactly() {
        let eps = EpsilonSchedule::default_for(1.0).radii();
        let vals: Vec<Quat64> = eps
            .iter()
            .map(|e| Quat64::from_parts(1.0 + 2.0 * e - e * e, 0.5 * e, -3.0, e * e))
            .collect();
        let est = CurrentEstimate::from_values(eps, vals);
        let [a, b, c, d] = est.extrapolated.to_parts();
        assert!((a - 1.0).abs() < 1e-12 && b.abs() < 1e-12 && (c + 3.0).abs() < 1e-12 && d.abs() < 1e-12);
        assert!(est.converged);
    }

    #[test]
    fn oscillation_is_not_converged() {
        let eps = EpsilonSchedule::default_for(1.0).radii();
        let vals: Vec<Quat64> = (0..eps.len())
            .map(|k| Quat64::from_real(if k % 2 == 0 { 1.0 } else { 2.0 }))
            .collect();
        assert!(!CurrentEstimate::from_values(eps, vals).converged);
    }

    #[test]
    fn csv_layout() {
        let est = CurrentEstimate::zeros(vec![0.5, 0.25]);
        let csv = est.to_csv();
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.starts_with("eps,re1,im1,re_j,im_j\n5.0000000000000000e-1,"));
    }
}
