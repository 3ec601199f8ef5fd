//! Complex-valued exterior forms on `ℂ²` with constant coefficients, in the
//! basis `dz1, dz̄1, dz2, dz̄2`.
//!
//! A tangent vector is a pair `(v1, v2)`; `dz1(V) = v1`, `dz̄1(V) = v̄1` and so
//! on. A `k`-form is evaluated on `k` vectors by determinants.

use num_complex::Complex64;

pub type Vector = [Complex64; 2];

pub const DZ1: usize = 0;
pub const DZB1: usize = 1;
pub const DZ2: usize = 2;
pub const DZB2: usize = 3;

/// Element of the exterior algebra; `c[mask]` is the coefficient of the
/// wedge of the basis forms whose bits are set, in increasing order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Form {
    c: [Complex64; 16],
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Sign of the permutation sorting `seq` (entries distinct).
fn sort_sign(seq: &[usize]) -> f64 {
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn bits(mask: usize) -> Vec<usize> {
    (0..4).filter(|b| mask & (1 << b) != 0).collect()
}

fn det(m: &[Vec<Complex64>]) -> Complex64 {
    match m.len() {
        0 => Complex64::new(1.0, 0.0),
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => {
            let mut acc = zero();
            for col in 0..n {
                let minor: Vec<Vec<Complex64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, v)| *v)
                            .collect()
                    })
                    .collect();
                let s = if col % 2 == 0 { 1.0 } else { -1.0 };
                acc += m[0][col] * det(&minor) * s;
            }
            acc
        }
    }
}

/// Values of the four basis 1-forms on `v`.
pub fn basis_values(v: &Vector) -> [Complex64; 4] {
    [v[0], v[0].conj(), v[1], v[1].conj()]
}

impl Form {
    pub fn zero() -> Self {
        Self { c: [zero(); 16] }
    }

    /// `coef · dx_{i1} ∧ … ∧ dx_{ik}` in the given order.
    pub fn monomial(coef: Complex64, idx: &[usize]) -> Self {
        let mut f = Self::zero();
        let mut mask = 0;
        for &i in idx {
            if mask & (1 << i) != 0 {
                return f;
            }
            mask |= 1 << i;
        }
        f.c[mask] = coef * sort_sign(idx);
        f
    }

    /// `Σ a_v dv` for the four basis 1-forms.
    pub fn one_form(coefs: [Complex64; 4]) -> Self {
        let mut f = Self::zero();
        for (i, a) in coefs.into_iter().enumerate() {
            f.c[1 << i] = a;
        }
        f
    }

    pub fn coefficient(&self, idx: &[usize]) -> Complex64 {
        let mask = idx.iter().fold(0, |m, i| m | (1 << i));
        self.c[mask] * sort_sign(idx)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(o.c.iter()) {
            *a += b;
        }
        Self { c }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut c = self.c;
        for a in c.iter_mut() {
            *a *= s;
        }
        Self { c }
    }

    pub fn wedge(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for a in 1..16usize {
            if self.c[a] == zero() {
                continue;
            }
            for b in 0..16usize {
                if a & b != 0 || o.c[b] == zero() {
                    continue;
                }
                let seq: Vec<usize> = bits(a).into_iter().chain(bits(b)).collect();
                out.c[a | b] += self.c[a] * o.c[b] * sort_sign(&seq);
            }
        }
        if self.c[0] != zero() {
            for b in 0..16 {
                out.c[b] += self.c[0] * o.c[b];
            }
        }
        out
    }

    /// Complex conjugate: conjugated coefficients with `dz ↔ dz̄`.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero();
        for mask in 0..16usize {
            if self.c[mask] == zero() {
                continue;
            }
            let mapped: Vec<usize> = bits(mask).into_iter().map(|b| b ^ 1).collect();
            let m2 = mapped.iter().fold(0, |m, i| m | (1 << i));
            out.c[m2] += self.c[mask].conj() * sort_sign(&mapped);
        }
        out
    }

    /// Value on `vs.len()` vectors; only the part of that degree contributes.
    pub fn eval(&self, vs: &[Vector]) -> Complex64 {
        let k = vs.len();
        let vals: Vec<[Complex64; 4]> = vs.iter().map(basis_values).collect();
        let mut acc = zero();
        for mask in 0..16usize {
            if mask.count_ones() as usize != k || self.c[mask] == zero() {
                continue;
            }
            let rows = bits(mask);
            let m: Vec<Vec<Complex64>> = rows
                .iter()
                .map(|&r| vals.iter().map(|v| v[r]).collect())
                .collect();
            acc += self.c[mask] * det(&m);
        }
        acc
    }
}

/// `dz1 ∧ dz̄1 ∧ dz2 ∧ dz̄2`.
pub fn complex_volume() -> Form {
    Form::monomial(Complex64::new(1.0, 0.0), &[DZ1, DZB1, DZ2, DZB2])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn dz_wedge_dzbar_is_minus_2i_area() {
        let f = Form::monomial(c(1.0, 0.0), &[DZ1, DZB1]);
        let ex = [c(1.0, 0.0), c(0.0, 0.0)];
        let ey = [c(0.0, 1.0), c(0.0, 0.0)];
        assert_eq!(f.eval(&[ex, ey]), c(0.0, -2.0));
    }

    #[test]
    fn complex_volume_is_minus_four_dv() {
        let e = [
            [c(1.0, 0.0), c(0.0, 0.0)],
            [c(0.0, 1.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(1.0, 0.0)],
            [c(0.0, 0.0), c(0.0, 1.0)],
        ];
        assert!((complex_volume().eval(&e) - c(-4.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn wedge_is_graded_commutative_and_conj_swaps_bars() {
        let a = Form::one_form([c(1.0, 2.0), c(0.0, 1.0), c(-1.0, 0.5), c(3.0, 0.0)]);
        let b = Form::one_form([c(0.2, 0.0), c(1.0, -1.0), c(0.0, 2.0), c(1.0, 1.0)]);
        assert_eq!(a.wedge(&b), b.wedge(&a).scale(c(-1.0, 0.0)));
        assert_eq!(a.wedge(&a), Form::zero());
        let v = Form::monomial(c(0.0, 1.0), &[DZ1, DZB1]);
        assert_eq!(v.conj(), Form::monomial(c(0.0, -1.0), &[DZB1, DZ1]));
        let vs = [[c(0.3, 0.1), c(1.0, 0.0)], [c(0.0, -1.0), c(0.5, 0.5)]];
        let w = a.wedge(&b);
        assert!((w.conj().eval(&vs) - w.eval(&vs).conj()).norm() < 1e-14);
    }
}
