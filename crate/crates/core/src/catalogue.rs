//! Named example functions with their known classification and zero sets.

use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qcore::Quat64;
use crate::symfun::{
    exact_quat, parse_poly, parse_qfunction, rat_from_f64, ConjPoly, NumPoly, QFunction, QuatField,
};

/// Names accepted by [`builtin`]; `holo` also takes the form `holo:<poly>`.
pub const NAMES: [&str; 6] = ["conj", "cauchy_kernel", "F", "prop34", "holo", "q_conj"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KnownFlags {
    pub hyperholomorphic: bool,
    pub hypermeromorphic: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ZeroSet {
    /// `{0}`.
    Origin,
    /// Never zero where defined.
    Empty,
    /// The real 2-plane `{Re z1 = x1, Re z2 = x2}`.
    RealPlane { x1: f64, x2: f64 },
    /// `{p = 0}` for a holomorphic polynomial `p`.
    Hypersurface(ConjPoly),
}

impl ZeroSet {
    /// Distance-like test used by the grid check.
    pub fn contains(&self, q: &Quat64, tol: f64) -> bool {
        match self {
            ZeroSet::Origin => q.norm() <= tol,
            ZeroSet::Empty => false,
            ZeroSet::RealPlane { x1, x2 } => {
                (q.z1.re - x1).abs() <= tol && (q.z2.re - x2).abs() <= tol
            }
            ZeroSet::Hypersurface(p) => p.eval(q).norm() <= tol,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ZeroSet::Origin => "{0}".into(),
            ZeroSet::Empty => "empty".into(),
            ZeroSet::RealPlane { x1, x2 } => format!("{{x1 = {x1}, x2 = {x2}}}"),
            ZeroSet::Hypersurface(p) => format!("{{{p} = 0}}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogueEntry {
    pub name: String,
    pub f: QFunction,
    pub known_flags: KnownFlags,
    pub zero_set: ZeroSet,
    pub role: &'static str,
}

fn flags(hyperholomorphic: bool, hypermeromorphic: bool) -> KnownFlags {
    KnownFlags {
        hyperholomorphic,
        hypermeromorphic,
    }
}

fn bad(name: &str, reason: impl Into<String>) -> Error {
    Error::BadParams {
        name: name.to_string(),
        reason: reason.into(),
    }
}

fn no_params(name: &str, params: &[f64]) -> Result<()> {
    if params.is_empty() {
        Ok(())
    } else {
        Err(bad(name, "takes no parameters"))
    }
}

fn exact(name: &str, x: f64) -> Result<BigRational> {
    rat_from_f64(x).ok_or_else(|| bad(name, format!("{x} is not a finite real")))
}

pub fn builtin(name: &str, params: &[f64]) -> Result<CatalogueEntry> {
    let entry = |f: &str, known, zero_set, role| -> Result<CatalogueEntry> {
        Ok(CatalogueEntry {
            name: name.to_string(),
            f: parse_qfunction(f)?,
            known_flags: known,
            zero_set,
            role,
        })
    };
    let (base, literal) = match name.split_once(':') {
        Some((b, l)) => (b, Some(l)),
        None => (name, None),
    };
    if literal.is_some() && base != "holo" {
        return Err(Error::UnknownName(name.to_string()));
    }
    match base {
        "conj" => {
            no_params(name, params)?;
            entry("c1 ; c2", flags(true, false), ZeroSet::Origin, "conjugate pair z̄1 + z̄2 j")
        }
        "cauchy_kernel" => {
            no_params(name, params)?;
            entry(
                "c1 / (z1*c1 + z2*c2)^2 ; -c2 / (z1*c1 + z2*c2)^2",
                flags(true, false),
                ZeroSet::Empty,
                "Cauchy kernel H, hyperholomorphic outside 0",
            )
        }
        "F" => {
            no_params(name, params)?;
            entry("z1 ; c2", flags(false, false), ZeroSet::Origin, "z1 + z̄2 j, not hyperholomorphic")
        }
        "q_conj" => {
            no_params(name, params)?;
            entry("c1 ; -z2", flags(false, false), ZeroSet::Origin, "quaternion conjugate q̄")
        }
        "prop34" => {
            let (a, b) = match params {
                [] => (0.0, 0.0),
                [a, b] => (*a, *b),
                _ => return Err(bad(name, "expects two reals A,B")),
            };
            let (ea, eb) = (exact(name, a)?, exact(name, b)?);
            let f = parse_qfunction("z1 + c1 + z2 + c2 ; -z1 - c1 + z2 + c2")?;
            let zero = BigRational::from_integer(0.into());
            let shift = QFunction::constant(&exact_quat(
                num_complex::Complex::new(ea, zero.clone()),
                num_complex::Complex::new(eb, zero),
            ));
            Ok(CatalogueEntry {
                name: name.to_string(),
                f: f.add(&shift),
                known_flags: flags(true, true),
                zero_set: ZeroSet::RealPlane {
                    x1: (b - a) / 4.0,
                    x2: -(a + b) / 4.0,
                },
                role: "real linear solution family of the hypermeromorphy system",
            })
        }
        "holo" => {
            no_params(name, params)?;
            let p = parse_poly(literal.unwrap_or("z1"))?;
            if !p.is_holomorphic() {
                return Err(bad(name, format!("{p} depends on c1 or c2")));
            }
            if p.is_zero() {
                return Err(bad(name, "the zero polynomial has no zero set to declare"));
            }
            let f = QFunction::from_polys(p.clone(), ConjPoly::zero());
            let zero_set = if p.as_constant().is_some() {
                ZeroSet::Empty
            } else {
                ZeroSet::Hypersurface(p)
            };
            Ok(CatalogueEntry {
                name: name.to_string(),
                f,
                known_flags: flags(true, true),
                zero_set,
                role: "holomorphic polynomial lifted as p + 0 j",
            })
        }
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// Every built-in at its default parameters.
pub fn all() -> Vec<CatalogueEntry> {
    NAMES
        .iter()
        .map(|n| builtin(n, &[]).expect("defaults are valid"))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSetCheck {
    pub points: usize,
    /// Grid points with `|f| < threshold`.
    pub near_zeros: usize,
    /// Near-zeros off the declared set.
    pub violations: Vec<Quat64>,
}

/// Samples `|f|` on an `n⁴` grid over `[−1, 1]⁴` and reports near-zeros
/// that are not on the declared zero set. Poles are skipped.
pub fn check_zero_set(entry: &CatalogueEntry, n: usize, threshold: f64) -> ZeroSetCheck {
    assert!(n >= 2);
    let compiled = entry.f.compiled();
    let coord = |k: usize| -1.0 + 2.0 * k as f64 / (n - 1) as f64;
    let hits: Vec<Quat64> = (0..n * n)
        .into_par_iter()
        .flat_map_iter(|ab| {
            let (a, b) = (ab / n, ab % n);
            let mut local = Vec::new();
            for c in 0..n {
                for d in 0..n {
                    let q = Quat64::from_parts(coord(a), coord(b), coord(c), coord(d));
                    if let Ok(v) = compiled.eval(&q) {
                        if v.norm() < threshold {
                            local.push(q);
                        }
                    }
                }
            }
            local
        })
        .collect();
    let violations = hits
        .iter()
        .filter(|q| !entry.zero_set.contains(q, 1e-9))
        .copied()
        .collect();
    ZeroSetCheck {
        points: n.pow(4),
        near_zeros: hits.len(),
        violations,
    }
}

/// Numeric image of a holomorphic defining polynomial, for callers that
/// only need values.
pub fn defining_poly(entry: &CatalogueEntry) -> Option<NumPoly> {
    match &entry.zero_set {
        ZeroSet::Hypersurface(p) => Some(p.to_numeric()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::classify;

    #[test]
    fn flags_match_classifier() {
        for e in all().into_iter().chain([
            builtin("prop34", &[1.0, 2.0]).unwrap(),
            builtin("prop34", &[-3.0, 5.0]).unwrap(),
            builtin("holo:z1^2*z2 - 3*z2 + 1", &[]).unwrap(),
        ]) {
            let c = classify(&e.f, &[]);
            assert_eq!(c.hyperholomorphic, e.known_flags.hyperholomorphic, "{}", e.name);
            assert_eq!(c.hypermeromorphic, e.known_flags.hypermeromorphic, "{}", e.name);
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(builtin("nope", &[]), Err(Error::UnknownName(_))));
        assert!(matches!(builtin("conj:z1", &[]), Err(Error::UnknownName(_))));
        assert!(matches!(builtin("prop34", &[1.0]), Err(Error::BadParams { .. })));
        assert!(matches!(builtin("holo:c1", &[]), Err(Error::BadParams { .. })));
        assert!(matches!(builtin("conj", &[1.0]), Err(Error::BadParams { .. })));
    }

    #[test]
    fn prop34_zero_plane() {
        let e = builtin("prop34", &[0.0, 0.0]).unwrap();
        assert_eq!(e.zero_set, ZeroSet::RealPlane { x1: 0.0, x2: 0.0 });
        let q = Quat64::from_parts(0.0, 0.7, 0.0, -0.2);
        assert!(e.f.eval(&q).unwrap().norm() < 1e-15);
        let e = builtin("prop34", &[1.0, 2.0]).unwrap();
        let q = Quat64::from_parts(0.25, 0.3, -0.75, 0.1);
        assert!(e.f.eval(&q).unwrap().norm() < 1e-15);
    }

    #[test]
    fn zero_sets_on_coarse_grid() {
        for e in all() {
            let chk = check_zero_set(&e, 11, 1e-10);
            assert!(chk.violations.is_empty(), "{}: {:?}", e.name, chk.violations);
        }
    }
}
