use num_complex::Complex64;
use quatfn::catalogue::{builtin, CatalogueEntry};
use quatfn::currents::{
    build_quadrature, Coefficient, Domain, EpsilonSchedule, QuadratureRule, TestFunction1D,
};
use quatfn::symfun::{coeff_to_c64, parse_qfunction, parse_test_polynomial, QFunction};
use quatfn::Quat64;

use crate::args::{DomainArg, FunctionArgs};
use crate::Failure;

pub fn reals(src: &str, what: &str) -> Result<Vec<f64>, Failure> {
    src.split(',')
        .map(|s| {
            let t = s.trim();
            t.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Failure::Usage(format!("{what}: `{t}` is not a finite real number")))
        })
        .collect()
}

pub fn point(src: &str) -> Result<Quat64, Failure> {
    match reals(src, "point")?[..] {
        [x1, y1, x2, y2] => Ok(Quat64::from_parts(x1, y1, x2, y2)),
        _ => Err(Failure::Usage(format!(
            "point `{src}` must have four comma-separated reals x1,y1,x2,y2"
        ))),
    }
}

/// A function given by name or as a literal, with what to echo for it.
pub struct Function {
    pub f: QFunction,
    pub entry: Option<CatalogueEntry>,
    pub params: Vec<f64>,
}

pub fn function(args: &FunctionArgs) -> Result<Function, Failure> {
    function_from(&args.function, args.params.as_deref())
}

pub fn function_from(src: &str, params: Option<&str>) -> Result<Function, Failure> {
    let params = match params {
        Some(p) => reals(p, "--params")?,
        None => Vec::new(),
    };
    if src.contains(';') {
        if !params.is_empty() {
            return Err(Failure::Usage("--params only applies to catalogue names".into()));
        }
        let f = parse_qfunction(src).map_err(|e| Failure::Usage(format!("function `{src}`: {e}")))?;
        return Ok(Function {
            f,
            entry: None,
            params,
        });
    }
    let entry = builtin(src, &params).map_err(|e| {
        Failure::Usage(format!(
            "{e}; use a catalogue name (see `quatfn catalogue`) or a literal `F1 ; F2`"
        ))
    })?;
    Ok(Function {
        f: entry.f.clone(),
        entry: Some(entry),
        params,
    })
}

pub fn center(src: Option<&str>) -> Result<Quat64, Failure> {
    src.map_or(Ok(Quat64::zero()), point)
}

pub fn coefficient(src: Option<&str>, center: Quat64, radius: f64) -> Result<Coefficient, Failure> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Failure::Usage(format!("--R must be positive, got {radius}")));
    }
    match src {
        None => Ok(Coefficient::zero()),
        Some(s) => Coefficient::parse(s, center, radius)
            .map_err(|e| Failure::Usage(format!("test-form coefficient `{s}`: {e}"))),
    }
}

pub fn schedule(src: &str, support: f64) -> Result<EpsilonSchedule, Failure> {
    let bad = |e: quatfn::Error| Failure::Usage(format!("--schedule: {e}"));
    match src {
        "default" => Ok(EpsilonSchedule::default_for(support)),
        "1d" => Ok(EpsilonSchedule::one_dimensional(support)),
        custom => match reals(custom, "--schedule")?[..] {
            [eps0, ratio, count] if count >= 1.0 && count.fract() == 0.0 => {
                EpsilonSchedule::new(eps0, ratio, count as usize).map_err(bad)
            }
            _ => Err(Failure::Usage(
                "--schedule must be `default`, `1d` or `eps0,ratio,count`".into(),
            )),
        },
    }
}

pub fn rule(n_eta: usize, n_xi: usize) -> Result<QuadratureRule, Failure> {
    build_quadrature(n_eta, n_xi).map_err(|e| Failure::Usage(e.to_string()))
}

pub fn domain(d: DomainArg) -> Domain {
    match d {
        DomainArg::Metric => Domain::MetricBall,
        DomainArg::Level => Domain::LevelSet,
    }
}

/// A one-variable test function from a polynomial in `z1` and `c1`.
pub fn test_function_1d(src: &str, center: Complex64, radius: f64) -> Result<TestFunction1D, Failure> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Failure::Usage(format!("--R must be positive, got {radius}")));
    }
    let p = parse_test_polynomial(src).map_err(|e| Failure::Usage(format!("--phi `{src}`: {e}")))?;
    let mut terms = Vec::new();
    for (e, c) in p.terms() {
        if e[2] != 0 || e[3] != 0 {
            return Err(Failure::Usage(format!(
                "--phi `{src}` may only use z1 and c1 in one variable"
            )));
        }
        terms.push((e[0], e[1], coeff_to_c64(c)));
    }
    Ok(TestFunction1D {
        terms,
        center,
        radius,
    })
}
