use num_complex::Complex64;
use quatfn::catalogue::{self, CatalogueEntry};
use quatfn::currents::{
    bump, pv_1d, pv_pair, res_limit_1d, residue_pair, CurrentEstimate, Domain, EtaMode, Laurent1D,
    PairingOptions, TestForm2, TestForm3,
};
use quatfn::operators::{
    apply_d, apply_d_at, check_product_rule, check_real_product_rule, classify,
    hypermero_residuals, inverse_function, is_hypermeromorphic, product, product_compat_residuals,
    Preconditions,
};
use quatfn::symfun::{ConjRational, QFunction, QuatField};
use quatfn::Quat64;
use serde_json::{json, Map, Value};

use crate::args::{Command, DomainArg, Form2Args, Form3Args, FunctionArgs, OneDimMode, PairingArgs};
use crate::inputs::{self, Function};
use crate::report::{quat, Diagnostics, Report};
use crate::Failure;

pub const BUMP_DEFINITION: &str = "b(t) = exp(1 - 1/(1 - t^2)) for |t| < 1, else 0";

pub struct Output {
    pub name: &'static str,
    pub inputs: Value,
    pub result: Value,
    pub diagnostics: Diagnostics,
    pub exact: bool,
    /// The estimate behind a pairing, for CSV output and `--strict`.
    pub estimate: Option<CurrentEstimate>,
}

impl Output {
    fn exact(name: &'static str, inputs: Value, result: Value) -> Self {
        Self {
            name,
            inputs,
            result,
            diagnostics: Diagnostics::default(),
            exact: true,
            estimate: None,
        }
    }

    pub fn into_report(self, args: Vec<String>) -> Report {
        Report {
            command: self.name.to_string(),
            args,
            inputs: self.inputs,
            result: self.result,
            diagnostics: self.diagnostics,
            exact: self.exact,
        }
    }
}

fn function_inputs(f: &Function) -> Value {
    let mut m = Map::new();
    if let Some(e) = &f.entry {
        m.insert("name".into(), json!(e.name));
        m.insert("params".into(), json!(f.params));
    }
    m.insert("parsed".into(), json!(f.f.to_string()));
    Value::Object(m)
}

fn pair(p: &(ConjRational, ConjRational)) -> Value {
    json!([p.0.to_string(), p.1.to_string()])
}

fn lib(e: quatfn::Error) -> Failure {
    Failure::Lib(e)
}

fn mode(soft: bool) -> Preconditions {
    if soft {
        Preconditions::Soft
    } else {
        Preconditions::Strict
    }
}

fn at_value(
    at: Option<&str>,
    eval: impl Fn(&Quat64) -> quatfn::Result<Quat64>,
) -> Result<Option<(Quat64, Quat64)>, Failure> {
    match at {
        None => Ok(None),
        Some(s) => {
            let q = inputs::point(s)?;
            Ok(Some((q, eval(&q).map_err(lib)?)))
        }
    }
}

pub fn run(cmd: &Command, soft: bool) -> Result<Output, Failure> {
    match cmd {
        Command::Classify { f, partner } => run_classify(f, partner),
        Command::ApplyD { f, at } => {
            let func = inputs::function(f)?;
            let d = apply_d(&func.f);
            let mut result = json!({
                "d": d.to_string(),
                "hyperholomorphic": d.is_zero(),
            });
            let mut inputs = json!({ "function": function_inputs(&func) });
            if let Some((q, v)) = at_value(at.at.as_deref(), |q| d.eval(q))? {
                let fd = apply_d_at(&func.f, &q).map_err(lib)?;
                inputs["at"] = quat(&q);
                result["value"] = quat(&v);
                result["finite_difference"] = quat(&fd);
            }
            Ok(Output::exact("apply-d", inputs, result))
        }
        Command::Inverse { f, at } => {
            let func = inputs::function(f)?;
            let inv = inverse_function(&func.f).map_err(lib)?;
            let mut result = json!({
                "inverse": inv.to_string(),
                "hyperholomorphic": apply_d(&inv).is_zero(),
            });
            let mut inputs = json!({ "function": function_inputs(&func) });
            if let Some((q, v)) = at_value(at.at.as_deref(), |q| inv.eval(q))? {
                inputs["at"] = quat(&q);
                result["value"] = quat(&v);
            }
            Ok(Output::exact("inverse", inputs, result))
        }
        Command::ProductRule { f, partner } => {
            let func = inputs::function(f)?;
            let g = inputs::function_from(partner, None)?;
            let chk = check_product_rule(&func.f, &g.f, mode(soft)).map_err(lib)?;
            let mut result = json!({
                "residual": chk.residual.to_string(),
                "holds": chk.residual.is_zero(),
                "stated_residual": chk.stated_residual.to_string(),
                "stated_holds": chk.stated_residual.is_zero(),
            });
            let mut warnings = chk.warnings;
            if func.f.has_real_components() && g.f.has_real_components() {
                let real = check_real_product_rule(&func.f, &g.f, mode(soft)).map_err(lib)?;
                result["real_corollary"] = json!({
                    "residual": real.residual.to_string(),
                    "holds": real.residual.is_zero(),
                });
                warnings.extend(real.warnings);
            }
            let mut out = Output::exact(
                "product-rule",
                json!({ "function": function_inputs(&func), "partner": function_inputs(&g) }),
                result,
            );
            out.diagnostics.warnings = dedup(warnings);
            Ok(out)
        }
        Command::Hypermero { f, at } => {
            let func = inputs::function(f)?;
            let r = hypermero_residuals(&func.f);
            let mut result = json!({
                "residuals": pair(&r),
                "residuals_vanish": r.0.is_zero() && r.1.is_zero(),
                "hyperholomorphic": apply_d(&func.f).is_zero(),
                "hypermeromorphic": is_hypermeromorphic(&func.f),
            });
            let mut inputs = json!({ "function": function_inputs(&func) });
            if let Some(s) = at.at.as_deref() {
                let q = inputs::point(s)?;
                let (a, b) = (r.0.eval(&q).map_err(lib)?, r.1.eval(&q).map_err(lib)?);
                inputs["at"] = quat(&q);
                result["values"] = json!([[a.re, a.im], [b.re, b.im]]);
            }
            let mut out = Output::exact("hypermero", inputs, result);
            if func.f.f1().is_zero() || func.f.f2().is_zero() {
                out.diagnostics.notes.push(
                    "a component vanishes identically; the residual pair assumes f1, f2 != 0".into(),
                );
            }
            Ok(out)
        }
        Command::ProductCompat { f, partner } => {
            let func = inputs::function(f)?;
            let g = inputs::function_from(partner, None)?;
            let pc = product_compat_residuals(&func.f, &g.f, mode(soft)).map_err(lib)?;
            let direct = is_hypermeromorphic(&product(&func.f, &g.f));
            let mut out = Output::exact(
                "product-compat",
                json!({ "function": function_inputs(&func), "partner": function_inputs(&g) }),
                json!({
                    "general": pair(&pc.general),
                    "general_vanishes": pc.is_zero(),
                    "real": pc.real.as_ref().map(pair),
                    "real_vanishes": pc.real.as_ref().map(|r| r.0.is_zero() && r.1.is_zero()),
                    "product_hypermeromorphic": direct,
                }),
            );
            if pc.is_zero() != direct {
                out.diagnostics.notes.push(format!(
                    "the compatibility system ({}) and the direct check on f*g ({}) disagree",
                    pc.is_zero(),
                    direct
                ));
            }
            out.diagnostics.warnings = pc.warnings;
            Ok(out)
        }
        Command::Residue { f, phi, pairing } => run_residue(f, phi, pairing),
        Command::Pv { f, psi, pairing } => run_pv(f, psi, pairing),
        Command::Oracle1d {
            pole,
            phi,
            radius,
            center,
            mode,
            schedule,
            n_theta,
        } => run_oracle(*pole, phi, *radius, center.as_deref(), *mode, schedule, *n_theta),
        Command::Catalogue { function, params } => run_catalogue(function.as_deref(), params.as_deref()),
    }
}

fn dedup(mut v: Vec<String>) -> Vec<String> {
    let mut seen = std::collections::HashSet::new();
    v.retain(|s| seen.insert(s.clone()));
    v
}

fn run_classify(f: &FunctionArgs, partners: &[String]) -> Result<Output, Failure> {
    let func = inputs::function(f)?;
    let partners: Vec<Function> = partners
        .iter()
        .map(|p| inputs::function_from(p, None))
        .collect::<Result<_, _>>()?;
    let fs: Vec<QFunction> = partners.iter().map(|p| p.f.clone()).collect();
    let c = classify(&func.f, &fs);
    let mut result = json!({
        "hyperholomorphic": c.hyperholomorphic,
        "hypermeromorphic": c.hypermeromorphic,
        "inverse_hyperholomorphic": c.inverse_hyperholomorphic,
        "d": c.d.to_string(),
        "hypermero_residuals": pair(&c.residuals),
    });
    if !partners.is_empty() {
        result["hyperalgebraic_with_partners"] = json!(c.hyperalgebraic_with_all());
        result["closure"] = json!(c
            .closure
            .iter()
            .map(|r| json!({
                "partner": r.partner,
                "sum_hypermeromorphic": r.sum_hypermeromorphic,
                "product_hypermeromorphic": r.product_hypermeromorphic,
            }))
            .collect::<Vec<_>>());
    }
    if let Some(e) = &func.entry {
        result["known"] = json!({
            "hyperholomorphic": e.known_flags.hyperholomorphic,
            "hypermeromorphic": e.known_flags.hypermeromorphic,
        });
    }
    let mut out = Output::exact(
        "classify",
        json!({
            "function": function_inputs(&func),
            "partners": partners.iter().map(function_inputs).collect::<Vec<_>>(),
        }),
        result,
    );
    out.diagnostics.notes = c.notes;
    Ok(out)
}

struct Pairing {
    opts: PairingOptions,
    inputs: Value,
}

fn pairing_setup(
    p: &PairingArgs,
    support: f64,
    defaults: (usize, usize),
    residue: bool,
) -> Result<Pairing, Failure> {
    let (n_eta, n_xi) = (p.n_eta.unwrap_or(defaults.0), p.n_xi.unwrap_or(defaults.1));
    let rule = inputs::rule(n_eta, n_xi)?;
    let schedule = inputs::schedule(&p.schedule, support)?;
    let domain_arg = p
        .domain
        .unwrap_or(if residue { DomainArg::Level } else { DomainArg::Metric });
    let base = if residue {
        PairingOptions::residue(rule, schedule.clone())
    } else {
        PairingOptions::principal_value(rule, schedule.clone())
    };
    let opts = base.with_domain(inputs::domain(domain_arg));
    let inputs = json!({
        "schedule": {
            "name": p.schedule,
            "eps0": schedule.eps0,
            "ratio": schedule.ratio,
            "count": schedule.count,
        },
        "rule": {
            "n_eta": n_eta,
            "n_xi": n_xi,
            "eta": match opts.eta { EtaMode::Fixed => "fixed", EtaMode::Adaptive => "adaptive" },
            "tol": opts.tol,
        },
        "domain": match opts.domain { Domain::MetricBall => "metric", Domain::LevelSet => "level" },
        "R": p.radius,
        "center": quat(&inputs::center(p.center.as_deref())?),
        "bump": BUMP_DEFINITION,
    });
    Ok(Pairing { opts, inputs })
}

fn pairing_output(name: &'static str, func: &Function, form: Value, setup: Pairing, est: CurrentEstimate) -> Output {
    let mut inputs = setup.inputs;
    inputs["function"] = function_inputs(func);
    inputs["test_form"] = form;
    let last = est.values.last().copied().unwrap_or_else(Quat64::zero);
    let mut diagnostics = Diagnostics::from_estimate(&est);
    if func.entry.as_ref().is_some_and(|e| {
        !matches!(e.zero_set, catalogue::ZeroSet::Origin)
    }) {
        diagnostics
            .notes
            .push("the declared zero set is not {0}; the pairing assumes an isolated zero at the origin".into());
    }
    Output {
        name,
        inputs,
        result: json!({
            "value": quat(&est.extrapolated),
            "last": quat(&last),
            "converged": est.converged,
        }),
        diagnostics,
        exact: false,
        estimate: Some(est),
    }
}

fn run_residue(f: &FunctionArgs, phi: &Form2Args, p: &PairingArgs) -> Result<Output, Failure> {
    let func = inputs::function(f)?;
    let c = inputs::center(p.center.as_deref())?;
    let coef = |s: &Option<String>| inputs::coefficient(s.as_deref(), c, p.radius);
    let form = TestForm2 {
        phi11: coef(&phi.phi11)?,
        phi12: coef(&phi.phi12)?,
        phi21: coef(&phi.phi21)?,
        phi22: coef(&phi.phi22)?,
    };
    if form.is_zero() {
        return Err(Failure::Usage("give at least one of --phi11, --phi12, --phi21, --phi22".into()));
    }
    let setup = pairing_setup(p, form.support_radius(), (8, 16), true)?;
    let est = residue_pair(&func.f, &form, &setup.opts).map_err(lib)?;
    let described = json!({
        "phi11": form.phi11.describe(),
        "phi12": form.phi12.describe(),
        "phi21": form.phi21.describe(),
        "phi22": form.phi22.describe(),
    });
    Ok(pairing_output("residue", &func, described, setup, est))
}

fn run_pv(f: &FunctionArgs, psi: &Form3Args, p: &PairingArgs) -> Result<Output, Failure> {
    let func = inputs::function(f)?;
    let c = inputs::center(p.center.as_deref())?;
    let form = TestForm3 {
        psi1: inputs::coefficient(psi.psi1.as_deref(), c, p.radius)?,
        psi2: inputs::coefficient(psi.psi2.as_deref(), c, p.radius)?,
    };
    if form.is_zero() {
        return Err(Failure::Usage("give at least one of --psi1, --psi2".into()));
    }
    let setup = pairing_setup(p, form.support_radius(), (12, 24), false)?;
    let est = pv_pair(&func.f, &form, &setup.opts).map_err(lib)?;
    let described = json!({
        "psi1": form.psi1.describe(),
        "psi2": form.psi2.describe(),
    });
    Ok(pairing_output("pv", &func, described, setup, est))
}

fn run_oracle(
    pole: usize,
    phi: &str,
    radius: f64,
    center: Option<&str>,
    mode: OneDimMode,
    schedule: &str,
    n_theta: usize,
) -> Result<Output, Failure> {
    if pole == 0 {
        return Err(Failure::Usage("--pole must be at least 1".into()));
    }
    if n_theta < 8 {
        return Err(Failure::Usage("--n-theta must be at least 8".into()));
    }
    let c = match center {
        None => Complex64::new(0.0, 0.0),
        Some(s) => match inputs::reals(s, "--center")?[..] {
            [x, y] => Complex64::new(x, y),
            _ => return Err(Failure::Usage("--center takes x,y in one variable".into())),
        },
    };
    let test = inputs::test_function_1d(phi, c, radius)?;
    let sched = inputs::schedule(schedule, test.support_radius())?;
    let g = Laurent1D::pole(pole);
    let est = match mode {
        OneDimMode::Residue => res_limit_1d(&g, &test, &sched, n_theta),
        OneDimMode::Pv => pv_1d(&g, &test, &sched, n_theta),
    }
    .map_err(lib)?;
    let b: Vec<[f64; 2]> = (0..pole).map(|j| g.b(j)).map(|z| [z.re, z.im]).collect();
    let inputs = json!({
        "g": format!("z^-{pole}"),
        "phi": phi,
        "R": radius,
        "center": [c.re, c.im],
        "mode": match mode { OneDimMode::Residue => "residue", OneDimMode::Pv => "pv" },
        "schedule": { "name": schedule, "eps0": sched.eps0, "ratio": sched.ratio, "count": sched.count },
        "n_theta": n_theta,
        "bump": BUMP_DEFINITION,
        "bump_at_zero": bump(0.0),
    });
    let z = est.extrapolated.z1;
    Ok(Output {
        name: "oracle-1d",
        inputs,
        result: json!({
            "value": [z.re, z.im],
            "converged": est.converged,
            "residue_coefficients": b,
        }),
        diagnostics: Diagnostics::from_estimate(&est),
        exact: false,
        estimate: Some(est),
    })
}

fn entry_json(e: &CatalogueEntry) -> Value {
    json!({
        "name": e.name,
        "function": e.f.to_string(),
        "hyperholomorphic": e.known_flags.hyperholomorphic,
        "hypermeromorphic": e.known_flags.hypermeromorphic,
        "zero_set": e.zero_set.describe(),
        "role": e.role,
    })
}

fn run_catalogue(function: Option<&str>, params: Option<&str>) -> Result<Output, Failure> {
    let entries: Vec<Value> = match function {
        Some(name) => {
            let f = inputs::function_from(name, params)?;
            match f.entry {
                Some(e) => vec![entry_json(&e)],
                None => return Err(Failure::Usage("catalogue --function takes a name, not a literal".into())),
            }
        }
        None => catalogue::all().iter().map(entry_json).collect(),
    };
    Ok(Output::exact(
        "catalogue",
        json!({ "function": function, "params": params }),
        json!({ "entries": entries, "names": catalogue::NAMES }),
    ))
}
