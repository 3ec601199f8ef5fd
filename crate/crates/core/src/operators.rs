//! The modified Cauchy-Fueter operator `D = ½(∂/∂z̄1 + j ∂/∂z̄2)`, function
//! inversion and products, and the PDE systems that classify hyperholomorphic,
//! hypermeromorphic and hyperalgebraic functions.
//!
//! Every identity here is decided exactly: a residual counts as zero only when
//! its numerator is the zero polynomial.

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::qcore::{Quat, Quat64};
use crate::symfun::{
    numeric_jet_richardson, rat, ConjRational, QFunction, QuatField, Var, WirtingerJet,
};

/// Step used by [`apply_d_at`] (with one Richardson refinement).
pub const POINTWISE_STEP: f64 = 1e-3;

/// Whether precondition failures abort or are recorded and skipped past.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Preconditions {
    #[default]
    Strict,
    Soft,
}

/// `Df = d1 + d2·j`, exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct DResult {
    pub d1: ConjRational,
    pub d2: ConjRational,
}

impl DResult {
    /// Both numerators are the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.d1.is_zero() && self.d2.is_zero()
    }

    pub fn to_qfunction(&self) -> QFunction {
        QFunction::new(self.d1.clone(), self.d2.clone())
    }

    pub fn eval(&self, q: &Quat64) -> Result<Quat64> {
        Ok(Quat64::new(self.d1.eval(q)?, self.d2.eval(q)?))
    }
}

impl fmt::Display for DResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ; {}", self.d1, self.d2)
    }
}

fn half() -> BigRational {
    rat(1, 2)
}

/// The two expressions whose simultaneous vanishing characterizes
/// hyperholomorphy: `∂f1/∂z̄1 − ∂f̄2/∂z2` and `∂f1/∂z̄2 + ∂f̄2/∂z1`.
pub fn characterization(f: &QFunction) -> (ConjRational, ConjRational) {
    let f1 = f.f1();
    let f2b = f.f2().conjugate();
    (
        f1.derive(Var::Zb1).sub(&f2b.derive(Var::Z2)),
        f1.derive(Var::Zb2).add(&f2b.derive(Var::Z1)),
    )
}

/// Exact `Df`.
///
/// The `j`-part of `D` is `½ j (∂f1/∂z̄2 + ∂f̄2/∂z1)`; moving `j` to the right
/// conjugates the bracket, so `d2 = ½ (∂f2/∂z̄1 + ∂f̄1/∂z2)`.
pub fn apply_d(f: &QFunction) -> DResult {
    let (c1, c2) = characterization(f);
    DResult {
        d1: c1.scale_real(&half()),
        d2: c2.conjugate().scale_real(&half()),
    }
}

/// `Df(q)` from a jet, straight from the definition
/// `½(∂f/∂z̄1 + j·∂f/∂z̄2)`.
pub fn d_from_jet(jet: &WirtingerJet) -> Quat64 {
    let a = Quat64::new(jet.partial(1, Var::Zb1), jet.partial(2, Var::Zb1));
    let b = Quat64::new(jet.partial(1, Var::Zb2), jet.partial(2, Var::Zb2));
    (a + Quat64::j() * b).scale(0.5)
}

/// Pointwise `Df(q)` from finite differences of the values of `f`; works for
/// samplers and gives an independent check on [`apply_d`].
pub fn apply_d_at<F: QuatField + ?Sized>(f: &F, q: &Quat64) -> Result<Quat64> {
    let jet = numeric_jet_richardson(f, q, POINTWISE_STEP)?;
    Ok(d_from_jet(&jet))
}

/// Right inverse `1/f = |f|⁻¹(f̄1 − f2·j)` with `|f| = f1 f̄1 + f2 f̄2`.
pub fn inverse_function(f: &QFunction) -> Result<QFunction> {
    if f.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let m = f.modulus_sq();
    Ok(QFunction::new(
        f.f1().conjugate().div_real(&m)?,
        f.f2().neg().div_real(&m)?,
    ))
}

/// Right product `f * g`.
pub fn product(f: &QFunction, g: &QFunction) -> QFunction {
    f.mul(g)
}

fn dresult_sub(a: &DResult, b: &QFunction) -> DResult {
    DResult {
        d1: a.d1.sub(b.f1()),
        d2: a.d2.sub(b.f2()),
    }
}

/// Result of a product-rule check; `residual` is zero when the identity holds.
#[derive(Clone, Debug)]
pub struct ProductRuleCheck {
    pub residual: DResult,
    /// Residual of the textbook form
    /// `Df*j*g + ½(f ∂g/∂z̄1 + f̄ j ∂g/∂z̄2)`; reported, not asserted.
    pub stated_residual: DResult,
    pub warnings: Vec<String>,
}

fn require_hyperholomorphic(
    f: &QFunction,
    label: &str,
    mode: Preconditions,
    warnings: &mut Vec<String>,
) -> Result<()> {
    if apply_d(f).is_zero() {
        return Ok(());
    }
    match mode {
        Preconditions::Strict => Err(Error::NotHyperholomorphic(label.to_string())),
        Preconditions::Soft => {
            warnings.push(format!("{label} is not hyperholomorphic"));
            Ok(())
        }
    }
}

/// The Leibniz remainder `2[D(f*g) − (Df)*g]`:
/// `f1 ∂g/∂z̄1 + f2 j ∂g/∂z1 + f̄1 j ∂g/∂z̄2 − f̄2 ∂g/∂z2`.
///
/// The `z1` and `z2` derivatives appear where `i` or `j` in `D` pass
/// through the components of `f`.
pub fn leibniz_remainder(f: &QFunction, g: &QFunction) -> QFunction {
    let lift = |c: &ConjRational| QFunction::new(c.clone(), ConjRational::zero());
    let f2j = QFunction::new(ConjRational::zero(), f.f2().clone());
    let f1bj = QFunction::new(ConjRational::zero(), f.f1().conjugate());
    lift(f.f1())
        .mul(&g.derive(Var::Zb1))
        .add(&f2j.mul(&g.derive(Var::Z1)))
        .add(&f1bj.mul(&g.derive(Var::Zb2)))
        .sub(&lift(&f.f2().conjugate()).mul(&g.derive(Var::Z2)))
}

/// `D(f*g) − [ (Df)*g + ½ L(f, g) ]` with `L` from [`leibniz_remainder`].
pub fn check_product_rule(
    f: &QFunction,
    g: &QFunction,
    mode: Preconditions,
) -> Result<ProductRuleCheck> {
    let mut warnings = Vec::new();
    require_hyperholomorphic(f, "f", mode, &mut warnings)?;
    require_hyperholomorphic(g, "g", mode, &mut warnings)?;
    let lhs = apply_d(&product(f, g));
    let first = apply_d(f).to_qfunction().mul(g);
    let second = leibniz_remainder(f, g).scale_real(&half());
    let j = QFunction::constant(&Quat::j());
    let stated = apply_d(f)
        .to_qfunction()
        .mul(&j)
        .mul(g)
        .add(
            &f.mul(&g.derive(Var::Zb1))
                .add(&f.conj_components().mul(&j).mul(&g.derive(Var::Zb2)))
                .scale_real(&half()),
        );
    Ok(ProductRuleCheck {
        residual: dresult_sub(&lhs, &first.add(&second)),
        stated_residual: dresult_sub(&lhs, &stated),
        warnings,
    })
}

/// For real-component `f, g`: `D(f*g) − ((Df)*g + f*Dg)`.
pub fn check_real_product_rule(
    f: &QFunction,
    g: &QFunction,
    mode: Preconditions,
) -> Result<ProductRuleCheck> {
    let mut warnings = Vec::new();
    for (h, label) in [(f, "f"), (g, "g")] {
        if !h.has_real_components() {
            match mode {
                Preconditions::Strict => {
                    return Err(Error::BadParams {
                        name: label.to_string(),
                        reason: "components are not real-valued".into(),
                    })
                }
                Preconditions::Soft => warnings.push(format!("{label} has non-real components")),
            }
        }
        require_hyperholomorphic(h, label, mode, &mut warnings)?;
    }
    let lhs = apply_d(&product(f, g));
    let rhs = apply_d(f)
        .to_qfunction()
        .mul(g)
        .add(&f.mul(&apply_d(g).to_qfunction()));
    let residual = dresult_sub(&lhs, &rhs);
    Ok(ProductRuleCheck {
        stated_residual: residual.clone(),
        residual,
        warnings,
    })
}

/// Left-hand sides of the two equations that, for hyperholomorphic `f`,
/// characterize hyperholomorphy of `1/f`:
///
/// ```text
/// (f̄1 − f1) ∂f̄1/∂z1 − f̄2 ∂f2/∂z1 − f2 ∂f̄1/∂z̄2
/// f̄2 ∂f1/∂z1 + ∂f̄2/∂z1 (f̄1 − f1) − f2 ∂f̄2/∂z̄2
/// ```
pub fn hypermero_residuals(f: &QFunction) -> (ConjRational, ConjRational) {
    let f1 = f.f1();
    let f2 = f.f2();
    let f1b = f1.conjugate();
    let f2b = f2.conjugate();
    let diff = f1b.sub(f1);
    let first = diff
        .mul(&f1b.derive(Var::Z1))
        .sub(&f2b.mul(&f2.derive(Var::Z1)))
        .sub(&f2.mul(&f1b.derive(Var::Zb2)));
    let second = f2b
        .mul(&f1.derive(Var::Z1))
        .add(&f2b.derive(Var::Z1).mul(&diff))
        .sub(&f2.mul(&f2b.derive(Var::Zb2)));
    (first, second)
}

/// Hyperholomorphic with both residuals of [`hypermero_residuals`] zero.
pub fn is_hypermeromorphic(f: &QFunction) -> bool {
    if !apply_d(f).is_zero() {
        return false;
    }
    let (a, b) = hypermero_residuals(f);
    a.is_zero() && b.is_zero()
}

#[derive(Clone, Debug)]
pub struct ProductCompat {
    /// The general two-equation system.
    pub general: (ConjRational, ConjRational),
    /// The specialized system, present when all four components are real.
    pub real: Option<(ConjRational, ConjRational)>,
    pub warnings: Vec<String>,
}

impl ProductCompat {
    pub fn is_zero(&self) -> bool {
        self.general.0.is_zero() && self.general.1.is_zero()
    }
}

/// General system for `f * g` to stay hypermeromorphic:
///
/// ```text
/// g1(∂f1/∂z̄1 + ∂f̄2/∂z2) + (f1 − f̄1)∂g1/∂z̄1 + f̄2 ∂g1/∂z2 − f2 ∂ḡ2/∂z̄1
/// g1(∂f1/∂z̄2 − ∂f̄2/∂z1) + (f1 − f̄1)∂g1/∂z̄2 − f̄2 ∂g1/∂z1 − f2 ∂ḡ2/∂z̄2
/// ```
pub fn product_compat_general(f: &QFunction, g: &QFunction) -> (ConjRational, ConjRational) {
    let (f1, f2, g1) = (f.f1(), f.f2(), g.f1());
    let f1b = f1.conjugate();
    let f2b = f2.conjugate();
    let g2b = g.f2().conjugate();
    let diff = f1.sub(&f1b);
    let e1 = g1
        .mul(&f1.derive(Var::Zb1).add(&f2b.derive(Var::Z2)))
        .add(&diff.mul(&g1.derive(Var::Zb1)))
        .add(&f2b.mul(&g1.derive(Var::Z2)))
        .sub(&f2.mul(&g2b.derive(Var::Zb1)));
    let e2 = g1
        .mul(&f1.derive(Var::Zb2).sub(&f2b.derive(Var::Z1)))
        .add(&diff.mul(&g1.derive(Var::Zb2)))
        .sub(&f2b.mul(&g1.derive(Var::Z1)))
        .sub(&f2.mul(&g2b.derive(Var::Zb2)));
    (e1, e2)
}

/// The same system written for real components (`f̄i = fi`, `ḡi = gi`).
pub fn product_compat_real(f: &QFunction, g: &QFunction) -> (ConjRational, ConjRational) {
    let (f1, f2, g1, g2) = (f.f1(), f.f2(), g.f1(), g.f2());
    let e1 = g1
        .mul(&f1.derive(Var::Zb1).add(&f2.derive(Var::Z2)))
        .add(&f2.mul(&g1.derive(Var::Z2)))
        .sub(&f2.mul(&g2.derive(Var::Zb1)));
    let e2 = g1
        .mul(&f1.derive(Var::Zb2).sub(&f2.derive(Var::Z1)))
        .sub(&f2.mul(&g1.derive(Var::Z1)))
        .sub(&f2.mul(&g2.derive(Var::Zb2)));
    (e1, e2)
}

pub fn product_compat_residuals(
    f: &QFunction,
    g: &QFunction,
    mode: Preconditions,
) -> Result<ProductCompat> {
    let mut warnings = Vec::new();
    for (h, label) in [(f, "f"), (g, "g")] {
        if !is_hypermeromorphic(h) {
            match mode {
                Preconditions::Strict => return Err(Error::NotHypermeromorphic(label.into())),
                Preconditions::Soft => warnings.push(format!("{label} is not hypermeromorphic")),
            }
        }
    }
    let real = (f.has_real_components() && g.has_real_components())
        .then(|| product_compat_real(f, g));
    Ok(ProductCompat {
        general: product_compat_general(f, g),
        real,
        warnings,
    })
}

/// Closure of `f` with one partner under sum and product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub partner: String,
    pub sum_hypermeromorphic: bool,
    pub product_hypermeromorphic: bool,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub hyperholomorphic: bool,
    /// Hyperholomorphic and both residuals vanish identically.
    pub hypermeromorphic: bool,
    pub d: DResult,
    /// The pair from [`hypermero_residuals`].
    pub residuals: (ConjRational, ConjRational),
    /// Exact hyperholomorphy of `1/f`, decided on `D(1/f)` directly.
    pub inverse_hyperholomorphic: Option<bool>,
    pub closure: Vec<ClosureReport>,
    pub notes: Vec<String>,
}

impl Classification {
    /// Partners with which both sum and product stay hypermeromorphic.
    pub fn hyperalgebraic_with_all(&self) -> bool {
        self.hypermeromorphic
            && self
                .closure
                .iter()
                .all(|c| c.sum_hypermeromorphic && c.product_hypermeromorphic)
    }

    /// The classification flags only, for comparisons.
    pub fn flags(&self) -> (bool, bool) {
        (self.hyperholomorphic, self.hypermeromorphic)
    }
}

pub fn classify(f: &QFunction, partners: &[QFunction]) -> Classification {
    let d = apply_d(f);
    let hyperholomorphic = d.is_zero();
    let residuals = hypermero_residuals(f);
    let residuals_vanish = residuals.0.is_zero() && residuals.1.is_zero();
    let hypermeromorphic = hyperholomorphic && residuals_vanish;
    let mut notes = Vec::new();

    let inverse_hyperholomorphic = inverse_function(f).ok().map(|g| apply_d(&g).is_zero());
    if let Some(inv) = inverse_hyperholomorphic {
        if hyperholomorphic && inv != residuals_vanish {
            notes.push(format!(
                "residual test ({}) disagrees with direct D(1/f) test ({})",
                residuals_vanish, inv
            ));
        }
    }
    if f.f1().is_zero() || f.f2().is_zero() {
        notes.push("a component vanishes identically; residual system derived for f1, f2 != 0".into());
    }

    let closure = partners
        .iter()
        .map(|g| ClosureReport {
            partner: g.to_string(),
            sum_hypermeromorphic: is_hypermeromorphic(&f.add(g)),
            product_hypermeromorphic: is_hypermeromorphic(&product(f, g)),
        })
        .collect();

    Classification {
        hyperholomorphic,
        hypermeromorphic,
        d,
        residuals,
        inverse_hyperholomorphic,
        closure,
        notes,
    }
}

/// `α f` for real `α`, with the check that both residuals scale by `α²`.
#[derive(Clone, Debug)]
pub struct Scaled {
    pub function: QFunction,
    pub residuals_scale_quadratically: bool,
    pub classification_preserved: bool,
}

pub fn scale_real(f: &QFunction, alpha: &BigRational) -> Scaled {
    let g = f.scale_real(alpha);
    let (a, b) = hypermero_residuals(f);
    let (ga, gb) = hypermero_residuals(&g);
    let a2 = alpha * alpha;
    let quad = ga.equals(&a.scale_real(&a2)) && gb.equals(&b.scale_real(&a2));
    let preserved = if alpha == &BigRational::from_integer(0.into()) {
        true
    } else {
        classify(&g, &[]).flags() == classify(f, &[]).flags()
    };
    Scaled {
        function: g,
        residuals_scale_quadratically: quad,
        classification_preserved: preserved,
    }
}

/// Evaluates a residual pair at a point.
pub fn eval_pair(pair: &(ConjRational, ConjRational), q: &Quat64) -> Result<(Complex64, Complex64)> {
    Ok((pair.0.eval(q)?, pair.1.eval(q)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::{int, parse_qfunction};

    fn qf(s: &str) -> QFunction {
        parse_qfunction(s).unwrap()
    }

    #[test]
    fn d_of_conj_vanishes() {
        assert!(apply_d(&qf("c1 ; c2")).is_zero());
    }

    #[test]
    fn d_of_f_is_minus_half() {
        let d = apply_d(&qf("z1 ; c2"));
        assert!(d.d1.equals(&crate::symfun::parse_rational("-1/2").unwrap()));
        assert!(d.d2.is_zero());
    }

    #[test]
    fn d_of_cauchy_kernel_vanishes() {
        let h = qf("c1 / (z1*c1 + z2*c2)^2 ; -c2 / (z1*c1 + z2*c2)^2");
        assert!(apply_d(&h).is_zero());
    }

    #[test]
    fn d_component_convention_matches_definition() {
        let f = qf("z1*c2 + c1^2 ; (2+i)*c1*z2 + z1*c1");
        let d = apply_d(&f);
        for q in [Quat64::from_parts(0.3, -0.2, 0.7, 0.1), Quat64::from_parts(-1.0, 0.5, 0.2, 0.9)] {
            let exact = d.eval(&q).unwrap();
            let from_def = d_from_jet(&f.symbolic_jet(&q).unwrap());
            assert!((exact - from_def).norm() < 1e-13, "{exact:?} vs {from_def:?}");
        }
    }

    #[test]
    fn inverse_of_conj() {
        let g = inverse_function(&qf("c1 ; c2")).unwrap();
        let expected = qf("z1 / (z1*c1 + z2*c2) ; -c2 / (z1*c1 + z2*c2)");
        assert!(g.equals(&expected));
        assert!(!apply_d(&g).is_zero());
        let one = inverse_function(&qf("1")).unwrap();
        assert!(one.equals(&qf("1")));
        assert_eq!(inverse_function(&QFunction::zero()), Err(Error::IdenticallyZero));
    }

    #[test]
    fn products() {
        let j = qf("0 ; 1");
        assert!(product(&j, &j).equals(&qf("-1")));
        let p = product(&qf("z1 ; c2"), &qf("c1 ; -c2"));
        assert!(p.equals(&qf("z1*c1 + z2*c2")));
    }

    #[test]
    fn residuals_of_conj() {
        let (e3, e4) = hypermero_residuals(&qf("c1 ; c2"));
        assert!(e3.equals(&crate::symfun::parse_rational("z1 - c1").unwrap()));
        assert!(e4.is_zero());
        let v = e3.eval(&Quat64::from_parts(0.0, 1.0, 1.0, 0.0)).unwrap();
        assert!((v - Complex64::new(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn residuals_of_holomorphic_and_prop34() {
        let (a, b) = hypermero_residuals(&qf("z1"));
        assert!(a.is_zero() && b.is_zero());
        let f = qf("z1 + c1 + z2 + c2 + 1 ; -z1 - c1 + z2 + c2 + 2");
        let (a, b) = hypermero_residuals(&f);
        assert!(a.is_zero() && b.is_zero());
    }

    #[test]
    fn product_rule_preconditions() {
        let f = qf("z1 ; c2");
        let g = qf("c1 ; c2");
        assert!(matches!(
            check_product_rule(&f, &g, Preconditions::Strict),
            Err(Error::NotHyperholomorphic(_))
        ));
        let soft = check_product_rule(&f, &g, Preconditions::Soft).unwrap();
        assert_eq!(soft.warnings.len(), 1);
    }

    #[test]
    fn product_rule_on_conj_pair() {
        let g = qf("c1 ; c2");
        let r = check_product_rule(&g, &g, Preconditions::Strict).unwrap();
        assert!(r.residual.is_zero());
        assert!(r.stated_residual.d1.is_zero());
        assert!(r.stated_residual.d2.equals(&crate::symfun::parse_rational("(z2/2 - c2/2)").unwrap()));
        let h1 = qf("z1^2 + z2");
        let h2 = qf("z1*z2 - 3");
        assert!(check_product_rule(&h1, &h2, Preconditions::Strict).unwrap().residual.is_zero());
    }

    #[test]
    fn leibniz_identity_without_preconditions() {
        let f = qf("z1*c2 + 2 ; (1+i)*c1^2 - z2");
        let g = qf("c1*z2 - 3i ; z1*z2*c2");
        let r = check_product_rule(&f, &g, Preconditions::Soft).unwrap();
        assert_eq!(r.warnings.len(), 2);
        assert!(r.residual.is_zero(), "{}", r.residual);
    }

    #[test]
    fn real_corollary_on_linear_family() {
        // f1, f2 real, hyperholomorphic: beta2 = conj(alpha1), beta1 = -conj(alpha2)
        let f = qf("(1+2i)*z1 + (1-2i)*c1 + (3-i)*z2 + (3+i)*c2 + 5 ; (-3-i)*z1 + (-3+i)*c1 + (1-2i)*z2 + (1+2i)*c2 - 1");
        let g = qf("z1 + c1 + z2 + c2 + 1 ; -z1 - c1 + z2 + c2 + 2");
        assert!(apply_d(&f).is_zero() && apply_d(&g).is_zero());
        let r = check_real_product_rule(&f, &g, Preconditions::Strict).unwrap();
        assert!(r.residual.is_zero(), "{}", r.residual);
    }

    #[test]
    fn compat_for_holomorphic_pair_vanishes() {
        let c = product_compat_residuals(&qf("z1^2"), &qf("z1 + z2"), Preconditions::Strict).unwrap();
        assert!(c.is_zero());
        assert!(c.real.is_none());
        assert!(matches!(
            product_compat_residuals(&qf("c1 ; c2"), &qf("z1"), Preconditions::Strict),
            Err(Error::NotHypermeromorphic(_))
        ));
    }

    #[test]
    fn scaling_residuals_quadratically() {
        let s = scale_real(&qf("c1 ; c2"), &int(3));
        assert!(s.residuals_scale_quadratically);
        let (e3, _) = hypermero_residuals(&s.function);
        assert!(e3.equals(&crate::symfun::parse_rational("9*z1 - 9*c1").unwrap()));
        let z = scale_real(&qf("c1 ; c2"), &int(0));
        assert!(z.function.is_zero());
        let (a, b) = hypermero_residuals(&z.function);
        assert!(a.is_zero() && b.is_zero());
    }

    #[test]
    fn classify_examples() {
        let c = classify(&qf("z1"), &[]);
        assert_eq!(c.flags(), (true, true));
        let c = classify(&qf("z1 ; c2"), &[]);
        assert!(!c.hyperholomorphic);
        let c = classify(&qf("z1 + c1 + z2 + c2 + 1 ; -z1 - c1 + z2 + c2 + 2"), &[]);
        assert_eq!(c.flags(), (true, true));
        assert_eq!(c.inverse_hyperholomorphic, Some(true));
    }
}
