use std::fmt;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use num_rational::BigRational;

use super::poly::{Coeff, ConjPoly, ExactPoint, NumPoly, Var};
use super::rational::{ConjRational, POLE_FLOOR};
use crate::error::{Error, Result};
use crate::qcore::{Quat, Quat64};

/// Default finite-difference step for [`numeric_jet`].
pub const DEFAULT_STEP: f64 = 1e-4;

/// Anything that can be evaluated pointwise as an ℍ-valued function of
/// `q = (z1, z2)`.
pub trait QuatField: Sync {
    fn eval(&self, q: &Quat64) -> Result<Quat64>;

    /// Value and the eight Wirtinger partials at `q`.
    fn jet(&self, q: &Quat64) -> Result<WirtingerJet> {
        numeric_jet(self, q, DEFAULT_STEP)
    }
}

/// Value of `f` and the partials `∂f_i/∂v` for `i ∈ {1, 2}`,
/// `v ∈ {z1, z̄1, z2, z̄2}` at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WirtingerJet {
    pub value: Quat64,
    /// `partials[i][v]` is `∂f_{i+1}/∂v` with `v` indexed as in [`Var`].
    pub partials: [[Complex64; 4]; 2],
}

impl WirtingerJet {
    /// `∂f_component/∂v`, with `component` 1 or 2.
    pub fn partial(&self, component: usize, v: Var) -> Complex64 {
        self.partials[component - 1][v.index()]
    }

    /// `df_component(V)` for the real tangent vector whose complex
    /// coordinates are `(v1, v2)`.
    pub fn differential(&self, component: usize, v1: Complex64, v2: Complex64) -> Complex64 {
        let p = &self.partials[component - 1];
        p[0] * v1 + p[1] * v1.conj() + p[2] * v2 + p[3] * v2.conj()
    }

    pub fn max_abs_diff(&self, other: &WirtingerJet) -> f64 {
        let mut m = (self.value - other.value).norm();
        for i in 0..2 {
            for v in 0..4 {
                m = m.max((self.partials[i][v] - other.partials[i][v]).norm());
            }
        }
        m
    }
}

/// Wirtinger partials from central differences in the real coordinates
/// `x1, y1, x2, y2`, using `∂/∂z = ½(∂x − i∂y)` and `∂/∂z̄ = ½(∂x + i∂y)`.
pub fn numeric_jet<F: QuatField + ?Sized>(f: &F, q: &Quat64, h: f64) -> Result<WirtingerJet> {
    let value = f.eval(q)?;
    let base = q.to_parts();
    let mut d = [Quat64::zero(); 4];
    for (k, dk) in d.iter_mut().enumerate() {
        let mut plus = base;
        let mut minus = base;
        plus[k] += h;
        minus[k] -= h;
        let fp = f.eval(&Quat64::from_parts(plus[0], plus[1], plus[2], plus[3]))?;
        let fm = f.eval(&Quat64::from_parts(minus[0], minus[1], minus[2], minus[3]))?;
        *dk = (fp - fm).scale(0.5 / h);
    }
    let i = Complex64::i();
    let mut partials = [[Complex64::new(0.0, 0.0); 4]; 2];
    for (c, row) in partials.iter_mut().enumerate() {
        let comp = |w: &Quat64| if c == 0 { w.z1 } else { w.z2 };
        let (dx1, dy1, dx2, dy2) = (comp(&d[0]), comp(&d[1]), comp(&d[2]), comp(&d[3]));
        row[Var::Z1.index()] = (dx1 - i * dy1) * 0.5;
        row[Var::Zb1.index()] = (dx1 + i * dy1) * 0.5;
        row[Var::Z2.index()] = (dx2 - i * dy2) * 0.5;
        row[Var::Zb2.index()] = (dx2 + i * dy2) * 0.5;
    }
    Ok(WirtingerJet { value, partials })
}

/// One Richardson step on [`numeric_jet`]: `(4 J(h/2) − J(h)) / 3`, error
/// `O(h⁴)` for smooth inputs.
pub fn numeric_jet_richardson<F: QuatField + ?Sized>(
    f: &F,
    q: &Quat64,
    h: f64,
) -> Result<WirtingerJet> {
    let coarse = numeric_jet(f, q, h)?;
    let fine = numeric_jet(f, q, 0.5 * h)?;
    let mut partials = fine.partials;
    for c in 0..2 {
        for v in 0..4 {
            partials[c][v] = (fine.partials[c][v] * 4.0 - coarse.partials[c][v]) / 3.0;
        }
    }
    Ok(WirtingerJet {
        value: fine.value,
        partials,
    })
}

/// `f = f1 + f2·j` with exact rational components.
pub struct QFunction {
    f1: ConjRational,
    f2: ConjRational,
    compiled: OnceLock<Arc<CompiledFunction>>,
}

impl Clone for QFunction {
    fn clone(&self) -> Self {
        Self {
            f1: self.f1.clone(),
            f2: self.f2.clone(),
            compiled: self.compiled.clone(),
        }
    }
}

impl PartialEq for QFunction {
    fn eq(&self, other: &Self) -> bool {
        self.f1 == other.f1 && self.f2 == other.f2
    }
}

impl fmt::Debug for QFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QFunction")
            .field("f1", &self.f1.to_string())
            .field("f2", &self.f2.to_string())
            .finish()
    }
}

impl fmt::Display for QFunction {
    /// The `F1 ; F2` literal syntax accepted by the parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ; {}", self.f1, self.f2)
    }
}

impl QFunction {
    pub fn new(f1: ConjRational, f2: ConjRational) -> Self {
        Self {
            f1,
            f2,
            compiled: OnceLock::new(),
        }
    }

    pub fn from_polys(f1: ConjPoly, f2: ConjPoly) -> Self {
        Self::new(ConjRational::from_poly(f1), ConjRational::from_poly(f2))
    }

    pub fn zero() -> Self {
        Self::new(ConjRational::zero(), ConjRational::zero())
    }

    /// The constant quaternion `c`.
    pub fn constant(c: &Quat<BigRational>) -> Self {
        Self::new(
            ConjRational::constant(c.z1.clone()),
            ConjRational::constant(c.z2.clone()),
        )
    }

    pub fn f1(&self) -> &ConjRational {
        &self.f1
    }

    pub fn f2(&self) -> &ConjRational {
        &self.f2
    }

    pub fn is_zero(&self) -> bool {
        self.f1.is_zero() && self.f2.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.f1.is_polynomial() && self.f2.is_polynomial()
    }

    /// Both components real-valued.
    pub fn has_real_components(&self) -> bool {
        self.f1.is_real_valued() && self.f2.is_real_valued()
    }

    /// `f2 ≡ 0` and `f1` holomorphic.
    pub fn is_holomorphic(&self) -> bool {
        self.f2.is_zero() && self.f1.is_holomorphic()
    }

    pub fn add(&self, g: &Self) -> Self {
        Self::new(self.f1.add(&g.f1), self.f2.add(&g.f2))
    }

    pub fn sub(&self, g: &Self) -> Self {
        Self::new(self.f1.sub(&g.f1), self.f2.sub(&g.f2))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.f1.neg(), self.f2.neg())
    }

    pub fn scale_real(&self, alpha: &BigRational) -> Self {
        Self::new(self.f1.scale_real(alpha), self.f2.scale_real(alpha))
    }

    /// Componentwise conjugate `f̄1 + f̄2·j` (not the quaternionic conjugate).
    pub fn conj_components(&self) -> Self {
        Self::new(self.f1.conjugate(), self.f2.conjugate())
    }

    /// Quaternionic conjugate `f̄1 − f2·j`.
    pub fn quat_conj(&self) -> Self {
        Self::new(self.f1.conjugate(), self.f2.neg())
    }

    /// Right product `self * g`:
    /// `f1 g1 − f2 ḡ2 + (f1 g2 + f2 ḡ1)·j`.
    pub fn mul(&self, g: &Self) -> Self {
        let p1 = self.f1.mul(&g.f1).sub(&self.f2.mul(&g.f2.conjugate()));
        let p2 = self.f1.mul(&g.f2).add(&self.f2.mul(&g.f1.conjugate()));
        Self::new(p1, p2)
    }

    /// Right multiplication by a constant quaternion.
    pub fn mul_const(&self, c: &Quat<BigRational>) -> Self {
        self.mul(&Self::constant(c))
    }

    /// Componentwise Wirtinger derivative `∂f1/∂v + (∂f2/∂v)·j`.
    pub fn derive(&self, v: Var) -> Self {
        Self::new(self.f1.derive(v), self.f2.derive(v))
    }

    /// `|f| = f1 f̄1 + f2 f̄2` (the squared modulus, written `|f|` in the
    /// inverse formula).
    pub fn modulus_sq(&self) -> ConjRational {
        self.f1
            .mul(&self.f1.conjugate())
            .add(&self.f2.mul(&self.f2.conjugate()))
    }

    /// Identity test after cross-multiplication of each component.
    pub fn equals(&self, g: &Self) -> bool {
        self.f1.equals(&g.f1) && self.f2.equals(&g.f2)
    }

    pub fn eval_exact(&self, q: &ExactPoint) -> Result<Quat<BigRational>> {
        Ok(Quat::new(self.f1.eval_exact(q)?, self.f2.eval_exact(q)?))
    }

    pub fn compiled(&self) -> &CompiledFunction {
        self.compiled
            .get_or_init(|| Arc::new(CompiledFunction::new(self)))
    }

    /// Exact partials evaluated in floating point.
    pub fn symbolic_jet(&self, q: &Quat64) -> Result<WirtingerJet> {
        self.compiled().jet(q)
    }
}

impl QuatField for QFunction {
    fn eval(&self, q: &Quat64) -> Result<Quat64> {
        self.compiled().eval(q)
    }

    fn jet(&self, q: &Quat64) -> Result<WirtingerJet> {
        self.compiled().jet(q)
    }
}

#[derive(Clone, Debug)]
struct CompiledComponent {
    num: NumPoly,
    den: NumPoly,
    den_is_one: bool,
    dnum: [NumPoly; 4],
    dden: [NumPoly; 4],
}

impl CompiledComponent {
    fn new(r: &ConjRational) -> Self {
        let d = |p: &ConjPoly| Var::ALL.map(|v| p.derive(v).to_numeric());
        Self {
            num: r.num().to_numeric(),
            den: r.den().to_numeric(),
            den_is_one: r.den().is_one(),
            dnum: d(r.num()),
            dden: d(r.den()),
        }
    }

    fn den_value(&self, q: &Quat64) -> Result<Complex64> {
        if self.den_is_one {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let (d, scale) = self.den.eval_with_scale(q);
        if !(d.norm() > POLE_FLOOR * scale) {
            return Err(Error::pole_at(q));
        }
        Ok(d)
    }

    fn value(&self, q: &Quat64) -> Result<Complex64> {
        let d = self.den_value(q)?;
        Ok(self.num.eval(q) / d)
    }

    fn jet(&self, q: &Quat64) -> Result<(Complex64, [Complex64; 4])> {
        let d = self.den_value(q)?;
        let n = self.num.eval(q);
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for v in 0..4 {
            let dn = self.dnum[v].eval(q);
            out[v] = if self.den_is_one {
                dn
            } else {
                (dn * d - n * self.dden[v].eval(q)) / (d * d)
            };
        }
        Ok((n / d, out))
    }
}

/// Floating-point evaluator for a [`QFunction`] with exact-derivative jets.
#[derive(Clone, Debug)]
pub struct CompiledFunction {
    c1: CompiledComponent,
    c2: CompiledComponent,
}

impl CompiledFunction {
    pub fn new(f: &QFunction) -> Self {
        Self {
            c1: CompiledComponent::new(f.f1()),
            c2: CompiledComponent::new(f.f2()),
        }
    }
}

impl QuatField for CompiledFunction {
    fn eval(&self, q: &Quat64) -> Result<Quat64> {
        Ok(Quat64::new(self.c1.value(q)?, self.c2.value(q)?))
    }

    fn jet(&self, q: &Quat64) -> Result<WirtingerJet> {
        let (v1, p1) = self.c1.jet(q)?;
        let (v2, p2) = self.c2.jet(q)?;
        Ok(WirtingerJet {
            value: Quat64::new(v1, v2),
            partials: [p1, p2],
        })
    }
}

type SampleFn = dyn Fn(&Quat64) -> Result<Quat64> + Send + Sync;

/// An opaque ℍ-valued function; derivatives come from finite differences.
#[derive(Clone)]
pub struct Sampler {
    f: Arc<SampleFn>,
    step: f64,
}

impl Sampler {
    pub fn new(f: impl Fn(&Quat64) -> Result<Quat64> + Send + Sync + 'static) -> Self {
        Self {
            f: Arc::new(f),
            step: DEFAULT_STEP,
        }
    }

    pub fn with_step(mut self, h: f64) -> Self {
        self.step = h;
        self
    }
}

impl fmt::Debug for Sampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sampler").field("step", &self.step).finish()
    }
}

impl QuatField for Sampler {
    fn eval(&self, q: &Quat64) -> Result<Quat64> {
        (self.f)(q)
    }

    fn jet(&self, q: &Quat64) -> Result<WirtingerJet> {
        numeric_jet(self, q, self.step)
    }
}

/// Complex coefficient helper for building exact quaternion constants.
pub fn exact_quat(z1: Coeff, z2: Coeff) -> Quat<BigRational> {
    Quat::new(z1, z2)
}

