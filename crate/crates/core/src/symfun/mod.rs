//! Exact symbolic functions of `q = (z1, z2)`: polynomials and rational
//! functions in the conjugate variables `z1, z̄1, z2, z̄2`, Wirtinger
//! derivatives, evaluation, numeric jets and vanishing orders.

mod function;
mod order;
mod parse;
mod poly;
mod rational;

pub use function::{
    exact_quat, numeric_jet, numeric_jet_richardson, CompiledFunction, QFunction, QuatField,
    Sampler, WirtingerJet, DEFAULT_STEP,
};
pub use order::{
    vanishing_order, vanishing_order_pair, vanishing_order_rational, JetOrders, VanishingOrder,
};
pub use parse::{parse_poly, parse_qfunction, parse_rational, parse_test_polynomial};
pub use poly::{
    coeff, coeff_int, coeff_to_c64, exact_point, int, rat, rat_from_f64, Coeff, ConjPoly,
    ExactPoint, Exponents, NumPoly, Var,
};
pub use rational::{ConjRational, NumRational, POLE_FLOOR};

/// Wirtinger derivative of a rational component.
pub fn wirtinger_derive(f: &ConjRational, v: Var) -> ConjRational {
    f.derive(v)
}

/// Formal conjugate of a rational component.
pub fn conjugate_fn(f: &ConjRational) -> ConjRational {
    f.conjugate()
}
