use std::fmt;

use num_traits::Zero;

use super::function::QFunction;
use super::poly::{ConjPoly, ExactPoint};
use super::rational::ConjRational;
use crate::error::{Error, Result};

/// Lowest nonzero Taylor degree at a point; `Infinite` for the zero function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VanishingOrder {
    Finite(u32),
    Infinite,
}

impl fmt::Display for VanishingOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VanishingOrder::Finite(m) => write!(f, "{m}"),
            VanishingOrder::Infinite => write!(f, "inf"),
        }
    }
}

/// Orders `(m1, m2)` of the two components and `m_q = min(m1, m2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JetOrders {
    pub m1: VanishingOrder,
    pub m2: VanishingOrder,
    pub mq: VanishingOrder,
}

pub fn vanishing_order(p: &ConjPoly, q: &ExactPoint) -> VanishingOrder {
    match p.translate(q).lowest_degree() {
        Some(m) => VanishingOrder::Finite(m),
        None => VanishingOrder::Infinite,
    }
}

/// Order of `num/den`; the denominator must not vanish at `q`.
pub fn vanishing_order_rational(r: &ConjRational, q: &ExactPoint) -> Result<VanishingOrder> {
    if r.den().eval_exact(q).is_zero() {
        return Err(Error::ZeroDivision);
    }
    Ok(vanishing_order(r.num(), q))
}

pub fn vanishing_order_pair(f: &QFunction, q: &ExactPoint) -> Result<JetOrders> {
    let m1 = vanishing_order_rational(f.f1(), q)?;
    let m2 = vanishing_order_rational(f.f2(), q)?;
    Ok(JetOrders {
        m1,
        m2,
        mq: m1.min(m2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::Quat;
    use crate::symfun::parse::{parse_poly, parse_qfunction};
    use crate::symfun::poly::int;
    use num_complex::Complex;

    fn origin() -> ExactPoint {
        Quat::zero()
    }

    #[test]
    fn orders_at_origin() {
        let rho = parse_poly("z1*c1 + z2*c2").unwrap();
        assert_eq!(vanishing_order(&rho, &origin()), VanishingOrder::Finite(2));
        let p = parse_poly("1 + z1").unwrap();
        assert_eq!(vanishing_order(&p, &origin()), VanishingOrder::Finite(0));
        assert_eq!(vanishing_order(&ConjPoly::zero(), &origin()), VanishingOrder::Infinite);
    }

    #[test]
    fn conj_has_order_one_in_both_components() {
        let f = parse_qfunction("c1 ; c2").unwrap();
        let o = vanishing_order_pair(&f, &origin()).unwrap();
        assert_eq!(o.m1, VanishingOrder::Finite(1));
        assert_eq!(o.m2, VanishingOrder::Finite(1));
        assert_eq!(o.mq, VanishingOrder::Finite(1));
    }

    #[test]
    fn order_away_from_origin_and_mixed() {
        // (z1 - 1)^3 at (1, 0)
        let p = parse_poly("(z1 - 1)^3").unwrap();
        let q = Quat::new(Complex::new(int(1), int(0)), Complex::new(int(0), int(0)));
        assert_eq!(vanishing_order(&p, &q), VanishingOrder::Finite(3));
        let f = parse_qfunction("z1^2 ; 0").unwrap();
        let o = vanishing_order_pair(&f, &origin()).unwrap();
        assert_eq!(o.m2, VanishingOrder::Infinite);
        assert_eq!(o.mq, VanishingOrder::Finite(2));
    }

    #[test]
    fn rational_needs_nonvanishing_denominator() {
        let f = parse_qfunction("c1 / (z1*c1 + z2*c2) ; 0").unwrap();
        assert!(vanishing_order_pair(&f, &origin()).is_err());
    }
}
