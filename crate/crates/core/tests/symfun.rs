use proptest::prelude::*;
use quatfn::catalogue::{builtin, check_zero_set, ZeroSet};
use quatfn::symfun::*;
use quatfn::Quat64;

fn point() -> impl Strategy<Value = Quat64> {
    prop::array::uniform4(-1.0f64..1.0).prop_map(|p| Quat64::from_parts(p[0], p[1], p[2], p[3]))
}

#[test]
fn display_round_trips() {
    for src in [
        "c1 ; c2",
        "z1^2*c2 - 0.75*z2 + 2*i ; (1 + i)*c1*z2",
        "c1 / (z1*c1 + z2*c2)^2 ; -c2 / (z1*c1 + z2*c2)^2",
    ] {
        let f = parse_qfunction(src).unwrap();
        let again = parse_qfunction(&f.to_string()).unwrap();
        assert!(f.equals(&again), "{src} -> {f}");
    }
}

#[test]
fn vanishing_orders_at_the_origin() {
    let origin = exact_point(&Quat64::zero()).unwrap();
    let f = parse_qfunction("z1*c2 + z2^3 ; c1").unwrap();
    let o = vanishing_order_pair(&f, &origin).unwrap();
    assert_eq!(o.m1, VanishingOrder::Finite(2));
    assert_eq!(o.m2, VanishingOrder::Finite(1));
    assert_eq!(o.mq, VanishingOrder::Finite(1));
    let zero = parse_qfunction("0 ; 1").unwrap();
    assert_eq!(vanishing_order_pair(&zero, &origin).unwrap().m1, VanishingOrder::Infinite);
}

#[test]
fn declared_zero_sets_hold() {
    for (name, params) in [("prop34", vec![1.0, -2.0]), ("holo:z1*z2 - 1", vec![])] {
        let e = builtin(name, &params).unwrap();
        let chk = check_zero_set(&e, 9, 1e-9);
        assert!(chk.violations.is_empty(), "{name}");
    }
    let e = builtin("prop34", &[1.0, -2.0]).unwrap();
    let ZeroSet::RealPlane { x1, x2 } = e.zero_set else { panic!() };
    let q = Quat64::from_parts(x1, 0.4, x2, -0.9);
    assert!(e.f.eval(&q).unwrap().norm() < 1e-14);
}

#[test]
fn poles_are_reported() {
    let h = builtin("cauchy_kernel", &[]).unwrap().f;
    assert!(h.eval(&Quat64::zero()).is_err());
}

proptest! {
    #[test]
    fn rational_jets_match_finite_differences(q in point()) {
        prop_assume!(q.norm() > 0.3);
        let h = builtin("cauchy_kernel", &[]).unwrap().f;
        let exact = h.symbolic_jet(&q).unwrap();
        let numeric = numeric_jet_richardson(h.compiled(), &q, 1e-3).unwrap();
        let scale = exact.partials.iter().flatten().map(|z| z.norm()).fold(1.0, f64::max);
        prop_assert!(exact.max_abs_diff(&numeric) < 1e-6 * scale);
    }

    #[test]
    fn conjugation_swaps_wirtinger_variables(q in point()) {
        let p = parse_rational("(z1^2*c2 + 3*i*z2) / (1 + z1*c1)").unwrap();
        let lhs = p.conjugate().derive(Var::Zb1).eval(&q).unwrap();
        let rhs = p.derive(Var::Z1).eval(&q).unwrap().conj();
        prop_assert!((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
    }

    #[test]
    fn exact_and_float_evaluation_agree(q in point()) {
        let f = parse_qfunction("z1*c2 - 1/3 ; c1^2 + z2").unwrap();
        let exact = exact_point(&q).unwrap();
        let e = f.eval_exact(&exact).unwrap();
        let x = f.eval(&q).unwrap();
        let back = Quat64::new(coeff_to_c64(&e.z1), coeff_to_c64(&e.z2));
        prop_assert!((back - x).norm() < 1e-13);
    }
}
