mod common;

use common::{poly_strategy, rational_poly_strategy, rational_strategy, ring};
use germlab::parse::parse_polynomial;
use germlab::polyring::integer;
use germlab::{Error, Polynomial, Rational};
use num_traits::Zero;
use proptest::prelude::*;

fn xy_poly() -> impl Strategy<Value = Polynomial> {
    rational_poly_strategy(ring(2), 4, 5)
}

fn xyz_poly() -> impl Strategy<Value = Polynomial> {
    poly_strategy(ring(3), 3, 4)
}

fn point3() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational_strategy(), 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in xy_poly(), b in xy_poly(), c in xy_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(a.ring()), a.clone());
        prop_assert_eq!(&a + &Polynomial::zero(a.ring()), a.clone());
    }

    #[test]
    fn no_zero_coefficients_are_stored(a in xy_poly(), b in xy_poly()) {
        for p in [&a + &b, &a * &b, &a - &b, a.pow(2)] {
            prop_assert!(p.terms().all(|(_, c)| !c.is_zero()));
        }
    }

    #[test]
    fn leibniz_rule(a in xy_poly(), b in xy_poly(), i in 0usize..2) {
        let lhs = (&a * &b).partial_derivative(i).unwrap();
        let rhs = &(&a.partial_derivative(i).unwrap() * &b) + &(&a * &b.partial_derivative(i).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(
        a in xyz_poly(),
        b in xyz_poly(),
        f in prop::collection::vec(poly_strategy(ring(3), 2, 3), 3),
    ) {
        let sum = (&a + &b).substitute(&f).unwrap();
        prop_assert_eq!(sum, &a.substitute(&f).unwrap() + &b.substitute(&f).unwrap());
        let prod = (&a * &b).substitute(&f).unwrap();
        prop_assert_eq!(prod, &a.substitute(&f).unwrap() * &b.substitute(&f).unwrap());
    }

    #[test]
    fn evaluation_commutes_with_arithmetic(a in xyz_poly(), b in xyz_poly(), pt in point3()) {
        let va = a.evaluate(&pt).unwrap();
        let vb = b.evaluate(&pt).unwrap();
        prop_assert_eq!((&a * &b).evaluate(&pt).unwrap(), &va * &vb);
        prop_assert_eq!((&a + &b).evaluate(&pt).unwrap(), &va + &vb);
        prop_assert_eq!(a.pow(3).evaluate(&pt).unwrap(), &va * &va * &va);
    }

    #[test]
    fn composition_is_associative(
        g in xyz_poly(),
        f1 in prop::collection::vec(poly_strategy(ring(3), 2, 2), 3),
        f2 in prop::collection::vec(poly_strategy(ring(3), 2, 2), 3),
    ) {
        // g ∘ (f1 ∘ f2) = (g ∘ f1) ∘ f2
        let inner: Vec<Polynomial> = f1.iter().map(|c| c.substitute(&f2).unwrap()).collect();
        prop_assert_eq!(g.substitute(&inner).unwrap(), g.substitute(&f1).unwrap().substitute(&f2).unwrap());
    }

    #[test]
    fn gcd_divides_both_and_is_maximal(a in poly_strategy(ring(2), 3, 3), b in poly_strategy(ring(2), 3, 3), c in poly_strategy(ring(2), 2, 3)) {
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let ac = &a * &c;
        let bc = &b * &c;
        let g = ac.gcd(&bc).unwrap();
        prop_assert!(g.is_normalized());
        prop_assert!(ac.divide_exact(&g).is_ok());
        prop_assert!(bc.divide_exact(&g).is_ok());
        // c is a common divisor, so it divides the gcd.
        prop_assert!(g.divide_exact(&c).is_ok());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in xy_poly(), b in xy_poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).divide_exact(&b).unwrap(), a);
    }

    #[test]
    fn squarefree_part_properties(p in poly_strategy(ring(2), 3, 3), k in 1u32..4) {
        prop_assume!(!p.is_constant());
        let s = p.squarefree_part().unwrap();
        prop_assert!(s.is_squarefree());
        prop_assert_eq!(s.squarefree_part().unwrap(), s.clone());
        prop_assert_eq!(p.pow(k).squarefree_part().unwrap(), s.clone());
        prop_assert!(p.divide_exact(&s).is_ok());
    }

    #[test]
    fn squarefree_test_agrees_with_gradient_gcd(p in poly_strategy(ring(2), 3, 3), q in poly_strategy(ring(2), 2, 2), square in any::<bool>()) {
        let p = if square { &p * &q.pow(2) } else { &p * &q };
        prop_assume!(!p.is_constant());
        let mut g = p.clone();
        for i in 0..2 {
            g = g.gcd(&p.partial_derivative(i).unwrap()).unwrap();
        }
        prop_assert_eq!(p.is_squarefree(), g.is_constant());
    }

    #[test]
    fn printed_form_parses_back(p in xy_poly()) {
        let r = p.ring().clone();
        prop_assert_eq!(parse_polynomial(&p.to_string(), &r).unwrap(), p);
    }

    #[test]
    fn printed_form_parses_back_in_three_variables(p in xyz_poly(), q in xyz_poly()) {
        let r = p.ring().clone();
        let prod = &p * &q;
        prop_assert_eq!(parse_polynomial(&prod.to_string(), &r).unwrap(), prod);
    }
}

#[test]
fn squarefree_of_known_powers() {
    let r = ring(2);
    let x = Polynomial::variable(&r, 0).unwrap();
    let y = Polynomial::variable(&r, 1).unwrap();
    let cusp = &x.pow(3) - &y.pow(2);
    let p = &(&cusp.pow(3) * &x.pow(2)) * &y;
    let s = p.squarefree_part().unwrap();
    assert!(s.is_unit_multiple_of(&(&(&cusp * &x) * &y)));
    assert_eq!(
        Polynomial::constant(&r, integer(4)).squarefree_part().unwrap_err(),
        Error::ConstantInput
    );
}

#[test]
fn ring_mismatch_is_reported() {
    let a = Polynomial::one(&ring(2));
    let b = Polynomial::one(&ring(3));
    assert_eq!(a.try_add(&b).unwrap_err(), Error::RingMismatch);
    assert_eq!(a.gcd(&b).unwrap_err(), Error::RingMismatch);
}

#[test]
fn zero_behaviour() {
    let r = ring(2);
    let z = Polynomial::zero(&r);
    assert!(z.is_zero());
    assert_eq!(z.to_string(), "0");
    assert!(z.total_degree().is_none());
    assert!(z.evaluate(&[Rational::zero(), Rational::zero()]).unwrap().is_zero());
}
