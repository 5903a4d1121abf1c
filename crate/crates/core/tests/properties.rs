use h10::codec::{decode_tuple, encode_tuple, project, QTuple};
use h10::exactnum::{lowest_terms, Rational};
use h10::gadgets::exclusion_product;
use h10::parser::{parse_equation, render_equation};
use h10::poly::{eq_canonical_equal, normalize, Equation, Polynomial};
use h10::rings::{contains, find_nonzero_integer, RingSpec, SearchMode};
use num_bigint::BigInt;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=20).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn raw_terms(arity: usize) -> impl Strategy<Value = Vec<(i64, Vec<u32>)>> {
    prop::collection::vec((-6i64..=6, prop::collection::vec(0u32..=3, arity)), 0..6)
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    (1usize..=3).prop_flat_map(|arity| raw_terms(arity).prop_map(move |raw| normalize(raw, arity).unwrap()))
}

fn poly_pair_with_point() -> impl Strategy<Value = (Polynomial, Polynomial, Vec<Rational>)> {
    (1usize..=3).prop_flat_map(|arity| {
        (
            raw_terms(arity).prop_map(move |raw| normalize(raw, arity).unwrap()),
            raw_terms(arity).prop_map(move |raw| normalize(raw, arity).unwrap()),
            prop::collection::vec(rational(), arity),
        )
    })
}

fn equation() -> impl Strategy<Value = Equation> {
    (polynomial(), 0usize..=2).prop_map(|(p, extra)| {
        let arity = p.arity() + extra;
        Equation::new(p, arity).unwrap()
    })
}

fn subrings() -> Vec<RingSpec> {
    vec![
        RingSpec::Z,
        RingSpec::multiples_of(2).unwrap(),
        RingSpec::multiples_of(-3).unwrap(),
        RingSpec::localization(2u32).unwrap(),
        RingSpec::localization(6u32).unwrap(),
        RingSpec::Q,
    ]
}

fn member(ring: &RingSpec, n: i64, d: i64, e: u32) -> Rational {
    match ring {
        RingSpec::Z | RingSpec::N => Rational::from(n),
        RingSpec::MultiplesOf(c) => Rational::from_integer(c * BigInt::from(n)),
        RingSpec::Localization(m) => {
            Rational::new(BigInt::from(n), num_traits::pow(BigInt::from(m.clone()), e as usize)).unwrap()
        }
        RingSpec::Q => Rational::new(n, d).unwrap(),
    }
}

proptest! {
    #[test]
    fn lowest_terms_is_scale_invariant(a in -1000i64..=1000, b in -1000i64..=1000, k in -50i64..=50) {
        prop_assume!(b != 0 && k != 0);
        let (a, b, k) = (BigInt::from(a), BigInt::from(b), BigInt::from(k));
        prop_assert_eq!(lowest_terms(&a, &b).unwrap(), lowest_terms(&(&k * &a), &(&k * &b)).unwrap());
    }

    #[test]
    fn normalize_is_idempotent(p in polynomial()) {
        let raw: Vec<(BigInt, Vec<u32>)> = p.terms().map(|(m, c)| (c.clone(), m.exponents().to_vec())).collect();
        prop_assert_eq!(normalize(raw, p.arity()).unwrap(), p);
    }

    #[test]
    fn evaluate_is_a_ring_homomorphism((p, q, point) in poly_pair_with_point()) {
        let pv = p.evaluate(&point).unwrap();
        let qv = q.evaluate(&point).unwrap();
        prop_assert_eq!(p.add(&q).evaluate(&point).unwrap(), &pv + &qv);
        prop_assert_eq!(p.sub(&q).evaluate(&point).unwrap(), &pv - &qv);
        prop_assert_eq!(p.mul(&q).evaluate(&point).unwrap(), &pv * &qv);
    }

    #[test]
    fn canonical_equality_is_an_equivalence(e in equation(), k in -7i64..=7) {
        prop_assume!(k != 0);
        let scaled = Equation::new(e.lhs().scale(&BigInt::from(k)), e.arity()).unwrap();
        prop_assert!(eq_canonical_equal(&e, &e));
        prop_assert!(eq_canonical_equal(&e, &scaled));
        prop_assert!(eq_canonical_equal(&scaled, &e));
        let wider = e.with_arity(e.arity() + 1).unwrap();
        prop_assert!(!eq_canonical_equal(&e, &wider));
    }

    #[test]
    fn render_then_parse_is_a_fixpoint(e in equation()) {
        let text = render_equation(&e);
        let back = parse_equation(&text).unwrap();
        prop_assert!(eq_canonical_equal(&back, &e));
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(render_equation(&back), text);
    }

    #[test]
    fn encode_is_a_right_inverse(values in prop::collection::vec(rational(), 1..=3)) {
        let t = QTuple::new(values).unwrap();
        prop_assert_eq!(decode_tuple(&encode_tuple(&t), t.len()).unwrap(), t);
    }

    #[test]
    fn project_is_idempotent(values in prop::collection::vec(rational(), 1..=3), which in 0usize..7) {
        let mut targets = subrings();
        targets.push(RingSpec::N);
        let target = &targets[which];
        let t = QTuple::new(values).unwrap();
        let once = project(&t, target);
        prop_assert_eq!(project(&once, target), once.clone());
        prop_assert!(once.components().iter().all(|c| contains(target, c)));
    }

    #[test]
    fn subrings_are_closed(which in 0usize..6, a in (-30i64..=30, 1i64..=9, 0u32..=3), b in (-30i64..=30, 1i64..=9, 0u32..=3), k in -9i64..=9) {
        let ring = &subrings()[which];
        let x = member(ring, a.0, a.1, a.2);
        let y = member(ring, b.0, b.1, b.2);
        prop_assert!(contains(ring, &x) && contains(ring, &y));
        prop_assert!(contains(ring, &(&x + &y)));
        prop_assert!(contains(ring, &(&x - &y)));
        prop_assert!(contains(ring, &(&x * &y)));
        prop_assert!(contains(ring, &(&x * &Rational::from(k))));
    }

    #[test]
    fn exclusion_product_vanishes_exactly_on_points(
        points in prop::collection::vec(prop::collection::vec(rational(), 2), 0..4),
        probe in prop::collection::vec(rational(), 2),
        pick in prop::option::of(0usize..4),
    ) {
        let points: Vec<QTuple> = points.into_iter().map(|p| QTuple::new(p).unwrap()).collect();
        let probe = match pick {
            Some(i) if i < points.len() => points[i].clone(),
            _ => QTuple::new(probe).unwrap(),
        };
        let value = exclusion_product(&points, 2).unwrap().evaluate(probe.components()).unwrap();
        prop_assert_eq!(value.is_zero(), points.contains(&probe));
    }
}

#[test]
fn nonzero_integer_modes_both_satisfy_the_contract() {
    for ring in subrings() {
        for mode in [SearchMode::Direct, SearchMode::Constructive] {
            let m = find_nonzero_integer(&ring, mode).unwrap();
            assert!(m.value != BigInt::from(0));
            assert!(contains(&ring, &Rational::from_integer(m.value.clone())), "{ring} {mode:?}");
        }
    }
}
