use proptest::prelude::*;

use fmk::algebra::{enumerate_monomials, AlgebraElement, Generator, Monomial, TriDegree};
use fmk::hom::{Diagram, HomElement, Word};
use fmk::linalg::Matrix;
use fmk::parser::{parse_expression, Value};
use fmk::scalar::{Field, Scalar};

fn monomial() -> impl Strategy<Value = Monomial> {
    (prop::array::uniform4(0u16..3), prop::array::uniform4(0u16..2)).prop_map(|(even, odd)| {
        Monomial::from_exponents([even[0], even[1], even[2], even[3], odd[0], odd[1], odd[2], odd[3]]).expect("valid exponents")
    })
}

fn element() -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((monomial(), -5i64..=5), 0..5).prop_map(|terms| {
        let mut a = AlgebraElement::zero();
        for (m, c) in terms {
            a.add_term(m, Scalar::from_i64(c));
        }
        a
    })
}

fn homogeneous() -> impl Strategy<Value = AlgebraElement> {
    (monomial(), -5i64..=5).prop_flat_map(|(m, c)| {
        let d = m.degree();
        let others = enumerate_monomials(d, &Generator::ALL);
        (Just(m), Just(c), prop::collection::vec((prop::sample::select(others), -3i64..=3), 0..3)).prop_map(|(m, c, rest)| {
            let mut a = AlgebraElement::term(m, Scalar::from_i64(c));
            for (n, e) in rest {
                a.add_term(n, Scalar::from_i64(e));
            }
            a
        })
    })
}

fn hom(source: Word, target: Word) -> impl Strategy<Value = HomElement> {
    let diagrams = Diagram::between(source, target).to_vec();
    prop::collection::vec((prop::sample::select(diagrams), element()), 1..3).prop_map(move |terms| {
        terms.into_iter().fold(HomElement::zero(source, target), |acc, (d, c)| acc.add(&HomElement::with_coeff(&c, d)))
    })
}

fn word() -> impl Strategy<Value = Word> {
    prop_oneof![Just(Word::E), Just(Word::S)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_round_trip(a in element()) {
        prop_assert_eq!(AlgebraElement::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn display_parses_back(a in element()) {
        prop_assert_eq!(parse_expression(&a.to_string()).unwrap(), Value::Alg(a));
    }

    #[test]
    fn kappa_squares_to_zero(a in element()) {
        prop_assert!(a.kappa().kappa().is_zero());
    }

    #[test]
    fn s_is_an_involutive_automorphism(a in element(), b in element()) {
        prop_assert_eq!(a.s_action().s_action(), a.clone());
        prop_assert_eq!((&a * &b).s_action(), &a.s_action() * &b.s_action());
    }

    #[test]
    fn leibniz(a in homogeneous(), b in element()) {
        let odd = a.degree().map_or(false, |d| d.i.rem_euclid(2) == 1);
        let sign = if odd { AlgebraElement::int(-1) } else { AlgebraElement::one() };
        prop_assert_eq!((&a * &b).kappa(), &(&a.kappa() * &b) + &(&sign * &(&a * &b.kappa())));
    }

    #[test]
    fn multiplication_is_associative(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn enumeration_matches_brute_force(i in -4i64..=4, j in -6i64..=6, k in 0i64..=2) {
        let d = TriDegree::new(i, j, k);
        let listed = enumerate_monomials(d, &Generator::ALL);
        prop_assert!(listed.iter().all(|m| m.degree() == d));
        let mut count = 0;
        for x1 in 0..=6u16 { for x2 in 0..=6u16 { for y1 in 0..=4u16 { for y2 in 0..=4u16 {
            for odd in 0..16u16 {
                let e = [x1, x2, y1, y2, odd & 1, (odd >> 1) & 1, (odd >> 2) & 1, (odd >> 3) & 1];
                if Monomial::from_exponents(e).unwrap().degree() == d { count += 1; }
            }
        }}}}
        prop_assert_eq!(listed.len(), count);
    }

    #[test]
    fn composition_is_associative(
        (f, g, h) in (word(), word(), word(), word()).prop_flat_map(|(a, b, c, d)| (hom(a, b), hom(b, c), hom(c, d)))
    ) {
        prop_assert_eq!(h.compose(&g.compose(&f).unwrap()).unwrap(), h.compose(&g).unwrap().compose(&f).unwrap());
    }

    #[test]
    fn left_box_commutes_with_composition(
        a in element(),
        (f, g) in (word(), word(), word()).prop_flat_map(|(x, y, z)| (hom(x, y), hom(y, z)))
    ) {
        prop_assert_eq!(g.left_box(&a).compose(&f).unwrap(), g.compose(&f).unwrap().left_box(&a));
    }

    #[test]
    fn solve_and_nullspace(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..4), x in prop::collection::vec(-3i64..=3, 4)) {
        let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Scalar::from_i64(v)).collect()).collect());
        let null = m.nullspace();
        prop_assert_eq!(m.rank() + null.len(), 4);
        for v in &null {
            prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
        let x: Vec<Scalar> = x.into_iter().map(Scalar::from_i64).collect();
        let rhs = m.mul_vec(&x);
        let sol = m.solve(&rhs).expect("consistent by construction");
        prop_assert_eq!(m.mul_vec(&sol.particular), rhs);
    }

    #[test]
    fn prime_field_inverses(n in 1i64..1000, p in prop::sample::select(vec![3u64, 5, 7, 101, 65_521])) {
        let a = Field::Prime(p).int(n);
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.inv().unwrap()).is_one());
    }
}
