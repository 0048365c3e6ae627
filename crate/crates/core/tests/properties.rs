use proptest::prelude::*;

use qstoch::algebra::{Algebra, Generator, Kind};
use qstoch::expr::parse_poly;
use qstoch::scalar::{gauss, rational};
use qstoch::thermal::{
    thermal_expectation, to_c_basis, CGenerator, CPoly, FrakturGenerator, FrakturKind, FrakturPoly, ThermalParams,
};
use qstoch::{OperatorPoly, Poly, ScalarExpr, StatisticsFlag};

const KINDS: [Kind; 7] = [
    Kind::A,
    Kind::ADag,
    Kind::TildeA,
    Kind::TildeADag,
    Kind::J,
    Kind::TildeJ,
    Kind::Tau,
];

fn flag() -> impl Strategy<Value = StatisticsFlag> {
    prop_oneof![Just(StatisticsFlag::Boson), Just(StatisticsFlag::Fermion)]
}

fn coeff() -> impl Strategy<Value = ScalarExpr> {
    (-3i64..=3, -2i64..=2, 0u32..=2, 0u32..=1).prop_map(|(re, im, nbar, dt)| {
        let c = ScalarExpr::from_gauss(gauss(rational(re, 1), rational(im, 1)));
        &(&c * &ScalarExpr::nbar().pow(nbar)) * &ScalarExpr::dt().pow(dt)
    })
}

fn level0() -> impl Strategy<Value = OperatorPoly> {
    let word = prop::collection::vec((0usize..7, 1u32..=3), 0..=4);
    prop::collection::vec((coeff(), word), 1..=3).prop_map(|terms| {
        let mut p = Poly::zero();
        for (c, w) in terms {
            let gens = w.into_iter().map(|(k, s)| Generator::new(KINDS[k], s)).collect();
            p = &p + &Poly::term(c, gens);
        }
        p
    })
}

fn fraktur() -> impl Strategy<Value = FrakturPoly> {
    let word = prop::collection::vec((0usize..4, 1u32..=3), 0..=4);
    prop::collection::vec((coeff(), word), 1..=3).prop_map(|terms| {
        let mut p = Poly::zero();
        for (c, w) in terms {
            let gens = w
                .into_iter()
                .map(|(k, s)| FrakturGenerator::new(FrakturKind::ALL[k], s))
                .collect();
            p = &p + &Poly::term(c, gens);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_order_is_idempotent(f in flag(), p in level0()) {
        let alg = Algebra::new(f);
        let once = alg.normal_order(&p);
        prop_assert!(alg.is_normal(&once));
        prop_assert_eq!(alg.normal_order(&once), once);
    }

    #[test]
    fn normal_order_is_linear(f in flag(), p in level0(), q in level0(), a in coeff(), b in coeff()) {
        let alg = Algebra::new(f);
        let lhs = alg.normal_order(&(&p.scale(&a) + &q.scale(&b)));
        let rhs = &alg.normal_order(&p).scale(&a) + &alg.normal_order(&q).scale(&b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_order_respects_products(f in flag(), p in level0(), q in level0()) {
        let alg = Algebra::new(f);
        let direct = alg.normal_order(&(&p * &q));
        let staged = alg.normal_order(&(&alg.normal_order(&p) * &alg.normal_order(&q)));
        prop_assert_eq!(direct, staged);
    }

    #[test]
    fn graded_commutator_is_bilinear(f in flag(), p in level0(), q in level0(), r in level0(), a in coeff()) {
        let alg = Algebra::new(f);
        let lhs = alg.graded_commutator(&(&p.scale(&a) + &q), &r).unwrap();
        let rhs = &alg.graded_commutator(&p, &r).unwrap().scale(&a) + &alg.graded_commutator(&q, &r).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tilde_is_an_involution(f in flag(), p in level0()) {
        let alg = Algebra::new(f);
        prop_assert_eq!(alg.tilde_conjugate(&alg.tilde_conjugate(&p)), p.clone());
        let n = alg.normal_order(&p);
        prop_assert_eq!(alg.normal_order(&alg.tilde_conjugate(&n)), alg.normal_order(&alg.tilde_conjugate(&p)));
    }

    #[test]
    fn tilde_is_antilinear(f in flag(), p in level0(), a in coeff()) {
        let alg = Algebra::new(f);
        prop_assert_eq!(alg.tilde_conjugate(&p.scale(&a)), alg.tilde_conjugate(&p).scale(&a.conj()));
    }

    #[test]
    fn level0_print_parse_round_trip(f in flag(), p in level0()) {
        let text = p.to_text();
        prop_assert_eq!(parse_poly::<Generator>(&text, f).unwrap(), p.clone(), "{}", text);
        let n = Algebra::new(f).normal_order(&p);
        prop_assert_eq!(parse_poly::<Generator>(&n.to_text(), f).unwrap(), n);
    }

    #[test]
    fn fraktur_print_parse_round_trip(f in flag(), p in fraktur()) {
        let text = p.to_text();
        prop_assert_eq!(parse_poly::<FrakturGenerator>(&text, f).unwrap(), p.clone(), "{}", text);
    }

    #[test]
    fn c_basis_print_parse_round_trip(f in flag(), p in fraktur()) {
        let c: CPoly = to_c_basis(&p, &ThermalParams::symbolic(f)).unwrap();
        prop_assert_eq!(parse_poly::<CGenerator>(&c.to_text(), f).unwrap(), c);
    }

    #[test]
    fn thermal_expectation_of_tilde_is_conjugate(f in flag(), p in fraktur()) {
        let params = ThermalParams::symbolic(f);
        let lhs = thermal_expectation(&p.tilde(f), &params).unwrap();
        let rhs = thermal_expectation(&p, &params).unwrap().conj();
        prop_assert_eq!(lhs, rhs, "{}", p);
    }
}
