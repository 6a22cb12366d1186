mod common;

use common::*;
use jacpoisson::exterior::{derham_d, divergence, pair, schouten, DiffForm, Multivector, VolumeForm};
use jacpoisson::symbolic::{weighted_decompose, WeightVector};
use jacpoisson::{parse_expr, Poly};
use proptest::prelude::*;

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn scaled(a: &Multivector, s: i64) -> Multivector {
    a.scale(&jacpoisson::symbolic::q(s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_then_parse_is_identity(p in poly(5, 4)) {
        let text = p.to_string();
        prop_assert_eq!(parse_expr(&text, &vars()).unwrap(), p);
    }

    #[test]
    fn derivative_is_a_derivation(f in small_poly(), g in small_poly(), i in 0usize..4) {
        let lhs = (&f * &g).derivative(i);
        let rhs = &(&f.derivative(i) * &g) + &(&f * &g.derivative(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mixed_partials_commute(f in poly(5, 4), i in 0usize..4, j in 0usize..4) {
        prop_assert_eq!(f.derivative(i).derivative(j), f.derivative(j).derivative(i));
    }

    #[test]
    fn weighted_parts_are_homogeneous_and_sum_back(f in poly(6, 4)) {
        let w = WeightVector::new(vec![4, 2, 3, 3]).unwrap();
        let parts = weighted_decompose(&f, &w);
        let mut sum = Poly::zero(&vars());
        for (d, part) in &parts {
            prop_assert_eq!(part.weighted_degree_range(w.as_slice()), Some((*d, *d)));
            sum += part;
        }
        prop_assert_eq!(sum, f);
    }

    #[test]
    fn schouten_on_function_is_derivative(x in graded::<jacpoisson::exterior::Vectors>(1), f in small_poly()) {
        prop_assert_eq!(schouten(&x, &Multivector::scalar(f.clone())), Multivector::scalar(x.apply(&f)));
    }

    #[test]
    fn schouten_graded_symmetry(a in any_graded(3), b in any_graded(3)) {
        let (pa, pb) = (a.grade(), b.grade());
        prop_assume!(pa + pb >= 1 && pa + pb - 1 <= 4);
        prop_assert_eq!(schouten(&a, &b), scaled(&schouten(&b, &a), sign(pa * pb)));
    }

    #[test]
    fn schouten_graded_jacobi(a in any_graded(2), b in any_graded(2), c in any_graded(2)) {
        let (pa, pb, pc) = (a.grade(), b.grade(), c.grade());
        prop_assume!(pa + pb + pc >= 2 && pa + pb + pc - 2 <= 4);
        prop_assume!(pa + pb >= 1 && pa + pc >= 1 && pb + pc >= 1);
        let lhs = schouten(&a, &schouten(&b, &c));
        let r1 = scaled(&schouten(&schouten(&a, &b), &c), sign(pa + 1));
        let r2 = scaled(&schouten(&b, &schouten(&a, &c)), sign((pa + 1) * (pb + 1)));
        prop_assert_eq!(lhs, r1.add(&r2));
    }

    #[test]
    fn d_squared_vanishes(w in any_graded::<jacpoisson::exterior::Forms>(2)) {
        let dd = derham_d(&derham_d(&w).unwrap()).unwrap();
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn d_satisfies_graded_leibniz(a in any_graded::<jacpoisson::exterior::Forms>(1), b in graded::<jacpoisson::exterior::Forms>(1)) {
        let lhs = derham_d(&a.wedge(&b).unwrap()).unwrap();
        let rhs = derham_d(&a).unwrap().wedge(&b).unwrap()
            .add(&a.wedge(&derham_d(&b).unwrap()).unwrap().scale(&jacpoisson::symbolic::q(sign(a.grade()))));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pairing_is_bilinear(
        w1 in graded::<jacpoisson::exterior::Forms>(2),
        w2 in graded::<jacpoisson::exterior::Forms>(2),
        a in graded::<jacpoisson::exterior::Vectors>(2),
        f in small_poly(),
    ) {
        let lhs = pair(&w1.add(&w2.mul_poly(&f)), &a).unwrap();
        let rhs = &pair(&w1, &a).unwrap() + &(&f * &pair(&w2, &a).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pairing_alternates_under_factor_swaps(
        f in small_poly(), g in small_poly(),
        i in 0usize..4, j in 0usize..4, k in 0usize..4, l in 0usize..4,
    ) {
        prop_assume!(i != j && k != l);
        let w = DiffForm::monomial(f.clone(), &[i, j]);
        let a = Multivector::monomial(g.clone(), &[k, l]);
        let base = pair(&w, &a).unwrap();
        prop_assert_eq!(pair(&DiffForm::monomial(f.clone(), &[j, i]), &a).unwrap(), -base.clone());
        prop_assert_eq!(pair(&w, &Multivector::monomial(g, &[l, k])).unwrap(), -base);
    }

    #[test]
    fn divergence_product_rule(x in graded::<jacpoisson::exterior::Vectors>(1), f in small_poly(), k in poly(2, 3)) {
        let k = &k + &parse("1 + x^2");
        let mu = VolumeForm::new(k).unwrap();
        let lhs = divergence(&x.mul_poly(&f), &mu);
        let rhs = &(&jacpoisson::RationalFn::from_poly(f.clone()) * &divergence(&x, &mu))
            + &jacpoisson::RationalFn::from_poly(x.apply(&f));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn divergence_is_linear(x in graded::<jacpoisson::exterior::Vectors>(1), y in graded::<jacpoisson::exterior::Vectors>(1)) {
        let mu = VolumeForm::new(parse("2 + y^2")).unwrap();
        prop_assert_eq!(divergence(&x.add(&y), &mu), &divergence(&x, &mu) + &divergence(&y, &mu));
    }
}
