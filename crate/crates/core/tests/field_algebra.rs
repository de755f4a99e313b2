mod common;

use common::{field, gaussian_field, homogeneous};
use maxsub::exact::Scalar;
use maxsub::polyfield::{PolyVectorField, Space};
use proptest::prelude::*;

fn triple() -> impl Strategy<Value = (PolyVectorField, PolyVectorField, PolyVectorField)> {
    (1usize..=3).prop_flat_map(|n| (field(n, 2), field(n, 2), field(n, 2)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn jacobi((x, y, z) in triple()) {
        let a = x.bracket(&y.bracket(&z).unwrap()).unwrap();
        let b = y.bracket(&z.bracket(&x).unwrap()).unwrap();
        let c = z.bracket(&x.bracket(&y).unwrap()).unwrap();
        prop_assert!(a.add(&b).unwrap().add(&c).unwrap().is_zero());
    }

    #[test]
    fn antisymmetry((x, y, _) in triple()) {
        let s = x.bracket(&y).unwrap().add(&y.bracket(&x).unwrap()).unwrap();
        prop_assert!(s.is_zero());
    }

    #[test]
    fn euler_grades_homogeneous_fields(x in (1usize..=3, -1i32..=3).prop_flat_map(|(n, p)| (homogeneous(n, p), Just(p)))) {
        let (x, p) = x;
        let e = PolyVectorField::euler(x.space());
        prop_assert_eq!(e.bracket(&x).unwrap(), x.scale(&Scalar::int(p as i64)));
    }

    #[test]
    fn graded_components_sum_back(x in (1usize..=3).prop_flat_map(|n| field(n, 3))) {
        let mut acc = PolyVectorField::zero(x.space());
        for (p, c) in x.graded_components() {
            prop_assert_eq!(c.homogeneous_degree(), Some(p));
            acc = acc.add(&c).unwrap();
        }
        prop_assert_eq!(acc, x);
    }

    #[test]
    fn divergence_of_a_bracket((x, y, _) in triple()) {
        // div[X, Y] = X(div Y) − Y(div X)
        let lhs = x.bracket(&y).unwrap().divergence();
        let rhs = x.apply(&y.divergence()).sub(&y.apply(&x.divergence()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn realification_is_a_homomorphism((x, y) in (1usize..=2).prop_flat_map(|n| (gaussian_field(n, 2), gaussian_field(n, 2)))) {
        let lhs = x.bracket(&y).unwrap().realify().unwrap();
        let rhs = x.realify().unwrap().bracket(&y.realify().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(x.realify().unwrap().space(), Space::real(2 * x.space().dim()));
    }

    #[test]
    fn text_round_trip(x in (1usize..=3).prop_flat_map(|n| field(n, 3))) {
        let back = maxsub::polyfield::parse_field(&x.to_string(), x.space()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn gaussian_text_round_trip(x in (1usize..=2).prop_flat_map(|n| gaussian_field(n, 2))) {
        let back = maxsub::polyfield::parse_field(&x.to_string(), x.space()).unwrap();
        prop_assert_eq!(back, x);
    }
}
