use std::collections::HashMap;
use std::sync::OnceLock;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use g2::chevalley::DIM;
use g2::group::{random_element, root_matrix, torus_element};
use g2::matrix::Matrix;
use g2::replay::involution::involution_split;
use g2::replay::prod2::{prod2_assemble, prod2_extract, TorusUnipotentParams};
use g2::replay::relations::Relation;
use g2::replay::templates::Var;
use g2::replay::units::{generate_matrix_units, UnitExpr};
use g2::ring::{RingDescriptor, RingValue};
use g2::rootsys::{all_roots, Root};

fn units() -> &'static UnitExpr {
    static U: OnceLock<UnitExpr> = OnceLock::new();
    U.get_or_init(|| generate_matrix_units().unwrap())
}

fn local_ring() -> impl Strategy<Value = RingDescriptor> {
    prop_oneof![
        (prop_oneof![Just(5u64), Just(7), Just(11), Just(13)], 1u32..=3).prop_map(|(p, k)| RingDescriptor::zmod(p, k).unwrap()),
        (1u32..=4, 2u32..=3).prop_map(|(m, d)| RingDescriptor::trunc(m, d).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn prod2_roundtrip(desc in local_ring(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = TorusUnipotentParams::random(desc, &mut rng);
        let x = prod2_assemble(&p).unwrap();
        prop_assert_eq!(prod2_extract(&x).unwrap(), p);
    }

    #[test]
    fn involution_split_is_conjugation_invariant(i in 1usize..=2, seed in any::<u64>()) {
        let desc = RingDescriptor::zmod(5, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = torus_element(Root::simple(i), &RingValue::from_i64(desc, -1)).unwrap();
        let g = random_element(desc, 8, &mut rng);
        prop_assert_eq!(involution_split(&a.conjugate(&g).unwrap()).unwrap(), (6, 8));
    }

    #[test]
    fn relations_hold(desc in local_ring(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for rel in Relation::ALL {
            prop_assert_eq!(rel.trial(desc, &mut rng), Ok(()));
        }
    }

    #[test]
    fn random_elements_invert(desc in local_ring(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_element(desc, 5, &mut rng);
        prop_assert!(g.multiply(&g.inverse().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn additivity_over_the_integers(a in 0usize..12, s in -20i64..20, t in -20i64..20) {
        let r = all_roots()[a];
        prop_assert_eq!(root_matrix(r, &s).mul(&root_matrix(r, &t)), root_matrix(r, &(s + t)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unit_expressions_multiply(k in 1usize..=DIM, l in 1usize..=DIM, m in 1usize..=DIM) {
        let ex = units();
        let desc = RingDescriptor::zmod(7, 2).unwrap();
        let mut memo = HashMap::new();
        let a = ex.evaluate(ex.unit(k, l).unwrap(), desc, &mut memo).unwrap();
        let b = ex.evaluate(ex.unit(l, m).unwrap(), desc, &mut memo).unwrap();
        let c = ex.evaluate(ex.unit(k, m).unwrap(), desc, &mut memo).unwrap();
        prop_assert_eq!(a.mul(&b), c.clone());
        prop_assert_eq!(c, Matrix::unit(DIM, k - 1, m - 1, &RingValue::one(desc)));
    }

    #[test]
    fn descriptors_roundtrip(desc in local_ring()) {
        prop_assert_eq!(RingDescriptor::parse(&desc.to_string()).unwrap(), desc);
    }

    #[test]
    fn variable_names_roundtrip(y in any::<bool>(), i in 1usize..=52) {
        let v = if y { Var::y(i) } else { Var::z(i) };
        prop_assert_eq!(v.to_string().parse::<Var>().unwrap(), v);
    }

    #[test]
    fn ring_values_roundtrip_through_json(desc in local_ring(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = RingValue::random(desc, &mut rng);
        prop_assert_eq!(RingValue::from_json(desc, &v.to_json()).unwrap(), v);
    }
}
