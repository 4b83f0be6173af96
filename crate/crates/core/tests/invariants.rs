//! Property tests for the algebraic layers.

use proptest::prelude::*;

use polyshift_core::{DensePoly, FieldElement, FieldSpec, SeededRng};

const F101: FieldSpec = FieldSpec::Prime(101);

fn f101_element() -> impl Strategy<Value = FieldElement> {
    (0u64..101).prop_map(|v| F101.from_u64(v))
}

fn rational_element() -> impl Strategy<Value = FieldElement> {
    (-500i64..=500, 1i64..=60)
        .prop_map(|(n, d)| FieldSpec::Rational.from_ratio(n, d).unwrap())
}

fn small_poly() -> impl Strategy<Value = (DensePoly, u64)> {
    (1usize..=3, 0u32..=4, any::<u64>()).prop_map(|(n, d, seed)| {
        let mut rng = SeededRng::new(seed);
        (DensePoly::random(n, d, 0.6, F101, &mut rng), seed)
    })
}

proptest! {
    #[test]
    fn nonzero_elements_have_inverses(a in f101_element(), b in rational_element()) {
        for e in [a, b] {
            if !e.is_zero() {
                let prod = &e * &e.inv().unwrap();
                prop_assert!(prod.is_one());
            }
        }
    }

    #[test]
    fn canonical_form_roundtrips(a in f101_element(), b in rational_element()) {
        for e in [a, b] {
            let spec = e.spec();
            let text = e.canonical_string();
            let back = spec.parse_element(&text).unwrap();
            prop_assert_eq!(&back, &e);
            prop_assert_eq!(back.canonical_string(), text);
        }
    }

    #[test]
    fn field_ops_are_consistent(a in f101_element(), b in f101_element()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a + &(-&a), F101.zero());
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a);
        }
    }

    #[test]
    fn shifts_compose_additively((f, seed) in small_poly()) {
        let mut rng = SeededRng::new(seed ^ 0xdead_beef);
        let n = f.num_vars();
        let a = F101.sample_point(n, 101, &mut rng).unwrap();
        let b = F101.sample_point(n, 101, &mut rng).unwrap();
        let ab: Vec<FieldElement> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        prop_assert_eq!(
            f.shift(&a).unwrap().shift(&b).unwrap(),
            f.shift(&ab).unwrap()
        );
    }

    #[test]
    fn homogeneous_components_partition((f, _) in small_poly()) {
        let mut sum = DensePoly::zero(f.num_vars(), F101);
        for i in 0..=f.degree().unwrap_or(0) {
            sum = sum.add(&f.homogeneous_component(i));
        }
        prop_assert_eq!(sum, f);
    }
}
