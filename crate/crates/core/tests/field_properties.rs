mod common;

use common::*;
use proptest::prelude::*;
use qvariety::coeffs::{Elem, Field};

fn backends() -> Vec<Field> {
    vec![
        Field::prime(5).unwrap(),
        Field::extension(3, 2).unwrap(),
        Field::extension(4, 3).unwrap(),
        Field::rational_functions(3).unwrap(),
        Field::perfect_closure(3).unwrap(),
    ]
}

fn triple(seed: u64, k: &Field) -> (Elem, Elem, Elem) {
    let mut r = rng(seed);
    (elem(&mut r, k), elem(&mut r, k), elem(&mut r, k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(seed in any::<u64>()) {
        for k in backends() {
            let (x, y, z) = triple(seed, &k);
            prop_assert_eq!(k.add(&k.add(&x, &y), &z), k.add(&x, &k.add(&y, &z)));
            prop_assert_eq!(k.mul(&k.mul(&x, &y), &z), k.mul(&x, &k.mul(&y, &z)));
            prop_assert_eq!(k.mul(&x, &k.add(&y, &z)), k.add(&k.mul(&x, &y), &k.mul(&x, &z)));
            prop_assert_eq!(k.mul(&x, &y), k.mul(&y, &x));
            prop_assert!(k.is_zero(&k.add(&x, &k.neg(&x))));
            if !k.is_zero(&x) {
                prop_assert!(k.is_one(&k.mul(&x, &k.inv(&x).unwrap())));
            } else {
                prop_assert!(k.inv(&x).is_err());
            }
        }
    }

    #[test]
    fn frobenius_is_a_ring_morphism(seed in any::<u64>()) {
        for k in backends() {
            let (x, y, _) = triple(seed, &k);
            prop_assert_eq!(k.frob(&k.add(&x, &y), 1), k.add(&k.frob(&x, 1), &k.frob(&y, 1)));
            prop_assert_eq!(k.frob(&k.mul(&x, &y), 1), k.mul(&k.frob(&x, 1), &k.frob(&y, 1)));
            prop_assert_eq!(k.frob(&x, 1), k.pow(&x, k.q()));
        }
    }

    #[test]
    fn inverse_frobenius_undoes_frobenius(seed in any::<u64>()) {
        for k in backends().into_iter().filter(|k| k.has_inverse_frobenius()) {
            let (x, _, _) = triple(seed, &k);
            prop_assert_eq!(k.inv_frob(&k.frob(&x, 1), 1).unwrap(), x.clone());
            prop_assert_eq!(k.frob(&k.inv_frob(&x, 2).unwrap(), 2), x);
        }
    }

    #[test]
    fn perfect_closure_extends_rational_functions(seed in any::<u64>()) {
        let ft = Field::rational_functions(3).unwrap();
        let pc = Field::perfect_closure(3).unwrap();
        let (x, y, _) = triple(seed, &ft);
        let (px, py) = (pc.coerce(&x), pc.coerce(&y));
        prop_assert_eq!(pc.coerce(&ft.add(&x, &y)), pc.add(&px, &py));
        prop_assert_eq!(pc.coerce(&ft.mul(&x, &y)), pc.mul(&px, &py));
        prop_assert_eq!(pc.coerce(&ft.frob(&x, 2)), pc.frob(&px, 2));
        if !ft.is_zero(&y) {
            prop_assert_eq!(pc.coerce(&ft.div(&x, &y).unwrap()), pc.div(&px, &py).unwrap());
        }
        prop_assert_eq!(pc.level(&pc.mul(&px, &py)), 0);
    }
}

#[test]
fn levels_are_minimal() {
    let pc = Field::perfect_closure(3).unwrap();
    let t = pc.t().unwrap();
    let s = pc.inv_frob(&t, 1).unwrap();
    assert_eq!(pc.level(&s), 1);
    assert_eq!(s, pc.s(1).unwrap());
    // (T^{1/3})^3 = T drops back to level 0
    assert_eq!(pc.pow(&s, 3), t);
    assert_eq!(pc.level(&pc.pow(&s, 3)), 0);
    let ft = Field::rational_functions(3).unwrap();
    assert!(ft.inv_frob(&ft.t().unwrap(), 1).is_err());
}
