mod common;

use common::*;
use proptest::prelude::*;
use qvariety::coeffs::{Elem, Field};
use qvariety::ore::OrePoly;
use qvariety::orelat::{diagonalize, left_kernel, OreMatrix, TauSubmodule};
use rand::Rng;

fn f9() -> Field {
    Field::extension(3, 2).unwrap()
}

/// All Ore polynomials over F_3 of degree ≤ 1.
fn small_polys(k: &Field) -> Vec<OrePoly> {
    let els: Vec<Elem> = (0..3).map(|i| k.from_int(i)).collect();
    let mut out = Vec::new();
    for a in &els {
        for b in &els {
            out.push(OrePoly::new(k, vec![a.clone(), b.clone()]));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hermite_transform_and_span(seed in any::<u64>()) {
        let mut r = rng(seed);
        // coefficients grow quickly over F_3(T), so keep those shapes small
        for (k, max_n, max_deg) in [(f9(), 3, 2), (Field::rational_functions(3).unwrap(), 2, 1)] {
            let n = r.gen_range(1..=max_n);
            let m = random_module(&mut r, &k, n, max_deg);
            let h = m.hermite();
            prop_assert_eq!(h.t.mul(m.generators()), h.h.clone());
            let basis = TauSubmodule::new(m.basis());
            prop_assert!(basis.equals(&m).unwrap());
            for row in m.generators().to_rows() {
                prop_assert!(basis.contains(&row).unwrap());
            }
            for (i, &(_, c)) in h.pivots.iter().enumerate() {
                prop_assert!(h.h.get(i, c).is_monic());
            }
        }
    }

    #[test]
    fn radical_is_idempotent_and_larger(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = f9();
        let n = r.gen_range(1..=3);
        let m = random_module(&mut r, &k, n, 2);
        let rad = m.radical().unwrap();
        prop_assert!(m.is_subset(&rad).unwrap());
        prop_assert!(rad.is_radical().unwrap());
        prop_assert!(rad.radical().unwrap().equals(&rad).unwrap());
        prop_assert_eq!(rad.rank(), m.rank());
    }

    #[test]
    fn intersection_is_the_meet(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = f9();
        let n = r.gen_range(1..=3);
        let a = random_module(&mut r, &k, n, 1);
        let b = random_module(&mut r, &k, n, 1);
        let i = a.intersect(&b).unwrap();
        let s = a.sum(&b).unwrap();
        prop_assert!(i.is_subset(&a).unwrap() && i.is_subset(&b).unwrap());
        prop_assert!(a.is_subset(&s).unwrap() && b.is_subset(&s).unwrap());
        prop_assert_eq!(i.rank() + s.rank(), a.rank() + b.rank());
        // anything in both lands in the intersection
        let c = random_module(&mut r, &k, n, 1);
        let both = a.intersect(&c).unwrap().intersect(&b).unwrap();
        prop_assert!(both.is_subset(&i).unwrap());
    }

    #[test]
    fn left_kernel_is_sound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = f9();
        let (m, n) = (r.gen_range(1..=4), r.gen_range(1..=3));
        let l = ore_matrix(&mut r, &k, m, n, 2);
        let ker = left_kernel(&l);
        prop_assert!(ker.generators().mul(&l).is_zero());
        prop_assert_eq!(ker.rank() + TauSubmodule::new(l.clone()).rank(), m);
    }

    #[test]
    fn left_kernel_is_complete_in_low_degree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = Field::prime(3).unwrap();
        let l = ore_matrix(&mut r, &k, 3, 2, 1);
        let ker = left_kernel(&l);
        let polys = small_polys(&k);
        for a in &polys {
            for b in &polys {
                for c in &polys {
                    let row = vec![a.clone(), b.clone(), c.clone()];
                    let img = OreMatrix::from_rows(&k, 3, vec![row.clone()]).unwrap().mul(&l);
                    prop_assert_eq!(img.is_zero(), ker.contains(&row).unwrap());
                }
            }
        }
    }

    #[test]
    fn diagonal_form_identities(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = f9();
        let (m, n) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let l = ore_matrix(&mut r, &k, m, n, 2);
        let f = diagonalize(&l).unwrap();
        prop_assert_eq!(f.u.mul(&l).mul(&f.v), f.d.clone());
        prop_assert!(f.u.mul(&f.u_inv).is_identity() && f.u_inv.mul(&f.u).is_identity());
        prop_assert!(f.v.mul(&f.v_inv).is_identity() && f.v_inv.mul(&f.v).is_identity());
        prop_assert!(f.d.is_diagonal());
        let diag = f.diagonal();
        prop_assert_eq!(diag.iter().filter(|p| !p.is_zero()).count(), f.r);
        prop_assert!(diag.iter().take(f.r).all(|p| !p.is_zero()));
        prop_assert_eq!(f.r, TauSubmodule::new(l).rank());
    }
}
