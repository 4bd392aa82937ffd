mod common;

use common::*;
use proptest::prelude::*;
use qvariety::amod::AModule;
use qvariety::coeffs::{APoly, Field};
use qvariety::error::Error;
use qvariety::ore::OrePoly;
use qvariety::orelat::OreMatrix;
use qvariety::qvar::{zeros, QVariety};
use rand::Rng;

fn f9() -> Field {
    Field::extension(3, 2).unwrap()
}

fn apoly(r: &mut Rng8, k: &Field, max_deg: usize) -> APoly {
    let q = k.fq().q();
    let d = r.gen_range(0..=max_deg);
    let mut c: Vec<u32> = (0..d).map(|_| r.gen_range(0..q)).collect();
    c.push(r.gen_range(1..q));
    APoly::new(k.fq().clone(), c)
}

/// Φ_T = T·I + τ·N over F_3(T) with N random of degree ≤ 1.
fn generic_module(r: &mut Rng8, n: usize) -> AModule {
    let k = Field::rational_functions(3).unwrap();
    let t = k.t().unwrap();
    let tau = OrePoly::tau(&k, 1);
    let rows: Vec<Vec<OrePoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = tau.mul(&ore_entry(r, &k, 1));
                    if i == j { e.add(&OrePoly::constant(&k, t.clone())) } else { e }
                })
                .collect()
        })
        .collect();
    let l = OreMatrix::from_rows(&k, n, rows).unwrap();
    AModule::new(&QVariety::full(&k, n), &l, &t).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn phi_is_a_ring_morphism(seed in any::<u64>()) {
        let mut r = rng(seed);
        let finite = finite_configuration(&mut r, &f9()).unwrap().0;
        let n = r.gen_range(1..=2);
        for m in [finite, generic_module(&mut r, n)] {
            let k = m.field().clone();
            let (a, b) = (apoly(&mut r, &k, 2), apoly(&mut r, &k, 2));
            let (pa, pb) = (m.phi_matrix(&a).unwrap(), m.phi_matrix(&b).unwrap());
            prop_assert_eq!(m.phi_matrix(&a.add(&b)).unwrap(), pa.add(&pb));
            prop_assert_eq!(m.phi_matrix(&a.mul(&b)).unwrap(), pa.mul(&pb));
            prop_assert!(m.check_axiom(&a).unwrap());
            // the linear part of Φ_a is δ(a)
            let lin = pa.linear_parts();
            let da = m.delta_of(&a);
            for (i, row) in lin.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    let want = if i == j { da.clone() } else { k.zero() };
                    prop_assert_eq!(x, &want);
                }
            }
        }
    }

    #[test]
    fn torsion_is_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=2);
        let m = generic_module(&mut r, n);
        let k = m.field().clone();
        let (a, b) = (apoly(&mut r, &k, 1), apoly(&mut r, &k, 1));
        prop_assume!(a.gcd(&b).degree() == Some(0));
        let ta = m.torsion(&a, None).unwrap();
        let tb = m.torsion(&b, None).unwrap();
        let tab = m.torsion(&a.mul(&b), None).unwrap();
        prop_assert_eq!(tab.dim_fq, ta.dim_fq + tb.dim_fq);
        for rep in [&ta, &tb, &tab] {
            prop_assert!(!rep.infinite);
            prop_assert_eq!(rep.module_quotient_dim, Some(rep.dim_fq));
        }
    }

    #[test]
    fn torsion_points_match_dimensions(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = f9();
        let m = finite_configuration(&mut r, &k).unwrap().0;
        let a = apoly(&mut r, &k, 1);
        prop_assume!(!m.in_ker_delta(&a));
        let rep = m.torsion(&a, None).unwrap();
        let tp = match m.torsion_points(&a, 12) {
            Err(Error::NoSplittingFound(_)) => return Err(TestCaseError::reject("no splitting field")),
            v => v.unwrap(),
        };
        prop_assert_eq!(tp.dim_fq(), rep.dim_fq);
        prop_assert_eq!(tp.count(), (k.fq().q() as u128).pow(rep.dim_fq as u32));
        let mut total = 0;
        for e in &tp.elementary_divisors {
            prop_assert!(a.monic().rem(e).unwrap().is_zero());
            total += e.degree().unwrap();
        }
        prop_assert_eq!(total, rep.dim_fq);
    }

    #[test]
    fn g_max_is_the_largest_stable_component(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = f9();
        let s = finite_setup(&mut r, &k).unwrap();
        let m = &s.module;
        prop_assert!(m.g_max(&s.sub).unwrap().equals(&s.sub).unwrap());
        let extra = zeros(&random_module(&mut r, &k, m.carrier().n(), 1)).unwrap();
        let h = match s.sub.sum(&extra) {
            Ok(h) => h,
            Err(_) => return Err(TestCaseError::reject("no splitting field")),
        };
        let g = m.g_max(&h).unwrap();
        prop_assert!(g.is_irreducible());
        prop_assert!(h.contains_variety(&g).unwrap());
        prop_assert!(m.is_a_submodule(&g).unwrap());
        prop_assert!(g.contains_variety(&s.sub).unwrap());
    }

    #[test]
    fn jacobian_is_the_least_submodule(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = f9();
        let s = finite_setup(&mut r, &k).unwrap();
        let m = &s.module;
        let n = m.carrier().n();
        let h = s.sub.intersection(&zeros(&random_module(&mut r, &k, n, 1)).unwrap()).unwrap();
        let (j, _) = m.jacobian(&h, 4 * n + 4).unwrap();
        prop_assert!(j.contains_variety(&h).unwrap());
        prop_assert!(m.is_a_submodule(&j).unwrap());
        prop_assert!(s.sub.contains_variety(&j).unwrap());
        // the coordinates of W^{-1} outside the first s vanish on J
        for i in s.s..n {
            prop_assert!(j.annihilator().contains(&s.w_inv.row(i)).unwrap());
        }
    }
}
