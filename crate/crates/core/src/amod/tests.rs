use super::*;
use crate::coeffs::{APoly, Elem, Field};
use crate::error::Error;
use crate::ore::OrePoly;
use crate::orelat::{OreMatrix, TauSubmodule};
use crate::qvar::{zeros, QVariety};

fn ft() -> Field {
    Field::rational_functions(3).unwrap()
}

/// c0 + c1 τ + c2 τ² with field coefficients.
fn op(k: &Field, c: &[Elem]) -> OrePoly {
    OrePoly::new(k, c.to_vec())
}

fn a(k: &Field, c: &[u32]) -> APoly {
    APoly::new(k.fq().clone(), c.to_vec())
}

fn module_on(k: &Field, phi: Vec<Vec<OrePoly>>, delta: &Elem) -> AModule {
    let n = phi.len();
    let l = OreMatrix::from_rows(k, n, phi).unwrap();
    AModule::new(&QVariety::full(k, n), &l, delta).unwrap()
}

/// Φ_T = [[T + τ², τ], [Tτ, T]].
fn worked_example() -> AModule {
    let k = ft();
    let t = k.t().unwrap();
    let (z, o) = (k.zero(), k.one());
    module_on(
        &k,
        vec![
            vec![op(&k, &[t.clone(), z.clone(), o.clone()]), op(&k, &[z.clone(), o.clone()])],
            vec![op(&k, &[z.clone(), t.clone()]), op(&k, &[t.clone()])],
        ],
        &t,
    )
}

/// C ⊕ C⁻: Φ_T = [[T, τ], [τ, T]].
fn carlitz_pair() -> AModule {
    let k = ft();
    let t = k.t().unwrap();
    let (z, o) = (k.zero(), k.one());
    module_on(
        &k,
        vec![
            vec![op(&k, &[t.clone()]), op(&k, &[z.clone(), o.clone()])],
            vec![op(&k, &[z.clone(), o.clone()]), op(&k, &[t.clone()])],
        ],
        &t,
    )
}

fn carlitz(k: &Field, delta: &Elem) -> AModule {
    module_on(k, vec![vec![op(k, &[delta.clone(), k.one()])]], delta)
}

fn line(k: &Field, c: &[OrePoly]) -> QVariety {
    zeros(&TauSubmodule::from_rows(k, 2, vec![c.to_vec()]).unwrap()).unwrap()
}

#[test]
fn worked_example_torsion() {
    let m = worked_example();
    let k = m.field().clone();
    let t = a(&k, &[0, 1]);
    let tm1 = a(&k, &[2, 1]);
    let r0 = m.torsion(&t, None).unwrap();
    assert_eq!(r0.dim_fq, 0);
    assert_eq!(r0.module_quotient_dim, Some(0));
    let r1 = m.torsion(&tm1, None).unwrap();
    assert_eq!(r1.dim_fq, 2);
    assert_eq!(r1.torsion_variety.dimension(), 0);
    let rank = m.rank(None).unwrap();
    assert_eq!(rank.rank, 2);
    assert_eq!(rank.bad_primes, vec![t.clone()]);
    let tate = m.tate_check(&tm1, 3).unwrap();
    assert!(tate.passed);
    assert_eq!((tate.r, tate.dims.clone()), (2, vec![2, 4, 6]));
    let tate0 = m.tate_check(&t, 3).unwrap();
    assert!(tate0.passed);
    assert_eq!(tate0.r, 0);
}

#[test]
fn phi_is_a_ring_morphism() {
    let k = ft();
    let m = carlitz(&k, &k.t().unwrap());
    let t2 = a(&k, &[0, 0, 1]);
    let phi = m.phi_matrix(&t2).unwrap();
    let tt = k.t().unwrap();
    let expect = op(&k, &[k.mul(&tt, &tt), k.add(&tt, &k.pow(&tt, 3)), k.one()]);
    assert_eq!(phi.get(0, 0), &expect);
    assert!(m.phi_matrix(&a(&k, &[1])).unwrap().is_identity());
    assert!(m.phi_matrix(&a(&k, &[])).unwrap().is_zero());
    let x = a(&k, &[1, 2]);
    let y = a(&k, &[2, 0, 1]);
    let px = m.phi_matrix(&x).unwrap();
    let py = m.phi_matrix(&y).unwrap();
    assert_eq!(m.phi_matrix(&x.add(&y)).unwrap(), px.add(&py));
    assert_eq!(m.phi_matrix(&x.mul(&y)).unwrap(), px.mul(&py));
    assert!(m.check_axiom(&y).unwrap());
    assert_eq!(m.rank(None).unwrap().rank, 1);
    assert_eq!(m.characteristic(), &Characteristic::Generic);
}

#[test]
fn axiom_is_enforced() {
    let k = ft();
    let t = k.t().unwrap();
    let l = OreMatrix::from_rows(&k, 1, vec![vec![op(&k, &[k.one(), k.one()])]]).unwrap();
    assert!(matches!(AModule::new(&QVariety::full(&k, 1), &l, &t), Err(Error::Domain(_))));
}

#[test]
fn carlitz_pair_and_triangular() {
    let m = carlitz_pair();
    let k = m.field().clone();
    for c in [vec![0, 1], vec![2, 1], vec![1, 1], vec![1, 0, 1]] {
        let p = a(&k, &c);
        assert_eq!(m.torsion(&p, None).unwrap().dim_fq, 2 * p.degree().unwrap());
    }
    assert_eq!(m.rank(None).unwrap().rank, 2);

    let t = k.t().unwrap();
    let (z, o) = (k.zero(), k.one());
    let tri = module_on(
        &k,
        vec![
            vec![op(&k, &[t.clone()]), op(&k, &[z.clone(), o.clone()])],
            vec![OrePoly::zero(&k), op(&k, &[t.clone()])],
        ],
        &t,
    );
    for c in [vec![0, 1], vec![2, 1], vec![1, 0, 1]] {
        assert_eq!(tri.torsion(&a(&k, &c), None).unwrap().dim_fq, 0);
    }
    assert_eq!(tri.rank(None).unwrap().rank, 0);
}

#[test]
fn trivial_module_has_rank_zero() {
    let k = ft();
    let t = k.t().unwrap();
    let l = OreMatrix::diagonal(&k, &[op(&k, &[t.clone()]), op(&k, &[t.clone()])]);
    let m = AModule::new(&QVariety::full(&k, 2), &l, &t).unwrap();
    assert_eq!(m.rank(None).unwrap().rank, 0);
}

#[test]
fn finite_characteristic_torsion_points() {
    let k = Field::prime(3).unwrap();
    let m = carlitz(&k, &k.one());
    assert_eq!(m.characteristic(), &Characteristic::Finite(a(&k, &[2, 1])));
    for c in [vec![0, 1], vec![1, 1], vec![1, 0, 1], vec![2, 1, 1], vec![2, 2, 1]] {
        let p = a(&k, &c);
        let tp = m.torsion_points(&p, 12).unwrap();
        assert_eq!(tp.count(), 3u128.pow(p.degree().unwrap() as u32));
        assert_eq!(tp.elementary_divisors, vec![p.clone()]);
        let pts = tp.enumerate();
        let mut distinct = pts.clone();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len() as u128, tp.count());
    }
    let none = m.torsion_points(&a(&k, &[1]), 4).unwrap();
    assert!(none.elementary_divisors.is_empty());
    assert_eq!(none.count(), 1);
    assert!(matches!(m.torsion_points(&a(&k, &[2, 1]), 4), Err(Error::Domain(_))));
}

#[test]
fn finite_characteristic_pair() {
    let k = Field::prime(3).unwrap();
    let (z, o) = (k.zero(), k.one());
    let m = module_on(
        &k,
        vec![
            vec![op(&k, &[o.clone()]), op(&k, &[z.clone(), o.clone()])],
            vec![op(&k, &[z.clone(), o.clone()]), op(&k, &[o.clone()])],
        ],
        &o,
    );
    let p = a(&k, &[0, 1]);
    let tp = m.torsion_points(&p, 12).unwrap();
    assert_eq!(tp.elementary_divisors, vec![p.clone(), p]);
}

#[test]
fn submodules_of_the_pair() {
    let m = carlitz_pair();
    let k = m.field().clone();
    let (one, zero) = (OrePoly::one(&k), OrePoly::zero(&k));
    let diagonal = line(&k, &[one.clone(), one.neg()]);
    let axis = line(&k, &[zero.clone(), one.clone()]);
    assert!(m.is_a_submodule(&diagonal).unwrap());
    assert!(!m.is_a_submodule(&axis).unwrap());
    assert!(m.is_a_submodule(m.carrier()).unwrap());

    let add = m.rank_additivity_check(&diagonal, None).unwrap();
    assert_eq!((add.rank_f, add.rank_h, add.rank_quotient), (2, 1, 1));
    assert!(add.passed);

    let (j, _) = m.jacobian(&diagonal, 8).unwrap();
    assert!(j.equals(&diagonal).unwrap());
    let (j2, _) = m.jacobian(&axis, 8).unwrap();
    assert!(j2.equals(&QVariety::full(&k, 2)).unwrap());
    let origin = QVariety::point(&k, 2);
    assert!(m.jacobian(&origin, 8).unwrap().0.equals(&origin).unwrap());

    assert!(m.g_max(&axis).unwrap().equals(&origin).unwrap());
    assert!(m.is_sufficiently_generic(&axis).unwrap());
    assert!(m.g_max(&diagonal).unwrap().equals(&diagonal).unwrap());
    assert!(!m.is_sufficiently_generic(&diagonal).unwrap());
}

#[test]
fn additivity_edge_cases() {
    let m = carlitz_pair();
    let k = m.field().clone();
    let all = m.rank_additivity_check(m.carrier(), None).unwrap();
    assert_eq!((all.rank_h, all.rank_quotient), (2, 0));
    let origin = QVariety::point(&k, 2);
    let none = m.rank_additivity_check(&origin, None).unwrap();
    assert_eq!((none.rank_h, none.rank_quotient), (0, 2));
    let one = OrePoly::one(&k);
    let axis = line(&k, &[OrePoly::zero(&k), one]);
    assert!(matches!(m.rank_additivity_check(&axis, None), Err(Error::NotASubmodule)));
}

#[test]
fn exactness_on_the_diagonal() {
    let m = carlitz_pair();
    let k = m.field().clone();
    let one = OrePoly::one(&k);
    let diagonal = line(&k, &[one.clone(), one.neg()]);
    let samples = [a(&k, &[0, 1]), a(&k, &[2, 1]), a(&k, &[1, 0, 1])];
    let rep = m.torsion_exactness_check(&diagonal, &samples).unwrap();
    assert!(rep.passed);
    assert!(rep.entries.iter().all(|e| e.checked));
}
