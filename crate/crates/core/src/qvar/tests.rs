use super::*;
use crate::coeffs::Field;
use crate::error::Error;
use crate::ore::OrePoly;
use crate::orelat::{OreMatrix, TauSubmodule};

fn f3() -> Field {
    Field::prime(3).unwrap()
}

fn p(k: &Field, c: &[i64]) -> OrePoly {
    OrePoly::new(k, c.iter().map(|&x| k.from_int(x)).collect())
}

fn module(k: &Field, n: usize, rows: Vec<Vec<OrePoly>>) -> TauSubmodule {
    TauSubmodule::from_rows(k, n, rows).unwrap()
}

fn matrix(k: &Field, cols: usize, rows: Vec<Vec<OrePoly>>) -> OreMatrix {
    OreMatrix::from_rows(k, cols, rows).unwrap()
}

/// Z(X_1^q − X_1, X_2) = F_q × {0}.
fn fq_axis(k: &Field) -> QVariety {
    zeros(&module(
        k,
        2,
        vec![vec![p(k, &[-1, 1]), OrePoly::zero(k)], vec![OrePoly::zero(k), OrePoly::one(k)]],
    ))
    .unwrap()
}

#[test]
fn zeros_examples() {
    let k = f3();
    let origin = zeros(&TauSubmodule::full(&k, 3)).unwrap();
    assert_eq!(origin.dimension(), 0);
    assert_eq!(origin.r(), 3);
    assert!(origin.seps().iter().all(|s| s.is_one()));

    let tau = zeros(&module(&k, 1, vec![vec![OrePoly::tau(&k, 1)]])).unwrap();
    assert!(tau.annihilator().equals(&TauSubmodule::full(&k, 1)).unwrap());
    assert!(tau.radicalized());

    let all = zeros(&TauSubmodule::zero(&k, 2)).unwrap();
    assert_eq!(all.dimension(), 2);
    assert!(!all.radicalized());
}

#[test]
fn dimension_and_components() {
    let k = f3();
    let f = fq_axis(&k);
    assert_eq!(f.dimension(), 0);
    assert_eq!(f.finite_part_dim(), 1);
    assert!(!f.is_irreducible());
    let c = f.irreducible_component();
    assert!(c.equals(&QVariety::point(&k, 2)).unwrap());

    // F_q × K
    let g = zeros(&module(&k, 2, vec![vec![p(&k, &[-1, 1]), OrePoly::zero(&k)]])).unwrap();
    assert_eq!(g.dimension(), 1);
    let gc = g.irreducible_component();
    let expect = zeros(&module(&k, 2, vec![vec![OrePoly::one(&k), OrePoly::zero(&k)]])).unwrap();
    assert!(gc.equals(&expect).unwrap());
    assert!(gc.is_irreducible());
    assert!(QVariety::full(&k, 3).is_irreducible());
}

#[test]
fn tangent_spaces() {
    let k = f3();
    assert_eq!(QVariety::full(&k, 2).tangent_space().dim(), 2);
    assert_eq!(fq_axis(&k).tangent_space().dim(), 0);
    assert_eq!(QVariety::point(&k, 2).tangent_space().dim(), 0);
}

#[test]
fn points_to_variety() {
    let k = f3();
    let f = variety_from_points(&k, 2, &[vec![k.one(), k.zero()]]).unwrap();
    assert!(f.equals(&fq_axis(&k)).unwrap());
    let empty = variety_from_points(&k, 2, &[]).unwrap();
    assert!(empty.equals(&QVariety::point(&k, 2)).unwrap());
    let f9 = Field::extension(3, 2).unwrap();
    let g = f9.generator().unwrap();
    let pts = vec![vec![f9.one(), g.clone()], vec![g.clone(), f9.zero()]];
    let v = variety_from_points(&f9, 2, &pts).unwrap();
    assert_eq!(v.finite_part_dim(), 2);
    assert!(v.contains_point(&[f9.add(&f9.one(), &g), g.clone()]));
    assert!(!v.contains_point(&[f9.one(), f9.zero()]));
    assert!(variety_from_points(&Field::rational_functions(3).unwrap(), 1, &[]).is_err());
}

#[test]
fn morphism_certification() {
    let k = f3();
    let line = QVariety::full(&k, 1);
    let frob = matrix(&k, 1, vec![vec![OrePoly::tau(&k, 1)]]);
    assert!(Morphism::new(&line, &line, &frob).is_ok());
    let one = matrix(&k, 1, vec![vec![OrePoly::one(&k)]]);
    let origin = QVariety::point(&k, 1);
    assert!(matches!(Morphism::new(&line, &origin, &one), Err(Error::NotAMorphismInto)));
    let id = Morphism::identity(&fq_axis(&k));
    assert!(Morphism::new(id.domain(), id.codomain(), id.matrix()).is_ok());
    let back = id.module_map();
    assert!(Morphism::new(id.domain(), id.codomain(), &back).is_ok());
}

#[test]
fn images() {
    let k = f3();
    let line = QVariety::full(&k, 1);
    let frob = Morphism::new(&line, &line, &matrix(&k, 1, vec![vec![OrePoly::tau(&k, 1)]])).unwrap();
    assert!(frob.image().unwrap().equals(&line).unwrap());

    let plane = QVariety::full(&k, 2);
    let diag = matrix(&k, 1, vec![vec![OrePoly::one(&k)], vec![OrePoly::one(&k)]]);
    let d = Morphism::new(&line, &plane, &diag).unwrap();
    let expect = zeros(&module(&k, 2, vec![vec![OrePoly::one(&k), p(&k, &[-1])]])).unwrap();
    assert!(d.image().unwrap().equals(&expect).unwrap());

    let zero = Morphism::new(&line, &plane, &OreMatrix::zero(&k, 2, 1)).unwrap();
    assert!(zero.image().unwrap().equals(&QVariety::point(&k, 2)).unwrap());
}

#[test]
fn image_routes_agree_with_finite_part() {
    let k = f3();
    // F = F_q × K, ψ(x, y) = (x + y^q, x)
    let f = zeros(&module(&k, 2, vec![vec![p(&k, &[-1, 1]), OrePoly::zero(&k)]])).unwrap();
    let l = matrix(
        &k,
        2,
        vec![vec![OrePoly::one(&k), OrePoly::tau(&k, 1)], vec![OrePoly::one(&k), OrePoly::zero(&k)]],
    );
    let psi = Morphism::new(&f, &QVariety::full(&k, 2), &l).unwrap();
    let alg = psi.image().unwrap();
    let pts = psi.image_by_points(6).unwrap();
    let emb = crate::coeffs::Embedding::new(&k, pts.field()).unwrap();
    assert!(alg.embed(&emb).equals(&pts).unwrap());
    assert_eq!(alg.dimension(), 1);
    assert_eq!(alg.finite_part_dim(), 1);
}

#[test]
fn kernels_and_preimages() {
    let k = f3();
    let line = QVariety::full(&k, 1);
    let id = Morphism::identity(&line);
    assert!(id.kernel().unwrap().equals(&QVariety::point(&k, 1)).unwrap());
    let artin = Morphism::new(&line, &line, &matrix(&k, 1, vec![vec![p(&k, &[-1, 1])]])).unwrap();
    let ker = artin.kernel().unwrap();
    assert_eq!((ker.dimension(), ker.finite_part_dim()), (0, 1));
    assert!(artin.preimage(&line).unwrap().equals(&line).unwrap());
}

#[test]
fn sums_and_intersections() {
    let k = f3();
    let x1 = zeros(&module(&k, 2, vec![vec![OrePoly::one(&k), OrePoly::zero(&k)]])).unwrap();
    let x2 = zeros(&module(&k, 2, vec![vec![OrePoly::zero(&k), OrePoly::one(&k)]])).unwrap();
    assert!(x1.sum(&x2).unwrap().equals(&QVariety::full(&k, 2)).unwrap());
    assert!(x1.sum(&QVariety::point(&k, 2)).unwrap().equals(&x1).unwrap());
    assert!(x1.intersection(&x2).unwrap().equals(&QVariety::point(&k, 2)).unwrap());
}

#[test]
fn quotients() {
    let k = f3();
    let line = QVariety::full(&k, 1);
    let fq = zeros(&module(&k, 1, vec![vec![p(&k, &[-1, 1])]])).unwrap();
    let (q, pi) = quotient(&line, &fq).unwrap();
    assert!(q.equals(&line).unwrap());
    assert_eq!(pi.matrix().get(0, 0), &p(&k, &[-1, 1]));
    assert!(pi.kernel().unwrap().equals(&fq).unwrap());
    let dpi = pi.differential();
    assert_eq!(dpi.matrix, vec![vec![k.from_int(-1)]]);

    let (q0, _) = quotient(&line, &QVariety::point(&k, 1)).unwrap();
    assert_eq!(q0.dimension(), 1);
    let (qf, _) = quotient(&line, &line).unwrap();
    assert!(qf.equals(&QVariety::point(&k, 0)).unwrap());
    assert!(matches!(quotient(&fq, &line), Err(Error::NotASubvariety)));
}

#[test]
fn separability() {
    let k = f3();
    let line = QVariety::full(&k, 1);
    let frob = Morphism::new(&line, &line, &matrix(&k, 1, vec![vec![OrePoly::tau(&k, 1)]])).unwrap();
    assert!(!frob.is_separable().unwrap());
    assert_eq!(frob.differential().matrix, vec![vec![k.zero()]]);
    let artin = Morphism::new(&line, &line, &matrix(&k, 1, vec![vec![p(&k, &[-1, 1])]])).unwrap();
    assert!(artin.is_separable().unwrap());
    assert!(Morphism::identity(&line).is_separable().unwrap());
}
