//! A-module structures Φ: A → End(F) and their torsion.

use super::snf::invariant_factors;
use crate::coeffs::{APoly, Elem, Field};
use crate::error::{Error, Result};
use crate::linalg;
use crate::orelat::{hermite, OreMatrix};
use crate::qvar::{Morphism, QVariety};

/// Where δ: A → K sends T, seen through its kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Characteristic {
    /// ker δ = (p) for the monic prime p.
    Finite(APoly),
    Generic,
}

#[derive(Clone, Debug)]
pub struct AModule {
    carrier: QVariety,
    phi_t: Morphism,
    delta: Elem,
    characteristic: Characteristic,
}

#[derive(Clone, Debug)]
pub struct TorsionReport {
    pub a: APoly,
    pub torsion_variety: QVariety,
    pub dim_fq: usize,
    /// rank·deg a, when a rank was supplied.
    pub expected: Option<usize>,
    /// dim_K K{F}/a·K{F}, computed when F is irreducible and a ∉ ker δ.
    pub module_quotient_dim: Option<usize>,
    pub a_in_ker_delta: bool,
    pub infinite: bool,
    pub bad_prime_suspected: bool,
}

/// Tor(a, F) ⊆ F_{q^M}^n with its structure as an A-module.
#[derive(Clone, Debug)]
pub struct TorsionPoints {
    pub a: APoly,
    pub field: Field,
    /// An F_q-basis of Tor(a, F).
    pub basis: Vec<Vec<Elem>>,
    /// Column j holds the F_q-coordinates of Φ_T(basis[j]).
    pub t_action: Vec<Vec<u32>>,
    /// Invariant factors d_1 | d_2 | … with Tor(a, F) ≅ ⊕ A/d_i.
    pub elementary_divisors: Vec<APoly>,
}

impl TorsionPoints {
    pub fn dim_fq(&self) -> usize {
        self.basis.len()
    }

    pub fn count(&self) -> u128 {
        (self.field.q() as u128).pow(self.basis.len() as u32)
    }

    /// Every point of Tor(a, F), by F_q-combinations of the basis.
    pub fn enumerate(&self) -> Vec<Vec<Elem>> {
        let k = &self.field;
        let q = k.q();
        let n = self.basis.first().map_or(0, |b| b.len());
        let mut out = vec![vec![k.zero(); n]];
        for b in &self.basis {
            let mut next = Vec::with_capacity(out.len() * q as usize);
            for c in 0..q {
                let cb: Vec<Elem> = b.iter().map(|x| k.mul(&k.from_fq(c as u32), x)).collect();
                for p in &out {
                    next.push(p.iter().zip(&cb).map(|(x, y)| k.add(x, y)).collect());
                }
            }
            out = next;
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct TateReport {
    pub pi: APoly,
    pub r: usize,
    /// dim_fq Tor(π^k, F) for k = 1..n_max.
    pub dims: Vec<usize>,
    pub passed: bool,
}

fn characteristic_of(k: &Field, delta: &Elem) -> Characteristic {
    if let Some(c) = k.as_fq(delta) {
        let fq = k.fq().clone();
        return Characteristic::Finite(APoly::new(fq.clone(), vec![fq.neg(c), 1]));
    }
    match k.min_poly(delta) {
        Some(p) => Characteristic::Finite(p),
        None => Characteristic::Generic,
    }
}

impl AModule {
    /// Checks that Φ_T maps F into F and that d(Φ_T) = δ(T)·Id on T(F).
    pub fn new(carrier: &QVariety, phi_t: &OreMatrix, delta: &Elem) -> Result<AModule> {
        let phi = Morphism::new(carrier, carrier, phi_t)?;
        let k = phi.field().clone();
        let delta = k.coerce(delta);
        let m = AModule {
            carrier: phi.domain().clone(),
            characteristic: characteristic_of(&k, &delta),
            phi_t: phi,
            delta,
        };
        if !m.axiom_holds(&m.phi_t, &m.delta) {
            return Err(Error::Domain("d(Φ_T) is not δ(T)·Id on the tangent space".into()));
        }
        Ok(m)
    }

    pub fn carrier(&self) -> &QVariety {
        &self.carrier
    }
    pub fn phi_t(&self) -> &Morphism {
        &self.phi_t
    }
    pub fn delta(&self) -> &Elem {
        &self.delta
    }
    pub fn characteristic(&self) -> &Characteristic {
        &self.characteristic
    }
    pub fn field(&self) -> &Field {
        self.phi_t.field()
    }

    pub fn in_ker_delta(&self, a: &APoly) -> bool {
        match &self.characteristic {
            Characteristic::Finite(p) => a.is_zero() || a.rem(p).expect("nonzero").is_zero(),
            Characteristic::Generic => a.is_zero(),
        }
    }

    /// δ(a).
    pub fn delta_of(&self, a: &APoly) -> Elem {
        self.field().eval_apoly(a, &self.delta)
    }

    fn axiom_holds(&self, phi: &Morphism, scalar: &Elem) -> bool {
        let k = self.field();
        let d = phi.differential();
        d.domain.basis.iter().enumerate().all(|(j, v)| {
            (0..v.len()).all(|i| d.matrix[i][j] == k.mul(scalar, &v[i]))
        })
    }

    /// d(Φ_a) = δ(a)·Id on T(F).
    pub fn check_axiom(&self, a: &APoly) -> Result<bool> {
        let phi = self.phi(a)?;
        Ok(self.axiom_holds(&phi, &self.delta_of(a)))
    }

    /// The matrix of Φ_a by Horner's rule.
    pub fn phi_matrix(&self, a: &APoly) -> Result<OreMatrix> {
        let k = self.field();
        if **a.fq() != **k.fq() {
            return Err(Error::MixedBackends);
        }
        let n = self.carrier.n();
        let lt = self.phi_t.matrix();
        let id = OreMatrix::identity(k, n);
        let scalar = |c: u32| id.left_scale(&crate::ore::OrePoly::constant(k, k.from_fq(c)));
        let mut acc = OreMatrix::zero(k, n, n);
        for &c in a.coeffs().iter().rev() {
            acc = lt.mul(&acc).add(&scalar(c));
        }
        Ok(acc)
    }

    pub fn phi(&self, a: &APoly) -> Result<Morphism> {
        let l = self.phi_matrix(a)?;
        Ok(Morphism::from_parts(self.carrier.clone(), self.carrier.clone(), l))
    }

    /// Tor(a, F) = ker Φ_a.
    pub fn torsion(&self, a: &APoly, rank: Option<usize>) -> Result<TorsionReport> {
        let phi = self.phi(a)?;
        let tv = phi.kernel()?;
        let dim_fq = tv.finite_part_dim();
        let a_in_ker_delta = self.in_ker_delta(a);
        let infinite = tv.dimension() > 0;
        let module_quotient_dim = if self.carrier.is_irreducible() && !a_in_ker_delta {
            let d = self.module_quotient_dim(phi.matrix());
            if d != Some(dim_fq) || infinite {
                return Err(Error::Invariant(format!(
                    "dim_fq Tor({a}) = {dim_fq} but dim_K K{{F}}/a·K{{F}} = {d:?}"
                )));
            }
            d
        } else {
            None
        };
        let expected = rank.and_then(|r| a.degree().map(|d| r * d));
        let bad_prime_suspected = expected.is_some_and(|e| e != dim_fq) || infinite;
        Ok(TorsionReport {
            a: a.clone(),
            torsion_variety: tv,
            dim_fq,
            expected,
            module_quotient_dim,
            a_in_ker_delta,
            infinite,
            bad_prime_suspected,
        })
    }

    /// For irreducible F = W(0 × K^{n−r}): K{F} ≅ Λ_{n−r} and a acts as the
    /// block B of W_inv·L_a·W on the free coordinates; the quotient by the row
    /// module of B has dimension Σ deg of the Hermite pivots (None if B is
    /// singular).
    fn module_quotient_dim(&self, la: &OreMatrix) -> Option<usize> {
        let f = &self.carrier;
        let (r, n) = (f.r(), f.n());
        let full = f.w_inv().mul(la).mul(f.w());
        let free: Vec<usize> = (r..n).collect();
        let b = full.select_rows(&free).select_cols(&free);
        let h = hermite(&b);
        if h.rank() < n - r {
            return None;
        }
        Some(h.pivots.iter().map(|&(i, j)| h.h.get(i, j).degree().expect("pivot")).sum())
    }

    /// Tor(a, F) enumerated over the smallest F_{q^M} (M ≤ max_ext) holding it,
    /// with the invariant factors of its A-module structure.
    pub fn torsion_points(&self, a: &APoly, max_ext: usize) -> Result<TorsionPoints> {
        let k = self.field();
        if !k.is_finite() {
            return Err(Error::Capability("torsion points are enumerated only in finite characteristic".into()));
        }
        if self.in_ker_delta(a) {
            return Err(Error::Domain(format!("{a} lies in ker δ")));
        }
        let phi = self.phi(a)?;
        let tv = phi.kernel()?;
        if tv.dimension() > 0 {
            return Err(Error::Invariant(format!("Tor({a}) is not finite")));
        }
        let fp = tv.finite_part(max_ext)?;
        let big = fp.field().clone();
        let la = phi.matrix().embed(&fp.embedding);
        let lt = self.phi_t.matrix().embed(&fp.embedding);
        let basis = fp.points;
        for b in &basis {
            if la.apply(b).iter().any(|x| !big.is_zero(x)) {
                return Err(Error::Invariant("enumerated point is not killed by Φ_a".into()));
            }
        }
        let flat = |x: &[Elem]| -> Vec<u32> { x.iter().flat_map(|e| big.coords(e).expect("finite")).collect() };
        let d = basis.len();
        let cols: Vec<Vec<u32>> = basis.iter().map(|b| flat(b)).collect();
        let len = cols.first().map_or(0, |c| c.len());
        let system: Vec<Vec<u32>> = (0..len).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        let mut t_cols = Vec::with_capacity(d);
        for b in &basis {
            let img = flat(&lt.apply(b));
            let c = linalg::fq_solve(big.fq(), &system, &img)
                .ok_or_else(|| Error::Invariant("Φ_T leaves the torsion space".into()))?;
            t_cols.push(c);
        }
        let t_action: Vec<Vec<u32>> = (0..d).map(|i| t_cols.iter().map(|c| c[i]).collect()).collect();
        let fq = k.fq().clone();
        let t = APoly::t(fq.clone());
        let char_matrix: Vec<Vec<APoly>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let m = APoly::constant(fq.clone(), t_action[i][j]);
                        if i == j { t.sub(&m) } else { m.neg() }
                    })
                    .collect()
            })
            .collect();
        let divisors = invariant_factors(char_matrix);
        let total: usize = divisors.iter().map(|p| p.degree().expect("nonzero")).sum();
        if total != d {
            return Err(Error::Invariant(format!(
                "invariant factors of degree {total} for a torsion space of dimension {d}"
            )));
        }
        Ok(TorsionPoints { a: a.clone(), field: big, basis, t_action, elementary_divisors: divisors })
    }

    /// dim_fq Tor(π^k) = k·r·deg π for k = 1..n_max, with r read off at k = 1.
    pub fn tate_check(&self, pi: &APoly, n_max: usize) -> Result<TateReport> {
        if self.in_ker_delta(pi) {
            return Err(Error::Domain(format!("{pi} lies in ker δ")));
        }
        if !pi.is_prime() {
            return Err(Error::Domain(format!("{pi} is not prime")));
        }
        if !self.carrier.is_irreducible() {
            return Err(Error::Domain("the Tate check needs an irreducible carrier".into()));
        }
        let deg = pi.degree().expect("prime");
        let mut dims = Vec::with_capacity(n_max);
        for e in 1..=n_max {
            dims.push(self.torsion(&pi.pow(e as u32), None)?.dim_fq);
        }
        let r = dims.first().map_or(0, |d| d / deg);
        let passed = dims.first().is_none_or(|d| d % deg == 0)
            && dims.iter().enumerate().all(|(i, &d)| d == (i + 1) * r * deg);
        Ok(TateReport { pi: pi.clone(), r, dims, passed })
    }
}
