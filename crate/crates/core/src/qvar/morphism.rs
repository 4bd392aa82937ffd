//! Morphisms ψ(x) = L·x between q-varieties.

use super::variety::{variety_from_points, zeros, QVariety, TangentSpace};
use crate::coeffs::{Elem, Field};
use crate::error::{Error, Result};
use crate::linalg;
use crate::orelat::{left_kernel, reduce, row_times, OreMatrix, TauSubmodule};

#[derive(Clone, Debug)]
pub struct Morphism {
    domain: QVariety,
    codomain: QVariety,
    l: OreMatrix,
}

/// The K-linear map d(ψ) on T(F), as the m×dim T(F) matrix of images of the
/// tangent basis in ambient coordinates.
#[derive(Clone, Debug)]
pub struct Differential {
    pub domain: TangentSpace,
    pub matrix: Vec<Vec<Elem>>,
}

impl Differential {
    pub fn rank(&self, k: &Field) -> usize {
        linalg::k_rank(k, &self.matrix)
    }
}

fn common_field(fields: &[&Field]) -> Result<Field> {
    let mut k = fields[0].clone();
    for f in &fields[1..] {
        k = k.join(f)?;
    }
    Ok(k)
}

impl Morphism {
    /// Certifies ψ(F) ⊆ H: g·L ∈ M(F) for every generator g of M(H).
    pub fn new(domain: &QVariety, codomain: &QVariety, l: &OreMatrix) -> Result<Morphism> {
        if l.rows() != codomain.n() || l.cols() != domain.n() {
            return Err(Error::Shape(format!(
                "a {}x{} matrix cannot map K^{} to K^{}",
                l.rows(),
                l.cols(),
                domain.n(),
                codomain.n()
            )));
        }
        let k = common_field(&[domain.field(), codomain.field(), l.field()])?;
        let domain = domain.coerce(&k)?;
        let codomain = codomain.coerce(&k)?;
        let l = l.coerce(&k)?;
        let gens = codomain.annihilator().basis();
        for i in 0..gens.rows() {
            if !domain.annihilator().contains(&row_times(gens.row_slice(i), &l))? {
                return Err(Error::NotAMorphismInto);
            }
        }
        Ok(Morphism { domain, codomain, l })
    }

    /// Wraps a matrix already known to map `domain` into `codomain`.
    pub(crate) fn from_parts(domain: QVariety, codomain: QVariety, l: OreMatrix) -> Morphism {
        Morphism { domain, codomain, l }
    }

    pub fn identity(f: &QVariety) -> Morphism {
        Morphism {
            domain: f.clone(),
            codomain: f.clone(),
            l: OreMatrix::identity(f.field(), f.n()),
        }
    }

    pub fn domain(&self) -> &QVariety {
        &self.domain
    }
    pub fn codomain(&self) -> &QVariety {
        &self.codomain
    }
    pub fn matrix(&self) -> &OreMatrix {
        &self.l
    }
    pub fn field(&self) -> &Field {
        self.l.field()
    }

    /// self ∘ inner.
    pub fn compose(&self, inner: &Morphism) -> Result<Morphism> {
        let k = self.field().join(inner.field())?;
        let l = self.l.coerce(&k)?.try_mul(&inner.l.coerce(&k)?)?;
        Ok(Morphism {
            domain: inner.domain.coerce(&k)?,
            codomain: self.codomain.coerce(&k)?,
            l,
        })
    }

    pub fn apply(&self, x: &[Elem]) -> Vec<Elem> {
        self.l.apply(x)
    }

    /// The class of each component modulo M(F): the map Λ_m/M(H) → Λ_n/M(F)
    /// on the basis X_1..X_m.
    pub fn module_map(&self) -> OreMatrix {
        let h = self.domain.annihilator().hermite();
        let rows = (0..self.l.rows()).map(|i| reduce(h, self.l.row_slice(i)).0).collect();
        OreMatrix::from_rows(self.field(), self.l.cols(), rows).expect("shape")
    }

    /// {g : g·L ∈ M(F)} = M(ψ(F)).
    pub fn image_module(&self) -> Result<TauSubmodule> {
        let m = self.l.rows();
        let g = self.domain.annihilator().basis();
        let stacked = self.l.vstack(&g)?;
        let ker = left_kernel(&stacked);
        let proj = ker.generators().select_cols(&(0..m).collect::<Vec<_>>());
        Ok(TauSubmodule::new(proj.nonzero_rows()))
    }

    pub fn image(&self) -> Result<QVariety> {
        zeros(&self.image_module()?)
    }

    /// ψ(F) assembled from ψ(F̊) = Z(left kernel of L·W on the free columns)
    /// and the F_q-span of the images of the finite-part points; the result
    /// lives over F_{q^M}.
    pub fn image_by_points(&self, max_ext: usize) -> Result<QVariety> {
        let f = &self.domain;
        let r = f.r();
        let lw = self.l.try_mul(f.w())?;
        let free = lw.select_cols(&(r..f.n()).collect::<Vec<_>>());
        let irr = left_kernel(&free);
        let fp = f.finite_part(max_ext)?;
        let emb = &fp.embedding;
        let l_big = self.l.embed(emb);
        let images: Vec<Vec<Elem>> = fp.points.iter().map(|x| l_big.apply(x)).collect();
        let finite = variety_from_points(fp.field(), self.l.rows(), &images)?;
        let irr_big = zeros(&TauSubmodule::new(irr.generators().embed(emb)))?;
        irr_big.sum(&finite)
    }

    pub fn preimage(&self, g: &QVariety) -> Result<QVariety> {
        if g.n() != self.l.rows() {
            return Err(Error::Shape("preimage of a variety in the wrong ambient space".into()));
        }
        let k = self.field().join(g.field())?;
        let l = self.l.coerce(&k)?;
        let gens = g.annihilator().coerce(&k)?.basis();
        let pulled: Vec<Vec<_>> =
            (0..gens.rows()).map(|i| row_times(gens.row_slice(i), &l)).collect();
        let pulled = OreMatrix::from_rows(&k, l.cols(), pulled)?;
        let base = self.domain.annihilator().coerce(&k)?;
        zeros(&base.sum(&TauSubmodule::new(pulled))?)
    }

    pub fn kernel(&self) -> Result<QVariety> {
        self.preimage(&QVariety::point(self.field(), self.l.rows()))
    }

    /// d(L) restricted to T(F).
    pub fn differential(&self) -> Differential {
        let t = self.domain.tangent_space();
        let k = self.field();
        let d = self.l.linear_parts();
        let cols: Vec<Vec<Elem>> = t.basis.iter().map(|v| mat_vec(k, &d, v)).collect();
        let matrix = (0..self.l.rows())
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        Differential { domain: t, matrix }
    }

    /// d(ψ): T(F) → T(ψ(F)) is onto.
    pub fn is_separable(&self) -> Result<bool> {
        let img = self.image()?;
        let k = self.field().join(img.field())?;
        let rank = self.differential().rank(&k);
        Ok(rank == img.dimension())
    }
}

pub(crate) fn mat_vec(k: &Field, a: &[Vec<Elem>], v: &[Elem]) -> Vec<Elem> {
    a.iter()
        .map(|row| {
            let mut acc = k.zero();
            for (x, y) in row.iter().zip(v) {
                if !k.is_zero(x) && !k.is_zero(y) {
                    acc = k.add(&acc, &k.mul(x, y));
                }
            }
            acc
        })
        .collect()
}

/// F/H with its projection Π, whose components are generators of M(H).
pub fn quotient(f: &QVariety, h: &QVariety) -> Result<(QVariety, Morphism)> {
    if !f.contains_variety(h)? {
        return Err(Error::NotASubvariety);
    }
    let k = f.field().join(h.field())?;
    let f = f.coerce(&k)?;
    let pi_rows = h.annihilator().coerce(&k)?.basis();
    let m = pi_rows.rows();
    let target = QVariety::full(&k, m);
    let pi = Morphism::new(&f, &target, &pi_rows)?;
    let q = pi.image()?;
    let k2 = k.join(q.field())?;
    let pi = Morphism { domain: f.coerce(&k2)?, codomain: q.coerce(&k2)?, l: pi.l.coerce(&k2)? };
    Ok((pi.codomain.clone(), pi))
}
