//! q-varieties stored through their radical annihilator and canonical form.

use crate::coeffs::{Elem, Embedding, Field};
use crate::error::{Error, Result};
use crate::linalg;
use crate::ore::OrePoly;
use crate::orelat::{OreMatrix, TauSubmodule};

/// F = W(ker P_1 × … × ker P_r × K^{n−r}), with M(F) generated by the rows of
/// diag(P_1, …, P_r, 0, …)·W_inv.
#[derive(Clone, Debug)]
pub struct QVariety {
    n: usize,
    ann: TauSubmodule,
    w: OreMatrix,
    w_inv: OreMatrix,
    seps: Vec<OrePoly>,
    lifted: bool,
    radicalized: bool,
}

/// The subspace T(F) ⊆ K^n cut out by the linear parts of M(F).
#[derive(Clone, Debug)]
pub struct TangentSpace {
    pub n: usize,
    pub basis: Vec<Vec<Elem>>,
}

impl TangentSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// An F_q-spanning set of W(ker P_1 × … × ker P_r × 0) over F_{q^M}.
#[derive(Clone, Debug)]
pub struct FinitePart {
    pub embedding: Embedding,
    pub points: Vec<Vec<Elem>>,
}

impl FinitePart {
    pub fn field(&self) -> &Field {
        self.embedding.target()
    }
}

/// Z(S) for a submodule S of Λ_n.
pub fn zeros(s: &TauSubmodule) -> Result<QVariety> {
    let data = s.radical_data()?;
    let ann = data.module_from(s)?;
    let radicalized = !data.was_radical;
    Ok(QVariety {
        n: s.n(),
        ann,
        w: data.v,
        w_inv: data.v_inv,
        seps: data.qs,
        lifted: data.lifted,
        radicalized,
    })
}

impl QVariety {
    /// Builds F from a change of variables W (with its inverse) and separable
    /// factors P_1..P_r.
    pub fn from_canonical(w: OreMatrix, w_inv: OreMatrix, seps: Vec<OrePoly>) -> Result<QVariety> {
        let n = w.rows();
        if w.cols() != n || w_inv.rows() != n || w_inv.cols() != n || seps.len() > n {
            return Err(Error::Shape("canonical data of inconsistent size".into()));
        }
        if !w.try_mul(&w_inv)?.is_identity() {
            return Err(Error::Invariant("W·W_inv is not the identity".into()));
        }
        let k = w.field().clone();
        if let Some(p) = seps.iter().find(|p| !p.is_separable()) {
            return Err(Error::Domain(format!("{} is not separable", p.render())));
        }
        let seps: Vec<OrePoly> = seps.iter().map(|p| p.coerce(&k)).collect::<Result<_>>()?;
        let ann = canonical_module(&seps, &w_inv);
        Ok(QVariety { n, ann, w, w_inv, seps, lifted: false, radicalized: false })
    }

    /// K^n.
    pub fn full(k: &Field, n: usize) -> QVariety {
        QVariety::from_canonical(OreMatrix::identity(k, n), OreMatrix::identity(k, n), Vec::new())
            .expect("identity data")
    }

    /// {0} ⊆ K^n.
    pub fn point(k: &Field, n: usize) -> QVariety {
        let seps = vec![OrePoly::one(k); n];
        QVariety::from_canonical(OreMatrix::identity(k, n), OreMatrix::identity(k, n), seps)
            .expect("identity data")
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn field(&self) -> &Field {
        self.ann.field()
    }
    /// M(F), a radical module.
    pub fn annihilator(&self) -> &TauSubmodule {
        &self.ann
    }
    pub fn w(&self) -> &OreMatrix {
        &self.w
    }
    pub fn w_inv(&self) -> &OreMatrix {
        &self.w_inv
    }
    pub fn seps(&self) -> &[OrePoly] {
        &self.seps
    }
    /// True when describing F needed coefficients outside F_q(T).
    pub fn lifted(&self) -> bool {
        self.lifted
    }
    /// True when the module F was built from was not radical.
    pub fn radicalized(&self) -> bool {
        self.radicalized
    }

    pub fn r(&self) -> usize {
        self.seps.len()
    }

    pub fn dimension(&self) -> usize {
        self.n - self.seps.len()
    }

    /// dim_{F_q} of F/F̊.
    pub fn finite_part_dim(&self) -> usize {
        self.seps.iter().map(|p| p.degree().expect("nonzero")).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.finite_part_dim() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.dimension() == 0
    }

    /// F̊: every separable factor replaced by τ⁰.
    pub fn irreducible_component(&self) -> QVariety {
        let k = self.field();
        let seps = vec![OrePoly::one(k); self.seps.len()];
        let ann = canonical_module(&seps, &self.w_inv);
        QVariety { ann, seps, radicalized: false, ..self.clone() }
    }

    /// Base change of the coefficients (F_q(T) into its perfect closure).
    pub fn coerce(&self, k: &Field) -> Result<QVariety> {
        if k == self.field() {
            return Ok(self.clone());
        }
        Ok(QVariety {
            n: self.n,
            ann: self.ann.coerce(k)?,
            w: self.w.coerce(k)?,
            w_inv: self.w_inv.coerce(k)?,
            seps: self.seps.iter().map(|p| p.coerce(k)).collect::<Result<_>>()?,
            lifted: self.lifted,
            radicalized: self.radicalized,
        })
    }

    /// Base change along an embedding of finite fields.
    pub fn embed(&self, emb: &Embedding) -> QVariety {
        QVariety {
            n: self.n,
            ann: TauSubmodule::new(self.ann.generators().embed(emb)),
            w: self.w.embed(emb),
            w_inv: self.w_inv.embed(emb),
            seps: self.seps.iter().map(|p| p.embed(emb)).collect(),
            lifted: self.lifted,
            radicalized: self.radicalized,
        }
    }

    /// Equality as varieties, decided on the annihilators.
    pub fn equals(&self, o: &QVariety) -> Result<bool> {
        if self.n != o.n {
            return Ok(false);
        }
        self.ann.equals(&o.ann)
    }

    /// H ⊆ self, decided by M(self) ⊆ M(H).
    pub fn contains_variety(&self, h: &QVariety) -> Result<bool> {
        if self.n != h.n {
            return Err(Error::Shape(format!("ambient ranks {} and {} differ", self.n, h.n)));
        }
        self.ann.is_subset(&h.ann)
    }

    /// Whether every generator of M(F) vanishes at x.
    pub fn contains_point(&self, x: &[Elem]) -> bool {
        let k = self.field();
        self.ann.generators().apply(x).iter().all(|v| k.is_zero(v))
    }

    pub fn tangent_space(&self) -> TangentSpace {
        let lin = self.ann.basis().linear_parts();
        TangentSpace { n: self.n, basis: linalg::k_nullspace(self.field(), &lin, self.n) }
    }

    pub fn sum(&self, o: &QVariety) -> Result<QVariety> {
        zeros(&self.ann.intersect(&o.ann)?)
    }

    pub fn intersection(&self, o: &QVariety) -> Result<QVariety> {
        zeros(&self.ann.sum(&o.ann)?)
    }

    /// F × G ⊆ K^{n+m}.
    pub fn product(&self, o: &QVariety) -> Result<QVariety> {
        let k = self.field().join(o.field())?;
        let a = self.ann.coerce(&k)?.generators().clone();
        let b = o.ann.coerce(&k)?.generators().clone();
        zeros(&TauSubmodule::new(a.block_diag(&b)))
    }

    /// Generators of W(ker P_i · e_i) over the smallest F_{q^M} containing all
    /// the roots, M ≤ `max_ext`.
    pub fn finite_part(&self, max_ext: usize) -> Result<FinitePart> {
        let k = self.field();
        let m0 = k.degree().ok_or_else(|| {
            Error::Capability("points of the finite part are enumerated only over finite fields".into())
        })?;
        let mut big = m0;
        for p in self.seps.iter().filter(|p| p.degree() != Some(0)) {
            big = lcm(big, p.splitting_degree(max_ext)?);
            if big > max_ext {
                return Err(Error::NoSplittingFound(max_ext));
            }
        }
        let target = k.with_extension_degree(big);
        let emb = Embedding::new(k, &target)?;
        let w = self.w.embed(&emb);
        let mut points = Vec::new();
        for (i, p) in self.seps.iter().enumerate() {
            if p.degree() == Some(0) {
                continue;
            }
            let (_, basis) = p.kernel_in_extension(big)?;
            for x in basis {
                let mut e = vec![target.zero(); self.n];
                e[i] = x;
                points.push(w.apply(&e));
            }
        }
        Ok(FinitePart { embedding: emb, points })
    }

    pub fn render(&self) -> String {
        format!("Z{{{}}}", self.ann.render())
    }
}

/// Rows of diag(P_1..P_r)·W_inv.
fn canonical_module(seps: &[OrePoly], w_inv: &OreMatrix) -> TauSubmodule {
    let rows: Vec<Vec<OrePoly>> = seps
        .iter()
        .enumerate()
        .map(|(i, p)| w_inv.row_slice(i).iter().map(|x| p.mul(x)).collect())
        .collect();
    TauSubmodule::new(OreMatrix::from_rows(w_inv.field(), w_inv.cols(), rows).expect("shape"))
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    a / gcd(a, b) * b
}

/// The F_q-span of the given points of F_{q^m}^n as a q-variety over F_{q^m}.
pub fn variety_from_points(k: &Field, n: usize, points: &[Vec<Elem>]) -> Result<QVariety> {
    if !k.is_finite() {
        return Err(Error::Capability("varieties from points need a finite coefficient field".into()));
    }
    if points.iter().any(|p| p.len() != n) {
        return Err(Error::Shape(format!("points must have {n} coordinates")));
    }
    let mut gens = OreMatrix::identity(k, n);
    for x in points {
        let y = gens.apply(x);
        if y.iter().all(|v| k.is_zero(v)) {
            continue;
        }
        let line = line_annihilator(k, &y);
        gens = TauSubmodule::new(line.mul(&gens)).basis();
    }
    zeros(&TauSubmodule::new(gens))
}

/// M(F_q·y) = ⟨X_j − (y_j/y_i)X_i, X_i^q − y_i^{q−1}X_i⟩ for the first
/// nonzero coordinate i.
fn line_annihilator(k: &Field, y: &[Elem]) -> OreMatrix {
    let s = y.len();
    let i = y.iter().position(|v| !k.is_zero(v)).expect("nonzero point");
    let yi_inv = k.inv(&y[i]).expect("nonzero");
    let mut rows = Vec::with_capacity(s);
    for j in 0..s {
        let mut row = vec![OrePoly::zero(k); s];
        if j == i {
            let c = k.neg(&k.pow(&y[i], k.q() - 1));
            row[i] = OrePoly::new(k, vec![c, k.one()]);
        } else {
            row[j] = OrePoly::one(k);
            row[i] = OrePoly::constant(k, k.neg(&k.mul(&y[j], &yi_inv)));
        }
        rows.push(row);
    }
    OreMatrix::from_rows(k, s, rows).expect("shape")
}
