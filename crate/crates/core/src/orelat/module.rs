//! Finitely generated left K{τ}-submodules of Λ_n.

use std::sync::{Arc, OnceLock};

use super::diag::{diagonalize, DiagForm};
use super::hermite::{hermite, reduce, Hermite};
use super::matrix::{row_is_zero, row_times, OreMatrix};
use crate::coeffs::{Field, FieldKind};
use crate::error::{Error, Result};
use crate::ore::OrePoly;

#[derive(Default)]
struct Caches {
    hermite: OnceLock<Hermite>,
    diag: OnceLock<std::result::Result<DiagForm, Error>>,
}

/// The submodule of Λ_n generated by the rows of a matrix; a row
/// (f_1, …, f_n) stands for Σ_j f_j(X_j).
#[derive(Clone)]
pub struct TauSubmodule {
    n: usize,
    gens: OreMatrix,
    caches: Arc<Caches>,
}

impl std::fmt::Debug for TauSubmodule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<{}>", self.gens.render())
    }
}

/// Separable diagonal data of the radical: the module generated by the rows
/// of diag(Q_1..Q_r)·V_inv, with Q_i monic separable and sorted.
#[derive(Clone, Debug)]
pub struct RadicalData {
    pub qs: Vec<OrePoly>,
    pub v: OreMatrix,
    pub v_inv: OreMatrix,
    pub lifted: bool,
    /// τ-power stripped from each diagonal factor, aligned with `qs`.
    pub shifts: Vec<usize>,
    /// Every diagonal factor was already separable, i.e. the module equals
    /// its radical.
    pub was_radical: bool,
}

impl RadicalData {
    pub fn field(&self) -> &Field {
        self.v.field()
    }

    /// Rows Q_i·(V_inv)_i for the chosen indices.
    fn rows_for(&self, idx: impl Iterator<Item = usize>) -> OreMatrix {
        let rows: Vec<Vec<OrePoly>> = idx
            .map(|i| self.v_inv.row_slice(i).iter().map(|p| self.qs[i].mul(p)).collect())
            .collect();
        OreMatrix::from_rows(self.field(), self.v.rows(), rows).expect("shape")
    }

    /// The radical generated by the canonical rows diag(Q)·V_inv.
    pub fn module(&self) -> TauSubmodule {
        TauSubmodule::new(self.rows_for(0..self.qs.len()))
    }

    /// The radical as S plus the canonical rows of the inseparable factors;
    /// rows of separable factors already lie in S, and twisting V_inv by
    /// high τ-powers is what makes the canonical rows large.
    pub fn module_from(&self, s: &TauSubmodule) -> Result<TauSubmodule> {
        let base = s.coerce(self.field())?;
        let extra = self.rows_for((0..self.qs.len()).filter(|&i| self.shifts[i] > 0));
        if extra.rows() == 0 {
            return Ok(base);
        }
        Ok(TauSubmodule::new(base.gens.vstack(&extra)?))
    }
}

impl TauSubmodule {
    pub fn new(gens: OreMatrix) -> TauSubmodule {
        TauSubmodule { n: gens.cols(), gens, caches: Arc::new(Caches::default()) }
    }

    pub fn from_rows(field: &Field, n: usize, rows: Vec<Vec<OrePoly>>) -> Result<TauSubmodule> {
        Ok(TauSubmodule::new(OreMatrix::from_rows(field, n, rows)?))
    }

    pub fn zero(field: &Field, n: usize) -> TauSubmodule {
        TauSubmodule::new(OreMatrix::zero(field, 0, n))
    }

    /// Λ_n itself, generated by X_1, …, X_n.
    pub fn full(field: &Field, n: usize) -> TauSubmodule {
        TauSubmodule::new(OreMatrix::identity(field, n))
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn field(&self) -> &Field {
        self.gens.field()
    }
    pub fn generators(&self) -> &OreMatrix {
        &self.gens
    }

    pub fn hermite(&self) -> &Hermite {
        self.caches.hermite.get_or_init(|| hermite(&self.gens))
    }

    /// Nonzero rows of the Hermite form; they are left-linearly independent
    /// and generate the module.
    pub fn basis(&self) -> OreMatrix {
        let h = self.hermite();
        h.h.select_rows(&(0..h.rank()).collect::<Vec<_>>())
    }

    pub fn rank(&self) -> usize {
        self.hermite().rank()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    pub fn diag(&self) -> Result<&DiagForm> {
        self.caches
            .diag
            .get_or_init(|| diagonalize(&self.gens))
            .as_ref()
            .map_err(|e| e.clone())
    }

    /// Re-expresses the module over another field handle (lifting F_q(T)).
    pub fn coerce(&self, k: &Field) -> Result<TauSubmodule> {
        if k == self.field() {
            return Ok(self.clone());
        }
        Ok(TauSubmodule::new(self.gens.coerce(k)?))
    }

    fn row_field_check(&self, f: &[OrePoly]) -> Result<()> {
        if f.len() != self.n {
            return Err(Error::Shape(format!("row of length {} for rank {}", f.len(), self.n)));
        }
        if f.iter().any(|p| p.field() != self.field()) {
            return Err(Error::MixedBackends);
        }
        Ok(())
    }

    pub fn contains(&self, f: &[OrePoly]) -> Result<bool> {
        let f = self.adapt_row(f)?;
        self.row_field_check(&f)?;
        let (rem, _) = reduce(self.hermite(), &f);
        Ok(row_is_zero(&rem))
    }

    /// Coefficients c with f = c·gens when f is a member.
    pub fn cofactors(&self, f: &[OrePoly]) -> Result<Option<Vec<OrePoly>>> {
        let f = self.adapt_row(f)?;
        self.row_field_check(&f)?;
        let h = self.hermite();
        let (rem, cof) = reduce(h, &f);
        if !row_is_zero(&rem) {
            return Ok(None);
        }
        Ok(Some(row_times(&cof, &h.t)))
    }

    fn adapt_row(&self, f: &[OrePoly]) -> Result<Vec<OrePoly>> {
        let Some(first) = f.first() else { return Ok(Vec::new()) };
        if first.field() == self.field() {
            return Ok(f.to_vec());
        }
        let k = self.field().join(first.field())?;
        if k != *self.field() {
            // the row needs the perfect closure; membership is decided there
            return Err(Error::MixedBackends);
        }
        f.iter().map(|p| p.coerce(&k)).collect()
    }

    /// self ⊆ other.
    pub fn is_subset(&self, other: &TauSubmodule) -> Result<bool> {
        let (a, b) = unify(self, other)?;
        // the echelon basis is usually far smaller than the raw generators
        let rows = a.basis();
        for i in 0..rows.rows() {
            if !b.contains(rows.row_slice(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality by mutual membership of generators.
    pub fn equals(&self, other: &TauSubmodule) -> Result<bool> {
        if self.n != other.n {
            return Ok(false);
        }
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    pub fn sum(&self, other: &TauSubmodule) -> Result<TauSubmodule> {
        let (a, b) = unify(self, other)?;
        Ok(TauSubmodule::new(a.gens.vstack(&b.gens)?))
    }

    pub fn intersect(&self, other: &TauSubmodule) -> Result<TauSubmodule> {
        let (a, b) = unify(self, other)?;
        let k = a.field().clone();
        let g1 = a.basis();
        let g2 = b.basis();
        if g1.rows() == 0 || g2.rows() == 0 {
            return Ok(TauSubmodule::zero(&k, a.n));
        }
        let stacked = g1.vstack(&g2)?;
        let ker = left_kernel(&stacked);
        let proj = ker.gens.select_cols(&(0..g1.rows()).collect::<Vec<_>>());
        Ok(TauSubmodule::new(proj.mul(&g1).nonzero_rows()))
    }

    /// The radical together with its separable diagonal data.
    pub fn radical_data(&self) -> Result<RadicalData> {
        let base = self.field().clone();
        let d = self.diag()?;
        let hull = base.perfect_hull();
        let mut entries: Vec<(OrePoly, usize, usize)> = Vec::with_capacity(d.r);
        for i in 0..d.r {
            let di = d.d.get(i, i).coerce(&hull)?;
            let (shift, q) = di.separable_part()?;
            entries.push((q.monic(), i, shift));
        }
        // canonical order of the separable factors
        entries.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
        let n = self.n;
        let mut perm: Vec<usize> = entries.iter().map(|e| e.1).collect();
        perm.extend(d.r..n);
        let v = d.v.coerce(&hull)?.select_cols(&perm);
        let v_inv = d.v_inv.coerce(&hull)?.select_rows(&perm);
        let shifts: Vec<usize> = entries.iter().map(|e| e.2).collect();
        let was_radical = shifts.iter().all(|&s| s == 0);
        let qs: Vec<OrePoly> = entries.into_iter().map(|e| e.0).collect();
        let mut data = RadicalData { qs, v, v_inv, lifted: false, shifts, was_radical };
        if matches!(base.kind(), FieldKind::RationalFunctions) {
            match push_down_radical(&data, &base) {
                Some(down) => data = down,
                None => data.lifted = true,
            }
        }
        Ok(data)
    }

    pub fn radical(&self) -> Result<TauSubmodule> {
        self.radical_data()?.module_from(self)
    }

    pub fn is_radical(&self) -> Result<bool> {
        Ok(self.radical_data()?.was_radical)
    }

    pub fn render(&self) -> String {
        self.gens.render()
    }
}

fn push_down_radical(d: &RadicalData, base: &Field) -> Option<RadicalData> {
    let qs = d.qs.iter().map(|q| q.coerce(base).ok()).collect::<Option<Vec<_>>>()?;
    Some(RadicalData {
        qs,
        v: d.v.coerce(base).ok()?,
        v_inv: d.v_inv.coerce(base).ok()?,
        lifted: false,
        shifts: d.shifts.clone(),
        was_radical: d.was_radical,
    })
}

/// Brings two modules over a common field.
pub fn unify(a: &TauSubmodule, b: &TauSubmodule) -> Result<(TauSubmodule, TauSubmodule)> {
    if a.n != b.n {
        return Err(Error::Shape(format!("ambient ranks {} and {} differ", a.n, b.n)));
    }
    let k = a.field().join(b.field())?;
    Ok((a.coerce(&k)?, b.coerce(&k)?))
}

/// {c : c·L = 0}, read off the transform rows at zero rows of the Hermite form.
pub fn left_kernel(l: &OreMatrix) -> TauSubmodule {
    let h = hermite(l);
    let idx: Vec<usize> = (h.rank()..l.rows()).collect();
    TauSubmodule::new(h.t.select_rows(&idx))
}
