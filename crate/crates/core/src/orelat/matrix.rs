use std::fmt;

use crate::coeffs::{Elem, Embedding, Field};
use crate::error::{Error, Result};
use crate::ore::OrePoly;

/// A rows × cols matrix over K{τ}, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct OreMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    e: Vec<OrePoly>,
}

impl fmt::Debug for OreMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl OreMatrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> OreMatrix {
        OreMatrix { field: field.clone(), rows, cols, e: vec![OrePoly::zero(field); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> OreMatrix {
        let mut m = OreMatrix::zero(field, n, n);
        for i in 0..n {
            m.e[i * n + i] = OrePoly::one(field);
        }
        m
    }

    /// Square diagonal matrix.
    pub fn diagonal(field: &Field, d: &[OrePoly]) -> OreMatrix {
        let n = d.len();
        let mut m = OreMatrix::zero(field, n, n);
        for (i, p) in d.iter().enumerate() {
            m.e[i * n + i] = p.clone();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(field: &Field, cols: usize, rows: Vec<Vec<OrePoly>>) -> Result<OreMatrix> {
        let nrows = rows.len();
        let mut e = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Shape(format!("row of length {} in a {cols}-column matrix", r.len())));
            }
            for p in r {
                if p.field() != field {
                    return Err(Error::MixedBackends);
                }
                e.push(p);
            }
        }
        Ok(OreMatrix { field: field.clone(), rows: nrows, cols, e })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &OrePoly {
        &self.e[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, p: OrePoly) {
        self.e[i * self.cols + j] = p;
    }
    pub fn row(&self, i: usize) -> Vec<OrePoly> {
        self.e[i * self.cols..(i + 1) * self.cols].to_vec()
    }
    pub fn row_slice(&self, i: usize) -> &[OrePoly] {
        &self.e[i * self.cols..(i + 1) * self.cols]
    }
    pub fn to_rows(&self) -> Vec<Vec<OrePoly>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }
    pub fn entries(&self) -> &[OrePoly] {
        &self.e
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|p| p.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let p = self.get(i, j);
                    if i == j {
                        p.is_one()
                    } else {
                        p.is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.e.iter().filter_map(|p| p.degree()).max()
    }

    pub fn try_mul(&self, o: &OreMatrix) -> Result<OreMatrix> {
        if self.field != o.field {
            return Err(Error::MixedBackends);
        }
        if self.cols != o.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = OreMatrix::zero(&self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(t, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.e[idx] = out.e[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, o: &OreMatrix) -> OreMatrix {
        self.try_mul(o).expect("compatible matrices")
    }

    pub fn add(&self, o: &OreMatrix) -> OreMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let e = self.e.iter().zip(&o.e).map(|(a, b)| a.add(b)).collect();
        OreMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, e }
    }

    pub fn sub(&self, o: &OreMatrix) -> OreMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let e = self.e.iter().zip(&o.e).map(|(a, b)| a.sub(b)).collect();
        OreMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, e }
    }

    /// Left scalar multiplication of every entry by an Ore polynomial.
    pub fn left_scale(&self, p: &OrePoly) -> OreMatrix {
        let e = self.e.iter().map(|a| p.mul(a)).collect();
        OreMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, e }
    }

    /// [self; o].
    pub fn vstack(&self, o: &OreMatrix) -> Result<OreMatrix> {
        if self.field != o.field {
            return Err(Error::MixedBackends);
        }
        if self.cols != o.cols {
            return Err(Error::Shape("stacked matrices need equal column counts".into()));
        }
        let mut e = self.e.clone();
        e.extend(o.e.iter().cloned());
        Ok(OreMatrix { field: self.field.clone(), rows: self.rows + o.rows, cols: self.cols, e })
    }

    /// [self, o].
    pub fn hstack(&self, o: &OreMatrix) -> Result<OreMatrix> {
        if self.field != o.field {
            return Err(Error::MixedBackends);
        }
        if self.rows != o.rows {
            return Err(Error::Shape("juxtaposed matrices need equal row counts".into()));
        }
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i);
                r.extend(o.row(i));
                r
            })
            .collect();
        OreMatrix::from_rows(&self.field, self.cols + o.cols, rows)
    }

    /// Block diagonal [[self, 0], [0, o]].
    pub fn block_diag(&self, o: &OreMatrix) -> OreMatrix {
        let k = &self.field;
        let mut m = OreMatrix::zero(k, self.rows + o.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                m.set(self.rows + i, self.cols + j, o.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> OreMatrix {
        let mut e = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            e.extend_from_slice(self.row_slice(i));
        }
        OreMatrix { field: self.field.clone(), rows: idx.len(), cols: self.cols, e }
    }

    pub fn select_cols(&self, idx: &[usize]) -> OreMatrix {
        let mut e = Vec::with_capacity(idx.len() * self.rows);
        for i in 0..self.rows {
            for &j in idx {
                e.push(self.get(i, j).clone());
            }
        }
        OreMatrix { field: self.field.clone(), rows: self.rows, cols: idx.len(), e }
    }

    /// Drops zero rows.
    pub fn nonzero_rows(&self) -> OreMatrix {
        let idx: Vec<usize> = (0..self.rows)
            .filter(|&i| self.row_slice(i).iter().any(|p| !p.is_zero()))
            .collect();
        self.select_rows(&idx)
    }

    /// The K-matrix of linear parts d(L).
    pub fn linear_parts(&self) -> Vec<Vec<Elem>> {
        (0..self.rows)
            .map(|i| self.row_slice(i).iter().map(|p| p.linear_part()).collect())
            .collect()
    }

    pub fn coerce(&self, target: &Field) -> Result<OreMatrix> {
        if *target == self.field {
            return Ok(self.clone());
        }
        let e = self.e.iter().map(|p| p.coerce(target)).collect::<Result<Vec<_>>>()?;
        Ok(OreMatrix { field: target.clone(), rows: self.rows, cols: self.cols, e })
    }

    pub fn embed(&self, emb: &Embedding) -> OreMatrix {
        let e = self.e.iter().map(|p| p.embed(emb)).collect();
        OreMatrix { field: emb.target().clone(), rows: self.rows, cols: self.cols, e }
    }

    /// Applies the matrix to a point: (Σ_j L_ij(x_j))_i.
    pub fn apply(&self, x: &[Elem]) -> Vec<Elem> {
        let k = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = k.zero();
                for (j, xj) in x.iter().enumerate() {
                    let p = self.get(i, j);
                    if !p.is_zero() {
                        acc = k.add(&acc, &p.eval(xj));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn render(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let entries: Vec<String> = self.row_slice(i).iter().map(|p| p.render()).collect();
                format!("[{}]", entries.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

/// c·L for a row vector c.
pub fn row_times(c: &[OrePoly], l: &OreMatrix) -> Vec<OrePoly> {
    let k = l.field();
    let mut out = vec![OrePoly::zero(k); l.cols()];
    for (t, ct) in c.iter().enumerate() {
        if ct.is_zero() {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate() {
            let b = l.get(t, j);
            if !b.is_zero() {
                *o = o.add(&ct.mul(b));
            }
        }
    }
    out
}

pub fn row_is_zero(r: &[OrePoly]) -> bool {
    r.iter().all(|p| p.is_zero())
}
