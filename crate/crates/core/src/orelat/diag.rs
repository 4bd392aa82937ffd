//! Two-sided diagonalization U·L·V = D with tracked inverses.

use super::matrix::OreMatrix;
use crate::coeffs::{Elem, Field, FieldKind};
use crate::error::Result;
use crate::ore::OrePoly;

#[derive(Clone, Debug)]
pub struct DiagForm {
    pub u: OreMatrix,
    pub d: OreMatrix,
    pub v: OreMatrix,
    pub u_inv: OreMatrix,
    pub v_inv: OreMatrix,
    /// Number of nonzero diagonal entries (they come first).
    pub r: usize,
    /// True when the result needs coefficients outside F_q(T).
    pub lifted: bool,
}

impl DiagForm {
    pub fn field(&self) -> &Field {
        self.d.field()
    }
    pub fn diagonal(&self) -> Vec<OrePoly> {
        (0..self.r).map(|i| self.d.get(i, i).clone()).collect()
    }
}

type Rows = Vec<Vec<OrePoly>>;

struct Work {
    a: Rows,
    u: Rows,
    u_inv: Rows,
    v: Rows,
    v_inv: Rows,
}

impl Work {
    /// row_i ← row_i − q·row_p.
    fn row_op(&mut self, i: usize, p: usize, q: &OrePoly) {
        for rows in [&mut self.a, &mut self.u] {
            let src = rows[p].clone();
            for (x, y) in rows[i].iter_mut().zip(&src) {
                if !y.is_zero() {
                    *x = x.sub(&q.mul(y));
                }
            }
        }
        for row in self.u_inv.iter_mut() {
            if !row[i].is_zero() {
                let add = row[i].mul(q);
                row[p] = row[p].add(&add);
            }
        }
    }

    /// col_j ← col_j − col_p·q.
    fn col_op(&mut self, j: usize, p: usize, q: &OrePoly) {
        for rows in [&mut self.a, &mut self.v] {
            for row in rows.iter_mut() {
                if !row[p].is_zero() {
                    let sub = row[p].mul(q);
                    row[j] = row[j].sub(&sub);
                }
            }
        }
        let src = self.v_inv[j].clone();
        for (x, y) in self.v_inv[p].iter_mut().zip(&src) {
            if !y.is_zero() {
                *x = x.add(&q.mul(y));
            }
        }
    }

    /// row_t ← c·row_t for a constant c ≠ 0.
    fn scale_row(&mut self, k: &Field, t: usize, c: &Elem) -> Result<()> {
        let c_inv = k.inv(c)?;
        for rows in [&mut self.a, &mut self.u] {
            for x in rows[t].iter_mut() {
                *x = x.scale_left(c);
            }
        }
        for row in self.u_inv.iter_mut() {
            row[t] = row[t].scale_right(&c_inv);
        }
        Ok(())
    }

    /// Makes the pivot at (t, t) monic.
    fn normalize(&mut self, k: &Field, t: usize) -> Result<()> {
        let lc = self.a[t][t].lc().expect("nonzero pivot").clone();
        if !k.is_one(&lc) {
            self.scale_row(k, t, &k.inv(&lc)?)?;
        }
        Ok(())
    }

    fn swap_rows(&mut self, i: usize, p: usize) {
        if i == p {
            return;
        }
        self.a.swap(i, p);
        self.u.swap(i, p);
        for row in self.u_inv.iter_mut() {
            row.swap(i, p);
        }
    }

    fn swap_cols(&mut self, j: usize, p: usize) {
        if j == p {
            return;
        }
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(j, p);
        }
        self.v_inv.swap(j, p);
    }
}

/// Diagonalizes L; F_q(T) inputs are lifted to the perfect closure and the
/// result is pushed back down when no q-th roots of T were needed.
pub fn diagonalize(l: &OreMatrix) -> Result<DiagForm> {
    let base = l.field().clone();
    let k = base.perfect_hull();
    let l = l.coerce(&k)?;
    let (m, n) = (l.rows(), l.cols());
    let mut w = Work {
        a: l.to_rows(),
        u: OreMatrix::identity(&k, m).to_rows(),
        u_inv: OreMatrix::identity(&k, m).to_rows(),
        v: OreMatrix::identity(&k, n).to_rows(),
        v_inv: OreMatrix::identity(&k, n).to_rows(),
    };
    let mut t = 0;
    while t < m.min(n) {
        // global pivot of minimal degree in the remaining block, then the
        // smallest coefficients
        let mut best: Option<((usize, usize), usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if let Some(d) = w.a[i][j].degree() {
                    let key = (d, size(&k, &w.a[i][j]));
                    if best.is_none_or(|(bk, _, _)| key < bk) {
                        best = Some((key, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            // left-Euclid down column t by row operations; no q-th roots
            loop {
                w.normalize(&k, t)?;
                let pivot = w.a[t][t].clone();
                let mut low: Option<((usize, usize), usize)> = None;
                for i in t + 1..m {
                    if w.a[i][t].is_zero() {
                        continue;
                    }
                    let (q, r) = w.a[i][t].left_divmod(&pivot)?;
                    w.row_op(i, t, &q);
                    if let Some(d) = r.degree() {
                        let key = (d, size(&k, &r));
                        if low.is_none_or(|(bk, _)| key < bk) {
                            low = Some((key, i));
                        }
                    }
                }
                match low {
                    Some((_, i)) => w.swap_rows(t, i),
                    None => break,
                }
            }
            // then across row t by column operations
            w.normalize(&k, t)?;
            let pivot = w.a[t][t].clone();
            let mut low: Option<((usize, usize), usize)> = None;
            for j in t + 1..n {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = w.a[t][j].right_divmod(&pivot)?;
                w.col_op(j, t, &q);
                if let Some(d) = r.degree() {
                    let key = (d, size(&k, &r));
                    if low.is_none_or(|(bk, _)| key < bk) {
                        low = Some((key, j));
                    }
                }
            }
            match low {
                Some((_, j)) => w.swap_cols(t, j),
                None => break,
            }
        }
        t += 1;
    }
    let build = |rows: Rows, cols: usize| OreMatrix::from_rows(&k, cols, rows).expect("shape");
    let mut form = DiagForm {
        u: build(w.u, m),
        d: build(w.a, n),
        v: build(w.v, n),
        u_inv: build(w.u_inv, m),
        v_inv: build(w.v_inv, n),
        r: t,
        lifted: false,
    };
    if matches!(base.kind(), FieldKind::RationalFunctions) {
        match push_down(&form, &base) {
            Some(f) => form = f,
            None => form.lifted = true,
        }
    }
    Ok(form)
}

fn push_down(f: &DiagForm, base: &Field) -> Option<DiagForm> {
    Some(DiagForm {
        u: f.u.coerce(base).ok()?,
        d: f.d.coerce(base).ok()?,
        v: f.v.coerce(base).ok()?,
        u_inv: f.u_inv.coerce(base).ok()?,
        v_inv: f.v_inv.coerce(base).ok()?,
        r: f.r,
        lifted: false,
    })
}

/// Rough storage size of the coefficients, used to break ties between
/// pivots of equal degree.
fn size(k: &Field, p: &OrePoly) -> usize {
    p.coeffs().iter().map(|c| k.height(c)).sum()
}
