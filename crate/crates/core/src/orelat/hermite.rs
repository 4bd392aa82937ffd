//! Row echelon form by left-Euclidean row operations.

use super::matrix::{row_is_zero, OreMatrix};
use crate::ore::OrePoly;

#[derive(Clone, Debug)]
pub struct Hermite {
    /// Echelon form: monic pivots, entries above a pivot of lower degree,
    /// zero rows last.
    pub h: OreMatrix,
    /// Unimodular transform with h = t·L.
    pub t: OreMatrix,
    /// (row, column) of each pivot, rows 0..rank.
    pub pivots: Vec<(usize, usize)>,
}

impl Hermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn sub_row_multiple(rows: &mut [Vec<OrePoly>], target: usize, src: usize, q: &OrePoly) {
    let (a, b) = if target < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        if !y.is_zero() {
            *x = x.sub(&q.mul(y));
        }
    }
}

pub fn hermite(l: &OreMatrix) -> Hermite {
    let k = l.field().clone();
    let m = l.rows();
    let n = l.cols();
    let mut h = l.to_rows();
    let mut t = OreMatrix::identity(&k, m).to_rows();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..n {
        if pr == m {
            break;
        }
        loop {
            let nz: Vec<usize> = (pr..m).filter(|&i| !h[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz
                .iter()
                .min_by_key(|&&i| (h[i][c].degree(), i))
                .expect("nonempty");
            let mut clean = true;
            for &i in &nz {
                if i == p {
                    continue;
                }
                let (q, r) = h[i][c].left_divmod(&h[p][c]).expect("nonzero pivot");
                sub_row_multiple(&mut h, i, p, &q);
                sub_row_multiple(&mut t, i, p, &q);
                if !r.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            h.swap(pr, p);
            t.swap(pr, p);
            let inv = k.inv(h[pr][c].lc().expect("nonzero")).expect("nonzero");
            if !k.is_one(&inv) {
                for x in h[pr].iter_mut().chain(t[pr].iter_mut()) {
                    *x = x.scale_left(&inv);
                }
            }
            for i in 0..pr {
                if h[i][c].is_zero() {
                    continue;
                }
                let (q, _) = h[i][c].left_divmod(&h[pr][c]).expect("nonzero pivot");
                if !q.is_zero() {
                    sub_row_multiple(&mut h, i, pr, &q);
                    sub_row_multiple(&mut t, i, pr, &q);
                }
            }
            pivots.push((pr, c));
            pr += 1;
            break;
        }
    }
    debug_assert!(h[pr..].iter().all(|r| row_is_zero(r)));
    Hermite {
        h: OreMatrix::from_rows(&k, n, h).expect("shape"),
        t: OreMatrix::from_rows(&k, m, t).expect("shape"),
        pivots,
    }
}

/// Reduces `f` by the pivots of a Hermite form. Returns the remainder and
/// the coefficients c (indexed by Hermite rows) with f = c·H + remainder.
pub fn reduce(hf: &Hermite, f: &[OrePoly]) -> (Vec<OrePoly>, Vec<OrePoly>) {
    let k = hf.h.field();
    let mut rem = f.to_vec();
    let mut cof = vec![OrePoly::zero(k); hf.h.rows()];
    for &(r, c) in &hf.pivots {
        if rem[c].is_zero() {
            continue;
        }
        let (q, _) = rem[c].left_divmod(hf.h.get(r, c)).expect("nonzero pivot");
        if q.is_zero() {
            continue;
        }
        for (j, x) in rem.iter_mut().enumerate() {
            let y = hf.h.get(r, j);
            if !y.is_zero() {
                *x = x.sub(&q.mul(y));
            }
        }
        cof[r] = q;
    }
    (rem, cof)
}
