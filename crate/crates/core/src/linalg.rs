//! Gaussian elimination over F_q and over a coefficient field K.

use crate::coeffs::{Elem, Field, Fq};

/// Row-reduces in place to reduced row echelon form; returns pivot columns.
pub fn fq_rref(f: &Fq, a: &mut [Vec<u32>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        let inv = f.inv(a[r][c]).expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let factor = a[i][c];
                let (src, dst) = if i < r {
                    let (lo, hi) = a.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = a.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (d, &s) in dst.iter_mut().zip(src.iter()) {
                    if s != 0 {
                        *d = f.sub(*d, f.mul(factor, s));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn fq_rank(f: &Fq, a: &[Vec<u32>]) -> usize {
    let mut m = a.to_vec();
    fq_rref(f, &mut m).len()
}

/// Basis of {x : A x = 0} where A has `cols` columns.
pub fn fq_nullspace(f: &Fq, a: &[Vec<u32>], cols: usize) -> Vec<Vec<u32>> {
    let mut m = a.to_vec();
    let pivots = fq_rref(f, &mut m);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(m[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// Solves A x = b (A given by rows); returns one solution if consistent.
pub fn fq_solve(f: &Fq, a: &[Vec<u32>], b: &[u32]) -> Option<Vec<u32>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<u32>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = fq_rref(f, &mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![0u32; cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols];
    }
    Some(x)
}

/// Reduced row echelon form over K; returns pivot columns.
pub fn k_rref(k: &Field, a: &mut [Vec<Elem>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !k.is_zero(&a[i][c])) else { continue };
        a.swap(r, p);
        let inv = k.inv(&a[r][c]).expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = k.mul(x, &inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !k.is_zero(&row[c]) {
                let factor = row[c].clone();
                for (d, s) in row.iter_mut().zip(&pivot_row) {
                    if !k.is_zero(s) {
                        *d = k.sub(d, &k.mul(&factor, s));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn k_rank(k: &Field, a: &[Vec<Elem>]) -> usize {
    let mut m = a.to_vec();
    k_rref(k, &mut m).len()
}

pub fn k_nullspace(k: &Field, a: &[Vec<Elem>], cols: usize) -> Vec<Vec<Elem>> {
    let mut m = a.to_vec();
    let pivots = k_rref(k, &mut m);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![k.zero(); cols];
        v[free] = k.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = k.neg(&m[r][free]);
        }
        basis.push(v);
    }
    basis
}

pub fn k_matmul(k: &Field, a: &[Vec<Elem>], b: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = k.zero();
                    for t in 0..inner {
                        if !k.is_zero(&row[t]) && !k.is_zero(&b[t][j]) {
                            acc = k.add(&acc, &k.mul(&row[t], &b[t][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_over_f3() {
        let f = Fq::new(3).unwrap();
        let a = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let ns = fq_nullspace(&f, &a, 3);
        assert_eq!(ns.len(), 1);
        for v in &ns {
            for row in &a {
                let s = row.iter().zip(v).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                assert_eq!(s, 0);
            }
        }
        assert_eq!(fq_solve(&f, &a, &[1, 1]).map(|x| x.len()), Some(3));
    }

    #[test]
    fn rank_over_rational_functions() {
        let k = Field::rational_functions(3).unwrap();
        let t = k.t().unwrap();
        let a = vec![vec![t.clone(), k.one()], vec![k.mul(&t, &t), t.clone()]];
        assert_eq!(k_rank(&k, &a), 1);
        assert_eq!(k_nullspace(&k, &a, 2).len(), 1);
    }
}
