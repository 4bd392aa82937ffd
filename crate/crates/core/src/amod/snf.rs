//! Smith normal form over A = F_q[T].

use crate::coeffs::APoly;

/// Monic invariant factors d_1 | d_2 | … of a square or rectangular matrix
/// over A, units and zeros omitted.
pub fn invariant_factors(mut a: Vec<Vec<APoly>>) -> Vec<APoly> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_entry(&a, t) else {
                return finish(out);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, r) = a[i][t].divrem(&a[t][t]).expect("nonzero pivot");
                for j in t..cols {
                    let s = q.mul(&a[t][j]);
                    a[i][j] = a[i][j].sub(&s);
                }
                clean &= r.is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, r) = a[t][j].divrem(&a[t][t]).expect("nonzero pivot");
                for row in a.iter_mut().skip(t) {
                    let s = row[t].mul(&q);
                    row[j] = row[j].sub(&s);
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the remaining block
            let bad = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !a[i][j].rem(&a[t][t]).expect("nonzero").is_zero())
            });
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let s = a[i][j].clone();
                        a[t][j] = a[t][j].add(&s);
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].monic());
    }
    finish(out)
}

fn min_entry(a: &[Vec<APoly>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if let Some(d) = x.degree() {
                if best.is_none_or(|b| d < b.0) {
                    best = Some((d, i, j));
                }
            }
        }
    }
    best.map(|b| (b.1, b.2))
}

fn finish(out: Vec<APoly>) -> Vec<APoly> {
    out.into_iter().filter(|d| d.degree().is_some_and(|k| k > 0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::Fq;
    use std::sync::Arc;

    #[test]
    fn diagonal_and_mixed() {
        let fq = Arc::new(Fq::new(3).unwrap());
        let t = APoly::t(fq.clone());
        let one = APoly::one(fq.clone());
        let zero = APoly::zero(fq.clone());
        let tm1 = t.sub(&one);
        // diag(T, T−1) ~ diag(1, T(T−1))
        let f = invariant_factors(vec![vec![t.clone(), zero.clone()], vec![zero.clone(), tm1.clone()]]);
        assert_eq!(f, vec![t.mul(&tm1)]);
        // diag(T, T) stays
        let g = invariant_factors(vec![vec![t.clone(), zero.clone()], vec![zero.clone(), t.clone()]]);
        assert_eq!(g, vec![t.clone(), t.clone()]);
        // companion-like [[T, 1],[0, T]] ~ diag(1, T^2)
        let h = invariant_factors(vec![vec![t.clone(), one.clone()], vec![zero, t.clone()]]);
        assert_eq!(h, vec![t.mul(&t)]);
    }
}
