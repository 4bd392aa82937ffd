//! F_{q^m} = F_q[x]/(g) with g the first monic irreducible polynomial of
//! degree m in lexicographic order.

use std::sync::{Arc, OnceLock};

use super::fq::Fq;
use super::upoly;

pub(crate) struct ExtData {
    pub(crate) fq: Arc<Fq>,
    pub(crate) m: usize,
    /// Monic modulus, low degree first, length m + 1.
    pub(crate) modulus: Vec<u32>,
    /// frob_pows[k][j] = coordinates of (x^j)^{q^k}.
    frob_pows: OnceLock<Vec<Vec<Vec<u32>>>>,
}

impl ExtData {
    pub(crate) fn new(fq: Arc<Fq>, m: usize) -> ExtData {
        let modulus = if m == 1 { vec![0, 1] } else { upoly::first_irreducible(&fq, m) };
        ExtData { fq, m, modulus, frob_pows: OnceLock::new() }
    }

    pub(crate) fn zero(&self) -> Vec<u32> {
        vec![0; self.m]
    }

    pub(crate) fn one(&self) -> Vec<u32> {
        let mut v = vec![0; self.m];
        v[0] = 1;
        v
    }

    fn pad(&self, mut v: Vec<u32>) -> Vec<u32> {
        v.resize(self.m, 0);
        v
    }

    pub(crate) fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let mut t = v.to_vec();
        upoly::trim(&mut t);
        self.pad(upoly::rem(&self.fq, &t, &self.modulus))
    }

    pub(crate) fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.fq.add(x, y)).collect()
    }

    pub(crate) fn sub(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.fq.sub(x, y)).collect()
    }

    pub(crate) fn neg(&self, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| self.fq.neg(x)).collect()
    }

    pub(crate) fn scale(&self, a: &[u32], c: u32) -> Vec<u32> {
        a.iter().map(|&x| self.fq.mul(x, c)).collect()
    }

    pub(crate) fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        if self.m == 1 {
            return vec![self.fq.mul(a[0], b[0])];
        }
        let mut x = a.to_vec();
        upoly::trim(&mut x);
        let mut y = b.to_vec();
        upoly::trim(&mut y);
        let prod = upoly::mul(&self.fq, &x, &y);
        self.pad(upoly::rem(&self.fq, &prod, &self.modulus))
    }

    pub(crate) fn is_zero(a: &[u32]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub(crate) fn inv(&self, a: &[u32]) -> Option<Vec<u32>> {
        if Self::is_zero(a) {
            return None;
        }
        if self.m == 1 {
            return self.fq.inv(a[0]).ok().map(|x| vec![x]);
        }
        let mut x = a.to_vec();
        upoly::trim(&mut x);
        let (g, s, _) = upoly::xgcd(&self.fq, &x, &self.modulus);
        debug_assert_eq!(g, vec![1]);
        Some(self.pad(upoly::rem(&self.fq, &s, &self.modulus)))
    }

    fn frob_table(&self) -> &Vec<Vec<Vec<u32>>> {
        self.frob_pows.get_or_init(|| {
            let m = self.m;
            let q = self.fq.q() as u64;
            let mut first = Vec::with_capacity(m);
            let xq = upoly::powmod(&self.fq, &[0, 1], q, &self.modulus);
            let mut cur = vec![1u32];
            for _ in 0..m {
                first.push(self.pad(cur.clone()));
                cur = upoly::mulmod(&self.fq, &cur, &xq, &self.modulus);
            }
            let mut pows: Vec<Vec<Vec<u32>>> = Vec::with_capacity(m);
            let identity: Vec<Vec<u32>> = (0..m)
                .map(|j| {
                    let mut v = vec![0; m];
                    v[j] = 1;
                    v
                })
                .collect();
            pows.push(identity);
            for k in 1..m {
                let prev = &pows[k - 1];
                let next: Vec<Vec<u32>> =
                    prev.iter().map(|col| self.apply(&first, col)).collect();
                pows.push(next);
            }
            pows
        })
    }

    fn apply(&self, cols: &[Vec<u32>], v: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.m];
        for (j, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &e) in out.iter_mut().zip(&cols[j]) {
                *o = self.fq.add(*o, self.fq.mul(c, e));
            }
        }
        out
    }

    /// a^{q^n}.
    pub(crate) fn frob(&self, a: &[u32], n: u64) -> Vec<u32> {
        if self.m == 1 {
            return a.to_vec();
        }
        let k = (n % self.m as u64) as usize;
        if k == 0 {
            return a.to_vec();
        }
        self.apply(&self.frob_table()[k], a)
    }

    /// The unique b with b^{q^n} = a.
    pub(crate) fn inv_frob(&self, a: &[u32], n: u64) -> Vec<u32> {
        let m = self.m as u64;
        let k = (m - n % m) % m;
        self.frob(a, k)
    }

    pub(crate) fn generator(&self) -> Vec<u32> {
        if self.m == 1 {
            // x is reduced to 0 mod x; the generator of the trivial extension is 1.
            return self.one();
        }
        let mut v = self.zero();
        v[1] = 1;
        v
    }
}
