//! Dense univariate polynomials over F_q, stored low degree first with no
//! trailing zeros (the zero polynomial is the empty vector).

use super::fq::Fq;

pub(crate) fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn deg(a: &[u32]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub(crate) fn add(f: &Fq, a: &[u32], b: &[u32]) -> Vec<u32> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, &s) in out.iter_mut().zip(short) {
        *o = f.add(*o, s);
    }
    trim(&mut out);
    out
}

pub(crate) fn neg(f: &Fq, a: &[u32]) -> Vec<u32> {
    a.iter().map(|&x| f.neg(x)).collect()
}

pub(crate) fn sub(f: &Fq, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), 0);
    }
    for (o, &s) in out.iter_mut().zip(b) {
        *o = f.sub(*o, s);
    }
    trim(&mut out);
    out
}

pub(crate) fn scale(f: &Fq, a: &[u32], c: u32) -> Vec<u32> {
    if c == 0 {
        return Vec::new();
    }
    a.iter().map(|&x| f.mul(x, c)).collect()
}

pub(crate) fn mul(f: &Fq, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if f.l() == 1 {
        return mul_prime(f.p() as u64, a, b);
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
    }
    trim(&mut out);
    out
}

fn mul_prime(p: u64, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    // Products are < p^2; reduce often enough to stay in u64.
    let limit = u64::MAX / 2;
    let step = (p - 1) * (p - 1);
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let x = x as u64;
        for (j, &y) in b.iter().enumerate() {
            if y == 0 {
                continue;
            }
            let slot = &mut acc[i + j];
            *slot += x * y as u64;
            if *slot > limit - step {
                *slot %= p;
            }
        }
    }
    let mut out: Vec<u32> = acc.into_iter().map(|v| (v % p) as u32).collect();
    trim(&mut out);
    out
}

/// Division with remainder; `b` must be nonzero.
pub(crate) fn divrem(f: &Fq, a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let inv = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    let mut q = vec![0u32; a.len() - db];
    for k in (db..r.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        let c = f.mul(c, inv);
        q[k - db] = c;
        for t in 0..=db {
            let idx = k - db + t;
            r[idx] = f.sub(r[idx], f.mul(c, b[t]));
        }
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub(crate) fn rem(f: &Fq, a: &[u32], b: &[u32]) -> Vec<u32> {
    divrem(f, a, b).1
}

pub(crate) fn monic(f: &Fq, a: &[u32]) -> Vec<u32> {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(f, a, f.inv(lc).expect("nonzero")),
    }
}

/// Monic gcd (zero only if both inputs are zero).
pub(crate) fn gcd(f: &Fq, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Extended gcd: returns (g, s, t) with s·a + t·b = g, g monic.
pub(crate) fn xgcd(f: &Fq, a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>, Vec<u32>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u32], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u32]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last() {
        None => (r0, s0, t0),
        Some(&lc) => {
            let inv = f.inv(lc).expect("nonzero");
            (scale(f, &r0, inv), scale(f, &s0, inv), scale(f, &t0, inv))
        }
    }
}

pub(crate) fn mulmod(f: &Fq, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
    rem(f, &mul(f, a, b), m)
}

pub(crate) fn powmod(f: &Fq, a: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
    let mut base = rem(f, a, m);
    let mut acc = rem(f, &[1], m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &base, m);
        }
        base = mulmod(f, &base, &base, m);
        e >>= 1;
    }
    acc
}

/// Substitutes T ↦ T^k.
pub(crate) fn inflate(a: &[u32], k: usize) -> Vec<u32> {
    if a.is_empty() || k == 1 {
        return a.to_vec();
    }
    let len = (a.len() - 1)
        .checked_mul(k)
        .and_then(|d| d.checked_add(1))
        .filter(|&d| d < 1 << 28)
        .expect("polynomial degree overflow");
    let mut out = vec![0u32; len];
    for (i, &c) in a.iter().enumerate() {
        out[i * k] = c;
    }
    out
}

/// True when only exponents divisible by `k` carry nonzero coefficients.
pub(crate) fn is_inflated(a: &[u32], k: usize) -> bool {
    a.iter().enumerate().all(|(i, &c)| c == 0 || i % k == 0)
}

/// Inverse of `inflate`; caller checks `is_inflated` first.
pub(crate) fn deflate(a: &[u32], k: usize) -> Vec<u32> {
    a.iter().step_by(k).copied().collect()
}

pub(crate) fn eval(f: &Fq, a: &[u32], x: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Rabin irreducibility test over F_q.
pub(crate) fn is_irreducible(f: &Fq, a: &[u32]) -> bool {
    let d = match deg(a) {
        None | Some(0) => return false,
        Some(d) => d,
    };
    if d == 1 {
        return true;
    }
    let m = monic(f, a);
    let q = f.q() as u64;
    let x = vec![0, 1];
    // frob_pows[i] = x^{q^i} mod m
    let mut pows = vec![rem(f, &x, &m)];
    for i in 1..=d {
        let next = powmod(f, &pows[i - 1], q, &m);
        pows.push(next);
    }
    if sub(f, &pows[d], &rem(f, &x, &m)).len() != 0 {
        return false;
    }
    for r in prime_divisors(d) {
        let h = sub(f, &pows[d / r], &x);
        if gcd(f, &h, &m).len() != 1 {
            return false;
        }
    }
    true
}

pub(crate) fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The monic polynomial of degree `d` whose index in lexicographic order is
/// `n` (coefficients below the leading one are the base-q digits of `n`,
/// constant term least significant).
pub(crate) fn monic_from_index(f: &Fq, d: usize, mut n: u128) -> Vec<u32> {
    let q = f.q() as u128;
    let mut v = Vec::with_capacity(d + 1);
    for _ in 0..d {
        v.push((n % q) as u32);
        n /= q;
    }
    v.push(1);
    v
}

/// First monic irreducible polynomial of degree `d` in lexicographic order.
pub(crate) fn first_irreducible(f: &Fq, d: usize) -> Vec<u32> {
    let mut n: u128 = 0;
    loop {
        let cand = monic_from_index(f, d, n);
        if is_irreducible(f, &cand) {
            return cand;
        }
        n += 1;
    }
}
