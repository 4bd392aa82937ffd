//! The constant field F_q, q = p^l.
//!
//! Elements are encoded as integers in `0..q`: the base-p digits of the code
//! are the coefficients of the element in the power basis `1, w, w^2, ...`
//! of `F_p[w]/(h)`, where `h` is the first monic irreducible polynomial of
//! degree `l` over F_p in lexicographic order. For `l = 1` the code is the
//! residue itself.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Fq {
    p: u32,
    l: u32,
    q: u32,
    /// Defining polynomial of F_q over F_p, low degree first (monic, degree l).
    modulus: Vec<u32>,
    /// exp[i] = code of g^i for a fixed primitive element g (only when l > 1).
    exp: Vec<u32>,
    /// log[code] = discrete logarithm (only when l > 1; log[0] unused).
    log: Vec<u32>,
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.l == other.l
    }
}
impl Eq for Fq {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^l`, or returns `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while q % p != 0 {
        p += 1;
    }
    if !is_prime(p) {
        return None;
    }
    let mut rest = q;
    let mut l = 0;
    while rest % p == 0 {
        rest /= p;
        l += 1;
    }
    (rest == 1).then_some((p as u32, l))
}

// Small F_p polynomial helpers used only while building the tables.
fn fp_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let deg = m.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for k in (deg..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        for (t, &mc) in m.iter().enumerate().take(deg) {
            let idx = k - deg + t;
            prod[idx] = (prod[idx] + (p as u64 - c) * mc as u64) % p as u64;
        }
        prod[k] = 0;
    }
    prod.truncate(deg);
    prod.resize(deg, 0);
    prod.into_iter().map(|x| x as u32).collect()
}

fn fp_irreducible_brute(m: &[u32], p: u32) -> bool {
    // Degree is tiny here (l with p^l <= 2^16); trial division by all monic
    // polynomials of degree <= deg/2 is enough.
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for n in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut x = n;
            for _ in 0..d {
                div.push((x % p as u64) as u32);
                x /= p as u64;
            }
            div.push(1);
            if fp_divides(&div, m, p) {
                return false;
            }
        }
    }
    true
}

fn fp_divides(d: &[u32], f: &[u32], p: u32) -> bool {
    let mut r: Vec<u64> = f.iter().map(|&x| x as u64).collect();
    let dd = d.len() - 1;
    for k in (dd..r.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        for t in 0..=dd {
            let idx = k - dd + t;
            r[idx] = (r[idx] + (p as u64 - c) * d[t] as u64) % p as u64;
        }
    }
    r.iter().take(dd).all(|&x| x == 0)
}

impl Fq {
    /// Builds F_q. For `l > 1` the order must not exceed 2^16.
    pub fn new(q: u64) -> Result<Fq> {
        let (p, l) = prime_power(q)
            .ok_or_else(|| Error::Domain(format!("q = {q} is not a prime power")))?;
        if l == 1 {
            if q >= 1 << 31 {
                return Err(Error::Domain("prime too large".into()));
            }
            return Ok(Fq {
                p,
                l,
                q: q as u32,
                modulus: vec![0, 1],
                exp: Vec::new(),
                log: Vec::new(),
            });
        }
        if q > 1 << 16 {
            return Err(Error::Domain(format!("q = {q} too large for table arithmetic")));
        }
        let l_us = l as usize;
        let mut modulus = None;
        for n in 0..(p as u64).pow(l) {
            let mut m = Vec::with_capacity(l_us + 1);
            let mut x = n;
            for _ in 0..l {
                m.push((x % p as u64) as u32);
                x /= p as u64;
            }
            m.push(1);
            if fp_irreducible_brute(&m, p) {
                modulus = Some(m);
                break;
            }
        }
        let modulus = modulus.expect("an irreducible polynomial exists in every degree");
        let q32 = q as u32;
        let decode = |c: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(l_us);
            let mut x = c;
            for _ in 0..l {
                v.push(x % p);
                x /= p;
            }
            v
        };
        let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let order = q32 - 1;
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; q32 as usize];
        'search: for g in 2..q32 {
            let gv = decode(g);
            let mut cur = vec![0u32; l_us];
            cur[0] = 1;
            let mut seen = vec![false; q32 as usize];
            for i in 0..order {
                let code = encode(&cur);
                if seen[code as usize] {
                    continue 'search;
                }
                seen[code as usize] = true;
                exp[i as usize] = code;
                log[code as usize] = i;
                cur = fp_mulmod(&cur, &gv, &modulus, p);
            }
            break;
        }
        Ok(Fq { p, l, q: q32, modulus, exp, log })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn l(&self) -> u32 {
        self.l
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.l == 1 {
            let s = a as u64 + b as u64;
            (s % self.p as u64) as u32
        } else {
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            let mut scale = 1;
            for _ in 0..self.l {
                let d = (a % self.p + b % self.p) % self.p;
                out += d * scale;
                scale *= self.p;
                a /= self.p;
                b /= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.l == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else {
            let mut a = a;
            let mut out = 0;
            let mut scale = 1;
            for _ in 0..self.l {
                let d = a % self.p;
                out += ((self.p - d) % self.p) * scale;
                scale *= self.p;
                a /= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.l == 1 {
            ((a as u64 * b as u64) % self.p as u64) as u32
        } else if a == 0 || b == 0 {
            0
        } else {
            let order = self.q - 1;
            let e = (self.log[a as usize] + self.log[b as usize]) % order;
            self.exp[e as usize]
        }
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.l == 1 {
            Ok(self.pow(a, (self.p - 2) as u64))
        } else {
            let order = self.q - 1;
            let e = (order - self.log[a as usize]) % order;
            Ok(self.exp[e as usize])
        }
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Image of an integer under Z -> F_p -> F_q.
    pub fn from_int(&self, n: i64) -> u32 {
        let p = self.p as i64;
        (((n % p) + p) % p) as u32
    }

    /// The code of the generator `w` of F_q over F_p (only meaningful for l > 1).
    pub fn generator(&self) -> u32 {
        if self.l == 1 {
            1
        } else {
            self.p
        }
    }

    /// Base-p digits of an element (coefficients in 1, w, w^2, ...).
    pub fn digits(&self, a: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.l as usize);
        let mut x = a;
        for _ in 0..self.l {
            v.push(x % self.p);
            x /= self.p;
        }
        v
    }

    /// Iterator over all elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    /// Renders an element: integers for l = 1, polynomials in `w` otherwise.
    pub fn render(&self, a: u32) -> String {
        if self.l == 1 {
            return a.to_string();
        }
        let digits = self.digits(a);
        let mut terms = Vec::new();
        for (i, &d) in digits.iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            let t = match (i, d) {
                (0, d) => d.to_string(),
                (1, 1) => "w".to_string(),
                (1, d) => format!("{d}*w"),
                (i, 1) => format!("w^{i}"),
                (i, d) => format!("{d}*w^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}
