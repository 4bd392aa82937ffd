//! Elements of A = F_q[T].

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::fq::Fq;
use super::upoly;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct APoly {
    fq: Arc<Fq>,
    c: Vec<u32>,
}

impl PartialEq for APoly {
    fn eq(&self, other: &Self) -> bool {
        *self.fq == *other.fq && self.c == other.c
    }
}
impl Eq for APoly {}

impl PartialOrd for APoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then lexicographically from the top coefficient down.
impl Ord for APoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl std::hash::Hash for APoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl fmt::Debug for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_poly(&self.fq, &self.c, "T"))
    }
}

pub(crate) fn render_poly(fq: &Fq, c: &[u32], var: &str) -> String {
    if c.is_empty() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (i, &a) in c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let coeff = fq.render(a);
        let wrapped = if coeff.contains('+') { format!("({coeff})") } else { coeff };
        let term = match i {
            0 => wrapped,
            _ => {
                let mono = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                if a == 1 {
                    mono
                } else {
                    format!("{wrapped}*{mono}")
                }
            }
        };
        terms.push(term);
    }
    terms.join("+")
}

impl APoly {
    pub fn new(fq: Arc<Fq>, mut c: Vec<u32>) -> APoly {
        upoly::trim(&mut c);
        APoly { fq, c }
    }
    pub fn zero(fq: Arc<Fq>) -> APoly {
        APoly { fq, c: Vec::new() }
    }
    pub fn one(fq: Arc<Fq>) -> APoly {
        APoly { fq, c: vec![1] }
    }
    /// The variable T.
    pub fn t(fq: Arc<Fq>) -> APoly {
        APoly { fq, c: vec![0, 1] }
    }
    pub fn constant(fq: Arc<Fq>, a: u32) -> APoly {
        APoly::new(fq, vec![a])
    }
    pub fn fq(&self) -> &Arc<Fq> {
        &self.fq
    }
    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        upoly::deg(&self.c)
    }
    pub fn is_monic(&self) -> bool {
        self.c.last() == Some(&1)
    }
    fn wrap(&self, c: Vec<u32>) -> APoly {
        APoly { fq: self.fq.clone(), c }
    }
    pub fn add(&self, o: &APoly) -> APoly {
        self.wrap(upoly::add(&self.fq, &self.c, &o.c))
    }
    pub fn sub(&self, o: &APoly) -> APoly {
        self.wrap(upoly::sub(&self.fq, &self.c, &o.c))
    }
    pub fn neg(&self) -> APoly {
        self.wrap(upoly::neg(&self.fq, &self.c))
    }
    pub fn mul(&self, o: &APoly) -> APoly {
        self.wrap(upoly::mul(&self.fq, &self.c, &o.c))
    }
    pub fn scale(&self, a: u32) -> APoly {
        self.wrap(upoly::scale(&self.fq, &self.c, a))
    }
    pub fn pow(&self, mut e: u32) -> APoly {
        let mut base = self.clone();
        let mut acc = APoly::one(self.fq.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
    pub fn divrem(&self, o: &APoly) -> Result<(APoly, APoly)> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = upoly::divrem(&self.fq, &self.c, &o.c);
        Ok((self.wrap(q), self.wrap(r)))
    }
    pub fn rem(&self, o: &APoly) -> Result<APoly> {
        Ok(self.divrem(o)?.1)
    }
    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, o: &APoly) -> APoly {
        self.wrap(upoly::gcd(&self.fq, &self.c, &o.c))
    }
    /// (g, s, t) with s·self + t·o = g.
    pub fn xgcd(&self, o: &APoly) -> (APoly, APoly, APoly) {
        let (g, s, t) = upoly::xgcd(&self.fq, &self.c, &o.c);
        (self.wrap(g), self.wrap(s), self.wrap(t))
    }
    pub fn monic(&self) -> APoly {
        self.wrap(upoly::monic(&self.fq, &self.c))
    }
    pub fn lc(&self) -> u32 {
        self.c.last().copied().unwrap_or(0)
    }
    pub fn is_prime(&self) -> bool {
        upoly::is_irreducible(&self.fq, &self.c)
    }
    pub fn eval(&self, x: u32) -> u32 {
        upoly::eval(&self.fq, &self.c, x)
    }

    /// Monic irreducible polynomials of degree 1..=max_degree, ordered by
    /// degree and then lexicographically.
    pub fn primes_up_to(fq: &Arc<Fq>, max_degree: usize) -> Vec<APoly> {
        let mut out = Vec::new();
        for d in 1..=max_degree {
            let count = (fq.q() as u128).pow(d as u32);
            for n in 0..count {
                let c = upoly::monic_from_index(fq, d, n);
                if upoly::is_irreducible(fq, &c) {
                    out.push(APoly { fq: fq.clone(), c });
                }
            }
        }
        out
    }

    /// The first `count` monic primes in (degree, lexicographic) order.
    pub fn first_primes(fq: &Arc<Fq>, count: usize) -> Vec<APoly> {
        let mut out = Vec::new();
        let mut d = 1;
        while out.len() < count {
            let total = (fq.q() as u128).pow(d as u32);
            let mut n = 0;
            while n < total && out.len() < count {
                let c = upoly::monic_from_index(fq, d, n);
                if upoly::is_irreducible(fq, &c) {
                    out.push(APoly { fq: fq.clone(), c });
                }
                n += 1;
            }
            d += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Arc<Fq> {
        Arc::new(Fq::new(3).unwrap())
    }

    #[test]
    fn gcd_and_primality() {
        let fq = f3();
        let t = APoly::t(fq.clone());
        let one = APoly::one(fq.clone());
        let a = t.mul(&t).sub(&one);
        let b = t.sub(&one);
        assert_eq!(a.gcd(&b), b);
        assert!(t.is_prime());
        assert!(!t.mul(&t).is_prime());
    }

    #[test]
    fn primes_of_degree_one() {
        let fq = f3();
        let ps = APoly::primes_up_to(&fq, 1);
        let t = APoly::t(fq.clone());
        let expect: Vec<APoly> = (0..3)
            .map(|c| t.add(&APoly::constant(fq.clone(), c)))
            .collect();
        assert_eq!(ps, expect);
        let two = APoly::primes_up_to(&fq, 2);
        assert_eq!(two.len(), 6);
        assert_eq!(two[3].to_string(), "T^2+1");
        assert_eq!(two[4].to_string(), "T^2+T+2");
        assert_eq!(two[5].to_string(), "T^2+2*T+2");
    }

    #[test]
    fn division_by_zero() {
        let fq = f3();
        assert_eq!(
            APoly::one(fq.clone()).divrem(&APoly::zero(fq)),
            Err(Error::DivisionByZero)
        );
    }
}
