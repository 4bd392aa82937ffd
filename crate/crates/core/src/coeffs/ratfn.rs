//! Reduced fractions num/den over F_q with monic denominator.

use super::fq::Fq;
use super::upoly;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatFn {
    pub(crate) num: Vec<u32>,
    pub(crate) den: Vec<u32>,
}

impl RatFn {
    pub(crate) fn zero() -> RatFn {
        RatFn { num: Vec::new(), den: vec![1] }
    }

    #[cfg(test)]
    pub(crate) fn one() -> RatFn {
        RatFn { num: vec![1], den: vec![1] }
    }

    pub(crate) fn from_poly(mut num: Vec<u32>) -> RatFn {
        upoly::trim(&mut num);
        RatFn { num, den: vec![1] }
    }

    pub fn numerator(&self) -> &[u32] {
        &self.num
    }

    pub fn denominator(&self) -> &[u32] {
        &self.den
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Reduces num/den; `den` must be nonzero.
    pub(crate) fn reduce(f: &Fq, mut num: Vec<u32>, mut den: Vec<u32>) -> RatFn {
        upoly::trim(&mut num);
        upoly::trim(&mut den);
        if num.is_empty() {
            return RatFn::zero();
        }
        let g = upoly::gcd(f, &num, &den);
        if g.len() > 1 {
            num = upoly::divrem(f, &num, &g).0;
            den = upoly::divrem(f, &den, &g).0;
        }
        let lc = *den.last().expect("nonzero denominator");
        if lc != 1 {
            let inv = f.inv(lc).expect("nonzero");
            num = upoly::scale(f, &num, inv);
            den = upoly::scale(f, &den, inv);
        }
        RatFn { num, den }
    }

    pub(crate) fn add(&self, f: &Fq, o: &RatFn) -> RatFn {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFn::reduce(f, upoly::add(f, &self.num, &o.num), self.den.clone());
        }
        let g = upoly::gcd(f, &self.den, &o.den);
        let a = upoly::divrem(f, &self.den, &g).0;
        let b = upoly::divrem(f, &o.den, &g).0;
        let num = upoly::add(f, &upoly::mul(f, &self.num, &b), &upoly::mul(f, &o.num, &a));
        let den = upoly::mul(f, &a, &o.den);
        RatFn::reduce(f, num, den)
    }

    pub(crate) fn neg(&self, f: &Fq) -> RatFn {
        RatFn { num: upoly::neg(f, &self.num), den: self.den.clone() }
    }

    pub(crate) fn sub(&self, f: &Fq, o: &RatFn) -> RatFn {
        self.add(f, &o.neg(f))
    }

    pub(crate) fn mul(&self, f: &Fq, o: &RatFn) -> RatFn {
        if self.is_zero() || o.is_zero() {
            return RatFn::zero();
        }
        // Cross-cancel so both products are already reduced.
        let g1 = upoly::gcd(f, &self.num, &o.den);
        let g2 = upoly::gcd(f, &o.num, &self.den);
        let (n1, d2) = if g1.len() > 1 {
            (upoly::divrem(f, &self.num, &g1).0, upoly::divrem(f, &o.den, &g1).0)
        } else {
            (self.num.clone(), o.den.clone())
        };
        let (n2, d1) = if g2.len() > 1 {
            (upoly::divrem(f, &o.num, &g2).0, upoly::divrem(f, &self.den, &g2).0)
        } else {
            (o.num.clone(), self.den.clone())
        };
        let mut num = upoly::mul(f, &n1, &n2);
        let mut den = upoly::mul(f, &d1, &d2);
        let lc = *den.last().expect("nonzero");
        if lc != 1 {
            let inv = f.inv(lc).expect("nonzero");
            num = upoly::scale(f, &num, inv);
            den = upoly::scale(f, &den, inv);
        }
        RatFn { num, den }
    }

    pub(crate) fn inv(&self, f: &Fq) -> Option<RatFn> {
        if self.is_zero() {
            return None;
        }
        let lc = *self.num.last().expect("nonzero");
        let inv = f.inv(lc).expect("nonzero");
        Some(RatFn { num: upoly::scale(f, &self.den, inv), den: upoly::scale(f, &self.num, inv) })
    }

    /// Substitutes T ↦ T^k (reduced fractions stay reduced).
    pub(crate) fn inflate(&self, k: usize) -> RatFn {
        RatFn { num: upoly::inflate(&self.num, k), den: upoly::inflate(&self.den, k) }
    }

    pub(crate) fn is_inflated(&self, k: usize) -> bool {
        upoly::is_inflated(&self.num, k) && upoly::is_inflated(&self.den, k)
    }

    pub(crate) fn deflate(&self, k: usize) -> RatFn {
        RatFn { num: upoly::deflate(&self.num, k), den: upoly::deflate(&self.den, k) }
    }

    /// The constant value, if the fraction lies in F_q.
    pub(crate) fn as_constant(&self) -> Option<u32> {
        match (self.num.len(), self.den.len()) {
            (0, _) => Some(0),
            (1, 1) => Some(self.num[0]),
            _ => None,
        }
    }
}
