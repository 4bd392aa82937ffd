//! The Ore ring K{τ}: F_q-linear polynomials Σ a_i X^{q^i} under composition,
//! with τ·a = a^q·τ.

use std::cmp::Ordering;
use std::fmt;

use crate::coeffs::{Elem, Embedding, Field};
use crate::error::{Error, Result};
use crate::linalg;

#[derive(Clone, PartialEq, Eq)]
pub struct OrePoly {
    field: Field,
    c: Vec<Elem>,
}

impl fmt::Debug for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl OrePoly {
    pub fn new(field: &Field, mut c: Vec<Elem>) -> OrePoly {
        while c.last().is_some_and(|a| field.is_zero(a)) {
            c.pop();
        }
        OrePoly { field: field.clone(), c }
    }
    pub fn zero(field: &Field) -> OrePoly {
        OrePoly { field: field.clone(), c: Vec::new() }
    }
    /// τ^0, the identity X.
    pub fn one(field: &Field) -> OrePoly {
        OrePoly::constant(field, field.one())
    }
    /// a·τ^0.
    pub fn constant(field: &Field, a: Elem) -> OrePoly {
        OrePoly::new(field, vec![a])
    }
    /// a·τ^k.
    pub fn monomial(field: &Field, a: Elem, k: usize) -> OrePoly {
        let mut c = vec![field.zero(); k];
        c.push(a);
        OrePoly::new(field, c)
    }
    /// τ^k.
    pub fn tau(field: &Field, k: usize) -> OrePoly {
        OrePoly::monomial(field, field.one(), k)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn coeffs(&self) -> &[Elem] {
        &self.c
    }
    pub fn coeff(&self, i: usize) -> Elem {
        self.c.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.field.is_one(&self.c[0])
    }
    /// τ-degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    pub fn lc(&self) -> Option<&Elem> {
        self.c.last()
    }
    /// d(P) = a_0.
    pub fn linear_part(&self) -> Elem {
        self.coeff(0)
    }
    pub fn is_separable(&self) -> bool {
        !self.field.is_zero(&self.linear_part())
    }
    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|a| self.field.is_one(a))
    }

    fn check(&self, o: &OrePoly) -> Result<()> {
        if self.field == o.field {
            Ok(())
        } else {
            Err(Error::MixedBackends)
        }
    }

    pub fn add(&self, o: &OrePoly) -> OrePoly {
        let k = &self.field;
        let n = self.c.len().max(o.c.len());
        let z = k.zero();
        let c = (0..n)
            .map(|i| k.add(self.c.get(i).unwrap_or(&z), o.c.get(i).unwrap_or(&z)))
            .collect();
        OrePoly::new(k, c)
    }

    pub fn sub(&self, o: &OrePoly) -> OrePoly {
        let k = &self.field;
        let n = self.c.len().max(o.c.len());
        let z = k.zero();
        let c = (0..n)
            .map(|i| k.sub(self.c.get(i).unwrap_or(&z), o.c.get(i).unwrap_or(&z)))
            .collect();
        OrePoly::new(k, c)
    }

    pub fn neg(&self) -> OrePoly {
        OrePoly { field: self.field.clone(), c: self.c.iter().map(|a| self.field.neg(a)).collect() }
    }

    /// Composition self ∘ o: (PQ)_k = Σ_{i+j=k} P_i · Q_j^{q^i}.
    pub fn mul(&self, o: &OrePoly) -> OrePoly {
        let k = &self.field;
        if self.is_zero() || o.is_zero() {
            return OrePoly::zero(k);
        }
        let mut out = vec![k.zero(); self.c.len() + o.c.len() - 1];
        for (i, pi) in self.c.iter().enumerate() {
            if k.is_zero(pi) {
                continue;
            }
            for (j, qj) in o.c.iter().enumerate() {
                if k.is_zero(qj) {
                    continue;
                }
                let t = k.mul(pi, &k.frob(qj, i as u64));
                out[i + j] = k.add(&out[i + j], &t);
            }
        }
        OrePoly::new(k, out)
    }

    pub fn try_add(&self, o: &OrePoly) -> Result<OrePoly> {
        self.check(o)?;
        Ok(self.add(o))
    }
    pub fn try_sub(&self, o: &OrePoly) -> Result<OrePoly> {
        self.check(o)?;
        Ok(self.sub(o))
    }
    pub fn try_mul(&self, o: &OrePoly) -> Result<OrePoly> {
        self.check(o)?;
        Ok(self.mul(o))
    }

    /// a·P.
    pub fn scale_left(&self, a: &Elem) -> OrePoly {
        let k = &self.field;
        OrePoly::new(k, self.c.iter().map(|x| k.mul(a, x)).collect())
    }

    /// P·a (composition with multiplication by a).
    pub fn scale_right(&self, a: &Elem) -> OrePoly {
        let k = &self.field;
        OrePoly::new(
            k,
            self.c.iter().enumerate().map(|(i, x)| k.mul(x, &k.frob(a, i as u64))).collect(),
        )
    }

    /// Left-multiplies by the inverse of the leading coefficient.
    pub fn monic(&self) -> OrePoly {
        match self.lc() {
            None => self.clone(),
            Some(lc) => self.scale_left(&self.field.inv(lc).expect("nonzero")),
        }
    }

    /// f = quo·g + rem with deg rem < deg g.
    pub fn left_divmod(&self, g: &OrePoly) -> Result<(OrePoly, OrePoly)> {
        self.check(g)?;
        let k = &self.field;
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let mut r = self.c.clone();
        if r.len() <= dg {
            return Ok((OrePoly::zero(k), self.clone()));
        }
        let lg = g.lc().expect("nonzero").clone();
        let mut quo = vec![k.zero(); r.len() - dg];
        for e in (dg..r.len()).rev() {
            if k.is_zero(&r[e]) {
                continue;
            }
            let shift = (e - dg) as u64;
            let c = k.div(&r[e], &k.frob(&lg, shift))?;
            for (j, gj) in g.c.iter().enumerate() {
                if k.is_zero(gj) {
                    continue;
                }
                let t = k.mul(&c, &k.frob(gj, shift));
                r[j + e - dg] = k.sub(&r[j + e - dg], &t);
            }
            quo[e - dg] = c;
        }
        r.truncate(dg);
        Ok((OrePoly::new(k, quo), OrePoly::new(k, r)))
    }

    /// f = g·quo + rem with deg rem < deg g (needs q-th roots of coefficients).
    pub fn right_divmod(&self, g: &OrePoly) -> Result<(OrePoly, OrePoly)> {
        self.check(g)?;
        let k = &self.field;
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let mut r = self.c.clone();
        if r.len() <= dg {
            return Ok((OrePoly::zero(k), self.clone()));
        }
        let lg_inv = k.inv(g.lc().expect("nonzero"))?;
        let mut quo = vec![k.zero(); r.len() - dg];
        for e in (dg..r.len()).rev() {
            if k.is_zero(&r[e]) {
                continue;
            }
            let c = k.inv_frob(&k.mul(&r[e], &lg_inv), dg as u64)?;
            for (j, gj) in g.c.iter().enumerate() {
                if k.is_zero(gj) {
                    continue;
                }
                let t = k.mul(gj, &k.frob(&c, j as u64));
                r[j + e - dg] = k.sub(&r[j + e - dg], &t);
            }
            quo[e - dg] = c;
        }
        r.truncate(dg);
        Ok((OrePoly::new(k, quo), OrePoly::new(k, r)))
    }

    /// Monic generator of K{τ}f + K{τ}g (greatest common right divisor).
    pub fn right_gcd(&self, g: &OrePoly) -> Result<OrePoly> {
        self.check(g)?;
        let (mut a, mut b) = (self.clone(), g.clone());
        while !b.is_zero() {
            let r = a.left_divmod(&b)?.1;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Monic generator of fK{τ} + gK{τ} (greatest common left divisor).
    pub fn left_gcd(&self, g: &OrePoly) -> Result<OrePoly> {
        self.check(g)?;
        let (mut a, mut b) = (self.clone(), g.clone());
        while !b.is_zero() {
            let r = a.right_divmod(&b)?.1;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Monic generator of K{τ}f ∩ K{τ}g (least common left multiple).
    pub fn left_lcm(&self, g: &OrePoly) -> Result<OrePoly> {
        self.check(g)?;
        let k = &self.field;
        if self.is_zero() || g.is_zero() {
            return Ok(OrePoly::zero(k));
        }
        // r_i = s_i f + t_i g along the left-division chain.
        let (mut r0, mut r1) = (self.clone(), g.clone());
        let (mut s0, mut s1) = (OrePoly::one(k), OrePoly::zero(k));
        while !r1.is_zero() {
            let (quo, rem) = r0.left_divmod(&r1)?;
            let s2 = s0.sub(&quo.mul(&s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        Ok(s1.mul(self).monic())
    }

    /// P = τ^N · Q with Q separable.
    pub fn separable_part(&self) -> Result<(usize, OrePoly)> {
        let k = &self.field;
        let n = self
            .c
            .iter()
            .position(|a| !k.is_zero(a))
            .ok_or_else(|| Error::Domain("separable part of the zero polynomial".into()))?;
        let q = self.c[n..]
            .iter()
            .map(|a| k.inv_frob(a, n as u64))
            .collect::<Result<Vec<_>>>()?;
        Ok((n, OrePoly::new(k, q)))
    }

    /// Q with τ^N·P = Q·τ^N (coefficients raised to q^N; N < 0 takes roots).
    pub fn twist(&self, n: i64) -> Result<OrePoly> {
        let k = &self.field;
        let c = if n >= 0 {
            self.c.iter().map(|a| k.frob(a, n as u64)).collect()
        } else {
            self.c
                .iter()
                .map(|a| k.inv_frob(a, n.unsigned_abs()))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(OrePoly::new(k, c))
    }

    /// P(x) = Σ a_i x^{q^i}.
    pub fn eval(&self, x: &Elem) -> Elem {
        let k = &self.field;
        let mut acc = k.zero();
        let mut xp = x.clone();
        for (i, a) in self.c.iter().enumerate() {
            if i > 0 {
                xp = k.frob(&xp, 1);
            }
            if !k.is_zero(a) {
                acc = k.add(&acc, &k.mul(a, &xp));
            }
        }
        acc
    }

    /// Base change of the coefficients along a field embedding.
    pub fn embed(&self, emb: &Embedding) -> OrePoly {
        OrePoly::new(emb.target(), self.c.iter().map(|a| emb.map(a)).collect())
    }

    /// Re-expresses the polynomial over `target`, lifting F_q(T) into its
    /// perfect closure or pushing level-0 perfect-closure coefficients down.
    pub fn coerce(&self, target: &Field) -> Result<OrePoly> {
        if *target == self.field {
            return Ok(self.clone());
        }
        if target.perfect_hull() != self.field.perfect_hull() {
            return Err(Error::MixedBackends);
        }
        let c = self
            .c
            .iter()
            .map(|a| {
                if target.has_inverse_frobenius() {
                    Ok(target.lift(a))
                } else {
                    target.push_down(a).ok_or_else(|| {
                        Error::Capability("coefficient needs the perfect closure".into())
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OrePoly { field: target.clone(), c })
    }

    /// F_q-basis of {x ∈ F_{q^m} : P(x) = 0}.
    pub fn kernel_in_extension(&self, m: usize) -> Result<(Field, Vec<Elem>)> {
        let k = &self.field;
        let m0 = k
            .degree()
            .ok_or_else(|| Error::Capability("kernels are enumerated only over finite fields".into()))?;
        if m == 0 || m % m0 != 0 {
            return Err(Error::Domain(format!("coefficients do not embed in F_q^{m}")));
        }
        if self.is_zero() {
            return Err(Error::Domain("kernel of the zero polynomial is everything".into()));
        }
        let target = k.with_extension_degree(m);
        let emb = Embedding::new(k, &target)?;
        let p = self.embed(&emb);
        let mut cols = Vec::with_capacity(m);
        for j in 0..m {
            let mut v = vec![0u32; m];
            v[j] = 1;
            let x = target.from_coords(&v)?;
            cols.push(target.coords(&p.eval(&x)).expect("finite"));
        }
        let rows: Vec<Vec<u32>> = (0..m).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        let basis = linalg::fq_nullspace(target.fq(), &rows, m)
            .into_iter()
            .map(|v| target.from_coords(&v).expect("coordinates in range"))
            .collect();
        Ok((target, basis))
    }

    /// Smallest N (a multiple of the coefficient field degree) such that the
    /// separable polynomial P has all its roots in F_{q^N}.
    pub fn splitting_degree(&self, max_ext: usize) -> Result<usize> {
        let k = &self.field;
        let m0 = k
            .degree()
            .ok_or_else(|| Error::Capability("splitting fields exist only over finite fields".into()))?;
        if !self.is_separable() {
            return Err(Error::Domain("splitting degree of an inseparable polynomial".into()));
        }
        let d = self.degree().expect("nonzero");
        if d == 0 {
            return Ok(m0);
        }
        let one = OrePoly::one(k);
        let mut r = one.clone();
        let mut n = 0;
        while n + m0 <= max_ext {
            for _ in 0..m0 {
                // r ← τ·r mod P
                let shifted = OrePoly::new(
                    k,
                    std::iter::once(k.zero()).chain(r.c.iter().map(|a| k.frob(a, 1))).collect(),
                );
                r = shifted.left_divmod(self)?.1;
            }
            n += m0;
            if r == one {
                return Ok(n);
            }
        }
        Err(Error::NoSplittingFound(max_ext))
    }

    pub fn render(&self) -> String {
        let k = &self.field;
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if k.is_zero(a) {
                continue;
            }
            let term = if k.is_one(a) {
                format!("t^{i}")
            } else if k.render_is_compound(a) {
                format!("({})*t^{i}", k.render(a))
            } else {
                format!("{}*t^{i}", k.render(a))
            };
            terms.push(term);
        }
        terms.join(" + ")
    }

    /// Deterministic order: τ-degree, then coefficients from the top down.
    pub fn canonical_cmp(&self, o: &OrePoly) -> Ordering {
        self.c
            .len()
            .cmp(&o.c.len())
            .then_with(|| self.c.iter().rev().cmp(o.c.iter().rev()))
    }
}
