//! The coefficient field K and its elements.

use std::fmt;
use std::sync::Arc;

use super::apoly::{render_poly, APoly};
use super::ext::ExtData;
use super::fq::Fq;
use super::ratfn::RatFn;
use super::upoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    PrimeField,
    /// F_{q^m} with its monic irreducible modulus over F_q (low degree first).
    ExtField { m: usize, modulus: Vec<u32> },
    RationalFunctions,
    PerfectClosure,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    pub p: u32,
    pub l: u32,
    pub kind: FieldKind,
}

impl FieldDescriptor {
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.l)
    }
}

/// Payload of a field element; meaningful only together with its [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    /// Coordinates over F_q in the power basis of the extension (length m).
    Fin(Vec<u32>),
    Rat(RatFn),
    /// A fraction in S = T^{1/q^k} together with the level k.
    Perf(RatFn, u32),
}

struct FieldInner {
    desc: FieldDescriptor,
    fq: Arc<Fq>,
    ext: Option<ExtData>,
}

/// Shared handle to a coefficient field.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl Field {
    fn build(fq: Arc<Fq>, kind_tag: u8, m: usize) -> Field {
        let (kind, ext) = match kind_tag {
            0 => (FieldKind::PrimeField, Some(ExtData::new(fq.clone(), 1))),
            1 => {
                let e = ExtData::new(fq.clone(), m);
                (FieldKind::ExtField { m, modulus: e.modulus.clone() }, Some(e))
            }
            2 => (FieldKind::RationalFunctions, None),
            _ => (FieldKind::PerfectClosure, None),
        };
        let desc = FieldDescriptor { p: fq.p(), l: fq.l(), kind };
        Field(Arc::new(FieldInner { desc, fq, ext }))
    }

    /// F_p.
    pub fn prime(p: u64) -> Result<Field> {
        let fq = Fq::new(p)?;
        if fq.l() != 1 {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        Ok(Field::build(Arc::new(fq), 0, 1))
    }

    /// F_{q^m} over the constant field F_q.
    pub fn extension(q: u64, m: usize) -> Result<Field> {
        if m == 0 {
            return Err(Error::Domain("extension degree must be positive".into()));
        }
        Ok(Field::build(Arc::new(Fq::new(q)?), 1, m))
    }

    /// The constant field F_q itself: F_p when q is prime, else F_q as a
    /// degree-one extension of itself.
    pub fn constants(q: u64) -> Result<Field> {
        let fq = Fq::new(q)?;
        if fq.l() == 1 {
            Ok(Field::build(Arc::new(fq), 0, 1))
        } else {
            Ok(Field::build(Arc::new(fq), 1, 1))
        }
    }

    /// F_q(T).
    pub fn rational_functions(q: u64) -> Result<Field> {
        Ok(Field::build(Arc::new(Fq::new(q)?), 2, 0))
    }

    /// The perfect closure of F_q(T).
    pub fn perfect_closure(q: u64) -> Result<Field> {
        Ok(Field::build(Arc::new(Fq::new(q)?), 3, 0))
    }

    /// Another extension of the same constant field.
    pub fn with_extension_degree(&self, m: usize) -> Field {
        Field::build(self.0.fq.clone(), 1, m)
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0.desc
    }
    pub fn kind(&self) -> &FieldKind {
        &self.0.desc.kind
    }
    pub fn fq(&self) -> &Arc<Fq> {
        &self.0.fq
    }
    pub fn p(&self) -> u32 {
        self.0.fq.p()
    }
    pub fn q(&self) -> u64 {
        self.0.fq.q() as u64
    }
    pub(crate) fn ext(&self) -> Option<&ExtData> {
        self.0.ext.as_ref()
    }

    /// Degree over F_q for finite fields.
    pub fn degree(&self) -> Option<usize> {
        self.0.ext.as_ref().map(|e| e.m)
    }

    pub fn is_finite(&self) -> bool {
        self.0.ext.is_some()
    }

    pub fn is_function_field(&self) -> bool {
        !self.is_finite()
    }

    pub fn has_inverse_frobenius(&self) -> bool {
        !matches!(self.0.desc.kind, FieldKind::RationalFunctions)
    }

    /// The perfect closure of a rational function field (self otherwise).
    pub fn perfect_hull(&self) -> Field {
        match self.kind() {
            FieldKind::RationalFunctions => Field::build(self.0.fq.clone(), 3, 0),
            _ => self.clone(),
        }
    }

    /// The rational function field under a perfect closure (self otherwise).
    pub fn rational_base(&self) -> Field {
        match self.kind() {
            FieldKind::PerfectClosure => Field::build(self.0.fq.clone(), 2, 0),
            _ => self.clone(),
        }
    }

    pub fn name(&self) -> String {
        let q = self.q();
        match self.kind() {
            FieldKind::PrimeField => format!("F_{q}"),
            FieldKind::ExtField { m, .. } => format!("F_{q}^{m}"),
            FieldKind::RationalFunctions => format!("F_{q}(T)"),
            FieldKind::PerfectClosure => format!("F_{q}(T)^perf"),
        }
    }

    /// Common field of two operands, lifting F_q(T) into its perfect closure
    /// when the other side already lives there.
    pub fn join(&self, other: &Field) -> Result<Field> {
        if self == other {
            return Ok(self.clone());
        }
        if self.perfect_hull() == other.perfect_hull() && self.is_function_field() {
            return Ok(self.perfect_hull());
        }
        Err(Error::MixedBackends)
    }

    // ---- construction ----

    pub fn zero(&self) -> Elem {
        match &self.0.ext {
            Some(e) => Elem::Fin(e.zero()),
            None if self.is_perfect() => Elem::Perf(RatFn::zero(), 0),
            None => Elem::Rat(RatFn::zero()),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_fq(1)
    }

    fn is_perfect(&self) -> bool {
        matches!(self.0.desc.kind, FieldKind::PerfectClosure)
    }

    /// Embeds an element of the constant field F_q.
    pub fn from_fq(&self, a: u32) -> Elem {
        match &self.0.ext {
            Some(e) => {
                let mut v = e.zero();
                v[0] = a;
                Elem::Fin(v)
            }
            None => {
                let r = RatFn::from_poly(vec![a]);
                if self.is_perfect() {
                    Elem::Perf(r, 0)
                } else {
                    Elem::Rat(r)
                }
            }
        }
    }

    pub fn from_int(&self, n: i64) -> Elem {
        self.from_fq(self.0.fq.from_int(n))
    }

    /// Element of a finite field from its F_q-coordinates.
    pub fn from_coords(&self, v: &[u32]) -> Result<Elem> {
        let e = self
            .0
            .ext
            .as_ref()
            .ok_or_else(|| Error::Capability("coordinates need a finite field".into()))?;
        if v.iter().any(|&c| c >= self.0.fq.q()) {
            return Err(Error::Domain("coordinate outside F_q".into()));
        }
        Ok(Elem::Fin(e.reduce(v)))
    }

    /// Coordinates of a finite-field element over F_q.
    pub fn coords(&self, a: &Elem) -> Option<Vec<u32>> {
        match a {
            Elem::Fin(v) => Some(v.clone()),
            _ => None,
        }
    }

    /// The generator x of F_q[x]/(g).
    pub fn generator(&self) -> Result<Elem> {
        match &self.0.ext {
            Some(e) => Ok(Elem::Fin(e.generator())),
            None => Err(Error::Capability("no extension generator on function fields".into())),
        }
    }

    /// The variable T.
    pub fn t(&self) -> Result<Elem> {
        self.ratfn(vec![0, 1], vec![1])
    }

    /// num(T)/den(T) over F_q.
    pub fn ratfn(&self, num: Vec<u32>, den: Vec<u32>) -> Result<Elem> {
        let mut d = den;
        upoly::trim(&mut d);
        if d.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let r = RatFn::reduce(&self.0.fq, num, d);
        match self.kind() {
            FieldKind::RationalFunctions => Ok(Elem::Rat(r)),
            FieldKind::PerfectClosure => Ok(Elem::Perf(r, 0)),
            _ => match r.as_constant() {
                Some(c) => Ok(self.from_fq(c)),
                None => Err(Error::Capability("T is not available in a finite field".into())),
            },
        }
    }

    /// T^{1/q^k} in the perfect closure.
    pub fn s(&self, k: u32) -> Result<Elem> {
        if !self.is_perfect() {
            return Err(Error::Capability("q-th roots of T need the perfect closure".into()));
        }
        Ok(self.perf_normalize(RatFn::from_poly(vec![0, 1]), k))
    }

    /// A fraction num(S)/den(S) with S = T^{1/q^k}.
    pub fn perfect_element(&self, num: Vec<u32>, den: Vec<u32>, k: u32) -> Result<Elem> {
        if !self.is_perfect() {
            return Err(Error::Capability("levels need the perfect closure".into()));
        }
        let mut d = den;
        upoly::trim(&mut d);
        if d.is_empty() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.perf_normalize(RatFn::reduce(&self.0.fq, num, d), k))
    }

    // ---- predicates ----

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Fin(v) => ExtData::is_zero(v),
            Elem::Rat(r) | Elem::Perf(r, _) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    /// The value in F_q when the element is a constant.
    pub fn as_fq(&self, a: &Elem) -> Option<u32> {
        match a {
            Elem::Fin(v) => v[1..].iter().all(|&x| x == 0).then_some(v[0]),
            Elem::Rat(r) => r.as_constant(),
            Elem::Perf(r, _) => r.as_constant(),
        }
    }

    /// Level of a perfect-closure element (0 otherwise).
    pub fn level(&self, a: &Elem) -> u32 {
        match a {
            Elem::Perf(_, k) => *k,
            _ => 0,
        }
    }

    /// Number of stored F_q-coefficients of an element (0 for zero).
    pub fn height(&self, a: &Elem) -> usize {
        match a {
            Elem::Fin(v) => usize::from(!ExtData::is_zero(v)),
            Elem::Rat(r) | Elem::Perf(r, _) if r.is_zero() => 0,
            Elem::Rat(r) | Elem::Perf(r, _) => r.num.len() + r.den.len(),
        }
    }

    // ---- arithmetic ----

    fn perf_normalize(&self, mut r: RatFn, mut k: u32) -> Elem {
        let q = self.q() as usize;
        if r.is_zero() {
            return Elem::Perf(RatFn::zero(), 0);
        }
        while k > 0 && r.is_inflated(q) {
            r = r.deflate(q);
            k -= 1;
        }
        Elem::Perf(r, k)
    }

    fn inflate_by(&self, r: &RatFn, levels: u32) -> RatFn {
        if levels == 0 {
            return r.clone();
        }
        let factor = (self.q() as usize)
            .checked_pow(levels)
            .expect("perfect-closure level overflow");
        r.inflate(factor)
    }

    fn perf_binop(
        &self,
        a: (&RatFn, u32),
        b: (&RatFn, u32),
        op: impl Fn(&Fq, &RatFn, &RatFn) -> RatFn,
    ) -> Elem {
        let level = a.1.max(b.1);
        let fq = &self.0.fq;
        let r = if a.1 == b.1 {
            op(fq, a.0, b.0)
        } else {
            let x = self.inflate_by(a.0, level - a.1);
            let y = self.inflate_by(b.0, level - b.1);
            op(fq, &x, &y)
        };
        self.perf_normalize(r, level)
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Fin(x), Elem::Fin(y)) => Elem::Fin(self.ext_data().add(x, y)),
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x.add(&self.0.fq, y)),
            (Elem::Perf(x, k), Elem::Perf(y, l)) => {
                self.perf_binop((x, *k), (y, *l), |f, u, v| u.add(f, v))
            }
            _ => panic!("mixed element representations"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Fin(x) => Elem::Fin(self.ext_data().neg(x)),
            Elem::Rat(x) => Elem::Rat(x.neg(&self.0.fq)),
            Elem::Perf(x, k) => Elem::Perf(x.neg(&self.0.fq), *k),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Fin(x), Elem::Fin(y)) => Elem::Fin(self.ext_data().sub(x, y)),
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x.sub(&self.0.fq, y)),
            (Elem::Perf(x, k), Elem::Perf(y, l)) => {
                self.perf_binop((x, *k), (y, *l), |f, u, v| u.sub(f, v))
            }
            _ => panic!("mixed element representations"),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Fin(x), Elem::Fin(y)) => Elem::Fin(self.ext_data().mul(x, y)),
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x.mul(&self.0.fq, y)),
            (Elem::Perf(x, k), Elem::Perf(y, l)) => {
                self.perf_binop((x, *k), (y, *l), |f, u, v| u.mul(f, v))
            }
            _ => panic!("mixed element representations"),
        }
    }

    /// Multiplication by a constant of F_q.
    pub fn scale(&self, a: &Elem, c: u32) -> Elem {
        match a {
            Elem::Fin(x) => Elem::Fin(self.ext_data().scale(x, c)),
            Elem::Rat(x) => Elem::Rat(if c == 0 {
                RatFn::zero()
            } else {
                RatFn { num: upoly::scale(&self.0.fq, &x.num, c), den: x.den.clone() }
            }),
            Elem::Perf(x, k) => {
                if c == 0 {
                    self.zero()
                } else {
                    Elem::Perf(
                        RatFn { num: upoly::scale(&self.0.fq, &x.num, c), den: x.den.clone() },
                        *k,
                    )
                }
            }
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        match a {
            Elem::Fin(x) => self.ext_data().inv(x).map(Elem::Fin).ok_or(Error::DivisionByZero),
            Elem::Rat(x) => x.inv(&self.0.fq).map(Elem::Rat).ok_or(Error::DivisionByZero),
            Elem::Perf(x, k) => {
                x.inv(&self.0.fq).map(|r| Elem::Perf(r, *k)).ok_or(Error::DivisionByZero)
            }
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// a^{q^n}.
    pub fn frob(&self, a: &Elem, n: u64) -> Elem {
        if n == 0 {
            return a.clone();
        }
        match a {
            Elem::Fin(x) => Elem::Fin(self.ext_data().frob(x, n)),
            Elem::Rat(x) => {
                if x.as_constant().is_some() {
                    return a.clone();
                }
                Elem::Rat(self.inflate_by(x, n as u32))
            }
            Elem::Perf(x, k) => {
                if x.as_constant().is_some() {
                    return a.clone();
                }
                if n <= *k as u64 {
                    Elem::Perf(x.clone(), *k - n as u32)
                } else {
                    Elem::Perf(self.inflate_by(x, (n - *k as u64) as u32), 0)
                }
            }
        }
    }

    /// The unique b with b^{q^n} = a.
    pub fn inv_frob(&self, a: &Elem, n: u64) -> Result<Elem> {
        if n == 0 {
            return Ok(a.clone());
        }
        match a {
            Elem::Fin(x) => Ok(Elem::Fin(self.ext_data().inv_frob(x, n))),
            Elem::Rat(x) => {
                if x.as_constant().is_some() {
                    return Ok(a.clone());
                }
                Err(Error::Capability("F_q(T) is not perfect; q-th roots of T do not exist".into()))
            }
            Elem::Perf(x, k) => {
                if x.as_constant().is_some() {
                    return Ok(a.clone());
                }
                Ok(self.perf_normalize(x.clone(), *k + n as u32))
            }
        }
    }

    fn ext_data(&self) -> &ExtData {
        self.0.ext.as_ref().expect("finite field")
    }

    /// Moves an element of F_q(T) into the perfect closure (identity otherwise).
    pub fn lift(&self, a: &Elem) -> Elem {
        match a {
            Elem::Rat(r) => Elem::Perf(r.clone(), 0),
            _ => a.clone(),
        }
    }

    /// Moves a level-0 perfect-closure element back into F_q(T).
    pub fn push_down(&self, a: &Elem) -> Option<Elem> {
        match a {
            Elem::Perf(r, 0) => Some(Elem::Rat(r.clone())),
            Elem::Perf(_, _) => None,
            _ => Some(a.clone()),
        }
    }

    /// Converts an element of a (possibly different) field handle into this
    /// field, lifting F_q(T) into the perfect closure when needed.
    pub fn coerce(&self, a: &Elem) -> Elem {
        match (self.kind(), a) {
            (FieldKind::PerfectClosure, Elem::Rat(r)) => Elem::Perf(r.clone(), 0),
            _ => a.clone(),
        }
    }

    /// δ(a): the image of a ∈ A under T ↦ x.
    pub fn eval_apoly(&self, a: &APoly, x: &Elem) -> Elem {
        let mut acc = self.zero();
        for &c in a.coeffs().iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.from_fq(c));
        }
        acc
    }

    /// Minimal polynomial over F_q of a finite-field element.
    pub fn min_poly(&self, a: &Elem) -> Option<APoly> {
        self.0.ext.as_ref()?;
        let mut conj = vec![a.clone()];
        loop {
            let next = self.frob(conj.last().unwrap(), 1);
            if next == *a {
                break;
            }
            conj.push(next);
        }
        // prod (X - c) with coefficients in the extension
        let mut poly: Vec<Elem> = vec![self.one()];
        for c in &conj {
            let mut next = vec![self.zero(); poly.len() + 1];
            for (i, p) in poly.iter().enumerate() {
                next[i + 1] = self.add(&next[i + 1], p);
                next[i] = self.sub(&next[i], &self.mul(p, c));
            }
            poly = next;
        }
        let coeffs: Vec<u32> = poly
            .iter()
            .map(|p| self.as_fq(p).expect("conjugate product has coefficients in F_q"))
            .collect();
        Some(APoly::new(self.0.fq.clone(), coeffs))
    }

    // ---- rendering ----

    pub fn render(&self, a: &Elem) -> String {
        let fq = &self.0.fq;
        match a {
            Elem::Fin(v) => {
                let mut t = v.clone();
                upoly::trim(&mut t);
                render_poly(fq, &t, "g")
            }
            Elem::Rat(r) => render_frac(fq, r, "T"),
            Elem::Perf(r, 0) => render_frac(fq, r, "T"),
            Elem::Perf(r, k) => render_frac(fq, r, &format!("S{{{k}}}")),
        }
    }

    /// Whether the rendered form needs parentheses as a factor.
    pub fn render_is_compound(&self, a: &Elem) -> bool {
        let s = self.render(a);
        s.contains('+') || s.contains('/')
    }

    pub fn element(&self, e: Elem) -> FieldElement {
        FieldElement { field: self.clone(), e }
    }
}

fn render_frac(fq: &Fq, r: &RatFn, var: &str) -> String {
    let n = render_poly(fq, &r.num, var);
    if r.den == [1] {
        return n;
    }
    let d = render_poly(fq, &r.den, var);
    let wrap = |s: String| if s.contains('+') || s.contains('*') || s.contains('^') { format!("({s})") } else { s };
    format!("{}/{}", wrap(n), wrap(d))
}

/// A field element bundled with its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    e: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.render(&self.e))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.render(&self.e))
    }
}

impl FieldElement {
    pub fn new(field: Field, e: Elem) -> FieldElement {
        FieldElement { field, e }
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn elem(&self) -> &Elem {
        &self.e
    }
    pub fn into_elem(self) -> Elem {
        self.e
    }
    fn same(&self, o: &FieldElement) -> Result<()> {
        if self.field == o.field {
            Ok(())
        } else {
            Err(Error::MixedBackends)
        }
    }
    pub fn try_add(&self, o: &FieldElement) -> Result<FieldElement> {
        self.same(o)?;
        Ok(self.field.element(self.field.add(&self.e, &o.e)))
    }
    pub fn try_sub(&self, o: &FieldElement) -> Result<FieldElement> {
        self.same(o)?;
        Ok(self.field.element(self.field.sub(&self.e, &o.e)))
    }
    pub fn try_mul(&self, o: &FieldElement) -> Result<FieldElement> {
        self.same(o)?;
        Ok(self.field.element(self.field.mul(&self.e, &o.e)))
    }
    pub fn try_div(&self, o: &FieldElement) -> Result<FieldElement> {
        self.same(o)?;
        Ok(self.field.element(self.field.div(&self.e, &o.e)?))
    }
    pub fn inverse(&self) -> Result<FieldElement> {
        Ok(self.field.element(self.field.inv(&self.e)?))
    }
    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.e)
    }
    pub fn frobenius(&self, n: u64) -> FieldElement {
        self.field.element(self.field.frob(&self.e, n))
    }
    pub fn inverse_frobenius(&self) -> Result<FieldElement> {
        Ok(self.field.element(self.field.inv_frob(&self.e, 1)?))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $call:ident) => {
        impl std::ops::$tr for &FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &FieldElement) -> FieldElement {
                self.$call(o).expect("operands from different fields")
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.element(self.field.neg(&self.e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_from_each_backend() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.add(&f3.from_int(2), &f3.from_int(2)), f3.from_int(1));

        let rf = Field::rational_functions(3).unwrap();
        let r = rf.ratfn(vec![2, 0, 1], vec![2, 1]).unwrap();
        assert_eq!(r, rf.ratfn(vec![1, 1], vec![1]).unwrap());
        let t = rf.t().unwrap();
        assert_eq!(rf.frob(&t, 1), rf.ratfn(vec![0, 0, 0, 1], vec![1]).unwrap());
        assert!(matches!(rf.inv_frob(&t, 1), Err(Error::Capability(_))));

        let f4 = Field::extension(2, 2).unwrap();
        let g = f4.generator().unwrap();
        let g1 = f4.add(&g, &f4.one());
        assert_eq!(f4.mul(&g, &g1), f4.one());
        assert_eq!(f4.frob(&g, 1), g1);
    }

    #[test]
    fn perfect_closure_levels() {
        let pc = Field::perfect_closure(3).unwrap();
        let t = pc.t().unwrap();
        let s = pc.inv_frob(&t, 1).unwrap();
        assert_eq!(s, pc.s(1).unwrap());
        assert_eq!(pc.level(&s), 1);
        assert_eq!(pc.frob(&s, 1), t);
        // S^3 normalizes back to level 0
        assert_eq!(pc.pow(&s, 3), t);
        assert_eq!(pc.render(&s), "S{1}");
        let sum = pc.add(&s, &t);
        assert_eq!(pc.render(&sum), "S{1}^3+S{1}");
    }

    #[test]
    fn minimal_polynomials() {
        let f9 = Field::extension(3, 2).unwrap();
        let g = f9.generator().unwrap();
        assert_eq!(f9.min_poly(&g).unwrap().to_string(), "T^2+1");
        assert_eq!(f9.min_poly(&f9.from_int(2)).unwrap().to_string(), "T+1");
    }
}
