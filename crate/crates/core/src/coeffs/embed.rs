//! Embeddings F_{q^a} → F_{q^b} for a | b.
//!
//! The generator of the source is sent to the smallest root (in coordinate
//! order) of the source modulus inside the target. Roots are found by
//! splitting with the trace map Tr(βX) = Σ_{i<b} (βX)^{q^i}.

use super::ext::ExtData;
use super::field::{Elem, Field};
use crate::error::{Error, Result};
use crate::linalg;

type EPoly = Vec<Vec<u32>>;

fn etrim(v: &mut EPoly) {
    while v.last().is_some_and(|c| ExtData::is_zero(c)) {
        v.pop();
    }
}

fn esub(e: &ExtData, a: &EPoly, b: &EPoly) -> EPoly {
    let n = a.len().max(b.len());
    let z = e.zero();
    let mut out: EPoly = (0..n)
        .map(|i| e.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    etrim(&mut out);
    out
}

fn erem(e: &ExtData, a: &EPoly, m: &EPoly) -> EPoly {
    let dm = m.len() - 1;
    let mut r = a.clone();
    etrim(&mut r);
    if r.len() <= dm {
        return r;
    }
    let inv = e.inv(&m[dm]).expect("nonzero leading coefficient");
    for k in (dm..r.len()).rev() {
        if ExtData::is_zero(&r[k]) {
            continue;
        }
        let c = e.mul(&r[k], &inv);
        for t in 0..=dm {
            let idx = k - dm + t;
            r[idx] = e.sub(&r[idx], &e.mul(&c, &m[t]));
        }
    }
    r.truncate(dm);
    etrim(&mut r);
    r
}

fn emonic(e: &ExtData, a: &EPoly) -> EPoly {
    match a.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = e.inv(lc).expect("nonzero");
            a.iter().map(|c| e.mul(c, &inv)).collect()
        }
    }
}

fn egcd(e: &ExtData, a: &EPoly, b: &EPoly) -> EPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    etrim(&mut x);
    etrim(&mut y);
    while !y.is_empty() {
        let r = erem(e, &x, &y);
        x = y;
        y = r;
    }
    emonic(e, &x)
}

fn ediv_exact(e: &ExtData, a: &EPoly, b: &EPoly) -> EPoly {
    let db = b.len() - 1;
    let inv = e.inv(&b[db]).expect("nonzero");
    let mut r = a.clone();
    let mut q = vec![e.zero(); a.len() - db];
    for k in (db..r.len()).rev() {
        if ExtData::is_zero(&r[k]) {
            continue;
        }
        let c = e.mul(&r[k], &inv);
        for t in 0..=db {
            let idx = k - db + t;
            r[idx] = e.sub(&r[idx], &e.mul(&c, &b[t]));
        }
        q[k - db] = c;
    }
    etrim(&mut q);
    q
}

/// h^q mod m.
fn efrob_mod(e: &ExtData, h: &EPoly, m: &EPoly) -> EPoly {
    let q = e.fq.q() as usize;
    if h.is_empty() {
        return Vec::new();
    }
    let mut out = vec![e.zero(); (h.len() - 1) * q + 1];
    for (i, c) in h.iter().enumerate() {
        out[i * q] = e.frob(c, 1);
    }
    erem(e, &out, m)
}

/// All roots in the target field of a polynomial over F_q that splits there
/// into distinct linear factors, sorted by coordinates.
fn split_roots(e: &ExtData, f: &[u32]) -> Vec<Vec<u32>> {
    let lift = |c: u32| {
        let mut v = e.zero();
        v[0] = c;
        v
    };
    let poly: EPoly = f.iter().map(|&c| lift(c)).collect();
    let mut pending = vec![emonic(e, &poly)];
    let mut linear = Vec::new();
    let b = e.m;
    for beta_idx in 0..b {
        if pending.is_empty() {
            break;
        }
        let mut beta = e.zero();
        beta[beta_idx] = 1;
        let mut next = Vec::new();
        for h in pending {
            if h.len() == 2 {
                linear.push(h);
                continue;
            }
            // trace of βX modulo h
            let mut cur = erem(e, &vec![e.zero(), beta.clone()], &h);
            let mut tr = cur.clone();
            for _ in 1..b {
                cur = efrob_mod(e, &cur, &h);
                let n = tr.len().max(cur.len());
                let z = e.zero();
                tr = (0..n)
                    .map(|i| e.add(tr.get(i).unwrap_or(&z), cur.get(i).unwrap_or(&z)))
                    .collect();
                etrim(&mut tr);
            }
            let mut rest = h.clone();
            let mut parts = Vec::new();
            for c in 0..e.fq.q() {
                if rest.len() <= 1 {
                    break;
                }
                let shifted = esub(e, &tr, &vec![lift(c)]);
                let g = egcd(e, &rest, &shifted);
                if g.len() > 1 {
                    rest = ediv_exact(e, &rest, &g);
                    parts.push(g);
                }
            }
            if rest.len() > 1 {
                parts.push(emonic(e, &rest));
            }
            for g in parts {
                if g.len() == 2 {
                    linear.push(g);
                } else {
                    next.push(g);
                }
            }
        }
        pending = next;
    }
    assert!(pending.is_empty(), "polynomial does not split into distinct linear factors");
    let mut roots: Vec<Vec<u32>> = linear.iter().map(|g| e.neg(&g[0])).collect();
    roots.sort();
    roots
}

/// An F_q-algebra embedding between finite fields.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    /// images[j] = image of x^j, j < deg source.
    images: Vec<Vec<u32>>,
}

impl Embedding {
    pub fn new(source: &Field, target: &Field) -> Result<Embedding> {
        let (Some(se), Some(te)) = (source.ext(), target.ext()) else {
            return Err(Error::Capability("embeddings exist only between finite fields".into()));
        };
        if *source.fq() != *target.fq() {
            return Err(Error::MixedBackends);
        }
        if te.m % se.m != 0 {
            return Err(Error::Domain(format!(
                "F_q^{} does not embed in F_q^{}",
                se.m, te.m
            )));
        }
        let gen_image = if se.m == 1 {
            te.one()
        } else if se.modulus == te.modulus {
            te.generator()
        } else {
            split_roots(te, &se.modulus).remove(0)
        };
        let mut images = Vec::with_capacity(se.m);
        let mut cur = te.one();
        for _ in 0..se.m {
            images.push(cur.clone());
            cur = te.mul(&cur, &gen_image);
        }
        Ok(Embedding { source: source.clone(), target: target.clone(), images })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }
    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn map(&self, a: &Elem) -> Elem {
        let Elem::Fin(v) = a else { panic!("finite-field element expected") };
        let te = self.target.ext().expect("finite");
        let mut out = te.zero();
        for (c, img) in v.iter().zip(&self.images) {
            if *c != 0 {
                out = te.add(&out, &te.scale(img, *c));
            }
        }
        Elem::Fin(out)
    }

    /// The source element mapping to `a`, if any.
    pub fn preimage(&self, a: &Elem) -> Option<Elem> {
        let Elem::Fin(v) = a else { return None };
        let fq = self.target.fq();
        let b = v.len();
        let rows: Vec<Vec<u32>> = (0..b)
            .map(|i| self.images.iter().map(|img| img[i]).collect())
            .collect();
        linalg::fq_solve(fq, &rows, v).map(Elem::Fin)
    }
}

/// The F_q-coordinates of the roots in `target` of a polynomial over F_q
/// with distinct roots that splits completely there.
pub fn roots_in(target: &Field, f: &[u32]) -> Result<Vec<Elem>> {
    let e = target
        .ext()
        .ok_or_else(|| Error::Capability("roots are enumerated only in finite fields".into()))?;
    Ok(split_roots(e, f).into_iter().map(Elem::Fin).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embeds_f9_into_f81() {
        let f9 = Field::extension(3, 2).unwrap();
        let f81 = Field::extension(3, 4).unwrap();
        let emb = Embedding::new(&f9, &f81).unwrap();
        let g = f9.generator().unwrap();
        let img = emb.map(&g);
        // x^2 + 1 = 0 in the image
        assert!(f81.is_zero(&f81.add(&f81.mul(&img, &img), &f81.one())));
        // ring morphism on all pairs
        let all: Vec<Elem> = (0..9u32)
            .map(|c| f9.from_coords(&[c % 3, c / 3]).unwrap())
            .collect();
        for a in &all {
            for b in &all {
                assert_eq!(emb.map(&f9.mul(a, b)), f81.mul(&emb.map(a), &emb.map(b)));
                assert_eq!(emb.map(&f9.add(a, b)), f81.add(&emb.map(a), &emb.map(b)));
            }
            assert_eq!(emb.preimage(&emb.map(a)).as_ref(), Some(a));
        }
        assert!(emb.preimage(&f81.generator().unwrap()).is_none());
    }

    #[test]
    fn roots_of_a_quadratic_in_f4() {
        let f4 = Field::extension(2, 2).unwrap();
        let roots = roots_in(&f4, &[1, 1, 1]).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            let v = f4.add(&f4.add(&f4.mul(r, r), r), &f4.one());
            assert!(f4.is_zero(&v));
        }
    }
}
