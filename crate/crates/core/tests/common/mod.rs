#![allow(dead_code)]

use qvariety::amod::AModule;
use qvariety::coeffs::{Elem, Field, FieldKind};
use qvariety::qvar::{zeros, QVariety};
use qvariety::Result;
use qvariety::ore::OrePoly;
use qvariety::orelat::{OreMatrix, TauSubmodule};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random element of a finite field.
pub fn fin_elem(r: &mut Rng8, k: &Field) -> Elem {
    let m = k.degree().expect("finite field");
    let q = k.q() as u32;
    let c: Vec<u32> = (0..m).map(|_| r.gen_range(0..q)).collect();
    k.from_coords(&c).unwrap()
}

fn small_poly(r: &mut Rng8, q: u32, deg: usize, monic: bool) -> Vec<u32> {
    let mut c: Vec<u32> = (0..=deg).map(|_| r.gen_range(0..q)).collect();
    if monic {
        c[deg] = 1;
    }
    c
}

/// Small random elements of F_q(T) or its perfect closure: constants half of
/// the time, otherwise a fraction of degree ≤ 1 over degree ≤ 1 (at level 0
/// or 1 in the perfect closure).
pub fn func_elem(r: &mut Rng8, k: &Field) -> Elem {
    let q = k.q() as u32;
    if r.gen_bool(0.5) {
        return k.from_fq(r.gen_range(0..q));
    }
    let num = small_poly(r, q, 1, false);
    let den = if r.gen_bool(0.5) { vec![1] } else { small_poly(r, q, 1, true) };
    match k.kind() {
        FieldKind::PerfectClosure => k.perfect_element(num, den, r.gen_range(0..2)).unwrap(),
        _ => k.ratfn(num, den).unwrap(),
    }
}

pub fn elem(r: &mut Rng8, k: &Field) -> Elem {
    if k.is_finite() {
        fin_elem(r, k)
    } else {
        func_elem(r, k)
    }
}

pub fn nonzero_elem(r: &mut Rng8, k: &Field) -> Elem {
    loop {
        let e = elem(r, k);
        if !k.is_zero(&e) {
            return e;
        }
    }
}

/// A random Ore polynomial of exact degree `deg`.
pub fn ore_of_degree(r: &mut Rng8, k: &Field, deg: usize) -> OrePoly {
    let mut c: Vec<Elem> = (0..deg).map(|_| elem(r, k)).collect();
    c.push(nonzero_elem(r, k));
    OrePoly::new(k, c)
}

/// Zero with probability 1/4, otherwise of degree uniform in 0..=max_deg.
pub fn ore_entry(r: &mut Rng8, k: &Field, max_deg: usize) -> OrePoly {
    if r.gen_ratio(1, 4) {
        OrePoly::zero(k)
    } else {
        let d = r.gen_range(0..=max_deg);
        ore_of_degree(r, k, d)
    }
}

pub fn ore_matrix(r: &mut Rng8, k: &Field, rows: usize, cols: usize, max_deg: usize) -> OreMatrix {
    let rows: Vec<Vec<OrePoly>> =
        (0..rows).map(|_| (0..cols).map(|_| ore_entry(r, k, max_deg)).collect()).collect();
    OreMatrix::from_rows(k, cols, rows).unwrap()
}

/// A product of elementary matrices with off-diagonal entries of degree
/// ≤ `max_deg`, together with its inverse.
pub fn unimodular(r: &mut Rng8, k: &Field, n: usize, steps: usize, max_deg: usize) -> (OreMatrix, OreMatrix) {
    let mut w = OreMatrix::identity(k, n);
    let mut w_inv = OreMatrix::identity(k, n);
    if n < 2 {
        let c = nonzero_elem(r, k);
        let d = OreMatrix::diagonal(k, &[OrePoly::constant(k, c.clone())]);
        let di = OreMatrix::diagonal(k, &[OrePoly::constant(k, k.inv(&c).unwrap())]);
        return (d, di);
    }
    for _ in 0..steps {
        let i = r.gen_range(0..n);
        let mut j = r.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let d = r.gen_range(0..=max_deg);
        let p = ore_of_degree(r, k, d);
        let mut e = OreMatrix::identity(k, n);
        e.set(i, j, p.clone());
        let mut e_inv = OreMatrix::identity(k, n);
        e_inv.set(i, j, p.neg());
        w = w.mul(&e);
        w_inv = e_inv.mul(&w_inv);
    }
    (w, w_inv)
}

/// A random submodule of Λ_n with 1..=n+1 generators of degree ≤ max_deg;
/// a quarter of the time one generator is replaced by τ times a generator
/// of degree ≤ max_deg − 1, so that radicals have work to do.
pub fn random_module(r: &mut Rng8, k: &Field, n: usize, max_deg: usize) -> TauSubmodule {
    let g = r.gen_range(1..=n + 1);
    let mut rows: Vec<Vec<OrePoly>> = (0..g).map(|_| (0..n).map(|_| ore_entry(r, k, max_deg)).collect()).collect();
    if max_deg > 0 && r.gen_ratio(1, 4) {
        let row: Vec<OrePoly> = (0..n)
            .map(|_| OrePoly::tau(k, 1).mul(&ore_entry(r, k, max_deg - 1)))
            .collect();
        rows[0] = row;
    }
    TauSubmodule::from_rows(k, n, rows).unwrap()
}

/// A random A-module in finite characteristic with an A-submodule: in
/// suitable coordinates Φ_T is block upper triangular with linear part c·I
/// and H = K^s × 0; both are then moved by a random W.
pub fn finite_configuration(r: &mut Rng8, k: &Field) -> Result<(AModule, QVariety)> {
    let s = finite_setup(r, k)?;
    Ok((s.module, s.sub))
}

pub struct FiniteSetup {
    pub module: AModule,
    /// W(K^s × 0).
    pub sub: QVariety,
    pub w: OreMatrix,
    pub w_inv: OreMatrix,
    pub s: usize,
}

pub fn finite_setup(r: &mut Rng8, k: &Field) -> Result<FiniteSetup> {
    let n = r.gen_range(2..=3);
    let s = r.gen_range(1..n);
    let c = nonzero_elem(r, k);
    let tau = OrePoly::tau(k, 1);
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let row: Vec<OrePoly> = (0..n)
            .map(|j| {
                if i >= s && j < s {
                    return OrePoly::zero(k);
                }
                let twisted = tau.mul(&ore_entry(r, k, 1));
                if i == j {
                    twisted.add(&OrePoly::constant(k, c.clone()))
                } else {
                    twisted
                }
            })
            .collect();
        rows.push(row);
    }
    let phi = OreMatrix::from_rows(k, n, rows)?;
    let (w, w_inv) = unimodular(r, k, n, 2, 1);
    let phi = w.mul(&phi).mul(&w_inv);
    let h_rows: Vec<Vec<OrePoly>> = (s..n).map(|j| w_inv.row(j)).collect();
    let h = zeros(&TauSubmodule::from_rows(k, n, h_rows)?)?;
    let module = AModule::new(&QVariety::full(k, n), &phi, &c)?;
    Ok(FiniteSetup { module, sub: h, w, w_inv, s })
}

/// F_{3^4} = F_3[y]/(h) built from scratch with its own tables, for
/// brute-force evaluation that shares nothing with the library arithmetic.
/// Elements are 0..81, base-3 digits being the coordinates in 1, y, y², y³.
pub struct F81 {
    add: Vec<[u8; 81]>,
    mul: Vec<[u8; 81]>,
    neg: [u8; 81],
    pub frob: [u8; 81],
    /// Image of the library's F_9 generator.
    pub gen9: u8,
}

fn digits(a: u8) -> [u8; 4] {
    [a % 3, (a / 3) % 3, (a / 9) % 3, a / 27]
}

fn undigits(d: &[u8]) -> u8 {
    d[0] + 3 * d[1] + 9 * d[2] + 27 * d[3]
}

fn mul_mod(a: u8, b: u8, h: &[u8; 4]) -> u8 {
    let (x, y) = (digits(a), digits(b));
    let mut prod = [0u8; 7];
    for i in 0..4 {
        for j in 0..4 {
            prod[i + j] = (prod[i + j] + x[i] * y[j]) % 3;
        }
    }
    // y^4 = −(h0 + h1 y + h2 y² + h3 y³)
    for d in (4..7).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for i in 0..4 {
            prod[d - 4 + i] = (prod[d - 4 + i] + 3 * 3 - c * h[i] % 3) % 3;
        }
    }
    undigits(&prod[..4])
}

impl F81 {
    /// `modulus9` is the monic quadratic defining the library's F_9.
    pub fn new(modulus9: &[u32]) -> F81 {
        // first h = y^4 + … for which y has multiplicative order 80
        let mut h = [0u8; 4];
        'search: for code in 0..81u8 {
            h = digits(code);
            let mut x = 1u8;
            for e in 1..=80 {
                x = mul_mod(x, 3, &h);
                if x == 1 {
                    if e == 80 {
                        break 'search;
                    }
                    break;
                }
            }
        }
        let mut add = vec![[0u8; 81]; 81];
        let mut mul = vec![[0u8; 81]; 81];
        let mut neg = [0u8; 81];
        for a in 0..81u8 {
            let da = digits(a);
            neg[a as usize] = undigits(&da.map(|c| (3 - c) % 3));
            for b in 0..81u8 {
                let db = digits(b);
                let s: Vec<u8> = (0..4).map(|i| (da[i] + db[i]) % 3).collect();
                add[a as usize][b as usize] = undigits(&s);
                mul[a as usize][b as usize] = mul_mod(a, b, &h);
            }
        }
        let mut f = F81 { add, mul, neg, frob: [0; 81], gen9: 0 };
        for a in 0..81u8 {
            f.frob[a as usize] = f.mul(f.mul(a, a), a);
        }
        let m: Vec<u8> = modulus9.iter().map(|&c| c as u8).collect();
        f.gen9 = (0..81u8)
            .find(|&x| {
                let v = f.add(f.add(f.mul(x, x), f.mul(m[1], x)), m[0]);
                v == 0
            })
            .expect("F_9 embeds in F_81");
        f
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize][b as usize]
    }
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// c0 + c1·x ∈ F_9 inside F_81.
    pub fn from9(&self, k: &Field, e: &Elem) -> u8 {
        let c = k.coords(e).expect("finite");
        let c0 = c[0] as u8;
        let c1 = c.get(1).copied().unwrap_or(0) as u8;
        self.add(c0, self.mul(c1, self.gen9))
    }

    /// Σ c_i x^{3^i} for an Ore polynomial over F_9.
    pub fn eval(&self, p: &OrePoly, x: u8) -> u8 {
        let k = p.field();
        let mut acc = 0u8;
        let mut y = x;
        for c in p.coeffs() {
            acc = self.add(acc, self.mul(self.from9(k, c), y));
            y = self.frob[y as usize];
        }
        acc
    }

    /// Value table of a row (f_1..f_n): per variable j, x ↦ f_j(x).
    pub fn row_tables(&self, row: &[OrePoly]) -> Vec<[u8; 81]> {
        row.iter()
            .map(|p| {
                let mut t = [0u8; 81];
                for x in 0..81u8 {
                    t[x as usize] = self.eval(p, x);
                }
                t
            })
            .collect()
    }

    pub fn eval_row(&self, tables: &[[u8; 81]], x: &[u8]) -> u8 {
        let mut acc = 0u8;
        for (t, &xi) in tables.iter().zip(x) {
            acc = self.add(acc, t[xi as usize]);
        }
        acc
    }

    pub fn digits(a: u8) -> [u8; 4] {
        digits(a)
    }
}

/// Row echelon basis of F_3-vectors, used to track spans.
#[derive(Default)]
pub struct F3Span {
    rows: Vec<(usize, Vec<u8>)>,
}

impl F3Span {
    /// Reduces v against the basis; returns true if it was independent.
    pub fn insert(&mut self, mut v: Vec<u8>) -> bool {
        self.reduce(&mut v);
        match v.iter().position(|&c| c != 0) {
            None => false,
            Some(p) => {
                let inv = if v[p] == 1 { 1 } else { 2 };
                for c in v.iter_mut() {
                    *c = (*c * inv) % 3;
                }
                self.rows.push((p, v));
                true
            }
        }
    }

    pub fn reduce(&self, v: &mut [u8]) {
        for (p, row) in &self.rows {
            let c = v[*p];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x + 3 * 3 - c * y) % 3;
                }
            }
        }
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&c| c == 0)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Null space of a matrix over F_3 (vectors x with x·A = 0, A given by rows).
pub fn f3_left_kernel(a: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let m = a.len();
    let w = a.first().map_or(0, |r| r.len());
    // augment with identity and eliminate on the first w columns
    let mut rows: Vec<Vec<u8>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..m).map(|j| u8::from(i == j)));
            v
        })
        .collect();
    let mut rank = 0;
    for c in 0..w {
        let Some(p) = (rank..m).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, p);
        let inv = if rows[rank][c] == 1 { 1 } else { 2 };
        for x in rows[rank].iter_mut() {
            *x = (*x * inv) % 3;
        }
        for i in 0..m {
            if i != rank && rows[i][c] != 0 {
                let f = rows[i][c];
                let piv = rows[rank].clone();
                for (x, y) in rows[i].iter_mut().zip(&piv) {
                    *x = (*x + 9 - f * y) % 3;
                }
            }
        }
        rank += 1;
    }
    rows[rank..].iter().map(|r| r[w..].to_vec()).collect()
}
