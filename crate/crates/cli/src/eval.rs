//! Evaluation of expressions into library objects.

use std::collections::HashMap;

use qvariety::amod::AModule;
use qvariety::coeffs::{APoly, Elem, Field, FieldKind};
use qvariety::ore::OrePoly;
use qvariety::orelat::{OreMatrix, TauSubmodule};
use qvariety::qvar::{variety_from_points, zeros, Morphism, QVariety};
use qvariety::Error as CoreError;

use crate::error::CliError;
use crate::parse::{BinOp, Expr, ExprKind};

#[derive(Clone, Debug)]
pub enum Value {
    Poly(OrePoly),
    Matrix(OreMatrix),
    Variety(QVariety),
    Morphism(Morphism),
    Module(AModule),
}

impl Value {
    /// Text that parses back to an equal object.
    pub fn render(&self) -> String {
        match self {
            Value::Poly(p) => p.render(),
            Value::Matrix(m) => m.render(),
            Value::Variety(v) => render_variety(v),
            Value::Morphism(f) => {
                format!("map{{{}, {}, {}}}", render_variety(f.domain()), render_variety(f.codomain()), f.matrix().render())
            }
            Value::Module(m) => format!(
                "amodule{{ q={}; delta={}; PhiT={}; carrier={} }}",
                m.field().q(),
                m.field().render(m.delta()),
                m.phi_t().matrix().render(),
                render_variety(m.carrier())
            ),
        }
    }

    /// Equality of the underlying objects (module equality for varieties).
    pub fn same(&self, other: &Value) -> qvariety::Result<bool> {
        Ok(match (self, other) {
            (Value::Poly(a), Value::Poly(b)) => {
                let k = a.field().join(b.field())?;
                a.coerce(&k)? == b.coerce(&k)?
            }
            (Value::Matrix(a), Value::Matrix(b)) => {
                let k = a.field().join(b.field())?;
                a.coerce(&k)? == b.coerce(&k)?
            }
            (Value::Variety(a), Value::Variety(b)) => a.equals(b)?,
            (Value::Morphism(a), Value::Morphism(b)) => {
                a.domain().equals(b.domain())? && a.codomain().equals(b.codomain())? && a.matrix() == b.matrix()
            }
            (Value::Module(a), Value::Module(b)) => {
                a.carrier().equals(b.carrier())? && a.phi_t().matrix() == b.phi_t().matrix() && a.delta() == b.delta()
            }
            _ => false,
        })
    }
}

/// Z{gens}, with a zero row standing for K^n so that n survives.
fn render_variety(v: &QVariety) -> String {
    let gens = v.annihilator().basis();
    if gens.rows() == 0 {
        return format!("Z{{{}}}", OreMatrix::zero(v.field(), 1, v.n()).render());
    }
    format!("Z{{{}}}", gens.render())
}

/// Bindings made so far, over the declared field.
pub struct Env {
    pub field: Field,
    values: HashMap<String, Value>,
}

type EResult<T> = Result<T, CliError>;

pub(crate) fn core_err(e: &Expr) -> impl Fn(CoreError) -> CliError + '_ {
    move |source| CliError::Core { line: e.line, col: e.col, source }
}

fn domain(e: &Expr, message: impl Into<String>) -> CliError {
    CliError::Domain { line: e.line, col: e.col, message: message.into() }
}

/// Intermediate results of Ore arithmetic.
enum Alg {
    Poly(OrePoly),
    Matrix(OreMatrix),
}

impl Alg {
    fn field(&self) -> &Field {
        match self {
            Alg::Poly(p) => p.field(),
            Alg::Matrix(m) => m.field(),
        }
    }

    fn coerce(self, k: &Field) -> qvariety::Result<Alg> {
        Ok(match self {
            Alg::Poly(p) => Alg::Poly(p.coerce(k)?),
            Alg::Matrix(m) => Alg::Matrix(m.coerce(k)?),
        })
    }

    fn into_matrix(self) -> OreMatrix {
        match self {
            Alg::Poly(p) => OreMatrix::from_rows(&p.field().clone(), 1, vec![vec![p]]).expect("1x1"),
            Alg::Matrix(m) => m,
        }
    }
}

impl Env {
    pub fn new(field: Field) -> Env {
        Env { field, values: HashMap::new() }
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.values.get(name)
    }

    pub fn bind(&mut self, name: &str, v: Value) {
        self.values.insert(name.to_string(), v);
    }

    pub fn eval(&self, e: &Expr) -> EResult<Value> {
        match &e.kind {
            ExprKind::Zeros(_) | ExprKind::Points(_) => Ok(Value::Variety(self.variety(e)?)),
            ExprKind::Map(..) => Ok(Value::Morphism(self.morphism(e)?)),
            ExprKind::AModule(_) => Ok(Value::Module(self.module(e)?)),
            ExprKind::Name(n) => Ok(self.values[n].clone()),
            _ => Ok(match self.alg(e)? {
                Alg::Poly(p) => Value::Poly(p),
                Alg::Matrix(m) => Value::Matrix(m),
            }),
        }
    }

    fn alg(&self, e: &Expr) -> EResult<Alg> {
        let k = &self.field;
        let err = core_err(e);
        Ok(match &e.kind {
            ExprKind::Int(n) => {
                let p = u64::from(k.p());
                Alg::Poly(OrePoly::constant(k, k.from_int((n % p) as i64)))
            }
            ExprKind::Var('t') => Alg::Poly(OrePoly::tau(k, 1)),
            ExprKind::Var('T') => Alg::Poly(OrePoly::constant(k, k.t().map_err(err)?)),
            ExprKind::Var('g') => {
                if !matches!(k.kind(), FieldKind::ExtField { .. }) {
                    return Err(err(CoreError::Capability(format!("g needs an extension field, not {}", k.name()))));
                }
                Alg::Poly(OrePoly::constant(k, k.generator().map_err(err)?))
            }
            ExprKind::Var(_) => {
                if k.fq().l() == 1 {
                    return Err(err(CoreError::Capability(format!("w needs a non-prime q, not q={}", k.q()))));
                }
                Alg::Poly(OrePoly::constant(k, k.from_fq(k.fq().generator())))
            }
            ExprKind::Root(level) => {
                let pc = k.perfect_hull();
                Alg::Poly(OrePoly::constant(&pc, pc.s(*level).map_err(err)?))
            }
            ExprKind::Name(n) => match &self.values[n] {
                Value::Poly(p) => Alg::Poly(p.clone()),
                Value::Matrix(m) => Alg::Matrix(m.clone()),
                _ => unreachable!("checked by the parser"),
            },
            ExprKind::Neg(x) => match self.alg(x)? {
                Alg::Poly(p) => Alg::Poly(p.neg()),
                Alg::Matrix(m) => Alg::Matrix(OreMatrix::zero(m.field(), m.rows(), m.cols()).sub(&m)),
            },
            ExprKind::Pow(x, n) => match self.alg(x)? {
                Alg::Poly(p) => {
                    if p.degree() == Some(0) {
                        // field elements: power in K rather than repeated composition
                        let c = p.field().pow(&p.coeff(0), *n);
                        Alg::Poly(OrePoly::constant(p.field(), c))
                    } else {
                        let mut acc = OrePoly::one(p.field());
                        for _ in 0..*n {
                            acc = acc.mul(&p);
                        }
                        Alg::Poly(acc)
                    }
                }
                Alg::Matrix(m) => {
                    if m.rows() != m.cols() {
                        return Err(domain(e, "only square matrices have powers"));
                    }
                    let mut acc = OreMatrix::identity(m.field(), m.rows());
                    for _ in 0..*n {
                        acc = acc.mul(&m);
                    }
                    Alg::Matrix(acc)
                }
            },
            ExprKind::Bin(op, a, b) => {
                let (a, b) = (self.alg(a)?, self.alg(b)?);
                let k = a.field().join(b.field()).map_err(&err)?;
                let (a, b) = (a.coerce(&k).map_err(&err)?, b.coerce(&k).map_err(&err)?);
                match (op, a, b) {
                    (BinOp::Add, Alg::Poly(a), Alg::Poly(b)) => Alg::Poly(a.add(&b)),
                    (BinOp::Sub, Alg::Poly(a), Alg::Poly(b)) => Alg::Poly(a.sub(&b)),
                    (BinOp::Mul, Alg::Poly(a), Alg::Poly(b)) => Alg::Poly(a.mul(&b)),
                    (BinOp::Div, Alg::Poly(a), Alg::Poly(b)) => {
                        if a.degree().unwrap_or(0) > 0 || b.degree().unwrap_or(0) > 0 {
                            return Err(domain(e, "only field elements can be divided"));
                        }
                        let q = k.div(&a.coeff(0), &b.coeff(0)).map_err(&err)?;
                        Alg::Poly(OrePoly::constant(&k, q))
                    }
                    (BinOp::Mul, Alg::Poly(a), Alg::Matrix(m)) => Alg::Matrix(m.left_scale(&a)),
                    (op, Alg::Matrix(a), Alg::Matrix(b)) => {
                        let same = a.rows() == b.rows() && a.cols() == b.cols();
                        match op {
                            BinOp::Add | BinOp::Sub if !same => {
                                return Err(domain(e, "matrices of different shapes"));
                            }
                            BinOp::Add => Alg::Matrix(a.add(&b)),
                            BinOp::Sub => Alg::Matrix(a.sub(&b)),
                            _ => Alg::Matrix(a.try_mul(&b).map_err(&err)?),
                        }
                    }
                    _ => unreachable!("checked by the parser"),
                }
            }
            ExprKind::Matrix(rows) => {
                let mut cells = Vec::with_capacity(rows.len());
                let mut k = self.field.clone();
                for row in rows {
                    let mut out = Vec::with_capacity(row.len());
                    for x in row {
                        let Alg::Poly(p) = self.alg(x)? else { unreachable!("checked by the parser") };
                        k = k.join(p.field()).map_err(core_err(x))?;
                        out.push(p);
                    }
                    cells.push(out);
                }
                let cells = cells
                    .into_iter()
                    .map(|r| r.into_iter().map(|p| p.coerce(&k)).collect::<qvariety::Result<Vec<_>>>())
                    .collect::<qvariety::Result<Vec<_>>>()
                    .map_err(&err)?;
                let width = cells[0].len();
                Alg::Matrix(OreMatrix::from_rows(&k, width, cells).map_err(&err)?)
            }
            _ => unreachable!("checked by the parser"),
        })
    }

    pub fn poly(&self, e: &Expr) -> EResult<OrePoly> {
        match self.alg(e)? {
            Alg::Poly(p) => Ok(p),
            Alg::Matrix(_) => unreachable!("checked by the parser"),
        }
    }

    pub fn matrix(&self, e: &Expr) -> EResult<OreMatrix> {
        Ok(self.alg(e)?.into_matrix())
    }

    /// A field element: an Ore polynomial of degree ≤ 0.
    pub fn element(&self, e: &Expr) -> EResult<(Field, Elem)> {
        let p = self.poly(e)?;
        if p.degree().unwrap_or(0) > 0 {
            return Err(domain(e, format!("expected a field element, found {}", p.render())));
        }
        Ok((p.field().clone(), p.coeff(0)))
    }

    pub fn variety(&self, e: &Expr) -> EResult<QVariety> {
        let err = core_err(e);
        match &e.kind {
            ExprKind::Name(n) => match &self.values[n] {
                Value::Variety(v) => Ok(v.clone()),
                _ => unreachable!("checked by the parser"),
            },
            ExprKind::Zeros(m) => {
                let m = self.matrix(m)?;
                zeros(&TauSubmodule::new(m)).map_err(err)
            }
            ExprKind::Points(ts) => {
                let k = &self.field;
                let mut pts = Vec::with_capacity(ts.len());
                for t in ts {
                    let mut pt = Vec::with_capacity(t.len());
                    for x in t {
                        pt.push(self.element(x)?.1);
                    }
                    pts.push(pt);
                }
                variety_from_points(k, ts[0].len(), &pts).map_err(err)
            }
            _ => unreachable!("checked by the parser"),
        }
    }

    pub fn morphism(&self, e: &Expr) -> EResult<Morphism> {
        match &e.kind {
            ExprKind::Name(n) => match &self.values[n] {
                Value::Morphism(f) => Ok(f.clone()),
                _ => unreachable!("checked by the parser"),
            },
            ExprKind::Map(d, c, m) => {
                let (d, c, m) = (self.variety(d)?, self.variety(c)?, self.matrix(m)?);
                Morphism::new(&d, &c, &m).map_err(core_err(e))
            }
            _ => unreachable!("checked by the parser"),
        }
    }

    pub fn module(&self, e: &Expr) -> EResult<AModule> {
        match &e.kind {
            ExprKind::Name(n) => match &self.values[n] {
                Value::Module(m) => Ok(m.clone()),
                _ => unreachable!("checked by the parser"),
            },
            ExprKind::AModule(fields) => {
                let get = |k: &str| fields.iter().find(|(n, _)| n == k).map(|(_, x)| x);
                let (kd, delta) = self.element(get("delta").expect("checked"))?;
                let phi = self.matrix(get("PhiT").expect("checked"))?;
                let carrier = match get("carrier") {
                    Some(c) => self.variety(c)?,
                    None => QVariety::full(phi.field(), phi.rows()),
                };
                let k = kd.join(phi.field()).and_then(|k| k.join(carrier.field())).map_err(core_err(e))?;
                let delta = k.coerce(&delta);
                AModule::new(&carrier, &phi, &delta).map_err(core_err(e))
            }
            _ => unreachable!("checked by the parser"),
        }
    }

    pub fn apoly(&self, e: &Expr) -> APoly {
        let fq = self.field.fq().clone();
        match &e.kind {
            ExprKind::Int(n) => APoly::constant(fq.clone(), fq.from_int((n % u64::from(fq.p())) as i64)),
            ExprKind::Var('T') => APoly::t(fq),
            ExprKind::Var(_) => APoly::constant(fq.clone(), fq.generator()),
            ExprKind::Neg(x) => self.apoly(x).neg(),
            ExprKind::Pow(x, n) => self.apoly(x).pow(*n as u32),
            ExprKind::Bin(BinOp::Add, a, b) => self.apoly(a).add(&self.apoly(b)),
            ExprKind::Bin(BinOp::Sub, a, b) => self.apoly(a).sub(&self.apoly(b)),
            ExprKind::Bin(_, a, b) => self.apoly(a).mul(&self.apoly(b)),
            _ => unreachable!("checked by the parser"),
        }
    }
}
