//! Command dispatch.

use std::time::Instant;

use qvariety::orelat::{diagonalize, TauSubmodule};
use qvariety::qvar::{quotient, QVariety};
use serde_json::{json, Map, Value as Json};

use crate::error::CliError;
use crate::eval::{core_err, Env, Value};
use crate::parse::{Command, CommandKind, Expr, ExprKind, Item, Script};
use crate::report::{self, Flags, Outcome, Report};

/// Runs the commands of a script in order, stopping at the first error.
pub fn run(script: &Script) -> Outcome {
    let mut reports = Vec::new();
    let Some(spec) = &script.field else {
        return Outcome { reports, error: None };
    };
    let field = match spec.build() {
        Ok(k) => k,
        Err(source) => return Outcome { reports, error: Some(CliError::Core { line: 1, col: 1, source }) },
    };
    let mut env = Env::new(field);
    for item in &script.items {
        let step = match item {
            Item::Let { name, value, .. } => env.eval(value).map(|v| env.bind(name, v)),
            Item::Command(c) => {
                let start = Instant::now();
                execute(&env, c).map(|(result, flags)| {
                    reports.push(Report { command: c.echo.clone(), result, flags, elapsed: start.elapsed() });
                })
            }
        };
        if let Err(e) = step {
            return Outcome { reports, error: Some(e) };
        }
    }
    Outcome { reports, error: None }
}

type Payload = (Map<String, Json>, Flags);

fn object(v: Json) -> Map<String, Json> {
    match v {
        Json::Object(m) => m,
        _ => unreachable!("payloads are objects"),
    }
}

fn int_arg(c: &Command, key: &str) -> Option<u64> {
    c.key(key).map(|e| match e.kind {
        ExprKind::Int(n) => n,
        _ => unreachable!("checked by the parser"),
    })
}

fn variety_payload(key: &str, v: &QVariety) -> Payload {
    let flags = Flags { lifted_to_perfect_closure: v.lifted(), ..Flags::default() };
    let mut m = Map::new();
    m.insert(key.into(), report::variety(v));
    (m, flags)
}

fn execute(env: &Env, c: &Command) -> Result<Payload, CliError> {
    let arg = |i: usize| -> &Expr { &c.args[i] };
    let module = || env.module(c.module.as_ref().expect("module command"));
    let here = Expr { kind: ExprKind::Int(0), line: c.line, col: c.col };
    let err = core_err(&here);
    Ok(match c.kind {
        CommandKind::Diag => {
            let l = env.matrix(arg(0))?;
            let f = diagonalize(&l).map_err(&err)?;
            let flags = Flags { lifted_to_perfect_closure: f.lifted, ..Flags::default() };
            let diagonal: Vec<String> = f.diagonal().iter().map(|p| p.render()).collect();
            let m = json!({
                "r": f.r,
                "diagonal": diagonal,
                "d": report::matrix(&f.d),
                "u": report::matrix(&f.u),
                "v": report::matrix(&f.v),
                "u_inv": report::matrix(&f.u_inv),
                "v_inv": report::matrix(&f.v_inv),
            });
            (object(m), flags)
        }
        CommandKind::Hermite => {
            let l = env.matrix(arg(0))?;
            let s = TauSubmodule::new(l);
            let h = s.hermite();
            let pivots: Vec<[usize; 2]> = h.pivots.iter().map(|&(i, j)| [i, j]).collect();
            let m = json!({
                "rank": h.rank(),
                "h": report::matrix(&h.h),
                "t": report::matrix(&h.t),
                "pivots": pivots,
            });
            (object(m), Flags::default())
        }
        CommandKind::Radical => {
            let s = TauSubmodule::new(env.matrix(arg(0))?);
            let d = s.radical_data().map_err(&err)?;
            let rad = d.module_from(&s).map_err(&err)?;
            let flags = Flags { lifted_to_perfect_closure: d.lifted, ..Flags::default() };
            let m = json!({
                "rank": rad.rank(),
                "generators": report::matrix(&rad.basis()),
                "was_radical": d.was_radical,
            });
            (object(m), flags)
        }
        CommandKind::Zeros => {
            let s = TauSubmodule::new(env.matrix(arg(0))?);
            let v = qvariety::qvar::zeros(&s).map_err(&err)?;
            variety_payload("variety", &v)
        }
        CommandKind::Annihilator => {
            let v = env.variety(arg(0))?;
            let ann = v.annihilator();
            let m = json!({ "rank": ann.rank(), "generators": report::matrix(&ann.basis()) });
            (object(m), Flags { lifted_to_perfect_closure: v.lifted(), ..Flags::default() })
        }
        CommandKind::Dim => {
            let v = env.variety(arg(0))?;
            let m = json!({
                "n": v.n(),
                "dim": v.dimension(),
                "finite_part_dim": v.finite_part_dim(),
                "irreducible": v.is_irreducible(),
                "finite": v.is_finite(),
            });
            (object(m), Flags { lifted_to_perfect_closure: v.lifted(), ..Flags::default() })
        }
        CommandKind::Tangent => {
            let v = env.variety(arg(0))?;
            let t = v.tangent_space();
            let k = v.field();
            let basis: Vec<Json> = t.basis.iter().map(|b| report::vector(k, b)).collect();
            let m = json!({ "n": t.n, "dim": t.dim(), "basis": basis });
            (object(m), Flags::default())
        }
        CommandKind::Image => {
            let f = env.morphism(arg(0))?;
            variety_payload("image", &f.image().map_err(&err)?)
        }
        CommandKind::Kernel => {
            let f = env.morphism(arg(0))?;
            variety_payload("kernel", &f.kernel().map_err(&err)?)
        }
        CommandKind::Preimage => {
            let f = env.morphism(arg(0))?;
            let g = env.variety(arg(1))?;
            variety_payload("preimage", &f.preimage(&g).map_err(&err)?)
        }
        CommandKind::Sum => {
            let (a, b) = (env.variety(arg(0))?, env.variety(arg(1))?);
            variety_payload("sum", &a.sum(&b).map_err(&err)?)
        }
        CommandKind::Intersect => {
            let (a, b) = (env.variety(arg(0))?, env.variety(arg(1))?);
            variety_payload("intersection", &a.intersection(&b).map_err(&err)?)
        }
        CommandKind::Quotient => {
            let (f, h) = (env.variety(arg(0))?, env.variety(arg(1))?);
            let (q, pi) = quotient(&f, &h).map_err(&err)?;
            let (mut m, flags) = variety_payload("quotient", &q);
            m.insert("projection".into(), report::matrix(pi.matrix()));
            (m, flags)
        }
        CommandKind::Separable => separable(env, arg(0))?,
        CommandKind::Torsion => {
            let m = module()?;
            let a = env.apoly(c.key("a").expect("required"));
            let rank = int_arg(c, "rank").map(|r| r as usize);
            let rep = m.torsion(&a, rank).map_err(&err)?;
            let flags = Flags {
                lifted_to_perfect_closure: rep.torsion_variety.lifted(),
                a_in_ker_delta: rep.a_in_ker_delta,
                bad_prime_suspected: rep.bad_prime_suspected,
            };
            let out = json!({
                "a": rep.a.to_string(),
                "dim_fq": rep.dim_fq,
                "expected": rep.expected,
                "module_quotient_dim": rep.module_quotient_dim,
                "infinite": rep.infinite,
                "torsion_variety": report::variety(&rep.torsion_variety),
            });
            (object(out), flags)
        }
        CommandKind::TorsionPoints => {
            let m = module()?;
            let a = env.apoly(c.key("a").expect("required"));
            let ext = int_arg(c, "ext").unwrap_or(12) as usize;
            let tp = m.torsion_points(&a, ext).map_err(&err)?;
            let k = &tp.field;
            let basis: Vec<Json> = tp.basis.iter().map(|b| report::vector(k, b)).collect();
            let out = json!({
                "a": tp.a.to_string(),
                "field": k.name(),
                "dim_fq": tp.dim_fq(),
                "count": report::count(tp.count()),
                "basis": basis,
                "t_action": tp.t_action,
                "elementary_divisors": report::apolys(&tp.elementary_divisors),
            });
            (object(out), Flags::default())
        }
        CommandKind::Rank => {
            let m = module()?;
            let budget = int_arg(c, "budget").map(|b| b as usize);
            let rep = m.rank(budget).map_err(&err)?;
            let table: Vec<Json> = rep
                .estimates
                .iter()
                .map(|e| json!({ "prime": e.prime.to_string(), "dim_fq": e.dim_fq, "estimate": e.estimate }))
                .collect();
            let out = json!({
                "rank": rep.rank,
                "primes": table,
                "bad_primes": report::apolys(&rep.bad_primes),
                "skipped": report::apolys(&rep.skipped),
                "method": rep.method,
            });
            let flags = Flags { bad_prime_suspected: !rep.bad_primes.is_empty(), ..Flags::default() };
            (object(out), flags)
        }
        CommandKind::Tate => {
            let m = module()?;
            let pi = env.apoly(c.key("pi").expect("required"));
            let n = int_arg(c, "n").expect("required") as usize;
            let rep = m.tate_check(&pi, n).map_err(&err)?;
            let out = json!({ "pi": rep.pi.to_string(), "r": rep.r, "dims": rep.dims, "passed": rep.passed });
            (object(out), Flags { bad_prime_suspected: !rep.passed, ..Flags::default() })
        }
        CommandKind::Jacobian => {
            let m = module()?;
            let h = env.variety(c.key("H").expect("required"))?;
            let cap = int_arg(c, "cap").unwrap_or(64) as usize;
            let (j, steps) = m.jacobian(&h, cap).map_err(&err)?;
            let (mut out, flags) = variety_payload("jacobian", &j);
            out.insert("steps".into(), json!(steps));
            (out, flags)
        }
        CommandKind::Gmax => {
            let m = module()?;
            let h = env.variety(c.key("H").expect("required"))?;
            let g = m.g_max(&h).map_err(&err)?;
            let (mut out, flags) = variety_payload("g_max", &g);
            out.insert("sufficiently_generic".into(), json!(g.dimension() == 0));
            (out, flags)
        }
    })
}

fn separable(env: &Env, e: &Expr) -> Result<Payload, CliError> {
    let err = core_err(e);
    match env.eval(e)? {
        Value::Morphism(f) => {
            let sep = f.is_separable().map_err(err)?;
            Ok((object(json!({ "separable": sep })), Flags::default()))
        }
        Value::Poly(p) => {
            let mut m = object(json!({ "separable": p.is_separable() }));
            // the decomposition τ^N·Q needs q-th roots of the coefficients
            match p.separable_part() {
                Ok((n, q)) => {
                    m.insert("inseparable_degree".into(), json!(n));
                    m.insert("separable_part".into(), json!(q.render()));
                }
                Err(qvariety::Error::Capability(_)) => {
                    m.insert("inseparable_degree".into(), Json::Null);
                    m.insert("separable_part".into(), Json::Null);
                }
                Err(e) => return Err(err(e)),
            }
            Ok((m, Flags::default()))
        }
        _ => unreachable!("checked by the parser"),
    }
}
