//! Reports and their JSON / text renderings.

use std::time::Duration;

use qvariety::coeffs::{APoly, Elem, Field};
use qvariety::orelat::OreMatrix;
use qvariety::qvar::QVariety;
use serde_json::{json, Map, Value as Json};

use crate::error::CliError;

pub const SCHEMA: u64 = 1;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub lifted_to_perfect_closure: bool,
    pub a_in_ker_delta: bool,
    pub bad_prime_suspected: bool,
}

#[derive(Clone, Debug)]
pub struct Report {
    /// The command as written.
    pub command: String,
    pub result: Map<String, Json>,
    pub flags: Flags,
    pub elapsed: Duration,
}

impl Report {
    pub fn to_json(&self, timing: bool) -> Json {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("result".into(), Json::Object(self.result.clone()));
        m.insert(
            "flags".into(),
            json!({
                "lifted_to_perfect_closure": self.flags.lifted_to_perfect_closure,
                "a_in_ker_delta": self.flags.a_in_ker_delta,
                "bad_prime_suspected": self.flags.bad_prime_suspected,
            }),
        );
        if timing {
            m.insert("seconds".into(), json!(self.elapsed.as_secs_f64()));
        }
        Json::Object(m)
    }

    /// One `key: value` line per result entry, keys sorted.
    pub fn to_text(&self, timing: bool) -> String {
        let mut s = format!("> {}\n", self.command);
        for (k, v) in &self.result {
            s.push_str(&format!("  {k:<24} {}\n", compact(v)));
        }
        let set: Vec<&str> = [
            ("lifted_to_perfect_closure", self.flags.lifted_to_perfect_closure),
            ("a_in_ker_delta", self.flags.a_in_ker_delta),
            ("bad_prime_suspected", self.flags.bad_prime_suspected),
        ]
        .iter()
        .filter(|(_, on)| *on)
        .map(|(n, _)| *n)
        .collect();
        if !set.is_empty() {
            s.push_str(&format!("  {:<24} {}\n", "flags", set.join(" ")));
        }
        if timing {
            s.push_str(&format!("  {:<24} {:.3}\n", "seconds", self.elapsed.as_secs_f64()));
        }
        s
    }
}

fn compact(v: &Json) -> String {
    match v {
        Json::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// The outcome of one script: its reports and the error that stopped it.
#[derive(Debug)]
pub struct Outcome {
    pub reports: Vec<Report>,
    pub error: Option<CliError>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, CliError::exit_code)
    }

    pub fn to_json(&self, timing: bool) -> Json {
        let mut m = Map::new();
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("reports".into(), Json::Array(self.reports.iter().map(|r| r.to_json(timing)).collect()));
        if let Some(e) = &self.error {
            m.insert("error".into(), error_json(e));
        }
        Json::Object(m)
    }

    pub fn to_text(&self, timing: bool) -> String {
        let mut s: String = self.reports.iter().map(|r| r.to_text(timing)).collect();
        if let Some(e) = &self.error {
            s.push_str(&format!("error ({}): {e}\n", e.kind()));
        }
        s
    }
}

pub fn error_json(e: &CliError) -> Json {
    let mut m = Map::new();
    m.insert("kind".into(), json!(e.kind()));
    m.insert("exit_code".into(), json!(e.exit_code()));
    m.insert("message".into(), json!(e.to_string()));
    if let CliError::Parse(p) = e {
        m.insert("line".into(), json!(p.line));
        m.insert("column".into(), json!(p.col));
        m.insert("expected".into(), json!(p.expected));
    }
    Json::Object(m)
}

// ---- payload helpers ----

pub fn elem(k: &Field, a: &Elem) -> Json {
    json!(k.render(a))
}

pub fn vector(k: &Field, v: &[Elem]) -> Json {
    Json::Array(v.iter().map(|x| elem(k, x)).collect())
}

pub fn matrix(m: &OreMatrix) -> Json {
    Json::Array(m.to_rows().iter().map(|r| Json::Array(r.iter().map(|p| json!(p.render())).collect())).collect())
}

pub fn apolys(v: &[APoly]) -> Json {
    Json::Array(v.iter().map(|p| json!(p.to_string())).collect())
}

pub fn count(c: u128) -> Json {
    match u64::try_from(c) {
        Ok(c) => json!(c),
        Err(_) => json!(c.to_string()),
    }
}

pub fn variety(v: &QVariety) -> Json {
    json!({
        "field": v.field().name(),
        "n": v.n(),
        "dim": v.dimension(),
        "finite_part_dim": v.finite_part_dim(),
        "irreducible": v.is_irreducible(),
        "seps": v.seps().iter().map(|p| p.render()).collect::<Vec<_>>(),
        "lifted": v.lifted(),
        "annihilator": matrix(&v.annihilator().basis()),
    })
}
