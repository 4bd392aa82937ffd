//! Script front end: a small declaration language for fields, Ore
//! polynomials, matrices, varieties, morphisms and A-modules, with commands
//! that report in deterministic JSON or plain text.
//!
//! ```
//! let script = qvar_cli::parse("field q=3 func; let P = T*t^0 + t^1; diag [[P]]").unwrap();
//! assert_eq!(script.items.len(), 2);
//!
//! let out = qvar_cli::run_source("field q=3 func; let P = T*t^0 + t^1; diag [[P]]");
//! assert_eq!(out.exit_code(), 0);
//! assert_eq!(out.reports[0].result["r"], 1);
//! ```

pub mod error;
pub mod eval;
pub mod lex;
pub mod parse;
pub mod report;
pub mod run;

pub use error::{CliError, ErrorClass, ParseError};
pub use eval::{Env, Value};
pub use parse::{parse, Script};
pub use report::{Outcome, Report, SCHEMA};
pub use run::run;

/// Parses and runs a script; a parse failure becomes an outcome with no reports.
pub fn run_source(src: &str) -> Outcome {
    match parse(src) {
        Ok(s) => run(&s),
        Err(e) => Outcome { reports: Vec::new(), error: Some(CliError::Parse(e)) },
    }
}

/// Evaluates the declarations of a script, ignoring its commands.
pub fn bindings(script: &Script) -> Result<Option<Env>, CliError> {
    let Some(spec) = &script.field else { return Ok(None) };
    let field = spec.build().map_err(|source| CliError::Core { line: 1, col: 1, source })?;
    let mut env = Env::new(field);
    for item in &script.items {
        if let parse::Item::Let { name, value, .. } = item {
            let v = env.eval(value)?;
            env.bind(name, v);
        }
    }
    Ok(Some(env))
}
