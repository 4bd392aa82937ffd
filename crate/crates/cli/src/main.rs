use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use rayon::prelude::*;
use serde_json::{json, Value as Json};

use qvar_cli::{run_source, Outcome, SCHEMA};

/// Run q-variety scripts and report the results.
#[derive(Parser, Debug)]
#[command(name = "qvar", version)]
struct Args {
    /// Script files or directories of `.qv` scripts; `-` reads standard input.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Emit JSON instead of text tables.
    #[arg(long)]
    json: bool,
    /// Write the output to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Seed for randomized commands (no current command draws random numbers).
    #[arg(long, value_name = "INT")]
    seed: Option<u64>,
    /// Include per-command wall-clock times (output is then not reproducible).
    #[arg(long)]
    timing: bool,
}

fn scripts(inputs: &[PathBuf]) -> io::Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for p in inputs {
        if p.is_dir() {
            let mut found: Vec<PathBuf> = fs::read_dir(p)?
                .map(|e| e.map(|e| e.path()))
                .collect::<io::Result<_>>()?;
            found.retain(|f| f.extension().is_some_and(|x| x == "qv"));
            found.sort();
            out.extend(found);
        } else {
            out.push(p.clone());
        }
    }
    Ok(out)
}

fn read(p: &Path) -> io::Result<String> {
    if p == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(p)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let _ = args.seed;
    let paths = match scripts(&args.inputs) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("qvar: {e}");
            return ExitCode::from(1);
        }
    };
    let sources: Vec<(PathBuf, io::Result<String>)> = paths.iter().map(|p| (p.clone(), read(p))).collect();
    // independent scripts run in parallel; output keeps the input order
    let outcomes: Vec<(PathBuf, Result<Outcome, String>)> = sources
        .into_par_iter()
        .map(|(p, src)| {
            let o = src.map(|s| run_source(&s)).map_err(|e| e.to_string());
            (p, o)
        })
        .collect();

    let batch = outcomes.len() != 1;
    let mut code = 0;
    let mut text = String::new();
    let mut entries = Vec::new();
    for (path, o) in &outcomes {
        match o {
            Ok(o) => {
                code = code.max(o.exit_code());
                if args.json {
                    let mut j = o.to_json(args.timing);
                    if batch {
                        j["path"] = json!(path.display().to_string());
                    }
                    entries.push(j);
                } else {
                    if batch {
                        text.push_str(&format!("== {}\n", path.display()));
                    }
                    text.push_str(&o.to_text(args.timing));
                }
            }
            Err(e) => {
                code = code.max(1);
                eprintln!("qvar: {}: {e}", path.display());
            }
        }
    }
    if args.json {
        let doc = if batch {
            json!({ "schema": SCHEMA, "scripts": Json::Array(entries) })
        } else {
            entries.pop().unwrap_or_else(|| json!({ "schema": SCHEMA, "reports": [] }))
        };
        text = serde_json::to_string_pretty(&doc).expect("serializable");
        text.push('\n');
    }
    let written = match &args.out {
        Some(p) => fs::write(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("qvar: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
