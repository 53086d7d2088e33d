//! Command-line surface: type-check protocol files, compose and evaluate
//! them, and run the law suites.
//!
//! Exit codes: 0 on success, 1 on type errors, 2 on law failures, 3 on
//! parse errors.

#[cfg(test)]
mod corpus;
mod protocol;

use clap::{Args, Parser, Subcommand};
use mctx::codec;
use mctx::error::Error;
use mctx::laws::{self, LawConfig};
use mctx::rational::{format_ratio, parse_ratio};
use mctx::session::{outcome_distribution, Initial};
use mctx::theory::TheoryKind;
use protocol::ProtocolFile;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "mctx", version, about = "Monoidal contexts: protocol composition and law suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Type-check the parties of a protocol file.
    Check(CheckArgs),
    /// Interleave the parties, fill the channels, and print the composite.
    Compose(ComposeArgs),
    /// Compose and print the exact outcome distribution.
    Eval(EvalArgs),
    /// Run the law suites and print one line per family.
    Laws(LawsArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Protocol file (`"schema": "mctx/1"`).
    file: PathBuf,
    /// Emit the diagnostics as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ComposeArgs {
    file: PathBuf,
    /// Override the file's channel noise (an exact rational like `1/10`).
    #[arg(long)]
    noise: Option<String>,
    /// Write the composite morphism here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    file: PathBuf,
    /// Initial joint state, e.g. `client=0,server=0` (default all zeros).
    #[arg(long)]
    initial: Option<String>,
    /// Override the file's channel noise (an exact rational like `1/10`).
    #[arg(long)]
    noise: Option<String>,
    /// Emit the distribution as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct LawsArgs {
    /// Backends for the theory-parametric families: finfn, finstoch or all.
    #[arg(long, default_value = "all")]
    theory: String,
    /// Largest atom carrier used by the generators.
    #[arg(long, default_value_t = 2)]
    max_carrier: usize,
    /// Fuzz cases per family.
    #[arg(long, default_value_t = 300)]
    cases: usize,
    /// Seed for the deterministic generator.
    #[arg(long, default_value_t = 17)]
    seed: u64,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
}

const EXIT_TYPE: u8 = 1;
const EXIT_LAW: u8 = 2;
const EXIT_PARSE: u8 = 3;

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Protocol(_) | Error::Presentation(_) => EXIT_PARSE,
        _ => EXIT_TYPE,
    }
}

fn fail(err: Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(exit_code_for(&err))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Compose(args) => cmd_compose(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Laws(args) => cmd_laws(args),
    }
}

fn load(path: &PathBuf) -> Result<ProtocolFile, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Protocol(format!("cannot read {}: {e}", path.display())))?;
    ProtocolFile::parse(&text)
}

fn cmd_check(args: CheckArgs) -> ExitCode {
    let file = match load(&args.file) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    match file.check() {
        Ok((lenses, warnings)) => {
            if args.json {
                let parties: Vec<_> = file
                    .parties
                    .iter()
                    .zip(&lenses)
                    .map(|(p, l)| {
                        json!({
                            "party": p.name,
                            "session": p.session.to_string(),
                            "stages": l.stages(),
                        })
                    })
                    .collect();
                let report = json!({ "ok": true, "parties": parties, "warnings": warnings });
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                for (p, l) in file.parties.iter().zip(&lenses) {
                    println!("ok  {:<10} {} ({} stages)", p.name, p.session, l.stages());
                }
                for w in &warnings {
                    println!("warning: {w}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn parse_noise(spec: &Option<String>) -> Result<Option<mctx::rational::Rational>, Error> {
    match spec {
        None => Ok(None),
        Some(s) => parse_ratio(s)
            .filter(|r| {
                r >= &mctx::rational::Rational::from_integer(0.into())
                    && r <= &mctx::rational::Rational::from_integer(1.into())
            })
            .map(Some)
            .ok_or_else(|| Error::Protocol(format!("bad noise `{s}`: expected a rational in [0, 1]"))),
    }
}

fn cmd_compose(args: ComposeArgs) -> ExitCode {
    let file = match load(&args.file) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let noise = match parse_noise(&args.noise) {
        Ok(n) => n,
        Err(e) => return fail(e),
    };
    match file.compose(noise.as_ref()) {
        Ok((closed, warnings)) => {
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            let mut objects = serde_json::Map::new();
            for (name, carrier) in &file.signature.carriers {
                objects.insert(name.clone(), (*carrier).into());
            }
            let out = json!({
                "schema": protocol::SCHEMA,
                "objects": objects,
                "composite": codec::morphism_to_json(&closed),
            });
            let text = serde_json::to_string_pretty(&out).unwrap() + "\n";
            match &args.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        return fail(Error::Protocol(format!("cannot write {}: {e}", path.display())));
                    }
                    println!("wrote composite ({} -> {}) to {}", closed.dom(), closed.cod(), path.display());
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn cmd_eval(args: EvalArgs) -> ExitCode {
    let file = match load(&args.file) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let noise = match parse_noise(&args.noise) {
        Ok(n) => n,
        Err(e) => return fail(e),
    };
    let run = (|| -> Result<_, Error> {
        let (closed, warnings) = file.compose(noise.as_ref())?;
        // a deterministic composite still evaluates: lift it on the fly
        let closed = match &closed {
            mctx::theory::Morphism::FinFn(f) => {
                mctx::theory::Morphism::FinStoch(mctx::theory::FinStochMorphism::from_table(f))
            }
            other => other.clone(),
        };
        let initial = file.initial_index(args.initial.as_deref())?;
        let outcomes = outcome_distribution(&closed, &Initial::Point(initial))?;
        Ok((outcomes, warnings))
    })();
    match run {
        Ok((outcomes, warnings)) => {
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            if args.json {
                let rows: Vec<_> = outcomes
                    .iter()
                    .map(|(state, p)| {
                        json!({
                            "state": file.state_label(*state),
                            "index": state,
                            "probability": format_ratio(p),
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&json!({ "outcomes": rows })).unwrap());
            } else {
                let width = outcomes
                    .iter()
                    .map(|(s, _)| file.state_label(*s).len())
                    .max()
                    .unwrap_or(0);
                println!("{:<width$}  probability", "outcome");
                for (state, p) in &outcomes {
                    println!("{:<width$}  {}", file.state_label(*state), format_ratio(p));
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn cmd_laws(args: LawsArgs) -> ExitCode {
    let theories = match args.theory.as_str() {
        "all" => vec![TheoryKind::FinFn, TheoryKind::FinStoch],
        "finfn" => vec![TheoryKind::FinFn],
        "finstoch" => vec![TheoryKind::FinStoch],
        other => {
            return fail(Error::Protocol(format!(
                "unknown theory `{other}` (expected finfn, finstoch or all)"
            )))
        }
    };
    let cfg = LawConfig { seed: args.seed, cases: args.cases, max_carrier: args.max_carrier, theories };
    let reports = laws::run_all(&cfg);
    let all_pass = reports.iter().all(|r| r.passed());
    if args.json {
        let rows: Vec<_> = reports
            .iter()
            .map(|r| {
                json!({
                    "family": r.name,
                    "cases": r.cases,
                    "checks": r.checks,
                    "failures": r.failures,
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "seed": args.seed,
                "cases": args.cases,
                "max_carrier": args.max_carrier,
                "pass": all_pass,
                "families": rows,
            }))
            .unwrap()
        );
    } else {
        println!("law suites  seed {}  cases {}  max carrier {}", args.seed, args.cases, args.max_carrier);
        if args.cases == 0 {
            println!("warning: 0 cases requested; every family passes vacuously");
        }
        print!("{}", laws::render(&reports));
        println!("{}", if all_pass { "all law families pass" } else { "LAW FAILURES DETECTED" });
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_LAW)
    }
}
