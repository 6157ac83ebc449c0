use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fmk::algebra::TriDegree;
use fmk::checks::{run_checks, CheckConfig, Status};
use fmk::error::{FmkError, Result};
use fmk::fm::builtins;
use fmk::parser::parse_expression;
use fmk::scalar::Field;
use fmk::search::{DegreeSearchProblem, SearchOptions};

#[derive(Parser)]
#[command(name = "fmk", version, about = "Exact computations with free-monodromic complexes for GL2")]
struct Cli {
    /// Base field: `q` or `p=<odd prime>`. Defaults to $FMK_FIELD, then `q`.
    #[arg(long, global = true)]
    field: Option<Field>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run named checks (`all` or nothing selects every check).
    Verify {
        names: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        json: bool,
        /// Run the negative control of this check.
        #[arg(long)]
        mutate: Option<String>,
        /// List the registered checks and exit.
        #[arg(long)]
        list: bool,
    },
    /// Dimensions of a degree piece of the morphism complex.
    Dims {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        /// Tridegree as `i,j,k`.
        #[arg(long, allow_hyphen_values = true)]
        degree: TriDegree,
        #[arg(long)]
        cohomology: bool,
        #[arg(long)]
        shape: bool,
        #[arg(long)]
        basis: bool,
    },
    /// Evaluate an expression and print its canonical form.
    Eval {
        expr: String,
        #[arg(long)]
        json: bool,
    },
}

fn field(cli: Option<Field>) -> Result<Field> {
    match cli {
        Some(f) => Ok(f),
        None => Ok(Field::from_env()?.unwrap_or(Field::Rational)),
    }
}

fn object(name: &str) -> Result<fmk::fm::FMObject> {
    builtins::object(name).ok_or_else(|| FmkError::Domain(format!("unknown complex `{name}` (expected T_empty or T_s)")))
}

fn run(cli: Cli) -> Result<bool> {
    let field = field(cli.field)?;
    match cli.command {
        Command::Verify { names, seed, samples, json, mutate, list } => {
            if list {
                for c in fmk::checks::CHECKS {
                    println!("{:<28} {}", c.name, c.description);
                }
                return Ok(true);
            }
            let cfg = CheckConfig { field, seed, samples, mutate: false };
            let report = run_checks(&names, &cfg, mutate.as_deref())?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                for r in &report.results {
                    let tag = match r.status {
                        Status::Pass => "PASS",
                        Status::Fail => "FAIL",
                        Status::Skipped => "SKIP",
                    };
                    let m = if r.mutated { " (mutated)" } else { "" };
                    println!("{tag} {}{m} [{:.1} ms]  {}", r.name, r.elapsed_ms, r.description);
                    if r.status == Status::Fail {
                        println!("{}", serde_json::to_string_pretty(&r.details).expect("serializable"));
                    }
                }
                let passed = report.results.iter().filter(|r| r.status == Status::Pass).count();
                println!("{passed}/{} passed (field {}, seed {})", report.results.len(), report.field, report.seed);
            }
            Ok(report.all_passed())
        }
        Command::Dims { source, target, degree, cohomology, shape, basis } => {
            let options = SearchOptions { quotient_by_exact: cohomology, report_shape: shape, want_basis: basis, reverse_order: false };
            let p = DegreeSearchProblem::new(object(&source)?, object(&target)?, degree).with_options(options);
            let report = p.run(field)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            Ok(true)
        }
        Command::Eval { expr, json } => {
            let v = parse_expression(&expr)?.in_field(field);
            if json {
                println!("{}", serde_json::to_string_pretty(&v.to_json()).expect("serializable"));
            } else {
                println!("{v}");
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
