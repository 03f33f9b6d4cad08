mod render;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use einstab::algebra::SimpleAlgebra;
use einstab::criteria::{casimir_row, criterion_einstein, criterion_structural};
use einstab::exact::Rational;
use einstab::oracle::{self, OracleTarget};
use einstab::spaces::{analyze, regenerate_table, RowStatus, SpaceSpec, TableId};
use einstab::Error;

const GRAMMAR: &str = include_str!("../grammar.txt");

#[derive(Parser)]
#[command(name = "einstab", version, about = "Stability of standard Einstein metrics on compact homogeneous spaces")]
#[command(after_long_help = GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Markdown, global = true)]
    format: Format,
    /// Write the output to FILE instead of standard output.
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one space: Einstein constant, spectrum, verdict, criteria.
    Analyze {
        /// Space specification, e.g. `flag:e7` or `som:sphere(3)x3`.
        space: String,
    },
    /// Regenerate a published table and compare it with the expected rows.
    Table {
        /// One of IA, IAA, IB1, IB2, IB3.
        which: String,
    },
    /// Evaluate the Lie-theoretic stability criteria for a simple algebra.
    Criteria {
        /// Simple Lie algebra, e.g. `e8` or `so(12)`.
        algebra: String,
        /// Dimension of the isotropy subalgebra k.
        #[arg(long)]
        dim_k: Option<u64>,
        /// Einstein constant of the standard metric, as p/q.
        #[arg(long)]
        rho: Option<String>,
    },
    /// Check the exact results against brute-force matrix models.
    Oracle {
        /// Oracle targets; the default set when omitted.
        targets: Vec<String>,
    },
    /// Print the specification grammar.
    Grammar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

/// A failed command and its exit status.
#[derive(Debug)]
enum Failure {
    Io(String),
    Parse(String),
    Generator(String),
    TableMismatch(String),
    Oracle(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Generator(_) => 3,
            Failure::TableMismatch(_) => 4,
            Failure::Oracle(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Parse(m) | Failure::Generator(m) | Failure::TableMismatch(m) | Failure::Oracle(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Parse(e.to_string()),
            _ => Failure::Generator(e.to_string()),
        }
    }
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T, Failure> {
    s.parse().map_err(|e: Error| Failure::Parse(e.to_string()))
}

/// The rendered output, plus a failure to report after it is written.
type Outcome = (String, Option<Failure>);

fn cmd_analyze(space: &str, format: Format) -> Result<Outcome, Failure> {
    let spec: SpaceSpec = parse(space)?;
    let report = analyze(&spec)?;
    Ok((render::report(&report, format), None))
}

fn cmd_table(which: &str, format: Format) -> Result<Outcome, Failure> {
    let table: TableId = parse(which)?;
    let rows = regenerate_table(table)?;
    let bad: Vec<&str> = rows.iter().filter(|r| r.status == RowStatus::Mismatch).map(|r| r.id.as_str()).collect();
    let failure = (!bad.is_empty()).then(|| Failure::TableMismatch(format!("table {table}: rows {} do not match", bad.join(", "))));
    Ok((render::table(table, &rows, format), failure))
}

fn cmd_criteria(algebra: &str, dim_k: Option<u64>, rho: Option<&str>, format: Format) -> Result<Outcome, Failure> {
    let g: SimpleAlgebra = parse(algebra)?;
    let row = casimir_row(g)?;
    let structural = dim_k.map(|k| criterion_structural(row.dim_g, k, &row)).transpose()?;
    let rho: Option<Rational> = rho
        .map(|r| r.parse().map_err(|_| Failure::Parse(format!("--rho: `{r}` is not a rational p/q"))))
        .transpose()?;
    let einstein = rho.as_ref().map(|r| criterion_einstein(r, &row));
    Ok((render::criteria(&row, dim_k, structural.as_ref(), rho.as_ref(), einstein.as_ref(), format), None))
}

fn cmd_oracle(targets: &[String], format: Format) -> Result<Outcome, Failure> {
    let targets: Vec<OracleTarget> = if targets.is_empty() {
        oracle::default_targets()
    } else {
        targets.iter().map(|t| parse(t)).collect::<Result<_, _>>()?
    };
    let reports = oracle::run_targets(&targets)?;
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.target.as_str()).collect();
    let failure = (!failed.is_empty()).then(|| Failure::Oracle(format!("oracle checks failed for {}", failed.join(", "))));
    Ok((render::oracle(&reports, format), failure))
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string())),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let (text, failure) = match &cli.command {
        Command::Analyze { space } => cmd_analyze(space, cli.format)?,
        Command::Table { which } => cmd_table(which, cli.format)?,
        Command::Criteria { algebra, dim_k, rho } => cmd_criteria(algebra, *dim_k, rho.as_deref(), cli.format)?,
        Command::Oracle { targets } => cmd_oracle(targets, cli.format)?,
        Command::Grammar => (GRAMMAR.to_string(), None),
    };
    emit(&text, cli.out.as_ref())?;
    failure.map_or(Ok(()), Err)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
