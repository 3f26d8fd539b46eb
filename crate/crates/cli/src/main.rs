use std::io::Write;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use wsd_core::lie::{OperatorSpan, DEFAULT_MAX_ROUNDS};
use wsd_core::registry::{Algebra, AlgebraError};
use wsd_core::render::{self, RenderError, SpanView, TableKind};
use wsd_core::verify::{self, Suite};

/// Environment variable capping the number of closure rounds.
const MAX_ROUNDS_VAR: &str = "WSD_MAX_ROUNDS";

#[derive(Parser)]
#[command(name = "wsd", version, about = "Exact verification of the rank-2 WSD operator algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print a registry operator as a 64x64 matrix, or 6x6 on V.
    Matrix {
        name: String,
        #[arg(long)]
        restrict_v: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print one of: isotypical, weights, mdeg, diagonals.
    Table {
        #[arg(value_parser = parse_table)]
        kind: TableKind,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Lie closure of registry operators (default: L_j, Λ_j, V_j, A_j).
    Closure {
        /// Comma-separated registry names.
        #[arg(long, value_delimiter = ',')]
        generators: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: verify::UnknownSuite| e.to_string())
}

fn parse_table(s: &str) -> Result<TableKind, String> {
    s.parse().map_err(|e: RenderError| e.to_string())
}

fn max_rounds() -> anyhow::Result<usize> {
    match std::env::var(MAX_ROUNDS_VAR) {
        Ok(s) => s
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| anyhow!(UsageError(format!("{MAX_ROUNDS_VAR} must be a positive integer, got `{s}`")))),
        Err(_) => Ok(DEFAULT_MAX_ROUNDS),
    }
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn is_usage(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.is::<UsageError>()
            || matches!(c.downcast_ref::<AlgebraError>(), Some(AlgebraError::UnknownOperator(_)))
            || matches!(
                c.downcast_ref::<RenderError>(),
                Some(RenderError::UnknownTable(_) | RenderError::Algebra(AlgebraError::UnknownOperator(_)))
            )
    })
}

fn emit(format: Format, text: impl std::fmt::Display, json: impl FnOnce() -> String) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    let written = match format {
        Format::Text => write!(out, "{text}"),
        Format::Json => writeln!(out, "{}", json()),
    };
    match written.and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let alg = Algebra::new(max_rounds()?);
    match cli.command {
        Command::Verify { suite, format } => {
            let report = verify::run(suite, &alg);
            emit(format, &report, || report.to_json())?;
            Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Matrix { name, restrict_v, format } => {
            let m = render::matrix(&alg, &name, restrict_v).with_context(|| format!("rendering `{name}`"))?;
            emit(format, &m, || m.to_json())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { kind, format } => {
            let t = render::table(&alg, kind)?;
            emit(format, &t, || t.to_json())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Closure { generators, format } => {
            let gens = if generators.is_empty() {
                alg.generators()?
            } else {
                let names: Vec<&str> = generators.iter().map(String::as_str).collect();
                alg.named(&names)?
            };
            let names = gens.iter().map(|(n, _)| n.clone()).collect();
            let span = OperatorSpan::closure(&gens, alg.max_rounds())?;
            let view = SpanView::new(names, &span);
            emit(format, &view, || view.to_json())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
