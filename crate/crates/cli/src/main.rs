//! `rate`: run and validate source-rating scenarios.
//!
//! Exit codes: 0 success, 1 scenario error (file, schema, or description
//! problems), 2 capacity or numeric error (basis over the cap, truncation
//! loss, eigenvalue repair failure).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rate_cli::error::{CliError, Result};
use rate_cli::render::Format;
use rate_cli::{bundled, parse_scenario, render, run, BUNDLED};

#[derive(Parser)]
#[command(
    name = "rate",
    version,
    about = "Rates quantum state sources against application targets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file (or a bundled scenario by name) to a report.
    Run {
        /// Path to a scenario file, or the name of a bundled scenario.
        scenario: String,
        /// Output format.
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse and validate a scenario without running it.
    Validate {
        /// Path to a scenario file, or the name of a bundled scenario.
        scenario: String,
    },
    /// List the bundled example scenarios.
    Examples,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Table => Format::Table,
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

/// File contents by path, falling back to the bundled set by name.
fn load(scenario: &str) -> Result<String> {
    let path = Path::new(scenario);
    if path.exists() {
        return std::fs::read_to_string(path)
            .map_err(|e| CliError::scenario(format!("cannot read {}: {e}", path.display())));
    }
    if let Some(text) = bundled(scenario) {
        return Ok(text.to_string());
    }
    Err(CliError::scenario(format!(
        "{scenario:?} is neither a readable file nor a bundled scenario \
         (see `rate examples`)"
    )))
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Run {
            scenario,
            format,
            out,
        } => {
            let text = load(&scenario)?;
            let parsed = parse_scenario(&text)?;
            let report = run(&parsed)?;
            let rendered = render(&report, format.into());
            match out {
                None => print!("{rendered}"),
                Some(path) => std::fs::write(&path, rendered).map_err(|e| {
                    CliError::scenario(format!("cannot write {}: {e}", path.display()))
                })?,
            }
            Ok(())
        }
        Command::Validate { scenario } => {
            let text = load(&scenario)?;
            let parsed = parse_scenario(&text)?;
            println!(
                "ok: {} ({}, basis dimension {}, {} row{})",
                parsed.name,
                parsed.analysis.name(),
                parsed.max_basis_dim()?,
                parsed.row_count(),
                if parsed.row_count() == 1 { "" } else { "s" }
            );
            Ok(())
        }
        Command::Examples => {
            let width = BUNDLED.iter().map(|(n, _, _)| n.len()).max().unwrap_or(0);
            for (name, description, _) in BUNDLED {
                println!("{name:width$}  {description}");
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rate: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
