//! `coopgap`: analyses of player-centered incomplete cooperative games.
//!
//! Exit codes: 0 success, 2 validation error, 3 not extendable,
//! 4 internal invariant breach or failed oracle.

mod commands;
mod file;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{ConceptArg, Failure, Outcome, What};
use coopgap::GameClass;
use file::{render, GameFile};

#[derive(Parser)]
#[command(
    name = "coopgap",
    version,
    about = "Exact extension sets and solution bounds for player-centered incomplete games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the class predicates and extendability tests.
    Check { file: PathBuf },
    /// Print a game file in canonical form.
    Format { file: PathBuf },
    /// List vertices, recession rays or a witness of an extension set.
    Extensions {
        file: PathBuf,
        #[arg(long, value_parser = parse_class)]
        class: GameClass,
        #[arg(long, value_enum)]
        what: What,
    },
    /// Closed-form bounds on the core, Shapley value or τ-value.
    Approx {
        file: PathBuf,
        #[arg(long, value_enum)]
        concept: ConceptArg,
        /// Defaults to positive, or zero-normalized-positive for tau.
        #[arg(long, value_parser = parse_class)]
        class: Option<GameClass>,
    },
    /// Count extreme rays of the superadditive and convex recession cones.
    Table1 {
        #[arg(long, default_value_t = commands::TABLE1_SHORT_MAX)]
        n_max: usize,
        /// Permit player counts above 4.
        #[arg(long)]
        allow_long: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compare sampled extensions against the closed-form bounds.
    Oracle {
        file: PathBuf,
        #[arg(long, value_enum)]
        concept: ConceptArg,
        #[arg(long, value_parser = parse_class)]
        class: Option<GameClass>,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true)]
        corrupt_interval: bool,
    },
}

fn parse_class(s: &str) -> Result<GameClass, String> {
    GameClass::from_name(s).ok_or_else(|| {
        let names: Vec<_> = GameClass::ALL.iter().map(|c| c.name()).collect();
        format!("unknown class {s:?}; expected one of {}", names.join(", "))
    })
}

fn load(path: &Path) -> Outcome<GameFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::validation(format!("cannot read {}: {e}", path.display())))?;
    Ok(GameFile::from_json(&text)?)
}

fn run(cli: Cli) -> Outcome<(String, bool)> {
    let report = match cli.command {
        Command::Check { file } => commands::check(&load(&file)?)?,
        Command::Format { file } => return Ok((load(&file)?.canonical()?.to_text(), true)),
        Command::Extensions { file, class, what } => commands::extensions(&load(&file)?, class, what)?,
        Command::Approx { file, concept, class } => {
            let cls = class.unwrap_or_else(|| commands::default_class(concept));
            commands::approx(&load(&file)?, concept, cls)?
        }
        Command::Table1 {
            n_max,
            allow_long,
            json,
        } => {
            let rows = commands::table1(n_max, allow_long)?;
            let text = if json {
                render(&commands::table1_value(&rows)) + "\n"
            } else {
                commands::table1_text(&rows)
            };
            return Ok((text, true));
        }
        Command::Oracle {
            file,
            concept,
            class,
            samples,
            seed,
            corrupt_interval,
        } => {
            let cls = class.unwrap_or_else(|| commands::default_class(concept));
            let r = commands::oracle(&load(&file)?, concept, cls, samples, seed, corrupt_interval)?;
            return Ok((render(&r.value) + "\n", r.passed));
        }
    };
    Ok((render(&report) + "\n", true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok((text, passed))) => {
            print!("{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
        Ok(Err(f)) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
        Err(_) => ExitCode::from(4),
    }
}
