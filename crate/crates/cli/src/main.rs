//! `fairmech`: run, verify, generate and audit fair-division auctions.

mod audit;
mod error;
mod format;
mod gen;
mod solve;
mod verify;

use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand};
use fairmech::{Guards, MechanismKind};

use crate::error::{CliError, CliResult};

const GUARD_M: &str = "FAIRMECH_GUARD_M";
const GUARD_N: &str = "FAIRMECH_GUARD_N";

/// Truthful, welfare-maximizing auctions for fair division of indivisible
/// goods.
///
/// Exit codes: 0 success, 1 input error, 2 size guard exceeded, 3 property
/// violation. FAIRMECH_GUARD_M and FAIRMECH_GUARD_N raise or lower the
/// instance-size limits of the exponential searches.
#[derive(Debug, Parser)]
#[command(name = "fairmech", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a mechanism on an instance file and write the outcome.
    Solve(solve::SolveArgs),
    /// Check guarantees of the mechanisms against brute-force oracles.
    Verify(verify::VerifyArgs),
    /// Write a random or reduction instance.
    Gen(gen::GenArgs),
    /// Audit truthfulness over many instance files.
    Audit(audit::AuditArgs),
}

pub(crate) fn parse_kind(text: &str) -> Result<MechanismKind, String> {
    text.parse::<MechanismKind>().map_err(|e| e.to_string())
}

fn env_limit(name: &str) -> CliResult<Option<usize>> {
    match std::env::var(name) {
        Ok(text) => text
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Input(format!("{name} must be a non-negative integer, got `{text}`"))),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Input(format!("{name}: {e}"))),
    }
}

/// The default guards with every limit overridden from the environment.
fn guards() -> CliResult<Guards> {
    let mut guards = Guards::default();
    let (m, n) = (env_limit(GUARD_M)?, env_limit(GUARD_N)?);
    for guard in [&mut guards.exact_mms, &mut guards.nsw, &mut guards.oracle] {
        if let Some(m) = m {
            guard.max_goods = m;
        }
        if let Some(n) = n {
            guard.max_agents = n;
        }
    }
    Ok(guards)
}

fn run(cli: &Cli) -> CliResult {
    let guards = guards()?;
    match &cli.command {
        Command::Solve(args) => {
            let mut command = Cli::command();
            command.build();
            let usage = command
                .find_subcommand_mut("solve")
                .map(|c| c.render_usage().to_string())
                .unwrap_or_default();
            solve::run(args, &guards, &usage)
        }
        Command::Verify(args) => verify::run(args, &guards),
        Command::Gen(args) => gen::run(args),
        Command::Audit(args) => audit::run(args, &guards),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors share the input-error code; help and version succeed
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
