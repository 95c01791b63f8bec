use std::path::PathBuf;

use clap::Args;
use fairmech::{run_auction_with, Guards, MechanismKind, Rational};

use crate::error::{CliError, CliResult};
use crate::format::{parse_rational, read_json, write_json, InstanceFile, OutcomeFile};
use crate::parse_kind;

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// ef1, mms or nsw.
    #[arg(long, value_parser = parse_kind)]
    pub mechanism: MechanismKind,
    #[arg(long)]
    pub input: PathBuf,
    /// Outcome file; standard output when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Accuracy of the MMS estimate, in (0, 1/2). Overrides the file.
    #[arg(long, value_parser = parse_rational)]
    pub epsilon: Option<Rational>,
}

pub fn run(args: &SolveArgs, guards: &Guards, usage: &str) -> CliResult {
    let file: InstanceFile = read_json(&args.input)?;
    let instance = file.instance()?;
    let epsilon = args.epsilon.clone().or_else(|| file.epsilon());
    if args.mechanism == MechanismKind::Mms && epsilon.is_none() {
        return Err(CliError::Input(format!(
            "the mms mechanism needs --epsilon or an `epsilon` field in the instance\n\n{usage}"
        )));
    }
    let outcome = run_auction_with(&instance, args.mechanism, epsilon.as_ref(), guards)?;
    write_json(args.output.as_deref(), &OutcomeFile::from_outcome(&outcome))?;

    let show = |v: &Option<Rational>, missing: &str| v.as_ref().map_or(missing.to_string(), |x| x.to_string());
    let paid: Rational = outcome.payments.iter().sum();
    let summary = format!(
        "{}: welfare {}, ef1 slack {}, mms ratio {}, total payments {paid}",
        outcome.kind,
        outcome.welfare,
        show(&outcome.fairness.ef1_slack, "inf"),
        show(&outcome.fairness.mms_ratio, "n/a"),
    );
    // keep standard output clean for the outcome when it goes there
    if args.output.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}
