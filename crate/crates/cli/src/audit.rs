use std::path::{Path, PathBuf};

use clap::Args;
use fairmech::{rat, truthfulness_audit_with_values, Guards, MechanismKind, Rational};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::format::{parse_rational, read_json, write_json, InstanceFile};
use crate::parse_kind;
use crate::verify::deviation_points;

#[derive(Debug, Args)]
pub struct AuditArgs {
    /// Instance files, or directories whose `.json` files are audited.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Mechanism to audit; all three when omitted.
    #[arg(long, value_parser = parse_kind)]
    pub mechanism: Option<MechanismKind>,
    /// Defaults to each file's epsilon, then 1/10.
    #[arg(long, value_parser = parse_rational)]
    pub epsilon: Option<Rational>,
    #[arg(long, value_parser = parse_rational, default_value = "1/4")]
    pub grid_step: Rational,
    /// Number of instances audited concurrently.
    #[arg(long, default_value_t = 1)]
    pub parallel: usize,
    /// Report file; standard output when omitted.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct Entry {
    input: String,
    mechanism: Option<String>,
    points_checked: usize,
    violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip)]
    exit: u8,
}

#[derive(Debug, Serialize)]
struct Summary {
    instances: usize,
    audits: usize,
    violations: usize,
    errors: usize,
    entries: Vec<Entry>,
}

fn collect_inputs(inputs: &[PathBuf]) -> CliResult<Vec<PathBuf>> {
    let mut files = Vec::new();
    for path in inputs {
        if path.is_dir() {
            let listing = std::fs::read_dir(path)
                .map_err(|e| CliError::Input(format!("cannot list {}: {e}", path.display())))?;
            let mut found: Vec<PathBuf> = listing
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            found.sort();
            files.extend(found);
        } else {
            files.push(path.clone());
        }
    }
    Ok(files)
}

fn failed(input: &Path, error: CliError) -> Vec<Entry> {
    vec![Entry {
        input: input.display().to_string(),
        mechanism: None,
        points_checked: 0,
        violations: Vec::new(),
        exit: error.exit_code(),
        error: Some(error.to_string()),
    }]
}

fn audit_file(path: &Path, args: &AuditArgs, guards: &Guards) -> Vec<Entry> {
    let prepared = (|| -> CliResult<_> {
        let file: InstanceFile = read_json(path)?;
        let instance = file.instance()?;
        let values = file.values();
        let epsilon = args.epsilon.clone().or_else(|| file.epsilon()).unwrap_or_else(|| fairmech::ratio(1, 10));
        let grid = deviation_points(instance.bids(), &values, &args.grid_step)?;
        Ok((instance, values, epsilon, grid))
    })();
    let (instance, values, epsilon, grid) = match prepared {
        Ok(p) => p,
        Err(e) => return failed(path, e),
    };
    let kinds: Vec<MechanismKind> = match args.mechanism {
        Some(kind) => vec![kind],
        None => MechanismKind::ALL.to_vec(),
    };
    kinds
        .into_iter()
        .map(|kind| {
            let input = path.display().to_string();
            match truthfulness_audit_with_values(&instance, &values, kind, Some(&epsilon), &grid, guards) {
                Ok(report) => {
                    let violations: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
                    Entry {
                        input,
                        mechanism: Some(kind.to_string()),
                        points_checked: report.points_checked,
                        exit: if violations.is_empty() { 0 } else { 3 },
                        violations,
                        error: None,
                    }
                }
                Err(e) => {
                    let e = CliError::from(e);
                    Entry {
                        input,
                        mechanism: Some(kind.to_string()),
                        points_checked: 0,
                        violations: Vec::new(),
                        exit: e.exit_code(),
                        error: Some(e.to_string()),
                    }
                }
            }
        })
        .collect()
}

/// Exit status of a batch: a violation outranks a guard refusal, which
/// outranks an input error.
fn batch_status(entries: &[Entry]) -> CliResult {
    let worst = |code: u8| entries.iter().filter(|e| e.exit == code).count();
    let (violating, guarded, broken) = (worst(3), worst(2), worst(1));
    if violating > 0 {
        Err(CliError::Violation(format!("{violating} audits found violations")))
    } else if guarded > 0 {
        Err(CliError::Guard(format!("{guarded} audits exceeded a size guard")))
    } else if broken > 0 {
        Err(CliError::Input(format!("{broken} inputs could not be audited")))
    } else {
        Ok(())
    }
}

pub fn run(args: &AuditArgs, guards: &Guards) -> CliResult {
    if args.grid_step <= rat(0) {
        return Err(CliError::Input("--grid-step must be positive".into()));
    }
    let files = collect_inputs(&args.inputs)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.parallel.max(1))
        .build()
        .map_err(|e| CliError::Input(format!("cannot start worker threads: {e}")))?;
    let entries: Vec<Entry> =
        pool.install(|| files.par_iter().flat_map_iter(|path| audit_file(path, args, guards)).collect());
    let summary = Summary {
        instances: files.len(),
        audits: entries.len(),
        violations: entries.iter().map(|e| e.violations.len()).sum(),
        errors: entries.iter().filter(|e| e.error.is_some()).count(),
        entries,
    };
    eprintln!(
        "audited {} instances ({} audits): {} violations, {} errors",
        summary.instances, summary.audits, summary.violations, summary.errors
    );
    write_json(args.report.as_deref(), &summary)?;
    batch_status(&summary.entries)
}
