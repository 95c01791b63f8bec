use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::Args;
use fairmech::mms::{exact_mms_with_guard, solve_fa_mms_with_guard};
use fairmech::oracles::Oracle;
use fairmech::{
    beta_majorizes, rat, ratio, run_auction_with, truthfulness_audit_with_values, Guards, Instance,
    MechanismKind, Rational,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::format::{parse_rational, read_json, write_json, InstanceFile};

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Report file; standard output when omitted.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// EF1 mechanism: the partition is EF1 and welfare is at least half
    /// the best EF1 welfare.
    #[arg(long)]
    pub ef1_approx: bool,
    /// MMS mechanism: every bundle reaches mu_bar / 2 and (1 - eps) mu / 2.
    #[arg(long)]
    pub mms_fairness: bool,
    /// MMS mechanism: welfare at least the best MMS-feasible welfare.
    #[arg(long)]
    pub mms_welfare: bool,
    /// No profitable deviation on a bid grid, for all three mechanisms.
    #[arg(long)]
    pub truthful: bool,
    /// The MMS partition majorizes the optimum; round-robin 1/2-majorizes
    /// every EF1 partition.
    #[arg(long)]
    pub majorization: bool,
    /// Spacing of the deviation grid used by --truthful.
    #[arg(long, value_parser = parse_rational, default_value = "1/4")]
    pub grid_step: Rational,
    /// Defaults to the file's epsilon, then 1/10.
    #[arg(long, value_parser = parse_rational)]
    pub epsilon: Option<Rational>,
}

#[derive(Debug, Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Value>,
}

#[derive(Debug, Serialize)]
struct Report {
    input: String,
    passed: bool,
    checks: Vec<Check>,
}

/// `0, step, 2 step, ...` up to twice the largest bid or value, plus one.
pub fn deviation_points(bids: &[Rational], values: &[Rational], step: &Rational) -> CliResult<Vec<Rational>> {
    if step <= &rat(0) {
        return Err(CliError::Input(format!("grid step must be positive, got {step}")));
    }
    let top = bids.iter().chain(values).max().cloned().unwrap_or_else(|| rat(0));
    let upper = top * rat(2) + rat(1);
    let mut points = Vec::new();
    let mut z = rat(0);
    while z <= upper {
        points.push(z.clone());
        z += step;
    }
    Ok(points)
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(|x| x.to_string()).collect()
}

struct Context<'a> {
    instance: &'a Instance,
    values: Vec<Rational>,
    epsilon: Rational,
    guards: &'a Guards,
    oracle: Oracle,
}

impl Context<'_> {
    fn ef1_approx(&self) -> CliResult<Check> {
        let outcome = run_auction_with(self.instance, MechanismKind::Ef1, None, self.guards)?;
        let (best, opt) = self.oracle.opt_ef1(self.instance)?;
        let ef1 = outcome.fairness.is_ef1();
        let passed = ef1 && outcome.welfare.clone() * rat(2) >= opt;
        Ok(Check {
            name: "ef1-approx",
            passed,
            detail: format!("EF1 {ef1}; welfare {} vs EF1 optimum {opt}", outcome.welfare),
            witness: (!passed).then(|| {
                json!({
                    "allocation": outcome.allocation.agent_bundles(),
                    "optimal_allocation": best.agent_bundles(),
                })
            }),
        })
    }

    fn mms_fairness(&self) -> CliResult<Check> {
        let n = self.instance.n();
        let (p, estimate, _) = solve_fa_mms_with_guard(self.instance, &self.epsilon, self.guards.exact_mms)?;
        let mu = exact_mms_with_guard(self.instance.weights(), n, self.guards.exact_mms)?;
        let loads = p.bundle_weights(self.instance.weights())?;
        let least = loads.iter().min().cloned().unwrap_or_else(|| rat(0));
        let target = (rat(1) - &self.epsilon) / rat(2) * &mu;
        let passed = least.clone() * rat(2) >= estimate.mu_bar && least >= target;
        Ok(Check {
            name: "mms-fairness",
            passed,
            detail: format!(
                "lightest bundle {least}; mu_bar / 2 = {}, (1 - eps) mu / 2 = {target}, mu = {mu}",
                estimate.mu_bar.clone() / rat(2)
            ),
            witness: (!passed).then(|| json!({ "bundles": p.bundles(), "loads": strings(&loads) })),
        })
    }

    fn mms_welfare(&self) -> CliResult<Check> {
        let outcome = run_auction_with(self.instance, MechanismKind::Mms, Some(&self.epsilon), self.guards)?;
        let (best, opt, mu) = self.oracle.opt_mms(self.instance)?;
        let passed = outcome.welfare >= opt;
        Ok(Check {
            name: "mms-welfare",
            passed,
            detail: format!(
                "welfare {} {} optimum {opt} (mu = {mu})",
                outcome.welfare,
                if passed { ">=" } else { "<" }
            ),
            witness: (!passed).then(|| {
                json!({
                    "allocation": outcome.allocation.agent_bundles(),
                    "optimal_allocation": best.agent_bundles(),
                })
            }),
        })
    }

    fn truthful(&self, step: &Rational) -> CliResult<Check> {
        let grid = deviation_points(self.instance.bids(), &self.values, step)?;
        let mut points = 0;
        let mut violations = Vec::new();
        for kind in MechanismKind::ALL {
            let report = truthfulness_audit_with_values(
                self.instance,
                &self.values,
                kind,
                Some(&self.epsilon),
                &grid,
                self.guards,
            )?;
            points += report.points_checked;
            violations.extend(report.violations.iter().map(|v| format!("{kind}: {v}")));
        }
        let passed = violations.is_empty();
        Ok(Check {
            name: "truthful",
            passed,
            detail: format!("{points} (agent, bid) points, {} violations", violations.len()),
            witness: (!passed).then(|| json!(violations)),
        })
    }

    fn majorization(&self) -> CliResult<Check> {
        let weights = self.instance.weights();
        let outcome = run_auction_with(self.instance, MechanismKind::Mms, Some(&self.epsilon), self.guards)?;
        let (best, _, _) = self.oracle.opt_mms(self.instance)?;
        let alg = outcome.allocation.partition().sorted_weights(weights)?;
        let opt = best.partition().sorted_weights(weights)?;
        let mms_ok = beta_majorizes(&alg, &opt, &rat(1))?;

        let rr = run_auction_with(self.instance, MechanismKind::Ef1, None, self.guards)?;
        let rr = rr.allocation.partition().sorted_weights(weights)?;
        let shapes: BTreeSet<Vec<Rational>> = self
            .oracle
            .ef1_partitions(self.instance)?
            .iter()
            .map(|p| p.sorted_weights(weights))
            .collect::<Result<_, _>>()?;
        let half = ratio(1, 2);
        let mut failing = None;
        for shape in &shapes {
            if !beta_majorizes(&rr, shape, &half)? {
                failing = Some(shape.clone());
                break;
            }
        }
        let passed = mms_ok && failing.is_none();
        Ok(Check {
            name: "majorization",
            passed,
            detail: format!(
                "MMS partition majorizes the optimum: {mms_ok}; round-robin 1/2-majorizes {} EF1 weight sequences: {}",
                shapes.len(),
                failing.is_none()
            ),
            witness: (!passed).then(|| {
                json!({
                    "mms_partition": strings(&alg),
                    "mms_optimum": strings(&opt),
                    "round_robin": strings(&rr),
                    "ef1_sequence": failing.map(|s| strings(&s)),
                })
            }),
        })
    }
}

pub fn run(args: &VerifyArgs, guards: &Guards) -> CliResult {
    let file: InstanceFile = read_json(&args.input)?;
    let instance = file.instance()?;
    let values = file.values();
    if values.len() != instance.n() || values.iter().any(|v| v < &rat(0)) {
        return Err(CliError::Input("values must be one non-negative number per agent".into()));
    }
    let ctx = Context {
        instance: &instance,
        values,
        epsilon: args.epsilon.clone().or_else(|| file.epsilon()).unwrap_or_else(|| ratio(1, 10)),
        guards,
        oracle: Oracle::new(guards.oracle),
    };
    let all = !(args.ef1_approx || args.mms_fairness || args.mms_welfare || args.truthful || args.majorization);
    let mut checks = Vec::new();
    if all || args.ef1_approx {
        checks.push(ctx.ef1_approx()?);
    }
    if all || args.mms_fairness {
        checks.push(ctx.mms_fairness()?);
    }
    if all || args.mms_welfare {
        checks.push(ctx.mms_welfare()?);
    }
    if all || args.truthful {
        checks.push(ctx.truthful(&args.grid_step)?);
    }
    if all || args.majorization {
        checks.push(ctx.majorization()?);
    }
    for c in &checks {
        eprintln!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
    let report = Report {
        input: args.input.display().to_string(),
        passed: failed.is_empty(),
        checks,
    };
    write_json(args.report.as_deref(), &report)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Violation(format!("failed checks: {}", failed.join(", "))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spans_twice_the_top_bid() {
        let points = deviation_points(&[rat(2)], &[rat(1)], &ratio(1, 2)).unwrap();
        assert_eq!(points.first(), Some(&rat(0)));
        assert_eq!(points.last(), Some(&rat(5)));
        assert_eq!(points.len(), 11);
        assert!(deviation_points(&[rat(1)], &[], &rat(0)).is_err());
    }
}
