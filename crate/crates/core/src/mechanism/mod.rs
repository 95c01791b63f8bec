//! Sorted allocation of a bid-oblivious partition, Myerson payments, and
//! truthfulness audits.

mod audit;
mod payment;

pub use audit::{
    deviation_grid, truthfulness_audit, truthfulness_audit_with_values, AuditReport, AuditViolation,
};
pub use payment::{
    allocation_curve, jump_payment, myerson_payment, sorted_allocation, StepFunction, Threshold,
};

use std::fmt;
use std::str::FromStr;

use crate::ef1::solve_fa_ef1;
use crate::error::{Error, Result};
use crate::fairness::{social_welfare, FairnessMargins};
use crate::guard::Guards;
use crate::instance::{Allocation, Instance, Partition};
use crate::mms::{exact_mms_with_guard, solve_fa_mms_with_guard, AlgTrace, MmsEstimate};
use crate::nsw::solve_fa_nsw_with_guard;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MechanismKind {
    Ef1,
    Mms,
    Nsw,
}

impl MechanismKind {
    pub const ALL: [MechanismKind; 3] = [MechanismKind::Ef1, MechanismKind::Mms, MechanismKind::Nsw];

    pub fn as_str(self) -> &'static str {
        match self {
            MechanismKind::Ef1 => "ef1",
            MechanismKind::Mms => "mms",
            MechanismKind::Nsw => "nsw",
        }
    }
}

impl fmt::Display for MechanismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MechanismKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ef1" => Ok(MechanismKind::Ef1),
            "mms" => Ok(MechanismKind::Mms),
            "nsw" => Ok(MechanismKind::Nsw),
            other => Err(Error::InvalidParameter(format!("unknown mechanism {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MechanismOutcome<T> {
    pub kind: MechanismKind,
    pub allocation: Allocation,
    pub payments: Vec<T>,
    /// Social welfare at the reported bids.
    pub welfare: T,
    pub fairness: FairnessMargins<T>,
    /// The exact maximin share, when it was computed.
    pub mu: Option<T>,
    pub estimate: Option<MmsEstimate<T>>,
    pub trace: Option<AlgTrace>,
}

/// The bid-oblivious partition of a mechanism, with the MMS diagnostics.
pub(crate) struct FairPartition<T> {
    pub partition: Partition,
    pub estimate: Option<MmsEstimate<T>>,
    pub trace: Option<AlgTrace>,
}

pub(crate) fn fair_partition<T: Scalar>(
    instance: &Instance<T>,
    kind: MechanismKind,
    epsilon: Option<&T>,
    guards: &Guards,
) -> Result<FairPartition<T>> {
    Ok(match kind {
        MechanismKind::Ef1 => FairPartition {
            partition: solve_fa_ef1(instance)?,
            estimate: None,
            trace: None,
        },
        MechanismKind::Mms => {
            let epsilon = epsilon.ok_or(Error::MissingEpsilon)?;
            let (partition, estimate, trace) = solve_fa_mms_with_guard(instance, epsilon, guards.exact_mms)?;
            FairPartition {
                partition,
                estimate: Some(estimate),
                trace: Some(trace),
            }
        }
        MechanismKind::Nsw => FairPartition {
            partition: solve_fa_nsw_with_guard(instance, guards.nsw)?,
            estimate: None,
            trace: None,
        },
    })
}

/// Bids of everyone but `agent`, in agent order.
pub(crate) fn others<T: Clone>(bids: &[T], agent: usize) -> Vec<T> {
    bids.iter()
        .enumerate()
        .filter(|&(k, _)| k != agent)
        .map(|(_, b)| b.clone())
        .collect()
}

/// Runs a mechanism with the default size guards. `epsilon` is required for
/// [`MechanismKind::Mms`] and ignored otherwise.
pub fn run_auction<T: Scalar>(
    instance: &Instance<T>,
    kind: MechanismKind,
    epsilon: Option<&T>,
) -> Result<MechanismOutcome<T>> {
    run_auction_with(instance, kind, epsilon, &Guards::default())
}

pub fn run_auction_with<T: Scalar>(
    instance: &Instance<T>,
    kind: MechanismKind,
    epsilon: Option<&T>,
    guards: &Guards,
) -> Result<MechanismOutcome<T>> {
    let FairPartition {
        partition,
        estimate,
        trace,
    } = fair_partition(instance, kind, epsilon, guards)?;
    let weights = instance.weights();
    let bids = instance.bids();
    let allocation = sorted_allocation(&partition, weights, bids)?;
    let payments = (0..instance.n())
        .map(|agent| {
            let curve = allocation_curve(&partition, weights, agent, &others(bids, agent))?;
            Ok(myerson_payment(&curve, &bids[agent]))
        })
        .collect::<Result<Vec<T>>>()?;

    let mu = match &estimate {
        Some(e) if e.exact => Some(e.mu_bar.clone()),
        _ if guards.exact_mms.admits(instance.m(), instance.n()) => {
            Some(exact_mms_with_guard(weights, instance.n(), guards.exact_mms)?)
        }
        _ => None,
    };
    let fairness = FairnessMargins::compute(weights, &partition, mu.as_ref())?;
    let welfare = social_welfare(instance, &allocation)?;
    Ok(MechanismOutcome {
        kind,
        allocation,
        payments,
        welfare,
        fairness,
        mu,
        estimate,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mms::Phase;
    use crate::{rat, ratio, Rational};

    fn inst(weights: &[i64], bids: &[i64]) -> Instance {
        Instance::new(weights.iter().map(|&w| rat(w)).collect(), bids.iter().map(|&b| rat(b)).collect()).unwrap()
    }

    #[test]
    fn ef1_example() {
        let i = inst(&[5, 4, 3, 2], &[10, 1]);
        let out = run_auction(&i, MechanismKind::Ef1, None).unwrap();
        assert_eq!(out.allocation.agent_weights(i.weights()).unwrap(), vec![rat(8), rat(6)]);
        assert_eq!(out.payments, vec![rat(2), rat(0)]);
        assert_eq!(out.welfare, rat(86));
        assert!(out.fairness.is_ef1());
    }

    #[test]
    fn mms_running_example() {
        let i = inst(&[10, 6, 5, 1, 1, 1], &[3, 2, 1]);
        let out = run_auction(&i, MechanismKind::Mms, Some(&ratio(1, 10))).unwrap();
        assert_eq!(out.allocation.agent_weights(i.weights()).unwrap(), vec![rat(13), rat(6), rat(5)]);
        assert_eq!(out.payments, vec![rat(15), rat(1), rat(0)]);
        assert_eq!(out.welfare, rat(56));
        assert_eq!(out.mu, Some(rat(7)));
        assert_eq!(out.fairness.mms_ratio, Some(ratio(5, 7)));
        assert_eq!(out.trace.unwrap().phase_reached, Phase::Four);
    }

    #[test]
    fn mms_needs_epsilon() {
        let i = inst(&[1, 1], &[1, 1]);
        assert_eq!(run_auction(&i, MechanismKind::Mms, None).unwrap_err(), Error::MissingEpsilon);
    }

    #[test]
    fn single_agent_pays_nothing() {
        let i = inst(&[4, 1, 7], &[9]);
        for kind in MechanismKind::ALL {
            let out = run_auction(&i, kind, Some(&ratio(1, 4))).unwrap();
            assert_eq!(out.payments, vec![rat(0)]);
            assert_eq!(out.allocation.agent_weights(i.weights()).unwrap(), vec![rat(12)]);
        }
    }

    #[test]
    fn nsw_guard_is_surfaced() {
        let i: Instance<Rational> = Instance::new(vec![rat(1); 15], vec![rat(1), rat(2)]).unwrap();
        assert!(matches!(
            run_auction(&i, MechanismKind::Nsw, None),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn kind_round_trips_through_strings() {
        for kind in MechanismKind::ALL {
            assert_eq!(kind.to_string().parse::<MechanismKind>().unwrap(), kind);
        }
        assert!("efx".parse::<MechanismKind>().is_err());
    }
}
