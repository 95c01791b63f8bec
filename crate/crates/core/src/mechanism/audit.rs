use std::fmt;

use crate::error::{Error, Result};
use crate::guard::Guards;
use crate::instance::Instance;
use crate::mechanism::{allocation_curve, fair_partition, jump_payment, myerson_payment, others, MechanismKind};
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditViolation<T> {
    /// Bidding `deviation` instead of the true value gains `gain > 0`.
    ProfitableDeviation { agent: usize, deviation: T, gain: T },
    /// Truthful utility is negative.
    IndividualRationality { agent: usize, utility: T },
    /// The agent's allocation curve decreases somewhere.
    NonMonotone { agent: usize },
    /// The integral and jump forms of the payment disagree.
    PaymentMismatch { agent: usize, bid: T, integral: T, jump: T },
    /// Payment outside `[0, bid * weight received]`.
    PaymentOutOfBounds { agent: usize, bid: T, payment: T },
}

impl<T: fmt::Display> fmt::Display for AuditViolation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuditViolation::ProfitableDeviation { agent, deviation, gain } => {
                write!(f, "agent {agent} gains {gain} by bidding {deviation}")
            }
            AuditViolation::IndividualRationality { agent, utility } => {
                write!(f, "agent {agent} has truthful utility {utility}")
            }
            AuditViolation::NonMonotone { agent } => {
                write!(f, "allocation curve of agent {agent} is not monotone")
            }
            AuditViolation::PaymentMismatch { agent, bid, integral, jump } => write!(
                f,
                "agent {agent} at bid {bid}: integral payment {integral} != jump payment {jump}"
            ),
            AuditViolation::PaymentOutOfBounds { agent, bid, payment } => {
                write!(f, "agent {agent} at bid {bid}: payment {payment} out of bounds")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport<T> {
    pub kind: MechanismKind,
    /// Number of (agent, bid) points evaluated.
    pub points_checked: usize,
    pub violations: Vec<AuditViolation<T>>,
}

impl<T> AuditReport<T> {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The supplied bids plus every breakpoint and the points just either side
/// of it, sorted and deduplicated. Negative points are dropped.
///
/// The offset is `min(1/1000, half the smallest gap between breakpoints)`,
/// so no offset point crosses a neighbouring breakpoint.
pub fn deviation_grid<T: Scalar>(breakpoints: &[T], supplied: &[T]) -> Vec<T> {
    let mut offset = T::ratio(1, 1000);
    for pair in breakpoints.windows(2) {
        let gap = (pair[1].clone() - pair[0].clone()) / T::from_usize_lossless(2);
        if gap > T::zero() {
            offset = scalar::min(offset, gap);
        }
    }
    if let Some(first) = breakpoints.first() {
        if first > &T::zero() {
            offset = scalar::min(offset, first.clone() / T::from_usize_lossless(2));
        }
    }
    let mut grid: Vec<T> = supplied.to_vec();
    for b in breakpoints {
        grid.push(b.clone());
        grid.push(b.clone() + offset.clone());
        grid.push(b.clone() - offset.clone());
    }
    grid.retain(|z| z >= &T::zero());
    grid.sort_by(scalar::cmp);
    grid.dedup();
    grid
}

/// Audits the mechanism with values equal to the bids.
pub fn truthfulness_audit<T: Scalar>(
    instance: &Instance<T>,
    kind: MechanismKind,
    epsilon: Option<&T>,
    deviations: &[T],
) -> Result<AuditReport<T>> {
    truthfulness_audit_with_values(instance, instance.bids(), kind, epsilon, deviations, &Guards::default())
}

/// For every agent `i`, compares the utility `values[i] * weight - payment`
/// of bidding `values[i]` against every point of the deviation grid, with
/// the other agents' bids fixed at the instance bids.
///
/// The partition is computed once: the mechanisms never read bids, so it is
/// the same under every deviation.
pub fn truthfulness_audit_with_values<T: Scalar>(
    instance: &Instance<T>,
    values: &[T],
    kind: MechanismKind,
    epsilon: Option<&T>,
    deviations: &[T],
    guards: &Guards,
) -> Result<AuditReport<T>> {
    if values.len() != instance.n() {
        return Err(Error::LengthMismatch {
            expected: instance.n(),
            actual: values.len(),
        });
    }
    if let Some(bad) = deviations.iter().chain(values).find(|z| *z < &T::zero()) {
        return Err(Error::InvalidParameter(format!("negative bid {bad} in audit")));
    }
    let partition = fair_partition(instance, kind, epsilon, guards)?.partition;
    let weights = instance.weights();
    let mut report = AuditReport {
        kind,
        points_checked: 0,
        violations: Vec::new(),
    };
    for (agent, value) in values.iter().enumerate() {
        let curve = allocation_curve(&partition, weights, agent, &others(instance.bids(), agent))?;
        if !curve.is_monotone() {
            report.violations.push(AuditViolation::NonMonotone { agent });
        }
        let utility_at = |bid: &T, report: &mut AuditReport<T>| {
            report.points_checked += 1;
            let level = curve.level(bid);
            let integral = myerson_payment(&curve, bid);
            let jump = jump_payment(&curve, bid);
            if integral != jump {
                report.violations.push(AuditViolation::PaymentMismatch {
                    agent,
                    bid: bid.clone(),
                    integral: integral.clone(),
                    jump,
                });
            }
            if integral < T::zero() || integral > bid.clone() * level.clone() {
                report.violations.push(AuditViolation::PaymentOutOfBounds {
                    agent,
                    bid: bid.clone(),
                    payment: integral.clone(),
                });
            }
            value.clone() * level - integral
        };
        let truthful = utility_at(value, &mut report);
        if truthful < T::zero() {
            report.violations.push(AuditViolation::IndividualRationality {
                agent,
                utility: truthful.clone(),
            });
        }
        for deviation in deviation_grid(&curve.breakpoints(), deviations) {
            let gain = utility_at(&deviation, &mut report) - truthful.clone();
            if gain > T::zero() {
                report.violations.push(AuditViolation::ProfitableDeviation { agent, deviation, gain });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio, Rational};

    fn inst(weights: &[i64], bids: &[i64]) -> Instance {
        Instance::new(weights.iter().map(|&w| rat(w)).collect(), bids.iter().map(|&b| rat(b)).collect()).unwrap()
    }

    fn half_steps(upto: i64) -> Vec<Rational> {
        (0..=2 * upto).map(|k| ratio(k, 2)).collect()
    }

    #[test]
    fn ef1_example_is_truthful() {
        let i = inst(&[5, 4, 3, 2], &[10, 1]);
        let report = truthfulness_audit(&i, MechanismKind::Ef1, None, &half_steps(20)).unwrap();
        assert!(report.is_clean(), "{:?}", report.violations);
        assert!(report.points_checked > 80);
    }

    #[test]
    fn all_mechanisms_with_ties() {
        let i = inst(&[7, 5, 5, 2, 1, 1], &[3, 3, 1]);
        for kind in MechanismKind::ALL {
            let report = truthfulness_audit(&i, kind, Some(&ratio(1, 4)), &half_steps(6)).unwrap();
            assert!(report.is_clean(), "{kind}: {:?}", report.violations);
        }
    }

    #[test]
    fn grid_straddles_breakpoints() {
        let grid = deviation_grid(&[rat(0), ratio(1, 1000), rat(2)], &[rat(5)]);
        assert!(grid.contains(&ratio(1, 2000)));
        assert!(grid.contains(&(rat(2) - ratio(1, 2000))));
        assert!(grid.contains(&rat(5)));
        assert!(grid.iter().all(|z| z >= &rat(0)));
        assert!(grid.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn explicit_values_differ_from_bids() {
        // agent 0 bid 1 but values the goods at 4; bidding 4 wins the
        // heavy good at price 2 * (3 - 1), which no other bid beats
        let i = inst(&[3, 1], &[1, 2]);
        let values = vec![rat(4), rat(2)];
        let report =
            truthfulness_audit_with_values(&i, &values, MechanismKind::Ef1, None, &half_steps(6), &Guards::default())
                .unwrap();
        assert!(report.is_clean(), "{:?}", report.violations);
    }

    #[test]
    fn negative_deviation_rejected() {
        let i = inst(&[1], &[1]);
        assert!(truthfulness_audit(&i, MechanismKind::Ef1, None, &[rat(-1)]).is_err());
    }
}
