use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::instance::{Allocation, Partition};
use crate::scalar::{self, Scalar};

/// Bundles ranked by weight (heaviest first, lower index on ties).
fn bundle_ranking<T: Scalar>(loads: &[T]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..loads.len()).collect();
    order.sort_by(|&a, &b| scalar::cmp(&loads[b], &loads[a]).then(a.cmp(&b)));
    order
}

/// Hands the `j`-th heaviest bundle to the `j`-th highest bidder. Equal
/// bids are ranked by lower agent index; equal bundles by lower bundle index.
pub fn sorted_allocation<T: Scalar>(partition: &Partition, weights: &[T], bids: &[T]) -> Result<Allocation> {
    if bids.len() != partition.n() {
        return Err(Error::LengthMismatch {
            expected: partition.n(),
            actual: bids.len(),
        });
    }
    let bundles = bundle_ranking(&partition.bundle_weights(weights)?);
    let mut agents: Vec<usize> = (0..bids.len()).collect();
    agents.sort_by(|&a, &b| scalar::cmp(&bids[b], &bids[a]).then(a.cmp(&b)));
    let mut assignment = vec![0; bids.len()];
    for (agent, bundle) in agents.into_iter().zip(bundles) {
        assignment[agent] = bundle;
    }
    Allocation::new(partition.clone(), assignment)
}

/// A bid at which an agent's bundle may change. The agent has passed the
/// threshold at bid `z` when `z > bid`, or when `z == bid` and `inclusive`
/// (the agent wins the tie).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Threshold<T> {
    pub bid: T,
    pub inclusive: bool,
}

impl<T: Scalar> Threshold<T> {
    pub fn passed_at(&self, z: &T) -> bool {
        match scalar::cmp(z, &self.bid) {
            Ordering::Greater => true,
            Ordering::Equal => self.inclusive,
            Ordering::Less => false,
        }
    }
}

/// The weight an agent receives as a function of its own bid, others fixed.
///
/// `levels[k]` applies once exactly the first `k` thresholds are passed.
/// The curve is right-continuous except where a tie is lost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFunction<T> {
    thresholds: Vec<Threshold<T>>,
    levels: Vec<T>,
}

impl<T: Scalar> StepFunction<T> {
    /// `levels` must have one more entry than `thresholds`, and thresholds
    /// must be ordered by bid, inclusive ones first at equal bids.
    pub fn new(thresholds: Vec<Threshold<T>>, levels: Vec<T>) -> Result<Self> {
        if levels.len() != thresholds.len() + 1 {
            return Err(Error::LengthMismatch {
                expected: thresholds.len() + 1,
                actual: levels.len(),
            });
        }
        let ordered = thresholds.windows(2).all(|p| {
            match scalar::cmp(&p[0].bid, &p[1].bid) {
                Ordering::Less => true,
                Ordering::Equal => p[0].inclusive && !p[1].inclusive,
                Ordering::Greater => false,
            }
        });
        if !ordered {
            return Err(Error::InvalidParameter("thresholds out of order".into()));
        }
        Ok(Self { thresholds, levels })
    }

    pub fn constant(level: T) -> Self {
        Self {
            thresholds: Vec::new(),
            levels: vec![level],
        }
    }

    pub fn thresholds(&self) -> &[Threshold<T>] {
        &self.thresholds
    }

    pub fn levels(&self) -> &[T] {
        &self.levels
    }

    /// Distinct threshold bids, ascending.
    pub fn breakpoints(&self) -> Vec<T> {
        let mut out: Vec<T> = Vec::with_capacity(self.thresholds.len());
        for t in &self.thresholds {
            if out.last() != Some(&t.bid) {
                out.push(t.bid.clone());
            }
        }
        out
    }

    fn passed(&self, z: &T) -> usize {
        self.thresholds.iter().take_while(|t| t.passed_at(z)).count()
    }

    pub fn level(&self, z: &T) -> T {
        self.levels[self.passed(z)].clone()
    }

    pub fn is_monotone(&self) -> bool {
        self.levels.windows(2).all(|p| p[0] <= p[1])
    }

    /// `integral_0^z level(x) dx` for `z >= 0`.
    pub fn integral(&self, z: &T) -> T {
        let mut area = T::zero();
        let mut from = T::zero();
        let mut current = &self.levels[0];
        for (t, next) in self.thresholds.iter().zip(&self.levels[1..]) {
            if &t.bid >= z {
                break;
            }
            if t.bid > from {
                area = area + (t.bid.clone() - from) * current.clone();
                from = t.bid.clone();
            }
            current = next;
        }
        if z > &from {
            area = area + (z.clone() - from) * current.clone();
        }
        area
    }
}

/// The curve of `agent` against the other agents' bids, listed in agent
/// order with `agent` itself skipped.
pub fn allocation_curve<T: Scalar>(
    partition: &Partition,
    weights: &[T],
    agent: usize,
    other_bids: &[T],
) -> Result<StepFunction<T>> {
    let n = partition.n();
    if agent >= n {
        return Err(Error::AgentOutOfRange { index: agent, agents: n });
    }
    if other_bids.len() + 1 != n {
        return Err(Error::LengthMismatch {
            expected: n - 1,
            actual: other_bids.len(),
        });
    }
    let mut sorted = partition.bundle_weights(weights)?;
    sorted.sort_by(|a, b| scalar::cmp(b, a));

    let mut others: Vec<Threshold<T>> = other_bids
        .iter()
        .enumerate()
        .map(|(pos, bid)| {
            let k = if pos < agent { pos } else { pos + 1 };
            Threshold {
                bid: bid.clone(),
                inclusive: agent < k,
            }
        })
        .collect();
    others.sort_by(|a, b| scalar::cmp(&a.bid, &b.bid).then(b.inclusive.cmp(&a.inclusive)));

    // group equal thresholds; passing a group of size s lifts the rank by s
    let mut thresholds: Vec<Threshold<T>> = Vec::new();
    let mut levels = vec![sorted[n - 1].clone()];
    let mut beaten = 0;
    for t in others {
        beaten += 1;
        let level = sorted[n - 1 - beaten].clone();
        if thresholds.last() == Some(&t) {
            *levels.last_mut().expect("nonempty") = level;
        } else {
            thresholds.push(t);
            levels.push(level);
        }
    }
    StepFunction::new(thresholds, levels)
}

/// `bid * level(bid) - integral_0^bid level(z) dz`, for `bid >= 0`.
pub fn myerson_payment<T: Scalar>(curve: &StepFunction<T>, bid: &T) -> T {
    bid.clone() * curve.level(bid) - curve.integral(bid)
}

/// The same payment as a sum of threshold times weight jump over every
/// threshold passed at `bid`.
pub fn jump_payment<T: Scalar>(curve: &StepFunction<T>, bid: &T) -> T {
    let passed = curve.passed(bid);
    curve.thresholds[..passed]
        .iter()
        .zip(curve.levels.windows(2))
        .fold(T::zero(), |acc, (t, pair)| {
            acc + t.bid.clone() * (pair[1].clone() - pair[0].clone())
        })
}
