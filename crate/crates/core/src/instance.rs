//! Instances, partitions and allocations.
//!
//! Goods and agents are 0-based throughout. Every type here is an immutable
//! value once constructed.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};
use crate::Rational;

/// A single-parameter fair-auction instance: public good weights and the
/// agents' reported per-unit bids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance<T = Rational> {
    weights: Vec<T>,
    bids: Vec<T>,
}

/// A reason an [`Instance`] is malformed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NegativeWeight(usize),
    NegativeBid(usize),
    IncomparableWeight(usize),
    IncomparableBid(usize),
    NoAgents,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NegativeWeight(i) => write!(f, "negative weight at index {i}"),
            Violation::NegativeBid(i) => write!(f, "negative bid at index {i}"),
            Violation::IncomparableWeight(i) => write!(f, "non-finite weight at index {i}"),
            Violation::IncomparableBid(i) => write!(f, "non-finite bid at index {i}"),
            Violation::NoAgents => write!(f, "instance has no agents"),
        }
    }
}

fn sign_violations<T: Scalar>(
    values: &[T],
    negative: fn(usize) -> Violation,
    incomparable: fn(usize) -> Violation,
) -> impl Iterator<Item = Violation> + '_ {
    let zero = T::zero();
    values
        .iter()
        .enumerate()
        .filter_map(move |(i, v)| match v.partial_cmp(&zero) {
            None => Some(incomparable(i)),
            Some(std::cmp::Ordering::Less) => Some(negative(i)),
            _ => None,
        })
}

impl<T: Scalar> Instance<T> {
    /// Builds a validated instance.
    pub fn new(weights: Vec<T>, bids: Vec<T>) -> Result<Self> {
        let instance = Self::new_unchecked(weights, bids);
        instance.validate().map_err(|violations| {
            Error::InvalidInstance(violations.iter().map(ToString::to_string).collect())
        })?;
        Ok(instance)
    }

    /// Builds an instance without validation; use [`Instance::validate`]
    /// before handing it to a solver.
    pub fn new_unchecked(weights: Vec<T>, bids: Vec<T>) -> Self {
        Self { weights, bids }
    }

    /// Lists every violation: negative weights, negative bids, or no agents.
    /// An instance with no goods is legal.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut violations: Vec<Violation> = sign_violations(
            &self.weights,
            Violation::NegativeWeight,
            Violation::IncomparableWeight,
        )
        .chain(sign_violations(
            &self.bids,
            Violation::NegativeBid,
            Violation::IncomparableBid,
        ))
        .collect();
        if self.bids.is_empty() {
            violations.push(Violation::NoAgents);
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn bids(&self) -> &[T] {
        &self.bids
    }

    /// Number of goods.
    pub fn m(&self) -> usize {
        self.weights.len()
    }

    /// Number of agents.
    pub fn n(&self) -> usize {
        self.bids.len()
    }

    pub fn total_weight(&self) -> T {
        scalar::sum(&self.weights)
    }

    /// Same goods, different bid profile.
    pub fn with_bids(&self, bids: Vec<T>) -> Result<Self> {
        Self::new(self.weights.clone(), bids)
    }
}

/// An n-partition of the goods `0..m`; bundles may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    goods: usize,
    bundles: Vec<Vec<usize>>,
}

impl Partition {
    /// Checks that `bundles` are pairwise disjoint and cover `0..goods`.
    /// Good indices inside each bundle are stored in ascending order.
    pub fn new(bundles: Vec<Vec<usize>>, goods: usize) -> Result<Self> {
        if bundles.is_empty() {
            return Err(Error::InvalidPartition("no bundles".into()));
        }
        let mut seen = vec![false; goods];
        for bundle in &bundles {
            for &g in bundle {
                if g >= goods {
                    return Err(Error::GoodOutOfRange { index: g, goods });
                }
                if std::mem::replace(&mut seen[g], true) {
                    return Err(Error::InvalidPartition(format!("good {g} appears twice")));
                }
            }
        }
        if let Some(g) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("good {g} is not assigned")));
        }
        Ok(Self::from_bundles_unchecked(bundles, goods))
    }

    /// `owners[g]` is the bundle holding good `g`.
    pub fn from_owners(owners: &[usize], bundles: usize) -> Result<Self> {
        if bundles == 0 {
            return Err(Error::InvalidPartition("no bundles".into()));
        }
        let mut out = vec![Vec::new(); bundles];
        for (g, &b) in owners.iter().enumerate() {
            if b >= bundles {
                return Err(Error::InvalidPartition(format!(
                    "good {g} assigned to bundle {b} of {bundles}"
                )));
            }
            out[b].push(g);
        }
        Ok(Self {
            goods: owners.len(),
            bundles: out,
        })
    }

    pub(crate) fn from_bundles_unchecked(mut bundles: Vec<Vec<usize>>, goods: usize) -> Self {
        for bundle in &mut bundles {
            bundle.sort_unstable();
        }
        Self { goods, bundles }
    }

    pub fn bundles(&self) -> &[Vec<usize>] {
        &self.bundles
    }

    pub fn bundle(&self, index: usize) -> &[usize] {
        &self.bundles[index]
    }

    /// Number of bundles.
    pub fn n(&self) -> usize {
        self.bundles.len()
    }

    /// Number of goods partitioned.
    pub fn m(&self) -> usize {
        self.goods
    }

    pub fn owners(&self) -> Vec<usize> {
        let mut owners = vec![0; self.goods];
        for (b, bundle) in self.bundles.iter().enumerate() {
            for &g in bundle {
                owners[g] = b;
            }
        }
        owners
    }

    /// Weight of every bundle, in bundle order.
    pub fn bundle_weights<T: Scalar>(&self, weights: &[T]) -> Result<Vec<T>> {
        if weights.len() != self.goods {
            return Err(Error::LengthMismatch {
                expected: self.goods,
                actual: weights.len(),
            });
        }
        Ok(self
            .bundles
            .iter()
            .map(|b| scalar::sum(b.iter().map(|&g| &weights[g])))
            .collect())
    }

    /// Bundle weights sorted non-increasing.
    pub fn sorted_weights<T: Scalar>(&self, weights: &[T]) -> Result<Vec<T>> {
        let mut loads = self.bundle_weights(weights)?;
        loads.sort_by(|a, b| scalar::cmp(b, a));
        Ok(loads)
    }

    pub(crate) fn ensure_fits<T>(&self, instance: &Instance<T>) -> Result<()> {
        if self.goods != instance.weights.len() {
            return Err(Error::LengthMismatch {
                expected: instance.weights.len(),
                actual: self.goods,
            });
        }
        if self.bundles.len() != instance.bids.len() {
            return Err(Error::LengthMismatch {
                expected: instance.bids.len(),
                actual: self.bundles.len(),
            });
        }
        Ok(())
    }
}

/// A partition bound to agents: agent `i` receives bundle `assignment[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Allocation {
    partition: Partition,
    assignment: Vec<usize>,
}

impl Allocation {
    pub fn new(partition: Partition, assignment: Vec<usize>) -> Result<Self> {
        let n = partition.n();
        if assignment.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: assignment.len(),
            });
        }
        let mut used = vec![false; n];
        for &b in &assignment {
            if b >= n || std::mem::replace(&mut used[b], true) {
                return Err(Error::InvalidParameter(format!(
                    "assignment {assignment:?} is not a permutation"
                )));
            }
        }
        Ok(Self {
            partition,
            assignment,
        })
    }

    /// Agent `i` receives bundle `i`.
    pub fn identity(partition: Partition) -> Self {
        let assignment = (0..partition.n()).collect();
        Self {
            partition,
            assignment,
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn bundle_of(&self, agent: usize) -> &[usize] {
        self.partition.bundle(self.assignment[agent])
    }

    /// Bundles listed in agent order.
    pub fn agent_bundles(&self) -> Vec<Vec<usize>> {
        (0..self.assignment.len())
            .map(|i| self.bundle_of(i).to_vec())
            .collect()
    }

    /// Weight of each agent's bundle, in agent order.
    pub fn agent_weights<T: Scalar>(&self, weights: &[T]) -> Result<Vec<T>> {
        let loads = self.partition.bundle_weights(weights)?;
        Ok(self.assignment.iter().map(|&b| loads[b].clone()).collect())
    }
}
