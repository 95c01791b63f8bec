//! Exhaustive reference solvers. Exponential; for certifying the
//! polynomial algorithms on small instances only.

use std::cmp::Ordering;

use crate::error::Result;
use crate::fairness::partition_is_ef1;
use crate::guard::SizeGuard;
use crate::instance::{Allocation, Instance, Partition};
use crate::mechanism::sorted_allocation;
use crate::scalar::{self, Scalar};

const GUARD_HINT: &str = "; brute-force oracles are exponential";

/// Whether bundles are labelled (agent-ordered) or interchangeable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Labels {
    /// Every map from goods to bundles: `n^m` partitions.
    Ordered,
    /// One representative per set partition into at most `n` blocks, with
    /// blocks numbered by first appearance and empty bundles last.
    Unordered,
}

/// Streams partitions of `0..m` into `n` bundles.
#[derive(Debug, Clone)]
pub struct Partitions {
    owners: Vec<usize>,
    n: usize,
    labels: Labels,
    done: bool,
}

impl Partitions {
    fn advance(&mut self) -> bool {
        let m = self.owners.len();
        match self.labels {
            Labels::Ordered => {
                for i in (0..m).rev() {
                    if self.owners[i] + 1 < self.n {
                        self.owners[i] += 1;
                        self.owners[i + 1..].fill(0);
                        return true;
                    }
                }
                false
            }
            Labels::Unordered => {
                for i in (1..m).rev() {
                    let prefix_max = self.owners[..i].iter().copied().max().unwrap_or(0);
                    if self.owners[i] + 1 < self.n && self.owners[i] <= prefix_max {
                        self.owners[i] += 1;
                        self.owners[i + 1..].fill(0);
                        return true;
                    }
                }
                false
            }
        }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let current = Partition::from_owners(&self.owners, self.n).expect("owners below n");
        self.done = !self.advance();
        Some(current)
    }
}

/// Sum of bids times bundle weights when both are sorted non-increasing,
/// which is the best assignment of a fixed partition.
fn sorted_welfare<T: Scalar>(bids_desc: &[T], loads_desc: &[T]) -> T {
    bids_desc
        .iter()
        .zip(loads_desc)
        .fold(T::zero(), |acc, (b, w)| acc + b.clone() * w.clone())
}

fn lex_cmp<T: Scalar>(a: &[T], b: &[T]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| scalar::cmp(x, y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Depth-first walk over set partitions of the goods into at most `n`
/// blocks (restricted growth strings), keeping each block's load, heaviest
/// good and size current.
struct Walk<'a, T> {
    weights: &'a [T],
    /// `remaining[g]` is the weight of goods `g..`.
    remaining: Vec<T>,
    owners: Vec<usize>,
    loads: Vec<T>,
    peaks: Vec<T>,
    sizes: Vec<usize>,
}

trait Visitor<T> {
    /// Whether no completion of the current prefix (goods before `next`)
    /// can matter.
    fn prune(&mut self, _walk: &Walk<'_, T>, _next: usize) -> bool {
        false
    }

    fn leaf(&mut self, walk: &Walk<'_, T>);
}

impl<'a, T: Scalar> Walk<'a, T> {
    fn new(weights: &'a [T], n: usize) -> Self {
        let mut remaining = vec![T::zero(); weights.len() + 1];
        for g in (0..weights.len()).rev() {
            remaining[g] = remaining[g + 1].clone() + weights[g].clone();
        }
        Self {
            weights,
            remaining,
            owners: vec![0; weights.len()],
            loads: vec![T::zero(); n],
            peaks: vec![T::zero(); n],
            sizes: vec![0; n],
        }
    }

    fn run(&mut self, visitor: &mut impl Visitor<T>) {
        if !self.loads.is_empty() {
            self.descend(0, 0, visitor);
        }
    }

    fn descend(&mut self, g: usize, opened: usize, visitor: &mut impl Visitor<T>) {
        if visitor.prune(self, g) {
            return;
        }
        if g == self.weights.len() {
            visitor.leaf(self);
            return;
        }
        let w = &self.weights[g];
        for b in 0..(opened + 1).min(self.loads.len()) {
            self.owners[g] = b;
            self.sizes[b] += 1;
            let load = self.loads[b].clone();
            let peak = self.peaks[b].clone();
            self.loads[b] = load.clone() + w.clone();
            if w > &peak {
                self.peaks[b] = w.clone();
            }
            self.descend(g + 1, opened.max(b + 1), visitor);
            self.loads[b] = load;
            self.peaks[b] = peak;
            self.sizes[b] -= 1;
        }
    }

    fn sorted_loads(&self) -> Vec<T> {
        let mut loads = self.loads.clone();
        loads.sort_by(|a, b| scalar::cmp(b, a));
        loads
    }

    /// EF1 depends only on the lightest load and on each nonempty block's
    /// load without its heaviest good.
    fn is_ef1(&self) -> bool {
        let least = self.loads.iter().cloned().reduce(scalar::min).expect("n >= 1");
        (0..self.loads.len())
            .filter(|&b| self.sizes[b] > 0)
            .all(|b| self.loads[b].clone() - self.peaks[b].clone() <= least)
    }

    /// The most any completion can add to the sorted welfare.
    fn welfare_bound(&self, bids_desc: &[T], next: usize) -> T {
        let top = bids_desc.first().cloned().unwrap_or_else(T::zero);
        sorted_welfare(bids_desc, &self.sorted_loads()) + top * self.remaining[next].clone()
    }
}

struct BestEf1<T> {
    bids: Vec<T>,
    best: Option<(T, Vec<usize>)>,
}

impl<T: Scalar> Visitor<T> for BestEf1<T> {
    // ties never replace the incumbent, so bounds that only tie are cut
    fn prune(&mut self, walk: &Walk<'_, T>, next: usize) -> bool {
        self.best
            .as_ref()
            .is_some_and(|(best, _)| &walk.welfare_bound(&self.bids, next) <= best)
    }

    fn leaf(&mut self, walk: &Walk<'_, T>) {
        if !walk.is_ef1() {
            return;
        }
        let welfare = sorted_welfare(&self.bids, &walk.sorted_loads());
        if self.best.as_ref().is_none_or(|(b, _)| &welfare > b) {
            self.best = Some((welfare, walk.owners.clone()));
        }
    }
}

struct BestMinimum<T> {
    best: Option<T>,
}

impl<T: Scalar> Visitor<T> for BestMinimum<T> {
    fn prune(&mut self, walk: &Walk<'_, T>, next: usize) -> bool {
        let Some(best) = &self.best else {
            return false;
        };
        // the k lightest blocks can at best share everything left
        let mut loads = walk.loads.clone();
        loads.sort_by(scalar::cmp);
        let mut prefix = walk.remaining[next].clone();
        loads.iter().enumerate().any(|(k, l)| {
            prefix = prefix.clone() + l.clone();
            &(prefix.clone() / T::from_usize_lossless(k + 1)) <= best
        })
    }

    fn leaf(&mut self, walk: &Walk<'_, T>) {
        let least = walk.loads.iter().cloned().reduce(scalar::min).expect("n >= 1");
        if self.best.as_ref().is_none_or(|b| &least > b) {
            self.best = Some(least);
        }
    }
}

struct BestAbove<T> {
    bids: Vec<T>,
    floor: T,
    best: Option<(T, Vec<T>, Vec<usize>)>,
}

impl<T: Scalar> Visitor<T> for BestAbove<T> {
    // ties are settled lexicographically, so only strictly worse bounds
    // are cut
    fn prune(&mut self, walk: &Walk<'_, T>, next: usize) -> bool {
        let short = walk
            .loads
            .iter()
            .filter(|l| *l < &self.floor)
            .fold(T::zero(), |acc, l| acc + self.floor.clone() - l.clone());
        if short > walk.remaining[next] {
            return true;
        }
        self.best
            .as_ref()
            .is_some_and(|(best, _, _)| &walk.welfare_bound(&self.bids, next) < best)
    }

    fn leaf(&mut self, walk: &Walk<'_, T>) {
        let loads = walk.sorted_loads();
        if loads.last().is_some_and(|least| least < &self.floor) {
            return;
        }
        let welfare = sorted_welfare(&self.bids, &loads);
        let better = match &self.best {
            None => true,
            Some((w, seq, _)) => match scalar::cmp(&welfare, w) {
                Ordering::Greater => true,
                Ordering::Equal => lex_cmp(&loads, seq).is_gt(),
                Ordering::Less => false,
            },
        };
        if better {
            self.best = Some((welfare, loads, walk.owners.clone()));
        }
    }
}

/// Brute-force solvers sharing one size guard.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub guard: SizeGuard,
}

impl Default for Oracle {
    fn default() -> Self {
        Self {
            guard: SizeGuard::ORACLE,
        }
    }
}

impl Oracle {
    pub fn new(guard: SizeGuard) -> Self {
        Self { guard }
    }

    pub fn partitions(&self, m: usize, n: usize, labels: Labels) -> Result<Partitions> {
        self.guard.check(m, n, GUARD_HINT)?;
        Ok(Partitions {
            owners: vec![0; m],
            n,
            labels,
            done: n == 0,
        })
    }

    fn sorted_bids<T: Scalar>(instance: &Instance<T>) -> Vec<T> {
        let mut bids = instance.bids().to_vec();
        bids.sort_by(|a, b| scalar::cmp(b, a));
        bids
    }

    /// The maximum welfare over EF1 allocations, with an allocation attaining it.
    pub fn opt_ef1<T: Scalar>(&self, instance: &Instance<T>) -> Result<(Allocation, T)> {
        self.guard.check(instance.m(), instance.n(), GUARD_HINT)?;
        let mut best = BestEf1 {
            bids: Self::sorted_bids(instance),
            best: None,
        };
        Walk::new(instance.weights(), instance.n()).run(&mut best);
        // round-robin exists, so some partition is EF1
        let (welfare, owners) = best.best.expect("an EF1 partition exists");
        let p = Partition::from_owners(&owners, instance.n())?;
        Ok((sorted_allocation(&p, instance.weights(), instance.bids())?, welfare))
    }

    /// The maximin share by enumeration.
    pub fn mms<T: Scalar>(&self, weights: &[T], n: usize) -> Result<T> {
        self.guard.check(weights.len(), n, GUARD_HINT)?;
        if n == 0 {
            return Ok(T::zero());
        }
        let mut best = BestMinimum { best: None };
        Walk::new(weights, n).run(&mut best);
        Ok(best.best.unwrap_or_else(T::zero))
    }

    /// The best welfare among allocations whose every bundle reaches
    /// `floor`, together with the partition's non-increasing weight
    /// sequence. Welfare ties go to the lexicographically largest sequence.
    fn best_above<T: Scalar>(
        &self,
        instance: &Instance<T>,
        floor: &T,
    ) -> Result<Option<(T, Vec<T>, Partition)>> {
        self.guard.check(instance.m(), instance.n(), GUARD_HINT)?;
        let mut best = BestAbove {
            bids: Self::sorted_bids(instance),
            floor: floor.clone(),
            best: None,
        };
        Walk::new(instance.weights(), instance.n()).run(&mut best);
        best.best
            .map(|(welfare, loads, owners)| Ok((welfare, loads, Partition::from_owners(&owners, instance.n())?)))
            .transpose()
    }

    /// The FA-MMS optimum: maximum welfare subject to every bundle reaching
    /// the maximin share. Returns the allocation, its welfare and `mu`.
    pub fn opt_mms<T: Scalar>(&self, instance: &Instance<T>) -> Result<(Allocation, T, T)> {
        let mu = self.mms(instance.weights(), instance.n())?;
        let (welfare, _, p) = self
            .best_above(instance, &mu)?
            .expect("a partition attaining mu exists");
        let allocation = sorted_allocation(&p, instance.weights(), instance.bids())?;
        Ok((allocation, welfare, mu))
    }

    /// Whether some allocation gives every bundle at least `alpha * mu` and
    /// reaches welfare `threshold`.
    pub fn amms_check<T: Scalar>(&self, instance: &Instance<T>, alpha: &T, threshold: &T) -> Result<bool> {
        let mu = self.mms(instance.weights(), instance.n())?;
        let floor = alpha.clone() * mu;
        Ok(self
            .best_above(instance, &floor)?
            .is_some_and(|(welfare, _, _)| &welfare >= threshold))
    }

    /// Every agent-labelled partition that is EF1.
    pub fn ef1_partitions<T: Scalar>(&self, instance: &Instance<T>) -> Result<Vec<Partition>> {
        let mut out = Vec::new();
        for p in self.partitions(instance.m(), instance.n(), Labels::Ordered)? {
            if partition_is_ef1(instance.weights(), &p)? {
                out.push(p);
            }
        }
        Ok(out)
    }
}

/// Partitions of `0..m` into `n` bundles under the default oracle guard.
pub fn enumerate_partitions(m: usize, n: usize, labels: Labels) -> Result<Partitions> {
    Oracle::default().partitions(m, n, labels)
}

pub fn brute_force_opt_ef1<T: Scalar>(instance: &Instance<T>) -> Result<(Allocation, T)> {
    Oracle::default().opt_ef1(instance)
}

pub fn brute_force_opt_mms<T: Scalar>(instance: &Instance<T>) -> Result<(Allocation, T, T)> {
    Oracle::default().opt_mms(instance)
}

pub fn brute_force_amms_check<T: Scalar>(instance: &Instance<T>, alpha: &T, threshold: &T) -> Result<bool> {
    Oracle::default().amms_check(instance, alpha, threshold)
}

pub fn enumerate_ef1_partitions<T: Scalar>(instance: &Instance<T>) -> Result<Vec<Partition>> {
    Oracle::default().ef1_partitions(instance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::{rat, ratio};

    fn inst(weights: &[i64], bids: &[i64]) -> Instance {
        Instance::new(weights.iter().map(|&w| rat(w)).collect(), bids.iter().map(|&b| rat(b)).collect()).unwrap()
    }

    fn count(m: usize, n: usize, labels: Labels) -> usize {
        enumerate_partitions(m, n, labels).unwrap().count()
    }

    #[test]
    fn partition_counts() {
        assert_eq!(count(2, 2, Labels::Ordered), 4);
        assert_eq!(count(0, 2, Labels::Ordered), 1);
        assert_eq!(count(3, 2, Labels::Ordered), 8);
        assert_eq!(count(5, 3, Labels::Ordered), 243);
        // Stirling numbers: S(4,1) + S(4,2) + S(4,3) = 1 + 7 + 6
        assert_eq!(count(4, 3, Labels::Unordered), 14);
        assert_eq!(count(0, 3, Labels::Unordered), 1);
        assert_eq!(count(3, 1, Labels::Unordered), 1);
    }

    #[test]
    fn partitions_are_distinct_and_valid() {
        let all: Vec<Partition> = enumerate_partitions(4, 3, Labels::Ordered).unwrap().collect();
        let unique: std::collections::HashSet<&Partition> = all.iter().collect();
        assert_eq!(unique.len(), all.len());
        for p in &all {
            assert_eq!(Partition::new(p.bundles().to_vec(), 4).as_ref(), Ok(p));
        }
    }

    #[test]
    fn guard_is_enforced() {
        assert!(matches!(
            enumerate_partitions(13, 2, Labels::Ordered),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(matches!(
            brute_force_opt_ef1(&inst(&[1; 13], &[1, 1])),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn opt_ef1_examples() {
        // {5,4} / {3,2} is EF1 since 5 >= 9 - 5; round-robin only reaches 86
        let (a, welfare) = brute_force_opt_ef1(&inst(&[5, 4, 3, 2], &[10, 1])).unwrap();
        assert_eq!(welfare, rat(95));
        assert_eq!(a.agent_weights(&[rat(5), rat(4), rat(3), rat(2)]).unwrap(), vec![rat(9), rat(5)]);
        assert_eq!(brute_force_opt_ef1(&inst(&[1, 1], &[1, 1])).unwrap().1, rat(2));
        assert_eq!(brute_force_opt_ef1(&inst(&[1, 2, 3], &[4])).unwrap().1, rat(24));
    }

    #[test]
    fn opt_mms_examples() {
        let i = inst(&[10, 6, 5, 1, 1, 1], &[3, 2, 1]);
        let (a, welfare, mu) = brute_force_opt_mms(&i).unwrap();
        assert_eq!((welfare, mu), (rat(51), rat(7)));
        assert_eq!(a.agent_weights(i.weights()).unwrap(), vec![rat(10), rat(7), rat(7)]);
        let (_, welfare, mu) = brute_force_opt_mms(&inst(&[3, 4], &[2])).unwrap();
        assert_eq!((welfare, mu), (rat(14), rat(7)));
        let (_, welfare, mu) = brute_force_opt_mms(&inst(&[1, 1], &[1, 1])).unwrap();
        assert_eq!((welfare, mu), (rat(2), rat(1)));
    }

    #[test]
    fn amms_examples() {
        // weights 1, 1, 3T, 3T, 4T with T = 1
        let i = inst(&[1, 1, 3, 3, 4], &[1, 0, 0]);
        assert!(brute_force_amms_check(&i, &ratio(1, 4), &rat(10)).unwrap());
        assert!(brute_force_amms_check(&i, &ratio(1, 4), &rat(0)).unwrap());
        assert!(!brute_force_amms_check(&i, &ratio(1, 4), &rat(11)).unwrap());
    }

    #[test]
    fn ef1_partition_examples() {
        let ps = enumerate_ef1_partitions(&inst(&[1, 1], &[1, 1])).unwrap();
        assert_eq!(ps.len(), 2);
        assert!(ps.iter().all(|p| p.bundles().iter().all(|b| b.len() == 1)));
        assert_eq!(enumerate_ef1_partitions(&inst(&[7], &[1, 1])).unwrap().len(), 2);
        let ps = enumerate_ef1_partitions(&inst(&[5, 5, 1], &[1, 1])).unwrap();
        let bad = Partition::new(vec![vec![0, 1], vec![2]], 3).unwrap();
        assert!(!ps.contains(&bad));
        assert!(!ps.is_empty());
    }
}
