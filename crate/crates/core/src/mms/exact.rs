use std::collections::HashSet;

use crate::ef1::goods_by_weight_desc;
use crate::error::{Error, Result};
use crate::guard::SizeGuard;
use crate::instance::Partition;
use crate::scalar::{self, Scalar};

const GUARD_HINT: &str = "; use estimate_mms for larger instances";

/// The maximin share: the best achievable minimum bundle weight over all
/// n-partitions. Zero when fewer than `n` goods have positive weight.
pub fn exact_mms<T: Scalar>(weights: &[T], n: usize) -> Result<T> {
    exact_mms_with_guard(weights, n, SizeGuard::EXACT_MMS)
}

pub fn exact_mms_with_guard<T: Scalar>(weights: &[T], n: usize, guard: SizeGuard) -> Result<T> {
    exact_mms_partition(weights, n, guard).map(|(mu, _)| mu)
}

/// [`exact_mms`] together with a partition attaining it.
pub fn exact_mms_partition<T: Scalar>(
    weights: &[T],
    n: usize,
    guard: SizeGuard,
) -> Result<(T, Partition)> {
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one bundle".into()));
    }
    guard.check(weights.len(), n, GUARD_HINT)?;
    let (greedy_min, greedy) = greedy_cover(weights, n);
    let positive = weights.iter().filter(|w| **w > T::zero()).count();
    if n == 1 || positive < n {
        return Ok((greedy_min, greedy));
    }

    let order = goods_by_weight_desc(weights);
    let sorted: Vec<T> = order.iter().map(|&g| weights[g].clone()).collect();
    // suffix[i] = total weight of sorted[i..]
    let mut suffix = vec![T::zero(); sorted.len() + 1];
    for i in (0..sorted.len()).rev() {
        suffix[i] = suffix[i + 1].clone() + sorted[i].clone();
    }

    let mut search = Search {
        sorted: &sorted,
        suffix: &suffix,
        n,
        ceiling: cover_bound(&mut vec![T::zero(); n], &suffix[0]),
        best: greedy_min.clone(),
        best_owners: None,
        owners: vec![0; sorted.len()],
        loads: vec![T::zero(); n],
        visited: HashSet::new(),
    };
    if search.best < search.ceiling {
        search.descend(0);
    }

    let partition = match search.best_owners {
        Some(sorted_owners) => {
            let mut owners = vec![0; weights.len()];
            for (pos, &g) in order.iter().enumerate() {
                owners[g] = sorted_owners[pos];
            }
            Partition::from_owners(&owners, n)?
        }
        None => greedy,
    };
    Ok((search.best, partition))
}

/// Longest-processing-time style covering: heaviest good to the currently
/// lightest bundle (lowest index on ties). Returns its minimum load.
pub(crate) fn greedy_cover<T: Scalar>(weights: &[T], n: usize) -> (T, Partition) {
    let mut loads = vec![T::zero(); n];
    let mut owners = vec![0; weights.len()];
    for g in goods_by_weight_desc(weights) {
        let lightest = (0..n)
            .min_by(|&a, &b| scalar::cmp(&loads[a], &loads[b]).then(a.cmp(&b)))
            .expect("n >= 1");
        loads[lightest] = loads[lightest].clone() + weights[g].clone();
        owners[g] = lightest;
    }
    let min = loads.into_iter().reduce(scalar::min).expect("n >= 1");
    (min, Partition::from_owners(&owners, n).expect("owners in range"))
}

/// Upper bound on the final minimum load: for every k, the k lightest
/// bundles can at best split their load plus everything remaining evenly.
/// Sorts `loads` in place.
fn cover_bound<T: Scalar>(loads: &mut [T], remaining: &T) -> T {
    loads.sort_by(scalar::cmp);
    let mut prefix = remaining.clone();
    let mut bound: Option<T> = None;
    for (k, load) in loads.iter().enumerate() {
        prefix = prefix + load.clone();
        let avg = prefix.clone() / T::from_usize_lossless(k + 1);
        bound = Some(match bound {
            Some(b) => scalar::min(b, avg),
            None => avg,
        });
    }
    bound.expect("n >= 1")
}

struct Search<'a, T: Scalar> {
    sorted: &'a [T],
    suffix: &'a [T],
    n: usize,
    ceiling: T,
    best: T,
    best_owners: Option<Vec<usize>>,
    owners: Vec<usize>,
    loads: Vec<T>,
    visited: HashSet<(usize, Vec<T::Key>)>,
}

impl<T: Scalar> Search<'_, T> {
    fn done(&self) -> bool {
        self.best >= self.ceiling
    }

    fn descend(&mut self, next: usize) {
        if next == self.sorted.len() {
            let min = self.loads.iter().cloned().reduce(scalar::min).expect("n >= 1");
            if min > self.best {
                self.best = min;
                self.best_owners = Some(self.owners.clone());
            }
            return;
        }
        let mut scratch = self.loads.clone();
        if cover_bound(&mut scratch, &self.suffix[next]) <= self.best {
            return;
        }
        let key = (next, scratch.iter().map(Scalar::key).collect());
        if !self.visited.insert(key) {
            return;
        }
        for b in 0..self.n {
            // bundles with equal load are interchangeable
            if self.loads[..b].contains(&self.loads[b]) {
                continue;
            }
            let before = self.loads[b].clone();
            self.loads[b] = before.clone() + self.sorted[next].clone();
            self.owners[next] = b;
            self.descend(next + 1);
            self.loads[b] = before;
            if self.done() {
                return;
            }
        }
    }
}
