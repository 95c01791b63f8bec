//! Exact Nash social welfare for a single-parameter instance.
//!
//! With valuations `v_i * w(S)`, the Nash product factors into
//! `prod v_i * prod w(P_i)`, so the maximizing partition does not depend on
//! the bids at all. The search maximizes `prod w(P_i)` directly.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::ef1::goods_by_weight_desc;
use crate::error::{Error, Result};
use crate::fairness::product;
use crate::guard::SizeGuard;
use crate::instance::{Instance, Partition};
use crate::scalar::{self, Scalar};

const GUARD_HINT: &str = "; exact Nash welfare search is exponential";

/// A partition maximizing the product of bundle weights. Among maximizers,
/// the one with the lexicographically largest non-increasing weight sequence
/// is returned.
pub fn exact_nsw_partition<T: Scalar>(weights: &[T], n: usize) -> Result<Partition> {
    exact_nsw_partition_with_guard(weights, n, SizeGuard::NSW)
}

pub fn exact_nsw_partition_with_guard<T: Scalar>(
    weights: &[T],
    n: usize,
    guard: SizeGuard,
) -> Result<Partition> {
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one bundle".into()));
    }
    guard.check(weights.len(), n, GUARD_HINT)?;
    let order = goods_by_weight_desc(weights);
    let sorted: Vec<T> = order.iter().map(|&g| weights[g].clone()).collect();
    let mut suffix = vec![T::zero(); sorted.len() + 1];
    for i in (0..sorted.len()).rev() {
        suffix[i] = suffix[i + 1].clone() + sorted[i].clone();
    }
    let mut search = Search {
        sorted: &sorted,
        suffix: &suffix,
        n,
        best: None,
        owners: vec![0; sorted.len()],
        loads: vec![T::zero(); n],
        visited: HashSet::new(),
    };
    search.descend(0);
    let (_, _, sorted_owners) = search.best.expect("at least one leaf");
    let mut owners = vec![0; weights.len()];
    for (pos, &g) in order.iter().enumerate() {
        owners[g] = sorted_owners[pos];
    }
    Partition::from_owners(&owners, n)
}

/// The FA-NSW partition for an instance. Never reads the bids.
pub fn solve_fa_nsw<T: Scalar>(instance: &Instance<T>) -> Result<Partition> {
    exact_nsw_partition(instance.weights(), instance.n())
}

pub fn solve_fa_nsw_with_guard<T: Scalar>(instance: &Instance<T>, guard: SizeGuard) -> Result<Partition> {
    exact_nsw_partition_with_guard(instance.weights(), instance.n(), guard)
}

/// Largest product reachable by spreading `remaining` over `loads`
/// fractionally (water-filling). Sorts `loads` ascending in place.
fn water_fill_bound<T: Scalar>(loads: &mut [T], remaining: &T) -> T {
    loads.sort_by(scalar::cmp);
    let mut filled = remaining.clone();
    for k in 0..loads.len() {
        filled = filled + loads[k].clone();
        let level = filled.clone() / T::from_usize_lossless(k + 1);
        if k + 1 == loads.len() || level <= loads[k + 1] {
            let mut bound = T::one();
            for _ in 0..=k {
                bound = bound * level.clone();
            }
            return bound * product(loads[k + 1..].iter().cloned());
        }
    }
    unreachable!("loop returns on the last bundle")
}

fn lex_cmp<T: Scalar>(a: &[T], b: &[T]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| scalar::cmp(x, y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

struct Search<'a, T: Scalar> {
    sorted: &'a [T],
    suffix: &'a [T],
    n: usize,
    /// (product, weights sorted non-increasing, owners)
    best: Option<(T, Vec<T>, Vec<usize>)>,
    owners: Vec<usize>,
    loads: Vec<T>,
    visited: HashSet<(usize, Vec<T::Key>)>,
}

impl<T: Scalar> Search<'_, T> {
    fn descend(&mut self, next: usize) {
        if next == self.sorted.len() {
            self.leaf();
            return;
        }
        let mut scratch = self.loads.clone();
        let bound = water_fill_bound(&mut scratch, &self.suffix[next]);
        if self.best.as_ref().is_some_and(|(p, _, _)| &bound < p) {
            return;
        }
        // equal sorted loads reach the same set of final weight sequences
        if !self.visited.insert((next, scratch.iter().map(Scalar::key).collect())) {
            return;
        }
        for b in 0..self.n {
            if self.loads[..b].contains(&self.loads[b]) {
                continue;
            }
            let before = self.loads[b].clone();
            self.loads[b] = before.clone() + self.sorted[next].clone();
            self.owners[next] = b;
            self.descend(next + 1);
            self.loads[b] = before;
        }
    }

    fn leaf(&mut self) {
        let value = product(self.loads.iter().cloned());
        let mut seq = self.loads.clone();
        seq.sort_by(|a, b| scalar::cmp(b, a));
        let better = match &self.best {
            None => true,
            Some((p, s, _)) => match scalar::cmp(&value, p) {
                Ordering::Greater => true,
                Ordering::Equal => lex_cmp(&seq, s).is_gt(),
                Ordering::Less => false,
            },
        };
        if better {
            self.best = Some((value, seq, self.owners.clone()));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fairness::nsw_objective;
    use crate::{rat, Rational};

    fn w(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    fn product_of(weights: &[Rational], n: usize) -> Rational {
        let p = exact_nsw_partition(weights, n).unwrap();
        product(p.bundle_weights(weights).unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(product_of(&w(&[4, 3, 2, 1]), 2), rat(25));
        let p = exact_nsw_partition(&w(&[1, 1, 1]), 3).unwrap();
        assert!(p.bundles().iter().all(|b| b.len() == 1));
        assert_eq!(product_of(&w(&[5]), 2), rat(0));
        let p = exact_nsw_partition(&w(&[5]), 2).unwrap();
        assert_eq!(p.sorted_weights(&w(&[5])).unwrap(), w(&[5, 0]));
    }

    #[test]
    fn ties_prefer_lexicographically_largest() {
        // {3,1}/{2,2}: 4 * 4 = 16 beats {3,2}/{2,1}: 5 * 3 = 15
        assert_eq!(product_of(&w(&[3, 2, 2, 1]), 2), rat(16));
        // every 3-partition of two goods has product 0
        let weights = w(&[1, 1]);
        let p = exact_nsw_partition(&weights, 3).unwrap();
        assert_eq!(p.sorted_weights(&weights).unwrap(), w(&[2, 0, 0]));
    }

    #[test]
    fn water_fill_examples() {
        assert_eq!(water_fill_bound(&mut w(&[0, 0]), &rat(10)), rat(25));
        assert_eq!(water_fill_bound(&mut w(&[9, 0]), &rat(1)), rat(9));
        assert_eq!(water_fill_bound(&mut w(&[9, 1]), &rat(2)), rat(27));
    }

    #[test]
    fn ignores_bids() {
        let a = Instance::new(w(&[4, 3, 2, 1]), w(&[7, 2])).unwrap();
        let b = a.with_bids(w(&[2, 7])).unwrap();
        let p = solve_fa_nsw(&a).unwrap();
        assert_eq!(p, solve_fa_nsw(&b).unwrap());
        assert_eq!(nsw_objective(&a, &p).unwrap(), rat(25));
    }

    #[test]
    fn guard_is_enforced() {
        let weights = w(&[1; 15]);
        assert!(matches!(
            exact_nsw_partition(&weights, 2),
            Err(Error::GuardExceeded { m: 15, .. })
        ));
        let p = exact_nsw_partition_with_guard(&weights, 2, SizeGuard::UNLIMITED).unwrap();
        assert_eq!(p.sorted_weights(&weights).unwrap(), w(&[8, 7]));
    }
}
