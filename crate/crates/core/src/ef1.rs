//! Bid-oblivious EF1 partitioning.
//!
//! Any EF1 partition, handed out by the sorted allocation rule, earns at least
//! half the welfare of the best EF1 allocation. Round-robin over goods in
//! descending weight is the fixed choice here.

use crate::error::{Error, Result};
use crate::instance::{Instance, Partition};
use crate::scalar::{self, Scalar};

/// Goods sorted by non-increasing weight, ties broken by lower index.
pub(crate) fn goods_by_weight_desc<T: Scalar>(weights: &[T]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| scalar::cmp(&weights[b], &weights[a]).then(a.cmp(&b)));
    order
}

/// Deals the goods, heaviest first, to bundles `0, 1, ..., n-1, 0, 1, ...`.
pub fn round_robin_partition<T: Scalar>(weights: &[T], n: usize) -> Result<Partition> {
    if n == 0 {
        return Err(Error::InvalidParameter("round robin needs at least one bundle".into()));
    }
    let mut bundles = vec![Vec::new(); n];
    for (turn, g) in goods_by_weight_desc(weights).into_iter().enumerate() {
        bundles[turn % n].push(g);
    }
    Ok(Partition::from_bundles_unchecked(bundles, weights.len()))
}

/// The FA-EF1 partition for an instance. Never reads the bids.
pub fn solve_fa_ef1<T: Scalar>(instance: &Instance<T>) -> Result<Partition> {
    round_robin_partition(instance.weights(), instance.n())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fairness::partition_is_ef1;
    use crate::{rat, Rational};

    fn w(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn deals_in_weight_order() {
        let p = round_robin_partition(&w(&[5, 4, 3, 2]), 2).unwrap();
        assert_eq!(p.bundles(), &[vec![0, 2], vec![1, 3]]);
        assert_eq!(p.bundle_weights(&w(&[5, 4, 3, 2])).unwrap(), w(&[8, 6]));
    }

    #[test]
    fn fewer_goods_than_bundles() {
        let p = round_robin_partition(&w(&[7]), 3).unwrap();
        assert_eq!(p.bundles(), &[vec![0], vec![], vec![]]);
        assert!(partition_is_ef1(&w(&[7]), &p).unwrap());
    }

    #[test]
    fn symmetric_instance() {
        let weights = w(&[1, 1, 1, 1, 1, 1]);
        let p = round_robin_partition(&weights, 3).unwrap();
        assert_eq!(p.bundle_weights(&weights).unwrap(), w(&[2, 2, 2]));
        // equal weights: lower index dealt first
        assert_eq!(p.bundles(), &[vec![0, 3], vec![1, 4], vec![2, 5]]);
    }

    #[test]
    fn zero_bundles_rejected() {
        assert!(round_robin_partition(&w(&[1]), 0).is_err());
    }

    #[test]
    fn ignores_bids() {
        let a = Instance::new(w(&[9, 4, 4, 1, 0]), w(&[1, 5, 2])).unwrap();
        let b = a.with_bids(w(&[7, 0, 3])).unwrap();
        assert_eq!(solve_fa_ef1(&a).unwrap(), solve_fa_ef1(&b).unwrap());
    }
}
