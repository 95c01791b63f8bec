//! Fairness predicates and objective values over a single additive weight
//! function.

use crate::error::{Error, Result};
use crate::instance::{Allocation, Instance, Partition};
use crate::scalar::{self, Scalar};

/// Exact weight of a set of goods.
pub fn bundle_weight<T: Scalar>(instance: &Instance<T>, bundle: &[usize]) -> Result<T> {
    let weights = instance.weights();
    bundle.iter().try_fold(T::zero(), |acc, &g| {
        weights
            .get(g)
            .map(|w| acc + w.clone())
            .ok_or(Error::GoodOutOfRange {
                index: g,
                goods: weights.len(),
            })
    })
}

/// Per-bundle weight and heaviest single good (zero for empty bundles).
fn loads_and_peaks<T: Scalar>(weights: &[T], partition: &Partition) -> Result<(Vec<T>, Vec<T>)> {
    let loads = partition.bundle_weights(weights)?;
    let peaks = partition
        .bundles()
        .iter()
        .map(|b| {
            b.iter()
                .map(|&g| weights[g].clone())
                .fold(T::zero(), scalar::max)
        })
        .collect();
    Ok((loads, peaks))
}

/// Whether every bundle is envy-free up to one good against every other.
///
/// The check only depends on the partition: all agents share the same
/// weights, so any assignment of an EF1 partition is EF1. Pairs against an
/// empty bundle hold vacuously.
pub fn is_ef1<T: Scalar>(instance: &Instance<T>, partition: &Partition) -> Result<bool> {
    partition_is_ef1(instance.weights(), partition)
}

/// [`is_ef1`] on raw weights.
pub fn partition_is_ef1<T: Scalar>(weights: &[T], partition: &Partition) -> Result<bool> {
    let (loads, peaks) = loads_and_peaks(weights, partition)?;
    let Some(lightest) = loads.iter().cloned().reduce(scalar::min) else {
        return Ok(true);
    };
    Ok(partition
        .bundles()
        .iter()
        .zip(loads.iter().zip(&peaks))
        .filter(|(bundle, _)| !bundle.is_empty())
        .all(|(_, (load, peak))| lightest >= load.clone() - peak.clone()))
}

/// The smallest EF1 margin `w(A_i) - (w(A_j) - max_{g in A_j} w(g))` over
/// ordered pairs `i != j` with `A_j` nonempty. `None` stands for +infinity
/// (no such pair exists).
pub fn ef1_slack<T: Scalar>(weights: &[T], partition: &Partition) -> Result<Option<T>> {
    let (loads, peaks) = loads_and_peaks(weights, partition)?;
    let mut slack: Option<T> = None;
    for (j, bundle) in partition.bundles().iter().enumerate() {
        if bundle.is_empty() {
            continue;
        }
        let envied = loads[j].clone() - peaks[j].clone();
        for (i, load) in loads.iter().enumerate() {
            if i == j {
                continue;
            }
            let margin = load.clone() - envied.clone();
            slack = Some(match slack {
                Some(s) => scalar::min(s, margin),
                None => margin,
            });
        }
    }
    Ok(slack)
}

/// `sum_i bids[i] * w(bundle of agent i)`.
pub fn social_welfare<T: Scalar>(instance: &Instance<T>, allocation: &Allocation) -> Result<T> {
    allocation.partition().ensure_fits(instance)?;
    let per_agent = allocation.agent_weights(instance.weights())?;
    Ok(instance
        .bids()
        .iter()
        .zip(per_agent)
        .fold(T::zero(), |acc, (b, w)| acc + b.clone() * w))
}

/// Product of bundle weights; the n-th root is dropped since it preserves
/// order and would leave exact arithmetic.
pub fn nsw_objective<T: Scalar>(instance: &Instance<T>, partition: &Partition) -> Result<T> {
    partition.ensure_fits(instance)?;
    Ok(product(partition.bundle_weights(instance.weights())?))
}

pub(crate) fn product<T: Scalar>(loads: impl IntoIterator<Item = T>) -> T {
    loads.into_iter().fold(T::one(), |acc, w| acc * w)
}

/// Diagnostic fairness margins of an allocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FairnessMargins<T> {
    /// See [`ef1_slack`]; `None` is +infinity. Non-negative iff EF1.
    pub ef1_slack: Option<T>,
    /// `min_i w(A_i) / mu`; `None` when the maximin share is unknown or zero.
    /// At least `alpha` iff the allocation is alpha-approximate MMS.
    pub mms_ratio: Option<T>,
}

impl<T: Scalar> FairnessMargins<T> {
    pub fn compute(weights: &[T], partition: &Partition, mu: Option<&T>) -> Result<Self> {
        let ef1_slack = ef1_slack(weights, partition)?;
        let mms_ratio = match mu {
            Some(mu) if mu > &T::zero() => {
                let lightest = partition
                    .bundle_weights(weights)?
                    .into_iter()
                    .reduce(scalar::min)
                    .unwrap_or_else(T::zero);
                Some(lightest / mu.clone())
            }
            _ => None,
        };
        Ok(Self {
            ef1_slack,
            mms_ratio,
        })
    }

    pub fn is_ef1(&self) -> bool {
        self.ef1_slack.as_ref().is_none_or(|s| s >= &T::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio, Rational};

    fn inst(weights: &[i64], bids: &[i64]) -> Instance {
        Instance::new(weights.iter().map(|&w| rat(w)).collect(), bids.iter().map(|&b| rat(b)).collect()).unwrap()
    }

    fn part(bundles: &[&[usize]], m: usize) -> Partition {
        Partition::new(bundles.iter().map(|b| b.to_vec()).collect(), m).unwrap()
    }

    #[test]
    fn bundle_weight_examples() {
        let i = inst(&[5, 4, 3, 2], &[1]);
        assert_eq!(bundle_weight(&i, &[0, 2]).unwrap(), rat(8));
        assert_eq!(bundle_weight(&i, &[]).unwrap(), rat(0));
        assert!(matches!(bundle_weight(&i, &[4]), Err(Error::GoodOutOfRange { index: 4, .. })));
        let i = Instance::new(vec![ratio(1, 2), ratio(1, 3)], vec![rat(1)]).unwrap();
        assert_eq!(bundle_weight(&i, &[0, 1]).unwrap(), ratio(5, 6));
    }

    #[test]
    fn ef1_examples() {
        let i = inst(&[5, 4, 3, 2], &[1, 1]);
        assert!(is_ef1(&i, &part(&[&[0, 2], &[1, 3]], 4)).unwrap());
        let i = inst(&[10, 1], &[1, 1]);
        assert!(is_ef1(&i, &part(&[&[0], &[1]], 2)).unwrap());
        let i = inst(&[5, 5, 1], &[1, 1]);
        assert!(!is_ef1(&i, &part(&[&[0, 1], &[2]], 3)).unwrap());
    }

    #[test]
    fn ef1_vacuous_cases() {
        let i: Instance = inst(&[], &[1, 1]);
        assert!(is_ef1(&i, &part(&[&[], &[]], 0)).unwrap());
        let i = inst(&[7], &[1, 1]);
        assert!(is_ef1(&i, &part(&[&[0], &[]], 1)).unwrap());
        let i = inst(&[1, 1], &[1, 1]);
        assert!(!is_ef1(&i, &part(&[&[0, 1], &[]], 2)).unwrap());
    }

    #[test]
    fn ef1_slack_sign_matches_predicate() {
        let w = [rat(5), rat(5), rat(1)];
        let bad = part(&[&[0, 1], &[2]], 3);
        assert_eq!(ef1_slack(&w, &bad).unwrap(), Some(rat(-4)));
        let good = part(&[&[0], &[1, 2]], 3);
        // pairs: (1 vs 0): 6 - 0 = 6; (0 vs 1): 5 - (6 - 5) = 4
        assert_eq!(ef1_slack(&w, &good).unwrap(), Some(rat(4)));
        let single = part(&[&[0, 1, 2]], 3);
        assert_eq!(ef1_slack(&w, &single).unwrap(), None);
    }

    #[test]
    fn welfare_examples() {
        let i = inst(&[3, 1], &[5, 2]);
        let a = Allocation::identity(part(&[&[0], &[1]], 2));
        assert_eq!(social_welfare(&i, &a).unwrap(), rat(17));
        let i = inst(&[3, 1], &[0, 0]);
        assert_eq!(social_welfare(&i, &a).unwrap(), rat(0));
        let i = inst(&[10, 6, 5, 1, 1, 1], &[3, 2, 1]);
        let a = Allocation::identity(part(&[&[0, 3, 4, 5], &[1], &[2]], 6));
        assert_eq!(social_welfare(&i, &a).unwrap(), rat(56));
    }

    #[test]
    fn nsw_examples() {
        let i = inst(&[4, 3, 2, 1], &[1, 1]);
        assert_eq!(nsw_objective(&i, &part(&[&[0, 3], &[1, 2]], 4)).unwrap(), rat(25));
        assert_eq!(nsw_objective(&i, &part(&[&[0, 1, 2, 3], &[]], 4)).unwrap(), rat(0));
        let i = inst(&[2, 3], &[1]);
        assert_eq!(nsw_objective(&i, &part(&[&[0, 1]], 2)).unwrap(), rat(5));
    }

    #[test]
    fn margins_report_mms_ratio() {
        let w: Vec<Rational> = [13, 6, 5].iter().map(|&x| rat(x)).collect();
        let p = part(&[&[0], &[1], &[2]], 3);
        let m = FairnessMargins::compute(&w, &p, Some(&rat(7))).unwrap();
        assert_eq!(m.mms_ratio, Some(ratio(5, 7)));
        assert!(m.is_ef1());
        let m = FairnessMargins::compute(&w, &p, Some(&rat(0))).unwrap();
        assert_eq!(m.mms_ratio, None);
    }
}
