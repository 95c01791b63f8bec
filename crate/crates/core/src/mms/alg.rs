//! The four-phase bi-criteria partitioning algorithm for FA-MMS.
//!
//! Given an estimate `mu_bar <= mu`, every returned bundle weighs at least
//! `mu_bar / 2`, and the last bundle is a heaviest one.

use std::fmt;

use crate::ef1::goods_by_weight_desc;
use crate::error::{Error, Result};
use crate::instance::Partition;
use crate::scalar::{self, Scalar};

/// Where a good falls relative to the estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GoodClass {
    /// `w(g) >= mu_bar`
    High,
    /// `mu_bar / 2 <= w(g) < mu_bar`
    Medium,
    /// `w(g) < mu_bar / 2`
    Tiny,
}

/// Which return statement produced the partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    /// `mu_bar == 0`: every partition is fair, and the grand bundle in the
    /// last position is the one that majorizes all others.
    Degenerate,
    /// At least `n` medium goods.
    One,
    /// At least `n` bundles built from medium and tiny goods.
    Two,
    /// High goods completed the partition.
    Four,
}

impl Phase {
    /// `0` for the degenerate case, otherwise the phase number.
    pub fn number(self) -> u8 {
        match self {
            Phase::Degenerate => 0,
            Phase::One => 1,
            Phase::Two => 2,
            Phase::Four => 4,
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::Degenerate => f.write_str("degenerate"),
            phase => write!(f, "{}", phase.number()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgTrace {
    pub phase_reached: Phase,
    /// Number of medium-good singletons.
    pub tau_prime: usize,
    /// Number of bundles formed from medium and tiny goods; `None` when
    /// the algorithm stopped before counting them.
    pub tau: Option<usize>,
    /// Tiny goods set aside because they never reached `mu_bar / 2`.
    pub leftover: Vec<usize>,
    pub classes: Vec<GoodClass>,
}

pub fn classify<T: Scalar>(weights: &[T], mu_bar: &T) -> Vec<GoodClass> {
    let half = mu_bar.clone() / T::from_usize_lossless(2);
    weights
        .iter()
        .map(|w| {
            if w >= mu_bar {
                GoodClass::High
            } else if w >= &half {
                GoodClass::Medium
            } else {
                GoodClass::Tiny
            }
        })
        .collect()
}

/// The first `n - 1` bundles, with every other good in a final bundle.
fn close_early(mut formed: Vec<Vec<usize>>, n: usize, m: usize) -> Partition {
    formed.truncate(n - 1);
    let mut used = vec![false; m];
    for &g in formed.iter().flatten() {
        used[g] = true;
    }
    formed.push((0..m).filter(|&g| !used[g]).collect());
    Partition::from_bundles_unchecked(formed, m)
}

/// Runs the algorithm with estimate `mu_bar`.
///
/// An estimate above the true maximin share can leave too few high goods for
/// the final phases; that is reported as [`Error::InvalidEstimate`].
pub fn alg_mms_partition<T: Scalar>(
    weights: &[T],
    n: usize,
    mu_bar: &T,
) -> Result<(Partition, AlgTrace)> {
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one bundle".into()));
    }
    if mu_bar < &T::zero() {
        return Err(Error::InvalidEstimate {
            mu_bar: mu_bar.to_string(),
            reason: "estimate is negative".into(),
        });
    }
    let m = weights.len();
    let classes = classify(weights, mu_bar);
    let mut trace = AlgTrace {
        phase_reached: Phase::Degenerate,
        tau_prime: 0,
        tau: None,
        leftover: Vec::new(),
        classes,
    };
    if mu_bar.is_zero() {
        let mut bundles = vec![Vec::new(); n];
        bundles[n - 1] = (0..m).collect();
        return Ok((Partition::from_bundles_unchecked(bundles, m), trace));
    }

    // phase 1
    let mut formed: Vec<Vec<usize>> = (0..m)
        .filter(|&g| trace.classes[g] == GoodClass::Medium)
        .map(|g| vec![g])
        .collect();
    trace.tau_prime = formed.len();
    if formed.len() >= n {
        trace.phase_reached = Phase::One;
        return Ok((close_early(formed, n, m), trace));
    }

    // phase 2
    let half = mu_bar.clone() / T::from_usize_lossless(2);
    let mut current = Vec::new();
    let mut load = T::zero();
    for g in goods_by_weight_desc(weights) {
        if trace.classes[g] != GoodClass::Tiny {
            continue;
        }
        current.push(g);
        load = load + weights[g].clone();
        if load >= half {
            formed.push(std::mem::take(&mut current));
            load = T::zero();
        }
    }
    trace.leftover = current;
    trace.leftover.sort_unstable();
    let tau = formed.len();
    trace.tau = Some(tau);
    if tau >= n {
        trace.phase_reached = Phase::Two;
        return Ok((close_early(formed, n, m), trace));
    }

    // phase 3
    let mut high: Vec<usize> = (0..m).filter(|&g| trace.classes[g] == GoodClass::High).collect();
    high.sort_by(|&a, &b| scalar::cmp(&weights[a], &weights[b]).then(a.cmp(&b)));
    let singletons = n - tau - 1;
    if high.len() <= singletons {
        return Err(Error::InvalidEstimate {
            mu_bar: mu_bar.to_string(),
            reason: format!(
                "{} high goods cannot fill {} singletons and the last bundle",
                high.len(),
                singletons
            ),
        });
    }
    formed.extend(high[..singletons].iter().map(|&g| vec![g]));

    // phase 4
    let mut last = trace.leftover.clone();
    last.extend_from_slice(&high[singletons..]);
    formed.push(last);
    trace.phase_reached = Phase::Four;
    Ok((Partition::from_bundles_unchecked(formed, m), trace))
}
