//! Instance generators: seeded random instances and the partition and
//! independent-set reductions used as adversarial test families.

mod het;

pub use het::{
    het_ef1_instance, het_is_ef1, het_welfare, het_welfare_oracle, max_independent_set, HetInstance,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::scalar::Scalar;

/// Integer weights in `0..=max_weight` and bids in `0..=max_bid`, drawn
/// from a ChaCha stream seeded with `seed`. Identical on every platform.
pub fn random_instance<T: Scalar>(
    m: usize,
    n: usize,
    max_weight: u64,
    max_bid: u64,
    seed: u64,
) -> Result<Instance<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |max: u64| T::from_u64(rng.random_range(0..=max)).expect("integer fits");
    let weights = (0..m).map(|_| draw(max_weight)).collect();
    let bids = (0..n).map(|_| draw(max_bid)).collect();
    Instance::new(weights, bids)
}

fn integers_as<T: Scalar>(integers: &[u64]) -> Result<Vec<T>> {
    if let Some(pos) = integers.iter().position(|&a| a == 0) {
        return Err(Error::InvalidParameter(format!("integer at index {pos} is not positive")));
    }
    Ok(integers
        .iter()
        .map(|&a| T::from_u64(a).expect("integer fits"))
        .collect())
}

/// The two-agent FA-EF1 instance built from a partition input with sum
/// `2B`: the integers as goods plus one good of weight `B + eps`, bids
/// `(v, v - eps)`. Returns the instance and `tau = 3Bv + eps v - eps B`;
/// the best EF1 welfare reaches `tau` iff the integers split evenly.
///
/// Requires an even sum, `eps > 0`, `B + eps` above every integer, and
/// `v > eps`.
pub fn ef1_hardness_instance<T: Scalar>(integers: &[u64], v: &T, eps: &T) -> Result<(Instance<T>, T)> {
    let mut weights = integers_as::<T>(integers)?;
    let sum: u64 = integers.iter().sum();
    if !sum.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("sum {sum} is odd")));
    }
    if eps <= &T::zero() {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    if v <= eps {
        return Err(Error::InvalidParameter(format!("v = {v} must exceed eps = {eps}")));
    }
    let b = T::from_u64(sum / 2).expect("integer fits");
    let largest = T::from_u64(integers.iter().copied().max().unwrap_or(0)).expect("integer fits");
    let extra = b.clone() + eps.clone();
    if extra <= largest {
        return Err(Error::InvalidParameter(format!(
            "B + eps = {extra} must exceed the largest integer {largest}"
        )));
    }
    weights.push(extra);
    let three = T::from_u64(3).expect("3 fits");
    let tau = three * b.clone() * v.clone() + eps.clone() * v.clone() - eps.clone() * b;
    let instance = Instance::new(weights, vec![v.clone(), v.clone() - eps.clone()])?;
    Ok((instance, tau))
}

/// The three-agent FA-AMMS instance built from a partition input with sum
/// `2T`: the integers plus goods `3T, 3T, 4T`, bids `(1, 0, 0)`. Returns the
/// instance, `alpha = 1/4` and the welfare threshold `10T`; some
/// `alpha`-MMS allocation reaches the threshold iff the integers split
/// evenly.
pub fn amms_hardness_instance<T: Scalar>(integers: &[u64]) -> Result<(Instance<T>, T, T)> {
    let mut weights = integers_as::<T>(integers)?;
    let total = T::from_u64(integers.iter().sum()).expect("integer fits");
    let t = total / T::from_u64(2).expect("2 fits");
    let times = |k: u64| T::from_u64(k).expect("small integer fits") * t.clone();
    weights.extend([times(3), times(3), times(4)]);
    let instance = Instance::new(weights, vec![T::one(), T::zero(), T::zero()])?;
    Ok((instance, T::ratio(1, 4), times(10)))
}

/// Whether the integers split into two halves of equal sum.
pub fn has_balanced_partition(integers: &[u64]) -> bool {
    let total: u64 = integers.iter().sum();
    if !total.is_multiple_of(2) {
        return false;
    }
    let half = (total / 2) as usize;
    let mut reachable = vec![false; half + 1];
    reachable[0] = true;
    for &a in integers {
        let a = a as usize;
        for s in (a..=half).rev() {
            reachable[s] |= reachable[s - a];
        }
    }
    reachable[half]
}
