//! A (1 - epsilon) lower estimate of the maximin share.
//!
//! Within the exact solver's guard the estimate is exact. Beyond it, the
//! estimate comes from a rounding scheme for bin covering: a threshold `t` is
//! tested by rounding the big goods (weight >= eps' t) down to multiples of
//! eps'^2 t, searching every way to spread those rounded goods over the
//! bundles, and topping up with the small goods greedily. A successful test
//! always yields a real partition, so the returned value is the minimum
//! bundle of an actual partition and can never exceed the maximin share.

use std::collections::BTreeMap;

use crate::ef1::goods_by_weight_desc;
use crate::error::{Error, Result};
use crate::guard::SizeGuard;
use crate::instance::Partition;
use crate::mms::exact::{exact_mms_partition, greedy_cover};
use crate::scalar::{self, Scalar};

/// Distinct achievable subset sums tracked before falling back to bisection.
const SUBSET_SUM_LIMIT: usize = 1 << 18;
/// Distinct rounded load profiles tracked per good by one covering test.
const PROFILE_LIMIT: usize = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MmsEstimate<T> {
    pub mu_bar: T,
    pub epsilon: T,
    /// `mu_bar` is the exact maximin share.
    pub exact: bool,
}

pub(crate) fn check_epsilon<T: Scalar>(epsilon: &T) -> Result<()> {
    let half = T::ratio(1, 2);
    if epsilon > &T::zero() && epsilon < &half {
        Ok(())
    } else {
        Err(Error::EpsilonOutOfRange(epsilon.to_string()))
    }
}

/// Returns `mu_bar` with `(1 - epsilon) * mu <= mu_bar <= mu`.
pub fn estimate_mms<T: Scalar>(weights: &[T], n: usize, epsilon: &T) -> Result<MmsEstimate<T>> {
    estimate_mms_with_guard(weights, n, epsilon, SizeGuard::EXACT_MMS)
}

/// [`estimate_mms`] with an explicit guard deciding when the exact solver is
/// used.
pub fn estimate_mms_with_guard<T: Scalar>(
    weights: &[T],
    n: usize,
    epsilon: &T,
    exact_guard: SizeGuard,
) -> Result<MmsEstimate<T>> {
    check_epsilon(epsilon)?;
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one bundle".into()));
    }
    if exact_guard.admits(weights.len(), n) {
        let (mu, _) = exact_mms_partition(weights, n, exact_guard)?;
        return Ok(MmsEstimate {
            mu_bar: mu,
            epsilon: epsilon.clone(),
            exact: true,
        });
    }
    approximate_mms(weights, n, epsilon)
}

/// The rounding path of [`estimate_mms`], regardless of instance size.
pub fn approximate_mms<T: Scalar>(weights: &[T], n: usize, epsilon: &T) -> Result<MmsEstimate<T>> {
    approximate_mms_partition(weights, n, epsilon).map(|(estimate, _)| estimate)
}

/// [`approximate_mms`] together with the partition whose minimum bundle is
/// the estimate.
pub fn approximate_mms_partition<T: Scalar>(
    weights: &[T],
    n: usize,
    epsilon: &T,
) -> Result<(MmsEstimate<T>, Partition)> {
    check_epsilon(epsilon)?;
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one bundle".into()));
    }
    let (greedy_min, greedy) = greedy_cover(weights, n);
    let positive = weights.iter().filter(|w| **w > T::zero()).count();
    let exact = n == 1 || positive < n;
    let mut best = (greedy_min, greedy);
    if !exact {
        let ceiling = mms_ceiling(weights, n);
        if best.0 < ceiling {
            match candidate_sums(weights, &best.0, &ceiling) {
                Some(candidates) => search_candidates(weights, n, epsilon, &candidates, &mut best)?,
                None => bisect(weights, n, epsilon, ceiling, &mut best)?,
            }
        }
    }
    Ok((
        MmsEstimate {
            mu_bar: best.0,
            epsilon: epsilon.clone(),
            exact,
        },
        best.1,
    ))
}

/// `min_k (w(all) - w(k-1 heaviest)) / (n - k + 1)`: each of the `k - 1`
/// heaviest goods can cover at most one bundle on its own.
fn mms_ceiling<T: Scalar>(weights: &[T], n: usize) -> T {
    let order = goods_by_weight_desc(weights);
    let mut rest = scalar::sum(weights);
    let mut ceiling = rest.clone() / T::from_usize_lossless(n);
    for (k, &g) in order.iter().enumerate().take(n - 1) {
        rest = rest - weights[g].clone();
        ceiling = scalar::min(ceiling, rest.clone() / T::from_usize_lossless(n - k - 1));
    }
    ceiling
}

/// Sorted distinct subset sums in `[low, high]`, or `None` past the limit.
fn candidate_sums<T: Scalar>(weights: &[T], low: &T, high: &T) -> Option<Vec<T>> {
    let mut sums = vec![T::zero()];
    for w in weights {
        if w <= &T::zero() {
            continue;
        }
        let shifted: Vec<T> = sums
            .iter()
            .map(|s| s.clone() + w.clone())
            .filter(|s| s <= high)
            .collect();
        sums = merge_dedup(sums, shifted);
        if sums.len() > SUBSET_SUM_LIMIT {
            return None;
        }
    }
    Some(sums.into_iter().filter(|s| s >= low).collect())
}

fn merge_dedup<T: Scalar>(a: Vec<T>, b: Vec<T>) -> Vec<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut a, mut b) = (a.into_iter().peekable(), b.into_iter().peekable());
    loop {
        let next = match (a.peek(), b.peek()) {
            (Some(x), Some(y)) => match scalar::cmp(x, y) {
                std::cmp::Ordering::Less => a.next(),
                std::cmp::Ordering::Greater => b.next(),
                std::cmp::Ordering::Equal => {
                    b.next();
                    a.next()
                }
            },
            (Some(_), None) => a.next(),
            (None, Some(_)) => b.next(),
            (None, None) => break,
        };
        out.extend(next);
    }
    out
}

fn keep_better<T: Scalar>(best: &mut (T, Partition), found: (T, Partition)) {
    if found.0 > best.0 {
        *best = found;
    }
}

/// The maximin share is itself a subset sum, so binary search over the
/// candidates: a failed test at `c` proves `mu < c`, and a success at `c`
/// yields a partition of minimum at least `(1 - epsilon) c`.
fn search_candidates<T: Scalar>(
    weights: &[T],
    n: usize,
    epsilon: &T,
    candidates: &[T],
    best: &mut (T, Partition),
) -> Result<()> {
    // candidates[0] is the greedy minimum, already attained
    let half_eps = epsilon.clone() / T::from_usize_lossless(2);
    let (mut lo, mut hi) = (0usize, candidates.len());
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match cover_test(weights, n, &candidates[mid], &half_eps)? {
            Some(found) => {
                keep_better(best, found);
                lo = mid;
            }
            None => hi = mid,
        }
    }
    Ok(())
}

/// Fallback when the subset sums are too numerous: bisection on the
/// threshold with a finer tolerance, stopping once
/// `(1 - eps/2) lo >= (1 - eps) hi`.
fn bisect<T: Scalar>(
    weights: &[T],
    n: usize,
    epsilon: &T,
    ceiling: T,
    best: &mut (T, Partition),
) -> Result<()> {
    let two = T::from_usize_lossless(2);
    let quarter_eps = epsilon.clone() / T::from_usize_lossless(4);
    let (mut lo, mut hi) = (best.0.clone(), ceiling);
    let target = (T::one() - epsilon.clone()) / (T::one() - epsilon.clone() / two.clone());
    while lo < target.clone() * hi.clone() {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        match cover_test(weights, n, &mid, &quarter_eps)? {
            Some(found) => {
                keep_better(best, found);
                lo = mid;
            }
            None => hi = mid,
        }
    }
    Ok(())
}

fn ceil<T: Scalar>(x: T) -> T {
    -Scalar::floor(&-x)
}

fn to_units<T: Scalar>(x: &T) -> Result<u32> {
    x.to_u32()
        .ok_or_else(|| Error::SearchLimit(format!("rounded size {x} does not fit the unit grid")))
}

/// Sorted load profile -> (previous profile, load that received the good).
type Layer = BTreeMap<Vec<u32>, (Vec<u32>, u32)>;

/// Tries to cover `n` bundles to level `(1 - 2 tol) t`.
///
/// Returns a real partition reaching that level, or `None`; `None` is only
/// returned when no partition reaches `t` itself.
pub(crate) fn cover_test<T: Scalar>(
    weights: &[T],
    n: usize,
    t: &T,
    tol: &T,
) -> Result<Option<(T, Partition)>> {
    let big_threshold = tol.clone() * t.clone();
    let unit = tol.clone() * big_threshold.clone();
    let target = (T::one() - tol.clone()) * t.clone();
    let level = target.clone() - big_threshold.clone();
    let cap = to_units(&ceil(target.clone() / unit.clone()))?;

    let order = goods_by_weight_desc(weights);
    let (big, small): (Vec<usize>, Vec<usize>) =
        order.into_iter().partition(|&g| weights[g] >= big_threshold);
    let big_units = big
        .iter()
        .map(|&g| {
            let units = Scalar::floor(&(weights[g].clone() / unit.clone()));
            if units >= T::from_u32(cap).expect("cap fits") {
                Ok(cap)
            } else {
                to_units(&units)
            }
        })
        .collect::<Result<Vec<u32>>>()?;
    let small_total = scalar::sum(small.iter().map(|&g| &weights[g]));

    // layers[k] maps a sorted load profile (after k big goods) to the profile
    // it came from and the load of the bundle that received good k-1
    let mut layers: Vec<Layer> = Vec::with_capacity(big.len() + 1);
    layers.push(BTreeMap::from([(vec![0; n], (Vec::new(), 0))]));
    for &units in &big_units {
        let mut next = BTreeMap::new();
        for profile in layers.last().expect("seeded").keys() {
            for (b, &load) in profile.iter().enumerate() {
                if profile[..b].contains(&load) {
                    continue;
                }
                let mut grown = profile.clone();
                grown[b] = (load + units).min(cap);
                grown.sort_unstable();
                next.entry(grown).or_insert_with(|| (profile.clone(), load));
            }
            if next.len() > PROFILE_LIMIT {
                return Err(Error::SearchLimit(format!(
                    "more than {PROFILE_LIMIT} rounded load profiles"
                )));
            }
        }
        layers.push(next);
    }

    let deficit = |profile: &Vec<u32>| {
        profile.iter().fold(T::zero(), |acc, &u| {
            let covered = T::from_u32(u).expect("u32 fits") * unit.clone();
            if covered < target {
                acc + target.clone() - covered
            } else {
                acc
            }
        })
    };
    let Some((final_profile, shortfall)) = layers
        .last()
        .expect("seeded")
        .keys()
        .map(|p| (p, deficit(p)))
        .reduce(|a, b| if b.1 < a.1 { b } else { a })
    else {
        return Ok(None);
    };
    if shortfall > small_total {
        return Ok(None);
    }

    // recover which load each big good was added to, then replay on real bundles
    let mut received_at = vec![0u32; big.len()];
    let mut profile = final_profile.clone();
    for k in (0..big.len()).rev() {
        let (parent, load) = layers[k + 1][&profile].clone();
        received_at[k] = load;
        profile = parent;
    }
    let mut unit_loads = vec![0u32; n];
    let mut loads = vec![T::zero(); n];
    let mut owners = vec![0usize; weights.len()];
    for (k, &g) in big.iter().enumerate() {
        let b = unit_loads
            .iter()
            .position(|&u| u == received_at[k])
            .expect("replayed profile matches");
        unit_loads[b] = (unit_loads[b] + big_units[k]).min(cap);
        loads[b] = loads[b].clone() + weights[g].clone();
        owners[g] = b;
    }
    let mut smalls = small.into_iter();
    for (b, load) in loads.iter_mut().enumerate() {
        while *load < level {
            let Some(g) = smalls.next() else { break };
            *load = load.clone() + weights[g].clone();
            owners[g] = b;
        }
    }
    for g in smalls {
        let lightest = (0..n)
            .min_by(|&a, &b| scalar::cmp(&loads[a], &loads[b]).then(a.cmp(&b)))
            .expect("n >= 1");
        loads[lightest] = loads[lightest].clone() + weights[g].clone();
        owners[g] = lightest;
    }
    let min = loads.into_iter().reduce(scalar::min).expect("n >= 1");
    if min < level {
        return Ok(None);
    }
    Ok(Some((min, Partition::from_owners(&owners, n)?)))
}
