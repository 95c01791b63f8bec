//! Maximin share: exact solver, estimator and the bi-criteria partition.

mod alg;
mod estimate;
mod exact;

pub use alg::{alg_mms_partition, classify, AlgTrace, GoodClass, Phase};
pub use estimate::{
    approximate_mms, approximate_mms_partition, estimate_mms, estimate_mms_with_guard, MmsEstimate,
};
pub use exact::{exact_mms, exact_mms_partition, exact_mms_with_guard};

use crate::error::Result;
use crate::guard::SizeGuard;
use crate::instance::{Instance, Partition};
use crate::scalar::Scalar;

/// The FA-MMS partition: estimate the maximin share, then run the
/// four-phase algorithm on the estimate. Never reads the bids.
pub fn solve_fa_mms<T: Scalar>(
    instance: &Instance<T>,
    epsilon: &T,
) -> Result<(Partition, MmsEstimate<T>, AlgTrace)> {
    solve_fa_mms_with_guard(instance, epsilon, SizeGuard::EXACT_MMS)
}

pub fn solve_fa_mms_with_guard<T: Scalar>(
    instance: &Instance<T>,
    epsilon: &T,
    exact_guard: SizeGuard,
) -> Result<(Partition, MmsEstimate<T>, AlgTrace)> {
    let estimate = estimate_mms_with_guard(instance.weights(), instance.n(), epsilon, exact_guard)?;
    let (partition, trace) = alg_mms_partition(instance.weights(), instance.n(), &estimate.mu_bar)?;
    Ok((partition, estimate, trace))
}
