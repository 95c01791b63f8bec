//! Truthful, welfare-maximizing auctions for fair division of indivisible
//! goods in single-parameter environments.
//!
//! Agent `i` values a bundle `S` at `v_i * w(S)`, where `w` is a public
//! additive weight on goods and `v_i` is private. Each mechanism first
//! computes a partition from `w` alone (EF1 via round-robin, approximate MMS
//! via a four-phase algorithm, or exact Nash social welfare), then hands the
//! heaviest bundle to the highest bidder and charges Myerson payments.
//!
//! Everything is generic over [`Scalar`]; the exact arbitrary-precision
//! [`Rational`] is the default, and every result in the crate's own tests is
//! exact.
//!
//! ```
//! use fairmech::{rat, run_auction, ExactInstance, MechanismKind};
//!
//! let instance = ExactInstance::new(
//!     vec![rat(5), rat(4), rat(3), rat(2)],
//!     vec![rat(10), rat(1)],
//! )
//! .unwrap();
//! let outcome = run_auction(&instance, MechanismKind::Ef1, None).unwrap();
//! assert_eq!(outcome.payments, vec![rat(2), rat(0)]);
//! assert_eq!(outcome.welfare, rat(86));
//! ```

pub mod ef1;
pub mod error;
pub mod fairness;
pub mod generators;
pub mod guard;
pub mod instance;
pub mod majorization;
pub mod mechanism;
pub mod mms;
pub mod nsw;
pub mod oracles;
pub mod scalar;

pub use ef1::{round_robin_partition, solve_fa_ef1};
pub use error::{Error, Result};
pub use fairness::{
    bundle_weight, ef1_slack, is_ef1, nsw_objective, partition_is_ef1, social_welfare,
    FairnessMargins,
};
pub use guard::{Guards, SizeGuard};
pub use instance::{Allocation, Instance, Partition, Violation};
pub use majorization::{beta_majorizes, weighted_sum_bound_holds};
pub use mechanism::{
    allocation_curve, jump_payment, myerson_payment, run_auction, run_auction_with,
    sorted_allocation, truthfulness_audit, truthfulness_audit_with_values, AuditReport,
    AuditViolation, MechanismKind, MechanismOutcome, StepFunction,
};
pub use mms::{
    alg_mms_partition, estimate_mms, exact_mms, solve_fa_mms, AlgTrace, GoodClass, MmsEstimate,
    Phase,
};
pub use nsw::{exact_nsw_partition, solve_fa_nsw};
pub use scalar::Scalar;

/// Arbitrary-precision exact rational, the canonical scalar.
pub type Rational = num_rational::BigRational;

pub type ExactInstance = Instance<Rational>;
/// Fixed-width exact rationals; fast, but may overflow on large inputs.
pub type SmallInstance = Instance<num_rational::Rational64>;
pub type FloatInstance = Instance<f64>;

pub type ExactOutcome = MechanismOutcome<Rational>;
pub type ExactEstimate = MmsEstimate<Rational>;

/// The integer `value` as a [`Rational`].
pub fn rat(value: i64) -> Rational {
    Rational::from_integer(value.into())
}

/// `numer / denom` as a [`Rational`]; panics when `denom == 0`.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}
