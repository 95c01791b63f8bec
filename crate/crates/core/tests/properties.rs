mod common;

use common::{best_assignment_welfare, permutations};
use fairmech::mechanism::{allocation_curve, jump_payment, myerson_payment};
use fairmech::mms::{alg_mms_partition, estimate_mms, exact_mms, Phase};
use fairmech::{
    beta_majorizes, is_ef1, nsw_objective, partition_is_ef1, rat, ratio, round_robin_partition,
    social_welfare, sorted_allocation, weighted_sum_bound_holds, Allocation, Instance, Partition,
    Rational,
};
use proptest::prelude::*;

fn rationals(max: i64, len: impl Into<proptest::collection::SizeRange>) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(0..=max, len).prop_map(|v| v.into_iter().map(rat).collect())
}

fn beta() -> impl Strategy<Value = Rational> {
    (1i64..=8, 1i64..=8).prop_map(|(p, q)| ratio(p, q))
}

/// The transfer bound needs `beta <= 1`: with equal totals the all-ones
/// weight vector already fails above it.
fn unit_beta() -> impl Strategy<Value = Rational> {
    (1i64..=8, 0i64..=8).prop_map(|(p, extra)| ratio(p, p + extra))
}

fn instance(max_m: usize, max_n: usize) -> impl Strategy<Value = Instance> {
    (rationals(20, 0..=max_m), rationals(10, 1..=max_n))
        .prop_map(|(w, b)| Instance::new(w, b).unwrap())
}

fn partition_of(m: usize, n: usize) -> impl Strategy<Value = Partition> {
    proptest::collection::vec(0..n, m).prop_map(move |owners| Partition::from_owners(&owners, n).unwrap())
}

fn instance_with_partition(max_m: usize, max_n: usize) -> impl Strategy<Value = (Instance, Partition)> {
    instance(max_m, max_n).prop_flat_map(|i| {
        let (m, n) = (i.m(), i.n());
        (Just(i), partition_of(m, n))
    })
}

fn sorted_desc(mut v: Vec<Rational>) -> Vec<Rational> {
    v.sort_by(|a, b| b.cmp(a));
    v
}

proptest! {
    #[test]
    fn majorization_ignores_order(x in rationals(20, 1..6), shuffle in any::<u64>(), b in beta()) {
        let y = x.iter().rev().cloned().collect::<Vec<_>>();
        let mut z = x.clone();
        let k = z.len();
        z.rotate_left((shuffle as usize) % k);
        prop_assert_eq!(beta_majorizes(&x, &y, &b).unwrap(), beta_majorizes(&z, &y, &b).unwrap());
        prop_assert_eq!(beta_majorizes(&y, &x, &b).unwrap(), beta_majorizes(&y, &z, &b).unwrap());
        prop_assert!(beta_majorizes(&x, &z, &rat(1)).unwrap());
    }

    #[test]
    fn majorization_is_monotone_in_beta(
        (x, y) in (1usize..6).prop_flat_map(|n| (rationals(10, n), rationals(10, n))),
        b in beta(),
        smaller in beta(),
    ) {
        // rescale y to x's total so the equal-sum condition can hold
        let sx: Rational = x.iter().sum();
        let sy: Rational = y.iter().sum();
        prop_assume!(sy > rat(0));
        let y: Vec<Rational> = y.iter().map(|v| v * &sx / &sy).collect();
        let lower = if smaller <= b { smaller } else { b.clone() * ratio(1, 2) };
        if beta_majorizes(&x, &y, &b).unwrap() {
            prop_assert!(beta_majorizes(&x, &y, &lower).unwrap());
        }
    }

    #[test]
    fn weighted_sum_bound_follows_from_majorization(
        (x, y, v) in (1usize..6).prop_flat_map(|n| (rationals(10, n), rationals(10, n), rationals(10, n))),
        b in unit_beta(),
    ) {
        let sx: Rational = x.iter().sum();
        let sy: Rational = y.iter().sum();
        prop_assume!(sy > rat(0));
        let y: Vec<Rational> = y.iter().map(|t| t * &sx / &sy).collect();
        let v = sorted_desc(v);
        if beta_majorizes(&x, &y, &b).unwrap() {
            prop_assert!(weighted_sum_bound_holds(&x, &y, &b, &v).unwrap());
            // the vertex weights (1, ..., 1, 0, ..., 0)
            for k in 0..=x.len() {
                let vertex: Vec<Rational> = (0..x.len()).map(|i| if i < k { rat(1) } else { rat(0) }).collect();
                prop_assert!(weighted_sum_bound_holds(&x, &y, &b, &vertex).unwrap());
            }
        }
    }

    #[test]
    fn partition_weights_sum_to_total((i, p) in instance_with_partition(9, 4)) {
        let total: Rational = p.bundle_weights(i.weights()).unwrap().into_iter().sum();
        prop_assert_eq!(total, i.total_weight());
    }

    #[test]
    fn ef1_does_not_depend_on_assignment((i, p) in instance_with_partition(8, 4), rot in 0usize..4) {
        let n = p.n();
        let mut bundles = p.bundles().to_vec();
        bundles.rotate_left(rot % n);
        let q = Partition::new(bundles, p.m()).unwrap();
        prop_assert_eq!(is_ef1(&i, &p).unwrap(), is_ef1(&i, &q).unwrap());
    }

    #[test]
    fn round_robin_is_ef1(w in rationals(50, 0..13), n in 1usize..7) {
        let p = round_robin_partition(&w, n).unwrap();
        prop_assert!(partition_is_ef1(&w, &p).unwrap());
    }

    #[test]
    fn sorted_assignment_maximizes_welfare((i, p) in instance_with_partition(8, 4)) {
        let a = sorted_allocation(&p, i.weights(), i.bids()).unwrap();
        let loads = p.bundle_weights(i.weights()).unwrap();
        prop_assert_eq!(social_welfare(&i, &a).unwrap(), best_assignment_welfare(i.bids(), &loads));
    }

    #[test]
    fn nsw_objective_ignores_assignment((i, p) in instance_with_partition(8, 4)) {
        let base = nsw_objective(&i, &p).unwrap();
        for perm in permutations(p.n()) {
            let a = Allocation::new(p.clone(), perm).unwrap();
            let q = Partition::new(a.agent_bundles(), p.m()).unwrap();
            prop_assert_eq!(nsw_objective(&i, &q).unwrap(), base.clone());
        }
    }

    #[test]
    fn payment_forms_agree_and_curves_rise(
        (i, p) in instance_with_partition(7, 4),
        agent in 0usize..4,
        z in 0i64..40,
    ) {
        let agent = agent % i.n();
        let others: Vec<Rational> = (0..i.n()).filter(|&k| k != agent).map(|k| i.bids()[k].clone()).collect();
        let curve = allocation_curve(&p, i.weights(), agent, &others).unwrap();
        prop_assert!(curve.is_monotone());
        let z = ratio(z, 4);
        let pay = myerson_payment(&curve, &z);
        prop_assert_eq!(pay.clone(), jump_payment(&curve, &z));
        prop_assert!(pay >= rat(0) && pay <= &z * curve.level(&z));
    }

    #[test]
    fn alg_bundles_reach_half_the_share(w in rationals(20, 0..9), n in 1usize..4) {
        let mu = exact_mms(&w, n).unwrap();
        let (p, trace) = alg_mms_partition(&w, n, &mu).unwrap();
        let loads = p.bundle_weights(&w).unwrap();
        let half = &mu / rat(2);
        prop_assert!(loads.iter().all(|l| l >= &half));
        if trace.phase_reached != Phase::Degenerate {
            // the last bundle is a heaviest one
            prop_assert!(loads.iter().all(|l| l <= &loads[n - 1]));
        }
    }

    #[test]
    fn estimate_is_sandwiched(w in rationals(20, 0..9), n in 1usize..4, tenth in 1i64..5) {
        let eps = ratio(tenth, 10);
        let mu = exact_mms(&w, n).unwrap();
        let e = estimate_mms(&w, n, &eps).unwrap();
        prop_assert!(e.mu_bar <= mu);
        prop_assert!(e.mu_bar >= (rat(1) - eps) * mu);
    }
}
