//! Every oracle against a second enumerator written independently in
//! `common`, and the exact solvers against both.

mod common;

use common::{best_assignment_welfare, loads, naive_is_ef1, naive_max_product, naive_mms, naive_owner_vectors};
use fairmech::generators::random_instance;
use fairmech::mms::exact_mms;
use fairmech::nsw::exact_nsw_partition;
use fairmech::oracles::{
    brute_force_amms_check, brute_force_opt_ef1, brute_force_opt_mms, enumerate_ef1_partitions,
    enumerate_partitions, Labels,
};
use fairmech::{partition_is_ef1, ratio, social_welfare, Instance, Rational};

fn sample(seed: u64) -> Instance {
    let m = 1 + (seed % 7) as usize;
    let n = 1 + (seed % 3) as usize;
    random_instance(m, n, 12, 9, seed).unwrap()
}

#[test]
fn ordered_enumeration_matches_naive() {
    for (m, n) in [(0, 1), (0, 3), (3, 2), (4, 3), (5, 2)] {
        let mut mine: Vec<Vec<usize>> = enumerate_partitions(m, n, Labels::Ordered).unwrap().map(|p| p.owners()).collect();
        let mut naive = naive_owner_vectors(m, n);
        mine.sort();
        naive.sort();
        assert_eq!(mine, naive, "m = {m}, n = {n}");
    }
}

#[test]
fn unordered_enumeration_covers_every_block_structure() {
    use std::collections::BTreeSet;
    for (m, n) in [(4, 2), (5, 3), (6, 4)] {
        let canonical = |owners: &[usize]| -> BTreeSet<Vec<usize>> {
            (0..n)
                .map(|b| (0..m).filter(|&g| owners[g] == b).collect::<Vec<_>>())
                .collect()
        };
        let mine: Vec<BTreeSet<Vec<usize>>> =
            enumerate_partitions(m, n, Labels::Unordered).unwrap().map(|p| canonical(&p.owners())).collect();
        let distinct: BTreeSet<_> = mine.iter().cloned().collect();
        assert_eq!(distinct.len(), mine.len(), "duplicates for m = {m}, n = {n}");
        let naive: BTreeSet<_> = naive_owner_vectors(m, n).iter().map(|o| canonical(o)).collect();
        assert_eq!(distinct, naive);
    }
}

#[test]
fn ef1_oracle_matches_naive() {
    for seed in 0..120 {
        let i = sample(seed);
        let (a, welfare) = brute_force_opt_ef1(&i).unwrap();
        assert!(partition_is_ef1(i.weights(), a.partition()).unwrap());
        assert_eq!(social_welfare(&i, &a).unwrap(), welfare);
        let naive = naive_owner_vectors(i.m(), i.n())
            .iter()
            .filter(|o| naive_is_ef1(i.weights(), o, i.n()))
            .map(|o| best_assignment_welfare(i.bids(), &loads(i.weights(), o, i.n())))
            .max()
            .unwrap();
        assert_eq!(welfare, naive, "seed {seed}");

        let listed = enumerate_ef1_partitions(&i).unwrap().len();
        let counted = naive_owner_vectors(i.m(), i.n()).iter().filter(|o| naive_is_ef1(i.weights(), o, i.n())).count();
        assert_eq!(listed, counted, "seed {seed}");
    }
}

#[test]
fn mms_oracle_matches_naive_and_exact() {
    for seed in 0..120 {
        let i = sample(seed);
        let (a, welfare, mu) = brute_force_opt_mms(&i).unwrap();
        let naive_mu = naive_mms(i.weights(), i.n());
        assert_eq!(mu, naive_mu, "seed {seed}");
        assert_eq!(exact_mms(i.weights(), i.n()).unwrap(), mu, "seed {seed}");
        assert!(a.agent_weights(i.weights()).unwrap().iter().all(|l| l >= &mu));
        let naive = naive_owner_vectors(i.m(), i.n())
            .iter()
            .map(|o| loads(i.weights(), o, i.n()))
            .filter(|l| l.iter().all(|x| x >= &mu))
            .map(|l| best_assignment_welfare(i.bids(), &l))
            .max()
            .unwrap();
        assert_eq!(welfare, naive, "seed {seed}");
    }
}

#[test]
fn amms_check_matches_naive() {
    for seed in 0..60 {
        let i = sample(seed);
        let mu = naive_mms(i.weights(), i.n());
        for alpha in [ratio(1, 4), ratio(1, 2), ratio(1, 1)] {
            let best: Rational = naive_owner_vectors(i.m(), i.n())
                .iter()
                .map(|o| loads(i.weights(), o, i.n()))
                .filter(|l| l.iter().all(|x| x >= &(&alpha * &mu)))
                .map(|l| best_assignment_welfare(i.bids(), &l))
                .max()
                .unwrap();
            assert!(brute_force_amms_check(&i, &alpha, &best).unwrap());
            assert!(!brute_force_amms_check(&i, &alpha, &(best + ratio(1, 7))).unwrap());
        }
    }
}

#[test]
fn nsw_matches_naive() {
    for seed in 0..120 {
        let i = sample(seed);
        let p = exact_nsw_partition(i.weights(), i.n()).unwrap();
        let product: Rational = p.bundle_weights(i.weights()).unwrap().into_iter().product();
        assert_eq!(product, naive_max_product(i.weights(), i.n()), "seed {seed}");
    }
}
