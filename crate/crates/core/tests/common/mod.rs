#![allow(dead_code)]

use fairmech::{rat, Instance, Rational};

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn inst(weights: &[i64], bids: &[i64]) -> Instance {
    Instance::new(ints(weights), ints(bids)).unwrap()
}

/// Every owner vector in `0..n` for `m` goods, built recursively from the
/// last good backwards, with bundle choices counted down.
pub fn naive_owner_vectors(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(good: usize, n: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if good == 0 {
            out.push(current.clone());
            return;
        }
        for b in (0..n).rev() {
            current[good - 1] = b;
            go(good - 1, n, current, out);
        }
    }
    let mut out = Vec::new();
    go(m, n, &mut vec![0; m], &mut out);
    out
}

pub fn loads(weights: &[Rational], owners: &[usize], n: usize) -> Vec<Rational> {
    let mut l = vec![rat(0); n];
    for (g, &b) in owners.iter().enumerate() {
        l[b] += &weights[g];
    }
    l
}

/// EF1 straight from the definition: for each ordered pair, some good of
/// the other bundle whose removal ends the envy.
pub fn naive_is_ef1(weights: &[Rational], owners: &[usize], n: usize) -> bool {
    let l = loads(weights, owners, n);
    (0..n).all(|i| {
        (0..n).all(|j| {
            let goods: Vec<usize> = (0..owners.len()).filter(|&g| owners[g] == j).collect();
            i == j || goods.is_empty() || goods.iter().any(|&g| l[i] >= &l[j] - &weights[g])
        })
    })
}

/// Best welfare of a fixed bundle-weight vector over all assignments.
pub fn best_assignment_welfare(bids: &[Rational], l: &[Rational]) -> Rational {
    let n = bids.len();
    let mut best: Option<Rational> = None;
    for perm in permutations(n) {
        let w: Rational = (0..n).map(|i| &bids[i] * &l[perm[i]]).sum();
        if best.as_ref().is_none_or(|b| &w > b) {
            best = Some(w);
        }
    }
    best.unwrap()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn naive_mms(weights: &[Rational], n: usize) -> Rational {
    naive_owner_vectors(weights.len(), n)
        .iter()
        .map(|o| loads(weights, o, n).into_iter().min().unwrap())
        .max()
        .unwrap_or_else(|| rat(0))
}

pub fn naive_max_product(weights: &[Rational], n: usize) -> Rational {
    naive_owner_vectors(weights.len(), n)
        .iter()
        .map(|o| loads(weights, o, n).into_iter().product::<Rational>())
        .max()
        .unwrap()
}
