//! Heterogeneous valuations, outside the single-parameter model: the
//! independent-set reduction and the brute force needed to check it.

use crate::error::{Error, Result};
use crate::guard::SizeGuard;
use crate::scalar::{self, Scalar};
use crate::Rational;

const GUARD_HINT: &str = "; heterogeneous welfare search is exponential";

/// Additive per-agent valuations: `valuations[i][g]` is agent `i`'s value
/// for good `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HetInstance<T = Rational> {
    valuations: Vec<Vec<T>>,
    goods: usize,
}

impl<T: Scalar> HetInstance<T> {
    pub fn new(valuations: Vec<Vec<T>>, goods: usize) -> Result<Self> {
        if valuations.is_empty() {
            return Err(Error::InvalidParameter("no agents".into()));
        }
        for (i, row) in valuations.iter().enumerate() {
            if row.len() != goods {
                return Err(Error::LengthMismatch {
                    expected: goods,
                    actual: row.len(),
                });
            }
            if let Some(g) = row.iter().position(|v| v < &T::zero()) {
                return Err(Error::InvalidParameter(format!(
                    "agent {i} has a negative value for good {g}"
                )));
            }
        }
        Ok(Self { valuations, goods })
    }

    pub fn valuations(&self) -> &[Vec<T>] {
        &self.valuations
    }

    pub fn m(&self) -> usize {
        self.goods
    }

    pub fn n(&self) -> usize {
        self.valuations.len()
    }

    fn value(&self, agent: usize, bundle: &[usize]) -> T {
        scalar::sum(bundle.iter().map(|&g| &self.valuations[agent][g]))
    }
}

/// The reduction from maximum independent set: one good per vertex, agent
/// 0 values every good at 1, and the agent for edge `(u, w)` values `u` and
/// `w` at `1 / (2 n^2)` where `n = |E| + 1`. The best EF1 welfare lies in
/// `[t, t + 1)` for the maximum independent set size `t`.
pub fn het_ef1_instance<T: Scalar>(edges: &[(usize, usize)], num_vertices: usize) -> Result<HetInstance<T>> {
    let mut seen = std::collections::BTreeSet::new();
    for &(u, w) in edges {
        if u >= num_vertices || w >= num_vertices {
            return Err(Error::GoodOutOfRange {
                index: u.max(w),
                goods: num_vertices,
            });
        }
        if u == w {
            return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u.min(w), u.max(w))) {
            return Err(Error::InvalidParameter(format!("repeated edge ({u}, {w})")));
        }
    }
    let n = edges.len() + 1;
    let eps = T::one() / T::from_usize_lossless(2 * n * n);
    let mut valuations = vec![vec![T::one(); num_vertices]];
    for &(u, w) in edges {
        let mut row = vec![T::zero(); num_vertices];
        row[u] = eps.clone();
        row[w] = eps.clone();
        valuations.push(row);
    }
    HetInstance::new(valuations, num_vertices)
}

/// EF1 with each agent judging by its own valuation: for all `i != j` with
/// `S_j` nonempty, `v_i(S_i) >= v_i(S_j) - max_{g in S_j} v_i(g)`.
/// `bundles` are listed in agent order.
pub fn het_is_ef1<T: Scalar>(instance: &HetInstance<T>, bundles: &[Vec<usize>]) -> bool {
    (0..instance.n()).all(|i| {
        let own = instance.value(i, &bundles[i]);
        bundles.iter().enumerate().all(|(j, other)| {
            if i == j || other.is_empty() {
                return true;
            }
            let row = &instance.valuations[i];
            let peak = other.iter().map(|&g| row[g].clone()).fold(T::zero(), scalar::max);
            own >= instance.value(i, other) - peak
        })
    })
}

pub fn het_welfare<T: Scalar>(instance: &HetInstance<T>, bundles: &[Vec<usize>]) -> T {
    bundles
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (i, b)| acc + instance.value(i, b))
}

/// The best welfare over heterogeneous-EF1 allocations, with agent-ordered
/// bundles attaining it.
pub fn het_welfare_oracle<T: Scalar>(instance: &HetInstance<T>, guard: SizeGuard) -> Result<(Vec<Vec<usize>>, T)> {
    guard.check(instance.m(), instance.n(), GUARD_HINT)?;
    let m = instance.m();
    // optimistic[g] = sum over goods g.. of the highest value any agent has
    let mut optimistic = vec![T::zero(); m + 1];
    for g in (0..m).rev() {
        let top = instance
            .valuations
            .iter()
            .map(|row| row[g].clone())
            .fold(T::zero(), scalar::max);
        optimistic[g] = optimistic[g + 1].clone() + top;
    }
    let mut search = HetSearch {
        instance,
        optimistic,
        bundles: vec![Vec::new(); instance.n()],
        best: None,
    };
    search.descend(0, T::zero());
    Ok(search.best.expect("some EF1 allocation exists"))
}

struct HetSearch<'a, T: Scalar> {
    instance: &'a HetInstance<T>,
    optimistic: Vec<T>,
    bundles: Vec<Vec<usize>>,
    best: Option<(Vec<Vec<usize>>, T)>,
}

impl<T: Scalar> HetSearch<'_, T> {
    fn descend(&mut self, g: usize, welfare: T) {
        if let Some((_, best)) = &self.best {
            if welfare.clone() + self.optimistic[g].clone() <= *best {
                return;
            }
        }
        if g == self.instance.m() {
            if het_is_ef1(self.instance, &self.bundles) {
                self.best = Some((self.bundles.clone(), welfare));
            }
            return;
        }
        for agent in 0..self.instance.n() {
            let gained = welfare.clone() + self.instance.valuations[agent][g].clone();
            self.bundles[agent].push(g);
            self.descend(g + 1, gained);
            self.bundles[agent].pop();
        }
    }
}

/// Size of a maximum independent set, by enumerating vertex subsets.
pub fn max_independent_set(edges: &[(usize, usize)], num_vertices: usize) -> Result<usize> {
    if num_vertices > 24 {
        return Err(Error::InvalidParameter(format!(
            "{num_vertices} vertices is too many to enumerate"
        )));
    }
    let masks: Vec<u32> = edges.iter().map(|&(u, w)| (1 << u) | (1 << w)).collect();
    Ok((0u32..1 << num_vertices)
        .filter(|set| masks.iter().all(|e| set & e != *e))
        .map(|set| set.count_ones() as usize)
        .max()
        .unwrap_or(0))
}
