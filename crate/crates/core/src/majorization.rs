//! The beta-majorization order on weight sequences and the weighted-sum
//! bound it implies.

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

fn sorted_desc<T: Scalar>(values: &[T]) -> Vec<T> {
    let mut v = values.to_vec();
    v.sort_by(|a, b| scalar::cmp(b, a));
    v
}

fn same_length<T>(x: &[T], y: &[T]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            actual: y.len(),
        });
    }
    Ok(())
}

/// Whether `x` beta-majorizes `y`: equal totals, and for every `k < n` the
/// sum of the `k` largest entries of `x` is at least `beta` times that of `y`.
/// Inputs need not be sorted.
pub fn beta_majorizes<T: Scalar>(x: &[T], y: &[T], beta: &T) -> Result<bool> {
    same_length(x, y)?;
    if x.is_empty() {
        return Err(Error::InvalidParameter("empty sequences".into()));
    }
    if beta <= &T::zero() {
        return Err(Error::InvalidParameter(format!("beta must be positive, got {beta}")));
    }
    let (xs, ys) = (sorted_desc(x), sorted_desc(y));
    if scalar::sum(&xs) != scalar::sum(&ys) {
        return Ok(false);
    }
    let (mut px, mut py) = (T::zero(), T::zero());
    for (a, b) in xs.iter().zip(&ys).take(xs.len() - 1) {
        px = px + a.clone();
        py = py + b.clone();
        if px < beta.clone() * py.clone() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Evaluates `sum_i v_i x_(i) >= beta * sum_i v_i y_(i)` with `x`, `y`
/// sorted non-increasing. `v` must already be non-increasing and
/// non-negative.
pub fn weighted_sum_bound_holds<T: Scalar>(x: &[T], y: &[T], beta: &T, v: &[T]) -> Result<bool> {
    same_length(x, y)?;
    same_length(x, v)?;
    if v.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidParameter("v must be sorted non-increasing".into()));
    }
    if v.last().is_some_and(|last| last < &T::zero()) {
        return Err(Error::InvalidParameter("v must be non-negative".into()));
    }
    let dot = |s: Vec<T>| {
        s.into_iter()
            .zip(v)
            .fold(T::zero(), |acc, (a, c)| acc + a * c.clone())
    };
    Ok(dot(sorted_desc(x)) >= beta.clone() * dot(sorted_desc(y)))
}
