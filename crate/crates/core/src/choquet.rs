//! 2-additive Choquet integral in the Shapley/interaction representation and the
//! threshold sorting rule built on top of it.

use thiserror::Error;

use crate::model::{InteractionVector, Scenario};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChoquetError {
    #[error("evaluation vector has {got} entries, capacity has {expected} criteria")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("capacity derived from the interaction vector is not monotone: mu({superset:?}) < mu({subset:?})")]
    NonMonotoneCapacity {
        subset: Vec<usize>,
        superset: Vec<usize>,
    },
    #[error("profile values must be non-increasing, got {0:?}")]
    UnorderedProfiles(Vec<f64>),
    #[error("aggregated value {value} outside the profile range [{worst}, {best}]")]
    OutOfRange { value: f64, worst: f64, best: f64 },
    #[error("at least two profiles are needed to delimit a category")]
    TooFewProfiles,
}

/// Aggregated value of `g` under the 2-additive capacity `capacity`.
pub fn choquet_value<T: Scalar>(
    g: &[T],
    capacity: &InteractionVector<T>,
) -> Result<T, ChoquetError> {
    let n = capacity.n_criteria();
    if g.len() != n {
        return Err(ChoquetError::DimensionMismatch {
            expected: n,
            got: g.len(),
        });
    }
    let half = T::lit(0.5);
    let mut own_weight = capacity.shapley().to_vec();
    let mut pairwise = T::zero();
    for &(pair, v) in capacity.interactions() {
        let (a, b) = (g[pair.low()], g[pair.high()]);
        if v > T::zero() {
            pairwise = pairwise + a.min(b) * v;
        } else if v < T::zero() {
            pairwise = pairwise + a.max(b) * v.abs();
        }
        own_weight[pair.low()] = own_weight[pair.low()] - half * v.abs();
        own_weight[pair.high()] = own_weight[pair.high()] - half * v.abs();
    }
    Ok(g.iter()
        .zip(&own_weight)
        .fold(pairwise, |acc, (&x, &w)| acc + x * w))
}

/// Möbius masses of the 2-additive capacity: singletons then pairs.
fn mobius<T: Scalar>(capacity: &InteractionVector<T>) -> (Vec<T>, Vec<(usize, usize, T)>) {
    let half = T::lit(0.5);
    let mut singles = capacity.shapley().to_vec();
    let mut pairs = Vec::with_capacity(capacity.interactions().len());
    for &(pair, v) in capacity.interactions() {
        singles[pair.low()] = singles[pair.low()] - half * v;
        singles[pair.high()] = singles[pair.high()] - half * v;
        pairs.push((pair.low(), pair.high(), v));
    }
    (singles, pairs)
}

fn capacity_of<T: Scalar>(mask: u64, singles: &[T], pairs: &[(usize, usize, T)]) -> T {
    let mut mu = T::zero();
    for (j, &m) in singles.iter().enumerate() {
        if mask & (1 << j) != 0 {
            mu = mu + m;
        }
    }
    for &(a, b, m) in pairs {
        if mask & (1 << a) != 0 && mask & (1 << b) != 0 {
            mu = mu + m;
        }
    }
    mu
}

fn members(mask: u64, n: usize) -> Vec<usize> {
    (0..n)
        .filter(|j| mask & (1 << j) != 0)
        .map(|j| j + 1)
        .collect()
}

/// Independent evaluation route: rebuilds the capacity set function from its Möbius
/// masses, checks monotonicity over the full lattice, and evaluates the classical
/// sorted-permutation form of the Choquet integral.
///
/// Exponential in `n`; intended for verification with a handful of criteria.
pub fn choquet_value_oracle<T: Scalar>(
    g: &[T],
    capacity: &InteractionVector<T>,
) -> Result<T, ChoquetError> {
    let n = capacity.n_criteria();
    if g.len() != n {
        return Err(ChoquetError::DimensionMismatch {
            expected: n,
            got: g.len(),
        });
    }
    assert!(n < 24, "oracle enumerates 2^n coalitions");
    let (singles, pairs) = mobius(capacity);
    let tol = T::tolerance();
    for mask in 0u64..(1 << n) {
        let base = capacity_of(mask, &singles, &pairs);
        for j in 0..n {
            if mask & (1 << j) == 0 {
                let grown = mask | (1 << j);
                if capacity_of(grown, &singles, &pairs) < base - tol {
                    return Err(ChoquetError::NonMonotoneCapacity {
                        subset: members(mask, n),
                        superset: members(grown, n),
                    });
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g[a].partial_cmp(&g[b]).unwrap_or(std::cmp::Ordering::Equal));
    let mut upper: u64 = (1 << n) - 1;
    let mut previous = T::zero();
    let mut total = T::zero();
    for &j in &order {
        total = total + (g[j] - previous) * capacity_of(upper, &singles, &pairs);
        previous = g[j];
        upper &= !(1 << j);
    }
    Ok(total)
}

/// Category (one-based, 1 = best) whose interval `[profile_h+1, profile_h)` holds
/// `value`; the best category is also closed at the top.
pub fn sort_alternative<T: Scalar>(value: T, profile_values: &[T]) -> Result<usize, ChoquetError> {
    if profile_values.len() < 2 {
        return Err(ChoquetError::TooFewProfiles);
    }
    if profile_values.windows(2).any(|w| w[0] < w[1]) {
        return Err(ChoquetError::UnorderedProfiles(
            profile_values.iter().map(|v| v.to_f64_lossy()).collect(),
        ));
    }
    let best = profile_values[0];
    let worst = profile_values[profile_values.len() - 1];
    // Aggregating a vector that equals a profile on some criteria can land an ulp
    // outside the range.
    let slack = T::epsilon() * T::lit(64.0) * best.abs().max(worst.abs()).max(T::one());
    if !(value <= best + slack && value >= worst - slack) {
        return Err(ChoquetError::OutOfRange {
            value: value.to_f64_lossy(),
            worst: worst.to_f64_lossy(),
            best: best.to_f64_lossy(),
        });
    }
    let k = profile_values.len() - 1;
    Ok((1..=k).find(|&h| value >= profile_values[h]).unwrap_or(k))
}

/// Sorts every alternative of one realized problem instance.
///
/// Profiles are scalarized with the same capacity as the alternatives.
pub fn classify_all<T: Scalar>(
    evaluations: &[Vec<T>],
    profiles: &[Vec<T>],
    capacity: &InteractionVector<T>,
) -> Result<Scenario, ChoquetError> {
    let profile_values = profiles
        .iter()
        .map(|row| choquet_value(row, capacity))
        .collect::<Result<Vec<_>, _>>()?;
    evaluations
        .iter()
        .map(|row| sort_alternative(choquet_value(row, capacity)?, &profile_values))
        .collect::<Result<Vec<_>, _>>()
        .map(Scenario::new)
}
