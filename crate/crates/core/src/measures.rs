//! Descriptive measures computed from a finished run.

use num_rational::Ratio;

use crate::capacity_space::AmbientLayout;
use crate::engine::{ScenarioStats, SimulationResult};
use crate::model::{InteractionVector, Scenario};
use crate::scalar::Scalar;

/// Share of iterations producing one scenario, kept exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioAcceptability {
    pub scenario: Scenario,
    pub count: u64,
    pub sai: Ratio<u64>,
}

impl ScenarioAcceptability {
    pub fn value(&self) -> f64 {
        *self.sai.numer() as f64 / *self.sai.denom() as f64
    }

    pub fn percent(&self) -> f64 {
        100.0 * self.value()
    }
}

/// Scenarios by descending occurrence count; equal counts keep lexicographic order.
pub fn scenario_acceptability<T: Scalar>(
    result: &SimulationResult<T>,
) -> Vec<ScenarioAcceptability> {
    let n = result.iterations.max(1);
    let mut out: Vec<ScenarioAcceptability> = result
        .scenarios
        .iter()
        .map(|(scenario, stats)| ScenarioAcceptability {
            scenario: scenario.clone(),
            count: stats.count(),
            sai: Ratio::new(stats.count(), n),
        })
        .collect();
    // stable sort keeps the BTreeMap (lexicographic) order among ties
    out.sort_by_key(|s| std::cmp::Reverse(s.count));
    out
}

/// Mean capacity of a scenario, with its componentwise sd when two or more samples exist.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralCapacity<T> {
    pub capacity: InteractionVector<T>,
    pub mean: Vec<T>,
    pub sd: Option<Vec<T>>,
}

/// Componentwise sample sd (`n - 1`) from the running sums; zero when fewer than two samples.
pub fn scenario_sd<T: Scalar>(stats: &ScenarioStats<T>) -> Vec<T> {
    let b = stats.count();
    if b < 2 {
        return vec![T::zero(); stats.dim()];
    }
    let count = T::from_u64(b).unwrap();
    stats
        .sum()
        .iter()
        .zip(stats.sum_sq())
        .map(|(&s, q)| {
            ((q - s * s / count) / (count - T::one()))
                .max(T::zero())
                .sqrt()
        })
        .collect()
}

/// Centroid of the capacities that produced a scenario. `None` for an empty accumulator.
pub fn scenario_central_capacity<T: Scalar>(
    stats: &ScenarioStats<T>,
    layout: &AmbientLayout,
) -> Option<CentralCapacity<T>> {
    let b = stats.count();
    if b == 0 {
        return None;
    }
    let count = T::from_u64(b).unwrap();
    let mean: Vec<T> = stats.sum().into_iter().map(|s| s / count).collect();
    Some(CentralCapacity {
        capacity: layout.to_interaction_vector(&mean),
        sd: (b >= 2).then(|| scenario_sd(stats)),
        mean,
    })
}

/// `C[i][h]`: share of iterations sorting alternative `i` into category `h + 1`.
pub fn category_acceptability<T: Scalar>(result: &SimulationResult<T>) -> Vec<Vec<Ratio<u64>>> {
    let n = result.iterations.max(1);
    result
        .category_counts
        .iter()
        .map(|row| row.iter().map(|&c| Ratio::new(c, n)).collect())
        .collect()
}

pub fn category_acceptability_f64<T: Scalar>(result: &SimulationResult<T>) -> Vec<Vec<f64>> {
    let n = result.iterations.max(1) as f64;
    result
        .category_counts
        .iter()
        .map(|row| row.iter().map(|&c| c as f64 / n).collect())
        .collect()
}

/// One histogram bin, closed on the left; the last bin also holds its right edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bin {
    pub lo: f64,
    pub hi: f64,
    pub count: u64,
}

/// Equal-width bins spanning the range of `values`.
pub fn histogram(values: &[f64], bins: usize) -> Vec<Bin> {
    if values.is_empty() || bins == 0 {
        return Vec::new();
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let width = if hi > lo {
        (hi - lo) / bins as f64
    } else {
        1.0
    };
    let mut counts = vec![0u64; bins];
    for &v in values {
        let b = (((v - lo) / width) as usize).min(bins - 1);
        counts[b] += 1;
    }
    counts
        .into_iter()
        .enumerate()
        .map(|(b, count)| Bin {
            lo: lo + b as f64 * width,
            hi: if b + 1 == bins {
                hi.max(lo + width)
            } else {
                lo + (b + 1) as f64 * width
            },
            count,
        })
        .collect()
}

/// Sample skewness (moment estimator); zero for constant samples.
pub fn skewness(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    if values.len() < 2 {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / n;
    let m2 = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let m3 = values.iter().map(|v| (v - mean).powi(3)).sum::<f64>() / n;
    if m2 <= 0.0 {
        0.0
    } else {
        m3 / m2.powf(1.5)
    }
}
