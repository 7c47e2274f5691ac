//! Per-iteration realization of the stochastic profile and evaluation matrices.

use rand::Rng;
use thiserror::Error;

use crate::model::{SortingProblem, TruncationRule};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SamplingError {
    #[error("realized profiles {upper} and {lower} are out of order on criterion {criterion}")]
    ProfileOrder {
        upper: usize,
        lower: usize,
        criterion: usize,
    },
    #[error("no draw for alternative {alternative} on criterion {criterion} fell inside [{lo}, {hi}] after {attempts} attempts")]
    TruncationExhausted {
        alternative: usize,
        criterion: usize,
        lo: f64,
        hi: f64,
        attempts: usize,
    },
}

/// Draws every profile cell independently, row by row (best profile first); a shared
/// row is drawn once and copied to every criterion.
pub fn sample_profiles<T: Scalar, R: Rng + ?Sized>(
    p: &SortingProblem<T>,
    rng: &mut R,
) -> Result<Vec<Vec<T>>, SamplingError> {
    let rows: Vec<Vec<T>> = p
        .profiles
        .iter()
        .enumerate()
        .map(|(h, row)| match row.first() {
            Some(cell) if p.shared_profile_rows.contains(&h) => vec![cell.sample(rng); row.len()],
            _ => row.iter().map(|cell| cell.sample(rng)).collect(),
        })
        .collect();
    for (h, pair) in rows.windows(2).enumerate() {
        if let Some(j) = pair[1]
            .iter()
            .zip(&pair[0])
            .position(|(lower, upper)| lower > upper)
        {
            return Err(SamplingError::ProfileOrder {
                upper: h + 1,
                lower: h + 2,
                criterion: j + 1,
            });
        }
    }
    Ok(rows)
}

/// Draws every evaluation inside the realized worst/best profile values of its
/// criterion, by rejection or clamping according to `settings.truncation`.
pub fn sample_evaluations<T: Scalar, R: Rng + ?Sized>(
    p: &SortingProblem<T>,
    profiles: &[Vec<T>],
    rng: &mut R,
) -> Result<Vec<Vec<T>>, SamplingError> {
    let best = &profiles[0];
    let worst = &profiles[profiles.len() - 1];
    let attempts = p.settings.truncation_max_attempts;
    p.evaluations
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, cell)| {
                    let (lo, hi) = (worst[j], best[j]);
                    if p.settings.truncation == TruncationRule::Clamp {
                        return Ok(cell.sample(rng).max(lo).min(hi));
                    }
                    (0..attempts)
                        .map(|_| cell.sample(rng))
                        .find(|v| *v >= lo && *v <= hi)
                        .ok_or(SamplingError::TruncationExhausted {
                            alternative: i + 1,
                            criterion: j + 1,
                            lo: lo.to_f64_lossy(),
                            hi: hi.to_f64_lossy(),
                            attempts,
                        })
                })
                .collect()
        })
        .collect()
}
