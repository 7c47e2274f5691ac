//! Monte Carlo driver: draws profiles, evaluations and a capacity per iteration,
//! sorts the alternatives and accumulates per-scenario statistics.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::capacity_space::{
    build_polytope, AmbientLayout, CapacityError, CapacityPolytope, HarConfig, HarSampler,
};
use crate::choquet::{classify_all, ChoquetError};
use crate::model::{
    validate_problem, Execution, InteractionVector, Scenario, SimulationSettings, SortingProblem,
    Violation,
};
use crate::sampling::{sample_evaluations, sample_profiles, SamplingError};
use crate::scalar::{CompensatedSum, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("invalid problem: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
    #[error(transparent)]
    Sampling(#[from] SamplingError),
    #[error(transparent)]
    Choquet(#[from] ChoquetError),
    #[error("capacity samples were not retained; enable sample retention")]
    RetentionDisabled,
    #[error("sample retention stopped at its cap of {0} vectors; the list for this scenario is incomplete")]
    RetentionIncomplete(usize),
    #[error("scenario {0} never occurred")]
    ScenarioAbsent(Scenario),
}

const REPLICATION_STREAM: u64 = 0x5245_504c;
const CHUNK_STREAM: u64 = 0x4348_554e;

/// SplitMix64 finalizer applied to `(master, stream, index)`.
pub fn derive_seed(master: u64, stream: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(index.wrapping_add(1).wrapping_mul(0xBF58_476D_1CE4_E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Occurrence count plus running sums of the capacities that produced a scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioStats<T> {
    count: u64,
    sum: Vec<CompensatedSum<T>>,
    sum_sq: Vec<CompensatedSum<T>>,
}

impl<T: Scalar> ScenarioStats<T> {
    pub fn new(dim: usize) -> Self {
        Self {
            count: 0,
            sum: vec![CompensatedSum::new(); dim],
            sum_sq: vec![CompensatedSum::new(); dim],
        }
    }

    pub fn record(&mut self, x: &[T]) {
        self.count += 1;
        for ((s, q), &v) in self.sum.iter_mut().zip(&mut self.sum_sq).zip(x) {
            s.add(v);
            q.add(v * v);
        }
    }

    pub fn merge(&mut self, other: &Self) {
        self.count += other.count;
        for (a, b) in self.sum.iter_mut().zip(&other.sum) {
            a.merge(b);
        }
        for (a, b) in self.sum_sq.iter_mut().zip(&other.sum_sq) {
            a.merge(b);
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn dim(&self) -> usize {
        self.sum.len()
    }

    pub fn sum(&self) -> Vec<T> {
        self.sum.iter().map(CompensatedSum::value).collect()
    }

    pub fn sum_sq(&self) -> Vec<T> {
        self.sum_sq.iter().map(CompensatedSum::value).collect()
    }
}

/// Capacity vectors kept per scenario for histogram export.
#[derive(Debug, Clone, PartialEq)]
pub struct Retention<T> {
    cap: usize,
    stored: usize,
    overflowed: bool,
    samples: BTreeMap<Scenario, Vec<Vec<T>>>,
}

impl<T: Scalar> Retention<T> {
    pub fn new(cap: usize) -> Self {
        Self {
            cap,
            stored: 0,
            overflowed: false,
            samples: BTreeMap::new(),
        }
    }

    fn push(&mut self, scenario: &Scenario, x: &[T]) {
        if self.stored >= self.cap {
            self.overflowed = true;
            return;
        }
        self.stored += 1;
        self.samples
            .entry(scenario.clone())
            .or_default()
            .push(x.to_vec());
    }

    fn merge(&mut self, other: Retention<T>) {
        self.overflowed |= other.overflowed;
        for (scenario, list) in other.samples {
            for x in list {
                self.push(&scenario, &x);
            }
        }
    }

    pub fn overflowed(&self) -> bool {
        self.overflowed
    }

    pub fn samples(&self) -> &BTreeMap<Scenario, Vec<Vec<T>>> {
        &self.samples
    }
}

/// Mergeable accumulator over classified iterations.
#[derive(Debug, Clone, PartialEq)]
pub struct Accumulator<T> {
    dim: usize,
    iterations: u64,
    scenarios: BTreeMap<Scenario, ScenarioStats<T>>,
    category_counts: Vec<Vec<u64>>,
    retention: Option<Retention<T>>,
}

impl<T: Scalar> Accumulator<T> {
    pub fn new(
        m_alternatives: usize,
        k_categories: usize,
        dim: usize,
        retention_cap: Option<usize>,
    ) -> Self {
        Self {
            dim,
            iterations: 0,
            scenarios: BTreeMap::new(),
            category_counts: vec![vec![0; k_categories]; m_alternatives],
            retention: retention_cap.map(Retention::new),
        }
    }

    pub fn record(&mut self, scenario: Scenario, capacity: &[T]) {
        self.iterations += 1;
        for (i, &h) in scenario.assignment().iter().enumerate() {
            self.category_counts[i][h - 1] += 1;
        }
        if let Some(r) = self.retention.as_mut() {
            r.push(&scenario, capacity);
        }
        let dim = self.dim;
        self.scenarios
            .entry(scenario)
            .or_insert_with(|| ScenarioStats::new(dim))
            .record(capacity);
    }

    pub fn merge(&mut self, other: Accumulator<T>) {
        self.iterations += other.iterations;
        for (row, other_row) in self.category_counts.iter_mut().zip(&other.category_counts) {
            for (a, b) in row.iter_mut().zip(other_row) {
                *a += b;
            }
        }
        for (scenario, stats) in other.scenarios {
            match self.scenarios.get_mut(&scenario) {
                Some(existing) => existing.merge(&stats),
                None => {
                    self.scenarios.insert(scenario, stats);
                }
            }
        }
        match (self.retention.as_mut(), other.retention) {
            (Some(mine), Some(theirs)) => mine.merge(theirs),
            (None, Some(theirs)) => self.retention = Some(theirs),
            _ => {}
        }
    }

    pub fn iterations(&self) -> u64 {
        self.iterations
    }

    pub fn scenarios(&self) -> &BTreeMap<Scenario, ScenarioStats<T>> {
        &self.scenarios
    }

    pub fn category_counts(&self) -> &[Vec<u64>] {
        &self.category_counts
    }
}

/// Outcome of one Monte Carlo run.
#[derive(Debug, Clone)]
pub struct SimulationResult<T> {
    pub iterations: u64,
    pub scenarios: BTreeMap<Scenario, ScenarioStats<T>>,
    /// `m x k`, column `h - 1` counts assignments to category `h`.
    pub category_counts: Vec<Vec<u64>>,
    pub layout: AmbientLayout,
    pub settings: SimulationSettings,
    pub har: HarConfig,
    pub elapsed: Duration,
    pub retention: Option<Retention<T>>,
}

impl<T: Scalar> SimulationResult<T> {
    pub fn k_categories(&self) -> usize {
        self.category_counts.first().map_or(0, Vec::len)
    }

    pub fn m_alternatives(&self) -> usize {
        self.category_counts.len()
    }
}

struct Prepared<T> {
    polytope: CapacityPolytope<T>,
    start: Vec<T>,
    har: HarConfig,
}

fn prepare<T: Scalar>(p: &SortingProblem<T>) -> Result<Prepared<T>, EngineError> {
    let violations = validate_problem(p);
    if !violations.is_empty() {
        return Err(EngineError::Invalid(violations));
    }
    let polytope = build_polytope(
        p.n_criteria(),
        &p.preferences,
        T::lit(p.settings.strict_margin),
    )?;
    let center = polytope.chebyshev_center()?;
    let har = HarConfig::resolve(
        p.settings.burn_in,
        p.settings.thinning,
        p.settings.har_mode,
        polytope.reduced_dim(),
    );
    Ok(Prepared {
        polytope,
        start: center.reduced,
        har,
    })
}

fn run_stream<T: Scalar>(
    p: &SortingProblem<T>,
    prepared: &Prepared<T>,
    iterations: usize,
    seed: u64,
    retention_cap: Option<usize>,
) -> Result<Accumulator<T>, EngineError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampler = HarSampler::new(
        &prepared.polytope,
        prepared.start.clone(),
        prepared.har,
        &mut rng,
    )?;
    let layout = prepared.polytope.layout();
    let mut acc = Accumulator::new(
        p.m_alternatives(),
        p.k_categories(),
        layout.dim(),
        retention_cap,
    );
    for _ in 0..iterations {
        let profiles = sample_profiles(p, &mut rng)?;
        let evaluations = sample_evaluations(p, &profiles, &mut rng)?;
        let x = sampler.next_ambient(&mut rng)?;
        let capacity = layout.to_interaction_vector(&x);
        let scenario = classify_all(&evaluations, &profiles, &capacity)?;
        acc.record(scenario, &x);
    }
    Ok(acc)
}

/// Runs the Monte Carlo loop described by `p.settings`.
///
/// Serial execution uses one random stream seeded with `settings.seed`; parallel
/// execution splits the iterations into fixed chunks with derived seeds, so the
/// output is reproducible but differs from the serial stream.
pub fn run_simulation<T: Scalar>(
    p: &SortingProblem<T>,
) -> Result<SimulationResult<T>, EngineError> {
    let started = Instant::now();
    let prepared = prepare(p)?;
    let s = &p.settings;
    let cap = s.retain_samples.then_some(s.retention_cap);
    let acc = match s.execution {
        Execution::Serial => run_stream(p, &prepared, s.iterations, s.seed, cap)?,
        Execution::Parallel { chunks } => {
            let chunks = chunks.max(1);
            let per_chunk_cap = cap.map(|c| c / chunks);
            let parts = (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let share = s.iterations / chunks + usize::from(c < s.iterations % chunks);
                    run_stream(
                        p,
                        &prepared,
                        share,
                        derive_seed(s.seed, CHUNK_STREAM, c as u64),
                        per_chunk_cap,
                    )
                })
                .collect::<Result<Vec<_>, _>>()?;
            let mut total = Accumulator::new(
                p.m_alternatives(),
                p.k_categories(),
                prepared.polytope.ambient_dim(),
                cap,
            );
            for part in parts {
                total.merge(part);
            }
            total
        }
    };
    Ok(SimulationResult {
        iterations: acc.iterations,
        scenarios: acc.scenarios,
        category_counts: acc.category_counts,
        layout: prepared.polytope.layout().clone(),
        settings: s.clone(),
        har: prepared.har,
        elapsed: started.elapsed(),
        retention: acc.retention,
    })
}

/// The retained capacity vectors that produced `scenario`, in draw order.
pub fn export_capacity_samples<T: Scalar>(
    result: &SimulationResult<T>,
    scenario: &Scenario,
) -> Result<Vec<InteractionVector<T>>, EngineError> {
    let retention = result
        .retention
        .as_ref()
        .ok_or(EngineError::RetentionDisabled)?;
    if !result.scenarios.contains_key(scenario) {
        return Err(EngineError::ScenarioAbsent(scenario.clone()));
    }
    if retention.overflowed {
        return Err(EngineError::RetentionIncomplete(retention.cap));
    }
    Ok(retention
        .samples
        .get(scenario)
        .map(|list| {
            list.iter()
                .map(|x| result.layout.to_interaction_vector(x))
                .collect()
        })
        .unwrap_or_default())
}

/// Cross-replication statistics for one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicatedScenario<T> {
    pub scenario: Scenario,
    /// Replications in which the scenario occurred at least once.
    pub occurrences: usize,
    pub sai_mean: f64,
    pub sai_sd: f64,
    pub sai_ci: (f64, f64),
    /// Mean over the replications where the scenario occurred.
    pub capacity_mean: Vec<T>,
    pub capacity_sd: Vec<T>,
    pub capacity_ci: Vec<(T, T)>,
    /// Within-scenario sd of the sampled capacities, pooled over all replications.
    pub capacity_pooled_sd: Vec<T>,
}

#[derive(Debug, Clone)]
pub struct ReplicationSummary<T> {
    pub seeds: Vec<u64>,
    pub runs: Vec<SimulationResult<T>>,
    /// Descending by mean SAI, ties broken by scenario order.
    pub scenarios: Vec<ReplicatedScenario<T>>,
    pub layout: AmbientLayout,
}

fn mean_sd(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// 95% normal-approximation interval `mean ± 1.96 sd / sqrt(r)`.
fn ci95(mean: f64, sd: f64, r: usize) -> (f64, f64) {
    let half = 1.96 * sd / (r as f64).sqrt();
    (mean - half, mean + half)
}

/// Runs `replications` independent simulations with seeds derived from the master seed.
pub fn run_replications<T: Scalar>(
    p: &SortingProblem<T>,
    replications: usize,
) -> Result<ReplicationSummary<T>, EngineError> {
    let seeds: Vec<u64> = (0..replications as u64)
        .map(|r| derive_seed(p.settings.seed, REPLICATION_STREAM, r))
        .collect();
    run_replications_with_seeds(p, &seeds)
}

/// Replication harness over explicit seeds.
pub fn run_replications_with_seeds<T: Scalar>(
    p: &SortingProblem<T>,
    seeds: &[u64],
) -> Result<ReplicationSummary<T>, EngineError> {
    let runs = seeds
        .par_iter()
        .map(|&seed| {
            let mut q = p.clone();
            q.settings.seed = seed;
            run_simulation(&q)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let layout = match runs.first() {
        Some(r) => r.layout.clone(),
        None => prepare(p)?.polytope.layout().clone(),
    };
    let r = runs.len();
    let mut union: BTreeMap<Scenario, ()> = BTreeMap::new();
    for run in &runs {
        for s in run.scenarios.keys() {
            union.insert(s.clone(), ());
        }
    }

    let dim = layout.dim();
    let mut scenarios: Vec<ReplicatedScenario<T>> = union
        .into_keys()
        .map(|scenario| {
            let sai: Vec<f64> = runs
                .iter()
                .map(|run| {
                    run.scenarios
                        .get(&scenario)
                        .map_or(0.0, |st| st.count() as f64 / run.iterations as f64)
                })
                .collect();
            let (sai_mean, sai_sd) = mean_sd(&sai);
            let present: Vec<&ScenarioStats<T>> = runs
                .iter()
                .filter_map(|run| run.scenarios.get(&scenario))
                .collect();
            let mut pooled = ScenarioStats::new(dim);
            for st in &present {
                pooled.merge(st);
            }
            let mut capacity_mean = Vec::with_capacity(dim);
            let mut capacity_sd = Vec::with_capacity(dim);
            let mut capacity_ci = Vec::with_capacity(dim);
            for c in 0..dim {
                let centrals: Vec<f64> = present
                    .iter()
                    .map(|st| st.sum()[c].to_f64_lossy() / st.count() as f64)
                    .collect();
                let (m, sd) = mean_sd(&centrals);
                let (lo, hi) = ci95(m, sd, present.len());
                capacity_mean.push(T::lit(m));
                capacity_sd.push(T::lit(sd));
                capacity_ci.push((T::lit(lo), T::lit(hi)));
            }
            let capacity_pooled_sd = crate::measures::scenario_sd(&pooled);
            ReplicatedScenario {
                scenario,
                occurrences: present.len(),
                sai_mean,
                sai_sd,
                sai_ci: ci95(sai_mean, sai_sd, r),
                capacity_mean,
                capacity_sd,
                capacity_ci,
                capacity_pooled_sd,
            }
        })
        .collect();
    scenarios.sort_by(|a, b| {
        b.sai_mean
            .partial_cmp(&a.sai_mean)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.scenario.cmp(&b.scenario))
    });
    Ok(ReplicationSummary {
        seeds: seeds.to_vec(),
        runs,
        scenarios,
        layout,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_seeds_differ() {
        let a: Vec<u64> = (0..100)
            .map(|i| derive_seed(42, REPLICATION_STREAM, i))
            .collect();
        let mut b = a.clone();
        b.sort();
        b.dedup();
        assert_eq!(b.len(), 100);
        assert_ne!(
            derive_seed(42, CHUNK_STREAM, 0),
            derive_seed(42, REPLICATION_STREAM, 0)
        );
    }

    #[test]
    fn stats_mean_identity() {
        let mut st = ScenarioStats::<f64>::new(3);
        st.record(&[0.5, 0.5, -0.40]);
        st.record(&[0.5, 0.5, -0.52]);
        assert_eq!(st.count(), 2);
        let s = st.sum();
        assert!((s[2] + 0.92).abs() < 1e-15);
        assert!((st.sum_sq()[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn retention_cap_marks_overflow() {
        let mut acc = Accumulator::<f64>::new(1, 2, 1, Some(2));
        for _ in 0..3 {
            acc.record(Scenario::new(vec![1]), &[1.0]);
        }
        let r = acc.retention.as_ref().unwrap();
        assert!(r.overflowed());
        assert_eq!(r.samples()[&Scenario::new(vec![1])].len(), 2);
    }
}
