#![allow(dead_code)]

use choquet_sorting::{
    build_polytope, CriterionPair, HarConfig, HarMode, HarSampler, InteractionSign,
    InteractionVector, PreferenceStatements, ShapleyRelation, SimulationSettings, SortingProblem,
    StochasticValue,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SV = StochasticValue<f64>;

pub fn school() -> SortingProblem<f64> {
    let n = |mean, sd| SV::normal(mean, sd);
    let u = |lo, hi| SV::Uniform { lo, hi };
    let evaluations = vec![
        vec![n(5.2, 1.9), n(4.2, 0.8)],
        vec![n(8.9, 0.6), n(9.3, 0.2)],
        vec![n(4.1, 0.6), n(6.3, 0.7)],
        vec![n(8.2, 1.4), n(6.9, 0.6)],
        vec![n(8.3, 1.1), n(4.7, 0.8)],
    ];
    let profiles = vec![
        vec![SV::Point(10.0), SV::Point(10.0)],
        vec![u(7.5, 8.0), u(7.5, 8.0)],
        vec![u(4.5, 5.0), u(4.5, 5.0)],
        vec![SV::Point(0.0), SV::Point(0.0)],
    ];
    SortingProblem::new(
        evaluations,
        profiles,
        example_preferences(),
        SimulationSettings {
            iterations: 10_000,
            seed: 42,
            ..SimulationSettings::default()
        },
    )
    .with_shared_profile_rows([1, 2])
}

pub fn example_preferences() -> PreferenceStatements {
    PreferenceStatements::new()
        .with_interaction(0, 1, InteractionSign::Redundancy)
        .unwrap()
        .with_relation(0, ShapleyRelation::Indifferent, 1)
}

/// A feasible capacity on `n` criteria: every pair gets a random sign, then one
/// Hit-And-Run draw from the resulting polytope.
pub fn random_capacity(n: usize, rng: &mut ChaCha8Rng) -> InteractionVector<f64> {
    let mut prefs = PreferenceStatements::new();
    for a in 0..n {
        for b in a + 1..n {
            match rng.random_range(0..3) {
                0 => prefs
                    .declare_interaction(a, b, InteractionSign::Synergy)
                    .unwrap(),
                1 => prefs
                    .declare_interaction(a, b, InteractionSign::Redundancy)
                    .unwrap(),
                _ => {}
            }
        }
    }
    let polytope = build_polytope(n, &prefs, 1e-6_f64).unwrap();
    let d = polytope.reduced_dim();
    let config = HarConfig::resolve(Some(d * 4), Some(d), HarMode::Chain, d);
    let mut sampler = HarSampler::from_center(&polytope, config, rng).unwrap();
    sampler.next_capacity(rng).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pair(a: usize, b: usize) -> CriterionPair {
    CriterionPair::new(a, b).unwrap()
}
