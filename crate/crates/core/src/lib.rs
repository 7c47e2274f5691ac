//! Stochastic identification of 2-additive Choquet capacities for threshold-based
//! multicriteria sorting.
//!
//! Each Monte Carlo iteration draws the limiting profiles, the alternatives'
//! evaluations and a capacity from the space of interaction vectors compatible with
//! the decision maker's statements (sampled with Hit-And-Run), then sorts every
//! alternative. Iterations that produce the same joint assignment (a scenario) are
//! pooled into the scenario acceptability index and the scenario central capacity.
//!
//! The numerical core is generic over [`Scalar`] (`f32`, `f64`); the aliases at the
//! crate root fix the usual double-precision instantiation. Acceptability shares are
//! exact rationals over the iteration count.
//!
//! ```
//! use choquet_sorting::{choquet_value, InteractionVectorF64, CriterionPair};
//!
//! let capacity = InteractionVectorF64::new(
//!     vec![0.5, 0.5],
//!     vec![(CriterionPair::new(0, 1).unwrap(), -0.4)],
//! ).unwrap();
//! let value = choquet_value(&[8.0, 6.0], &capacity).unwrap();
//! assert!((value - 7.4).abs() < 1e-12);
//! ```

pub mod capacity_space;
pub mod choquet;
pub mod engine;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod measures;
pub mod model;
pub mod sampling;
pub mod scalar;

pub use capacity_space::{
    build_polytope, AmbientLayout, CapacityError, CapacityPolytope, HarConfig, HarMode, HarSampler,
};
pub use choquet::{
    choquet_value, choquet_value_oracle, classify_all, sort_alternative, ChoquetError,
};
pub use engine::{
    derive_seed, export_capacity_samples, run_replications, run_replications_with_seeds,
    run_simulation, Accumulator, EngineError, ReplicatedScenario, ReplicationSummary,
    ScenarioStats, SimulationResult,
};
pub use io::{
    canonical_json, parse_problem, parse_problem_layered, parse_report, samples_csv, write_report,
    IoError, Report, ReportFormat, SettingsOverrides,
};
pub use measures::{
    category_acceptability, category_acceptability_f64, histogram, scenario_acceptability,
    scenario_central_capacity, skewness, Bin, CentralCapacity, ScenarioAcceptability,
};
pub use model::{
    validate_problem, CriterionPair, Execution, InteractionSign, InteractionVector,
    PreferenceStatements, Scenario, ShapleyRelation, SimulationSettings, SortingProblem,
    StochasticValue, TruncationRule, Violation, ViolationRule,
};
pub use sampling::{sample_evaluations, sample_profiles, SamplingError};
pub use scalar::Scalar;

/// Exact share of iterations.
pub type Share = num_rational::Ratio<u64>;

pub type InteractionVectorF64 = InteractionVector<f64>;
pub type InteractionVectorF32 = InteractionVector<f32>;
pub type StochasticValueF64 = StochasticValue<f64>;
pub type StochasticValueF32 = StochasticValue<f32>;
pub type SortingProblemF64 = SortingProblem<f64>;
pub type SortingProblemF32 = SortingProblem<f32>;
pub type CapacityPolytopeF64 = CapacityPolytope<f64>;
pub type CapacityPolytopeF32 = CapacityPolytope<f32>;
pub type SimulationResultF64 = SimulationResult<f64>;
pub type SimulationResultF32 = SimulationResult<f32>;
pub type ReplicationSummaryF64 = ReplicationSummary<f64>;
