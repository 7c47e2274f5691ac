//! Domain types: stochastic inputs, preference statements, interaction vectors
//! and the sorting problem itself.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::capacity_space::HarMode;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("criterion pair ({0}, {0}) is not a pair of distinct criteria")]
    DegeneratePair(usize),
    #[error("pair I_{}{} declared both as synergy and redundancy", .0 + 1, .1 + 1)]
    ConflictingSign(usize, usize),
    #[error("cannot parse scenario {0:?}")]
    ScenarioSyntax(String),
    #[error("at least one sample is required to estimate a distribution")]
    EmptySample,
}

/// Random variable describing one cell of the decision matrix or of the profile matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StochasticValue<T> {
    Point(T),
    Uniform { lo: T, hi: T },
    Normal { mean: T, sd: T },
}

impl<T: Scalar> StochasticValue<T> {
    /// Normal distribution with moments estimated from `samples` (unbiased, n - 1 sd).
    /// A single sample or zero spread degenerates to a point.
    pub fn from_samples(samples: &[T]) -> Result<Self, ModelError> {
        if samples.is_empty() {
            return Err(ModelError::EmptySample);
        }
        let count = T::from_usize(samples.len()).unwrap();
        let mean = samples.iter().copied().sum::<T>() / count;
        if samples.len() == 1 {
            return Ok(Self::Point(mean));
        }
        let ss = samples.iter().map(|&x| (x - mean) * (x - mean)).sum::<T>();
        let sd = (ss / (count - T::one())).sqrt();
        Ok(Self::normal(mean, sd))
    }

    /// Normal with `sd == 0` collapses to a point.
    pub fn normal(mean: T, sd: T) -> Self {
        if sd == T::zero() {
            Self::Point(mean)
        } else {
            Self::Normal { mean, sd }
        }
    }

    pub fn mean(&self) -> T {
        match *self {
            Self::Point(v) => v,
            Self::Uniform { lo, hi } => (lo + hi) / T::lit(2.0),
            Self::Normal { mean, .. } => mean,
        }
    }

    /// Closed support `[lo, hi]`; normals report infinite bounds.
    pub fn support(&self) -> (T, T) {
        match *self {
            Self::Point(v) => (v, v),
            Self::Uniform { lo, hi } => (lo, hi),
            Self::Normal { .. } => (T::neg_infinity(), T::infinity()),
        }
    }

    /// Describes why the parameters are invalid, if they are.
    pub fn parameter_error(&self) -> Option<String> {
        match *self {
            Self::Point(v) if !v.is_finite() => Some(format!("point value {v} is not finite")),
            Self::Uniform { lo, hi } if !(lo.is_finite() && hi.is_finite()) => {
                Some(format!("uniform bounds [{lo}, {hi}] are not finite"))
            }
            Self::Uniform { lo, hi } if lo > hi => {
                Some(format!("uniform lower bound {lo} exceeds upper bound {hi}"))
            }
            Self::Normal { mean, sd } if !(mean.is_finite() && sd.is_finite()) => {
                Some(format!("normal parameters ({mean}, {sd}) are not finite"))
            }
            Self::Normal { sd, .. } if sd < T::zero() => {
                Some(format!("normal standard deviation {sd} is negative"))
            }
            _ => None,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        match *self {
            Self::Point(v) => v,
            Self::Uniform { lo, hi } => lo + (hi - lo) * T::sample_unit(rng),
            Self::Normal { mean, sd } => mean + sd * T::sample_standard_normal(rng),
        }
    }
}

/// Unordered pair of distinct criteria, stored as zero-based `(low, high)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CriterionPair(usize, usize);

impl CriterionPair {
    pub fn new(a: usize, b: usize) -> Result<Self, ModelError> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Self(a, b)),
            std::cmp::Ordering::Greater => Ok(Self(b, a)),
            std::cmp::Ordering::Equal => Err(ModelError::DegeneratePair(a)),
        }
    }

    pub fn low(&self) -> usize {
        self.0
    }

    pub fn high(&self) -> usize {
        self.1
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0 == j || self.1 == j
    }

    /// Coordinate label with one-based indices, e.g. `I_12` or `I_3,10`.
    pub fn label(&self) -> String {
        let (a, b) = (self.0 + 1, self.1 + 1);
        if a < 10 && b < 10 {
            format!("I_{a}{b}")
        } else {
            format!("I_{a},{b}")
        }
    }
}

/// Shapley indices plus the (sparse) pairwise interaction indices of a 2-additive capacity.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionVector<T> {
    shapley: Vec<T>,
    interactions: Vec<(CriterionPair, T)>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InteractionError {
    #[error("Shapley indices sum to {0}, expected 1")]
    Boundary(f64),
    #[error("monotonicity violated for criterion {criterion}: slack {slack}")]
    Monotonicity { criterion: usize, slack: f64 },
    #[error("interaction pair {0:?} refers to a criterion outside 1..={1}")]
    PairOutOfRange(CriterionPair, usize),
    #[error("interaction pair {0:?} listed twice")]
    DuplicatePair(CriterionPair),
}

impl<T: Scalar> InteractionVector<T> {
    /// Pairs are sorted lexicographically; zero interactions may be kept or omitted.
    pub fn new(
        shapley: Vec<T>,
        mut interactions: Vec<(CriterionPair, T)>,
    ) -> Result<Self, InteractionError> {
        let n = shapley.len();
        interactions.sort_by_key(|(p, _)| *p);
        for w in interactions.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(InteractionError::DuplicatePair(w[0].0));
            }
        }
        if let Some((p, _)) = interactions.iter().find(|(p, _)| p.high() >= n) {
            return Err(InteractionError::PairOutOfRange(*p, n));
        }
        Ok(Self {
            shapley,
            interactions,
        })
    }

    /// Additive capacity (all interactions zero).
    pub fn additive(weights: Vec<T>) -> Self {
        Self {
            shapley: weights,
            interactions: Vec::new(),
        }
    }

    pub fn n_criteria(&self) -> usize {
        self.shapley.len()
    }

    pub fn shapley(&self) -> &[T] {
        &self.shapley
    }

    pub fn interactions(&self) -> &[(CriterionPair, T)] {
        &self.interactions
    }

    pub fn interaction(&self, a: usize, b: usize) -> T {
        let Ok(pair) = CriterionPair::new(a, b) else {
            return T::zero();
        };
        self.interactions
            .binary_search_by_key(&pair, |(p, _)| *p)
            .map(|i| self.interactions[i].1)
            .unwrap_or_else(|_| T::zero())
    }

    /// `I_j - 1/2 * sum_s |I_js|`, the weight criterion `j` keeps on its own.
    pub fn monotonicity_slack(&self, j: usize) -> T {
        let half = T::lit(0.5);
        self.interactions
            .iter()
            .filter(|(p, _)| p.contains(j))
            .fold(self.shapley[j], |acc, (_, v)| acc - half * v.abs())
    }

    /// Checks the boundary and monotonicity conditions at tolerance `tol`.
    pub fn check(&self, tol: T) -> Result<(), InteractionError> {
        let total = self.shapley.iter().copied().sum::<T>();
        if (total - T::one()).abs() > tol {
            return Err(InteractionError::Boundary(total.to_f64_lossy()));
        }
        for j in 0..self.n_criteria() {
            let slack = self.monotonicity_slack(j);
            if slack < -tol {
                return Err(InteractionError::Monotonicity {
                    criterion: j + 1,
                    slack: slack.to_f64_lossy(),
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InteractionSign {
    Synergy,
    Redundancy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShapleyRelation {
    /// `j ≻ s`: strictly more important.
    #[serde(rename = ">")]
    Preferred,
    /// `j ⪰ s`: at least as important.
    #[serde(rename = ">=")]
    WeaklyPreferred,
    /// `j ∼ s`: equally important.
    #[serde(rename = "=")]
    Indifferent,
}

impl fmt::Display for ShapleyRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Preferred => ">",
            Self::WeaklyPreferred => ">=",
            Self::Indifferent => "=",
        })
    }
}

/// `left relation right` over zero-based criterion indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShapleyStatement {
    pub left: usize,
    pub relation: ShapleyRelation,
    pub right: usize,
}

/// Indirect preference information supplied by the decision maker.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PreferenceStatements {
    interaction_signs: BTreeMap<CriterionPair, InteractionSign>,
    shapley_relations: Vec<ShapleyStatement>,
}

impl PreferenceStatements {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares the sign of `I_js`. Re-declaring the same sign is a no-op.
    pub fn declare_interaction(
        &mut self,
        a: usize,
        b: usize,
        sign: InteractionSign,
    ) -> Result<(), ModelError> {
        let pair = CriterionPair::new(a, b)?;
        match self.interaction_signs.get(&pair) {
            Some(&existing) if existing != sign => {
                Err(ModelError::ConflictingSign(pair.low(), pair.high()))
            }
            _ => {
                self.interaction_signs.insert(pair, sign);
                Ok(())
            }
        }
    }

    pub fn relate(&mut self, left: usize, relation: ShapleyRelation, right: usize) {
        self.shapley_relations.push(ShapleyStatement {
            left,
            relation,
            right,
        });
    }

    pub fn with_interaction(
        mut self,
        a: usize,
        b: usize,
        sign: InteractionSign,
    ) -> Result<Self, ModelError> {
        self.declare_interaction(a, b, sign)?;
        Ok(self)
    }

    pub fn with_relation(mut self, left: usize, relation: ShapleyRelation, right: usize) -> Self {
        self.relate(left, relation, right);
        self
    }

    pub fn interaction_signs(&self) -> &BTreeMap<CriterionPair, InteractionSign> {
        &self.interaction_signs
    }

    pub fn shapley_relations(&self) -> &[ShapleyStatement] {
        &self.shapley_relations
    }
}

/// How a drawn evaluation is brought inside the realized profile bounds of its criterion.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TruncationRule {
    /// Redraw until the value falls inside, up to `truncation_max_attempts` times.
    #[default]
    Reject,
    /// Draw once and clamp to the bounds.
    Clamp,
}

/// How iterations are distributed over workers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Execution {
    /// One random stream, one sampler chain.
    Serial,
    /// Iterations split into a fixed number of chunks, each with its own derived
    /// seed and sampler chain. Output depends on `chunks`, never on thread count.
    Parallel { chunks: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationSettings {
    pub iterations: usize,
    pub seed: u64,
    /// `None` selects `d^3` steps for reduced dimension `d`.
    pub burn_in: Option<usize>,
    /// `None` selects `d^3` steps for reduced dimension `d`.
    pub thinning: Option<usize>,
    pub replications: usize,
    pub truncation_max_attempts: usize,
    pub truncation: TruncationRule,
    pub har_mode: HarMode,
    /// Margin closing strict inequalities (`I_js < 0`, `I_j > I_s`).
    pub strict_margin: f64,
    pub execution: Execution,
    pub retain_samples: bool,
    pub retention_cap: usize,
}

impl Default for SimulationSettings {
    fn default() -> Self {
        Self {
            iterations: 10_000,
            seed: 0,
            burn_in: None,
            thinning: None,
            replications: 1,
            truncation_max_attempts: 1000,
            truncation: TruncationRule::Reject,
            har_mode: HarMode::Chain,
            strict_margin: 1e-6,
            execution: Execution::Serial,
            retain_samples: false,
            retention_cap: 1_000_000,
        }
    }
}

/// Joint assignment of every alternative to a category; entries are one-based, 1 = best.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Scenario(Vec<usize>);

impl Scenario {
    pub fn new(assignment: Vec<usize>) -> Self {
        Self(assignment)
    }

    pub fn assignment(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Category of alternative `i` (zero-based alternative, one-based category).
    pub fn category_of(&self, i: usize) -> usize {
        self.0[i]
    }

    /// Semicolon-joined form used in CSV output.
    pub fn joined(&self, sep: &str) -> String {
        self.0
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.joined(","))
    }
}

impl FromStr for Scenario {
    type Err = ModelError;

    /// Accepts `2,1,2`, `(2,1,2)`, `2;1;2` or whitespace separated entries.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let entries: Result<Vec<usize>, _> = inner
            .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::parse::<usize>)
            .collect();
        match entries {
            Ok(v) if !v.is_empty() && v.iter().all(|&c| c >= 1) => Ok(Self(v)),
            _ => Err(ModelError::ScenarioSyntax(s.to_string())),
        }
    }
}

/// Threshold-based sorting problem with stochastic evaluations and limiting profiles.
#[derive(Debug, Clone, PartialEq)]
pub struct SortingProblem<T> {
    pub criteria: Vec<String>,
    pub alternatives: Vec<String>,
    /// Best first.
    pub categories: Vec<String>,
    /// `m x n`.
    pub evaluations: Vec<Vec<StochasticValue<T>>>,
    /// `(k + 1) x n`, best profile first.
    pub profiles: Vec<Vec<StochasticValue<T>>>,
    /// Zero-based profile rows drawn once per iteration and reused for every
    /// criterion. Their cells must all carry the same distribution.
    pub shared_profile_rows: Vec<usize>,
    pub preferences: PreferenceStatements,
    pub settings: SimulationSettings,
}

impl<T: Scalar> SortingProblem<T> {
    /// Builds a problem with generated names `g_j`, `a_i` and `K_h`.
    pub fn new(
        evaluations: Vec<Vec<StochasticValue<T>>>,
        profiles: Vec<Vec<StochasticValue<T>>>,
        preferences: PreferenceStatements,
        settings: SimulationSettings,
    ) -> Self {
        let n = profiles.first().or(evaluations.first()).map_or(0, Vec::len);
        let m = evaluations.len();
        let k = profiles.len().saturating_sub(1);
        Self {
            criteria: (1..=n).map(|j| format!("g_{j}")).collect(),
            alternatives: (1..=m).map(|i| format!("a_{i}")).collect(),
            categories: (1..=k).map(|h| format!("K_{h}")).collect(),
            evaluations,
            profiles,
            shared_profile_rows: Vec::new(),
            preferences,
            settings,
        }
    }

    /// Marks profile rows (zero-based) as one draw shared by all criteria.
    pub fn with_shared_profile_rows(mut self, rows: impl IntoIterator<Item = usize>) -> Self {
        self.shared_profile_rows.extend(rows);
        self.shared_profile_rows.sort_unstable();
        self.shared_profile_rows.dedup();
        self
    }

    pub fn n_criteria(&self) -> usize {
        self.criteria.len()
    }

    pub fn m_alternatives(&self) -> usize {
        self.alternatives.len()
    }

    pub fn k_categories(&self) -> usize {
        self.categories.len()
    }

    /// Interval every realization of the evaluations on criterion `j` must be able to
    /// land in: from the highest possible worst-profile value to the lowest possible
    /// best-profile value.
    pub fn guaranteed_band(&self, j: usize) -> (T, T) {
        let best = self.profiles[0][j].support();
        let worst = self.profiles[self.profiles.len() - 1][j].support();
        (worst.1, best.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationRule {
    Dimension,
    Distribution,
    ProfileOrdering,
    EvaluationBounds,
    PreferenceIndex,
    SharedProfile,
    Settings,
}

impl fmt::Display for ViolationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Dimension => "dimension",
            Self::Distribution => "distribution",
            Self::ProfileOrdering => "profile-ordering",
            Self::EvaluationBounds => "evaluation-bounds",
            Self::PreferenceIndex => "preference-index",
            Self::SharedProfile => "shared-profile",
            Self::Settings => "settings",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub field: String,
    pub rule: ViolationRule,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.field, self.rule, self.detail)
    }
}

/// Lists every invariant the problem breaks; empty means the problem is usable.
pub fn validate_problem<T: Scalar>(p: &SortingProblem<T>) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |field: String, rule: ViolationRule, detail: String| {
        out.push(Violation {
            field,
            rule,
            detail,
        })
    };
    let (n, m, k) = (p.n_criteria(), p.m_alternatives(), p.k_categories());

    if n == 0 {
        push(
            "criteria".into(),
            ViolationRule::Dimension,
            "no criteria".into(),
        );
    }
    if m == 0 {
        push(
            "alternatives".into(),
            ViolationRule::Dimension,
            "no alternatives".into(),
        );
    }
    if k == 0 {
        push(
            "categories".into(),
            ViolationRule::Dimension,
            "no categories".into(),
        );
    }
    if p.profiles.len() != k + 1 {
        push(
            "profiles".into(),
            ViolationRule::Dimension,
            format!(
                "{} categories need {} profiles, got {}",
                k,
                k + 1,
                p.profiles.len()
            ),
        );
    }
    if p.evaluations.len() != m {
        push(
            "alternatives".into(),
            ViolationRule::Dimension,
            format!("{} names but {} evaluation rows", m, p.evaluations.len()),
        );
    }
    let mut shape_ok = p.profiles.len() == k + 1 && p.evaluations.len() == m && n > 0 && k > 0;
    for (h, row) in p.profiles.iter().enumerate() {
        if row.len() != n {
            shape_ok = false;
            push(
                format!("profiles[{}]", h + 1),
                ViolationRule::Dimension,
                format!("expected {n} values, got {}", row.len()),
            );
        }
    }
    for (i, row) in p.evaluations.iter().enumerate() {
        if row.len() != n {
            shape_ok = false;
            push(
                format!("alternatives[{}]", i + 1),
                ViolationRule::Dimension,
                format!("expected {n} values, got {}", row.len()),
            );
        }
    }

    for &h in &p.shared_profile_rows {
        match p.profiles.get(h) {
            None => push(
                "shared_profile_rows".into(),
                ViolationRule::SharedProfile,
                format!("profile {} does not exist", h + 1),
            ),
            Some(row) if row.windows(2).any(|w| w[0] != w[1]) => push(
                format!("profiles[{}]", h + 1),
                ViolationRule::SharedProfile,
                "a shared row needs the same distribution on every criterion".into(),
            ),
            Some(_) => {}
        }
    }

    let mut cells_ok = true;
    let matrices = [("profiles", &p.profiles), ("alternatives", &p.evaluations)];
    for (name, matrix) in matrices {
        for (r, row) in matrix.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                if let Some(detail) = cell.parameter_error() {
                    cells_ok = false;
                    push(
                        format!("{name}[{}][{}]", r + 1, j + 1),
                        ViolationRule::Distribution,
                        detail,
                    );
                }
            }
        }
    }

    if shape_ok && cells_ok {
        for j in 0..n {
            for h in 0..k {
                let upper = p.profiles[h][j].support();
                let lower = p.profiles[h + 1][j].support();
                if upper.0 < lower.1 {
                    push(
                        format!("profiles[{}][{}]", h + 1, j + 1),
                        ViolationRule::ProfileOrdering,
                        format!(
                            "support [{}, {}] must lie at or above the support [{}, {}] of profile {}",
                            upper.0,
                            upper.1,
                            lower.0,
                            lower.1,
                            h + 2
                        ),
                    );
                }
            }
            let (lo, hi) = p.guaranteed_band(j);
            for (i, row) in p.evaluations.iter().enumerate() {
                let cell = &row[j];
                let inside = match cell {
                    StochasticValue::Normal { mean, .. } => *mean >= lo && *mean <= hi,
                    _ => {
                        let (a, b) = cell.support();
                        a >= lo && b <= hi
                    }
                };
                if !inside {
                    push(
                        format!("alternatives[{}][{}]", i + 1, j + 1),
                        ViolationRule::EvaluationBounds,
                        format!("evaluation outside profile bounds [{lo}, {hi}]"),
                    );
                }
            }
        }
    }

    for pair in p.preferences.interaction_signs().keys() {
        if pair.high() >= n {
            push(
                format!("preferences.interactions[{}]", pair.label()),
                ViolationRule::PreferenceIndex,
                format!("criterion {} out of range 1..={n}", pair.high() + 1),
            );
        }
    }
    for (idx, st) in p.preferences.shapley_relations().iter().enumerate() {
        if st.left >= n || st.right >= n {
            push(
                format!("preferences.shapley[{}]", idx + 1),
                ViolationRule::PreferenceIndex,
                format!("criterion index out of range 1..={n}"),
            );
        } else if st.left == st.right {
            push(
                format!("preferences.shapley[{}]", idx + 1),
                ViolationRule::PreferenceIndex,
                "relation between a criterion and itself".into(),
            );
        }
    }

    let s = &p.settings;
    if s.iterations == 0 {
        push(
            "settings.iterations".into(),
            ViolationRule::Settings,
            "must be at least 1".into(),
        );
    }
    if s.replications == 0 {
        push(
            "settings.replications".into(),
            ViolationRule::Settings,
            "must be at least 1".into(),
        );
    }
    if s.truncation_max_attempts == 0 {
        push(
            "settings.truncation_max_attempts".into(),
            ViolationRule::Settings,
            "must be at least 1".into(),
        );
    }
    if s.thinning == Some(0) {
        push(
            "settings.thinning".into(),
            ViolationRule::Settings,
            "must be at least 1".into(),
        );
    }
    if !(s.strict_margin > 0.0 && s.strict_margin < 0.1) {
        push(
            "settings.strict_margin".into(),
            ViolationRule::Settings,
            "must lie in (0, 0.1)".into(),
        );
    }
    if let Execution::Parallel { chunks: 0 } = s.execution {
        push(
            "settings.execution".into(),
            ViolationRule::Settings,
            "zero chunks".into(),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    type SV = StochasticValue<f64>;

    fn pt(v: f64) -> SV {
        SV::Point(v)
    }

    fn school() -> SortingProblem<f64> {
        let profiles = vec![
            vec![pt(10.0), pt(10.0)],
            vec![SV::Uniform { lo: 7.5, hi: 8.0 }; 2],
            vec![SV::Uniform { lo: 4.5, hi: 5.0 }; 2],
            vec![pt(0.0), pt(0.0)],
        ];
        let stats = [
            (5.2, 1.9, 4.2, 0.8),
            (8.9, 0.6, 9.3, 0.2),
            (4.1, 0.6, 6.3, 0.7),
            (8.2, 1.4, 6.9, 0.6),
            (8.3, 1.1, 4.7, 0.8),
        ];
        let evaluations = stats
            .iter()
            .map(|&(m1, s1, m2, s2)| vec![SV::normal(m1, s1), SV::normal(m2, s2)])
            .collect();
        let prefs = PreferenceStatements::new()
            .with_interaction(0, 1, InteractionSign::Redundancy)
            .unwrap()
            .with_relation(0, ShapleyRelation::Indifferent, 1);
        SortingProblem::new(evaluations, profiles, prefs, SimulationSettings::default())
    }

    #[test]
    fn school_problem_is_valid() {
        let p = school();
        assert_eq!(
            (p.n_criteria(), p.m_alternatives(), p.k_categories()),
            (2, 5, 3)
        );
        assert!(validate_problem(&p).is_empty());
    }

    #[test]
    fn increasing_profiles_flagged() {
        let p = SortingProblem::new(
            vec![vec![pt(6.0)]],
            vec![vec![pt(5.0)], vec![pt(7.0)]],
            PreferenceStatements::new(),
            SimulationSettings::default(),
        );
        let v = validate_problem(&p);
        let ordering: Vec<_> = v
            .iter()
            .filter(|x| x.rule == ViolationRule::ProfileOrdering)
            .collect();
        assert_eq!(ordering.len(), 1, "{v:?}");
        assert_eq!(ordering[0].field, "profiles[1][1]");
    }

    #[test]
    fn evaluation_above_best_profile_flagged() {
        let p = SortingProblem::new(
            vec![vec![pt(12.0)]],
            vec![vec![pt(10.0)], vec![pt(5.0)], vec![pt(0.0)]],
            PreferenceStatements::new(),
            SimulationSettings::default(),
        );
        let v = validate_problem(&p);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, ViolationRule::EvaluationBounds);
        assert_eq!(v[0].field, "alternatives[1][1]");
    }

    #[test]
    fn overlapping_interval_profiles_flagged() {
        let p = SortingProblem::new(
            vec![vec![pt(5.0)]],
            vec![
                vec![pt(10.0)],
                vec![SV::Uniform { lo: 6.0, hi: 8.0 }],
                vec![SV::Uniform { lo: 5.0, hi: 7.0 }],
                vec![pt(0.0)],
            ],
            PreferenceStatements::new(),
            SimulationSettings::default(),
        );
        let v = validate_problem(&p);
        assert!(v.iter().any(|x| x.rule == ViolationRule::ProfileOrdering));
    }

    #[test]
    fn inverted_uniform_flagged() {
        let mut p = school();
        p.evaluations[0][0] = SV::Uniform { lo: 8.0, hi: 7.5 };
        let v = validate_problem(&p);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, ViolationRule::Distribution);
        assert_eq!(v[0].field, "alternatives[1][1]");
    }

    #[test]
    fn empty_alternatives_flagged() {
        let p = SortingProblem::<f64>::new(
            vec![],
            vec![vec![pt(10.0)], vec![pt(0.0)]],
            PreferenceStatements::new(),
            SimulationSettings::default(),
        );
        assert!(validate_problem(&p)
            .iter()
            .any(|v| v.field == "alternatives" && v.rule == ViolationRule::Dimension));
    }

    #[test]
    fn conflicting_signs_rejected() {
        let mut prefs = PreferenceStatements::new();
        prefs
            .declare_interaction(0, 1, InteractionSign::Synergy)
            .unwrap();
        prefs
            .declare_interaction(1, 0, InteractionSign::Synergy)
            .unwrap();
        assert_eq!(
            prefs.declare_interaction(1, 0, InteractionSign::Redundancy),
            Err(ModelError::ConflictingSign(0, 1))
        );
        assert_eq!(prefs.interaction_signs().len(), 1);
    }

    #[test]
    fn sample_estimator_matches_table_row() {
        let math = [6.7, 8.0, 6.5, 6.6, 3.9, 4.3, 1.2, 3.8, 5.5, 5.4];
        match SV::from_samples(&math).unwrap() {
            SV::Normal { mean, sd } => {
                assert!((mean - 5.19).abs() < 1e-12);
                assert_eq!((mean * 10.0).round() / 10.0, 5.2);
                // n - 1 estimator; the population estimator would give 1.8528
                assert!((sd - 1.953_031_831_1).abs() < 1e-9);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(SV::from_samples(&[3.0]).unwrap(), SV::Point(3.0));
        assert_eq!(SV::normal(4.0, 0.0), SV::Point(4.0));
    }

    #[test]
    fn scenario_parsing_and_order() {
        let s: Scenario = "2,1,2,1,2".parse().unwrap();
        assert_eq!(s.assignment(), &[2, 1, 2, 1, 2]);
        assert_eq!(s.to_string(), "(2,1,2,1,2)");
        assert_eq!("(2,1,2,1,2)".parse::<Scenario>().unwrap(), s);
        assert!("2,0".parse::<Scenario>().is_err());
        assert!(Scenario::new(vec![1, 2]) < Scenario::new(vec![2, 1]));
    }

    #[test]
    fn interaction_vector_checks() {
        let pair = CriterionPair::new(1, 0).unwrap();
        let iv = InteractionVector::new(vec![0.5_f64, 0.5], vec![(pair, -0.4)]).unwrap();
        assert_eq!(iv.interaction(1, 0), -0.4);
        assert!((iv.monotonicity_slack(0) - 0.3).abs() < 1e-15);
        assert!(iv.check(1e-9).is_ok());
        let bad = InteractionVector::new(vec![0.2, 0.8], vec![(pair, -0.6)]).unwrap();
        assert!(matches!(
            bad.check(1e-9),
            Err(InteractionError::Monotonicity { criterion: 1, .. })
        ));
        assert_eq!(pair.label(), "I_12");
    }

    #[test]
    fn shared_row_needs_identical_cells() {
        let p = SortingProblem::new(
            vec![vec![
                StochasticValue::Point(5.0_f64),
                StochasticValue::Point(5.0),
            ]],
            vec![
                vec![StochasticValue::Point(10.0), StochasticValue::Point(10.0)],
                vec![StochasticValue::Point(0.0), StochasticValue::Point(1.0)],
            ],
            PreferenceStatements::new(),
            SimulationSettings::default(),
        );
        assert!(validate_problem(&p.clone().with_shared_profile_rows([0])).is_empty());
        let v = validate_problem(&p.clone().with_shared_profile_rows([1]));
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, ViolationRule::SharedProfile);
        assert_eq!(v[0].field, "profiles[2]");
        let v = validate_problem(&p.with_shared_profile_rows([4]));
        assert_eq!(v[0].field, "shared_profile_rows");
    }
}
