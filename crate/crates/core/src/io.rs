//! Problem files and reports.
//!
//! Problem files are JSON:
//!
//! ```json
//! {
//!   "criteria": ["Mathematics", "Statistics"],
//!   "categories": ["accepted", "waitlisted", "rejected"],
//!   "profiles": [10, {"uniform": [7.5, 8]}, [5, 4.5], 0],
//!   "alternatives": [{"name": "a1", "evaluations": [{"normal": {"mean": 5.2, "sd": 1.9}}, 4.2]}],
//!   "preferences": {
//!     "interactions": [{"pair": [1, 2], "sign": "redundancy"}],
//!     "shapley": [{"left": 1, "rel": "=", "right": 2}]
//!   },
//!   "settings": {"iterations": 10000, "seed": 42}
//! }
//! ```
//!
//! Profiles are listed best first. A profile row is either one cell per criterion or a
//! single cell, which is drawn once per iteration and used for every criterion. Cells are
//! a number (point value), `{"uniform": [lo, hi]}`, `{"normal": {"mean": m, "sd": s}}` or
//! `{"sample": [x1, ..., xq]}` (normal with estimated moments). Criterion indices are
//! one-based.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::capacity_space::HarMode;
use crate::engine::{ReplicationSummary, ScenarioStats, SimulationResult};
use crate::measures::{
    category_acceptability_f64, scenario_acceptability, scenario_central_capacity,
};
use crate::model::{
    validate_problem, Execution, InteractionSign, PreferenceStatements, ShapleyRelation,
    SimulationSettings, SortingProblem, StochasticValue, TruncationRule, Violation,
};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: unknown distribution kind {kind}")]
    UnknownDistribution { field: String, kind: String },
    #[error("{field}: {detail}")]
    Malformed { field: String, detail: String },
    #[error("invalid problem:\n{}", .0.iter().map(|v| format!("  {v}")).collect::<Vec<_>>().join("\n"))]
    Invalid(Vec<Violation>),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    criteria: Vec<String>,
    categories: Vec<String>,
    profiles: Vec<ProfileRow>,
    alternatives: Vec<AlternativeEntry>,
    #[serde(default)]
    preferences: PreferencesFile,
    #[serde(default)]
    settings: SettingsOverrides,
}

/// A row of cells, or a single cell drawn once and shared by every criterion.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum ProfileRow {
    PerCriterion(Vec<Value>),
    Shared(Value),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlternativeEntry {
    name: String,
    evaluations: Vec<Value>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PreferencesFile {
    #[serde(default)]
    interactions: Vec<InteractionEntry>,
    #[serde(default)]
    shapley: Vec<ShapleyEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InteractionEntry {
    pair: [usize; 2],
    sign: InteractionSign,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShapleyEntry {
    left: usize,
    rel: ShapleyRelation,
    right: usize,
}

/// Optional simulation settings; used both for the `settings` block of a problem file
/// and for command-line flags. Later layers win: defaults, then file, then flags.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SettingsOverrides {
    pub iterations: Option<usize>,
    pub seed: Option<u64>,
    pub burn_in: Option<usize>,
    pub thinning: Option<usize>,
    pub replications: Option<usize>,
    pub truncation_max_attempts: Option<usize>,
    pub truncation: Option<TruncationRule>,
    pub har_mode: Option<HarMode>,
    pub strict_margin: Option<f64>,
    /// Zero selects serial execution.
    pub parallel_chunks: Option<usize>,
    pub retain_samples: Option<bool>,
    pub retention_cap: Option<usize>,
}

impl SettingsOverrides {
    pub fn apply(&self, s: &mut SimulationSettings) {
        if let Some(v) = self.iterations {
            s.iterations = v;
        }
        if let Some(v) = self.seed {
            s.seed = v;
        }
        if self.burn_in.is_some() {
            s.burn_in = self.burn_in;
        }
        if self.thinning.is_some() {
            s.thinning = self.thinning;
        }
        if let Some(v) = self.replications {
            s.replications = v;
        }
        if let Some(v) = self.truncation_max_attempts {
            s.truncation_max_attempts = v;
        }
        if let Some(v) = self.truncation {
            s.truncation = v;
        }
        if let Some(v) = self.har_mode {
            s.har_mode = v;
        }
        if let Some(v) = self.strict_margin {
            s.strict_margin = v;
        }
        if let Some(chunks) = self.parallel_chunks {
            s.execution = if chunks == 0 {
                Execution::Serial
            } else {
                Execution::Parallel { chunks }
            };
        }
        if let Some(v) = self.retain_samples {
            s.retain_samples = v;
        }
        if let Some(v) = self.retention_cap {
            s.retention_cap = v;
        }
    }
}

fn number(v: &Value, field: &str) -> Result<f64, IoError> {
    v.as_f64().ok_or_else(|| IoError::Malformed {
        field: field.to_string(),
        detail: format!("expected a number, got {v}"),
    })
}

fn parse_cell(v: &Value, field: &str) -> Result<StochasticValue<f64>, IoError> {
    if v.is_number() {
        return Ok(StochasticValue::Point(number(v, field)?));
    }
    let malformed = |detail: &str| IoError::Malformed {
        field: field.to_string(),
        detail: detail.to_string(),
    };
    let obj = v
        .as_object()
        .ok_or_else(|| malformed("expected a number or a distribution object"))?;
    if obj.len() != 1 {
        return Err(malformed("distribution object must have exactly one key"));
    }
    let (kind, body) = obj.iter().next().unwrap();
    match kind.as_str() {
        "point" => Ok(StochasticValue::Point(number(body, field)?)),
        "uniform" => match body.as_array().map(Vec::as_slice) {
            Some([lo, hi]) => Ok(StochasticValue::Uniform {
                lo: number(lo, field)?,
                hi: number(hi, field)?,
            }),
            _ => Err(malformed("uniform expects [lo, hi]")),
        },
        "normal" => {
            let mean = body
                .get("mean")
                .ok_or_else(|| malformed("normal needs \"mean\""))?;
            let sd = body
                .get("sd")
                .ok_or_else(|| malformed("normal needs \"sd\""))?;
            if body.as_object().map_or(0, |o| o.len()) != 2 {
                return Err(malformed("normal accepts only \"mean\" and \"sd\""));
            }
            Ok(StochasticValue::normal(
                number(mean, field)?,
                number(sd, field)?,
            ))
        }
        "sample" => {
            let values = body
                .as_array()
                .ok_or_else(|| malformed("sample expects a list of numbers"))?
                .iter()
                .map(|x| number(x, field))
                .collect::<Result<Vec<_>, _>>()?;
            StochasticValue::from_samples(&values).map_err(|e| malformed(&e.to_string()))
        }
        other => Err(IoError::UnknownDistribution {
            field: field.to_string(),
            kind: other.to_string(),
        }),
    }
}

fn one_based(index: usize, field: &str) -> Result<usize, IoError> {
    index.checked_sub(1).ok_or_else(|| IoError::Malformed {
        field: field.to_string(),
        detail: "criterion indices are one-based".into(),
    })
}

/// Parses and validates a problem file.
pub fn parse_problem(text: &str) -> Result<SortingProblem<f64>, IoError> {
    parse_problem_layered(
        text,
        SimulationSettings::default(),
        &SettingsOverrides::default(),
    )
}

/// Parses and validates a problem file, layering settings as `defaults`, then the
/// file's `settings` block, then `flags`.
pub fn parse_problem_layered(
    text: &str,
    defaults: SimulationSettings,
    flags: &SettingsOverrides,
) -> Result<SortingProblem<f64>, IoError> {
    let mut problem = parse_with_defaults(text, defaults)?;
    flags.apply(&mut problem.settings);
    let violations = validate_problem(&problem);
    if violations.is_empty() {
        Ok(problem)
    } else {
        Err(IoError::Invalid(violations))
    }
}

/// Parses a problem file without running [`validate_problem`].
pub fn parse_problem_unchecked(text: &str) -> Result<SortingProblem<f64>, IoError> {
    parse_with_defaults(text, SimulationSettings::default())
}

fn parse_with_defaults(
    text: &str,
    defaults: SimulationSettings,
) -> Result<SortingProblem<f64>, IoError> {
    let file: ProblemFile = serde_json::from_str(text)?;

    let n = file.criteria.len();
    let mut shared_rows = Vec::new();
    let profiles = file
        .profiles
        .iter()
        .enumerate()
        .map(|(h, row)| match row {
            ProfileRow::PerCriterion(cells) => cells
                .iter()
                .enumerate()
                .map(|(j, cell)| parse_cell(cell, &format!("profiles[{}][{}]", h + 1, j + 1)))
                .collect::<Result<Vec<_>, _>>(),
            ProfileRow::Shared(cell) => {
                shared_rows.push(h);
                Ok(vec![parse_cell(cell, &format!("profiles[{}]", h + 1))?; n])
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let evaluations = file
        .alternatives
        .iter()
        .enumerate()
        .map(|(i, alt)| {
            alt.evaluations
                .iter()
                .enumerate()
                .map(|(j, cell)| parse_cell(cell, &format!("alternatives[{}][{}]", i + 1, j + 1)))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut preferences = PreferenceStatements::new();
    for (idx, entry) in file.preferences.interactions.iter().enumerate() {
        let field = format!("preferences.interactions[{}]", idx + 1);
        let a = one_based(entry.pair[0], &field)?;
        let b = one_based(entry.pair[1], &field)?;
        preferences
            .declare_interaction(a, b, entry.sign)
            .map_err(|e| IoError::Malformed {
                field,
                detail: e.to_string(),
            })?;
    }
    for (idx, entry) in file.preferences.shapley.iter().enumerate() {
        let field = format!("preferences.shapley[{}]", idx + 1);
        preferences.relate(
            one_based(entry.left, &field)?,
            entry.rel,
            one_based(entry.right, &field)?,
        );
    }

    let mut settings = defaults;
    file.settings.apply(&mut settings);

    Ok(SortingProblem {
        criteria: file.criteria,
        alternatives: file.alternatives.into_iter().map(|a| a.name).collect(),
        categories: file.categories,
        evaluations,
        profiles,
        shared_profile_rows: shared_rows,
        preferences,
        settings,
    })
}

/// Rounds to six significant digits; keeps reports byte-stable.
pub fn round6(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.5e}").parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn round_all(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| round6(x)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerEcho {
    pub mode: HarMode,
    pub burn_in: usize,
    pub thinning: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioRow {
    /// One-based rank by SAI.
    pub id: usize,
    pub assignment: Vec<usize>,
    pub count: u64,
    pub sai: f64,
    /// `count/N` in lowest terms.
    pub sai_exact: String,
    pub central_capacity: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central_capacity_sd: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicatedRow {
    pub id: usize,
    pub assignment: Vec<usize>,
    pub occurrences: usize,
    pub sai_mean: f64,
    pub sai_sd: f64,
    pub sai_ci: [f64; 2],
    pub capacity_mean: Vec<f64>,
    pub capacity_sd: Vec<f64>,
    pub capacity_ci_low: Vec<f64>,
    pub capacity_ci_high: Vec<f64>,
    pub capacity_pooled_sd: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicationReport {
    pub replications: usize,
    pub iterations_per_replication: u64,
    pub seeds: Vec<u64>,
    pub scenarios: Vec<ReplicatedRow>,
}

/// Everything a report shows. Floats are stored already rounded to six significant
/// digits, so writing and re-reading JSON is lossless.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub criteria: Vec<String>,
    pub alternatives: Vec<String>,
    pub categories: Vec<String>,
    pub coordinates: Vec<String>,
    pub iterations: u64,
    pub seed: u64,
    pub sampler: SamplerEcho,
    pub scenarios: Vec<ScenarioRow>,
    pub category_counts: Vec<Vec<u64>>,
    pub category_acceptability: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replication: Option<ReplicationReport>,
}

fn scenario_rows(result: &SimulationResult<f64>) -> Vec<ScenarioRow> {
    scenario_acceptability(result)
        .into_iter()
        .enumerate()
        .map(|(rank, sa)| {
            let stats: &ScenarioStats<f64> = &result.scenarios[&sa.scenario];
            let central = scenario_central_capacity(stats, &result.layout)
                .expect("stored scenarios occurred at least once");
            ScenarioRow {
                id: rank + 1,
                assignment: sa.scenario.assignment().to_vec(),
                count: sa.count,
                sai: round6(sa.value()),
                sai_exact: format!("{}/{}", sa.sai.numer(), sa.sai.denom()),
                central_capacity: round_all(&central.mean),
                central_capacity_sd: central.sd.as_deref().map(round_all),
            }
        })
        .collect()
}

impl Report {
    pub fn from_result(problem: &SortingProblem<f64>, result: &SimulationResult<f64>) -> Self {
        Self {
            criteria: problem.criteria.clone(),
            alternatives: problem.alternatives.clone(),
            categories: problem.categories.clone(),
            coordinates: result.layout.labels(),
            iterations: result.iterations,
            seed: result.settings.seed,
            sampler: SamplerEcho {
                mode: result.har.mode,
                burn_in: result.har.burn_in,
                thinning: result.har.thinning,
            },
            scenarios: scenario_rows(result),
            category_counts: result.category_counts.clone(),
            category_acceptability: category_acceptability_f64(result)
                .iter()
                .map(|r| round_all(r))
                .collect(),
            replication: None,
        }
    }

    /// Pooled counts over all replications plus the cross-replication table.
    pub fn from_replications(
        problem: &SortingProblem<f64>,
        summary: &ReplicationSummary<f64>,
    ) -> Self {
        let mut pooled = summary.runs[0].clone();
        for run in &summary.runs[1..] {
            pooled.iterations += run.iterations;
            for (row, other) in pooled.category_counts.iter_mut().zip(&run.category_counts) {
                for (a, b) in row.iter_mut().zip(other) {
                    *a += b;
                }
            }
            for (scenario, stats) in &run.scenarios {
                match pooled.scenarios.get_mut(scenario) {
                    Some(existing) => existing.merge(stats),
                    None => {
                        pooled.scenarios.insert(scenario.clone(), stats.clone());
                    }
                }
            }
        }
        pooled.settings.seed = problem.settings.seed;
        let mut report = Self::from_result(problem, &pooled);
        let rows = summary
            .scenarios
            .iter()
            .enumerate()
            .map(|(rank, s)| ReplicatedRow {
                id: rank + 1,
                assignment: s.scenario.assignment().to_vec(),
                occurrences: s.occurrences,
                sai_mean: round6(s.sai_mean),
                sai_sd: round6(s.sai_sd),
                sai_ci: [round6(s.sai_ci.0), round6(s.sai_ci.1)],
                capacity_mean: round_all(&s.capacity_mean),
                capacity_sd: round_all(&s.capacity_sd),
                capacity_ci_low: s.capacity_ci.iter().map(|c| round6(c.0)).collect(),
                capacity_ci_high: s.capacity_ci.iter().map(|c| round6(c.1)).collect(),
                capacity_pooled_sd: round_all(&s.capacity_pooled_sd),
            })
            .collect();
        report.replication = Some(ReplicationReport {
            replications: summary.runs.len(),
            iterations_per_replication: summary.runs[0].iterations,
            seeds: summary.seeds.clone(),
            scenarios: rows,
        });
        report
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "text" => Ok(Self::Text),
            other => Err(format!("unknown report format {other:?} (json, csv, text)")),
        }
    }
}

pub fn write_report(report: &Report, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => canonical_json(report).into_bytes(),
        ReportFormat::Csv => report_csv(report).into_bytes(),
        ReportFormat::Text => report_text(report).into_bytes(),
    }
}

/// Pretty-printed JSON with lexicographically sorted keys and a trailing newline.
pub fn canonical_json(report: &Report) -> String {
    // serde_json::Map is a BTreeMap here, so going through Value sorts keys.
    let value = serde_json::to_value(report).expect("report is plain data");
    let mut out = serde_json::to_string_pretty(&value).expect("value serializes");
    out.push('\n');
    out
}

pub fn parse_report(text: &str) -> Result<Report, IoError> {
    Ok(serde_json::from_str(text)?)
}

fn joined(values: impl IntoIterator<Item = String>) -> String {
    values.into_iter().collect::<Vec<_>>().join(",")
}

fn report_csv(report: &Report) -> String {
    let mut out = String::new();
    match &report.replication {
        None => {
            let with_sd = report
                .scenarios
                .iter()
                .any(|r| r.central_capacity_sd.is_some());
            let mut header = vec![
                "scenario_id".to_string(),
                "assignment".into(),
                "count".into(),
                "sai".into(),
            ];
            header.extend(report.coordinates.iter().cloned());
            if with_sd {
                header.extend(report.coordinates.iter().map(|c| format!("sd_{c}")));
            }
            out.push_str(&header.join(","));
            out.push('\n');
            for row in &report.scenarios {
                let mut cells = vec![
                    row.id.to_string(),
                    semicolons(&row.assignment),
                    row.count.to_string(),
                    row.sai.to_string(),
                ];
                cells.extend(row.central_capacity.iter().map(f64::to_string));
                if with_sd {
                    match &row.central_capacity_sd {
                        Some(sd) => cells.extend(sd.iter().map(f64::to_string)),
                        None => cells.extend(report.coordinates.iter().map(|_| String::new())),
                    }
                }
                out.push_str(&joined(cells));
                out.push('\n');
            }
        }
        Some(rep) => {
            let mut header: Vec<String> = [
                "scenario_id",
                "assignment",
                "occurrences",
                "sai_mean",
                "sai_sd",
                "sai_ci_low",
                "sai_ci_high",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect();
            header.extend(report.coordinates.iter().cloned());
            for prefix in ["sd", "ci_low", "ci_high", "pooled_sd"] {
                header.extend(report.coordinates.iter().map(|c| format!("{prefix}_{c}")));
            }
            out.push_str(&header.join(","));
            out.push('\n');
            for row in &rep.scenarios {
                let mut cells = vec![
                    row.id.to_string(),
                    semicolons(&row.assignment),
                    row.occurrences.to_string(),
                    row.sai_mean.to_string(),
                    row.sai_sd.to_string(),
                    row.sai_ci[0].to_string(),
                    row.sai_ci[1].to_string(),
                ];
                for list in [
                    &row.capacity_mean,
                    &row.capacity_sd,
                    &row.capacity_ci_low,
                    &row.capacity_ci_high,
                    &row.capacity_pooled_sd,
                ] {
                    cells.extend(list.iter().map(f64::to_string));
                }
                out.push_str(&joined(cells));
                out.push('\n');
            }
        }
    }
    out
}

fn semicolons(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(";")
}

fn tuple(v: &[usize]) -> String {
    format!(
        "({})",
        v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    )
}

fn report_text(report: &Report) -> String {
    let mut out = String::new();
    let width = report
        .scenarios
        .iter()
        .map(|r| tuple(&r.assignment).len())
        .max()
        .unwrap_or(8)
        .max(8);
    let _ = writeln!(
        out,
        "{} iterations, seed {}, Hit-And-Run {:?} (burn-in {}, thinning {})",
        report.iterations,
        report.seed,
        report.sampler.mode,
        report.sampler.burn_in,
        report.sampler.thinning
    );
    let _ = writeln!(out, "{} distinct scenarios", report.scenarios.len());
    let _ = writeln!(out);

    match &report.replication {
        None => {
            let _ = write!(out, "{:>4}  {:<width$}  {:>8}", "#", "scenario", "SAI (%)");
            for c in &report.coordinates {
                let _ = write!(out, "  {c:>16}");
            }
            let _ = writeln!(out);
            for row in &report.scenarios {
                let _ = write!(
                    out,
                    "{:>4}  {:<width$}  {:>8.2}",
                    row.id,
                    tuple(&row.assignment),
                    100.0 * row.sai
                );
                for (i, m) in row.central_capacity.iter().enumerate() {
                    let cell = match &row.central_capacity_sd {
                        Some(sd) => format!("{m:.3} ± {:.3}", sd[i]),
                        None => format!("{m:.3}"),
                    };
                    let _ = write!(out, "  {cell:>16}");
                }
                let _ = writeln!(out);
            }
        }
        Some(rep) => {
            let _ = writeln!(
                out,
                "{} replications x {} iterations",
                rep.replications, rep.iterations_per_replication
            );
            let _ = write!(out, "{:>4}  {:<width$}  {:>15}", "#", "scenario", "SAI (%)");
            for c in &report.coordinates {
                let _ = write!(out, "  {c:>16}");
            }
            let _ = writeln!(out);
            for row in &rep.scenarios {
                let sai = format!("{:.2} ± {:.2}", 100.0 * row.sai_mean, 100.0 * row.sai_sd);
                let _ = write!(
                    out,
                    "{:>4}  {:<width$}  {sai:>15}",
                    row.id,
                    tuple(&row.assignment)
                );
                for (m, sd) in row.capacity_mean.iter().zip(&row.capacity_pooled_sd) {
                    let _ = write!(out, "  {:>16}", format!("{m:.3} ± {sd:.3}"));
                }
                let _ = writeln!(out);
            }
        }
    }

    let _ = writeln!(out);
    let _ = writeln!(out, "Category acceptability (%)");
    let name_width = report
        .alternatives
        .iter()
        .map(String::len)
        .max()
        .unwrap_or(4)
        .max(4);
    let _ = write!(out, "{:<name_width$}", "");
    for c in &report.categories {
        let _ = write!(out, "  {c:>10}");
    }
    let _ = writeln!(out);
    for (name, row) in report
        .alternatives
        .iter()
        .zip(&report.category_acceptability)
    {
        let _ = write!(out, "{name:<name_width$}");
        for v in row {
            let _ = write!(out, "  {:>10.2}", 100.0 * v);
        }
        let _ = writeln!(out);
    }
    out
}

/// Retained capacity samples as CSV: scenario assignment followed by the coordinates.
pub fn samples_csv(result: &SimulationResult<f64>) -> Option<String> {
    let retention = result.retention.as_ref()?;
    let mut out = String::from("assignment,");
    out.push_str(&result.layout.labels().join(","));
    out.push('\n');
    for (scenario, list) in retention.samples() {
        for x in list {
            let _ = writeln!(
                out,
                "{},{}",
                scenario.joined(";"),
                joined(x.iter().map(|v| round6(*v).to_string()))
            );
        }
    }
    Some(out)
}
