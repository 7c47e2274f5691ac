//! `choquet-sort`: validate problem files, run simulations, replicate, and export
//! histogram data.
//!
//! Exit codes: 0 on success, 1 for unreadable, malformed or invalid input, 2 for
//! failures while simulating or writing output.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use choquet_sorting::{
    build_polytope, canonical_json, export_capacity_samples, histogram, parse_problem_layered,
    run_replications, run_simulation, samples_csv, skewness, write_report, Execution, HarMode,
    IoError, Report, ReportFormat, Scenario, SettingsOverrides, SimulationSettings, SortingProblem,
    TruncationRule,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

const DEFAULT_CHUNKS: usize = 8;

#[derive(Parser)]
#[command(
    name = "choquet-sort",
    version,
    about = "Stochastic multicriteria sorting with 2-additive Choquet capacities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a problem file and its preference statements.
    Validate { file: PathBuf },
    /// Run one simulation and print a report.
    Run {
        file: PathBuf,
        #[command(flatten)]
        sim: SimFlags,
        #[command(flatten)]
        output: OutputFlags,
        /// Keep capacity vectors per scenario.
        #[arg(long)]
        retain_samples: bool,
        /// Write retained capacity vectors as CSV (implies --retain-samples).
        #[arg(long)]
        samples_out: Option<PathBuf>,
    },
    /// Run independent replications and report mean and sd per scenario.
    Replicate {
        file: PathBuf,
        #[arg(long)]
        replications: Option<usize>,
        #[command(flatten)]
        sim: SimFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Binned counts of one capacity coordinate within one scenario.
    Histogram {
        file: PathBuf,
        /// Assignment vector, e.g. "2,1,2,1,2".
        #[arg(long)]
        scenario: String,
        /// Coordinate label, e.g. I_1 or I_12.
        #[arg(long)]
        coordinate: String,
        #[arg(long, default_value_t = 20)]
        bins: usize,
        #[command(flatten)]
        sim: SimFlags,
    },
}

#[derive(Args)]
struct SimFlags {
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    burn_in: Option<usize>,
    #[arg(long)]
    thinning: Option<usize>,
    #[arg(long, value_enum)]
    har_mode: Option<Mode>,
    #[arg(long)]
    truncation_attempts: Option<usize>,
    /// How evaluations are kept inside the realized profile bounds.
    #[arg(long, value_enum)]
    truncation: Option<Truncation>,
    /// Single-stream seeding; results do not depend on thread scheduling or chunk count.
    #[arg(long, conflicts_with = "chunks")]
    serial: bool,
    /// Number of independently seeded chunks for parallel runs.
    #[arg(long)]
    chunks: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Chain,
    Restart,
}

#[derive(Clone, Copy, ValueEnum)]
enum Truncation {
    Reject,
    Clamp,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct OutputFlags {
    /// Report printed on standard output.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write the canonical JSON report to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SimFlags {
    fn overrides(&self) -> SettingsOverrides {
        SettingsOverrides {
            iterations: self.iterations,
            seed: self.seed,
            burn_in: self.burn_in,
            thinning: self.thinning,
            truncation_max_attempts: self.truncation_attempts,
            truncation: self.truncation.map(|t| match t {
                Truncation::Reject => TruncationRule::Reject,
                Truncation::Clamp => TruncationRule::Clamp,
            }),
            har_mode: self.har_mode.map(|m| match m {
                Mode::Chain => HarMode::Chain,
                Mode::Restart => HarMode::Restart,
            }),
            parallel_chunks: if self.serial { Some(0) } else { self.chunks },
            ..Default::default()
        }
    }
}

enum Failure {
    Input(String),
    Runtime(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn runtime(e: impl std::fmt::Display) -> Failure {
    Failure::Runtime(e.to_string())
}

fn load(path: &Path, flags: &SettingsOverrides) -> Result<SortingProblem<f64>, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let defaults = SimulationSettings {
        execution: Execution::Parallel {
            chunks: DEFAULT_CHUNKS,
        },
        ..SimulationSettings::default()
    };
    Ok(parse_problem_layered(&text, defaults, flags)?)
}

fn emit(report: &Report, output: &OutputFlags) -> Result<(), Failure> {
    let format = match output.format {
        Format::Json => ReportFormat::Json,
        Format::Csv => ReportFormat::Csv,
        Format::Text => ReportFormat::Text,
    };
    std::io::stdout()
        .write_all(&write_report(report, format))
        .map_err(runtime)?;
    if let Some(path) = &output.out {
        fs::write(path, canonical_json(report))
            .map_err(|e| runtime(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn validate(file: &Path) -> Result<(), Failure> {
    let problem = load(file, &SettingsOverrides::default())?;
    let polytope = build_polytope(
        problem.n_criteria(),
        &problem.preferences,
        problem.settings.strict_margin,
    )
    .map_err(|e| Failure::Input(format!("preferences: {e}")))?;
    let center = polytope
        .chebyshev_center()
        .map_err(|e| Failure::Input(format!("preferences: {e}")))?;
    println!(
        "ok: {} criteria, {} alternatives, {} categories; capacity space has dimension {} (inradius {:.4})",
        problem.n_criteria(),
        problem.m_alternatives(),
        problem.k_categories(),
        polytope.reduced_dim(),
        center.radius
    );
    Ok(())
}

fn execute(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Run {
            file,
            sim,
            output,
            retain_samples,
            samples_out,
        } => {
            let mut flags = sim.overrides();
            if retain_samples || samples_out.is_some() {
                flags.retain_samples = Some(true);
            }
            let problem = load(&file, &flags)?;
            let result = run_simulation(&problem).map_err(runtime)?;
            emit(&Report::from_result(&problem, &result), &output)?;
            if let Some(path) = samples_out {
                let csv = samples_csv(&result).ok_or_else(|| runtime("no samples retained"))?;
                fs::write(&path, csv)
                    .map_err(|e| runtime(format!("cannot write {}: {e}", path.display())))?;
            }
            if result.retention.as_ref().is_some_and(|r| r.overflowed()) {
                eprintln!("warning: retention cap reached; retained samples are incomplete");
            }
            Ok(())
        }
        Command::Replicate {
            file,
            replications,
            sim,
            output,
        } => {
            let mut flags = sim.overrides();
            flags.replications = replications;
            let problem = load(&file, &flags)?;
            let r = problem.settings.replications;
            if r == 0 {
                return Err(Failure::Input("replications must be at least 1".into()));
            }
            let summary = run_replications(&problem, r).map_err(runtime)?;
            emit(&Report::from_replications(&problem, &summary), &output)
        }
        Command::Histogram {
            file,
            scenario,
            coordinate,
            bins,
            sim,
        } => {
            let mut flags = sim.overrides();
            flags.retain_samples = Some(true);
            let problem = load(&file, &flags)?;
            let scenario: Scenario = scenario
                .parse()
                .map_err(|e| Failure::Input(format!("--scenario: {e}")))?;
            if bins == 0 {
                return Err(Failure::Input("--bins must be positive".into()));
            }
            let result = run_simulation(&problem).map_err(runtime)?;
            let index = result.layout.coordinate_of(&coordinate).ok_or_else(|| {
                Failure::Input(format!(
                    "--coordinate: unknown label {coordinate}; expected one of {}",
                    result.layout.labels().join(", ")
                ))
            })?;
            let samples = export_capacity_samples(&result, &scenario).map_err(runtime)?;
            let values: Vec<f64> = samples
                .iter()
                .map(|iv| result.layout.to_ambient(iv)[index])
                .collect();
            let mut out = String::from("lo,hi,count\n");
            for b in histogram(&values, bins) {
                out.push_str(&format!("{},{},{}\n", b.lo, b.hi, b.count));
            }
            print!("{out}");
            eprintln!(
                "{} samples for {scenario}, {coordinate} skewness {:.4}",
                values.len(),
                skewness(&values)
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
