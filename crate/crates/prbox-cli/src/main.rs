//! prbox: run PR-box circuit experiments and verify their statistical
//! claims from the command line.
//!
//! Exit codes: 0 success (and all suite checks passing), 1 runtime
//! failures or failed suite checks, 2 usage errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use prbox::quantum::standard_chsh_angles;
use prbox::{
    run_experiment_with_workers, run_paper_suite, sample_chsh, BoxVariant, ExperimentConfig,
    InputStrategy, ScheduleStrategy, SuiteReport, CANONICAL_DISTANCE,
};

#[derive(Parser)]
#[command(
    name = "prbox",
    version,
    about = "Simulate mechanical PR-box circuits and test their statistics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one configured experiment and emit a JSON report.
    Simulate(SimulateArgs),
    /// Re-derive the built-in statistical claims and report pass or fail.
    PaperSuite(PaperSuiteArgs),
    /// Estimate the CHSH combination from sampled singlet pairs.
    ChshQuantum(ChshQuantumArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Circuit to run: signaling, asymmetric, symmetric, or epr.
    #[arg(long = "box", value_name = "VARIANT", required_unless_present = "config")]
    box_variant: Option<BoxVariant>,
    /// Number of trials.
    #[arg(long)]
    trials: Option<u64>,
    /// Master seed; each trial draws from its own substream of it.
    #[arg(long)]
    seed: Option<u64>,
    /// Input strategy: uniform, sweep, or fixed:X,Y with X, Y in {0, 1, *}.
    #[arg(long)]
    inputs: Option<InputStrategy>,
    /// Measurement schedule: alice-first, bob-first, spacelike, lightlike,
    /// or mixed.
    #[arg(long)]
    schedule: Option<ScheduleStrategy>,
    /// Spatial separation of the parties.
    #[arg(long)]
    distance: Option<f64>,
    /// Significance multiplier for the no-signaling bound.
    #[arg(long)]
    z: Option<f64>,
    /// Worker threads for the trial batch (0 = one per core). Never
    /// changes the results, only the wall time.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Take the whole configuration from a JSON file (a bare config or a
    /// previously written report) instead of flags.
    #[arg(
        long,
        conflicts_with_all = ["box_variant", "trials", "seed", "inputs", "schedule", "distance", "z"]
    )]
    config: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the joint output distribution as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct PaperSuiteArgs {
    /// Master seed for every sampled statistic. Verdicts are seed-stable;
    /// only the measured numbers move within their tolerances.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the suite outcome as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ChshQuantumArgs {
    /// Four comma-separated radians a1,a2,b1,b2 (default: the standard
    /// maximizing angles 0, pi/2, pi/4, -pi/4).
    #[arg(long)]
    angles: Option<String>,
    /// Samples per angle pair.
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum CliError {
    /// Bad invocation or configuration: exit 2.
    Usage(String),
    /// Failures past validation (I/O, mostly): exit 1.
    Runtime(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::PaperSuite(args) => cmd_paper_suite(args),
        Command::ChshQuantum(args) => cmd_chsh_quantum(args),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn cmd_simulate(args: SimulateArgs) -> Result<ExitCode, CliError> {
    let config = match &args.config {
        Some(path) => load_config(path)?,
        None => {
            let variant = args
                .box_variant
                .expect("clap requires --box when --config is absent");
            if !variant.uses_schedule()
                && args.schedule == Some(ScheduleStrategy::TimelikeBobFirst)
            {
                eprintln!(
                    "note: the {variant} box is hardwired to run Bob's side first; \
                     bob-first is its only valid schedule"
                );
            }
            ExperimentConfig {
                variant,
                trials: args.trials.unwrap_or(100_000),
                seed: args.seed.unwrap_or(0),
                inputs: args.inputs.unwrap_or(InputStrategy::UniformRandom),
                schedule: args
                    .schedule
                    .unwrap_or_else(|| ExperimentConfig::canonical_schedule(variant)),
                distance: args.distance.unwrap_or(CANONICAL_DISTANCE),
                z_threshold: args.z.unwrap_or(4.0),
            }
        }
    };
    config
        .validate()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let report = run_experiment_with_workers(&config, args.workers)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let json = report.to_json();
    match &args.out {
        Some(path) => write_file(path, &json)?,
        None => print!("{json}"),
    }
    if let Some(path) = &args.csv {
        write_file(path, &report.distribution_csv())?;
    }
    Ok(ExitCode::SUCCESS)
}

/// Reads an experiment config from JSON; a full report is accepted too,
/// in which case its embedded config is used.
fn load_config(path: &Path) -> Result<ExperimentConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Runtime(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{} is not JSON: {e}", path.display())))?;
    let config_value = match value.get("config") {
        Some(embedded) => embedded.clone(),
        None => value,
    };
    serde_json::from_value(config_value).map_err(|e| {
        CliError::Usage(format!(
            "{} holds neither a config nor a report: {e}",
            path.display()
        ))
    })
}

fn cmd_paper_suite(args: PaperSuiteArgs) -> Result<ExitCode, CliError> {
    let report = run_paper_suite(args.seed);
    println!("{}", render_suite(&report));
    if let Some(path) = &args.out {
        write_file(path, &report.to_json())?;
    }
    if report.all_pass() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn render_suite(report: &SuiteReport) -> String {
    let mut out = format!("verification suite (seed {})\n", report.seed);
    for check in &report.checks {
        let verdict = if check.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!("\n[{verdict}] {}\n", check.id));
        out.push_str(&format!("  claim:    {}\n", check.claim));
        out.push_str(&format!("  measured: {}\n", check.measured));
    }
    let passed = report.checks.iter().filter(|c| c.pass).count();
    out.push_str(&format!(
        "\nresult: {passed}/{} checks passed",
        report.checks.len()
    ));
    out
}

fn cmd_chsh_quantum(args: ChshQuantumArgs) -> Result<ExitCode, CliError> {
    let (alice_angles, bob_angles) = match &args.angles {
        None => standard_chsh_angles(),
        Some(text) => parse_angles(text)?,
    };
    if args.trials == 0 {
        return Err(CliError::Usage("trials must be at least 1".to_string()));
    }
    let estimate = sample_chsh(alice_angles, bob_angles, args.trials, args.seed);
    let out = serde_json::json!({
        "alice_angles": alice_angles,
        "bob_angles": bob_angles,
        "trials_per_pair": args.trials,
        "seed": args.seed,
        "correlators": estimate.correlators,
        "chsh": estimate.value,
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&out).expect("estimate serialization cannot fail")
    );
    Ok(ExitCode::SUCCESS)
}

fn parse_angles(text: &str) -> Result<([f64; 2], [f64; 2]), CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::Usage(format!(
            "--angles needs four comma-separated radians, got {}",
            parts.len()
        )));
    }
    let mut values = [0.0f64; 4];
    for (slot, part) in values.iter_mut().zip(&parts) {
        let angle: f64 = part
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("cannot parse angle '{part}'")))?;
        if !angle.is_finite() {
            return Err(CliError::Usage(format!("angle '{part}' is not finite")));
        }
        *slot = angle;
    }
    Ok(([values[0], values[1]], [values[2], values[3]]))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))
}
