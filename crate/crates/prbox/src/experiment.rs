//! Configured trial batches: input and schedule strategies, parallel
//! execution with per-trial substreams, and the aggregated report.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{
    bit_accounting, channel_mutual_information, chsh_value, estimate_distribution,
    nonsignaling_test, BitAccountingReport, DistributionRow, NonSignalingReport,
};
use crate::bit::{Bit, InputPair, Side};
use crate::boxes::{BoxVariant, CANONICAL_DISTANCE};
use crate::rng::{RandomSource, SeededSource};
use crate::spacetime::{SpacetimeEvent, TrialSchedule};
use crate::trial::TrialResult;

/// How each trial's joint input is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum InputStrategy {
    /// Fresh uniform bits every trial, x drawn before y.
    UniformRandom,
    /// Cycles the four joint inputs in lexicographic order by trial index,
    /// giving exactly balanced counts when the total is a multiple of 4.
    Sweep,
    /// Pins a side to a constant bit; a `None` side alternates 0 and 1 by
    /// trial index, staying exactly balanced on even totals.
    Fixed { x: Option<Bit>, y: Option<Bit> },
}

impl InputStrategy {
    /// The joint input for trial `index`.
    pub fn inputs_for(self, index: u64, rng: &mut dyn RandomSource) -> InputPair {
        let alternating = Bit::from(index & 1 == 1);
        let slow_alternating = Bit::from((index >> 1) & 1 == 1);
        match self {
            InputStrategy::UniformRandom => {
                let x = rng.bit();
                let y = rng.bit();
                InputPair::new(x, y)
            }
            InputStrategy::Sweep => InputPair::new(slow_alternating, alternating),
            InputStrategy::Fixed { x, y } => match (x, y) {
                (Some(x), Some(y)) => InputPair::new(x, y),
                (Some(x), None) => InputPair::new(x, alternating),
                (None, Some(y)) => InputPair::new(alternating, y),
                (None, None) => InputPair::new(slow_alternating, alternating),
            },
        }
    }
}

impl fmt::Display for InputStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputStrategy::UniformRandom => write!(f, "uniform"),
            InputStrategy::Sweep => write!(f, "sweep"),
            InputStrategy::Fixed { x, y } => {
                let part = |side: &Option<Bit>| match side {
                    Some(bit) => bit.to_string(),
                    None => "*".to_string(),
                };
                write!(f, "fixed:{},{}", part(x), part(y))
            }
        }
    }
}

impl FromStr for InputStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => return Ok(InputStrategy::UniformRandom),
            "sweep" => return Ok(InputStrategy::Sweep),
            _ => {}
        }
        let pair = s.strip_prefix("fixed:").ok_or_else(|| {
            format!("unknown input strategy '{s}' (expected uniform, sweep, or fixed:X,Y)")
        })?;
        let parse_side = |part: &str| -> Result<Option<Bit>, String> {
            match part {
                "0" => Ok(Some(Bit::ZERO)),
                "1" => Ok(Some(Bit::ONE)),
                "*" => Ok(None),
                other => Err(format!(
                    "fixed input sides must be 0, 1, or *, got '{other}'"
                )),
            }
        };
        match pair.split(',').collect::<Vec<_>>().as_slice() {
            [x, y] => Ok(InputStrategy::Fixed {
                x: parse_side(x)?,
                y: parse_side(y)?,
            }),
            _ => Err(format!(
                "fixed inputs need exactly two comma-separated sides, got '{pair}'"
            )),
        }
    }
}

impl From<InputStrategy> for String {
    fn from(strategy: InputStrategy) -> String {
        strategy.to_string()
    }
}

impl TryFrom<String> for InputStrategy {
    type Error = String;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        value.parse()
    }
}

/// Where and when the two parties measure, per trial.
///
/// Alice sits at position 0 and Bob at the configured distance d; the
/// strategies only vary the measurement times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum ScheduleStrategy {
    /// Alice at t = 0, Bob at t = 2d: Bob is strictly informed.
    TimelikeAliceFirst,
    /// Bob at t = 0, Alice at t = 2d.
    TimelikeBobFirst,
    /// Both at t = 0: spacelike separation, no definite order.
    Spacelike,
    /// Alice at t = 0, Bob at t = d: her signal lands exactly at his
    /// measurement, the boundary case of being informed.
    Lightlike,
    /// Uniformly one of alice-first, bob-first, spacelike per trial.
    RandomMixed,
}

impl ScheduleStrategy {
    /// Builds trial `index`'s geometry. Only `RandomMixed` draws from the
    /// source (exactly one unit draw).
    pub fn schedule_for(
        self,
        inputs: InputPair,
        distance: f64,
        rng: &mut dyn RandomSource,
    ) -> TrialSchedule {
        let build = |alice_time: f64, bob_time: f64| {
            TrialSchedule::new(
                SpacetimeEvent::new(alice_time, 0.0),
                SpacetimeEvent::new(bob_time, distance),
                inputs,
            )
            .expect("positive distance keeps positions distinct")
        };
        match self {
            ScheduleStrategy::TimelikeAliceFirst => build(0.0, 2.0 * distance),
            ScheduleStrategy::TimelikeBobFirst => build(2.0 * distance, 0.0),
            ScheduleStrategy::Spacelike => build(0.0, 0.0),
            ScheduleStrategy::Lightlike => build(0.0, distance),
            ScheduleStrategy::RandomMixed => {
                let u = rng.unit();
                match ((u * 3.0) as u32).min(2) {
                    0 => build(0.0, 2.0 * distance),
                    1 => build(2.0 * distance, 0.0),
                    _ => build(0.0, 0.0),
                }
            }
        }
    }
}

impl fmt::Display for ScheduleStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ScheduleStrategy::TimelikeAliceFirst => "alice-first",
            ScheduleStrategy::TimelikeBobFirst => "bob-first",
            ScheduleStrategy::Spacelike => "spacelike",
            ScheduleStrategy::Lightlike => "lightlike",
            ScheduleStrategy::RandomMixed => "mixed",
        };
        write!(f, "{name}")
    }
}

impl FromStr for ScheduleStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "alice-first" => Ok(ScheduleStrategy::TimelikeAliceFirst),
            "bob-first" => Ok(ScheduleStrategy::TimelikeBobFirst),
            "spacelike" => Ok(ScheduleStrategy::Spacelike),
            "lightlike" => Ok(ScheduleStrategy::Lightlike),
            "mixed" => Ok(ScheduleStrategy::RandomMixed),
            other => Err(format!(
                "unknown schedule '{other}' (expected alice-first, bob-first, spacelike, lightlike, or mixed)"
            )),
        }
    }
}

impl From<ScheduleStrategy> for String {
    fn from(strategy: ScheduleStrategy) -> String {
        strategy.to_string()
    }
}

impl TryFrom<String> for ScheduleStrategy {
    type Error = String;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        value.parse()
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum ConfigError {
    #[error("trials must be at least 1")]
    ZeroTrials,
    #[error("distance must be positive and finite, got {0}")]
    InvalidDistance(f64),
    #[error("z threshold must be positive and finite, got {0}")]
    InvalidThreshold(f64),
    #[error(
        "the {variant} box is hardwired to run Bob's side first; schedule '{schedule}' cannot apply (use bob-first)"
    )]
    ScheduleConflict {
        variant: BoxVariant,
        schedule: ScheduleStrategy,
    },
}

/// Everything one experiment depends on. Identical configs produce
/// identical reports, whatever the worker count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub variant: BoxVariant,
    pub trials: u64,
    pub seed: u64,
    pub inputs: InputStrategy,
    pub schedule: ScheduleStrategy,
    /// Spatial separation of the parties for scheduled variants.
    pub distance: f64,
    /// Significance multiplier for the no-signaling bound.
    pub z_threshold: f64,
}

impl ExperimentConfig {
    /// A sensible baseline: 100k uniform-input trials at the bench
    /// distance with the variant's natural schedule.
    pub fn new(variant: BoxVariant) -> Self {
        ExperimentConfig {
            variant,
            trials: 100_000,
            seed: 0,
            inputs: InputStrategy::UniformRandom,
            schedule: Self::canonical_schedule(variant),
            distance: CANONICAL_DISTANCE,
            z_threshold: 4.0,
        }
    }

    /// The schedule a variant naturally runs on: the sequential circuits
    /// act on Bob's side first; the symmetric ones default to Alice
    /// measuring first.
    pub fn canonical_schedule(variant: BoxVariant) -> ScheduleStrategy {
        if variant.uses_schedule() {
            ScheduleStrategy::TimelikeAliceFirst
        } else {
            ScheduleStrategy::TimelikeBobFirst
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.trials == 0 {
            return Err(ConfigError::ZeroTrials);
        }
        if !(self.distance.is_finite() && self.distance > 0.0) {
            return Err(ConfigError::InvalidDistance(self.distance));
        }
        if !(self.z_threshold.is_finite() && self.z_threshold > 0.0) {
            return Err(ConfigError::InvalidThreshold(self.z_threshold));
        }
        if !self.variant.uses_schedule() && self.schedule != ScheduleStrategy::TimelikeBobFirst {
            return Err(ConfigError::ScheduleConflict {
                variant: self.variant,
                schedule: self.schedule,
            });
        }
        Ok(())
    }
}

/// Runs one trial of a batch on its own substream. The draw order within
/// a trial is fixed: inputs first, then the schedule, then the box.
fn run_single_trial(config: &ExperimentConfig, index: u64) -> TrialResult {
    let mut rng = SeededSource::for_trial(config.seed, index);
    let inputs = config.inputs.inputs_for(index, &mut rng);
    let schedule = config
        .schedule
        .schedule_for(inputs, config.distance, &mut rng);
    config.variant.run_trial(&schedule, &mut rng)
}

/// Runs the configured batch, in parallel on the ambient thread pool,
/// preserving trial order. Per-trial substreams make the outcome
/// independent of how trials are distributed over threads.
pub fn run_trials(config: &ExperimentConfig) -> Result<Vec<TrialResult>, ConfigError> {
    config.validate()?;
    Ok((0..config.trials)
        .into_par_iter()
        .map(|index| run_single_trial(config, index))
        .collect())
}

/// Mutual information between each side's input and the opposite output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MutualInformationReport {
    pub bob_input_to_alice_output: f64,
    pub alice_input_to_bob_output: f64,
}

/// Trial count per joint input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputTrialsRow {
    pub x: u8,
    pub y: u8,
    pub trials: u64,
}

/// The aggregated outcome of one experiment.
///
/// `chsh` and `nonsignaling` are absent when the input strategy never
/// produced some joint input, since both need all four.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: ExperimentConfig,
    pub trials: u64,
    pub degenerate_trials: u64,
    pub degenerate_fraction: f64,
    pub pr_compliance: f64,
    pub chsh: Option<f64>,
    pub nonsignaling: Option<NonSignalingReport>,
    pub mutual_information: MutualInformationReport,
    pub bit_accounting: BitAccountingReport,
    pub trials_per_input: Vec<InputTrialsRow>,
    pub distribution: Vec<DistributionRow>,
}

impl Report {
    /// Pretty JSON with a trailing newline. Byte-identical for identical
    /// reports.
    pub fn to_json(&self) -> String {
        let mut json =
            serde_json::to_string_pretty(self).expect("report serialization cannot fail");
        json.push('\n');
        json
    }

    /// The joint distribution as CSV, all 16 cells in (x, y, a, b) order.
    pub fn distribution_csv(&self) -> String {
        let mut out = String::from("x,y,a,b,count\n");
        for row in &self.distribution {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.x, row.y, row.a, row.b, row.count
            ));
        }
        out
    }
}

/// Runs a batch and aggregates every statistic into a report.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Report, ConfigError> {
    let results = run_trials(config)?;
    let dist = estimate_distribution(&results).expect("validated configs run at least one trial");
    let degenerate_trials = results.iter().filter(|t| t.degenerate).count() as u64;
    let trials_per_input = InputPair::all()
        .iter()
        .map(|&inputs| InputTrialsRow {
            x: inputs.x.value(),
            y: inputs.y.value(),
            trials: dist.trials_for(inputs),
        })
        .collect();
    let mutual_information = MutualInformationReport {
        bob_input_to_alice_output: channel_mutual_information(&results, Side::Bob, Side::Alice)
            .expect("batch is non-empty"),
        alice_input_to_bob_output: channel_mutual_information(&results, Side::Alice, Side::Bob)
            .expect("batch is non-empty"),
    };
    Ok(Report {
        config: *config,
        trials: config.trials,
        degenerate_trials,
        degenerate_fraction: degenerate_trials as f64 / config.trials as f64,
        pr_compliance: crate::analysis::pr_compliance(&results).expect("batch is non-empty"),
        chsh: chsh_value(&dist).ok(),
        nonsignaling: nonsignaling_test(&dist, config.z_threshold).ok(),
        mutual_information,
        bit_accounting: bit_accounting(&results),
        trials_per_input,
        distribution: dist.rows(),
    })
}

/// Like [`run_experiment`] but on a dedicated pool of `workers` threads;
/// 0 means the ambient pool. Exists so the worker-independence of reports
/// can be demonstrated, not because results ever differ.
pub fn run_experiment_with_workers(
    config: &ExperimentConfig,
    workers: usize,
) -> Result<Report, ConfigError> {
    if workers == 0 {
        return run_experiment(config);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("worker pool construction");
    pool.install(|| run_experiment(config))
}
