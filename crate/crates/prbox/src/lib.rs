//! Discrete-event simulation of mechanical PR-box circuits in a toy
//! 1+1-dimensional spacetime.
//!
//! Four box variants accept one input bit per side and emit one output bit
//! per side. Each variant is an explicit state machine built from triggers,
//! random-number generators, and internal classical messages, so every bit
//! the circuit moves between the two sides is logged and billed. The
//! analysis layer estimates joint output distributions from trial batches
//! and checks the statistical claims: the PR input-output condition
//! `a XOR b = x AND y`, no-signaling of the marginals, CHSH values, and
//! per-trial communication cost.
//!
//! Module map:
//!
//! - [`bit`]: bits, sides, input pairs, the PR predicate
//! - [`trial`]: per-trial records (messages, outputs, timing)
//! - [`spacetime`]: 1+1-D events, causal classification, first-measurer rule
//! - [`rng`]: seedable randomness with per-trial substreams, scripted source
//! - [`quantum`]: singlet-pair sampler and sampled CHSH estimates
//! - [`boxes`]: the four circuits
//! - [`analysis`]: distribution estimates and statistical tests
//! - [`experiment`]: configured trial batches and JSON reports
//! - [`suite`]: the built-in claim-verification suite

pub mod analysis;
pub mod bit;
pub mod boxes;
pub mod experiment;
pub mod quantum;
pub mod rng;
pub mod spacetime;
pub mod suite;
pub mod trial;

pub use analysis::{
    bit_accounting, channel_mutual_information, chsh_value, estimate_distribution,
    nonsignaling_test, pr_compliance, AnalysisError, BitAccountingReport, JointDistribution,
    NonSignalingReport,
};
pub use bit::{pr_satisfied, Bit, InputPair, InvalidBit, Side};
pub use boxes::{
    run_asymmetric_box, run_epr_box, run_signaling_box, run_symmetric_box, BoxVariant,
    CANONICAL_DISTANCE,
};
pub use experiment::{
    run_experiment, run_experiment_with_workers, run_trials, ConfigError, ExperimentConfig,
    InputStrategy, Report, ScheduleStrategy,
};
pub use quantum::{outcome_to_bit, sample_chsh, sample_singlet, MeasurementBasis, SingletOutcome};
pub use rng::{RandomSource, ScriptedSource, SeededSource};
pub use spacetime::{
    causal_relation, first_measurer, signal_arrival_time, CausalRelation, FirstMeasurer,
    ScheduleError, SpacetimeEvent, TrialSchedule,
};
pub use suite::{run_paper_suite, SuiteCheck, SuiteReport};
pub use trial::{InternalMessage, PayloadKind, TrialResult};
