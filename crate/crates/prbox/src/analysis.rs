//! Estimators and statistical tests over batches of trial results: joint
//! distributions, PR compliance, no-signaling deltas, CHSH values, channel
//! mutual information, and communication-bit accounting.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bit::{Bit, InputPair, Side};
use crate::trial::TrialResult;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("no trial results to analyze")]
    EmptyResults,
    #[error("no trials recorded for input pair (x={x}, y={y})")]
    MissingInputPair { x: Bit, y: Bit },
}

/// Joint input-output counts indexed as [x][y][a][b].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct JointDistribution {
    counts: [[[[u64; 2]; 2]; 2]; 2],
}

/// One cell of the joint table in flat form, for reports and CSV export.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionRow {
    pub x: u8,
    pub y: u8,
    pub a: u8,
    pub b: u8,
    pub count: u64,
}

impl JointDistribution {
    pub fn record(&mut self, inputs: InputPair, a: Bit, b: Bit) {
        self.counts[inputs.x.value() as usize][inputs.y.value() as usize]
            [a.value() as usize][b.value() as usize] += 1;
    }

    pub fn count(&self, inputs: InputPair, a: Bit, b: Bit) -> u64 {
        self.counts[inputs.x.value() as usize][inputs.y.value() as usize]
            [a.value() as usize][b.value() as usize]
    }

    /// Trials recorded for one joint input.
    pub fn trials_for(&self, inputs: InputPair) -> u64 {
        let cell = self.counts[inputs.x.value() as usize][inputs.y.value() as usize];
        cell[0][0] + cell[0][1] + cell[1][0] + cell[1][1]
    }

    pub fn total_trials(&self) -> u64 {
        InputPair::all().iter().map(|&p| self.trials_for(p)).sum()
    }

    /// Counts of this table and `other` added cell by cell. Merging two
    /// halves of a batch equals estimating the whole batch.
    pub fn merge(&self, other: &JointDistribution) -> JointDistribution {
        let mut merged = *self;
        for x in 0..2 {
            for y in 0..2 {
                for a in 0..2 {
                    for b in 0..2 {
                        merged.counts[x][y][a][b] += other.counts[x][y][a][b];
                    }
                }
            }
        }
        merged
    }

    /// Estimated P(a, b | x, y).
    pub fn conditional(&self, inputs: InputPair, a: Bit, b: Bit) -> Result<f64, AnalysisError> {
        let n = self.trials_for(inputs);
        if n == 0 {
            return Err(AnalysisError::MissingInputPair {
                x: inputs.x,
                y: inputs.y,
            });
        }
        Ok(self.count(inputs, a, b) as f64 / n as f64)
    }

    /// Estimated P(a | x, y), Alice's output marginal.
    pub fn alice_marginal(&self, inputs: InputPair, a: Bit) -> Result<f64, AnalysisError> {
        Ok(self.conditional(inputs, a, Bit::ZERO)? + self.conditional(inputs, a, Bit::ONE)?)
    }

    /// Estimated P(b | x, y), Bob's output marginal.
    pub fn bob_marginal(&self, inputs: InputPair, b: Bit) -> Result<f64, AnalysisError> {
        Ok(self.conditional(inputs, Bit::ZERO, b)? + self.conditional(inputs, Bit::ONE, b)?)
    }

    /// All 16 cells in lexicographic (x, y, a, b) order, zero counts
    /// included.
    pub fn rows(&self) -> Vec<DistributionRow> {
        let mut rows = Vec::with_capacity(16);
        for x in 0..2u8 {
            for y in 0..2u8 {
                for a in 0..2u8 {
                    for b in 0..2u8 {
                        rows.push(DistributionRow {
                            x,
                            y,
                            a,
                            b,
                            count: self.counts[x as usize][y as usize][a as usize][b as usize],
                        });
                    }
                }
            }
        }
        rows
    }
}

/// Tallies a batch of trials into a joint distribution.
pub fn estimate_distribution(results: &[TrialResult]) -> Result<JointDistribution, AnalysisError> {
    if results.is_empty() {
        return Err(AnalysisError::EmptyResults);
    }
    let mut dist = JointDistribution::default();
    for trial in results {
        dist.record(trial.inputs, trial.a, trial.b);
    }
    Ok(dist)
}

/// Fraction of trials whose outputs satisfy `a XOR b = x AND y`.
pub fn pr_compliance(results: &[TrialResult]) -> Result<f64, AnalysisError> {
    if results.is_empty() {
        return Err(AnalysisError::EmptyResults);
    }
    let satisfied = results.iter().filter(|t| t.pr_satisfied()).count();
    Ok(satisfied as f64 / results.len() as f64)
}

/// Result of the marginal-selectivity check: the largest shift either
/// side's output marginal shows when the other side's input flips.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonSignalingReport {
    /// max over x of |P(a=1|x,y=0) - P(a=1|x,y=1)|.
    pub delta_alice: f64,
    /// max over y of |P(b=1|x=0,y) - P(b=1|x=1,y)|.
    pub delta_bob: f64,
    /// Acceptance bound z * sqrt(0.5 / N_min) for the smallest per-input
    /// trial count N_min.
    pub threshold: f64,
    pub passes: bool,
}

/// Checks that each side's output marginal is independent of the other
/// side's input, up to sampling noise at significance multiplier `z`.
///
/// The deltas are differences of two independent proportion estimates;
/// each estimate has variance at most 0.25/N, so the difference has
/// standard deviation at most sqrt(0.5/N).
pub fn nonsignaling_test(
    dist: &JointDistribution,
    z: f64,
) -> Result<NonSignalingReport, AnalysisError> {
    let pairs = InputPair::all();
    let n_min = pairs
        .iter()
        .map(|&p| dist.trials_for(p))
        .min()
        .expect("four input pairs");
    if n_min == 0 {
        let missing = pairs
            .iter()
            .find(|&&p| dist.trials_for(p) == 0)
            .expect("some pair has zero trials");
        return Err(AnalysisError::MissingInputPair {
            x: missing.x,
            y: missing.y,
        });
    }

    let mut delta_alice = 0.0f64;
    for x in [Bit::ZERO, Bit::ONE] {
        let p0 = dist.alice_marginal(InputPair::new(x, Bit::ZERO), Bit::ONE)?;
        let p1 = dist.alice_marginal(InputPair::new(x, Bit::ONE), Bit::ONE)?;
        delta_alice = delta_alice.max((p0 - p1).abs());
    }
    let mut delta_bob = 0.0f64;
    for y in [Bit::ZERO, Bit::ONE] {
        let p0 = dist.bob_marginal(InputPair::new(Bit::ZERO, y), Bit::ONE)?;
        let p1 = dist.bob_marginal(InputPair::new(Bit::ONE, y), Bit::ONE)?;
        delta_bob = delta_bob.max((p0 - p1).abs());
    }

    let threshold = z * (0.5 / n_min as f64).sqrt();
    Ok(NonSignalingReport {
        delta_alice,
        delta_bob,
        threshold,
        passes: delta_alice <= threshold && delta_bob <= threshold,
    })
}

/// The CHSH combination E(0,0) + E(0,1) + E(1,0) - E(1,1), where
/// E(x,y) = P(a=b|x,y) - P(a!=b|x,y).
///
/// A box that satisfies the PR condition exactly scores 4; local classical
/// strategies stay within magnitude 2 and quantum ones within 2*sqrt(2).
pub fn chsh_value(dist: &JointDistribution) -> Result<f64, AnalysisError> {
    let correlator = |inputs: InputPair| -> Result<f64, AnalysisError> {
        let equal = dist.conditional(inputs, Bit::ZERO, Bit::ZERO)?
            + dist.conditional(inputs, Bit::ONE, Bit::ONE)?;
        let unequal = dist.conditional(inputs, Bit::ZERO, Bit::ONE)?
            + dist.conditional(inputs, Bit::ONE, Bit::ZERO)?;
        Ok(equal - unequal)
    };
    Ok(correlator(InputPair::new(Bit::ZERO, Bit::ZERO))?
        + correlator(InputPair::new(Bit::ZERO, Bit::ONE))?
        + correlator(InputPair::new(Bit::ONE, Bit::ZERO))?
        - correlator(InputPair::new(Bit::ONE, Bit::ONE))?)
}

/// Plug-in mutual information, in bits, between one side's input and the
/// other side's output across a batch.
///
/// Empirical joint frequencies go straight into
/// sum p(u,v) log2(p(u,v) / (p(u) p(v))) with 0 log 0 read as 0. The
/// estimator is biased upward by roughly 1/(2N ln 2) on independent data,
/// which vanishes as the batch grows.
pub fn channel_mutual_information(
    results: &[TrialResult],
    sender_input: Side,
    receiver_output: Side,
) -> Result<f64, AnalysisError> {
    if results.is_empty() {
        return Err(AnalysisError::EmptyResults);
    }
    let mut joint = [[0u64; 2]; 2];
    for trial in results {
        let u = trial.inputs.input_for(sender_input).value() as usize;
        let v = trial.output_for(receiver_output).value() as usize;
        joint[u][v] += 1;
    }
    let n = results.len() as f64;
    let row = [joint[0][0] + joint[0][1], joint[1][0] + joint[1][1]];
    let col = [joint[0][0] + joint[1][0], joint[0][1] + joint[1][1]];
    let mut mi = 0.0;
    for u in 0..2 {
        for v in 0..2 {
            if joint[u][v] == 0 {
                continue;
            }
            let p_uv = joint[u][v] as f64 / n;
            let p_u = row[u] as f64 / n;
            let p_v = col[v] as f64 / n;
            mi += p_uv * (p_uv / (p_u * p_v)).log2();
        }
    }
    Ok(mi)
}

/// Classical communication totals for a batch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BitAccountingReport {
    pub trials: u64,
    pub alice_to_bob_bits: u64,
    pub bob_to_alice_bits: u64,
    pub total_classical_bits: u64,
    pub mean_alice_to_bob: f64,
    pub mean_bob_to_alice: f64,
    pub mean_total: f64,
    /// Zero-cost trigger pulses, counted separately from billed bits.
    pub trigger_count: u64,
}

/// Sums classical bits moved per direction across a batch. An empty batch
/// yields all-zero totals and means.
pub fn bit_accounting(results: &[TrialResult]) -> BitAccountingReport {
    let trials = results.len() as u64;
    let mut alice_to_bob = 0u64;
    let mut bob_to_alice = 0u64;
    let mut triggers = 0u64;
    for trial in results {
        alice_to_bob += trial.classical_bits_between(Side::Alice, Side::Bob);
        bob_to_alice += trial.classical_bits_between(Side::Bob, Side::Alice);
        triggers += trial.trigger_count();
    }
    let mean = |bits: u64| {
        if trials == 0 {
            0.0
        } else {
            bits as f64 / trials as f64
        }
    };
    BitAccountingReport {
        trials,
        alice_to_bob_bits: alice_to_bob,
        bob_to_alice_bits: bob_to_alice,
        total_classical_bits: alice_to_bob + bob_to_alice,
        mean_alice_to_bob: mean(alice_to_bob),
        mean_bob_to_alice: mean(bob_to_alice),
        mean_total: mean(alice_to_bob + bob_to_alice),
        trigger_count: triggers,
    }
}
