//! Singlet-pair sampler: the source of correlated randomness for the
//! EPR-assisted box and an independent witness for quantum CHSH values.
//!
//! The sampler draws directly from the singlet outcome distribution rather
//! than evolving state vectors. That keeps it classical-stochastic on
//! purpose: any classical realization of these correlations rests on shared
//! information, and the box circuits make visible how much of it has to
//! move as classical messages.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bit::Bit;
use crate::rng::{RandomSource, SeededSource};

/// A measurement direction, identified by its angle in radians.
///
/// Only differences of angles enter the statistics, so no normalization to
/// an interval is needed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementBasis {
    pub angle: f64,
}

impl MeasurementBasis {
    pub fn new(angle: f64) -> Self {
        MeasurementBasis { angle }
    }
}

/// One sampled measurement pair on a shared singlet; each side sees +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingletOutcome {
    pub alice: i8,
    pub bob: i8,
}

/// Draws one singlet measurement pair for the given bases.
///
/// Alice's outcome is a uniform coin; Bob's equals Alice's with probability
/// (1 - cos d)/2 for basis difference d, which makes both marginals exactly
/// uniform and the product expectation -cos d. Equal bases therefore
/// anti-correlate perfectly and opposite bases (d = pi) correlate
/// perfectly. Always consumes exactly one bit draw and one unit draw.
pub fn sample_singlet(
    basis_a: MeasurementBasis,
    basis_b: MeasurementBasis,
    rng: &mut dyn RandomSource,
) -> SingletOutcome {
    let alice = if rng.bit().is_one() { 1i8 } else { -1i8 };
    let delta = basis_a.angle - basis_b.angle;
    let p_equal = (1.0 - delta.cos()) / 2.0;
    let bob = if rng.unit() < p_equal { alice } else { -alice };
    SingletOutcome { alice, bob }
}

/// Error for values other than +1 and -1 offered as outcomes.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("singlet outcomes are +1 or -1, got {0}")]
pub struct InvalidOutcome(pub i8);

/// Translates a +1/-1 measurement outcome into the bit 1/0.
pub fn outcome_to_bit(outcome: i8) -> Result<Bit, InvalidOutcome> {
    match outcome {
        1 => Ok(Bit::ONE),
        -1 => Ok(Bit::ZERO),
        other => Err(InvalidOutcome(other)),
    }
}

/// The standard CHSH-maximizing angle choice: Alice at 0 and pi/2, Bob at
/// pi/4 and -pi/4.
pub fn standard_chsh_angles() -> ([f64; 2], [f64; 2]) {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
    ([0.0, FRAC_PI_2], [FRAC_PI_4, -FRAC_PI_4])
}

/// A sampled CHSH estimate: the four correlators E(a_i, b_j) in the order
/// (a1,b1), (a1,b2), (a2,b1), (a2,b2), combined as E11 + E12 + E21 - E22.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChshEstimate {
    pub correlators: [f64; 4],
    pub value: f64,
}

/// Estimates the CHSH combination from sampled singlet pairs.
///
/// Each of the four angle pairs gets its own substream of `seed` and
/// `trials_per_pair` samples; the correlator is the mean outcome product.
pub fn sample_chsh(
    alice_angles: [f64; 2],
    bob_angles: [f64; 2],
    trials_per_pair: u64,
    seed: u64,
) -> ChshEstimate {
    assert!(trials_per_pair > 0, "trials_per_pair must be positive");
    let mut correlators = [0.0f64; 4];
    let mut idx = 0;
    for &a in &alice_angles {
        for &b in &bob_angles {
            let mut rng = SeededSource::for_trial(seed, idx as u64);
            let mut sum = 0i64;
            for _ in 0..trials_per_pair {
                let outcome = sample_singlet(
                    MeasurementBasis::new(a),
                    MeasurementBasis::new(b),
                    &mut rng,
                );
                sum += (outcome.alice * outcome.bob) as i64;
            }
            correlators[idx] = sum as f64 / trials_per_pair as f64;
            idx += 1;
        }
    }
    let value = correlators[0] + correlators[1] + correlators[2] - correlators[3];
    ChshEstimate { correlators, value }
}
