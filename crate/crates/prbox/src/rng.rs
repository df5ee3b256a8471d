//! Randomness as the boxes consume it: uniform bits and unit-interval
//! draws, behind a trait so tests can script every branch.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bit::Bit;

/// Source of the random draws a circuit makes during one trial.
pub trait RandomSource {
    /// One uniform bit.
    fn bit(&mut self) -> Bit;

    /// One uniform draw from [0, 1).
    fn unit(&mut self) -> f64;

    /// Number of draws served so far, bits and units combined.
    fn draws(&self) -> u64;
}

/// ChaCha-backed source: the same seed always yields the same stream.
#[derive(Debug, Clone)]
pub struct SeededSource {
    rng: ChaCha8Rng,
    draws: u64,
}

impl SeededSource {
    pub fn from_seed(seed: u64) -> Self {
        SeededSource {
            rng: ChaCha8Rng::seed_from_u64(seed),
            draws: 0,
        }
    }

    /// An independent substream for one trial of a batch.
    ///
    /// Trials draw from disjoint cipher streams of the same master seed, so
    /// a batch's results do not depend on execution order or worker count.
    pub fn for_trial(master_seed: u64, trial_index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(trial_index);
        SeededSource { rng, draws: 0 }
    }
}

impl RandomSource for SeededSource {
    fn bit(&mut self) -> Bit {
        self.draws += 1;
        Bit::from(self.rng.random::<bool>())
    }

    fn unit(&mut self) -> f64 {
        self.draws += 1;
        self.rng.random::<f64>()
    }

    fn draws(&self) -> u64 {
        self.draws
    }
}

/// Pre-scripted source for tests: serves exactly the provided draws and
/// panics when asked for more, so every consumption is accounted for.
#[derive(Debug, Clone, Default)]
pub struct ScriptedSource {
    bits: VecDeque<Bit>,
    units: VecDeque<f64>,
    draws: u64,
}

impl ScriptedSource {
    pub fn new(
        bits: impl IntoIterator<Item = Bit>,
        units: impl IntoIterator<Item = f64>,
    ) -> Self {
        ScriptedSource {
            bits: bits.into_iter().collect(),
            units: units.into_iter().collect(),
            draws: 0,
        }
    }

    /// Shorthand for a script of bits given as 0/1 integers.
    pub fn from_bits(bits: impl IntoIterator<Item = u8>) -> Self {
        ScriptedSource::new(
            bits.into_iter()
                .map(|b| Bit::new(b).expect("scripted bits must be 0 or 1")),
            [],
        )
    }

    /// True when every scripted draw has been consumed.
    pub fn exhausted(&self) -> bool {
        self.bits.is_empty() && self.units.is_empty()
    }
}

impl RandomSource for ScriptedSource {
    fn bit(&mut self) -> Bit {
        self.draws += 1;
        self.bits
            .pop_front()
            .expect("scripted source ran out of bits")
    }

    fn unit(&mut self) -> f64 {
        self.draws += 1;
        self.units
            .pop_front()
            .expect("scripted source ran out of unit draws")
    }

    fn draws(&self) -> u64 {
        self.draws
    }
}
