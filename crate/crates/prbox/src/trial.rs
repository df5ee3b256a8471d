//! Per-trial records: the internal messages a circuit exchanged and the
//! outputs it produced.

use serde::{Deserialize, Serialize};

use crate::bit::{pr_satisfied, Bit, InputPair, Side};

/// What an internal transmission carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PayloadKind {
    /// One party's input bit forwarded to the other side.
    InputBit,
    /// The result of an internal random-number generator.
    RandomBit,
    /// A classical bit derived from an EPR measurement outcome.
    EprClassicalBit,
    /// A control pulse that starts a generator or measurement. Carries no
    /// information about inputs or random values.
    Trigger,
}

impl PayloadKind {
    /// Classical bits billed for one message of this kind.
    pub fn bit_cost(self) -> u64 {
        match self {
            PayloadKind::InputBit | PayloadKind::RandomBit | PayloadKind::EprClassicalBit => 1,
            PayloadKind::Trigger => 0,
        }
    }
}

/// One directed transmission inside the box.
///
/// Triggers may stay on one side (`from == to`); bit-carrying payloads cross
/// between the parties. Arrival is never earlier than emission because the
/// circuits move messages at most at light speed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InternalMessage {
    pub from: Side,
    pub to: Side,
    pub payload_kind: PayloadKind,
    pub bit_cost: u64,
    pub emit_time: f64,
    pub arrival_time: f64,
}

impl InternalMessage {
    /// Builds a message with the cost implied by its payload kind.
    pub fn new(
        from: Side,
        to: Side,
        payload_kind: PayloadKind,
        emit_time: f64,
        arrival_time: f64,
    ) -> Self {
        InternalMessage {
            from,
            to,
            payload_kind,
            bit_cost: payload_kind.bit_cost(),
            emit_time,
            arrival_time,
        }
    }
}

/// Outcome of one run of a box circuit.
///
/// `a_output_time` and `b_output_time` record when each side's output port
/// fired; `degenerate` marks trials whose schedule admitted no first
/// measurer, where the circuits fall back to unsynchronized local outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub inputs: InputPair,
    pub a: Bit,
    pub b: Bit,
    pub a_output_time: f64,
    pub b_output_time: f64,
    pub messages: Vec<InternalMessage>,
    pub degenerate: bool,
}

impl TrialResult {
    /// Whether the outputs satisfy `a XOR b = x AND y`.
    pub fn pr_satisfied(&self) -> bool {
        pr_satisfied(self.inputs, self.a, self.b)
    }

    /// Output bit of `side`.
    pub fn output_for(&self, side: Side) -> Bit {
        match side {
            Side::Alice => self.a,
            Side::Bob => self.b,
        }
    }

    /// Total classical bits moved in this trial, both directions.
    pub fn classical_bits(&self) -> u64 {
        self.messages.iter().map(|m| m.bit_cost).sum()
    }

    /// Classical bits moved from one specific side to the other.
    pub fn classical_bits_between(&self, from: Side, to: Side) -> u64 {
        self.messages
            .iter()
            .filter(|m| m.from == from && m.to == to)
            .map(|m| m.bit_cost)
            .sum()
    }

    /// Number of zero-cost trigger pulses in the log.
    pub fn trigger_count(&self) -> u64 {
        self.messages
            .iter()
            .filter(|m| m.payload_kind == PayloadKind::Trigger)
            .count() as u64
    }
}
