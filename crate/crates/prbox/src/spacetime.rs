//! 1+1-dimensional Minkowski events with c = 1: causal classification,
//! light-speed signal arrival, and the first-measurer rule the symmetric
//! circuits key their internal ordering on.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bit::{InputPair, Side};

/// A point in the toy spacetime: one time and one spatial coordinate.
///
/// Coordinates must be finite; the constructor rejects NaN and infinities
/// because every causal comparison below depends on total order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacetimeEvent {
    pub time: f64,
    pub position: f64,
}

impl SpacetimeEvent {
    pub fn new(time: f64, position: f64) -> Self {
        assert!(
            time.is_finite() && position.is_finite(),
            "spacetime coordinates must be finite"
        );
        SpacetimeEvent { time, position }
    }
}

/// How one event relates to another under light-speed causality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CausalRelation {
    /// The first event can influence the second (strictly inside its
    /// forward light cone).
    TimelikePast,
    /// The second event can influence the first.
    TimelikeFuture,
    /// On each other's light cone, coincident events included.
    Lightlike,
    /// Neither can influence the other.
    Spacelike,
}

/// Classifies `e1` relative to `e2`.
pub fn causal_relation(e1: SpacetimeEvent, e2: SpacetimeEvent) -> CausalRelation {
    let dt = e2.time - e1.time;
    let dx = (e2.position - e1.position).abs();
    if dt > dx {
        CausalRelation::TimelikePast
    } else if dt < -dx {
        CausalRelation::TimelikeFuture
    } else if dt.abs() == dx {
        CausalRelation::Lightlike
    } else {
        CausalRelation::Spacelike
    }
}

/// When a light-speed signal emitted at `source` reaches `target_position`.
pub fn signal_arrival_time(source: SpacetimeEvent, target_position: f64) -> f64 {
    source.time + (target_position - source.position).abs()
}

/// Error for schedules whose parties share one position.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("alice and bob must occupy distinct positions")]
pub struct ScheduleError;

/// One trial's geometry: where and when each party feeds its input bit in.
///
/// The two positions are guaranteed distinct, which is what rules out the
/// sides being mutually informed of each other's measurement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSchedule", into = "RawSchedule")]
pub struct TrialSchedule {
    alice_event: SpacetimeEvent,
    bob_event: SpacetimeEvent,
    inputs: InputPair,
}

/// Serde surrogate so deserialized schedules pass the same validation.
#[derive(Serialize, Deserialize)]
struct RawSchedule {
    alice_event: SpacetimeEvent,
    bob_event: SpacetimeEvent,
    inputs: InputPair,
}

impl TryFrom<RawSchedule> for TrialSchedule {
    type Error = ScheduleError;

    fn try_from(raw: RawSchedule) -> Result<Self, ScheduleError> {
        TrialSchedule::new(raw.alice_event, raw.bob_event, raw.inputs)
    }
}

impl From<TrialSchedule> for RawSchedule {
    fn from(schedule: TrialSchedule) -> RawSchedule {
        RawSchedule {
            alice_event: schedule.alice_event,
            bob_event: schedule.bob_event,
            inputs: schedule.inputs,
        }
    }
}

impl TrialSchedule {
    pub fn new(
        alice_event: SpacetimeEvent,
        bob_event: SpacetimeEvent,
        inputs: InputPair,
    ) -> Result<Self, ScheduleError> {
        if alice_event.position == bob_event.position {
            return Err(ScheduleError);
        }
        Ok(TrialSchedule {
            alice_event,
            bob_event,
            inputs,
        })
    }

    pub fn alice_event(&self) -> SpacetimeEvent {
        self.alice_event
    }

    pub fn bob_event(&self) -> SpacetimeEvent {
        self.bob_event
    }

    pub fn inputs(&self) -> InputPair {
        self.inputs
    }

    pub fn event_for(&self, side: Side) -> SpacetimeEvent {
        match side {
            Side::Alice => self.alice_event,
            Side::Bob => self.bob_event,
        }
    }

    /// Spatial separation of the parties. Always positive.
    pub fn distance(&self) -> f64 {
        (self.alice_event.position - self.bob_event.position).abs()
    }

    /// The same geometry with the parties exchanged: Alice takes Bob's
    /// event and input and vice versa.
    pub fn mirrored(&self) -> TrialSchedule {
        TrialSchedule {
            alice_event: self.bob_event,
            bob_event: self.alice_event,
            inputs: self.inputs.swapped(),
        }
    }
}

/// Which party the box treats as having measured first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FirstMeasurer {
    AliceFirst,
    BobFirst,
    /// Neither measurement lies in the other's closed past light cone, so
    /// no frame-independent ordering exists.
    Ambiguous,
}

/// Decides the measurement order for a schedule.
///
/// A side counts as informed when a light-speed signal from the other
/// side's measurement reaches its position at or before its own
/// measurement; the boundary case (exactly lightlike) is included.
pub fn first_measurer(schedule: &TrialSchedule) -> FirstMeasurer {
    let alice = schedule.alice_event();
    let bob = schedule.bob_event();
    let bob_informed = signal_arrival_time(alice, bob.position) <= bob.time;
    let alice_informed = signal_arrival_time(bob, alice.position) <= alice.time;
    match (alice_informed, bob_informed) {
        (false, true) => FirstMeasurer::AliceFirst,
        (true, false) => FirstMeasurer::BobFirst,
        (false, false) => FirstMeasurer::Ambiguous,
        (true, true) => {
            // Mutual information transfer needs |t_a - t_b| >= d twice over
            // with opposite signs, impossible for d > 0.
            unreachable!("distinct positions exclude mutually informed measurements")
        }
    }
}
