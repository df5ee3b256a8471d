//! The four box circuits, each a deterministic state machine over the
//! joint inputs, a randomness source, and (for the symmetric variants) a
//! measurement schedule.
//!
//! | variant    | outputs                                           | classical bits per trial |
//! |------------|---------------------------------------------------|---------------------------|
//! | signaling  | b = 0, a = x AND y                                | 1 (Bob to Alice)          |
//! | asymmetric | b = r, a = (x AND y) XOR r                        | 2 (Bob to Alice)          |
//! | symmetric  | first = r, second = (x AND y) XOR r               | 2 (first to second)       |
//! | epr        | first = own EPR bit, second = (x AND y) XOR NOT(own EPR bit) | 1 (first to second) |
//!
//! Every variant satisfies `a XOR b = x AND y` on trials with a definite
//! measurement order. On order-free (spacelike) schedules the symmetric
//! variants cannot synchronize: each side emits a local output and the
//! trial is flagged degenerate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bit::{Bit, InputPair, Side};
use crate::quantum::{outcome_to_bit, sample_singlet, MeasurementBasis};
use crate::rng::RandomSource;
use crate::spacetime::{
    first_measurer, signal_arrival_time, FirstMeasurer, SpacetimeEvent, TrialSchedule,
};
use crate::trial::{InternalMessage, PayloadKind, TrialResult};

/// Bench separation of the two sequential circuits (signaling and
/// asymmetric): Alice sits at position 0, Bob at this position, and both
/// feed their inputs in at t = 0.
pub const CANONICAL_DISTANCE: f64 = 5.0;

/// Which circuit a trial runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum BoxVariant {
    /// Outputs a = x AND y and b = 0: satisfies the PR condition but lets
    /// Alice's marginal depend on Bob's input.
    Signaling,
    /// Bob masks both outputs with his random bit r: PR condition plus
    /// uniform marginals, with Bob's side hardwired to act first.
    AsymmetricNonSignaling,
    /// Whichever side measures first triggers the shared random bit and
    /// forwards it with its input; both outputs fire at their own
    /// measurement times.
    SymmetricImmediate,
    /// Like the symmetric circuit, but the shared randomness comes from a
    /// singlet pair measured in one predefined basis, so only the first
    /// measurer's input crosses as a classical bit.
    EprAssisted,
}

impl BoxVariant {
    pub const ALL: [BoxVariant; 4] = [
        BoxVariant::Signaling,
        BoxVariant::AsymmetricNonSignaling,
        BoxVariant::SymmetricImmediate,
        BoxVariant::EprAssisted,
    ];

    /// Whether the circuit reads the trial schedule. The sequential
    /// variants run on the built-in bench geometry with Bob's side acting
    /// first, whatever schedule the trial was configured with.
    pub fn uses_schedule(self) -> bool {
        matches!(
            self,
            BoxVariant::SymmetricImmediate | BoxVariant::EprAssisted
        )
    }

    /// Runs one trial of this circuit.
    pub fn run_trial(
        self,
        schedule: &TrialSchedule,
        rng: &mut dyn RandomSource,
    ) -> TrialResult {
        match self {
            BoxVariant::Signaling => run_signaling_box(schedule.inputs(), rng),
            BoxVariant::AsymmetricNonSignaling => run_asymmetric_box(schedule.inputs(), rng),
            BoxVariant::SymmetricImmediate => run_symmetric_box(schedule, rng),
            BoxVariant::EprAssisted => run_epr_box(schedule, rng),
        }
    }
}

impl fmt::Display for BoxVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            BoxVariant::Signaling => "signaling",
            BoxVariant::AsymmetricNonSignaling => "asymmetric",
            BoxVariant::SymmetricImmediate => "symmetric",
            BoxVariant::EprAssisted => "epr",
        };
        write!(f, "{name}")
    }
}

impl FromStr for BoxVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "signaling" => Ok(BoxVariant::Signaling),
            "asymmetric" => Ok(BoxVariant::AsymmetricNonSignaling),
            "symmetric" => Ok(BoxVariant::SymmetricImmediate),
            "epr" => Ok(BoxVariant::EprAssisted),
            other => Err(format!(
                "unknown box variant '{other}' (expected signaling, asymmetric, symmetric, or epr)"
            )),
        }
    }
}

impl From<BoxVariant> for String {
    fn from(variant: BoxVariant) -> String {
        variant.to_string()
    }
}

impl TryFrom<String> for BoxVariant {
    type Error = String;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        value.parse()
    }
}

/// Bench events for the sequential circuits: both parties feed their
/// inputs in simultaneously, Bob's device acts and Alice's waits.
fn sequential_bench() -> (SpacetimeEvent, SpacetimeEvent) {
    (
        SpacetimeEvent::new(0.0, 0.0),
        SpacetimeEvent::new(0.0, CANONICAL_DISTANCE),
    )
}

/// The plainly signaling circuit: Bob answers 0 on the spot and ships his
/// input to Alice, whose box holds her input until the message lands and
/// then answers x AND y.
pub fn run_signaling_box(inputs: InputPair, _rng: &mut dyn RandomSource) -> TrialResult {
    let (alice, bob) = sequential_bench();
    let arrival = signal_arrival_time(bob, alice.position);
    let messages = vec![
        InternalMessage::new(Side::Bob, Side::Bob, PayloadKind::Trigger, bob.time, bob.time),
        InternalMessage::new(
            Side::Bob,
            Side::Alice,
            PayloadKind::InputBit,
            bob.time,
            arrival,
        ),
    ];
    TrialResult {
        inputs,
        a: inputs.x & inputs.y,
        b: Bit::ZERO,
        a_output_time: arrival,
        b_output_time: bob.time,
        messages,
        degenerate: false,
    }
}

/// The masked sequential circuit: Bob's input triggers his random bit r,
/// he answers r immediately, and both his input and r travel to Alice,
/// whose box answers (x AND y) XOR r when they land. The mask makes both
/// marginals uniform at the price of a second transmitted bit.
pub fn run_asymmetric_box(inputs: InputPair, rng: &mut dyn RandomSource) -> TrialResult {
    let (alice, bob) = sequential_bench();
    let arrival = signal_arrival_time(bob, alice.position);
    let r = rng.bit();
    let messages = vec![
        InternalMessage::new(Side::Bob, Side::Bob, PayloadKind::Trigger, bob.time, bob.time),
        InternalMessage::new(
            Side::Bob,
            Side::Alice,
            PayloadKind::InputBit,
            bob.time,
            arrival,
        ),
        InternalMessage::new(
            Side::Bob,
            Side::Alice,
            PayloadKind::RandomBit,
            bob.time,
            arrival,
        ),
    ];
    TrialResult {
        inputs,
        a: (inputs.x & inputs.y) ^ r,
        b: r,
        a_output_time: arrival,
        b_output_time: bob.time,
        messages,
        degenerate: false,
    }
}

/// The order-symmetric circuit: whichever side measures first triggers the
/// random bit r, answers r immediately, and sends r together with its own
/// input to the other side, which answers (x AND y) XOR r at its own
/// measurement time (the data has arrived by then on any schedule with a
/// definite order). Without a definite order each side answers its own
/// local random bit and the trial is degenerate.
pub fn run_symmetric_box(schedule: &TrialSchedule, rng: &mut dyn RandomSource) -> TrialResult {
    match first_measurer(schedule) {
        FirstMeasurer::AliceFirst => symmetric_ordered(schedule, Side::Alice, rng),
        FirstMeasurer::BobFirst => symmetric_ordered(schedule, Side::Bob, rng),
        FirstMeasurer::Ambiguous => {
            // Alice's generator draws from the source first, a fixed
            // convention since no physical order exists.
            let a = rng.bit();
            let b = rng.bit();
            TrialResult {
                inputs: schedule.inputs(),
                a,
                b,
                a_output_time: schedule.alice_event().time,
                b_output_time: schedule.bob_event().time,
                messages: local_triggers(schedule),
                degenerate: true,
            }
        }
    }
}

fn symmetric_ordered(
    schedule: &TrialSchedule,
    first: Side,
    rng: &mut dyn RandomSource,
) -> TrialResult {
    let inputs = schedule.inputs();
    let second = first.other();
    let first_ev = schedule.event_for(first);
    let second_ev = schedule.event_for(second);
    let arrival = signal_arrival_time(first_ev, second_ev.position);
    let r = rng.bit();
    let and = inputs.x & inputs.y;
    let (a, b) = match first {
        Side::Alice => (r, and ^ r),
        Side::Bob => (and ^ r, r),
    };
    let messages = vec![
        InternalMessage::new(
            first,
            first,
            PayloadKind::Trigger,
            first_ev.time,
            first_ev.time,
        ),
        InternalMessage::new(first, second, PayloadKind::InputBit, first_ev.time, arrival),
        InternalMessage::new(first, second, PayloadKind::RandomBit, first_ev.time, arrival),
    ];
    TrialResult {
        inputs,
        a,
        b,
        a_output_time: schedule.alice_event().time,
        b_output_time: schedule.bob_event().time,
        messages,
        degenerate: false,
    }
}

/// The EPR-assisted circuit: a singlet pair measured in one predefined
/// shared basis replaces the transmitted random bit. The first measurer
/// answers its own outcome bit; the second reverses its own outcome bit
/// (the shared basis makes the two outcomes opposite) and adds x AND y,
/// needing only the first measurer's input as a classical message. Without
/// a definite order both sides answer their raw outcome bits, which are
/// anti-correlated but independent of the inputs.
pub fn run_epr_box(schedule: &TrialSchedule, rng: &mut dyn RandomSource) -> TrialResult {
    let basis = MeasurementBasis::new(0.0);
    match first_measurer(schedule) {
        FirstMeasurer::AliceFirst => epr_ordered(schedule, Side::Alice, basis, rng),
        FirstMeasurer::BobFirst => epr_ordered(schedule, Side::Bob, basis, rng),
        FirstMeasurer::Ambiguous => {
            let outcome = sample_singlet(basis, basis, rng);
            TrialResult {
                inputs: schedule.inputs(),
                a: outcome_bit(outcome.alice),
                b: outcome_bit(outcome.bob),
                a_output_time: schedule.alice_event().time,
                b_output_time: schedule.bob_event().time,
                messages: local_triggers(schedule),
                degenerate: true,
            }
        }
    }
}

fn epr_ordered(
    schedule: &TrialSchedule,
    first: Side,
    basis: MeasurementBasis,
    rng: &mut dyn RandomSource,
) -> TrialResult {
    let inputs = schedule.inputs();
    let second = first.other();
    let first_ev = schedule.event_for(first);
    let second_ev = schedule.event_for(second);
    let arrival = signal_arrival_time(first_ev, second_ev.position);
    // The sampler's first slot belongs to whichever side measures first.
    let outcome = sample_singlet(basis, basis, rng);
    let r_first = outcome_bit(outcome.alice);
    let r_second = outcome_bit(outcome.bob);
    let second_out = (inputs.x & inputs.y) ^ !r_second;
    let (a, b) = match first {
        Side::Alice => (r_first, second_out),
        Side::Bob => (second_out, r_first),
    };
    let messages = vec![
        InternalMessage::new(
            first,
            first,
            PayloadKind::Trigger,
            first_ev.time,
            first_ev.time,
        ),
        InternalMessage::new(first, second, PayloadKind::InputBit, first_ev.time, arrival),
        InternalMessage::new(
            second,
            second,
            PayloadKind::Trigger,
            second_ev.time,
            second_ev.time,
        ),
    ];
    TrialResult {
        inputs,
        a,
        b,
        a_output_time: schedule.alice_event().time,
        b_output_time: schedule.bob_event().time,
        messages,
        degenerate: false,
    }
}

fn outcome_bit(outcome: i8) -> Bit {
    outcome_to_bit(outcome).expect("singlet sampler yields +1 or -1")
}

/// Trigger pulses for a trial where each side only starts its own device,
/// ordered by emission time with Alice first on ties.
fn local_triggers(schedule: &TrialSchedule) -> Vec<InternalMessage> {
    let ta = schedule.alice_event().time;
    let tb = schedule.bob_event().time;
    let mut messages = vec![
        InternalMessage::new(Side::Alice, Side::Alice, PayloadKind::Trigger, ta, ta),
        InternalMessage::new(Side::Bob, Side::Bob, PayloadKind::Trigger, tb, tb),
    ];
    messages.sort_by(|p, q| p.emit_time.total_cmp(&q.emit_time));
    messages
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{ScriptedSource, SeededSource};

    fn pair(x: u8, y: u8) -> InputPair {
        InputPair::new(Bit::new(x).unwrap(), Bit::new(y).unwrap())
    }

    fn schedule(alice: (f64, f64), bob: (f64, f64), inputs: InputPair) -> TrialSchedule {
        TrialSchedule::new(
            SpacetimeEvent::new(alice.0, alice.1),
            SpacetimeEvent::new(bob.0, bob.1),
            inputs,
        )
        .unwrap()
    }

    fn alice_first(inputs: InputPair) -> TrialSchedule {
        schedule((0.0, 0.0), (10.0, 5.0), inputs)
    }

    fn bob_first(inputs: InputPair) -> TrialSchedule {
        schedule((10.0, 0.0), (0.0, 5.0), inputs)
    }

    fn spacelike(inputs: InputPair) -> TrialSchedule {
        schedule((0.0, 0.0), (0.0, 5.0), inputs)
    }

    #[test]
    fn signaling_box_computes_and_without_consuming_randomness() {
        let mut rng = ScriptedSource::default();
        let trial = run_signaling_box(pair(1, 1), &mut rng);
        assert_eq!(trial.a, Bit::ONE);
        assert_eq!(trial.b, Bit::ZERO);
        assert_eq!(rng.draws(), 0);
        assert!(trial.pr_satisfied());
        assert!(!trial.degenerate);
    }

    #[test]
    fn signaling_box_log_and_timing() {
        let mut rng = ScriptedSource::default();
        let trial = run_signaling_box(pair(0, 1), &mut rng);
        assert_eq!(trial.messages.len(), 2);
        assert_eq!(trial.messages[0].payload_kind, PayloadKind::Trigger);
        assert_eq!(trial.messages[1].payload_kind, PayloadKind::InputBit);
        assert_eq!(trial.messages[1].from, Side::Bob);
        assert_eq!(trial.messages[1].to, Side::Alice);
        assert_eq!(trial.messages[1].arrival_time, CANONICAL_DISTANCE);
        // Bob answers on the spot; Alice cannot answer before the message.
        assert_eq!(trial.b_output_time, 0.0);
        assert_eq!(trial.a_output_time, CANONICAL_DISTANCE);
        assert_eq!(trial.classical_bits(), 1);
        assert_eq!(trial.classical_bits_between(Side::Bob, Side::Alice), 1);
    }

    #[test]
    fn signaling_box_exhaustive_truth_table() {
        for inputs in InputPair::all() {
            let mut rng = ScriptedSource::default();
            let trial = run_signaling_box(inputs, &mut rng);
            assert_eq!(trial.a, inputs.x & inputs.y);
            assert_eq!(trial.b, Bit::ZERO);
            assert!(trial.pr_satisfied());
        }
    }

    #[test]
    fn asymmetric_box_masks_both_outputs_with_r() {
        let mut rng = ScriptedSource::from_bits([0]);
        let trial = run_asymmetric_box(pair(1, 1), &mut rng);
        assert_eq!((trial.a, trial.b), (Bit::ONE, Bit::ZERO));

        let mut rng = ScriptedSource::from_bits([1]);
        let trial = run_asymmetric_box(pair(1, 1), &mut rng);
        assert_eq!((trial.a, trial.b), (Bit::ZERO, Bit::ONE));

        let mut rng = ScriptedSource::from_bits([1]);
        let trial = run_asymmetric_box(pair(0, 1), &mut rng);
        assert_eq!((trial.a, trial.b), (Bit::ONE, Bit::ONE));
    }

    #[test]
    fn asymmetric_box_ships_two_bits_bob_to_alice() {
        let mut rng = ScriptedSource::from_bits([0]);
        let trial = run_asymmetric_box(pair(0, 0), &mut rng);
        assert_eq!(trial.classical_bits(), 2);
        assert_eq!(trial.classical_bits_between(Side::Bob, Side::Alice), 2);
        assert_eq!(trial.classical_bits_between(Side::Alice, Side::Bob), 0);
        assert_eq!(trial.trigger_count(), 1);
        assert_eq!(trial.b_output_time, 0.0);
        assert_eq!(trial.a_output_time, CANONICAL_DISTANCE);
        assert!(rng.exhausted());
    }

    #[test]
    fn asymmetric_box_exhaustive_truth_table() {
        for inputs in InputPair::all() {
            for r in [0u8, 1] {
                let mut rng = ScriptedSource::from_bits([r]);
                let trial = run_asymmetric_box(inputs, &mut rng);
                assert_eq!(trial.b, Bit::new(r).unwrap());
                assert_eq!(trial.a, (inputs.x & inputs.y) ^ Bit::new(r).unwrap());
                assert!(trial.pr_satisfied(), "inputs {inputs} r={r}");
            }
        }
    }

    #[test]
    fn symmetric_box_alice_first_example() {
        let mut rng = ScriptedSource::from_bits([1]);
        let trial = run_symmetric_box(&alice_first(pair(1, 1)), &mut rng);
        // Alice answers her random bit, Bob the corrected AND.
        assert_eq!((trial.a, trial.b), (Bit::ONE, Bit::ZERO));
        assert_eq!(trial.a_output_time, 0.0);
        assert_eq!(trial.b_output_time, 10.0);
        assert!(!trial.degenerate);
        assert!(trial.pr_satisfied());
        let kinds: Vec<PayloadKind> =
            trial.messages.iter().map(|m| m.payload_kind).collect();
        assert_eq!(
            kinds,
            [
                PayloadKind::Trigger,
                PayloadKind::InputBit,
                PayloadKind::RandomBit
            ]
        );
        assert_eq!(trial.classical_bits_between(Side::Alice, Side::Bob), 2);
        assert_eq!(trial.classical_bits_between(Side::Bob, Side::Alice), 0);
        // The payload messages travel at light speed over distance 5.
        assert_eq!(trial.messages[1].arrival_time, 5.0);
    }

    #[test]
    fn symmetric_box_bob_first_mirrors_roles() {
        let mut rng = ScriptedSource::from_bits([1]);
        let trial = run_symmetric_box(&bob_first(pair(1, 1)), &mut rng);
        assert_eq!((trial.a, trial.b), (Bit::ZERO, Bit::ONE));
        assert_eq!(trial.classical_bits_between(Side::Bob, Side::Alice), 2);
        assert!(trial.pr_satisfied());
    }

    #[test]
    fn symmetric_box_exhaustive_truth_table_on_ordered_schedules() {
        for inputs in InputPair::all() {
            for r in [0u8, 1] {
                for sched in [alice_first(inputs), bob_first(inputs)] {
                    let mut rng = ScriptedSource::from_bits([r]);
                    let trial = run_symmetric_box(&sched, &mut rng);
                    assert!(trial.pr_satisfied(), "inputs {inputs} r={r}");
                    assert!(rng.exhausted());
                    assert_eq!(trial.classical_bits(), 2);
                }
            }
        }
    }

    #[test]
    fn symmetric_box_without_order_goes_local_and_degenerate() {
        let mut rng = ScriptedSource::from_bits([1, 0]);
        let trial = run_symmetric_box(&spacelike(pair(0, 0)), &mut rng);
        assert_eq!((trial.a, trial.b), (Bit::ONE, Bit::ZERO));
        assert!(trial.degenerate);
        // Outputs 1 and 0 violate the condition for x = y = 0.
        assert!(!trial.pr_satisfied());
        assert_eq!(trial.classical_bits(), 0);
        assert_eq!(trial.trigger_count(), 2);
        assert_eq!(trial.a_output_time, 0.0);
        assert_eq!(trial.b_output_time, 0.0);
    }

    #[test]
    fn symmetric_box_outputs_fire_at_own_measurement_times() {
        let mut rng = SeededSource::from_seed(1);
        for sched in [
            alice_first(pair(1, 0)),
            bob_first(pair(1, 0)),
            spacelike(pair(1, 0)),
            // Lightlike boundary: Alice's signal lands exactly at Bob's
            // measurement, so the order is definite.
            schedule((0.0, 0.0), (5.0, 5.0), pair(1, 0)),
        ] {
            let trial = run_symmetric_box(&sched, &mut rng);
            assert_eq!(trial.a_output_time, sched.alice_event().time);
            assert_eq!(trial.b_output_time, sched.bob_event().time);
        }
    }

    #[test]
    fn symmetric_box_lightlike_boundary_is_ordered() {
        let mut rng = ScriptedSource::from_bits([0]);
        let trial = run_symmetric_box(&schedule((0.0, 0.0), (5.0, 5.0), pair(1, 1)), &mut rng);
        assert!(!trial.degenerate);
        assert_eq!((trial.a, trial.b), (Bit::ZERO, Bit::ONE));
        // The forwarded data lands exactly when Bob measures.
        assert_eq!(trial.messages[1].arrival_time, 5.0);
        assert_eq!(trial.b_output_time, 5.0);
    }

    #[test]
    fn epr_box_alice_first_example() {
        // Outcome +1 for the first measurer; the unit draw picks the
        // opposite outcome for the partner (equal bases force it anyway).
        let mut rng = ScriptedSource::new([Bit::ONE], [0.9]);
        let trial = run_epr_box(&alice_first(pair(1, 1)), &mut rng);
        assert_eq!((trial.a, trial.b), (Bit::ONE, Bit::ZERO));
        assert!(trial.pr_satisfied());
        assert!(!trial.degenerate);
        assert_eq!(rng.draws(), 2);
        // One classical bit: the first measurer's input.
        assert_eq!(trial.classical_bits(), 1);
        assert_eq!(trial.classical_bits_between(Side::Alice, Side::Bob), 1);
        assert_eq!(trial.trigger_count(), 2);
        let kinds: Vec<PayloadKind> =
            trial.messages.iter().map(|m| m.payload_kind).collect();
        assert_eq!(
            kinds,
            [
                PayloadKind::Trigger,
                PayloadKind::InputBit,
                PayloadKind::Trigger
            ]
        );
    }

    #[test]
    fn epr_box_second_side_reverses_its_own_outcome() {
        // First measurer (Bob) sees -1, so Alice's half gives +1, bit 1;
        // she reverses it to 0 and adds x AND y.
        let mut rng = ScriptedSource::new([Bit::ZERO], [0.9]);
        let trial = run_epr_box(&bob_first(pair(1, 1)), &mut rng);
        assert_eq!(trial.b, Bit::ZERO);
        assert_eq!(trial.a, Bit::ONE);
        assert!(trial.pr_satisfied());
        assert_eq!(trial.classical_bits_between(Side::Bob, Side::Alice), 1);
    }

    #[test]
    fn epr_box_exhaustive_truth_table_on_ordered_schedules() {
        for inputs in InputPair::all() {
            for first_outcome in [0u8, 1] {
                for sched in [alice_first(inputs), bob_first(inputs)] {
                    let mut rng =
                        ScriptedSource::new([Bit::new(first_outcome).unwrap()], [0.9]);
                    let trial = run_epr_box(&sched, &mut rng);
                    assert!(
                        trial.pr_satisfied(),
                        "inputs {inputs} outcome {first_outcome}"
                    );
                    assert_eq!(trial.classical_bits(), 1);
                    assert!(rng.exhausted());
                }
            }
        }
    }

    #[test]
    fn epr_box_without_order_emits_raw_anticorrelated_outcomes() {
        let mut rng = SeededSource::from_seed(8);
        for _ in 0..200 {
            let trial = run_epr_box(&spacelike(pair(0, 0)), &mut rng);
            assert!(trial.degenerate);
            assert_eq!(trial.a, !trial.b);
            assert_eq!(trial.classical_bits(), 0);
            assert_eq!(trial.trigger_count(), 2);
            // Equal outputs would be needed for x = y = 0.
            assert!(!trial.pr_satisfied());
        }
        // For x = y = 1 the raw anti-correlation happens to satisfy the
        // condition on every trial.
        let trial = run_epr_box(&spacelike(pair(1, 1)), &mut rng);
        assert!(trial.pr_satisfied());
    }

    #[test]
    fn ordered_trials_swap_exactly_under_mirroring() {
        // The first measurer is the same physical event either way, so
        // replaying the same draws on the mirrored schedule must swap the
        // outputs. Degenerate trials are excluded: their draw order is a
        // convention, not geometry.
        for inputs in InputPair::all() {
            for seed in 0..20 {
                for sched in [alice_first(inputs), bob_first(inputs)] {
                    for variant in [BoxVariant::SymmetricImmediate, BoxVariant::EprAssisted] {
                        let mut rng = SeededSource::from_seed(seed);
                        let trial = variant.run_trial(&sched, &mut rng);
                        let mut rng = SeededSource::from_seed(seed);
                        let mirrored = variant.run_trial(&sched.mirrored(), &mut rng);
                        assert_eq!(trial.a, mirrored.b, "{variant} {inputs} seed {seed}");
                        assert_eq!(trial.b, mirrored.a);
                        assert_eq!(trial.a_output_time, mirrored.b_output_time);
                        assert_eq!(trial.b_output_time, mirrored.a_output_time);
                    }
                }
            }
        }
    }

    #[test]
    fn message_logs_are_emission_ordered_with_causal_arrivals() {
        let mut rng = SeededSource::from_seed(3);
        for inputs in InputPair::all() {
            for sched in [
                alice_first(inputs),
                bob_first(inputs),
                spacelike(inputs),
                schedule((2.0, -1.0), (9.5, 3.0), inputs),
            ] {
                for variant in BoxVariant::ALL {
                    let trial = variant.run_trial(&sched, &mut rng);
                    for window in trial.messages.windows(2) {
                        assert!(window[0].emit_time <= window[1].emit_time);
                    }
                    for msg in &trial.messages {
                        assert!(msg.arrival_time >= msg.emit_time);
                    }
                }
            }
        }
    }

    #[test]
    fn variant_names_round_trip() {
        for variant in BoxVariant::ALL {
            let name = variant.to_string();
            assert_eq!(name.parse::<BoxVariant>().unwrap(), variant);
            let json = serde_json::to_string(&variant).unwrap();
            assert_eq!(json, format!("\"{name}\""));
            let back: BoxVariant = serde_json::from_str(&json).unwrap();
            assert_eq!(back, variant);
        }
        assert!("einstein".parse::<BoxVariant>().is_err());
        assert!(serde_json::from_str::<BoxVariant>("\"einstein\"").is_err());
    }

    #[test]
    fn same_seed_reproduces_trials() {
        for variant in BoxVariant::ALL {
            let sched = alice_first(pair(1, 0));
            let mut rng1 = SeededSource::from_seed(77);
            let mut rng2 = SeededSource::from_seed(77);
            assert_eq!(
                variant.run_trial(&sched, &mut rng1),
                variant.run_trial(&sched, &mut rng2)
            );
        }
    }
}
