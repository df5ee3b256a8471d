//! Acceptance gate: the eight headline claims about the four circuits,
//! each re-derived end to end through the public API and printed as one
//! verdict line. Tolerances are pinned here, next to the assertions they
//! guard, so a change in behavior has to confront them explicitly.

use prbox::quantum::standard_chsh_angles;
use prbox::{
    pr_compliance, run_asymmetric_box, run_epr_box, run_experiment, run_experiment_with_workers,
    run_signaling_box, run_symmetric_box, sample_chsh, sample_singlet, Bit, BoxVariant,
    ExperimentConfig, InputPair, InputStrategy, MeasurementBasis, RandomSource, Report,
    ScheduleStrategy, ScriptedSource, SeededSource, SpacetimeEvent, TrialSchedule,
    CANONICAL_DISTANCE,
};

/// Significance multiplier for the no-signaling deltas.
const NONSIGNALING_Z: f64 = 4.0;
/// Plug-in mutual information allowed on a channel that carries nothing.
const MI_LEAK_BOUND: f64 = 0.001;
/// Five standard deviations of a fair-coin mean over 100k trials.
const DEGENERATE_COIN_TOLERANCE: f64 = 0.008;
/// Sigmas allowed on sampled means of +/-1 products.
const SAMPLER_MEAN_SIGMAS: f64 = 5.0;
/// Allowed distance from the quantum bound for the sampled CHSH value.
const CHSH_QUANTUM_TOLERANCE: f64 = 0.02;

fn configured(
    variant: BoxVariant,
    trials: u64,
    seed: u64,
    inputs: InputStrategy,
    schedule: ScheduleStrategy,
) -> Report {
    let mut config = ExperimentConfig::new(variant);
    config.trials = trials;
    config.seed = seed;
    config.inputs = inputs;
    config.schedule = schedule;
    run_experiment(&config).expect("acceptance configs are valid")
}

fn ordered_schedule(alice_first: bool, inputs: InputPair) -> TrialSchedule {
    let d = CANONICAL_DISTANCE;
    let (ta, tb) = if alice_first { (0.0, 2.0 * d) } else { (2.0 * d, 0.0) };
    TrialSchedule::new(
        SpacetimeEvent::new(ta, 0.0),
        SpacetimeEvent::new(tb, d),
        inputs,
    )
    .expect("distinct positions")
}

/// Criterion 1: every circuit satisfies the PR condition on every ordered
/// case there is: all joint inputs, all random-bit values, both
/// measurement orders. 44 cases, compliance exactly 1.
#[test]
fn criterion_1_exhaustive_pr_compliance() {
    let mut results = Vec::new();
    for inputs in InputPair::all() {
        let mut rng = ScriptedSource::default();
        results.push(run_signaling_box(inputs, &mut rng));
        assert_eq!(rng.draws(), 0, "the signaling circuit consumes no randomness");
        for r in [0u8, 1] {
            let mut rng = ScriptedSource::from_bits([r]);
            results.push(run_asymmetric_box(inputs, &mut rng));
            assert!(rng.exhausted());
        }
        for alice_first in [true, false] {
            let schedule = ordered_schedule(alice_first, inputs);
            for r in [0u8, 1] {
                let mut rng = ScriptedSource::from_bits([r]);
                results.push(run_symmetric_box(&schedule, &mut rng));
                let mut rng = ScriptedSource::new([Bit::new(r).unwrap()], [0.5]);
                results.push(run_epr_box(&schedule, &mut rng));
            }
        }
    }
    assert_eq!(results.len(), 44);
    assert!(results.iter().all(|t| !t.degenerate));
    let compliance = pr_compliance(&results).unwrap();
    assert_eq!(compliance, 1.0);
    println!("acceptance 1 (pr-exhaustive): PASS - 44/44 ordered cases satisfy a XOR b = x AND y");
}

/// Criterion 2: the order-symmetric circuits reach the algebraic maximum
/// CHSH = 4 exactly on timelike schedules, both orders, 100k uniform
/// trials each.
#[test]
fn criterion_2_chsh_reaches_four_exactly() {
    for variant in [BoxVariant::SymmetricImmediate, BoxVariant::EprAssisted] {
        for schedule in [
            ScheduleStrategy::TimelikeAliceFirst,
            ScheduleStrategy::TimelikeBobFirst,
        ] {
            let report = configured(variant, 100_000, 11, InputStrategy::UniformRandom, schedule);
            assert_eq!(report.pr_compliance, 1.0, "{variant} on {schedule}");
            assert_eq!(report.chsh, Some(4.0), "{variant} on {schedule}");
            assert_eq!(report.degenerate_trials, 0);
        }
    }
    println!("acceptance 2 (chsh-maximal): PASS - symmetric and epr score CHSH = 4 exactly on both timelike orders");
}

/// Criterion 3: with 100k trials per joint input, the masked circuits keep
/// both no-signaling deltas under z * sqrt(0.5 / N); the plainly signaling
/// circuit maxes out delta_alice at exactly 1.
#[test]
fn criterion_3_nonsignaling_deltas() {
    let trials = 400_000;
    let expected_threshold = NONSIGNALING_Z * (0.5f64 / 100_000.0).sqrt();
    for (variant, schedule) in [
        (
            BoxVariant::AsymmetricNonSignaling,
            ScheduleStrategy::TimelikeBobFirst,
        ),
        (
            BoxVariant::SymmetricImmediate,
            ScheduleStrategy::TimelikeAliceFirst,
        ),
        (BoxVariant::EprAssisted, ScheduleStrategy::TimelikeAliceFirst),
    ] {
        let report = configured(variant, trials, 23, InputStrategy::Sweep, schedule);
        let ns = report.nonsignaling.expect("sweep covers every input pair");
        assert_eq!(ns.threshold, expected_threshold);
        assert!(
            ns.passes && ns.delta_alice <= ns.threshold && ns.delta_bob <= ns.threshold,
            "{variant}: {ns:?}"
        );
    }
    let report = configured(
        BoxVariant::Signaling,
        trials,
        23,
        InputStrategy::Sweep,
        ScheduleStrategy::TimelikeBobFirst,
    );
    let ns = report.nonsignaling.expect("sweep covers every input pair");
    assert_eq!(ns.delta_alice, 1.0);
    assert!(!ns.passes);
    println!(
        "acceptance 3 (non-signaling): PASS - masked deltas under {expected_threshold:.6}, signaling delta_alice = 1"
    );
}

/// Criterion 4: with Alice's input pinned to 1 and Bob's alternating over
/// 10k trials, the signaling circuit gives Alice exactly one bit of
/// information about Bob's input; the masked circuits leak at most 0.001.
#[test]
fn criterion_4_channel_information() {
    let pinned = InputStrategy::Fixed {
        x: Some(Bit::ONE),
        y: None,
    };
    for variant in BoxVariant::ALL {
        let report = configured(
            variant,
            10_000,
            37,
            pinned,
            ExperimentConfig::canonical_schedule(variant),
        );
        let mi = report.mutual_information.bob_input_to_alice_output;
        if variant == BoxVariant::Signaling {
            assert_eq!(mi, 1.0, "perfect copy must measure exactly one bit");
        } else {
            assert!(
                mi.abs() <= MI_LEAK_BOUND,
                "{variant} leaks {mi} > {MI_LEAK_BOUND}"
            );
        }
    }
    println!(
        "acceptance 4 (channel-information): PASS - I(y; a) is exactly 1 bit for signaling, <= {MI_LEAK_BOUND} for the rest"
    );
}

/// Criterion 5: internal communication per ordered trial is exactly 1 bit
/// (signaling), 2 (asymmetric), 2 (symmetric), 1 (epr), flowing in one
/// direction only; triggers are logged but cost nothing.
#[test]
fn criterion_5_bit_accounting() {
    let cases = [
        (BoxVariant::Signaling, 1.0),
        (BoxVariant::AsymmetricNonSignaling, 2.0),
        (BoxVariant::SymmetricImmediate, 2.0),
        (BoxVariant::EprAssisted, 1.0),
    ];
    for (variant, mean_bits) in cases {
        let report = configured(
            variant,
            10_000,
            41,
            InputStrategy::UniformRandom,
            ExperimentConfig::canonical_schedule(variant),
        );
        let acc = &report.bit_accounting;
        assert_eq!(acc.mean_total, mean_bits, "{variant}");
        // The canonical schedules move bits one way only: to Alice for the
        // sequential circuits, to Bob when Alice measures first.
        if variant.uses_schedule() {
            assert_eq!(acc.bob_to_alice_bits, 0, "{variant}");
            assert_eq!(acc.mean_alice_to_bob, mean_bits, "{variant}");
        } else {
            assert_eq!(acc.alice_to_bob_bits, 0, "{variant}");
            assert_eq!(acc.mean_bob_to_alice, mean_bits, "{variant}");
        }
        assert!(acc.trigger_count >= report.trials);
    }
    println!("acceptance 5 (bit-accounting): PASS - mean classical bits per trial exactly 1, 2, 2, 1");
}

/// Criterion 6: on spacelike schedules the symmetric circuit decays to
/// independent coins (compliance near 1/2) while the epr circuit's raw
/// anti-correlation pins compliance to exactly 1 for x = y = 1 and
/// exactly 0 for x = y = 0; no classical bits move in either case.
#[test]
fn criterion_6_degenerate_behavior() {
    let report = configured(
        BoxVariant::SymmetricImmediate,
        100_000,
        43,
        InputStrategy::UniformRandom,
        ScheduleStrategy::Spacelike,
    );
    assert_eq!(report.degenerate_fraction, 1.0);
    assert_eq!(report.bit_accounting.total_classical_bits, 0);
    assert!(
        (report.pr_compliance - 0.5).abs() <= DEGENERATE_COIN_TOLERANCE,
        "coin compliance {} strays from 1/2",
        report.pr_compliance
    );

    for (x, y, expected) in [(Bit::ONE, Bit::ONE, 1.0), (Bit::ZERO, Bit::ZERO, 0.0)] {
        let report = configured(
            BoxVariant::EprAssisted,
            100_000,
            43,
            InputStrategy::Fixed {
                x: Some(x),
                y: Some(y),
            },
            ScheduleStrategy::Spacelike,
        );
        assert_eq!(report.degenerate_fraction, 1.0);
        assert_eq!(report.bit_accounting.total_classical_bits, 0);
        assert_eq!(
            report.pr_compliance, expected,
            "raw anti-correlation at x={x}, y={y}"
        );
    }
    println!(
        "acceptance 6 (degenerate-trials): PASS - spacelike symmetric near 1/2, epr exactly 1 and 0, zero bits moved"
    );
}

/// Criterion 7: the singlet sampler obeys E(product) = -cos(difference):
/// exact anti-correlation at equal bases, -1/2 at pi/3, and a sampled
/// CHSH within 0.02 of magnitude 2 * sqrt(2) at the standard angles.
#[test]
fn criterion_7_singlet_sampler_law() {
    let n = 100_000u64;
    let basis = MeasurementBasis::new(0.0);
    let mut rng = SeededSource::from_seed(53);
    for _ in 0..n {
        let o = sample_singlet(basis, basis, &mut rng);
        assert_eq!(o.alice, -o.bob, "equal bases must anti-correlate exactly");
    }

    let delta = std::f64::consts::FRAC_PI_3;
    let mut sum = 0i64;
    for _ in 0..n {
        let o = sample_singlet(MeasurementBasis::new(delta), basis, &mut rng);
        sum += (o.alice * o.bob) as i64;
    }
    let mean = sum as f64 / n as f64;
    let tol = SAMPLER_MEAN_SIGMAS / (n as f64).sqrt();
    assert!(
        (mean - (-0.5)).abs() <= tol,
        "pi/3 product mean {mean} not within {tol} of -0.5"
    );

    let (alice_angles, bob_angles) = standard_chsh_angles();
    let est = sample_chsh(alice_angles, bob_angles, 200_000, 53);
    let tsirelson = 2.0 * std::f64::consts::SQRT_2;
    assert!(
        (est.value.abs() - tsirelson).abs() <= CHSH_QUANTUM_TOLERANCE,
        "sampled CHSH {} not within {CHSH_QUANTUM_TOLERANCE} of magnitude {tsirelson}",
        est.value
    );
    println!(
        "acceptance 7 (singlet-sampler): PASS - exact anti-correlation, pi/3 mean {mean:.4}, CHSH {:.4}",
        est.value
    );
}

/// Criterion 8: identical config and seed serialize to byte-identical
/// JSON reports on 1, 4, and 8 workers, including order-sensitive content
/// like the trial-index-dependent mixed schedule.
#[test]
fn criterion_8_report_determinism_across_workers() {
    let mut config = ExperimentConfig::new(BoxVariant::SymmetricImmediate);
    config.trials = 20_000;
    config.seed = 59;
    config.schedule = ScheduleStrategy::RandomMixed;
    let baseline = run_experiment_with_workers(&config, 1)
        .expect("valid config")
        .to_json();
    for workers in [4, 8] {
        let json = run_experiment_with_workers(&config, workers)
            .expect("valid config")
            .to_json();
        assert_eq!(json, baseline, "workers = {workers} diverged");
    }
    println!(
        "acceptance 8 (report-determinism): PASS - {} byte report identical on 1, 4, and 8 workers",
        baseline.len()
    );
}
