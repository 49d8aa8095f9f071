//! WER against a brute-force edit-distance oracle, top-k accuracy against a
//! full-sort oracle, and the sweep runner's structural guarantees.

mod common;

use common::{edit_distance_brute, random_gloss_seq, seeded, spot_sweep_fixture};
use proptest::prelude::*;
use rand::RngExt;
use signspot::decoder::BeamHypothesis;
use signspot::dictionary::{SimilarityDistribution, SourceTag};
use signspot::eval::{default_grid, oracle_wer, run_sweep, topk_accuracy, wer, SweepParameter};
use signspot::fusion::FusionStrategy;
use signspot::pipeline::{spot_segments, SpotParams, VariantDicts};

const VOCAB: [&str; 10] = [
    "RAIN", "SUN", "WALK", "TRAIN", "HOME", "LOVE", "DAY", "NIGHT", "WE", "GO",
];

#[test]
fn wer_matches_brute_force_on_random_pairs() {
    let mut rng = seeded(0xE41);
    for case in 0..1000 {
        let reference = random_gloss_seq(&mut rng, &VOCAB, 1, 7);
        let hypothesis = random_gloss_seq(&mut rng, &VOCAB, 0, 7);
        let expected = edit_distance_brute(&reference, &hypothesis) as f64 / reference.len() as f64;
        let got = wer(&reference, &hypothesis).unwrap();
        assert_eq!(got, expected, "case {case}");
    }
}

#[test]
fn topk_accuracy_matches_full_sort_oracle() {
    let mut rng = seeded(0xACC);
    let v = 40;
    let dists: Vec<SimilarityDistribution> = (0..100)
        .map(|_| {
            let scores: Vec<f64> = (0..v).map(|_| rng.random_range(-1.0..1.0)).collect();
            SimilarityDistribution::new(scores, SourceTag::Synth).unwrap()
        })
        .collect();
    let targets: Vec<usize> = (0..100).map(|_| rng.random_range(0..v)).collect();
    for k in [1, 3, 5, 10] {
        let got = topk_accuracy(&dists, &targets, k).unwrap();
        let mut hits = 0;
        for (dist, &target) in dists.iter().zip(&targets) {
            let mut order: Vec<usize> = (0..v).collect();
            order.sort_by(|&a, &b| {
                dist.scores()[b]
                    .partial_cmp(&dist.scores()[a])
                    .unwrap()
                    .then(a.cmp(&b))
            });
            if order[..k].contains(&target) {
                hits += 1;
            }
        }
        assert_eq!(got, hits as f64 / 100.0, "k = {k}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracle_wer_nonincreasing_in_n(seed in 0u64..10_000) {
        let mut rng = seeded(seed);
        let reference = random_gloss_seq(&mut rng, &VOCAB, 1, 6);
        let hypotheses: Vec<BeamHypothesis> = (0..5)
            .map(|i| BeamHypothesis {
                glosses: random_gloss_seq(&mut rng, &VOCAB, 0, 6),
                score: -(i as f64),
                per_step: vec![],
            })
            .collect();
        let mut prev = f64::INFINITY;
        for n in 1..=5 {
            let w = oracle_wer(&hypotheses, &reference, n).unwrap();
            prop_assert!(w <= prev);
            prev = w;
        }
        // n = 5 equals the explicit minimum over all five.
        let explicit = hypotheses
            .iter()
            .map(|h| wer(&reference, &h.glosses).unwrap())
            .fold(f64::INFINITY, f64::min);
        prop_assert_eq!(oracle_wer(&hypotheses, &reference, 5).unwrap(), explicit);
    }

    #[test]
    fn topk_accuracy_nondecreasing_in_k(seed in 0u64..10_000) {
        let mut rng = seeded(seed);
        let v = 12;
        let dists: Vec<SimilarityDistribution> = (0..20)
            .map(|_| {
                let scores: Vec<f64> = (0..v).map(|_| rng.random_range(-1.0..1.0)).collect();
                SimilarityDistribution::new(scores, SourceTag::Synth).unwrap()
            })
            .collect();
        let targets: Vec<usize> = (0..20).map(|_| rng.random_range(0..v)).collect();
        let mut prev = 0.0;
        for k in 1..=v {
            let acc = topk_accuracy(&dists, &targets, k).unwrap();
            prop_assert!(acc >= prev);
            prev = acc;
        }
        prop_assert_eq!(prev, 1.0);
    }
}

// ── Sweep runner ─────────────────────────────────────────────────────────

#[test]
fn default_sweep_emits_eleven_ascending_rows() {
    let dataset = spot_sweep_fixture(false);
    let grid = run_sweep(
        &SpotParams::default(),
        SweepParameter::AlphaLate,
        &default_grid(),
        &dataset,
    )
    .unwrap();
    assert_eq!(grid.rows.len(), 11);
    for pair in grid.rows.windows(2) {
        assert!(pair[0].value < pair[1].value);
    }
    assert_eq!(grid.parameter_name, "alpha_late");
    let text = grid.render_text();
    assert!(text.contains("Top-5"), "{text}");
}

#[test]
fn sweep_endpoints_equal_single_strategy_runs() {
    let dataset = spot_sweep_fixture(false);
    let base = SpotParams::default();
    let grid = run_sweep(&base, SweepParameter::AlphaLate, &default_grid(), &dataset).unwrap();

    let single = |strategy: FusionStrategy| {
        let params = SpotParams { strategy, ..base };
        let variants = VariantDicts::for_strategy(&dataset.dictionary, strategy, false).unwrap();
        let dists = spot_segments(&dataset.segments, &variants, &params).unwrap();
        (
            topk_accuracy(&dists, &dataset.targets, 1).unwrap(),
            topk_accuracy(&dists, &dataset.targets, 5).unwrap(),
        )
    };
    let (i3d_top1, i3d_top5) = single(FusionStrategy::I3dOnly);
    let (rh_top1, rh_top5) = single(FusionStrategy::RhOnly);
    let last = grid.rows.last().unwrap();
    assert_eq!(last.top1, i3d_top1);
    assert_eq!(last.top5, i3d_top5);
    let first = &grid.rows[0];
    assert_eq!(first.top1, rh_top1);
    assert_eq!(first.top5, rh_top5);
}

#[test]
fn sweep_over_identical_inputs_is_flat() {
    let dataset = spot_sweep_fixture(true);
    // RH features equal I3D features, so late fusion is invariant in alpha.
    let base = SpotParams {
        alpha_s_rh: 0.3, // same kernel weighting as the I3D side
        ..SpotParams::default()
    };
    let grid = run_sweep(&base, SweepParameter::AlphaLate, &default_grid(), &dataset).unwrap();
    let first = &grid.rows[0];
    for row in &grid.rows {
        assert_eq!(row.top1, first.top1);
        assert_eq!(row.top5, first.top5);
    }
}
