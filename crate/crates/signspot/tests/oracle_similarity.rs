//! DTW against an exhaustive path-enumeration oracle, plus kernel properties.

mod common;

use common::{dtw_brute_force, random_pair, seeded};
use proptest::prelude::*;
use rand::RngExt;
use signspot::features::{FeatureSequence, Modality, PooledVector};
use signspot::similarity::{combined_score, cosine_similarity, dtw_distance, mean_pool};

#[test]
fn dtw_matches_path_enumeration_on_random_pairs() {
    let mut rng = seeded(0xD7A1);
    for case in 0..100 {
        let (a, b) = random_pair(&mut rng, 6, 3);
        let fast = dtw_distance(&a, &b).unwrap();
        let brute = dtw_brute_force(&a, &b);
        assert!(
            (fast - brute).abs() < 1e-9,
            "case {case}: dp {fast} vs enumeration {brute}"
        );
    }
}

#[test]
fn mean_pool_matches_summation_oracle() {
    let mut rng = seeded(0x9001);
    for _ in 0..50 {
        let (a, _) = random_pair(&mut rng, 8, 5);
        let pooled = mean_pool(&a);
        for d in 0..a.dim() {
            let sum: f64 = a.frames().iter().map(|f| f[d]).sum();
            assert!((pooled.values()[d] - sum / a.len() as f64).abs() < 1e-12);
        }
    }
}

#[test]
fn combined_score_monotone_in_both_kernels() {
    // Fixed pooled behavior, growing DTW cost: score must not increase.
    let u = FeatureSequence::new(Modality::Synth, vec![vec![1.0, 0.0]]).unwrap();
    let mut prev = f64::INFINITY;
    for shift in 0..5 {
        // Same mean (cosine term constant), frames spread further apart.
        let d = shift as f64;
        let far = FeatureSequence::new(
            Modality::Synth,
            vec![vec![1.0 + d, 0.0], vec![1.0 - d, 0.0]],
        )
        .unwrap();
        let score = combined_score(&u, &far, 0.5).unwrap();
        assert!(score <= prev + 1e-12, "shift {shift}");
        prev = score;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dtw_symmetric_and_zero_on_self(seed in 0u64..10_000) {
        let mut rng = seeded(seed);
        let (a, b) = random_pair(&mut rng, 5, 3);
        let ab = dtw_distance(&a, &b).unwrap();
        let ba = dtw_distance(&b, &a).unwrap();
        prop_assert_eq!(ab, ba);
        prop_assert!(ab >= 0.0);
        prop_assert_eq!(dtw_distance(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn cosine_stays_in_unit_interval(seed in 0u64..10_000) {
        let mut rng = seeded(seed);
        let dim = rng.random_range(1..6usize);
        let u: Vec<f64> = (0..dim).map(|_| rng.random_range(-3.0..3.0)).collect();
        let v: Vec<f64> = (0..dim).map(|_| rng.random_range(-3.0..3.0)).collect();
        prop_assume!(u.iter().any(|x| *x != 0.0) && v.iter().any(|x| *x != 0.0));
        let cu = PooledVector::new(u.clone()).unwrap();
        let cv = PooledVector::new(v).unwrap();
        let cos = cosine_similarity(&cu, &cv).unwrap();
        prop_assert!((-1.0..=1.0).contains(&cos));
        // Positive scalar multiples of the same vector are maximally similar.
        let scaled = PooledVector::new(u.iter().map(|x| x * 2.5).collect()).unwrap();
        prop_assert!((cosine_similarity(&cu, &scaled).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn combined_score_interpolates_linearly(seed in 0u64..10_000) {
        let mut rng = seeded(seed);
        let (u, d) = random_pair(&mut rng, 4, 3);
        let dtw = dtw_distance(&u, &d).unwrap();
        let cos = cosine_similarity(&mean_pool(&u), &mean_pool(&d));
        prop_assume!(cos.is_ok());
        let cos = cos.unwrap();
        for alpha in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let score = combined_score(&u, &d, alpha).unwrap();
            let expected = (alpha - 1.0) * dtw + alpha * cos;
            prop_assert!((score - expected).abs() < 1e-12);
        }
    }
}
