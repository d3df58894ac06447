use std::collections::BTreeMap;

use mrdlab::battery::duality_corpus_members;
use mrdlab::codes::gabidulin;
use mrdlab::distributions::*;
use mrdlab::gf::FieldSpec;
use mrdlab::homweight::normalized_distribution;
use mrdlab::matrix::{enumerate, enumerate_full_rank, Mat, Side, DEFAULT_CAP};
use num::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gf2() -> FieldSpec {
    FieldSpec::prime(2).unwrap()
}

/// Goodness straight from the definition: every rank-k `M` pushes the law of
/// `A` to the uniform law on `k x n` matrices.
fn brute_good(d: &MatrixDistribution, k: usize) -> bool {
    let (m, n) = d.shape();
    let f = d.field();
    let q = f.order() as u128;
    let target = recip(q.pow((k * n) as u32));
    enumerate(f, k, m, DEFAULT_CAP).unwrap().filter(|mm| mm.rank() == k).all(|mm| {
        let mut mass: BTreeMap<u128, Weight> = BTreeMap::new();
        for (a, w) in d.weights() {
            *mass.entry(mm.matmul(a).unwrap().index()).or_insert_with(Weight::zero) += w;
        }
        mass.len() as u128 == q.pow((k * n) as u32) && mass.values().all(|w| *w == target)
    })
}

#[test]
fn goodness_matches_the_definition_on_the_corpus() {
    for d in duality_corpus_members(7).unwrap() {
        for k in 1..=2 {
            assert_eq!(k_good(&d, k).unwrap(), brute_good(&d, k));
        }
    }
}

#[test]
fn goodness_is_invariant_under_transposition() {
    for d in duality_corpus_members(11).unwrap() {
        let t = d.transpose();
        for k in 1..=2 {
            assert_eq!(k_good(&d, k).unwrap(), k_good(&t, k).unwrap());
        }
    }
}

#[test]
fn goodness_levels_are_nested() {
    let f = gf2();
    for d in duality_corpus_members(3).unwrap() {
        if k_good(&d, 2).unwrap() {
            assert!(k_good(&d, 1).unwrap());
        }
    }
    // The uniform law on a rank-distance-2 code is 1-good but not 2-good.
    let d = MatrixDistribution::uniform_over_code(&gabidulin(3, 3, 1, &f, DEFAULT_CAP).unwrap()).unwrap();
    assert!(k_good(&d, 1).unwrap());
    assert!(!k_good(&d, 2).unwrap());
}

#[test]
fn good_supports_are_at_least_mrd_sized() {
    for d in duality_corpus_members(5).unwrap() {
        for k in 1..=2 {
            let r = classify_min_support(&d, k).unwrap();
            if r.is_k_good {
                assert!(r.support_size as u128 >= r.minimum_size);
            }
        }
    }
}

#[test]
fn right_weight_is_good_and_left_weight_is_not() {
    let f = gf2();
    let right = normalized_distribution(Side::Right, 2, 3, &f).unwrap();
    let left = normalized_distribution(Side::Left, 2, 3, &f).unwrap();
    assert!(brute_good(&right, 1));
    assert!(!brute_good(&left, 1));
    let w = is_k_good(&left, 1, DEFAULT_CAP).unwrap().witness.unwrap();
    assert_ne!(w.probability, recip(8));
}

#[test]
fn one_good_laws_have_uniform_vector_images() {
    let f = gf2();
    let d = MatrixDistribution::uniform_over_code(&gabidulin(3, 2, 1, &f, DEFAULT_CAP).unwrap().transpose()).unwrap();
    assert!(k_good(&d, 1).unwrap());
    assert!(vector_images_uniform(&d));
    let full = MatrixDistribution::uniform_full(&f, 2, 3, DEFAULT_CAP).unwrap();
    assert!(is_uniform(&full));
    assert!(products_uniform(&full, DEFAULT_CAP).unwrap());
}

#[test]
fn text_round_trip_preserves_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let d = random_distribution(&gf2(), 2, 3, 10, 7, &mut rng).unwrap();
    assert_eq!(MatrixDistribution::from_text(&d.to_text()).unwrap(), d);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn mixtures_of_good_laws_are_good(seed in any::<u64>(), num in 1u32..8) {
        let corpus = duality_corpus_members(seed % 4).unwrap();
        let good: Vec<&MatrixDistribution> = corpus.iter().filter(|d| k_good(d, 1).unwrap()).collect();
        prop_assume!(good.len() >= 2);
        let c = Weight::new(num.into(), 8.into());
        let mixed = mix(&[(c.clone(), good[0]), (Weight::one() - c, good[good.len() - 1])]).unwrap();
        prop_assert!(k_good(&mixed, 1).unwrap());
    }

    #[test]
    fn invertible_transforms_preserve_goodness(seed in any::<u64>(), pi in 0usize..6, qi in 0usize..168, b in 0u128..64) {
        let f = gf2();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let size = 1 + (seed % 24) as usize;
        let d = random_distribution(&f, 2, 3, size, 4, &mut rng).unwrap();
        let p = enumerate_full_rank(&f, 2, 2, DEFAULT_CAP).unwrap().nth(pi).unwrap();
        let q = enumerate_full_rank(&f, 3, 3, DEFAULT_CAP).unwrap().nth(qi).unwrap();
        let joint = JointPqb::independent(
            &MatrixDistribution::point_mass(&p),
            &MatrixDistribution::point_mass(&q),
            &MatrixDistribution::point_mass(&Mat::from_index(&f, 2, 3, b)),
        );
        let t = compose(&d, &joint).unwrap();
        for k in 1..=2 {
            prop_assert_eq!(k_good(&d, k).unwrap(), k_good(&t, k).unwrap());
        }
    }
}
