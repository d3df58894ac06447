use mrdlab::battery::duality_corpus_members;
use mrdlab::distributions::{k_good, weight_to_f64, MatrixDistribution};
use mrdlab::gf::FieldSpec;
use mrdlab::matrix::{enumerate, Mat, DEFAULT_CAP};
use mrdlab::randomcoding::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gf2() -> FieldSpec {
    FieldSpec::prime(2).unwrap()
}

/// Intersection from the definition over binary row spaces: every set of k
/// independent codewords has a coordinate where all are nonzero.
fn brute_intersecting(g: &Mat, k: usize) -> bool {
    let f = g.field();
    let (rows, n) = g.shape();
    let words: Vec<Mat> = enumerate(f, 1, rows, DEFAULT_CAP)
        .unwrap()
        .map(|c| c.matmul(g).unwrap())
        .filter(|w| !w.is_zero())
        .collect();
    let mut ok = true;
    let mut pick = |idx: &[usize]| {
        let stacked = idx.iter().skip(1).fold(words[idx[0]].clone(), |acc, &i| acc.vstack(&words[i]).unwrap());
        if stacked.rank() == k {
            ok &= (0..n).any(|j| idx.iter().all(|&i| !words[i].get(0, j).is_zero()));
        }
    };
    let w = words.len();
    match k {
        1 => (0..w).for_each(|a| pick(&[a])),
        2 => (0..w).for_each(|a| (a + 1..w).for_each(|b| pick(&[a, b]))),
        _ => unimplemented!(),
    }
    ok
}

#[test]
fn joint_laws_hold_exactly_on_good_corpus_members() {
    let f = gf2();
    for d in duality_corpus_members(1).unwrap() {
        for k in 1..=2 {
            let u = VectorSet::nonzero(&f, 2, VectorProperty::AnyKIndependent(k)).unwrap();
            match joint_law_check(&d, &u, Mode::Linear) {
                Ok(r) => {
                    assert!(k_good(&d, k).unwrap());
                    assert!(r.holds, "{:?}", r.witness);
                }
                Err(_) => assert!(!k_good(&d, k).unwrap()),
            }
        }
    }
}

#[test]
fn vector_sets_are_checked_on_construction() {
    let f = gf2();
    let dependent = vec![vec![f.one(), f.zero()], vec![f.one(), f.zero()]];
    assert!(VectorSet::new(&f, 2, dependent, VectorProperty::AnyKIndependent(2)).is_err());
}

#[test]
fn monte_carlo_agrees_with_the_exact_failure_probability() {
    let f = gf2();
    let d = MatrixDistribution::uniform_full(&f, 2, 3, DEFAULT_CAP).unwrap();
    for k in 1..=2 {
        let p = weight_to_f64(&intersecting_failure_exact(&d, k).unwrap());
        for seed in 0..3 {
            let trials = 30_000;
            let (hits, _) = intersecting_failure_estimate(&d, k, trials, seed).unwrap();
            let hat = frequency(hits, trials);
            let tol = 4.0 * (hat * (1.0 - hat) / trials as f64).sqrt() + 1e-9;
            assert!((hat - p).abs() <= tol, "k={k} seed={seed}: {hat} vs {p}");
        }
    }
}

#[test]
fn estimates_do_not_depend_on_the_thread_count() {
    let f = gf2();
    let d = MatrixDistribution::uniform_full(&f, 2, 3, DEFAULT_CAP).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| intersecting_failure_estimate(&d, 2, 20_000, 42).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn exact_failure_stays_below_the_bound() {
    let f = gf2();
    for (m, n) in [(2, 3), (2, 4), (3, 3)] {
        let d = MatrixDistribution::uniform_full(&f, m, n, DEFAULT_CAP).unwrap();
        let r = intersecting_failure(&d, 1, 0, 0).unwrap();
        assert!(r.exact.is_some() && r.within_bound, "{m}x{n}: {r:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn intersection_test_matches_the_definition(idx in 0u128..4096, k in 1usize..=2) {
        let g = Mat::from_index(&gf2(), 2, 6, idx);
        prop_assert_eq!(is_k_wise_intersecting(&g, k, DEFAULT_CAP).unwrap(), brute_intersecting(&g, k));
    }

    #[test]
    fn extraction_yields_an_f_set(seed in any::<u64>(), count in 2usize..10) {
        let f = gf2();
        let fam = PatternFamily::singletons(&f, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_vectors(&f, 6, count, &mut rng);
        let e = f_set_extract(&c, &fam, DEFAULT_CAP).unwrap();
        let kept: Vec<Vector> = e.kept_indices.iter().map(|&i| c[i].clone()).collect();
        prop_assert!(is_f_set(&kept, &fam, DEFAULT_CAP).unwrap());
        prop_assert_eq!(e.removed + kept.len(), c.len());
        // An F-set passes through untouched.
        prop_assert_eq!(f_set_extract(&kept, &fam, DEFAULT_CAP).unwrap().removed, 0);
    }
}
