use mrdlab::counting::*;
use mrdlab::oracle;
use num::BigUint;

fn gb(n: i64, m: i64, q: u32) -> BigUint {
    gaussian_binomial(n, m, q)
}

#[test]
fn gaussian_binomial_matches_subspace_count() {
    for q in [2u32, 3] {
        for n in 0..=4u32 {
            for m in 0..=n {
                let brute = oracle::count_subspaces(n, m, q).unwrap();
                assert_eq!(gb(n as i64, m as i64, q), BigUint::from(brute), "q={q} n={n} m={m}");
            }
        }
    }
}

#[test]
fn gaussian_binomial_symmetry_and_product_identity() {
    for q in [2u32, 3] {
        for n in 0..=6i64 {
            for m in 0..=n {
                assert_eq!(gb(n, m, q), gb(n, n - m, q));
                for l in 0..=n {
                    for k in 0..=n {
                        let lhs = gb(n, l, q) * gb(l, k, q) * gb(n - l, m - k, q);
                        let rhs = gb(n, m, q) * gb(m, k, q) * gb(n - m, l - k, q);
                        assert_eq!(lhs, rhs, "q={q} n={n} m={m} l={l} k={k}");
                    }
                }
            }
        }
    }
}

#[test]
fn intersecting_subspaces_match_brute_force() {
    for q in [2u32, 3] {
        for n in 1..=4u64 {
            for m in 0..=n {
                for l in 0..=n {
                    for k in 0..=l.min(m) {
                        if l + m > n + k {
                            continue;
                        }
                        let formula = anzahl_intersecting_subspaces(k, l, m, n, q).unwrap();
                        let brute =
                            oracle::count_intersecting_subspaces(k as u32, l as u32, m as u32, n as u32, q)
                                .unwrap();
                        assert_eq!(formula, BigUint::from(brute), "q={q} k={k} l={l} m={m} n={n}");
                    }
                }
            }
        }
    }
}

#[test]
fn rank_k_products_match_brute_force() {
    for q in [2u32, 3] {
        for n in 1..=4u64 {
            for m in 1..=n {
                for l in 0..=m {
                    for k in 0..=l {
                        if k + n < l + m {
                            continue;
                        }
                        let formula = anzahl_rank_k_products(k, l, m, n, q).unwrap();
                        let brute =
                            oracle::count_rank_k_products(k as u32, l as u32, m as u32, n as u32, q).unwrap();
                        assert_eq!(formula, BigUint::from(brute), "q={q} k={k} l={l} m={m} n={n}");
                    }
                }
            }
        }
    }
}

#[test]
fn rank_k_products_vanish_outside_the_admissible_range() {
    // With k + n < l + m the image of M must meet ker(N^T) in too much.
    assert_eq!(oracle::count_rank_k_products(0, 2, 2, 3, 2).unwrap(), 0);
    assert_eq!(oracle::count_rank_k_products(0, 3, 3, 4, 2).unwrap(), 0);
}

#[test]
fn summed_product_identity() {
    // sum_l [n-m choose l-k] prod_{i<l-k} (q^{m-k} - q^i) = q^{(m-k)(n-m)}
    for q in [2u32, 3] {
        for n in 0..=5u64 {
            for m in 0..=n {
                for k in 0..=m {
                    let mut sum = BigUint::from(0u32);
                    for l in k..=m.min(n - m + k) {
                        sum += gb((n - m) as i64, (l - k) as i64, q) * q_product(q, m - k, 0, l - k);
                    }
                    assert_eq!(sum, qpow(q, (m - k) * (n - m)), "q={q} n={n} m={m} k={k}");
                }
            }
        }
    }
}
