//! Gaussian binomials, the Anzahl counts and related closed forms.

use num::{BigUint, One, Zero};

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::matrix::Mat;

fn big(x: u32) -> BigUint {
    BigUint::from(x)
}

/// `q^e` as a big integer.
pub fn qpow(q: u32, e: u64) -> BigUint {
    num::pow(big(q), e as usize)
}

/// `prod_{i=lo}^{hi-1} (q^a - q^i)`; one when `lo >= hi`.
pub fn q_product(q: u32, a: u64, lo: u64, hi: u64) -> BigUint {
    let top = qpow(q, a);
    (lo..hi).fold(BigUint::one(), |acc, i| acc * (&top - qpow(q, i)))
}

/// The Gaussian binomial `[n choose m]_q`; zero outside `0 <= m <= n`.
pub fn gaussian_binomial(n: i64, m: i64, q: u32) -> BigUint {
    if m < 0 || n < 0 || m > n {
        return BigUint::zero();
    }
    let (n, m) = (n as u64, m as u64);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in (n - m + 1)..=n {
        num *= qpow(q, i) - 1u32;
    }
    for i in 1..=m {
        den *= qpow(q, i) - 1u32;
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// Number of `l`-dimensional subspaces `L` of `F_q^n` with `dim(L ∩ M) = k`
/// for a fixed `m`-dimensional `M`.
pub fn anzahl_intersecting_subspaces(k: u64, l: u64, m: u64, n: u64, q: u32) -> Result<BigUint> {
    if k > l.min(m) || l + m > n + k {
        return Err(Error::ParameterOutOfRange(format!(
            "need k <= min(l, m) and l + m - k <= n, got k={k} l={l} m={m} n={n}"
        )));
    }
    let (k, l, m, n) = (k as i64, l as i64, m as i64, n as i64);
    Ok(qpow(q, ((l - k) * (m - k)) as u64)
        * gaussian_binomial(m, k, q)
        * gaussian_binomial(n - m, l - k, q))
}

/// Number of full-rank `m x n` matrices `M` with `rank(M N^T) = k` for a fixed
/// `m x n` matrix `N` of rank `l`.
pub fn anzahl_rank_k_products(k: u64, l: u64, m: u64, n: u64, q: u32) -> Result<BigUint> {
    if !(k <= l && l <= m && m <= n) || k + n < l + m {
        return Err(Error::ParameterOutOfRange(format!(
            "need k <= l <= m <= n and k + n >= l + m, got k={k} l={l} m={m} n={n}"
        )));
    }
    let e = k * (n + k - l - m);
    let (ki, li, mi, ni) = (k as i64, l as i64, m as i64, n as i64);
    Ok(qpow(q, e)
        * gaussian_binomial(li, ki, q)
        * gaussian_binomial(ni - li, mi - ki, q)
        * q_product(q, m, 0, m))
}

/// Number of orbits `prod_{i=1}^{n-1} (q^m - q^i)` of the matrix-field action
/// on full-rank `m x n` matrices.
pub fn mrd_orbit_count(m: u64, n: u64, q: u32) -> Result<BigUint> {
    if n < 1 || m < n {
        return Err(Error::ParameterOutOfRange(format!("need m >= n >= 1, got m={m} n={n}")));
    }
    Ok(q_product(q, m, 1, n))
}

/// Number of `m x n` matrices of rank `r`:
/// `[m choose r]_q prod_{i<r} (q^n - q^i)`.
pub fn rank_count(q: u32, m: u64, n: u64, r: u64) -> BigUint {
    gaussian_binomial(m as i64, r as i64, q) * q_product(q, n, 0, r)
}

/// Iterator over the `m`-dimensional subspaces of `F_q^n`, each given by its
/// reduced row-echelon basis (an `m x n` matrix).
///
/// Pivot sets are visited in lexicographic order and, within one, the free
/// entries count up in row-major order.
pub struct SubspaceIterator {
    field: FieldSpec,
    n: usize,
    m: usize,
    pivots: Option<Vec<usize>>,
    free: Vec<(usize, usize)>,
    counter: Vec<u16>,
    fresh: bool,
}

impl SubspaceIterator {
    pub fn new(field: &FieldSpec, n: usize, m: usize) -> SubspaceIterator {
        let pivots = (m <= n).then(|| (0..m).collect::<Vec<_>>());
        let mut it = SubspaceIterator {
            field: field.clone(),
            n,
            m,
            pivots,
            free: Vec::new(),
            counter: Vec::new(),
            fresh: true,
        };
        it.reset_free();
        it
    }

    fn reset_free(&mut self) {
        self.free.clear();
        if let Some(p) = &self.pivots {
            for (r, &pc) in p.iter().enumerate() {
                for c in pc + 1..self.n {
                    if !p.contains(&c) {
                        self.free.push((r, c));
                    }
                }
            }
        }
        self.counter = vec![0; self.free.len()];
        self.fresh = true;
    }

    fn advance_pivots(&mut self) -> bool {
        let Some(p) = self.pivots.as_mut() else { return false };
        let (m, n) = (self.m, self.n);
        let mut i = m;
        while i > 0 {
            i -= 1;
            if p[i] < n - m + i {
                p[i] += 1;
                for j in i + 1..m {
                    p[j] = p[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    fn current(&self) -> Mat {
        let p = self.pivots.as_ref().expect("active");
        let mut b = Mat::zeros(&self.field, self.m, self.n);
        for (r, &c) in p.iter().enumerate() {
            b.set(r, c, FieldElement::ONE);
        }
        for (&(r, c), &v) in self.free.iter().zip(&self.counter) {
            b.set(r, c, FieldElement(v));
        }
        b
    }
}

impl Iterator for SubspaceIterator {
    type Item = Mat;

    fn next(&mut self) -> Option<Mat> {
        self.pivots.as_ref()?;
        if self.fresh {
            self.fresh = false;
            return Some(self.current());
        }
        let q = self.field.order() as u16;
        let mut i = self.counter.len();
        while i > 0 {
            i -= 1;
            if self.counter[i] + 1 < q {
                self.counter[i] += 1;
                return Some(self.current());
            }
            self.counter[i] = 0;
        }
        if self.advance_pivots() {
            self.reset_free();
            self.fresh = false;
            Some(self.current())
        } else {
            self.pivots = None;
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_of_order;
    use std::collections::HashSet;

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(3, 1, 2), n(7));
        assert_eq!(gaussian_binomial(4, 2, 2), n(35));
        assert_eq!(gaussian_binomial(5, 5, 3), n(1));
        assert_eq!(gaussian_binomial(0, 0, 2), n(1));
        assert_eq!(gaussian_binomial(3, 4, 2), n(0));
        assert_eq!(gaussian_binomial(3, -1, 2), n(0));
    }

    #[test]
    fn anzahl_values() {
        assert_eq!(anzahl_intersecting_subspaces(1, 2, 2, 4, 2).unwrap(), n(18));
        assert_eq!(anzahl_intersecting_subspaces(0, 1, 1, 2, 2).unwrap(), n(2));
        assert_eq!(anzahl_intersecting_subspaces(2, 2, 2, 3, 3).unwrap(), n(1));
        assert!(anzahl_intersecting_subspaces(2, 1, 2, 4, 2).is_err());
        assert_eq!(anzahl_rank_k_products(1, 1, 1, 2, 2).unwrap(), n(2));
        assert_eq!(anzahl_rank_k_products(1, 1, 1, 3, 2).unwrap(), n(4));
        assert!(anzahl_rank_k_products(0, 2, 2, 3, 2).is_err());
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(mrd_orbit_count(3, 2, 2).unwrap(), n(6));
        assert_eq!(mrd_orbit_count(3, 3, 2).unwrap(), n(24));
        assert_eq!(mrd_orbit_count(4, 1, 3).unwrap(), n(1));
        assert!(mrd_orbit_count(2, 3, 2).is_err());
    }

    #[test]
    fn subspace_iterator_counts_and_rref() {
        for q in [2u32, 3] {
            let f = field_of_order(q, None).unwrap();
            for amb in 0..=4usize {
                for dim in 0..=amb + 1 {
                    let all: Vec<Mat> = SubspaceIterator::new(&f, amb, dim).collect();
                    assert_eq!(n(all.len() as u64), gaussian_binomial(amb as i64, dim as i64, q));
                    let distinct: HashSet<&Mat> = all.iter().collect();
                    assert_eq!(distinct.len(), all.len());
                    for b in &all {
                        assert_eq!(&b.rref().0, b);
                        assert_eq!(b.rank(), dim);
                    }
                }
            }
        }
    }

    #[test]
    fn rank_counts_sum_to_space() {
        for q in [2u32, 3] {
            for m in 0..=3u64 {
                for nn in 0..=3u64 {
                    let total: BigUint = (0..=m.min(nn)).map(|r| rank_count(q, m, nn, r)).sum();
                    assert_eq!(total, qpow(q, m * nn));
                }
            }
        }
    }
}
