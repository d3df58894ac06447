//! Left and right homogeneous weights on `F_q^{m x n}`.
//!
//! The left weight of a rank-`r` matrix is
//! `1 - (-1)^r / ((q^m - 1)(q^{m-1} - 1) ... (q^{m-r+1} - 1))`; the right
//! weight uses `n` in place of `m`. Weights depend only on the rank, so they
//! are stored per rank class.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Zero};

use crate::counting::{gaussian_binomial, qpow, rank_count};
use crate::distributions::{MatrixDistribution, Weight};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::matrix::{enumerate, Mat, Side, DEFAULT_CAP};

/// Shapes up to this many matrices get the per-matrix total-weight cross-check.
const BRUTE_SUM_LIMIT: u128 = 1 << 16;

/// A homogeneous weight on `F_q^{m x n}`.
#[derive(Debug, Clone)]
pub struct HomogeneousWeight {
    side: Side,
    field: FieldSpec,
    m: usize,
    n: usize,
    by_rank: Vec<Weight>,
    total: Weight,
}

fn raw_value(q: u32, dim: usize, r: usize) -> Weight {
    let den = (0..r).fold(BigInt::one(), |acc, i| acc * (BigInt::from(qpow(q, (dim - i) as u64)) - 1));
    let sign = if r % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    BigRational::one() - BigRational::new(sign, den)
}

/// `c_{mn} = q^{mn} - (-1)^m q^{m(m+1)/2} [n-1 choose m]_q`: the total left weight.
pub fn total_left_weight_closed_form(m: usize, n: usize, q: u32) -> BigInt {
    let main = BigInt::from(qpow(q, (m * n) as u64));
    let corr = BigInt::from(qpow(q, (m * (m + 1) / 2) as u64) * gaussian_binomial(n as i64 - 1, m as i64, q));
    if m % 2 == 0 {
        main - corr
    } else {
        main + corr
    }
}

impl HomogeneousWeight {
    pub fn new(side: Side, m: usize, n: usize, field: &FieldSpec) -> Result<HomogeneousWeight> {
        if m == 0 || n == 0 {
            return Err(Error::ParameterOutOfRange("m and n must be positive".into()));
        }
        let q = field.order();
        let dim = match side {
            Side::Left => m,
            Side::Right => n,
        };
        let by_rank: Vec<Weight> = (0..=m.min(n)).map(|r| raw_value(q, dim, r)).collect();
        let closed = match side {
            Side::Left => total_left_weight_closed_form(m, n, q),
            Side::Right => total_left_weight_closed_form(n, m, q),
        };
        let w = HomogeneousWeight {
            side,
            field: field.clone(),
            m,
            n,
            by_rank,
            total: BigRational::from_integer(closed),
        };
        let brute = w.brute_total()?;
        if brute != w.total {
            return Err(Error::Internal(format!("total weight {} disagrees with direct sum {brute}", w.total)));
        }
        Ok(w)
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Unnormalised weight of a rank-`r` matrix.
    pub fn value(&self, r: usize) -> &Weight {
        &self.by_rank[r]
    }

    pub fn values(&self) -> &[Weight] {
        &self.by_rank
    }

    /// Weight of a matrix.
    pub fn weight(&self, x: &Mat) -> Result<Weight> {
        if x.shape() != (self.m, self.n) {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix for a weight on {}x{}",
                x.rows(),
                x.cols(),
                self.m,
                self.n
            )));
        }
        Ok(self.by_rank[x.rank()].clone())
    }

    /// Sum of the weight over the whole space (closed form).
    pub fn total(&self) -> &Weight {
        &self.total
    }

    /// Direct sum over the space: per matrix when small, else per rank class.
    pub fn brute_total(&self) -> Result<Weight> {
        let q = self.field.order();
        let size = (q as u128).checked_pow((self.m * self.n) as u32).unwrap_or(u128::MAX);
        if size <= BRUTE_SUM_LIMIT {
            let mut census = vec![0u64; self.by_rank.len()];
            for x in enumerate(&self.field, self.m, self.n, DEFAULT_CAP)? {
                census[x.rank()] += 1;
            }
            Ok(census.iter().zip(&self.by_rank).map(|(&c, w)| w * BigInt::from(c)).sum())
        } else {
            Ok((0..self.by_rank.len())
                .map(|r| &self.by_rank[r] * BigInt::from(rank_count(q, self.m as u64, self.n as u64, r as u64)))
                .sum())
        }
    }

    /// Normalised weight `w / c` of a rank-`r` matrix.
    pub fn normalized(&self, r: usize) -> Weight {
        &self.by_rank[r] / &self.total
    }

    /// The normalised weight as a distribution (the zero matrix has weight 0
    /// and is not in the support).
    pub fn distribution(&self, cap: u128) -> Result<MatrixDistribution> {
        let norm: Vec<Weight> = (0..self.by_rank.len()).map(|r| self.normalized(r)).collect();
        let pairs: Vec<(Mat, Weight)> = enumerate(&self.field, self.m, self.n, cap)?
            .map(|x| {
                let r = x.rank();
                (x, norm[r].clone())
            })
            .collect();
        MatrixDistribution::from_weights(&self.field, self.m, self.n, pairs)
    }

    /// Tab-separated table `rank, weight, normalized`.
    pub fn table_tsv(&self) -> String {
        let mut out = String::from("rank\tweight\tnormalized\n");
        for r in 0..self.by_rank.len() {
            out.push_str(&format!("{r}\t{}\t{}\n", self.by_rank[r], self.normalized(r)));
        }
        out
    }
}

/// Normalised homogeneous weight as a distribution.
pub fn normalized_distribution(side: Side, m: usize, n: usize, field: &FieldSpec) -> Result<MatrixDistribution> {
    HomogeneousWeight::new(side, m, n, field)?.distribution(DEFAULT_CAP)
}

/// The submodule `{X : colspace(X) ⊆ V}` (right, `V ⊆ F_q^m`) or
/// `{X : rowspace(X) ⊆ W}` (left, `W ⊆ F_q^n`), given by a basis of the
/// subspace as the rows of `basis`.
#[derive(Debug, Clone)]
pub struct Submodule {
    pub side: Side,
    pub m: usize,
    pub n: usize,
    pub basis: Mat,
    /// Rows span the orthogonal complement of the subspace.
    check: Mat,
}

impl Submodule {
    pub fn new(side: Side, m: usize, n: usize, basis: &Mat) -> Result<Submodule> {
        let ambient = match side {
            Side::Right => m,
            Side::Left => n,
        };
        if basis.cols() != ambient {
            return Err(Error::ShapeMismatch(format!(
                "subspace basis has {} columns, ambient dimension is {ambient}",
                basis.cols()
            )));
        }
        let basis = basis.row_space();
        let check = basis.kernel(Side::Right);
        Ok(Submodule { side, m, n, basis, check })
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Number of elements, `q^{dim * n}` (right) or `q^{dim * m}` (left).
    pub fn size(&self, q: u32) -> u128 {
        let other = match self.side {
            Side::Right => self.n,
            Side::Left => self.m,
        };
        (q as u128).pow((self.dim() * other) as u32)
    }

    /// Generated by a single matrix.
    pub fn is_cyclic(&self) -> bool {
        match self.side {
            Side::Right => self.dim() <= self.n,
            Side::Left => self.dim() <= self.m,
        }
    }

    /// Coset label: `H X` (right) or `X H^T` (left).
    pub fn label(&self, x: &Mat) -> u128 {
        match self.side {
            Side::Right => self.check.matmul(x).expect("shapes agree").index(),
            Side::Left => x.matmul(&self.check.transpose()).expect("shapes agree").index(),
        }
    }

    pub fn contains(&self, x: &Mat) -> bool {
        match self.side {
            Side::Right => self.check.matmul(x).expect("shapes agree").is_zero(),
            Side::Left => x.matmul(&self.check.transpose()).expect("shapes agree").is_zero(),
        }
    }
}

/// One coset of a submodule with its weight sum and rank census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetSum {
    /// Least element of the coset in canonical order.
    pub representative: Mat,
    /// Sum of the normalised weight over the coset.
    pub sum: Weight,
    /// `census[r]` = number of rank-`r` matrices in the coset.
    pub census: Vec<usize>,
}

/// Sums of the normalised weight `w` over the cosets of `module`, ordered by
/// representative.
pub fn coset_weight_sums(w: &HomogeneousWeight, module: &Submodule) -> Result<Vec<CosetSum>> {
    if (module.m, module.n) != w.shape() {
        return Err(Error::ShapeMismatch("submodule and weight shapes differ".into()));
    }
    let norm: Vec<Weight> = (0..w.by_rank.len()).map(|r| w.normalized(r)).collect();
    let mut cosets: BTreeMap<u128, CosetSum> = BTreeMap::new();
    for x in enumerate(&w.field, w.m, w.n, DEFAULT_CAP)? {
        let r = x.rank();
        let entry = cosets.entry(module.label(&x)).or_insert_with(|| CosetSum {
            representative: x.clone(),
            sum: Weight::zero(),
            census: vec![0; norm.len()],
        });
        entry.sum += &norm[r];
        entry.census[r] += 1;
    }
    let mut out: Vec<CosetSum> = cosets.into_values().collect();
    out.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(out)
}

/// The (H3) equation for the normalised weight: `sum_{X in U} w(X) = |U| / c`.
pub fn h3_holds(w: &HomogeneousWeight, module: &Submodule) -> Result<bool> {
    let norm: Vec<Weight> = (0..w.by_rank.len()).map(|r| w.normalized(r)).collect();
    let mut sum = Weight::zero();
    let mut count: u128 = 0;
    for x in enumerate(&w.field, w.m, w.n, DEFAULT_CAP)? {
        if module.contains(&x) {
            sum += &norm[x.rank()];
            count += 1;
        }
    }
    Ok(sum == BigRational::new(BigInt::from(count), BigInt::one()) / &w.total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::SubspaceIterator;

    fn r(a: i64, b: i64) -> Weight {
        BigRational::new(a.into(), b.into())
    }

    fn gf2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn binary_2x3_tables() {
        let f = gf2();
        let l = HomogeneousWeight::new(Side::Left, 2, 3, &f).unwrap();
        assert_eq!(l.values(), &[r(0, 1), r(4, 3), r(2, 3)]);
        assert_eq!(l.total(), &r(56, 1));
        assert_eq!((l.normalized(1), l.normalized(2)), (r(1, 42), r(1, 84)));
        let rt = HomogeneousWeight::new(Side::Right, 2, 3, &f).unwrap();
        assert_eq!(rt.value(1), &r(8, 7));
        assert_eq!(rt.total(), &r(64, 1));
        assert_eq!((rt.normalized(1), rt.normalized(2)), (r(1, 56), r(5, 336)));
        let l32 = HomogeneousWeight::new(Side::Left, 3, 2, &f).unwrap();
        assert_eq!(l32.total(), &r(64, 1));
        assert_eq!((l32.normalized(1), l32.normalized(2)), (r(1, 56), r(5, 336)));
        assert_eq!(l.weight(&Mat::zeros(&f, 2, 3)).unwrap(), r(0, 1));
        assert!(l.weight(&Mat::zeros(&f, 3, 2)).is_err());
    }

    #[test]
    fn total_weight_closed_form_matches_sum() {
        for q in [2u32, 3] {
            let f = FieldSpec::prime(q).unwrap();
            for m in 1..=3 {
                for n in 1..=3 {
                    for side in [Side::Left, Side::Right] {
                        // The constructor fails if the two totals differ.
                        let w = HomogeneousWeight::new(side, m, n, &f).unwrap();
                        assert_eq!(w.total(), &w.brute_total().unwrap());
                    }
                }
            }
        }
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(HomogeneousWeight::new(Side::Left, 1, 1, &f3).unwrap().total(), &r(3, 1));
    }

    #[test]
    fn coset_sums_2x3_right() {
        let f = gf2();
        let w = HomogeneousWeight::new(Side::Right, 2, 3, &f).unwrap();
        for v in SubspaceIterator::new(&f, 2, 1) {
            let u = Submodule::new(Side::Right, 2, 3, &v).unwrap();
            assert_eq!(u.size(2), 8);
            let cosets = coset_weight_sums(&w, &u).unwrap();
            assert_eq!(cosets.len(), 8);
            for c in &cosets {
                assert_eq!(c.sum, r(1, 8));
                if c.representative.is_zero() {
                    assert_eq!(c.census, vec![1, 7, 0]);
                } else {
                    assert_eq!(c.census, vec![0, 2, 6]);
                }
            }
        }
    }

    #[test]
    fn coset_sums_3x2_right_of_size_16() {
        let f = gf2();
        let w = HomogeneousWeight::new(Side::Left, 3, 2, &f).unwrap();
        for v in SubspaceIterator::new(&f, 3, 2) {
            let u = Submodule::new(Side::Right, 3, 2, &v).unwrap();
            assert_eq!(u.size(2), 16);
            let cosets = coset_weight_sums(&w, &u).unwrap();
            assert_eq!(cosets.len(), 4);
            for c in &cosets {
                assert_eq!(c.sum, r(1, 4));
                let expected = if c.representative.is_zero() { vec![1, 9, 6] } else { vec![0, 4, 12] };
                assert_eq!(c.census, expected);
            }
        }
    }

    #[test]
    fn full_space_single_coset() {
        let f = gf2();
        let w = HomogeneousWeight::new(Side::Right, 2, 3, &f).unwrap();
        let u = Submodule::new(Side::Right, 2, 3, &Mat::identity(&f, 2)).unwrap();
        let cosets = coset_weight_sums(&w, &u).unwrap();
        assert_eq!(cosets.len(), 1);
        assert_eq!(cosets[0].sum, r(1, 1));
    }

    #[test]
    fn h3_on_left_submodules_of_2x3() {
        let f = gf2();
        let w = HomogeneousWeight::new(Side::Left, 2, 3, &f).unwrap();
        for d in 1..=3 {
            for basis in SubspaceIterator::new(&f, 3, d) {
                let u = Submodule::new(Side::Left, 2, 3, &basis).unwrap();
                assert_eq!(u.is_cyclic(), d <= 2);
                assert_eq!(h3_holds(&w, &u).unwrap(), u.is_cyclic(), "dim {d}");
            }
        }
    }
}
