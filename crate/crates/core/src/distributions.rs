//! Finitely supported random matrices with exact rational probabilities.

use std::collections::{BTreeMap, HashMap};

use num::{BigInt, BigRational, BigUint, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{is_mrd, MatrixCode};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::matrix::{self, enumerate, enumerate_full_rank, Mat};

pub type Weight = BigRational;

/// `1 / d` as an exact weight.
pub fn recip(d: u128) -> Weight {
    BigRational::new(BigInt::one(), BigInt::from(d))
}

/// A probability distribution on `F_q^{m x n}` with finite support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixDistribution {
    field: FieldSpec,
    m: usize,
    n: usize,
    weights: BTreeMap<Mat, Weight>,
}

impl MatrixDistribution {
    /// Builds a distribution from `(matrix, weight)` pairs. Repeated matrices
    /// have their weights added; zero weights are dropped. Weights must be
    /// nonnegative and sum to one.
    pub fn from_weights(
        field: &FieldSpec,
        m: usize,
        n: usize,
        pairs: impl IntoIterator<Item = (Mat, Weight)>,
    ) -> Result<MatrixDistribution> {
        let mut weights: BTreeMap<Mat, Weight> = BTreeMap::new();
        for (a, w) in pairs {
            if a.field() != field {
                return Err(Error::FieldMismatch);
            }
            if a.shape() != (m, n) {
                return Err(Error::ShapeMismatch(format!("{}x{} matrix in a {m}x{n} distribution", a.rows(), a.cols())));
            }
            if w.is_negative() {
                return Err(Error::ParameterOutOfRange(format!("negative weight {w}")));
            }
            *weights.entry(a).or_insert_with(Weight::zero) += w;
        }
        weights.retain(|_, w| !w.is_zero());
        if weights.is_empty() {
            return Err(Error::EmptySupport);
        }
        let total: Weight = weights.values().sum();
        if !total.is_one() {
            return Err(Error::ParameterOutOfRange(format!("weights sum to {total}, not 1")));
        }
        Ok(MatrixDistribution { field: field.clone(), m, n, weights })
    }

    /// The uniform distribution on a nonempty set (duplicates ignored).
    pub fn uniform_over(field: &FieldSpec, m: usize, n: usize, set: &[Mat]) -> Result<MatrixDistribution> {
        let distinct: std::collections::BTreeSet<&Mat> = set.iter().collect();
        if distinct.is_empty() {
            return Err(Error::EmptySupport);
        }
        let w = recip(distinct.len() as u128);
        MatrixDistribution::from_weights(field, m, n, distinct.into_iter().map(|a| (a.clone(), w.clone())))
    }

    pub fn uniform_over_code(code: &MatrixCode) -> Result<MatrixDistribution> {
        MatrixDistribution::uniform_over(code.field(), code.m(), code.n(), code.codewords())
    }

    /// Uniform distribution on the whole space.
    pub fn uniform_full(field: &FieldSpec, m: usize, n: usize, cap: u128) -> Result<MatrixDistribution> {
        let all: Vec<Mat> = enumerate(field, m, n, cap)?.collect();
        MatrixDistribution::uniform_over(field, m, n, &all)
    }

    pub fn point_mass(a: &Mat) -> MatrixDistribution {
        let mut weights = BTreeMap::new();
        weights.insert(a.clone(), Weight::one());
        MatrixDistribution { field: a.field().clone(), m: a.rows(), n: a.cols(), weights }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn support_size(&self) -> usize {
        self.weights.len()
    }

    pub fn support(&self) -> impl Iterator<Item = &Mat> {
        self.weights.keys()
    }

    pub fn weights(&self) -> &BTreeMap<Mat, Weight> {
        &self.weights
    }

    pub fn weight(&self, a: &Mat) -> Weight {
        self.weights.get(a).cloned().unwrap_or_else(Weight::zero)
    }

    /// Whether all weights are equal.
    pub fn is_uniform_on_support(&self) -> bool {
        let mut w = self.weights.values();
        let first = w.next().expect("nonempty");
        w.all(|x| x == first)
    }

    /// Pushforward under an arbitrary map into another shape.
    pub fn map(&self, m: usize, n: usize, f: impl Fn(&Mat) -> Mat) -> MatrixDistribution {
        let mut weights: BTreeMap<Mat, Weight> = BTreeMap::new();
        for (a, w) in &self.weights {
            *weights.entry(f(a)).or_insert_with(Weight::zero) += w;
        }
        MatrixDistribution { field: self.field.clone(), m, n, weights }
    }

    /// The distribution of the transpose.
    pub fn transpose(&self) -> MatrixDistribution {
        self.map(self.n, self.m, Mat::transpose)
    }

    /// `P{rank = min(m, n)}`.
    pub fn full_rank_probability(&self) -> Weight {
        self.weights.iter().filter(|(a, _)| a.is_full_rank()).map(|(_, w)| w).sum()
    }

    /// Points with weights over a common denominator `L`: returns `(L, [(index, numerator)])`.
    fn integer_weights(&self) -> (BigUint, Vec<(&Mat, BigUint)>) {
        let l = self.weights.values().fold(BigInt::one(), |acc, w| num::integer::lcm(acc, w.denom().clone()));
        let items = self
            .weights
            .iter()
            .map(|(a, w)| {
                let num = (w.numer() * (&l / w.denom())).to_biguint().expect("nonnegative");
                (a, num)
            })
            .collect();
        (l.to_biguint().expect("positive"), items)
    }

    /// Text format: the matrix format with a `w <num>/<den>` line before each matrix.
    pub fn to_text(&self) -> String {
        matrix::write_annotated(
            &self.field,
            self.m,
            self.n,
            self.weights.iter().map(|(a, w)| (a, vec![format!("w {}/{}", w.numer(), w.denom())])),
        )
    }

    pub fn from_text(text: &str) -> Result<MatrixDistribution> {
        let file = matrix::parse_matrices(text)?;
        let mut pairs = Vec::with_capacity(file.matrices.len());
        for (i, (a, notes)) in file.matrices.into_iter().zip(file.annotations).enumerate() {
            let [note] = notes.as_slice() else {
                return Err(Error::Parse { line: 0, msg: format!("matrix {} needs exactly one weight line", i + 1) });
            };
            let w = parse_weight(note.trim_start_matches('w').trim())
                .ok_or_else(|| Error::Parse { line: 0, msg: format!("bad weight {note:?}") })?;
            pairs.push((a, w));
        }
        MatrixDistribution::from_weights(&file.field, file.rows, file.cols, pairs)
    }
}

/// Parses `num/den` or an integer.
pub fn parse_weight(s: &str) -> Option<Weight> {
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (BigInt, BigInt) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
            (!b.is_zero()).then(|| BigRational::new(a, b))
        }
        None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
    }
}

/// A violation of k-goodness: `P{M A = K} = probability != q^{-kn}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodnessWitness {
    pub m: Mat,
    pub k: Mat,
    pub probability: Weight,
}

/// Result of [`is_k_good`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodnessReport {
    pub good: bool,
    pub witness: Option<GoodnessWitness>,
}

/// Exact check of k-goodness: for every full-rank `k x m` matrix `M` and
/// every `K`, `P{M A = K} = q^{-kn}`. The witness is the first violation in
/// canonical order of `(M, K)`.
pub fn is_k_good(d: &MatrixDistribution, k: usize, cap: u128) -> Result<GoodnessReport> {
    let (m, n) = d.shape();
    if k < 1 || k > m.min(n) {
        return Err(Error::ParameterOutOfRange(format!("k={k} outside 1..=min(m,n)={}", m.min(n))));
    }
    let q = d.field.order() as u128;
    let targets = q.checked_pow((k * n) as u32).unwrap_or(u128::MAX);
    if targets > cap {
        return Err(Error::EnumerationTooLarge { requested: targets, cap });
    }
    let ms: Vec<Mat> = enumerate_full_rank(&d.field, k, m, cap)?.collect();
    let (l, items) = d.integer_weights();
    // Each K must receive L / q^{kn}; compare numerators scaled by q^{kn}.
    let qkn = BigUint::from(targets);
    let witness = ms.par_iter().find_map_first(|mm| {
        let mut mass: HashMap<u128, BigUint> = HashMap::new();
        for (a, w) in &items {
            let idx = mm.matmul(a).expect("shapes agree").index();
            *mass.entry(idx).or_insert_with(BigUint::zero) += w;
        }
        let bad = |x: &BigUint| x * &qkn != l;
        if mass.len() as u128 == targets && !mass.values().any(bad) {
            return None;
        }
        let first = (0..targets).find(|i| mass.get(i).map_or(true, bad)).expect("a violation exists");
        let p = mass.get(&first).cloned().unwrap_or_default();
        Some(GoodnessWitness {
            m: mm.clone(),
            k: Mat::from_index(&d.field, k, n, first),
            probability: BigRational::new(p.into(), l.clone().into()),
        })
    });
    Ok(GoodnessReport { good: witness.is_none(), witness })
}

/// Convenience wrapper returning only the verdict.
pub fn k_good(d: &MatrixDistribution, k: usize) -> Result<bool> {
    Ok(is_k_good(d, k, matrix::DEFAULT_CAP)?.good)
}

/// A joint distribution of `(P, Q, B)` with `P` an `s x m`, `Q` an `n x t`
/// and `B` an `s x t` matrix.
#[derive(Debug, Clone)]
pub struct JointPqb {
    pub entries: Vec<((Mat, Mat, Mat), Weight)>,
}

impl JointPqb {
    /// The product of independent marginals.
    pub fn independent(p: &MatrixDistribution, q: &MatrixDistribution, b: &MatrixDistribution) -> JointPqb {
        let mut entries = Vec::new();
        for (pm, pw) in p.weights() {
            for (qm, qw) in q.weights() {
                for (bm, bw) in b.weights() {
                    entries.push(((pm.clone(), qm.clone(), bm.clone()), pw * qw * bw));
                }
            }
        }
        JointPqb { entries }
    }
}

/// The distribution of `P A Q + B` with `A` independent of `(P, Q, B)`.
pub fn compose(a: &MatrixDistribution, joint: &JointPqb) -> Result<MatrixDistribution> {
    let ((p0, q0, b0), _) = joint.entries.first().ok_or(Error::EmptySupport)?;
    let (s, t) = (p0.rows(), q0.cols());
    let mut pairs = Vec::new();
    for ((p, q, b), w) in &joint.entries {
        if p.shape() != (s, a.m) || q.shape() != (a.n, t) || b.shape() != (s, t) {
            return Err(Error::ShapeMismatch(format!(
                "P {}x{}, Q {}x{}, B {}x{} do not fit A {}x{}",
                p.rows(), p.cols(), q.rows(), q.cols(), b.rows(), b.cols(), a.m, a.n
            )));
        }
        if !p.is_full_rank() || !q.is_full_rank() {
            return Err(Error::NotFullRankSupport);
        }
        for (x, wx) in a.weights() {
            let y = p.matmul(x)?.matmul(q)?.add(b)?;
            pairs.push((y, w * wx));
        }
    }
    MatrixDistribution::from_weights(&b0.field().clone(), s, t, pairs)
}

/// Convex combination `sum c_i D_i` with nonnegative rational `c_i` summing to one.
pub fn mix(parts: &[(Weight, &MatrixDistribution)]) -> Result<MatrixDistribution> {
    let (_, first) = parts.first().ok_or(Error::EmptySupport)?;
    let mut pairs = Vec::new();
    for (c, d) in parts {
        if d.shape() != first.shape() {
            return Err(Error::ShapeMismatch("mixture components differ in shape".into()));
        }
        if d.field != first.field {
            return Err(Error::FieldMismatch);
        }
        pairs.extend(d.weights().iter().map(|(a, w)| (a.clone(), c * w)));
    }
    MatrixDistribution::from_weights(&first.field, first.m, first.n, pairs)
}

/// Result of [`classify_min_support`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinSupportReport {
    pub k: usize,
    pub is_k_good: bool,
    pub support_size: usize,
    pub minimum_size: u128,
    pub is_minimum: bool,
    /// Whether the support is an `(m, n, k)` MRD code.
    pub mrd_support: bool,
    pub uniform: bool,
}

/// Relates k-goodness, support size and the MRD property. The minimum support
/// of a k-good distribution is `q^{k max(m,n)}`, attained exactly by uniform
/// distributions on MRD codes; a contradiction raises [`Error::Internal`].
pub fn classify_min_support(d: &MatrixDistribution, k: usize) -> Result<MinSupportReport> {
    let (m, n) = d.shape();
    let good = is_k_good(d, k, matrix::DEFAULT_CAP)?.good;
    let q = d.field.order() as u128;
    let minimum_size = q.pow((k * m.max(n)) as u32);
    let support_size = d.support_size();
    let code = MatrixCode::new(&d.field, m, n, d.support().cloned().collect())?;
    let mrd_support = is_mrd(&code, k)?.is_mrd;
    let uniform = d.is_uniform_on_support();
    if good && (support_size as u128) < minimum_size {
        return Err(Error::Internal("k-good distribution below the minimum support size".into()));
    }
    let is_minimum = good && support_size as u128 == minimum_size;
    if is_minimum && !(mrd_support && uniform) {
        return Err(Error::Internal("minimum-support k-good distribution is not uniform on an MRD code".into()));
    }
    if mrd_support && uniform && !good {
        return Err(Error::Internal("uniform distribution on an MRD code is not k-good".into()));
    }
    Ok(MinSupportReport { k, is_k_good: good, support_size, minimum_size, is_minimum, mrd_support, uniform })
}

/// For a 1-good `D`: the distribution of `u A` is uniform on `F_q^n` for every
/// nonzero row vector `u`. Returns whether that holds.
pub fn vector_images_uniform(d: &MatrixDistribution) -> bool {
    let (m, n) = d.shape();
    let q = d.field.order() as u128;
    let size = q.pow(n as u32);
    let target = recip(size);
    (1..q.pow(m as u32)).all(|u| {
        let u = Mat::from_index(&d.field, 1, m, u);
        let image = d.map(1, n, |a| u.matmul(a).expect("shapes agree"));
        image.support_size() as u128 == size && image.weights().values().all(|w| *w == target)
    })
}

/// Whether `D` is the uniform distribution on `F_q^{m x n}`.
pub fn is_uniform(d: &MatrixDistribution) -> bool {
    let q = d.field.order() as u128;
    let size = q.pow((d.m * d.n) as u32);
    d.support_size() as u128 == size && d.is_uniform_on_support()
}

/// For `m <= n`: whether `M N^T` is uniform on `F_q^{m x m}` for every
/// full-rank `m x n` matrix `M`, `N` drawn from `D`.
pub fn products_uniform(d: &MatrixDistribution, cap: u128) -> Result<bool> {
    let (m, n) = d.shape();
    if m > n {
        return Err(Error::ParameterOutOfRange("need m <= n".into()));
    }
    let q = d.field.order() as u128;
    let size = q.pow((m * m) as u32);
    let target = recip(size);
    let ms: Vec<Mat> = enumerate_full_rank(&d.field, m, n, cap)?.collect();
    Ok(ms.par_iter().all(|mm| {
        let image = d.map(m, m, |a| mm.matmul(&a.transpose()).expect("shapes agree"));
        image.support_size() as u128 == size && image.weights().values().all(|w| *w == target)
    }))
}

/// A pseudorandom distribution: `size` distinct support points with weights
/// proportional to integers in `1..=max_weight`.
pub fn random_distribution(
    field: &FieldSpec,
    m: usize,
    n: usize,
    size: usize,
    max_weight: u32,
    rng: &mut impl rand::Rng,
) -> Result<MatrixDistribution> {
    let q = field.order() as u128;
    let total = q.pow((m * n) as u32);
    if size == 0 || size as u128 > total {
        return Err(Error::ParameterOutOfRange(format!("support size {size} outside 1..={total}")));
    }
    let mut chosen = std::collections::BTreeSet::new();
    while chosen.len() < size {
        chosen.insert(rng.gen_range(0..total));
    }
    let raw: Vec<(u128, u32)> = chosen.into_iter().map(|i| (i, rng.gen_range(1..=max_weight))).collect();
    let sum: u64 = raw.iter().map(|&(_, w)| w as u64).sum();
    MatrixDistribution::from_weights(
        field,
        m,
        n,
        raw.into_iter().map(|(i, w)| (Mat::from_index(field, m, n, i), BigRational::new(w.into(), sum.into()))),
    )
}

/// Floating-point rendering of a weight, for display.
pub fn weight_to_f64(w: &Weight) -> f64 {
    w.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{binary_2x2_mrd_pair, gabidulin};
    use crate::matrix::DEFAULT_CAP;

    fn gf2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn r(a: i64, b: i64) -> Weight {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn uniform_constructions() {
        let f = gf2();
        let z = Mat::zeros(&f, 2, 3);
        let d = MatrixDistribution::uniform_over(&f, 2, 3, &[z.clone()]).unwrap();
        assert_eq!(d, MatrixDistribution::point_mass(&z));
        let full = MatrixDistribution::uniform_full(&f, 2, 3, DEFAULT_CAP).unwrap();
        assert!(full.weights().values().all(|w| *w == r(1, 64)));
        let g = gabidulin(3, 2, 1, &f, DEFAULT_CAP).unwrap();
        let d = MatrixDistribution::uniform_over_code(&g).unwrap();
        assert_eq!(d.support_size(), 8);
        assert!(d.weights().values().all(|w| *w == r(1, 8)));
        assert_eq!(MatrixDistribution::uniform_over(&f, 2, 3, &[]), Err(Error::EmptySupport));
    }

    #[test]
    fn goodness_examples() {
        let f = gf2();
        let full = MatrixDistribution::uniform_full(&f, 2, 3, DEFAULT_CAP).unwrap();
        assert!(k_good(&full, 2).unwrap());
        let zero = MatrixDistribution::point_mass(&Mat::zeros(&f, 2, 3));
        let rep = is_k_good(&zero, 1, DEFAULT_CAP).unwrap();
        assert!(!rep.good);
        let w = rep.witness.unwrap();
        // First full-rank 1x2 matrix, first K, which carries all the mass.
        assert_eq!(w.m, Mat::from_rows(&f, &[[0, 1]]).unwrap());
        assert_eq!(w.k, Mat::zeros(&f, 1, 3));
        assert_eq!(w.probability, r(1, 1));
        let (a, _) = binary_2x2_mrd_pair();
        assert!(k_good(&MatrixDistribution::uniform_over_code(&a).unwrap(), 1).unwrap());
        assert!(is_k_good(&full, 3, DEFAULT_CAP).is_err());
    }

    #[test]
    fn full_rank_probabilities() {
        let f = gf2();
        let g = gabidulin(3, 2, 1, &f, DEFAULT_CAP).unwrap();
        let d = MatrixDistribution::uniform_over_code(&g).unwrap();
        assert_eq!(d.full_rank_probability(), r(7, 8));
        let full = MatrixDistribution::uniform_full(&f, 2, 3, DEFAULT_CAP).unwrap();
        assert_eq!(full.full_rank_probability(), r(21, 32));
        let a = Mat::from_rows(&f, &[[1, 0], [0, 1], [0, 0]]).unwrap();
        assert_eq!(MatrixDistribution::point_mass(&a).full_rank_probability(), r(1, 1));
    }

    #[test]
    fn text_round_trip() {
        let f = gf2();
        let d = MatrixDistribution::from_weights(
            &f,
            1,
            2,
            [(Mat::from_rows(&f, &[[0, 1]]).unwrap(), r(1, 3)), (Mat::from_rows(&f, &[[1, 1]]).unwrap(), r(2, 3))],
        )
        .unwrap();
        let text = d.to_text();
        assert_eq!(text, "# q=2 m=1 n=2\nw 1/3\n0 1\n\nw 2/3\n1 1\n");
        assert_eq!(MatrixDistribution::from_text(&text).unwrap(), d);
        assert!(MatrixDistribution::from_text("# q=2 m=1 n=2\nw 1/2\n0 1\n").is_err());
    }

    #[test]
    fn compose_identity_and_support_formula() {
        let f = gf2();
        let (a, _) = binary_2x2_mrd_pair();
        let da = MatrixDistribution::uniform_over_code(&a).unwrap();
        let i = MatrixDistribution::point_mass(&Mat::identity(&f, 2));
        let zero = MatrixDistribution::point_mass(&Mat::zeros(&f, 2, 2));
        assert_eq!(compose(&da, &JointPqb::independent(&i, &i, &zero)).unwrap(), da);
        let full = MatrixDistribution::uniform_full(&f, 2, 2, DEFAULT_CAP).unwrap();
        let c = compose(&da, &JointPqb::independent(&i, &i, &full)).unwrap();
        assert!(k_good(&c, 1).unwrap());
        assert_eq!(c.support_size(), 16);
        let bad = JointPqb::independent(&zero, &i, &zero);
        assert_eq!(compose(&da, &bad), Err(Error::NotFullRankSupport));
    }
}
