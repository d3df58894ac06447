//! Random codes built from k-good matrices: independence of codeword maps,
//! k-wise intersecting codes, and extraction of F-sets.
//!
//! Vectors are slices of [`FieldElement`]; a codeword map sends `u` in
//! `F_q^m` to `u A` in `F_q^n`.

use std::collections::{BTreeSet, HashMap};

use num::rational::BigRational;
use num::{BigInt, One, ToPrimitive, Zero};
use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::distributions::{is_k_good, recip, weight_to_f64, MatrixDistribution, Weight};
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::matrix::{space_size, Mat, DEFAULT_CAP};

/// Exact sweeps up to this many elementary events; Monte Carlo beyond.
pub const EXACT_EVENT_LIMIT: u128 = 1 << 28;

/// Trials per independently seeded chunk of a Monte Carlo run.
const CHUNK: u64 = 4096;

pub type Vector = Vec<FieldElement>;

/// A family of nonempty subsets of `F_q^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternFamily {
    pub k: usize,
    pub sets: Vec<BTreeSet<Vector>>,
}

impl PatternFamily {
    pub fn new(field: &FieldSpec, k: usize, sets: Vec<BTreeSet<Vector>>) -> Result<PatternFamily> {
        for s in &sets {
            if s.is_empty() {
                return Err(Error::ParameterOutOfRange("pattern family members must be nonempty".into()));
            }
            if s.iter().any(|v| v.len() != k || v.iter().any(|&e| !field.contains(e))) {
                return Err(Error::ShapeMismatch(format!("pattern is not a vector of F_{}^{k}", field.order())));
            }
        }
        Ok(PatternFamily { k, sets })
    }

    fn from_u16(field: &FieldSpec, k: usize, sets: &[&[&[u16]]]) -> Result<PatternFamily> {
        let sets = sets
            .iter()
            .map(|s| s.iter().map(|v| v.iter().map(|&x| FieldElement(x)).collect()).collect())
            .collect();
        PatternFamily::new(field, k, sets)
    }

    /// All singletons of `F_q^k`; its F-sets are the k-independent families.
    pub fn singletons(field: &FieldSpec, k: usize) -> Result<PatternFamily> {
        let all = crate::matrix::enumerate(field, 1, k, DEFAULT_CAP)?;
        PatternFamily::new(field, k, all.map(|v| BTreeSet::from([v.row(0).to_vec()])).collect())
    }

    pub fn min_size(&self) -> usize {
        self.sets.iter().map(BTreeSet::len).min().unwrap_or(0)
    }
}

/// The family whose F-sets in `F_2^n` are the (2,1)-separating systems.
pub fn separating_2_1() -> PatternFamily {
    let f = FieldSpec::prime(2).expect("prime");
    PatternFamily::from_u16(
        &f,
        3,
        &[&[&[0, 0, 1], &[1, 1, 0]], &[&[0, 1, 0], &[1, 0, 1]], &[&[1, 0, 0], &[0, 1, 1]]],
    )
    .expect("valid family")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VectorProperty {
    /// Any `k` of the vectors are linearly independent.
    AnyKIndependent(usize),
    /// No `k + 1` of the vectors lie on a `(k-1)`-flat of `AG(m, q)`.
    Cap(usize),
}

impl VectorProperty {
    pub fn k(self) -> usize {
        match self {
            VectorProperty::AnyKIndependent(k) | VectorProperty::Cap(k) => k,
        }
    }
}

/// Vectors `u_1, ..., u_M` of `F_q^m` with a verified property.
#[derive(Debug, Clone)]
pub struct VectorSet {
    field: FieldSpec,
    m: usize,
    vectors: Vec<Vector>,
    property: VectorProperty,
}

fn subsets(len: usize, size: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    fn go(start: usize, len: usize, size: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == size {
            return visit(cur);
        }
        for i in start..len {
            if len - i < size - cur.len() {
                break;
            }
            cur.push(i);
            let ok = go(i + 1, len, size, cur, visit);
            cur.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    go(0, len, size, &mut Vec::new(), &mut visit)
}

fn rank_of(field: &FieldSpec, rows: &[&Vector]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let width = rows[0].len();
    Mat::new(field, rows.len(), width, rows.iter().flat_map(|r| r.iter().copied()).collect())
        .expect("equal lengths")
        .rank()
}

impl VectorSet {
    pub fn new(field: &FieldSpec, m: usize, vectors: Vec<Vector>, property: VectorProperty) -> Result<VectorSet> {
        if vectors.iter().any(|v| v.len() != m || v.iter().any(|&e| !field.contains(e))) {
            return Err(Error::ShapeMismatch(format!("vectors must lie in F_{}^{m}", field.order())));
        }
        let k = property.k();
        if k == 0 {
            return Err(Error::ParameterOutOfRange("k must be at least 1".into()));
        }
        let distinct: BTreeSet<&Vector> = vectors.iter().collect();
        if distinct.len() != vectors.len() {
            return Err(Error::PropertyNotVerified("vectors are not distinct".into()));
        }
        let ok = match property {
            VectorProperty::AnyKIndependent(k) => {
                subsets(vectors.len(), k.min(vectors.len()), |idx| {
                    let rows: Vec<&Vector> = idx.iter().map(|&i| &vectors[i]).collect();
                    rank_of(field, &rows) == rows.len()
                })
            }
            VectorProperty::Cap(k) => subsets(vectors.len(), (k + 1).min(vectors.len()), |idx| {
                let diffs: Vec<Vector> = idx[1..]
                    .iter()
                    .map(|&i| vectors[i].iter().zip(&vectors[idx[0]]).map(|(&a, &b)| field.sub(a, b)).collect())
                    .collect();
                rank_of(field, &diffs.iter().collect::<Vec<_>>()) == diffs.len()
            }),
        };
        if !ok {
            return Err(Error::PropertyNotVerified(format!("{property:?}")));
        }
        Ok(VectorSet { field: field.clone(), m, vectors, property })
    }

    /// All nonzero vectors of `F_q^m` (any two independent when `q = 2`).
    pub fn nonzero(field: &FieldSpec, m: usize, property: VectorProperty) -> Result<VectorSet> {
        let vs = crate::matrix::enumerate(field, 1, m, DEFAULT_CAP)?.filter(|v| !v.is_zero()).map(|v| v.row(0).to_vec()).collect();
        VectorSet::new(field, m, vs, property)
    }

    /// All of `F_q^m`.
    pub fn all(field: &FieldSpec, m: usize, property: VectorProperty) -> Result<VectorSet> {
        let vs = crate::matrix::enumerate(field, 1, m, DEFAULT_CAP)?.map(|v| v.row(0).to_vec()).collect();
        VectorSet::new(field, m, vs, property)
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn property(&self) -> VectorProperty {
        self.property
    }

    pub fn dimension(&self) -> usize {
        self.m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `i -> u_i A` on k-tuples.
    Linear,
    /// `i -> u_i A + v` with `v` uniform and independent, on (k+1)-tuples.
    Affine,
}

/// A violation found by [`joint_law_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JointWitness {
    pub indices: Vec<usize>,
    pub values: Vec<Vec<u16>>,
    pub probability: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JointLawReport {
    pub holds: bool,
    pub expected: String,
    pub tuples: usize,
    pub witness: Option<JointWitness>,
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Exact verification that the codeword map has the product law on every
/// admissible tuple of distinct indices.
pub fn joint_law_check(d: &MatrixDistribution, u: &VectorSet, mode: Mode) -> Result<JointLawReport> {
    let k = u.property.k();
    let (m, n) = d.shape();
    if u.m != m || u.field != *d.field() {
        return Err(Error::ShapeMismatch(format!("vectors of length {} for {m}x{n} matrices", u.m)));
    }
    match (mode, u.property) {
        (Mode::Linear, VectorProperty::AnyKIndependent(_)) | (Mode::Affine, VectorProperty::Cap(_)) => {}
        _ => return Err(Error::PropertyNotVerified(format!("{:?} does not fit {mode:?} mode", u.property))),
    }
    let good = is_k_good(d, k, DEFAULT_CAP)?;
    if !good.good {
        return Err(Error::PropertyNotVerified(format!("distribution is not {k}-good")));
    }
    let arity = match mode {
        Mode::Linear => k,
        Mode::Affine => k + 1,
    };
    let q = d.field().order() as u128;
    let shifts: Vec<Mat> = match mode {
        Mode::Linear => vec![Mat::zeros(d.field(), 1, n)],
        Mode::Affine => crate::matrix::enumerate(d.field(), 1, n, DEFAULT_CAP)?.collect(),
    };
    let tuples = binomial(u.vectors.len(), arity);
    let events = tuples.saturating_mul(d.support_size() as u128).saturating_mul(shifts.len() as u128);
    if events > EXACT_EVENT_LIMIT {
        return Err(Error::EnumerationTooLarge { requested: events, cap: EXACT_EVENT_LIMIT });
    }
    let values = q.pow((arity * n) as u32);
    let expected = recip(values);
    let shift_weight = recip(shifts.len() as u128);
    let mut index_tuples = Vec::new();
    subsets(u.vectors.len(), arity, |idx| {
        index_tuples.push(idx.to_vec());
        true
    });
    let stack = |idx: &[usize]| {
        let rows: Vec<FieldElement> = idx.iter().flat_map(|&i| u.vectors[i].iter().copied()).collect();
        Mat::new(d.field(), idx.len(), m, rows).expect("vectors have length m")
    };
    let witness = index_tuples.par_iter().find_map_first(|idx| {
        let mm = stack(idx);
        let mut law: HashMap<u128, Weight> = HashMap::new();
        for (a, w) in d.weights() {
            let image = mm.matmul(a).expect("shapes agree");
            for v in &shifts {
                let shifted = Mat::from_fn(d.field(), arity, n, |i, j| d.field().add(image.get(i, j), v.get(0, j)));
                *law.entry(shifted.index()).or_insert_with(Weight::zero) += w * &shift_weight;
            }
        }
        let first_bad = (0..values).find(|i| law.get(i).map_or(true, |p| *p != expected))?;
        let p = law.get(&first_bad).cloned().unwrap_or_else(Weight::zero);
        let vals = Mat::from_index(d.field(), arity, n, first_bad);
        Some(JointWitness {
            indices: idx.clone(),
            values: (0..arity).map(|i| vals.row(i).iter().map(|e| e.0).collect()).collect(),
            probability: p.to_string(),
        })
    });
    Ok(JointLawReport { holds: witness.is_none(), expected: expected.to_string(), tuples: index_tuples.len(), witness })
}

/// Whether any `k` linearly independent codewords of the row space of
/// `generator` share a position where all of them are nonzero.
pub fn is_k_wise_intersecting(generator: &Mat, k: usize, cap: u128) -> Result<bool> {
    if k == 0 {
        return Err(Error::ParameterOutOfRange("k must be at least 1".into()));
    }
    let f = generator.field();
    let basis = generator.row_space();
    let dim = basis.rows();
    if dim < k {
        return Ok(true);
    }
    let n = generator.cols();
    if n > 128 {
        return Err(Error::ParameterOutOfRange("code length above 128".into()));
    }
    let words: Vec<Vector> = crate::matrix::enumerate(f, 1, dim, cap)?
        .filter(|c| !c.is_zero())
        .map(|c| c.matmul(&basis).expect("shapes agree").row(0).to_vec())
        .collect();
    let count = binomial(words.len(), k);
    if count > cap {
        return Err(Error::EnumerationTooLarge { requested: count, cap });
    }
    let support: Vec<u128> = words.iter().map(|w| (0..n).filter(|&j| !w[j].is_zero()).fold(0u128, |a, j| a | 1 << j)).collect();
    Ok(subsets(words.len(), k, |idx| {
        let common = idx.iter().fold(u128::MAX, |a, &i| a & support[i]);
        if common != 0 {
            return true;
        }
        let rows: Vec<&Vector> = idx.iter().map(|&i| &words[i]).collect();
        rank_of(f, &rows) < k
    }))
}

/// `(1 - (1 - 1/q)^k)^n prod_{i<k} (q^m - q^i)`, the bound on the
/// probability that the code spanned by a k-good matrix is not k-wise
/// intersecting.
pub fn intersecting_failure_bound(m: usize, n: usize, q: u32, k: usize) -> Weight {
    let q_r = BigRational::from_integer(BigInt::from(q));
    let miss = BigRational::one() - num::pow(BigRational::one() - q_r.recip(), k);
    let tuples: BigInt = (0..k).map(|i| BigInt::from(q).pow(m as u32) - BigInt::from(q).pow(i as u32)).product();
    num::pow(miss, n) * BigRational::from_integer(tuples)
}

/// The rate below which the bound decays: `1 - log_q(q^k - (q-1)^k) / k`.
pub fn intersecting_rate_threshold(q: u32, k: usize) -> f64 {
    let q = q as f64;
    1.0 - (q.powi(k as i32) - (q - 1.0).powi(k as i32)).log(q) / k as f64
}

/// The rate condition for F-set extraction,
/// `min{(k - log_q(q^k - min|S|)) / (k - 1), 1}`; reporting only.
pub fn fset_rate_threshold(q: u32, family: &PatternFamily) -> f64 {
    let qf = q as f64;
    let k = family.k as f64;
    let inner = qf.powf(k) - family.min_size() as f64;
    ((k - inner.log(qf)) / (k - 1.0)).min(1.0)
}

/// Exact `P{row space of A is not k-wise intersecting}`.
pub fn intersecting_failure_exact(d: &MatrixDistribution, k: usize) -> Result<Weight> {
    let parts: Vec<Result<Option<Weight>>> = d
        .weights()
        .par_iter()
        .map(|(a, w)| Ok((!is_k_wise_intersecting(a, k, DEFAULT_CAP)?).then(|| w.clone())))
        .collect();
    let mut total = Weight::zero();
    for p in parts {
        if let Some(w) = p? {
            total += w;
        }
    }
    Ok(total)
}

/// Monte Carlo frequency `(failures, trials)` of non-intersecting row spaces.
/// Chunks of trials use seeds derived from `(seed, chunk)`, so the result
/// does not depend on the thread count.
pub fn intersecting_failure_estimate(d: &MatrixDistribution, k: usize, trials: u64, seed: u64) -> Result<(u64, u64)> {
    let support: Vec<&Mat> = d.support().collect();
    let weights: Vec<f64> = d.weights().values().map(weight_to_f64).collect();
    let sampler = WeightedIndex::new(&weights).map_err(|e| Error::Internal(e.to_string()))?;
    let verdicts: Vec<Result<bool>> = support.par_iter().map(|a| is_k_wise_intersecting(a, k, DEFAULT_CAP)).collect();
    let fails: Vec<bool> = verdicts.into_iter().map(|r| r.map(|ok| !ok)).collect::<Result<_>>()?;
    let chunks = trials.div_ceil(CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c + 1);
            let len = CHUNK.min(trials - c * CHUNK);
            (0..len).filter(|_| fails[sampler.sample(&mut rng)]).count() as u64
        })
        .sum();
    Ok((hits, trials))
}

/// Exact value when the sweep is small, Monte Carlo otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureReport {
    pub bound: String,
    pub exact: Option<String>,
    pub estimate: Option<(u64, u64)>,
    pub within_bound: bool,
}

pub fn intersecting_failure(d: &MatrixDistribution, k: usize, trials: u64, seed: u64) -> Result<FailureReport> {
    if !is_k_good(d, k, DEFAULT_CAP)?.good {
        return Err(Error::PropertyNotVerified(format!("distribution is not {k}-good")));
    }
    let (m, n) = d.shape();
    let bound = intersecting_failure_bound(m, n, d.field().order(), k);
    let events = (d.support_size() as u128).saturating_mul(space_size(d.field().order(), 1, m).saturating_pow(k as u32));
    if events <= EXACT_EVENT_LIMIT {
        let p = intersecting_failure_exact(d, k)?;
        return Ok(FailureReport { within_bound: p <= bound, bound: bound.to_string(), exact: Some(p.to_string()), estimate: None });
    }
    let (hits, t) = intersecting_failure_estimate(d, k, trials, seed)?;
    let freq = BigRational::new(hits.into(), t.max(1).into());
    Ok(FailureReport { within_bound: freq <= bound, bound: bound.to_string(), exact: None, estimate: Some((hits, t)) })
}

/// The column-pattern set of an ordered tuple of vectors.
pub fn column_patterns(tuple: &[&Vector]) -> BTreeSet<Vector> {
    let n = tuple.first().map_or(0, |v| v.len());
    (0..n).map(|j| tuple.iter().map(|v| v[j]).collect()).collect()
}

/// Visits every ordered tuple of `k` distinct indices below `len`; stops when
/// `visit` returns false.
fn ordered_tuples(len: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    fn go(len: usize, k: usize, cur: &mut Vec<usize>, used: &mut [bool], visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return visit(cur);
        }
        for i in 0..len {
            if used[i] {
                continue;
            }
            used[i] = true;
            cur.push(i);
            let ok = go(len, k, cur, used, visit);
            cur.pop();
            used[i] = false;
            if !ok {
                return false;
            }
        }
        true
    }
    go(len, k, &mut Vec::new(), &mut vec![false; len], &mut visit)
}

fn ordered_count(len: usize, k: usize) -> u128 {
    if k > len {
        return 0;
    }
    (0..k).fold(1u128, |a, i| a.saturating_mul((len - i) as u128))
}

/// Whether `c` (distinct vectors) is an F-set: every ordered k-tuple of
/// distinct elements has column patterns meeting every member of `family`.
pub fn is_f_set(c: &[Vector], family: &PatternFamily, cap: u128) -> Result<bool> {
    let distinct: BTreeSet<&Vector> = c.iter().collect();
    if distinct.len() != c.len() {
        return Ok(false);
    }
    let count = ordered_count(c.len(), family.k);
    if count > cap {
        return Err(Error::EnumerationTooLarge { requested: count, cap });
    }
    Ok(ordered_tuples(c.len(), family.k, |idx| {
        let tuple: Vec<&Vector> = idx.iter().map(|&i| &c[i]).collect();
        let w = column_patterns(&tuple);
        family.sets.iter().all(|s| !s.is_disjoint(&w))
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extraction {
    pub kept: Vec<Vec<u16>>,
    pub kept_indices: Vec<usize>,
    pub removed: usize,
    pub undesirable_tuples: usize,
    pub undesirable_pairs: usize,
}

/// Removes every component of an undesirable k-tuple (one whose column
/// patterns miss a member of `family`) or of a pair of equal vectors, and
/// checks that the rest is an F-set.
pub fn f_set_extract(c: &[Vector], family: &PatternFamily, cap: u128) -> Result<Extraction> {
    if let Some(v) = c.iter().find(|v| v.len() != c[0].len()) {
        return Err(Error::ShapeMismatch(format!("vector of length {} among length {}", v.len(), c[0].len())));
    }
    let count = ordered_count(c.len(), family.k);
    if count > cap {
        return Err(Error::EnumerationTooLarge { requested: count, cap });
    }
    let mut bad = vec![false; c.len()];
    let mut undesirable_tuples = 0;
    ordered_tuples(c.len(), family.k, |idx| {
        let tuple: Vec<&Vector> = idx.iter().map(|&i| &c[i]).collect();
        let w = column_patterns(&tuple);
        if family.sets.iter().any(|s| s.is_disjoint(&w)) {
            undesirable_tuples += 1;
            idx.iter().for_each(|&i| bad[i] = true);
        }
        true
    });
    let mut undesirable_pairs = 0;
    for i in 0..c.len() {
        for j in 0..c.len() {
            if i != j && c[i] == c[j] {
                undesirable_pairs += 1;
                bad[i] = true;
            }
        }
    }
    let kept_indices: Vec<usize> = (0..c.len()).filter(|&i| !bad[i]).collect();
    let kept: Vec<Vector> = kept_indices.iter().map(|&i| c[i].clone()).collect();
    if !is_f_set(&kept, family, cap)? {
        return Err(Error::Internal("extracted set is not an F-set".into()));
    }
    Ok(Extraction {
        kept: kept.iter().map(|v| v.iter().map(|e| e.0).collect()).collect(),
        kept_indices,
        removed: c.len() - kept.len(),
        undesirable_tuples,
        undesirable_pairs,
    })
}

/// `count` uniform vectors of `F_q^n` from a seeded generator.
pub fn random_vectors(field: &FieldSpec, n: usize, count: usize, rng: &mut impl Rng) -> Vec<Vector> {
    (0..count).map(|_| (0..n).map(|_| FieldElement(rng.gen_range(0..field.order()) as u16)).collect()).collect()
}

/// Floating-point view of a frequency, for reports.
pub fn frequency(hits: u64, trials: u64) -> f64 {
    BigRational::new(hits.into(), trials.max(1).into()).to_f64().unwrap_or(f64::NAN)
}
