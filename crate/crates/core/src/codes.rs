//! Rank-metric codes: rank distance, MRD checks, Gabidulin codes, matrix
//! fields and the complete-mapping correspondence for `(m, 2, 1)` codes.

use std::collections::{BTreeSet, HashSet};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counting::SubspaceIterator;
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::matrix::{self, enumerate_full_rank, Mat, DEFAULT_CAP};

/// Codes up to this size get both MRD criteria.
pub const CROSS_CHECK_LIMIT: usize = 1 << 16;
/// Linear codes up to this size also get the pairwise distance scan.
const PAIRWISE_CHECK_LIMIT: usize = 1 << 10;

/// A set of `m x n` matrices, stored sorted in canonical order.
#[derive(Clone)]
pub struct MatrixCode {
    field: FieldSpec,
    m: usize,
    n: usize,
    words: Vec<Mat>,
    linear: bool,
    distance: OnceLock<Option<usize>>,
}

impl std::fmt::Debug for MatrixCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MatrixCode")
            .field("q", &self.field.order())
            .field("m", &self.m)
            .field("n", &self.n)
            .field("size", &self.words.len())
            .field("linear", &self.linear)
            .finish()
    }
}

impl PartialEq for MatrixCode {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.n == other.n && self.words == other.words
    }
}

impl Eq for MatrixCode {}

impl MatrixCode {
    /// Builds a code from distinct codewords of one shape.
    pub fn new(field: &FieldSpec, m: usize, n: usize, mut words: Vec<Mat>) -> Result<MatrixCode> {
        for w in &words {
            if w.field() != field {
                return Err(Error::FieldMismatch);
            }
            if w.shape() != (m, n) {
                return Err(Error::ShapeMismatch(format!(
                    "codeword of shape {}x{} in a {m}x{n} code",
                    w.rows(),
                    w.cols()
                )));
            }
        }
        words.sort();
        if words.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::ParameterOutOfRange("codewords must be distinct".into()));
        }
        let linear = detect_linear(field, m, n, &words);
        Ok(MatrixCode { field: field.clone(), m, n, words, linear, distance: OnceLock::new() })
    }

    /// Builds a code from rows-of-indices literals.
    pub fn from_literals(field: &FieldSpec, words: &[&[&[u16]]]) -> Result<MatrixCode> {
        let mats = words.iter().map(|w| Mat::from_rows(field, w)).collect::<Result<Vec<_>>>()?;
        let (m, n) = mats.first().map_or((0, 0), |a| a.shape());
        MatrixCode::new(field, m, n, mats)
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

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn codewords(&self) -> &[Mat] {
        &self.words
    }

    pub fn into_codewords(self) -> Vec<Mat> {
        self.words
    }

    pub fn contains(&self, a: &Mat) -> bool {
        self.words.binary_search(a).is_ok()
    }

    /// Closed under addition and scalar multiplication.
    pub fn is_linear(&self) -> bool {
        self.linear
    }

    pub fn transpose(&self) -> MatrixCode {
        let words = self.words.iter().map(Mat::transpose).collect();
        MatrixCode::new(&self.field, self.n, self.m, words).expect("transpose preserves validity")
    }

    /// Minimum rank of `X - Y` over distinct codewords.
    ///
    /// Linear codes use the minimum nonzero rank, cross-checked against the
    /// pairwise scan when the code is small.
    pub fn rank_distance(&self) -> Result<usize> {
        if self.words.len() < 2 {
            return Err(Error::CodeTooSmall);
        }
        let d = *self.distance.get_or_init(|| {
            if self.linear {
                Some(self.rank_distance_linear())
            } else {
                Some(self.rank_distance_pairwise())
            }
        });
        let d = d.expect("computed");
        if self.linear && self.words.len() <= PAIRWISE_CHECK_LIMIT {
            let p = self.rank_distance_pairwise();
            if p != d {
                return Err(Error::Internal(format!(
                    "linear rank distance {d} disagrees with pairwise scan {p}"
                )));
            }
        }
        Ok(d)
    }

    /// Pairwise scan over all unordered pairs.
    pub fn rank_distance_pairwise(&self) -> usize {
        self.closest_pair().map_or(usize::MAX, |(_, _, r)| r)
    }

    /// Minimum rank of a nonzero codeword (meaningful for linear codes).
    pub fn rank_distance_linear(&self) -> usize {
        self.words.iter().filter(|w| !w.is_zero()).map(Mat::rank).min().unwrap_or(usize::MAX)
    }

    /// The canonically first pair `(i, j)`, `i < j`, attaining the minimum
    /// difference rank.
    pub fn closest_pair(&self) -> Option<(usize, usize, usize)> {
        let w = &self.words;
        (0..w.len())
            .into_par_iter()
            .filter_map(|i| {
                (i + 1..w.len())
                    .map(|j| (i, j, w[i].sub(&w[j]).expect("same shape").rank()))
                    .min_by_key(|&(_, _, r)| r)
            })
            .min_by_key(|&(i, j, r)| (r, i, j))
    }

    /// JSON sidecar describing the code.
    pub fn sidecar(&self, k: usize) -> Result<CodeSidecar> {
        let check = is_mrd(self, k)?;
        Ok(CodeSidecar {
            m: self.m,
            n: self.n,
            q: self.field.order(),
            k,
            is_mrd: check.is_mrd,
            rank_distance: check.rank_distance,
            linear: self.linear,
        })
    }

    /// Text-format serialisation of the codewords.
    pub fn to_text(&self) -> String {
        matrix::write_matrices(&self.field, self.m, self.n, &self.words)
    }
}

fn detect_linear(field: &FieldSpec, m: usize, n: usize, words: &[Mat]) -> bool {
    if words.is_empty() || !words[0].is_zero() {
        return false;
    }
    // A set containing 0 is a subspace iff its size is q^dim(span).
    let flat: Vec<FieldElement> = words.iter().flat_map(|w| w.entries().iter().copied()).collect();
    let span = Mat::new(field, words.len(), m * n, flat).expect("consistent").rank();
    let q = field.order() as u128;
    q.checked_pow(span as u32).is_some_and(|s| s == words.len() as u128)
}

/// Serialisable summary of a code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSidecar {
    pub m: usize,
    pub n: usize,
    pub q: u32,
    pub k: usize,
    pub is_mrd: bool,
    pub rank_distance: Option<usize>,
    pub linear: bool,
}

/// Why a set failed the MRD test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MrdWitness {
    /// The code has the wrong number of codewords.
    Size { expected: u128, actual: usize },
    /// Two codewords whose difference has rank below `min(m,n) - k + 1`.
    Pair { x: Mat, y: Mat, rank: usize },
}

/// Outcome of [`is_mrd`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MrdCheck {
    pub is_mrd: bool,
    pub rank_distance: Option<usize>,
    /// Whether the projection criterion was also evaluated.
    pub cross_checked: bool,
    pub witness: Option<MrdWitness>,
}

/// Whether `code` is an `(m, n, k)` MRD code.
///
/// The definition (size `q^{k max(m,n)}` and rank distance `min(m,n) - k + 1`)
/// is always checked. For codes up to [`CROSS_CHECK_LIMIT`] words the
/// projection criterion is evaluated too: every full-rank `k x m` matrix `B`
/// must map the code onto `F_q^{k x n}` (for `m > n`, the same on the
/// transpose). Disagreement is reported as [`Error::Internal`].
pub fn is_mrd(code: &MatrixCode, k: usize) -> Result<MrdCheck> {
    let (m, n) = (code.m, code.n);
    if k < 1 || k > m.min(n) {
        return Err(Error::ParameterOutOfRange(format!("k={k} outside 1..=min(m,n)={}", m.min(n))));
    }
    let q = code.field.order() as u128;
    let expected = q.checked_pow((k * m.max(n)) as u32).unwrap_or(u128::MAX);
    let rank_distance = if code.len() >= 2 { Some(code.rank_distance()?) } else { None };
    let need = m.min(n) - k + 1;
    let by_definition = code.len() as u128 == expected && rank_distance == Some(need);
    let witness = if code.len() as u128 != expected {
        Some(MrdWitness::Size { expected, actual: code.len() })
    } else if !by_definition {
        let (i, j, rank) = code.closest_pair().expect("at least two codewords");
        Some(MrdWitness::Pair { x: code.words[i].clone(), y: code.words[j].clone(), rank })
    } else {
        None
    };
    let cross_checked = code.len() <= CROSS_CHECK_LIMIT;
    if cross_checked {
        let by_projection = if m <= n {
            projection_criterion(code, k, expected)
        } else {
            projection_criterion(&code.transpose(), k, expected)
        };
        if by_projection != by_definition {
            return Err(Error::Internal(format!(
                "MRD criteria disagree: definition {by_definition}, projection {by_projection}"
            )));
        }
    }
    Ok(MrdCheck { is_mrd: by_definition, rank_distance, cross_checked, witness })
}

/// `|C| = q^{kn}` and `B C = F^{k x n}` for every rank-`k` `B` with `m <= n`.
/// Only the row space of `B` matters, so one `B` per `k`-subspace is tried.
fn projection_criterion(code: &MatrixCode, k: usize, expected: u128) -> bool {
    if code.len() as u128 != expected {
        return false;
    }
    let subspaces: Vec<Mat> = SubspaceIterator::new(&code.field, code.m, k).collect();
    subspaces.par_iter().all(|b| {
        let mut seen = HashSet::with_capacity(code.len());
        code.words.iter().all(|w| seen.insert(b.matmul(w).expect("shapes agree").index()))
    })
}

/// The `(m, n, k)` Gabidulin code over `base`.
///
/// For `m >= n` every map `x -> sum_{i<k} a_i x^{q^i}` on GF(q^m) becomes the
/// matrix whose row `i` holds the coordinates of `L(a^i)` in the polynomial
/// basis `1, a, ..., a^{m-1}`; the last `m - n` columns are dropped. For
/// `m < n` the `(n, m, k)` code is built and transposed.
pub fn gabidulin(m: usize, n: usize, k: usize, base: &FieldSpec, cap: u128) -> Result<MatrixCode> {
    if m == 0 || n == 0 || k < 1 || k > m.min(n) {
        return Err(Error::ParameterOutOfRange(format!("need 1 <= k <= min(m,n), got m={m} n={n} k={k}")));
    }
    if m < n {
        return Ok(gabidulin(n, m, k, base, cap)?.transpose());
    }
    let q = base.order() as u128;
    let size = q.checked_pow((k * m) as u32).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::EnumerationTooLarge { requested: size, cap });
    }
    let ext = FieldSpec::extension(base, m as u32, None)?;
    let alpha = ext.basis_generator();
    let basis: Vec<FieldElement> = (0..m).map(|i| ext.pow(alpha, i as u64)).collect();
    // powers[i][j] = (a^i)^{q^j}
    let frob: Vec<Vec<FieldElement>> = basis
        .iter()
        .map(|&b| (0..k).map(|j| ext.pow(b, (q as u64).pow(j as u32))).collect())
        .collect();
    let qm = ext.order() as u128;
    let mut words = Vec::with_capacity(size as usize);
    for idx in 0..size {
        let mut coeffs = vec![FieldElement::ZERO; k];
        let mut x = idx;
        for c in coeffs.iter_mut().rev() {
            *c = FieldElement((x % qm) as u16);
            x /= qm;
        }
        let mut a = Mat::zeros(base, m, n);
        for (i, fr) in frob.iter().enumerate() {
            let image = coeffs
                .iter()
                .zip(fr)
                .fold(FieldElement::ZERO, |acc, (&c, &p)| ext.add(acc, ext.mul(c, p)));
            for (j, &c) in ext.coords(image).iter().take(n).enumerate() {
                a.set(i, j, c);
            }
        }
        words.push(a);
    }
    MatrixCode::new(base, m, n, words)
}

/// The subfield `{0, I, K, K^2, ...}` of `F_q^{m x m}`, with `K` the matrix
/// whose column `j` holds the coordinates of `a^{j+1}`.
#[derive(Debug, Clone)]
pub struct MatrixField {
    base: FieldSpec,
    ext: FieldSpec,
    m: usize,
    k: Mat,
    elements: Vec<Mat>,
}

impl MatrixField {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    /// GF(q^m) realised over the base field.
    pub fn extension(&self) -> &FieldSpec {
        &self.ext
    }

    pub fn companion(&self) -> &Mat {
        &self.k
    }

    /// `0, I, g, g^2, ...` for the primitive element `g` of the extension.
    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    /// The matrix of `x -> x b` acting on column coordinates (the transpose
    /// of the row-convention multiplication matrix).
    pub fn embed(&self, b: FieldElement) -> Mat {
        embed(&self.base, &self.ext, self.m, b)
    }

    /// Checks closure, size and invertibility.
    pub fn verify(&self) -> Result<()> {
        let set: HashSet<&Mat> = self.elements.iter().collect();
        let q = self.base.order() as usize;
        if set.len() != q.pow(self.m as u32) {
            return Err(Error::Internal("matrix field has the wrong size".into()));
        }
        for a in &self.elements {
            for b in &self.elements {
                if !set.contains(&a.add(b)?) || !set.contains(&a.matmul(b)?) {
                    return Err(Error::Internal("matrix field is not closed".into()));
                }
            }
            if !a.is_zero() && a.rank() != self.m {
                return Err(Error::Internal("nonzero element is singular".into()));
            }
        }
        Ok(())
    }
}

fn embed(base: &FieldSpec, ext: &FieldSpec, m: usize, b: FieldElement) -> Mat {
    let alpha = ext.basis_generator();
    let mut out = Mat::zeros(base, m, m);
    for i in 0..m {
        let image = ext.mul(ext.pow(alpha, i as u64), b);
        for (j, c) in ext.coords(image).into_iter().enumerate() {
            out.set(j, i, c);
        }
    }
    out
}

/// Builds the matrix field of order `q^m` over `base`.
pub fn matrix_field(m: usize, base: &FieldSpec) -> Result<MatrixField> {
    if m == 0 {
        return Err(Error::ParameterOutOfRange("m must be at least 1".into()));
    }
    let ext = FieldSpec::extension(base, m as u32, None)?;
    let k = embed(base, &ext, m, ext.basis_generator());
    let g = ext.primitive_element();
    let mut elements = vec![Mat::zeros(base, m, m)];
    for i in 0..ext.order() as u64 - 1 {
        elements.push(embed(base, &ext, m, ext.pow(g, i)));
    }
    Ok(MatrixField { base: base.clone(), ext, m, k, elements })
}

/// The `(m, n, 1)` MRD code `F A` for a full-rank `m x n` matrix `A`, `m >= n`.
pub fn mrd_from_field(field: &MatrixField, a: &Mat) -> Result<MatrixCode> {
    if a.rows() != field.m {
        return Err(Error::ShapeMismatch(format!("A has {} rows, field acts on {}", a.rows(), field.m)));
    }
    if a.cols() > a.rows() {
        return Err(Error::ParameterOutOfRange("need m >= n".into()));
    }
    if !a.is_full_rank() {
        return Err(Error::NotFullRank);
    }
    let words = field.elements.iter().map(|f| f.matmul(a)).collect::<Result<Vec<_>>>()?;
    MatrixCode::new(&field.base, a.rows(), a.cols(), words)
}

/// All distinct codes `F A` over full-rank `m x n` matrices `A`, in canonical order.
pub fn distinct_field_codes(field: &MatrixField, n: usize, cap: u128) -> Result<Vec<MatrixCode>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in enumerate_full_rank(&field.base, field.m, n, cap)? {
        let code = mrd_from_field(field, &a)?;
        if seen.insert(code.codewords().to_vec()) {
            out.push(code);
        }
    }
    out.sort_by(|x, y| x.codewords().cmp(y.codewords()));
    Ok(out)
}

/// A map `F_q^m -> F_q^m` as a table indexed by vector index (the canonical
/// index of the vector as an `m x 1` matrix).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorMap {
    field: FieldSpec,
    m: usize,
    table: Vec<u32>,
}

impl VectorMap {
    pub fn new(field: &FieldSpec, m: usize, table: Vec<u32>) -> Result<VectorMap> {
        let size = (field.order() as usize).pow(m as u32);
        if table.len() != size || table.iter().any(|&y| y as usize >= size) {
            return Err(Error::ParameterOutOfRange(format!("map table must have {size} entries below {size}")));
        }
        Ok(VectorMap { field: field.clone(), m, table })
    }

    /// The linear map `x -> x M` on row vectors.
    pub fn linear(mat: &Mat) -> Result<VectorMap> {
        if mat.rows() != mat.cols() {
            return Err(Error::ShapeMismatch("linear map needs a square matrix".into()));
        }
        let (f, m) = (mat.field(), mat.rows());
        let size = (f.order() as u128).pow(m as u32);
        let table = (0..size)
            .map(|x| {
                let v = Mat::from_index(f, 1, m, x);
                Mat::row_vector(f, &mat.left_apply(v.entries())).index() as u32
            })
            .collect();
        VectorMap::new(f, m, table)
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    fn vector(&self, x: u32) -> Mat {
        Mat::from_index(&self.field, self.m, 1, x as u128)
    }

    fn is_bijection_of(&self, g: impl Fn(u32) -> u32) -> bool {
        let mut seen = vec![false; self.table.len()];
        (0..self.table.len() as u32).all(|x| !std::mem::replace(&mut seen[g(x) as usize], true))
    }

    /// `x -> f(x) + c x` as a table.
    fn shifted(&self, c: FieldElement) -> impl Fn(u32) -> u32 + '_ {
        move |x| {
            let v = self.vector(x);
            let fx = self.vector(self.apply(x));
            fx.add(&v.scale(c)).expect("same shape").index() as u32
        }
    }

    pub fn is_bijection(&self) -> bool {
        self.is_bijection_of(|x| self.apply(x))
    }

    /// `f` and `x -> f(x) + x` are bijections.
    pub fn is_complete_mapping(&self) -> bool {
        self.is_bijection() && self.is_bijection_of(self.shifted(FieldElement::ONE))
    }

    /// `f` and `x -> f(x) - x` are bijections.
    pub fn is_orthomorphism(&self) -> bool {
        let minus_one = self.field.neg(FieldElement::ONE);
        self.is_bijection() && self.is_bijection_of(self.shifted(minus_one))
    }

    /// `x -> f(x) + c x` is a bijection for every scalar `c`.
    pub fn all_shifts_bijective(&self) -> bool {
        self.field.elements().all(|c| self.is_bijection_of(self.shifted(c)))
    }

    /// Whether `f(x) = x M + b` for some matrix `M` and vector `b`.
    pub fn is_affine(&self) -> bool {
        let b = self.vector(self.apply(0));
        let q = self.field.order() as u128;
        let unit = |i: usize| q.pow((self.m - 1 - i) as u32) as u32;
        let rows: Vec<Mat> =
            (0..self.m).map(|i| self.vector(self.apply(unit(i))).sub(&b).expect("same shape")).collect();
        (0..self.table.len() as u32).all(|x| {
            let v = self.vector(x);
            let mut acc = b.clone();
            for (i, r) in rows.iter().enumerate() {
                acc = acc.add(&r.scale(v.get(i, 0))).expect("same shape");
            }
            acc.index() as u32 == self.apply(x)
        })
    }
}

/// Reads an `(m, 2, 1)` code as `{(x | f(x))}`.
pub fn mrd_to_map(code: &MatrixCode) -> Result<VectorMap> {
    if code.n != 2 || code.m < 2 {
        return Err(Error::NotRepresentable(format!("need an m x 2 code with m >= 2, got {}x{}", code.m, code.n)));
    }
    let size = (code.field.order() as usize).pow(code.m as u32);
    let mut table = vec![u32::MAX; size];
    for w in &code.words {
        let x = Mat::from_fn(&code.field, code.m, 1, |i, _| w.get(i, 0)).index() as usize;
        let y = Mat::from_fn(&code.field, code.m, 1, |i, _| w.get(i, 1)).index() as u32;
        if table[x] != u32::MAX {
            return Err(Error::NotRepresentable("two codewords share a first column".into()));
        }
        table[x] = y;
    }
    if table.contains(&u32::MAX) {
        return Err(Error::NotRepresentable("first columns do not exhaust F_q^m".into()));
    }
    VectorMap::new(&code.field, code.m, table)
}

/// The code `{(x | f(x))}`.
pub fn map_to_mrd(f: &VectorMap) -> Result<MatrixCode> {
    let words = (0..f.table.len() as u32)
        .map(|x| {
            let (v, fx) = (f.vector(x), f.vector(f.apply(x)));
            Mat::from_fn(&f.field, f.m, 2, |i, j| if j == 0 { v.get(i, 0) } else { fx.get(i, 0) })
        })
        .collect();
    MatrixCode::new(&f.field, f.m, 2, words)
}

/// The first complete mapping of `F_q^m` in lexicographic table order,
/// optionally skipping affine maps. Exhaustive backtracking.
pub fn find_complete_mapping(field: &FieldSpec, m: usize, nonlinear: bool) -> Option<VectorMap> {
    let size = (field.order() as usize).pow(m as u32);
    let sum: Vec<Vec<u32>> = (0..size as u128)
        .map(|x| {
            let v = Mat::from_index(field, m, 1, x);
            (0..size as u128)
                .map(|y| v.add(&Mat::from_index(field, m, 1, y)).expect("same shape").index() as u32)
                .collect()
        })
        .collect();
    let mut table = vec![0u32; size];
    let mut used = vec![false; size];
    let mut used_sum = vec![false; size];
    fn go(
        x: usize,
        field: &FieldSpec,
        m: usize,
        nonlinear: bool,
        sum: &[Vec<u32>],
        table: &mut Vec<u32>,
        used: &mut Vec<bool>,
        used_sum: &mut Vec<bool>,
    ) -> Option<VectorMap> {
        if x == table.len() {
            let f = VectorMap::new(field, m, table.clone()).expect("valid table");
            return (!nonlinear || !f.is_affine()).then_some(f);
        }
        for y in 0..table.len() {
            let s = sum[y][x] as usize;
            if used[y] || used_sum[s] {
                continue;
            }
            used[y] = true;
            used_sum[s] = true;
            table[x] = y as u32;
            if let Some(f) = go(x + 1, field, m, nonlinear, sum, table, used, used_sum) {
                return Some(f);
            }
            used[y] = false;
            used_sum[s] = false;
        }
        None
    }
    go(0, field, m, nonlinear, &sum, &mut table, &mut used, &mut used_sum)
}

/// The two linear `(2, 2, 1)` binary MRD codes through `0`.
pub fn binary_2x2_mrd_pair() -> (MatrixCode, MatrixCode) {
    let f = FieldSpec::prime(2).expect("2 is prime");
    let a = MatrixCode::from_literals(
        &f,
        &[&[&[0, 0], &[0, 0]], &[&[1, 0], &[0, 1]], &[&[1, 1], &[1, 0]], &[&[0, 1], &[1, 1]]],
    )
    .expect("valid");
    let a2 = MatrixCode::from_literals(
        &f,
        &[&[&[0, 0], &[0, 0]], &[&[0, 1], &[1, 0]], &[&[1, 0], &[1, 1]], &[&[1, 1], &[0, 1]]],
    )
    .expect("valid");
    (a, a2)
}

/// The full space `F_q^{m x n}` as a code.
pub fn full_space(field: &FieldSpec, m: usize, n: usize) -> Result<MatrixCode> {
    MatrixCode::new(field, m, n, matrix::enumerate(field, m, n, DEFAULT_CAP)?.collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn distance_of_small_codes() {
        let f = gf2();
        assert_eq!(full_space(&f, 2, 2).unwrap().rank_distance().unwrap(), 1);
        let (a, a2) = binary_2x2_mrd_pair();
        assert_eq!(a.rank_distance().unwrap(), 2);
        assert_eq!(a2.rank_distance().unwrap(), 2);
        assert!(a.is_linear() && a2.is_linear());
        let single = MatrixCode::new(&f, 2, 2, vec![Mat::zeros(&f, 2, 2)]).unwrap();
        assert_eq!(single.rank_distance(), Err(Error::CodeTooSmall));
    }

    #[test]
    fn mrd_checks() {
        let f = gf2();
        let (a, _) = binary_2x2_mrd_pair();
        let c = is_mrd(&a, 1).unwrap();
        assert!(c.is_mrd && c.cross_checked && c.witness.is_none());
        assert!(is_mrd(&full_space(&f, 2, 3).unwrap(), 2).unwrap().is_mrd);
        assert!(is_mrd(&a, 0).is_err());
        assert!(is_mrd(&a, 3).is_err());

        // Replace I by I + E_11, a rank-one perturbation.
        let mut words = a.codewords().to_vec();
        let i = words.iter().position(|w| *w == Mat::identity(&f, 2)).unwrap();
        words[i] = Mat::from_rows(&f, &[[0, 0], [0, 1]]).unwrap();
        let bad = MatrixCode::new(&f, 2, 2, words).unwrap();
        let c = is_mrd(&bad, 1).unwrap();
        assert!(!c.is_mrd);
        match c.witness {
            Some(MrdWitness::Pair { x, y, rank }) => {
                assert_eq!(rank, 1);
                assert_eq!(x.sub(&y).unwrap().rank(), 1);
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn gabidulin_codes() {
        let f = gf2();
        let g = gabidulin(3, 2, 1, &f, DEFAULT_CAP).unwrap();
        assert_eq!(g.len(), 8);
        assert_eq!(g.rank_distance_pairwise(), 2);
        assert!(is_mrd(&g, 1).unwrap().is_mrd);
        assert_eq!(gabidulin(2, 2, 2, &f, DEFAULT_CAP).unwrap(), full_space(&f, 2, 2).unwrap());
        let g = gabidulin(3, 3, 2, &f, DEFAULT_CAP).unwrap();
        assert_eq!(g.len(), 64);
        assert_eq!(g.rank_distance_pairwise(), 2);
        assert!(is_mrd(&g, 2).unwrap().is_mrd);
        let t = gabidulin(2, 3, 1, &f, DEFAULT_CAP).unwrap();
        assert_eq!((t.m(), t.n()), (2, 3));
        assert!(is_mrd(&t, 1).unwrap().is_mrd);
        assert!(matches!(gabidulin(3, 2, 3, &f, DEFAULT_CAP), Err(Error::ParameterOutOfRange(_))));
        assert!(matches!(gabidulin(4, 4, 4, &f, 1 << 10), Err(Error::EnumerationTooLarge { .. })));
    }

    #[test]
    fn matrix_field_of_gf8() {
        let f = gf2();
        let mf = matrix_field(3, &f).unwrap();
        assert_eq!(mf.elements().len(), 8);
        mf.verify().unwrap();
        assert_eq!(mf.elements().iter().filter(|a| a.rank() == 3).count(), 7);
        // K has columns a, a^2, a^3 = a + 1.
        let k = Mat::from_rows(&f, &[[0, 0, 1], [1, 0, 1], [0, 1, 0]]).unwrap();
        assert_eq!(mf.companion(), &k);
        let a = Mat::from_rows(&f, &[[1, 0], [0, 1], [0, 0]]).unwrap();
        let code = mrd_from_field(&mf, &a).unwrap();
        assert!(is_mrd(&code, 1).unwrap().is_mrd);
        assert_eq!(mrd_from_field(&mf, &Mat::zeros(&f, 3, 2)), Err(Error::NotFullRank));
    }

    #[test]
    fn six_distinct_field_codes() {
        let mf = matrix_field(3, &gf2()).unwrap();
        let codes = distinct_field_codes(&mf, 2, DEFAULT_CAP).unwrap();
        assert_eq!(codes.len(), 6);
    }

    #[test]
    fn complete_mapping_bridge() {
        let f = gf2();
        let m = Mat::from_rows(&f, &[[0, 1], [1, 1]]).unwrap();
        let map = VectorMap::linear(&m).unwrap();
        assert!(map.is_complete_mapping() && map.is_orthomorphism());
        let code = map_to_mrd(&map).unwrap();
        assert!(is_mrd(&code, 1).unwrap().is_mrd);
        assert_eq!(mrd_to_map(&code).unwrap(), map);

        let id = VectorMap::linear(&Mat::identity(&f, 3)).unwrap();
        assert!(id.is_bijection() && !id.is_complete_mapping());

        let (a, _) = binary_2x2_mrd_pair();
        let fa = mrd_to_map(&a).unwrap();
        assert!(fa.is_bijection() && fa.is_complete_mapping());
        assert_eq!(map_to_mrd(&fa).unwrap(), a);
    }

    #[test]
    fn not_representable() {
        let f = gf2();
        let full = full_space(&f, 2, 2).unwrap();
        assert!(matches!(mrd_to_map(&full), Err(Error::NotRepresentable(_))));
        let g = gabidulin(3, 3, 1, &f, DEFAULT_CAP).unwrap();
        assert!(matches!(mrd_to_map(&g), Err(Error::NotRepresentable(_))));
    }
}
