//! The matrix affine geometries `RAG(m, n, q)` and `LAG(m, n, q)`.
//!
//! An `r`-flat of `RAG(m, n, q)` is a coset `A + {X : colspace(X) ⊆ V}` with
//! `V` an `r`-dimensional subspace of `F_q^m`; it has `q^{rn}` points. Left
//! flats use row spaces and subspaces of `F_q^n`, and are handled as
//! transposed right flats of `F_q^{n x m}`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::codes::{is_mrd, MatrixCode};
use crate::counting::SubspaceIterator;
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::matrix::{self, enumerate, enumerate_full_rank, Mat, Side, DEFAULT_CAP};

/// A flat given by its canonical (least) point and direction subspace.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FlatDescriptor {
    #[serde(serialize_with = "ser_mat")]
    pub rep: Mat,
    /// RREF basis of the direction subspace, one vector per row.
    #[serde(serialize_with = "ser_mat")]
    pub direction: Mat,
    pub side: Side,
}

fn ser_mat<S: serde::Serializer>(a: &Mat, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(a.rows()))?;
    for i in 0..a.rows() {
        let row: Vec<u16> = a.row(i).iter().map(|e| e.0).collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

/// Reduces every column of `x` modulo the row space of the RREF matrix
/// `basis` (pivot coordinates become zero). This is the least element of the
/// coset `x + {X : colspace(X) ⊆ V}`.
fn reduce_columns(x: &Mat, basis: &Mat, pivots: &[usize]) -> Mat {
    let f = x.field();
    let mut out = x.clone();
    for j in 0..x.cols() {
        for (b, &p) in pivots.iter().enumerate() {
            let c = out.get(p, j);
            if c.is_zero() {
                continue;
            }
            for i in 0..x.rows() {
                let v = f.sub(out.get(i, j), f.mul(c, basis.get(b, i)));
                out.set(i, j, v);
            }
        }
    }
    out
}

fn pivots_of(basis: &Mat) -> Vec<usize> {
    (0..basis.rows())
        .map(|i| (0..basis.cols()).find(|&j| !basis.get(i, j).is_zero()).expect("RREF rows are nonzero"))
        .collect()
}

impl FlatDescriptor {
    /// The flat through `point` with direction spanned by the rows of `direction`.
    pub fn new(side: Side, point: &Mat, direction: &Mat) -> Result<FlatDescriptor> {
        let ambient = match side {
            Side::Right => point.rows(),
            Side::Left => point.cols(),
        };
        if direction.cols() != ambient {
            return Err(Error::ShapeMismatch(format!(
                "direction vectors have length {}, expected {ambient}",
                direction.cols()
            )));
        }
        let direction = direction.row_space();
        let pivots = pivots_of(&direction);
        let rep = match side {
            Side::Right => reduce_columns(point, &direction, &pivots),
            Side::Left => reduce_columns(&point.transpose(), &direction, &pivots).transpose(),
        };
        Ok(FlatDescriptor { rep, direction, side })
    }

    pub fn dim(&self) -> usize {
        self.direction.rows()
    }

    /// Number of points.
    pub fn size(&self) -> u128 {
        let q = self.rep.field().order() as u128;
        let other = match self.side {
            Side::Right => self.rep.cols(),
            Side::Left => self.rep.rows(),
        };
        q.pow((self.dim() * other) as u32)
    }

    /// The canonical point of the parallel flat through `x`.
    pub fn label(&self, x: &Mat) -> Mat {
        let pivots = pivots_of(&self.direction);
        match self.side {
            Side::Right => reduce_columns(x, &self.direction, &pivots),
            Side::Left => reduce_columns(&x.transpose(), &self.direction, &pivots).transpose(),
        }
    }

    pub fn contains(&self, x: &Mat) -> bool {
        x.shape() == self.rep.shape() && self.label(x) == self.rep
    }

    /// All points in canonical order.
    pub fn points(&self) -> Vec<Mat> {
        let (m, n) = self.rep.shape();
        let f = self.rep.field();
        let r = self.dim();
        let (inner_rows, inner_cols) = match self.side {
            Side::Right => (r, n),
            Side::Left => (m, r),
        };
        let mut pts: Vec<Mat> = enumerate(f, inner_rows, inner_cols, u128::MAX)
            .expect("no cap")
            .map(|c| {
                let delta = match self.side {
                    Side::Right => self.direction.transpose().matmul(&c),
                    Side::Left => c.matmul(&self.direction),
                }
                .expect("shapes agree");
                self.rep.add(&delta).expect("same shape")
            })
            .collect();
        pts.sort();
        pts
    }

    pub fn is_parallel(&self, other: &FlatDescriptor) -> bool {
        self.side == other.side && self.direction == other.direction
    }
}

/// Number of `r`-flats: `[a choose r]_q q^{(a-r) b}` with `a` the ambient
/// dimension of the direction space and `b` the other dimension.
pub fn flat_count(side: Side, m: usize, n: usize, q: u32, r: usize) -> num::BigUint {
    let (a, b) = match side {
        Side::Right => (m, n),
        Side::Left => (n, m),
    };
    if r > a {
        return num::BigUint::from(0u32);
    }
    crate::counting::gaussian_binomial(a as i64, r as i64, q) * crate::counting::qpow(q, ((a - r) * b) as u64)
}

/// The directions (parallel classes) of `r`-flats in canonical order.
pub fn directions(side: Side, m: usize, n: usize, field: &FieldSpec, r: usize) -> Vec<Mat> {
    let a = match side {
        Side::Right => m,
        Side::Left => n,
    };
    SubspaceIterator::new(field, a, r).collect()
}

/// All `r`-flats, sorted by `(rep, direction)`, so the flats through `0`
/// come first.
pub fn enumerate_flats(side: Side, m: usize, n: usize, field: &FieldSpec, r: usize, cap: u128) -> Result<Vec<FlatDescriptor>> {
    let count = flat_count(side, m, n, field.order(), r);
    let count_u = num::ToPrimitive::to_u128(&count).unwrap_or(u128::MAX);
    if count_u > cap {
        return Err(Error::EnumerationTooLarge { requested: count_u, cap });
    }
    let (a, b) = match side {
        Side::Right => (m, n),
        Side::Left => (n, m),
    };
    let mut out = Vec::with_capacity(count_u as usize);
    for dir in directions(side, m, n, field, r) {
        let pivots = pivots_of(&dir);
        let free_rows: Vec<usize> = (0..a).filter(|i| !pivots.contains(i)).collect();
        for c in enumerate(field, free_rows.len(), b, u128::MAX)? {
            let mut rep = Mat::zeros(field, a, b);
            for (k, &i) in free_rows.iter().enumerate() {
                for j in 0..b {
                    rep.set(i, j, c.get(k, j));
                }
            }
            let rep = match side {
                Side::Right => rep,
                Side::Left => rep.transpose(),
            };
            out.push(FlatDescriptor { rep, direction: dir.clone(), side });
        }
    }
    out.sort_by(|x, y| (&x.rep, &x.direction).cmp(&(&y.rep, &y.direction)));
    Ok(out)
}

/// A set of distinct `m x n` matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    field: FieldSpec,
    m: usize,
    n: usize,
    points: Vec<Mat>,
}

impl PointSet {
    /// Builds a point set; duplicates are merged.
    pub fn new(field: &FieldSpec, m: usize, n: usize, points: Vec<Mat>) -> Result<PointSet> {
        for p in &points {
            if p.shape() != (m, n) {
                return Err(Error::ShapeMismatch(format!("{}x{} point in a {m}x{n} set", p.rows(), p.cols())));
            }
            if p.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        let points: BTreeSet<Mat> = points.into_iter().collect();
        Ok(PointSet { field: field.clone(), m, n, points: points.into_iter().collect() })
    }

    pub fn from_literals(field: &FieldSpec, pts: &[&[&[u16]]]) -> Result<PointSet> {
        let mats = pts.iter().map(|p| Mat::from_rows(field, p)).collect::<Result<Vec<_>>>()?;
        let (m, n) = mats.first().map_or((0, 0), |a| a.shape());
        PointSet::new(field, m, n, mats)
    }

    pub fn full(field: &FieldSpec, m: usize, n: usize) -> Result<PointSet> {
        PointSet::new(field, m, n, enumerate(field, m, n, DEFAULT_CAP)?.collect())
    }

    pub fn from_code(code: &MatrixCode) -> PointSet {
        PointSet { field: code.field().clone(), m: code.m(), n: code.n(), points: code.codewords().to_vec() }
    }

    pub fn from_text(text: &str) -> Result<PointSet> {
        let f = matrix::parse_matrices(text)?;
        PointSet::new(&f.field, f.rows, f.cols, f.matrices)
    }

    pub fn to_text(&self) -> String {
        matrix::write_matrices(&self.field, self.m, self.n, &self.points)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Mat] {
        &self.points
    }

    pub fn contains(&self, a: &Mat) -> bool {
        self.points.binary_search(a).is_ok()
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        let mut pts = self.points.clone();
        pts.extend(other.points.iter().cloned());
        PointSet::new(&self.field, self.m, self.n, pts)
    }

    pub fn without(&self, a: &Mat) -> PointSet {
        let points = self.points.iter().filter(|p| *p != a).cloned().collect();
        PointSet { field: self.field.clone(), m: self.m, n: self.n, points }
    }

    pub fn transpose(&self) -> PointSet {
        PointSet::new(&self.field, self.n, self.m, self.points.iter().map(Mat::transpose).collect())
            .expect("transpose preserves validity")
    }

    /// `|S ∩ F|` for every `r`-flat `F` of the given side, in flat order.
    pub fn flat_intersections(&self, side: Side, r: usize) -> Result<Vec<(FlatDescriptor, usize)>> {
        let flats = enumerate_flats(side, self.m, self.n, &self.field, r, DEFAULT_CAP)?;
        let mut by_class: HashMap<Mat, HashMap<Mat, usize>> = HashMap::new();
        for dir in directions(side, self.m, self.n, &self.field, r) {
            let probe = FlatDescriptor { rep: Mat::zeros(&self.field, self.m, self.n), direction: dir.clone(), side };
            let mut counts: HashMap<Mat, usize> = HashMap::new();
            for p in &self.points {
                *counts.entry(probe.label(p)).or_default() += 1;
            }
            by_class.insert(dir, counts);
        }
        Ok(flats
            .into_iter()
            .map(|fl| {
                let c = by_class[&fl.direction].get(&fl.rep).copied().unwrap_or(0);
                (fl, c)
            })
            .collect())
    }
}

/// Histogram `{|S ∩ F| : count}` over all `r`-flats `F`.
pub fn intersection_pattern(s: &PointSet, r: usize, side: Side) -> Result<BTreeMap<usize, usize>> {
    let mut hist = BTreeMap::new();
    for (_, c) in s.flat_intersections(side, r)? {
        *hist.entry(c).or_insert(0) += 1;
    }
    Ok(hist)
}

fn check_k(m: usize, n: usize, k: usize) -> Result<()> {
    if k < 1 || k > m.min(n) {
        return Err(Error::ParameterOutOfRange(format!("k={k} outside 1..=min(m,n)={}", m.min(n))));
    }
    Ok(())
}

/// Result of [`is_k_dense`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DenseReport {
    pub dense: bool,
    /// The first `(m-k)`-flat missed by the set.
    pub unblocked: Option<FlatDescriptor>,
}

/// Whether `M S = F_q^{k x n}` for every full-rank `k x m` matrix `M`.
pub fn is_k_dense_by_definition(s: &PointSet, k: usize) -> Result<bool> {
    let (m, n) = s.shape();
    check_k(m, n, k)?;
    let q = s.field.order() as u128;
    let target = q.pow((k * n) as u32) as usize;
    if s.len() < target {
        return Ok(false);
    }
    for mm in enumerate_full_rank(&s.field, k, m, DEFAULT_CAP)? {
        let images: BTreeSet<u128> = s.points.iter().map(|a| mm.matmul(a).expect("shapes agree").index()).collect();
        if images.len() != target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `S` is k-dense: it blocks every `(m-k)`-flat of `RAG(m, n, q)`.
/// The definition is evaluated as well and must agree.
pub fn is_k_dense(s: &PointSet, k: usize) -> Result<DenseReport> {
    let (m, n) = s.shape();
    check_k(m, n, k)?;
    let unblocked = s.flat_intersections(Side::Right, m - k)?.into_iter().find(|(_, c)| *c == 0).map(|(f, _)| f);
    let dense = unblocked.is_none();
    if is_k_dense_by_definition(s, k)? != dense {
        return Err(Error::Internal("blocking and projection criteria for density disagree".into()));
    }
    Ok(DenseReport { dense, unblocked })
}

/// Whether `S` meets every `(m-k)`-flat of `RAG(m, n, q)` in the same number
/// `λ = |S| q^{-kn}` of points.
pub fn is_design(s: &PointSet, k: usize) -> Result<(bool, Option<usize>)> {
    let (m, n) = s.shape();
    check_k(m, n, k)?;
    let hist = intersection_pattern(s, m - k, Side::Right)?;
    if hist.len() != 1 {
        return Ok((false, None));
    }
    let lambda = *hist.keys().next().expect("one bar");
    let q = s.field.order() as usize;
    if lambda * q.pow((k * n) as u32) != s.len() {
        return Err(Error::Internal(format!("design index {lambda} inconsistent with |S| = {}", s.len())));
    }
    Ok((true, Some(lambda)))
}

/// Result of [`design_duality_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub lambda: usize,
    pub expected_lambda_prime: usize,
    /// Distinct intersection sizes with `(n-k)`-flats of `LAG(m, n, q)`.
    pub left_pattern: BTreeMap<usize, usize>,
    pub holds: bool,
}

/// For a k-design `S` (index `λ` on right `(m-k)`-flats) measures the
/// intersections with the left `(n-k)`-flats, which should all equal
/// `λ q^{k(n-m)}`.
pub fn design_duality_check(s: &PointSet, k: usize) -> Result<DualityReport> {
    let (m, n) = s.shape();
    let (ok, lambda) = is_design(s, k)?;
    if !ok {
        return Err(Error::NotADesign(format!("set does not meet all {}-flats equally", m - k)));
    }
    let lambda = lambda.expect("design");
    let q = s.field.order() as i64;
    let e = k as i64 * (n as i64 - m as i64);
    let expected = if e >= 0 {
        lambda * q.pow(e as u32) as usize
    } else {
        lambda / q.pow((-e) as u32) as usize
    };
    let left_pattern = intersection_pattern(s, n - k, Side::Left)?;
    let holds = left_pattern.len() == 1 && left_pattern.contains_key(&expected);
    Ok(DualityReport { lambda, expected_lambda_prime: expected, left_pattern, holds })
}

/// The columns of `x` as elements of `ext`, an extension of degree `m` of the
/// field of `x` (polynomial basis `1, a, ..., a^{m-1}`).
pub fn ext_coords(x: &Mat, ext: &FieldSpec) -> Result<Vec<FieldElement>> {
    check_ext(x.field(), x.rows(), ext)?;
    (0..x.cols()).map(|j| ext.from_coords(&x.col(j))).collect()
}

/// Inverse of [`ext_coords`].
pub fn from_ext_coords(v: &[FieldElement], base: &FieldSpec, ext: &FieldSpec) -> Result<Mat> {
    let m = ext.degree_over_base() as usize;
    check_ext(base, m, ext)?;
    let mut out = Mat::zeros(base, m, v.len());
    for (j, &e) in v.iter().enumerate() {
        if !ext.contains(e) {
            return Err(Error::BasisMismatch(format!("{e} is not an element of GF({})", ext.order())));
        }
        for (i, c) in ext.coords(e).into_iter().enumerate() {
            out.set(i, j, c);
        }
    }
    Ok(out)
}

fn check_ext(base: &FieldSpec, m: usize, ext: &FieldSpec) -> Result<()> {
    if ext.base() != Some(base) || ext.degree_over_base() as usize != m {
        return Err(Error::BasisMismatch(format!(
            "GF({}) is not a degree-{m} extension of GF({})",
            ext.order(),
            base.order()
        )));
    }
    Ok(())
}

/// `F (1, a^i) = {(c, c a^i) : c in F}` as a set of `m x 2` matrices.
pub fn ext_line(ext: &FieldSpec, i: u64) -> Result<PointSet> {
    let base = ext.base().ok_or_else(|| Error::BasisMismatch("need an extension field".into()))?.clone();
    let m = ext.degree_over_base() as usize;
    let slope = ext.pow(ext.basis_generator(), i);
    let pts = ext
        .elements()
        .map(|c| from_ext_coords(&[c, ext.mul(c, slope)], &base, ext))
        .collect::<Result<Vec<_>>>()?;
    PointSet::new(&base, m, 2, pts)
}

/// The 22-point set `M_1 ∪ M_2 ∪ M_4` of `F_2^{3 x 2}`, `M_i = F_8 (1, a^i)`.
pub fn build_22set(ext: &FieldSpec) -> Result<PointSet> {
    if ext.order() != 8 || ext.base().map(FieldSpec::order) != Some(2) {
        return Err(Error::BasisMismatch("the 22-set lives over GF(8) as an extension of GF(2)".into()));
    }
    let mut acc = ext_line(ext, 1)?;
    for i in [2, 4] {
        acc = acc.union(&ext_line(ext, i)?)?;
    }
    Ok(acc)
}

/// A dense 6-point set of `F_2^{3 x 2}`.
pub fn dense_six() -> PointSet {
    let f = FieldSpec::prime(2).expect("prime");
    PointSet::from_literals(
        &f,
        &[
            &[&[1, 0], &[0, 1], &[0, 0]],
            &[&[1, 1], &[1, 0], &[0, 0]],
            &[&[0, 1], &[1, 1], &[0, 0]],
            &[&[0, 0], &[1, 0], &[1, 0]],
            &[&[0, 1], &[0, 0], &[0, 1]],
            &[&[0, 0], &[0, 0], &[1, 1]],
        ],
    )
    .expect("valid")
}

/// The 4-dimensional subspace `{A : a12 + a13 + a23 = a12 + a22 + a23 = 0}`
/// of `F_2^{2 x 3}`, which meets every line in two points.
pub fn two_by_three_subspace() -> PointSet {
    let f = FieldSpec::prime(2).expect("prime");
    let pts: Vec<Mat> = enumerate(&f, 2, 3, DEFAULT_CAP)
        .expect("small")
        .filter(|a| {
            let e = |i, j| a.get(i, j).0;
            (e(0, 1) ^ e(0, 2) ^ e(1, 2)) == 0 && (e(0, 1) ^ e(1, 1) ^ e(1, 2)) == 0
        })
        .collect();
    PointSet::new(&f, 2, 3, pts).expect("valid")
}

/// How two distinct points are joined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Collinearity {
    /// `rank(A - B) = 1`: on a unique line.
    pub same_line: bool,
    /// `rank(A - B) = 2`: on a unique plane but no line.
    pub same_plane_only: bool,
}

pub fn collinearity(a: &Mat, b: &Mat) -> Result<Collinearity> {
    let d = a.sub(b)?;
    if d.is_zero() {
        return Err(Error::EqualPoints);
    }
    let r = d.rank();
    Ok(Collinearity { same_line: r == 1, same_plane_only: r == 2 })
}

/// The least right flat through `a` and `b`: direction `colspace(a - b)`.
pub fn join(a: &Mat, b: &Mat) -> Result<FlatDescriptor> {
    let d = a.sub(b)?;
    FlatDescriptor::new(Side::Right, a, &d.col_space())
}

/// Checks that for non-collinear `x`, `y` every `z` collinear with both lies
/// in the plane joining `x` and `y`. Exhaustive over all triples; returns the
/// number of (x, y, z) triples examined.
pub fn verify_triangle_lemma(field: &FieldSpec, m: usize, n: usize) -> Result<u64> {
    let pts: Vec<Mat> = enumerate(field, m, n, DEFAULT_CAP)?.collect();
    let mut checked = 0;
    for (i, x) in pts.iter().enumerate() {
        for y in &pts[i + 1..] {
            if x.sub(y)?.rank() != 2 {
                continue;
            }
            let plane = join(x, y)?;
            for z in &pts {
                if z == x || z == y {
                    continue;
                }
                if x.sub(z)?.rank() == 1 && y.sub(z)?.rank() == 1 {
                    checked += 1;
                    if !plane.contains(z) {
                        return Err(Error::PropertyNotVerified(format!("{z:?} collinear with {x:?}, {y:?} off their plane")));
                    }
                }
            }
        }
    }
    Ok(checked)
}

/// Counts of `(lines, planes)` through `point`.
pub fn point_residue(point: &Mat) -> Result<(usize, usize)> {
    let (m, n) = point.shape();
    let f = point.field();
    let count = |r: usize| -> Result<usize> {
        Ok(enumerate_flats(Side::Right, m, n, f, r, DEFAULT_CAP)?.iter().filter(|fl| fl.contains(point)).count())
    };
    Ok((count(1)?, count(2)?))
}

/// Summary of basic incidence numbers of `RAG(m, n, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeometryStats {
    pub m: usize,
    pub n: usize,
    pub q: u32,
    pub points: u128,
    /// Per dimension `r`: `(flats, parallel classes, flats per class, points per flat)`.
    pub flats: Vec<FlatStats>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlatStats {
    pub dim: usize,
    pub flats: String,
    pub classes: String,
    pub per_class: String,
    pub points_per_flat: String,
}

pub fn stats(m: usize, n: usize, field: &FieldSpec) -> GeometryStats {
    let q = field.order();
    let flats = (0..=m)
        .map(|r| {
            let classes = crate::counting::gaussian_binomial(m as i64, r as i64, q);
            FlatStats {
                dim: r,
                flats: flat_count(Side::Right, m, n, q, r).to_string(),
                classes: classes.to_string(),
                per_class: crate::counting::qpow(q, ((m - r) * n) as u64).to_string(),
                points_per_flat: crate::counting::qpow(q, (r * n) as u64).to_string(),
            }
        })
        .collect();
    GeometryStats { m, n, q, points: matrix::space_size(q, m, n), flats }
}

/// The lines of `RAG(2, 2, 2)` together with the eight binary `(2, 2, 1)` MRD
/// codes, as point sets.
pub fn affine_plane_of_order_four() -> Result<Vec<PointSet>> {
    let f = FieldSpec::prime(2)?;
    let mut blocks: Vec<PointSet> = enumerate_flats(Side::Right, 2, 2, &f, 1, DEFAULT_CAP)?
        .iter()
        .map(|l| PointSet::new(&f, 2, 2, l.points()))
        .collect::<Result<_>>()?;
    blocks.extend(four_set_sweep()?.mrd_codes);
    Ok(blocks)
}

/// Whether a block system is a 2-(v, k, 1) design: every pair of points on
/// exactly one block.
pub fn is_linear_space(points: &[Mat], blocks: &[PointSet]) -> bool {
    points.iter().enumerate().all(|(i, a)| {
        points[i + 1..].iter().all(|b| blocks.iter().filter(|bl| bl.contains(a) && bl.contains(b)).count() == 1)
    })
}

/// All 4-subsets of `F_2^{2 x 2}` split by density and the MRD property.
#[derive(Debug, Clone)]
pub struct FourSetSweep {
    pub subsets: usize,
    pub dense: Vec<PointSet>,
    pub mrd_codes: Vec<PointSet>,
}

pub fn four_set_sweep() -> Result<FourSetSweep> {
    let f = FieldSpec::prime(2)?;
    let pts: Vec<Mat> = enumerate(&f, 2, 2, DEFAULT_CAP)?.collect();
    let mut dense = Vec::new();
    let mut mrd_codes = Vec::new();
    let mut subsets = 0;
    for mask in 0u32..1 << 16 {
        if mask.count_ones() != 4 {
            continue;
        }
        subsets += 1;
        let chosen: Vec<Mat> = (0..16).filter(|i| mask >> i & 1 == 1).map(|i| pts[i].clone()).collect();
        let set = PointSet::new(&f, 2, 2, chosen.clone())?;
        if is_k_dense(&set, 1)?.dense {
            dense.push(set.clone());
        }
        if is_mrd(&MatrixCode::new(&f, 2, 2, chosen)?, 1)?.is_mrd {
            mrd_codes.push(set);
        }
    }
    Ok(FourSetSweep { subsets, dense, mrd_codes })
}

/// Outcome of [`dense_subspace_sweep`] for one dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubspaceSweep {
    pub dim: usize,
    pub k: usize,
    pub subspaces: usize,
    pub dense: usize,
    /// Dense subspaces that meet all `(m-k)`-flats equally.
    pub dense_designs: usize,
}

/// Runs over every `dim`-dimensional subspace of `F_q^{m x n}` and checks
/// which are k-dense, and that each dense one is a design.
pub fn dense_subspace_sweep(field: &FieldSpec, m: usize, n: usize, dim: usize, k: usize) -> Result<SubspaceSweep> {
    let mut subspaces = 0;
    let mut dense = 0;
    let mut dense_designs = 0;
    for basis in SubspaceIterator::new(field, m * n, dim) {
        subspaces += 1;
        let gens: Vec<Mat> = (0..dim)
            .map(|i| Mat::from_fn(field, m, n, |a, b| basis.get(i, a * n + b)))
            .collect();
        let pts: Vec<Mat> = enumerate(field, 1, dim, DEFAULT_CAP)?
            .map(|c| {
                gens.iter().enumerate().fold(Mat::zeros(field, m, n), |acc, (i, g)| {
                    acc.add(&g.scale(c.get(0, i))).expect("same shape")
                })
            })
            .collect();
        let set = PointSet::new(field, m, n, pts)?;
        if is_k_dense(&set, k)?.dense {
            dense += 1;
            if is_design(&set, k)?.0 {
                dense_designs += 1;
            }
        }
    }
    Ok(SubspaceSweep { dim, k, subspaces, dense, dense_designs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_make;

    fn gf2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn flat_counts_rag_3_2_2() {
        let f = gf2();
        let lines = enumerate_flats(Side::Right, 3, 2, &f, 1, DEFAULT_CAP).unwrap();
        assert_eq!(lines.len(), 112);
        let planes = enumerate_flats(Side::Right, 3, 2, &f, 2, DEFAULT_CAP).unwrap();
        assert_eq!(planes.len(), 28);
        assert_eq!(directions(Side::Right, 3, 2, &f, 1).len(), 7);
        assert_eq!(directions(Side::Right, 3, 2, &f, 2).len(), 7);
        assert!(lines.iter().all(|l| l.points().len() == 4 && l.size() == 4));
        assert!(planes.iter().all(|p| p.points().len() == 16));
        let points = enumerate_flats(Side::Right, 3, 2, &f, 0, DEFAULT_CAP).unwrap();
        assert_eq!(points.len(), 64);
        assert_eq!(enumerate_flats(Side::Right, 2, 2, &f, 1, DEFAULT_CAP).unwrap().len(), 12);
        // Flats through 0 come first.
        assert!(lines[..7].iter().all(|l| l.rep.is_zero()));
        assert!(!lines[7].rep.is_zero());
    }

    #[test]
    fn reps_are_least_points() {
        let f = field_make(3, 1, None).unwrap();
        for side in [Side::Right, Side::Left] {
            for fl in enumerate_flats(side, 2, 3, &f, 1, DEFAULT_CAP).unwrap() {
                let pts = fl.points();
                assert_eq!(pts[0], fl.rep);
                assert!(pts.iter().all(|p| fl.contains(p)));
                let again = FlatDescriptor::new(side, pts.last().unwrap(), &fl.direction).unwrap();
                assert_eq!(again, fl);
            }
        }
    }

    #[test]
    fn incidence_numbers() {
        let f = gf2();
        let lines = enumerate_flats(Side::Right, 3, 2, &f, 1, DEFAULT_CAP).unwrap();
        let planes = enumerate_flats(Side::Right, 3, 2, &f, 2, DEFAULT_CAP).unwrap();
        for l in &lines {
            let pts = l.points();
            let containing = planes.iter().filter(|p| pts.iter().all(|x| p.contains(x))).count();
            assert_eq!(containing, 3);
        }
        for p in &planes {
            let inside = lines.iter().filter(|l| l.points().iter().all(|x| p.contains(x))).count();
            assert_eq!(inside, 12);
        }
        for x in enumerate(&f, 3, 2, DEFAULT_CAP).unwrap() {
            assert_eq!(point_residue(&x).unwrap(), (7, 7));
        }
    }

    #[test]
    fn dense_six_and_its_subsets() {
        let s = dense_six();
        assert_eq!(s.len(), 6);
        assert!(is_k_dense(&s, 1).unwrap().dense);
        for p in s.points() {
            let r = is_k_dense(&s.without(p), 1).unwrap();
            assert!(!r.dense);
            let w = r.unblocked.unwrap();
            assert_eq!(w.dim(), 2);
            assert!(s.without(p).points().iter().all(|x| !w.contains(x)));
        }
        let full = PointSet::full(&gf2(), 3, 2).unwrap();
        assert!(is_k_dense(&full, 1).unwrap().dense && is_k_dense(&full, 2).unwrap().dense);
    }

    #[test]
    fn the_22_set() {
        let f8 = field_make(2, 3, None).unwrap();
        let s = build_22set(&f8).unwrap();
        assert_eq!(s.len(), 22);
        assert!(is_k_dense(&s, 2).unwrap().dense);
        let hist = intersection_pattern(&s, 1, Side::Right).unwrap();
        assert_eq!(hist, BTreeMap::from([(1, 91), (3, 21)]));
        for i in [1, 2, 4] {
            let mi = ext_line(&f8, i).unwrap();
            assert_eq!(mi.len(), 8);
            let code = MatrixCode::new(&gf2(), 3, 2, mi.points().to_vec()).unwrap();
            assert!(is_mrd(&code, 1).unwrap().is_mrd);
        }
        let z = Mat::zeros(&gf2(), 3, 2);
        assert_eq!(ext_coords(&z, &f8).unwrap(), vec![FieldElement::ZERO; 2]);
        assert!(matches!(ext_coords(&Mat::zeros(&gf2(), 2, 2), &f8), Err(Error::BasisMismatch(_))));
    }

    #[test]
    fn ext_coords_bijective() {
        let f = gf2();
        let f8 = field_make(2, 3, None).unwrap();
        let mut seen = BTreeSet::new();
        for x in enumerate(&f, 3, 2, DEFAULT_CAP).unwrap() {
            let v = ext_coords(&x, &f8).unwrap();
            assert_eq!(from_ext_coords(&v, &f, &f8).unwrap(), x);
            seen.insert(v);
        }
        assert_eq!(seen.len(), 64);
    }

    #[test]
    fn designs_and_duality() {
        let s = two_by_three_subspace();
        assert_eq!(s.len(), 16);
        assert_eq!(is_design(&s, 1).unwrap(), (true, Some(2)));
        let d = design_duality_check(&s, 1).unwrap();
        assert!(d.holds);
        assert_eq!(d.expected_lambda_prime, 4);

        let code = crate::codes::gabidulin(2, 3, 1, &gf2(), DEFAULT_CAP).unwrap();
        let c = PointSet::from_code(&code);
        assert_eq!(is_design(&c, 1).unwrap(), (true, Some(1)));
        let d = design_duality_check(&c, 1).unwrap();
        assert!(d.holds && d.expected_lambda_prime == 2);

        let g32 = PointSet::from_code(&crate::codes::gabidulin(3, 2, 1, &gf2(), DEFAULT_CAP).unwrap());
        let hist = intersection_pattern(&g32, 1, Side::Right).unwrap();
        // Minimum distance 2: no two codewords share a line.
        assert_eq!(hist, BTreeMap::from([(0, 56), (1, 56)]));

        assert!(matches!(design_duality_check(&dense_six(), 1), Err(Error::NotADesign(_))));
    }

    #[test]
    fn collinearity_classification() {
        let f = gf2();
        let a = Mat::zeros(&f, 3, 2);
        let b = Mat::from_rows(&f, &[[1, 1], [0, 0], [0, 0]]).unwrap();
        let c = Mat::from_rows(&f, &[[1, 0], [0, 1], [0, 0]]).unwrap();
        assert_eq!(collinearity(&a, &b).unwrap(), Collinearity { same_line: true, same_plane_only: false });
        assert_eq!(collinearity(&a, &c).unwrap(), Collinearity { same_line: false, same_plane_only: true });
        assert_eq!(collinearity(&a, &a), Err(Error::EqualPoints));
        assert!(verify_triangle_lemma(&f, 3, 2).unwrap() > 0);
    }

    #[test]
    fn affine_plane_of_order_4() {
        let blocks = affine_plane_of_order_four().unwrap();
        assert_eq!(blocks.len(), 20);
        let pts: Vec<Mat> = enumerate(&gf2(), 2, 2, DEFAULT_CAP).unwrap().collect();
        assert!(is_linear_space(&pts, &blocks));
    }
}
