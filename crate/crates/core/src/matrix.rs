//! Dense matrices over GF(q) with exact linear algebra.
//!
//! The canonical order on `m x n` matrices is lexicographic on the row-major
//! entry sequence, entries compared by element index. Every enumeration in the
//! crate follows it, and [`Mat::index`] is the position of a matrix in it.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};

/// Default limit on the number of states an exhaustive enumeration may visit.
pub const DEFAULT_CAP: u128 = 1 << 24;

/// Left (row) or right (column) side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Side> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(Error::ParameterOutOfRange(format!("unknown side {other:?}"))),
        }
    }
}

/// An `m x n` matrix over a finite field, stored row-major.
#[derive(Clone)]
pub struct Mat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for Mat {}

impl Hash for Mat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl PartialOrd for Mat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mat {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rows, self.cols, &self.data).cmp(&(other.rows, other.cols, &other.data))
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn new(field: &FieldSpec, rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|e| !field.contains(**e)) {
            return Err(Error::ParameterOutOfRange(format!(
                "entry {bad} is not an element of GF({})",
                field.order()
            )));
        }
        Ok(Mat { field: field.clone(), rows, cols, data })
    }

    /// Builds a matrix from rows of raw element indices.
    pub fn from_rows<R: AsRef<[u16]>>(field: &FieldSpec, rows: &[R]) -> Result<Mat> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != n) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().map(|&x| FieldElement(x)))
            .collect();
        Mat::new(field, m, n, data)
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Mat {
        Mat { field: field.clone(), rows, cols, data: vec![FieldElement::ZERO; rows * cols] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Mat {
        let mut a = Mat::zeros(field, n, n);
        for i in 0..n {
            a.data[i * n + i] = FieldElement::ONE;
        }
        a
    }

    pub fn from_fn(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { field: field.clone(), rows, cols, data }
    }

    /// A single row vector.
    pub fn row_vector(field: &FieldSpec, v: &[FieldElement]) -> Mat {
        Mat { field: field.clone(), rows: 1, cols: v.len(), data: v.to_vec() }
    }

    /// The matrix at position `index` of the canonical order.
    pub fn from_index(field: &FieldSpec, rows: usize, cols: usize, mut index: u128) -> Mat {
        let q = field.order() as u128;
        let mut data = vec![FieldElement::ZERO; rows * cols];
        for slot in data.iter_mut().rev() {
            *slot = FieldElement((index % q) as u16);
            index /= q;
        }
        Mat { field: field.clone(), rows, cols, data }
    }

    /// Position in the canonical order (first entry most significant).
    pub fn index(&self) -> u128 {
        let q = self.field.order() as u128;
        self.data.iter().fold(0u128, |acc, e| acc * q + e.0 as u128)
    }

    #[inline]
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    fn check_same(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.check_same(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Mat { field: f.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.check_same(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(Mat { field: f.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> Mat {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.neg(a)).collect();
        Mat { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: FieldElement) -> Mat {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(c, a)).collect();
        Mat { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn matmul(&self, other: &Mat) -> Result<Mat> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix, `u A`.
    pub fn left_apply(&self, u: &[FieldElement]) -> Vec<FieldElement> {
        debug_assert_eq!(u.len(), self.rows);
        let f = &self.field;
        let mut out = vec![FieldElement::ZERO; self.cols];
        for (i, &c) in u.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                *slot = f.add(*slot, f.mul(c, self.get(i, j)));
            }
        }
        out
    }

    /// Reduced row-echelon form and pivot columns. Pivots are the lowest-index
    /// nonzero entries, normalised to one.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let f = &self.field;
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..a.cols {
                    a.data.swap(p * a.cols + j, r * a.cols + j);
                }
            }
            let inv = f.inv(a.get(r, c)).expect("pivot is nonzero");
            for j in 0..a.cols {
                let v = a.get(r, j);
                a.set(r, j, f.mul(inv, v));
            }
            for i in 0..a.rows {
                if i == r {
                    continue;
                }
                let factor = a.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..a.cols {
                    let v = f.sub(a.get(i, j), f.mul(factor, a.get(r, j)));
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        let r = self.rref().1.len();
        assert!(r <= self.rows.min(self.cols), "rank exceeds min(m, n)");
        r
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.rows.min(self.cols)
    }

    /// Basis of the row space in reduced row-echelon form (rank x n).
    pub fn row_space(&self) -> Mat {
        let (r, pivots) = self.rref();
        r.take_rows(pivots.len())
    }

    /// Basis of the column space as the rows of an RREF (rank x m) matrix.
    pub fn col_space(&self) -> Mat {
        self.transpose().row_space()
    }

    fn take_rows(&self, k: usize) -> Mat {
        Mat {
            field: self.field.clone(),
            rows: k,
            cols: self.cols,
            data: self.data[..k * self.cols].to_vec(),
        }
    }

    /// Basis of the null space, one basis vector per row.
    ///
    /// `Side::Right` gives `{v : A v^T = 0}` (dimension n - rank),
    /// `Side::Left` gives `{u : u A = 0}` (dimension m - rank).
    pub fn kernel(&self, side: Side) -> Mat {
        match side {
            Side::Left => self.transpose().kernel(Side::Right),
            Side::Right => {
                let f = &self.field;
                let (r, pivots) = self.rref();
                let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
                let mut basis = Mat::zeros(f, free.len(), self.cols);
                for (b, &fc) in free.iter().enumerate() {
                    basis.set(b, fc, FieldElement::ONE);
                    for (i, &pc) in pivots.iter().enumerate() {
                        basis.set(b, pc, f.neg(r.get(i, fc)));
                    }
                }
                basis
            }
        }
    }

    /// Stacks `self` on top of `other` (same number of columns).
    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch("column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Keeps the first `k` columns.
    pub fn truncate_cols(&self, k: usize) -> Mat {
        Mat::from_fn(&self.field, self.rows, k, |i, j| self.get(i, j))
    }

    /// Rows `rows` of this matrix.
    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        Mat::from_fn(&self.field, rows.len(), self.cols, |i, j| self.get(rows[i], j))
    }
}

/// Number of matrices in `F_q^{m x n}`, saturating.
pub fn space_size(q: u32, rows: usize, cols: usize) -> u128 {
    (q as u128).checked_pow((rows * cols) as u32).unwrap_or(u128::MAX)
}

/// Iterator over all `m x n` matrices in canonical order.
#[derive(Clone)]
pub struct MatIter {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    next: u128,
    end: u128,
}

impl Iterator for MatIter {
    type Item = Mat;

    fn next(&mut self) -> Option<Mat> {
        if self.next >= self.end {
            return None;
        }
        let m = Mat::from_index(&self.field, self.rows, self.cols, self.next);
        self.next += 1;
        Some(m)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for MatIter {}

/// All `m x n` matrices over `field` in canonical order.
///
/// Fails with [`Error::EnumerationTooLarge`] when `q^{mn}` exceeds `cap`.
pub fn enumerate(field: &FieldSpec, rows: usize, cols: usize, cap: u128) -> Result<MatIter> {
    let size = space_size(field.order(), rows, cols);
    if size > cap {
        return Err(Error::EnumerationTooLarge { requested: size, cap });
    }
    Ok(MatIter { field: field.clone(), rows, cols, next: 0, end: size })
}

/// The full-rank `m x n` matrices in canonical order.
pub fn enumerate_full_rank(
    field: &FieldSpec,
    rows: usize,
    cols: usize,
    cap: u128,
) -> Result<impl Iterator<Item = Mat>> {
    Ok(enumerate(field, rows, cols, cap)?.filter(|a| a.is_full_rank()))
}

/// `prod_{i<min}(q^max - q^i)`: the number of full-rank `m x n` matrices.
pub fn full_rank_count(q: u32, rows: usize, cols: usize) -> num::BigUint {
    let (lo, hi) = (rows.min(cols), rows.max(cols));
    let q = num::BigUint::from(q);
    let top = q.pow(hi as u32);
    (0..lo).fold(num::BigUint::from(1u32), |acc, i| acc * (&top - q.pow(i as u32)))
}

/// A parsed matrix text file.
#[derive(Debug, Clone)]
pub struct MatrixFile {
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    pub matrices: Vec<Mat>,
    /// Per-matrix annotation lines (e.g. `w 1/8`), in file order.
    pub annotations: Vec<Vec<String>>,
}

/// Header line `# q=<q> m=<m> n=<n> [poly=...]`.
pub fn format_header(field: &FieldSpec, rows: usize, cols: usize) -> String {
    let mut h = format!("# q={} m={} n={}", field.order(), rows, cols);
    if !field.is_prime_field() {
        let poly: Vec<String> = field.modulus().iter().map(|c| c.to_string()).collect();
        h.push_str(&format!(" poly={}", poly.join(",")));
    }
    h
}

/// Serialises matrices in the text format: a header, then each matrix as
/// `m` lines of `n` space-separated indices, blocks separated by one blank line.
pub fn write_matrices(field: &FieldSpec, rows: usize, cols: usize, mats: &[Mat]) -> String {
    write_annotated(field, rows, cols, mats.iter().map(|m| (m, Vec::<String>::new())))
}

pub(crate) fn write_annotated<'a>(
    field: &FieldSpec,
    rows: usize,
    cols: usize,
    blocks: impl Iterator<Item = (&'a Mat, Vec<String>)>,
) -> String {
    let mut out = format_header(field, rows, cols);
    out.push('\n');
    for (i, (m, notes)) in blocks.enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for n in notes {
            out.push_str(&n);
            out.push('\n');
        }
        out.push_str(&m.to_string());
    }
    out
}

/// Parses the matrix text format. Lines starting with `w ` before a matrix are
/// kept as annotations of that matrix.
pub fn parse_matrices(text: &str) -> Result<MatrixFile> {
    let mut lines = text.lines().enumerate();
    let (hno, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
    let perr = |line: usize, msg: String| Error::Parse { line: line + 1, msg };
    let header = header
        .trim()
        .strip_prefix('#')
        .ok_or_else(|| perr(hno, "expected header `# q=.. m=.. n=..`".into()))?;
    let (mut q, mut m, mut n, mut poly) = (None, None, None, None);
    for tok in header.split_whitespace() {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| perr(hno, format!("malformed header token {tok:?}")))?;
        let num = |v: &str| v.parse::<u64>().map_err(|_| perr(hno, format!("bad number {v:?}")));
        match k {
            "q" => q = Some(num(v)? as u32),
            "m" => m = Some(num(v)? as usize),
            "n" => n = Some(num(v)? as usize),
            "poly" => {
                let coeffs: std::result::Result<Vec<u16>, _> =
                    v.split(',').map(|c| c.trim().parse::<u16>()).collect();
                poly = Some(coeffs.map_err(|_| perr(hno, format!("bad poly {v:?}")))?);
            }
            _ => return Err(perr(hno, format!("unknown header key {k:?}"))),
        }
    }
    let (q, rows, cols) = match (q, m, n) {
        (Some(q), Some(m), Some(n)) => (q, m, n),
        _ => return Err(perr(hno, "header needs q, m and n".into())),
    };
    let field = crate::gf::field_of_order(q, poly.as_deref())?;
    let mut matrices = Vec::new();
    let mut annotations = Vec::new();
    let mut notes: Vec<String> = Vec::new();
    let mut current: Vec<FieldElement> = Vec::new();
    let mut current_rows = 0usize;
    let mut flush = |current: &mut Vec<FieldElement>,
                     current_rows: &mut usize,
                     notes: &mut Vec<String>,
                     line: usize|
     -> Result<()> {
        if *current_rows == 0 {
            if !notes.is_empty() {
                return Err(perr(line, "annotation without a matrix".into()));
            }
            return Ok(());
        }
        if *current_rows != rows {
            return Err(perr(line, format!("matrix has {current_rows} rows, expected {rows}")));
        }
        matrices.push(Mat::new(&field, rows, cols, std::mem::take(current))?);
        annotations.push(std::mem::take(notes));
        *current_rows = 0;
        Ok(())
    };
    let mut last = hno;
    for (no, line) in lines {
        last = no;
        let t = line.trim();
        if t.is_empty() {
            flush(&mut current, &mut current_rows, &mut notes, no)?;
            continue;
        }
        if t.starts_with('#') {
            continue;
        }
        if t.starts_with("w ") || t == "w" {
            if current_rows != 0 {
                return Err(perr(no, "annotation inside a matrix block".into()));
            }
            notes.push(t.to_string());
            continue;
        }
        let vals: std::result::Result<Vec<u32>, _> = t.split_whitespace().map(|x| x.parse()).collect();
        let vals = vals.map_err(|_| perr(no, format!("bad matrix row {t:?}")))?;
        if vals.len() != cols {
            return Err(perr(no, format!("row has {} entries, expected {cols}", vals.len())));
        }
        if let Some(bad) = vals.iter().find(|&&v| v >= q) {
            return Err(perr(no, format!("entry {bad} out of range for q={q}")));
        }
        current.extend(vals.iter().map(|&v| FieldElement(v as u16)));
        current_rows += 1;
        if current_rows > rows {
            return Err(perr(no, format!("matrix has more than {rows} rows")));
        }
    }
    flush(&mut current, &mut current_rows, &mut notes, last + 1)?;
    Ok(MatrixFile { field, rows, cols, matrices, annotations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{field_make, field_of_order};

    fn gf2() -> FieldSpec {
        field_make(2, 1, None).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = gf2();
        assert_eq!(Mat::zeros(&f, 3, 2).rank(), 0);
        let a = Mat::from_rows(&f, &[[1, 0], [0, 1], [0, 0]]).unwrap();
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn rank_census_binary_2x3() {
        let f = gf2();
        let mut census = [0usize; 3];
        for a in enumerate(&f, 2, 3, DEFAULT_CAP).unwrap() {
            census[a.rank()] += 1;
        }
        assert_eq!(census, [1, 21, 42]);
    }

    #[test]
    fn identity_is_neutral_and_rank_is_submultiplicative() {
        let f = gf2();
        let i2 = Mat::identity(&f, 2);
        for a in enumerate(&f, 2, 3, DEFAULT_CAP).unwrap() {
            assert_eq!(i2.matmul(&a).unwrap(), a);
        }
        let all: Vec<Mat> = enumerate(&f, 2, 2, DEFAULT_CAP).unwrap().collect();
        for m in &all {
            for a in &all {
                let r = m.matmul(a).unwrap().rank();
                assert!(r <= m.rank().min(a.rank()));
            }
        }
    }

    #[test]
    fn shape_and_field_errors() {
        let f = gf2();
        let g = field_of_order(3, None).unwrap();
        let a = Mat::zeros(&f, 2, 3);
        assert!(matches!(a.matmul(&a), Err(Error::ShapeMismatch(_))));
        assert!(matches!(a.add(&Mat::zeros(&f, 3, 2)), Err(Error::ShapeMismatch(_))));
        assert_eq!(a.add(&Mat::zeros(&g, 2, 3)), Err(Error::FieldMismatch));
        assert!(Mat::from_rows(&f, &[[0, 2]]).is_err());
    }

    #[test]
    fn kernels() {
        let f = gf2();
        assert_eq!(Mat::identity(&f, 3).kernel(Side::Right).rows(), 0);
        let p = Mat::from_rows(&f, &[[1, 0, 0], [0, 1, 0]]).unwrap();
        let k = p.kernel(Side::Right);
        assert_eq!(k, Mat::from_rows(&f, &[[0, 0, 1]]).unwrap());
        for a in enumerate(&f, 3, 2, DEFAULT_CAP).unwrap() {
            let left = a.kernel(Side::Left);
            assert_eq!(left.rows() + a.rank(), 3);
            for i in 0..left.rows() {
                assert!(a.left_apply(left.row(i)).iter().all(|e| e.is_zero()));
            }
            let right = a.kernel(Side::Right);
            assert_eq!(right.rows() + a.rank(), 2);
            assert!(a.matmul(&right.transpose()).unwrap().is_zero());
        }
    }

    #[test]
    fn rank_is_transpose_invariant() {
        let f = gf2();
        for (m, n) in [(1, 3), (2, 2), (2, 3), (3, 3)] {
            for a in enumerate(&f, m, n, DEFAULT_CAP).unwrap() {
                assert_eq!(a.rank(), a.transpose().rank());
                assert_eq!(a.transpose().transpose(), a);
            }
        }
    }

    #[test]
    fn enumeration_order_and_cap() {
        let f = gf2();
        let one: Vec<Mat> = enumerate(&f, 1, 1, DEFAULT_CAP).unwrap().collect();
        assert_eq!(one, vec![Mat::from_rows(&f, &[[0]]).unwrap(), Mat::from_rows(&f, &[[1]]).unwrap()]);
        let all: Vec<Mat> = enumerate(&f, 2, 2, DEFAULT_CAP).unwrap().collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for (i, a) in all.iter().enumerate() {
            assert_eq!(a.index(), i as u128);
        }
        assert!(matches!(
            enumerate(&f, 5, 5, DEFAULT_CAP),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn full_rank_counts_match_closed_form() {
        for q in [2u32, 3] {
            let f = field_of_order(q, None).unwrap();
            for (m, n) in [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2)] {
                let brute = enumerate_full_rank(&f, m, n, DEFAULT_CAP).unwrap().count();
                assert_eq!(num::BigUint::from(brute), full_rank_count(q, m, n), "q={q} {m}x{n}");
            }
        }
        assert_eq!(full_rank_count(2, 3, 2), num::BigUint::from(42u32));
        assert_eq!(full_rank_count(2, 2, 3), num::BigUint::from(42u32));
    }

    #[test]
    fn text_format_round_trip() {
        let f = field_make(2, 3, None).unwrap();
        let mats = vec![
            Mat::from_rows(&f, &[[1, 0], [7, 3], [0, 0]]).unwrap(),
            Mat::from_rows(&f, &[[0, 0], [0, 0], [5, 1]]).unwrap(),
        ];
        let text = write_matrices(&f, 3, 2, &mats);
        assert!(text.starts_with("# q=8 m=3 n=2 poly=1,1,0,1\n"));
        assert_eq!(text, "# q=8 m=3 n=2 poly=1,1,0,1\n1 0\n7 3\n0 0\n\n0 0\n0 0\n5 1\n");
        let parsed = parse_matrices(&text).unwrap();
        assert_eq!(parsed.matrices, mats);
        assert_eq!(parsed.field, f);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_matrices("# q=2 m=2 n=2\n1 0\n0 2\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 3, msg: "entry 2 out of range for q=2".into() });
        assert!(parse_matrices("# q=2 m=2 n=2\n1 0\n\n").is_err());
        assert!(parse_matrices("q=2").is_err());
    }
}
