//! 0-1 matrices, patterns and the symmetry transforms.
//!
//! Positions are 1-based: row 1 is the top row, column 1 the leftmost
//! column. A [`Matrix01`] stores its 1-entries as a sorted list together with
//! a dense bit grid, so cell lookups are O(1) while iteration stays
//! proportional to the weight.

use std::fmt;
use std::ops::Deref;

use crate::error::MatrixError;

/// Largest supported number of rows or columns.
pub const MAX_DIM: usize = 65_535;

/// A `(row, col)` position, 1-based.
///
/// The derived ordering is row-major, which is also the order in which
/// [`Matrix01::entries`] lists 1-entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
}

impl Entry {
    pub const fn new(row: usize, col: usize) -> Self {
        Entry { row, col }
    }

    /// Strictly smaller row index.
    pub fn is_above(self, other: Entry) -> bool {
        self.row < other.row
    }

    pub fn is_below(self, other: Entry) -> bool {
        self.row > other.row
    }

    pub fn is_left_of(self, other: Entry) -> bool {
        self.col < other.col
    }

    pub fn is_right_of(self, other: Entry) -> bool {
        self.col > other.col
    }

    pub fn transposed(self) -> Entry {
        Entry::new(self.col, self.row)
    }

    /// Column-major key, used where candidates are scanned left to right.
    pub(crate) fn col_major(self) -> (usize, usize) {
        (self.col, self.row)
    }
}

impl From<(usize, usize)> for Entry {
    fn from((row, col): (usize, usize)) -> Self {
        Entry::new(row, col)
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// The four symmetries used throughout the constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transform {
    /// Reverse every row: `(i, j) -> (i, cols + 1 - j)`.
    Rev,
    /// Rotate 90 degrees clockwise: `(i, j) -> (j, rows + 1 - i)`.
    Rot,
    /// Rotate 180 degrees.
    Rot2,
    /// Transpose: `(i, j) -> (j, i)`.
    Trans,
}

impl Transform {
    pub const ALL: [Transform; 4] = [Transform::Rev, Transform::Rot, Transform::Rot2, Transform::Trans];

    /// Dimensions of the image of a `rows x cols` matrix.
    pub fn dims(self, rows: usize, cols: usize) -> (usize, usize) {
        match self {
            Transform::Rev | Transform::Rot2 => (rows, cols),
            Transform::Rot | Transform::Trans => (cols, rows),
        }
    }

    /// Image of a single position inside a `rows x cols` matrix.
    pub fn apply(self, e: Entry, rows: usize, cols: usize) -> Entry {
        match self {
            Transform::Rev => Entry::new(e.row, cols + 1 - e.col),
            Transform::Rot => Entry::new(e.col, rows + 1 - e.row),
            Transform::Rot2 => Entry::new(rows + 1 - e.row, cols + 1 - e.col),
            Transform::Trans => e.transposed(),
        }
    }
}

/// A rectangular 0-1 matrix.
///
/// Zero rows or zero columns are allowed; they show up as the degenerate
/// halves of column splits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix01 {
    rows: usize,
    cols: usize,
    entries: Vec<Entry>,
    stride: usize,
    bits: Vec<u64>,
}

impl Matrix01 {
    /// Builds a matrix from a set of 1-entries. Repeated entries collapse.
    pub fn new<I>(rows: usize, cols: usize, entries: I) -> Result<Self, MatrixError>
    where
        I: IntoIterator<Item = Entry>,
    {
        let mut m = Matrix01::try_zeros(rows, cols)?;
        let mut list = Vec::new();
        for e in entries {
            if e.row == 0 || e.col == 0 || e.row > rows || e.col > cols {
                return Err(MatrixError::OutOfBounds { entry: e, rows, cols });
            }
            if !m.is_one(e.row, e.col) {
                m.set_bit(e);
                list.push(e);
            }
        }
        list.sort_unstable();
        m.entries = list;
        Ok(m)
    }

    pub fn try_zeros(rows: usize, cols: usize) -> Result<Self, MatrixError> {
        if rows > MAX_DIM || cols > MAX_DIM {
            return Err(MatrixError::TooLarge { rows, cols });
        }
        let stride = cols.div_ceil(64);
        Ok(Matrix01 {
            rows,
            cols,
            entries: Vec::new(),
            stride,
            bits: vec![0; rows * stride],
        })
    }

    /// The all-zero matrix.
    ///
    /// Panics if a dimension exceeds [`MAX_DIM`].
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix01::try_zeros(rows, cols).expect("matrix dimensions within limits")
    }

    /// The `k x k` permutation matrix with entries `(i, sigma[i-1])`.
    pub fn from_permutation(sigma: &[usize]) -> Result<Self, MatrixError> {
        let k = sigma.len();
        Matrix01::new(k, k, sigma.iter().enumerate().map(|(i, &c)| Entry::new(i + 1, c)))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// 1-entries in row-major order.
    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn weight(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Whether cell `(row, col)` holds a 1. Out-of-range cells read as 0.
    pub fn is_one(&self, row: usize, col: usize) -> bool {
        if row == 0 || col == 0 || row > self.rows || col > self.cols {
            return false;
        }
        let c = col - 1;
        let word = self.bits[(row - 1) * self.stride + c / 64];
        word >> (c % 64) & 1 == 1
    }

    pub fn has_entry(&self, e: Entry) -> bool {
        self.is_one(e.row, e.col)
    }

    fn set_bit(&mut self, e: Entry) {
        let c = e.col - 1;
        self.bits[(e.row - 1) * self.stride + c / 64] |= 1 << (c % 64);
    }

    /// Copy of `self` with one more 1-entry.
    pub fn with_entry(&self, e: Entry) -> Result<Matrix01, MatrixError> {
        if e.row == 0 || e.col == 0 || e.row > self.rows || e.col > self.cols {
            return Err(MatrixError::OutOfBounds { entry: e, rows: self.rows, cols: self.cols });
        }
        let mut m = self.clone();
        if !m.has_entry(e) {
            m.set_bit(e);
            let at = m.entries.partition_point(|x| *x < e);
            m.entries.insert(at, e);
        }
        Ok(m)
    }

    pub fn row_weight(&self, row: usize) -> usize {
        self.entries.iter().filter(|e| e.row == row).count()
    }

    pub fn col_weight(&self, col: usize) -> usize {
        self.entries.iter().filter(|e| e.col == col).count()
    }

    pub fn is_row_empty(&self, row: usize) -> bool {
        !self.entries.iter().any(|e| e.row == row)
    }

    pub fn is_col_empty(&self, col: usize) -> bool {
        !self.entries.iter().any(|e| e.col == col)
    }

    pub fn empty_rows(&self) -> Vec<usize> {
        let mut used = vec![false; self.rows + 1];
        for e in &self.entries {
            used[e.row] = true;
        }
        (1..=self.rows).filter(|&i| !used[i]).collect()
    }

    pub fn empty_cols(&self) -> Vec<usize> {
        let mut used = vec![false; self.cols + 1];
        for e in &self.entries {
            used[e.col] = true;
        }
        (1..=self.cols).filter(|&j| !used[j]).collect()
    }

    /// No empty row and no empty column.
    pub fn is_reduced(&self) -> bool {
        self.empty_rows().is_empty() && self.empty_cols().is_empty()
    }

    /// Exactly one 1-entry in every row and every column.
    pub fn is_permutation(&self) -> bool {
        if self.rows != self.cols || self.weight() != self.rows {
            return false;
        }
        let mut seen = vec![false; self.cols + 1];
        for (i, e) in self.entries.iter().enumerate() {
            if e.row != i + 1 || seen[e.col] {
                return false;
            }
            seen[e.col] = true;
        }
        true
    }

    pub fn transform(&self, op: Transform) -> Matrix01 {
        let (rows, cols) = op.dims(self.rows, self.cols);
        let image = self.entries.iter().map(|&e| op.apply(e, self.rows, self.cols));
        Matrix01::new(rows, cols, image).expect("transform stays in bounds")
    }

    pub fn rev(&self) -> Matrix01 {
        self.transform(Transform::Rev)
    }

    pub fn rot(&self) -> Matrix01 {
        self.transform(Transform::Rot)
    }

    pub fn rot2(&self) -> Matrix01 {
        self.transform(Transform::Rot2)
    }

    pub fn trans(&self) -> Matrix01 {
        self.transform(Transform::Trans)
    }

    /// Inserts `count` empty rows directly below row `after` (0 = on top).
    pub fn insert_empty_rows(&self, after: usize, count: usize) -> Result<Matrix01, MatrixError> {
        assert!(after <= self.rows, "row insertion point out of range");
        let shifted = self.entries.iter().map(|&e| {
            if e.row > after {
                Entry::new(e.row + count, e.col)
            } else {
                e
            }
        });
        Matrix01::new(self.rows + count, self.cols, shifted)
    }

    /// Inserts `count` empty columns directly right of column `after` (0 = leftmost).
    pub fn insert_empty_cols(&self, after: usize, count: usize) -> Result<Matrix01, MatrixError> {
        assert!(after <= self.cols, "column insertion point out of range");
        let shifted = self.entries.iter().map(|&e| {
            if e.col > after {
                Entry::new(e.row, e.col + count)
            } else {
                e
            }
        });
        Matrix01::new(self.rows, self.cols + count, shifted)
    }

    /// Columns `first..=last` as a new matrix (empty range gives zero columns).
    pub fn column_range(&self, first: usize, last: usize) -> Matrix01 {
        let cols = (last + 1).saturating_sub(first);
        let kept = self
            .entries
            .iter()
            .filter(|e| e.col >= first && e.col <= last)
            .map(|e| Entry::new(e.row, e.col + 1 - first));
        Matrix01::new(self.rows, cols, kept).expect("column range stays in bounds")
    }

    /// Horizontal concatenation of blocks with equal row counts.
    pub fn hconcat(blocks: &[&Matrix01]) -> Result<Matrix01, MatrixError> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let mut canvas = Canvas::new(rows, blocks.iter().map(|b| b.cols).sum());
        let mut offset = 0;
        for b in blocks {
            if b.rows != rows {
                return Err(MatrixError::BlockMismatch { expected: rows, found: b.rows });
            }
            canvas.place(b, 0, offset);
            offset += b.cols;
        }
        canvas.build()
    }

    /// Renders in the `1`/`0` grid style without a trailing newline.
    pub fn to_grid(&self) -> String {
        crate::format::render_matrix(self, crate::format::Style::Grid)
    }
}

impl fmt::Debug for Matrix01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix01 {}x{} weight {}", self.rows, self.cols, self.weight())?;
        f.write_str(&crate::format::render_matrix(self, crate::format::Style::Dotted))
    }
}

impl fmt::Display for Matrix01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_grid())
    }
}

/// Accumulates translated blocks before materialising a [`Matrix01`].
#[derive(Debug, Clone)]
pub(crate) struct Canvas {
    rows: usize,
    cols: usize,
    entries: Vec<Entry>,
}

impl Canvas {
    pub(crate) fn new(rows: usize, cols: usize) -> Self {
        Canvas { rows, cols, entries: Vec::new() }
    }

    /// Copies `block` so that its cell `(1, 1)` lands on `(row_offset + 1, col_offset + 1)`.
    pub(crate) fn place(&mut self, block: &Matrix01, row_offset: usize, col_offset: usize) {
        self.place_entries(block.entries().iter().copied(), row_offset, col_offset);
    }

    pub(crate) fn place_entries<I>(&mut self, entries: I, row_offset: usize, col_offset: usize)
    where
        I: IntoIterator<Item = Entry>,
    {
        self.entries.extend(
            entries
                .into_iter()
                .map(|e| Entry::new(e.row + row_offset, e.col + col_offset)),
        );
    }

    pub(crate) fn build(self) -> Result<Matrix01, MatrixError> {
        Matrix01::new(self.rows, self.cols, self.entries)
    }
}

/// A matrix that is not all-zero and has no empty row or column.
///
/// Every containment and witness routine takes a `Pattern`, so the
/// reducedness requirement is checked once, here.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern(Matrix01);

impl Pattern {
    pub fn new(m: Matrix01) -> Result<Self, MatrixError> {
        if m.is_zero() {
            return Err(MatrixError::EmptyPattern);
        }
        if let Some(&row) = m.empty_rows().first() {
            return Err(MatrixError::EmptyRow(row));
        }
        if let Some(&col) = m.empty_cols().first() {
            return Err(MatrixError::EmptyColumn(col));
        }
        Ok(Pattern(m))
    }

    pub fn from_permutation(sigma: &[usize]) -> Result<Self, MatrixError> {
        Pattern::new(Matrix01::from_permutation(sigma)?)
    }

    pub fn matrix(&self) -> &Matrix01 {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix01 {
        self.0
    }

    /// Symmetries map reduced patterns to reduced patterns.
    pub fn transform(&self, op: Transform) -> Pattern {
        Pattern(self.0.transform(op))
    }
}

impl Deref for Pattern {
    type Target = Matrix01;

    fn deref(&self) -> &Matrix01 {
        &self.0
    }
}

/// Column distance `|j - j'|`.
pub fn horizontal_distance(a: Entry, b: Entry) -> usize {
    a.col.abs_diff(b.col)
}

/// Row distance `|i - i'|`.
pub fn vertical_distance(a: Entry, b: Entry) -> usize {
    a.row.abs_diff(b.row)
}

/// Largest pairwise column distance in `set`.
pub fn width(set: &[Entry]) -> Result<usize, MatrixError> {
    let min = set.iter().map(|e| e.col).min().ok_or(MatrixError::EmptySet)?;
    let max = set.iter().map(|e| e.col).max().ok_or(MatrixError::EmptySet)?;
    Ok(max - min)
}

/// Largest pairwise row distance in `set`.
pub fn height(set: &[Entry]) -> Result<usize, MatrixError> {
    let min = set.iter().map(|e| e.row).min().ok_or(MatrixError::EmptySet)?;
    let max = set.iter().map(|e| e.row).max().ok_or(MatrixError::EmptySet)?;
    Ok(max - min)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The columns strictly left (or right) of the 1-entry `x`, re-based to column 1.
///
/// The row count is unchanged, so for a permutation matrix row `x.row`
/// of the result is empty.
pub fn split_at_entry(m: &Matrix01, x: Entry, side: Side) -> Result<Matrix01, MatrixError> {
    if !m.has_entry(x) {
        return Err(MatrixError::NotAnEntry(x));
    }
    Ok(match side {
        Side::Left => m.column_range(1, x.col - 1),
        Side::Right => m.column_range(x.col + 1, m.cols()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(sigma: &[usize]) -> Matrix01 {
        Matrix01::from_permutation(sigma).unwrap()
    }

    fn entries(list: &[(usize, usize)]) -> Vec<Entry> {
        let mut v: Vec<Entry> = list.iter().map(|&p| p.into()).collect();
        v.sort();
        v
    }

    #[test]
    fn rev_of_fk_pattern() {
        // j -> 6 - j applied to each column of [2,5,3,1,4]
        let expected: Vec<usize> = [2, 5, 3, 1, 4].iter().map(|c| 6 - c).collect();
        assert_eq!(expected, vec![4, 1, 3, 5, 2]);
        assert_eq!(perm(&[2, 5, 3, 1, 4]).rev(), perm(&expected));
    }

    #[test]
    fn identity_is_symmetric() {
        let id = perm(&[1, 2]);
        assert_eq!(id.trans(), id);
    }

    #[test]
    fn rot_moves_corners_clockwise() {
        let m = Matrix01::new(2, 3, [Entry::new(1, 1)]).unwrap();
        let r = m.rot();
        assert_eq!((r.rows(), r.cols()), (3, 2));
        assert_eq!(r.entries(), &[Entry::new(1, 2)]);
        assert_eq!(m.rot().rot().rot().rot(), m);
        assert_eq!(m.rot2(), m.rot().rot());
    }

    #[test]
    fn distances_and_extent() {
        assert_eq!(horizontal_distance(Entry::new(1, 2), Entry::new(2, 5)), 3);
        assert_eq!(vertical_distance(Entry::new(1, 2), Entry::new(2, 5)), 1);
        let q = perm(&[2, 5, 3, 1, 4]);
        // brute force over all pairs of the five entries
        let e = q.entries();
        let mut w = 0;
        let mut h = 0;
        for a in e {
            for b in e {
                w = w.max(a.col.abs_diff(b.col));
                h = h.max(a.row.abs_diff(b.row));
            }
        }
        assert_eq!((w, h), (4, 4));
        assert_eq!(width(e).unwrap(), 4);
        assert_eq!(height(e).unwrap(), 4);
        assert_eq!(height(&[Entry::new(3, 1)]).unwrap(), 0);
        assert_eq!(width(&[]), Err(MatrixError::EmptySet));
    }

    #[test]
    fn split_left_and_right() {
        let p = perm(&[3, 1, 4, 2]);
        let left = split_at_entry(&p, Entry::new(3, 4), Side::Left).unwrap();
        assert_eq!((left.rows(), left.cols()), (4, 3));
        assert_eq!(left.entries(), entries(&[(1, 3), (2, 1), (4, 2)]).as_slice());
        assert!(left.is_row_empty(3));

        let right = split_at_entry(&p, Entry::new(2, 1), Side::Right).unwrap();
        assert_eq!((right.rows(), right.cols()), (4, 3));
        assert_eq!(right.entries(), entries(&[(1, 2), (3, 3), (4, 1)]).as_slice());

        let none = split_at_entry(&p, Entry::new(2, 1), Side::Left).unwrap();
        assert_eq!((none.rows(), none.cols()), (4, 0));
        assert_eq!(
            split_at_entry(&p, Entry::new(1, 1), Side::Left),
            Err(MatrixError::NotAnEntry(Entry::new(1, 1)))
        );
    }

    #[test]
    fn pattern_requires_reduced_nonzero() {
        assert_eq!(Pattern::new(Matrix01::zeros(2, 2)), Err(MatrixError::EmptyPattern));
        let m = Matrix01::new(2, 2, [Entry::new(1, 1)]).unwrap();
        assert_eq!(Pattern::new(m), Err(MatrixError::EmptyRow(2)));
        let m = Matrix01::new(1, 2, [Entry::new(1, 2)]).unwrap();
        assert_eq!(Pattern::new(m), Err(MatrixError::EmptyColumn(1)));
        assert!(Pattern::from_permutation(&[2, 1]).is_ok());
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(matches!(
            Matrix01::new(2, 2, [Entry::new(3, 1)]),
            Err(MatrixError::OutOfBounds { .. })
        ));
        assert!(matches!(
            Matrix01::new(2, 2, [Entry::new(0, 1)]),
            Err(MatrixError::OutOfBounds { .. })
        ));
        assert!(matches!(Matrix01::try_zeros(MAX_DIM + 1, 1), Err(MatrixError::TooLarge { .. })));
    }

    #[test]
    fn duplicate_entries_collapse() {
        let m = Matrix01::new(2, 2, [Entry::new(1, 1), Entry::new(1, 1)]).unwrap();
        assert_eq!(m.weight(), 1);
    }

    #[test]
    fn wide_rows_use_several_words() {
        let m = Matrix01::new(2, 130, [Entry::new(2, 129), Entry::new(1, 64), Entry::new(1, 65)]).unwrap();
        assert!(m.is_one(2, 129) && m.is_one(1, 64) && m.is_one(1, 65));
        assert!(!m.is_one(2, 128) && !m.is_one(1, 66));
    }

    #[test]
    fn permutation_detection() {
        assert!(perm(&[3, 1, 2]).is_permutation());
        let m = Matrix01::new(2, 2, [Entry::new(1, 1), Entry::new(2, 1)]).unwrap();
        assert!(!m.is_permutation());
    }

    #[test]
    fn empty_line_insertion() {
        let m = perm(&[2, 1]);
        let r = m.insert_empty_rows(1, 2).unwrap();
        assert_eq!(r.entries(), entries(&[(1, 2), (4, 1)]).as_slice());
        let c = m.insert_empty_cols(0, 1).unwrap();
        assert_eq!(c.entries(), entries(&[(1, 3), (2, 2)]).as_slice());
    }
}
