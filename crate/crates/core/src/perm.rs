//! Permutation matrices, their extreme entries, decomposability, the
//! inversion graph, and the bounded/linear classification.

use std::fmt;

use itertools::Itertools;

use crate::matrix::{Entry, Matrix01, Pattern};

/// A `k x k` permutation matrix stored as `sigma[i - 1] = column of row i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermutationMatrix {
    sigma: Vec<usize>,
}

impl PermutationMatrix {
    /// `None` unless `sigma` is a permutation of `1..=k` with `k >= 1`.
    pub fn new(sigma: Vec<usize>) -> Option<Self> {
        let k = sigma.len();
        if k == 0 {
            return None;
        }
        let mut seen = vec![false; k + 1];
        for &c in &sigma {
            if c == 0 || c > k || std::mem::replace(&mut seen[c], true) {
                return None;
            }
        }
        Some(PermutationMatrix { sigma })
    }

    pub fn from_matrix(m: &Matrix01) -> Option<Self> {
        if !m.is_permutation() {
            return None;
        }
        Some(PermutationMatrix { sigma: m.entries().iter().map(|e| e.col).collect() })
    }

    pub fn k(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn col_of(&self, row: usize) -> usize {
        self.sigma[row - 1]
    }

    pub fn entry_in_row(&self, row: usize) -> Entry {
        Entry::new(row, self.sigma[row - 1])
    }

    pub fn entry_in_col(&self, col: usize) -> Entry {
        let row = self.sigma.iter().position(|&c| c == col).expect("column in range") + 1;
        Entry::new(row, col)
    }

    /// Entries in row order.
    pub fn entries(&self) -> Vec<Entry> {
        (1..=self.k()).map(|i| self.entry_in_row(i)).collect()
    }

    pub fn has_entry(&self, e: Entry) -> bool {
        e.row >= 1 && e.row <= self.k() && self.sigma[e.row - 1] == e.col
    }

    pub fn to_matrix(&self) -> Matrix01 {
        Matrix01::from_permutation(&self.sigma).expect("valid permutation")
    }

    pub fn to_pattern(&self) -> Pattern {
        Pattern::new(self.to_matrix()).expect("permutation matrices are reduced")
    }

    /// All permutations of `1..=k` in lexicographic order.
    pub fn all(k: usize) -> impl Iterator<Item = PermutationMatrix> {
        (1..=k).permutations(k).map(|sigma| PermutationMatrix { sigma })
    }
}

/// Leftmost, topmost, bottommost and rightmost 1-entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Extremes {
    pub ell: Entry,
    pub t: Entry,
    pub b: Entry,
    pub r: Entry,
}

pub fn extremes(p: &PermutationMatrix) -> Extremes {
    let k = p.k();
    Extremes {
        ell: p.entry_in_col(1),
        t: p.entry_in_row(1),
        b: p.entry_in_row(k),
        r: p.entry_in_col(k),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecomposeKind {
    /// Block form `(A 0; 0 B)`.
    SumDecomposable,
    /// Block form `(0 A; B 0)`.
    SkewDecomposable,
    Indecomposable,
}

impl fmt::Display for DecomposeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecomposeKind::SumDecomposable => "sum-decomposable",
            DecomposeKind::SkewDecomposable => "skew-decomposable",
            DecomposeKind::Indecomposable => "indecomposable",
        })
    }
}

/// Prefix test: the first `j` rows use exactly columns `1..=j` (sum) or
/// `k-j+1..=k` (skew) for some `1 <= j < k`. The sum form wins a tie.
pub fn decompose_kind(p: &PermutationMatrix) -> DecomposeKind {
    let k = p.k();
    let (mut min, mut max) = (usize::MAX, 0);
    let mut skew = false;
    for j in 1..k {
        let c = p.col_of(j);
        min = min.min(c);
        max = max.max(c);
        if max == j {
            return DecomposeKind::SumDecomposable;
        }
        skew |= min == k - j + 1;
    }
    if skew {
        DecomposeKind::SkewDecomposable
    } else {
        DecomposeKind::Indecomposable
    }
}

/// Decomposability of an arbitrary matrix: some row split and column split
/// leave all 1-entries in two diagonal (sum) or anti-diagonal (skew) blocks,
/// both nonzero.
pub fn block_decomposition(m: &Matrix01) -> DecomposeKind {
    let mut skew = false;
    for i in 1..m.rows() {
        for j in 1..m.cols() {
            let quadrant = |e: &Entry| (e.row > i, e.col > j);
            let count = |q: (bool, bool)| m.entries().iter().filter(|e| quadrant(e) == q).count();
            let (tl, tr, bl, br) = (count((false, false)), count((false, true)), count((true, false)), count((true, true)));
            if tr == 0 && bl == 0 && tl > 0 && br > 0 {
                return DecomposeKind::SumDecomposable;
            }
            skew |= tl == 0 && br == 0 && tr > 0 && bl > 0;
        }
    }
    if skew {
        DecomposeKind::SkewDecomposable
    } else {
        DecomposeKind::Indecomposable
    }
}

/// Inversion graph: `x` and `y` are adjacent when one is strictly below and
/// strictly left of the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGraph {
    vertices: Vec<Entry>,
    adjacent: Vec<Vec<bool>>,
}

impl PermGraph {
    pub fn vertices(&self) -> &[Entry] {
        &self.vertices
    }

    fn index(&self, x: Entry) -> Option<usize> {
        self.vertices.binary_search(&x).ok()
    }

    pub fn has_edge(&self, x: Entry, y: Entry) -> bool {
        match (self.index(x), self.index(y)) {
            (Some(a), Some(b)) => self.adjacent[a][b],
            _ => false,
        }
    }

    /// Each edge once, as `(upper, lower)` in row order.
    pub fn edges(&self) -> Vec<(Entry, Entry)> {
        let n = self.vertices.len();
        (0..n)
            .tuple_combinations()
            .filter(|&(a, b)| self.adjacent[a][b])
            .map(|(a, b)| (self.vertices[a], self.vertices[b]))
            .collect()
    }

    pub fn neighbors(&self, x: Entry) -> Vec<Entry> {
        let Some(a) = self.index(x) else {
            return Vec::new();
        };
        (0..self.vertices.len()).filter(|&b| self.adjacent[a][b]).map(|b| self.vertices[b]).collect()
    }
}

pub fn inverted(x: Entry, y: Entry) -> bool {
    (x.is_below(y) && x.is_left_of(y)) || (y.is_below(x) && y.is_left_of(x))
}

pub fn perm_graph(p: &PermutationMatrix) -> PermGraph {
    let vertices = p.entries();
    let adjacent = vertices
        .iter()
        .map(|&x| vertices.iter().map(|&y| inverted(x, y)).collect())
        .collect();
    PermGraph { vertices, adjacent }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Relative order `2 4 1 3`.
    A,
    /// Relative order `3 1 4 2`.
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FourTrav {
    /// The four entries in row order.
    pub entries: [Entry; 4],
    pub variant: Variant,
}

/// Looks for four entries, each alone in its row and column and each on the
/// boundary of the matrix, that form `2 4 1 3` or `3 1 4 2`. Returns the
/// lexicographically first such quadruple.
pub fn detect_four_trav_class(p: &Pattern) -> Option<FourTrav> {
    let (rows, cols) = (p.rows(), p.cols());
    let row_w = line_weights(p.entries().iter().map(|e| e.row), rows);
    let col_w = line_weights(p.entries().iter().map(|e| e.col), cols);
    let candidates: Vec<Entry> = p
        .entries()
        .iter()
        .copied()
        .filter(|e| row_w[e.row] == 1 && col_w[e.col] == 1)
        .filter(|e| e.row == 1 || e.row == rows || e.col == 1 || e.col == cols)
        .collect();
    candidates.into_iter().combinations(4).find_map(|quad| {
        let entries: [Entry; 4] = quad.try_into().ok()?;
        let ranks = column_ranks(&entries);
        let variant = match ranks {
            [2, 4, 1, 3] => Variant::A,
            [3, 1, 4, 2] => Variant::B,
            _ => return None,
        };
        Some(FourTrav { entries, variant })
    })
}

fn line_weights(lines: impl Iterator<Item = usize>, len: usize) -> Vec<usize> {
    let mut w = vec![0; len + 1];
    for l in lines {
        w[l] += 1;
    }
    w
}

fn column_ranks(entries: &[Entry; 4]) -> [usize; 4] {
    let mut ranks = [0; 4];
    for (i, e) in entries.iter().enumerate() {
        ranks[i] = 1 + entries.iter().filter(|o| o.col < e.col).count();
    }
    ranks
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Bounded,
    Linear,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    Decomposable,
    IndecomposablePermutation,
    FourTravClass,
    InsufficientCriteria,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Classification {
    pub verdict: Verdict,
    pub reason: Reason,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.verdict {
            Verdict::Bounded => "Bounded",
            Verdict::Linear => "Linear",
            Verdict::Unknown => "Unknown",
        };
        let reason = match self.reason {
            Reason::Decomposable => "decomposable",
            Reason::IndecomposablePermutation => "indecomposable permutation",
            Reason::FourTravClass => "four-extremes class",
            Reason::InsufficientCriteria => "insufficient criteria",
        };
        write!(f, "{verdict} ({reason})")
    }
}

/// Bounded or linear saturation, where known.
///
/// Permutation matrices are settled completely: linear iff decomposable.
/// For other patterns only decomposability (linear) and the four-extremes
/// class (bounded) are decided; anything else is `Unknown`.
pub fn classify(p: &Pattern) -> Classification {
    let c = |verdict, reason| Classification { verdict, reason };
    if let Some(perm) = PermutationMatrix::from_matrix(p) {
        return match decompose_kind(&perm) {
            DecomposeKind::Indecomposable => c(Verdict::Bounded, Reason::IndecomposablePermutation),
            _ => c(Verdict::Linear, Reason::Decomposable),
        };
    }
    if block_decomposition(p) != DecomposeKind::Indecomposable {
        c(Verdict::Linear, Reason::Decomposable)
    } else if detect_four_trav_class(p).is_some() {
        c(Verdict::Bounded, Reason::FourTravClass)
    } else {
        c(Verdict::Unknown, Reason::InsufficientCriteria)
    }
}
