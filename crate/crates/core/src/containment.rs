//! Pattern containment.
//!
//! For a reduced pattern `P`, a matrix `M` contains `P` exactly when the
//! 1-entries of `P` embed into those of `M` preserving both the row order
//! and the column order. Such an embedding is the same thing as a pair of
//! strictly increasing maps, one on rows and one on columns, so the search
//! below assigns pattern rows and columns to host rows and columns while
//! walking the pattern entries column by column.

use itertools::Itertools;

use crate::matrix::{Entry, Matrix01, Pattern};

/// An order-preserving map from the 1-entries of a pattern into a host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pairs: Vec<(Entry, Entry)>,
}

impl Embedding {
    /// `(pattern entry, host entry)` pairs, in row-major pattern order.
    pub fn pairs(&self) -> &[(Entry, Entry)] {
        &self.pairs
    }

    pub fn image(&self, x: Entry) -> Option<Entry> {
        self.pairs.iter().find(|(p, _)| *p == x).map(|(_, h)| *h)
    }

    /// Checks every pair of entries against both orders, and that each image
    /// is a 1-entry of `host`.
    pub fn is_valid(&self, host: &Matrix01, pattern: &Pattern) -> bool {
        if self.pairs.len() != pattern.weight() {
            return false;
        }
        let images_ok = self.pairs.iter().all(|&(p, h)| pattern.has_entry(p) && host.has_entry(h));
        images_ok
            && self.pairs.iter().tuple_combinations().all(|(&(x, fx), &(y, fy))| {
                x.col.cmp(&y.col) == fx.col.cmp(&fy.col) && x.row.cmp(&y.row) == fx.row.cmp(&fy.row)
            })
    }
}

/// Lookup structure over the 1-entries of a host matrix.
///
/// Cells can be inserted and removed, which lets saturation checks probe
/// one extra cell at a time without rebuilding anything.
#[derive(Debug, Clone)]
pub struct HostIndex {
    rows: usize,
    cols: usize,
    by_row: Vec<Vec<usize>>,
    by_col: Vec<Vec<usize>>,
    weight: usize,
}

impl HostIndex {
    pub fn new(m: &Matrix01) -> Self {
        let mut by_row = vec![Vec::new(); m.rows() + 1];
        let mut by_col = vec![Vec::new(); m.cols() + 1];
        for e in m.entries() {
            by_row[e.row].push(e.col);
        }
        for e in m.entries().iter().sorted_by_key(|e| e.col_major()) {
            by_col[e.col].push(e.row);
        }
        HostIndex { rows: m.rows(), cols: m.cols(), by_row, by_col, weight: m.weight() }
    }

    pub fn has(&self, e: Entry) -> bool {
        e.row >= 1 && e.row <= self.rows && self.by_row[e.row].binary_search(&e.col).is_ok()
    }

    /// Adds a 1-entry. Returns false if it was already present.
    pub fn insert(&mut self, e: Entry) -> bool {
        assert!(e.row >= 1 && e.row <= self.rows && e.col >= 1 && e.col <= self.cols, "cell out of range");
        match self.by_row[e.row].binary_search(&e.col) {
            Ok(_) => false,
            Err(at) => {
                self.by_row[e.row].insert(at, e.col);
                let at = self.by_col[e.col].binary_search(&e.row).unwrap_err();
                self.by_col[e.col].insert(at, e.row);
                self.weight += 1;
                true
            }
        }
    }

    /// Removes a 1-entry. Returns false if it was absent.
    pub fn remove(&mut self, e: Entry) -> bool {
        if e.row < 1 || e.row > self.rows || e.col < 1 || e.col > self.cols {
            return false;
        }
        match self.by_row[e.row].binary_search(&e.col) {
            Err(_) => false,
            Ok(at) => {
                self.by_row[e.row].remove(at);
                let at = self.by_col[e.col].binary_search(&e.row).unwrap();
                self.by_col[e.col].remove(at);
                self.weight -= 1;
                true
            }
        }
    }

    pub fn find(&self, p: &Pattern) -> Option<Embedding> {
        let mut search = Search::new(self, p)?;
        search.run().then(|| search.embedding())
    }

    pub fn contains(&self, p: &Pattern) -> bool {
        Search::new(self, p).is_some_and(|mut s| s.run())
    }

    /// Whether the host, with `cell` set to 1, has an occurrence of `p` that
    /// uses `cell`.
    ///
    /// If the host avoids `p` this equals "setting `cell` creates an
    /// occurrence", which is the question saturation and expandability ask.
    pub fn contains_with(&mut self, p: &Pattern, cell: Entry) -> bool {
        let added = self.insert(cell);
        let found = self.anchored(p, cell);
        if added {
            self.remove(cell);
        }
        found
    }

    fn anchored(&self, p: &Pattern, cell: Entry) -> bool {
        let Some(base) = Search::new(self, p) else {
            return false;
        };
        p.entries().iter().any(|&x| {
            let fits_row = cell.row >= x.row && self.rows - cell.row >= p.rows() - x.row;
            let fits_col = cell.col >= x.col && self.cols - cell.col >= p.cols() - x.col;
            if !(fits_row && fits_col) {
                return false;
            }
            let mut s = base.clone();
            s.rowmap[x.row] = cell.row;
            s.colmap[x.col] = cell.col;
            s.run()
        })
    }
}

/// Backtracking state: `rowmap[r]` / `colmap[c]` hold the host line assigned
/// to pattern row `r` / column `c`, or 0 when unassigned.
///
/// Pattern entries are placed in column-major order. When an entry is the
/// only one in its pattern column, later entries merely need host columns to
/// its right, so for a fixed host row the leftmost candidate column
/// dominates all others and is the only one tried.
#[derive(Clone)]
struct Search<'a> {
    host: &'a HostIndex,
    order: Vec<Entry>,
    lone_in_col: Vec<bool>,
    rowmap: Vec<usize>,
    colmap: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(host: &'a HostIndex, p: &Pattern) -> Option<Self> {
        if p.rows() > host.rows || p.cols() > host.cols || p.weight() > host.weight {
            return None;
        }
        let order: Vec<Entry> = p.entries().iter().copied().sorted_by_key(|e| e.col_major()).collect();
        let lone_in_col = order.iter().map(|e| p.col_weight(e.col) == 1).collect();
        Some(Search {
            host,
            order,
            lone_in_col,
            rowmap: vec![0; p.rows() + 1],
            colmap: vec![0; p.cols() + 1],
        })
    }

    fn run(&mut self) -> bool {
        self.step(0)
    }

    fn embedding(&self) -> Embedding {
        let mut pairs: Vec<(Entry, Entry)> = self
            .order
            .iter()
            .map(|&x| (x, Entry::new(self.rowmap[x.row], self.colmap[x.col])))
            .collect();
        pairs.sort();
        Embedding { pairs }
    }

    /// Feasible host range for pattern line `p`, given the nearest assigned
    /// lines on either side.
    fn bounds(map: &[usize], p: usize, host_len: usize) -> (usize, usize) {
        let pat_len = map.len() - 1;
        let lo = (1..p).rev().find(|&q| map[q] != 0).map_or(p, |q| map[q] + (p - q));
        let hi = (p + 1..=pat_len)
            .find(|&q| map[q] != 0)
            .map_or(host_len - (pat_len - p), |q| map[q] - (q - p));
        (lo, hi)
    }

    fn step(&mut self, idx: usize) -> bool {
        let Some(&x) = self.order.get(idx) else {
            return true;
        };
        let host = self.host;
        let (hr, hc) = (self.rowmap[x.row], self.colmap[x.col]);
        match (hr != 0, hc != 0) {
            (true, true) => host.has(Entry::new(hr, hc)) && self.step(idx + 1),
            (true, false) => {
                let (lo, hi) = Self::bounds(&self.colmap, x.col, host.cols);
                let mut cands = in_range(&host.by_row[hr], lo, hi);
                if self.lone_in_col[idx] {
                    cands = &cands[..cands.len().min(1)];
                }
                for &j in cands {
                    self.colmap[x.col] = j;
                    if self.step(idx + 1) {
                        return true;
                    }
                }
                self.colmap[x.col] = 0;
                false
            }
            (false, true) => {
                let (lo, hi) = Self::bounds(&self.rowmap, x.row, host.rows);
                for &i in in_range(&host.by_col[hc], lo, hi) {
                    self.rowmap[x.row] = i;
                    if self.step(idx + 1) {
                        return true;
                    }
                }
                self.rowmap[x.row] = 0;
                false
            }
            (false, false) => {
                let (clo, chi) = Self::bounds(&self.colmap, x.col, host.cols);
                let (rlo, rhi) = Self::bounds(&self.rowmap, x.row, host.rows);
                if self.lone_in_col[idx] {
                    for i in rlo..=rhi {
                        let Some(&j) = in_range(&host.by_row[i], clo, chi).first() else {
                            continue;
                        };
                        self.rowmap[x.row] = i;
                        self.colmap[x.col] = j;
                        if self.step(idx + 1) {
                            return true;
                        }
                    }
                    self.rowmap[x.row] = 0;
                    self.colmap[x.col] = 0;
                    return false;
                }
                for j in clo..=chi {
                    for &i in in_range(&host.by_col[j], rlo, rhi) {
                        self.rowmap[x.row] = i;
                        self.colmap[x.col] = j;
                        if self.step(idx + 1) {
                            return true;
                        }
                    }
                }
                self.rowmap[x.row] = 0;
                self.colmap[x.col] = 0;
                false
            }
        }
    }
}

fn in_range(sorted: &[usize], lo: usize, hi: usize) -> &[usize] {
    if lo > hi {
        return &[];
    }
    let start = sorted.partition_point(|&v| v < lo);
    let end = sorted.partition_point(|&v| v <= hi);
    &sorted[start..end]
}

/// Finds an embedding of `p` into `m`, trying host entries in column-major
/// order so the result is deterministic.
pub fn find_embedding(m: &Matrix01, p: &Pattern) -> Option<Embedding> {
    HostIndex::new(m).find(p)
}

pub fn contains(m: &Matrix01, p: &Pattern) -> bool {
    HostIndex::new(m).contains(p)
}

pub fn avoids(m: &Matrix01, p: &Pattern) -> bool {
    !contains(m, p)
}

/// Whether `m` with `cell` set has an occurrence of `p` through `cell`.
pub fn contains_with(m: &Matrix01, p: &Pattern, cell: Entry) -> bool {
    HostIndex::new(m).contains_with(p, cell)
}

/// Containment by enumerating every choice of rows and columns of `m` and
/// testing cell-wise dominance. Exponential; meant for tiny instances.
pub fn contains_naive(m: &Matrix01, p: &Pattern) -> bool {
    if p.rows() > m.rows() || p.cols() > m.cols() {
        return false;
    }
    (1..=m.rows()).combinations(p.rows()).any(|rs| {
        (1..=m.cols())
            .combinations(p.cols())
            .any(|cs| p.entries().iter().all(|e| m.is_one(rs[e.row - 1], cs[e.col - 1])))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_matrix;
    use crate::matrix::Transform;
    use proptest::prelude::*;

    fn pat(text: &str) -> Pattern {
        Pattern::new(parse_matrix(text).unwrap()).unwrap()
    }

    fn mat(rows: usize, cols: usize, list: &[(usize, usize)]) -> Matrix01 {
        Matrix01::new(rows, cols, list.iter().map(|&p| p.into())).unwrap()
    }

    #[test]
    fn pattern_embeds_in_itself_identically() {
        let p = pat("perm: 2 5 3 1 4");
        let e = find_embedding(&p, &p).unwrap();
        assert!(e.pairs().iter().all(|(a, b)| a == b));
        assert!(e.is_valid(&p, &p));
    }

    #[test]
    fn split_witness_avoids() {
        let s = mat(5, 6, &[(1, 3), (2, 1), (2, 5), (4, 2), (4, 6), (5, 4)]);
        let p = pat("perm: 3 1 4 2");
        assert!(find_embedding(&s, &p).is_none());
        assert!(!contains_naive(&s, &p));
    }

    #[test]
    fn full_witness_avoids() {
        let w = mat(
            11,
            11,
            &[(1, 10), (2, 8), (3, 11), (4, 7), (5, 10), (6, 8), (7, 3), (8, 1), (8, 5), (10, 2), (10, 6), (11, 4)],
        );
        assert!(avoids(&w, &pat("perm: 3 1 4 2")));
    }

    #[test]
    fn naive_examples() {
        let ones = mat(3, 3, &(1..=3).flat_map(|i| (1..=3).map(move |j| (i, j))).collect::<Vec<_>>());
        assert!(contains_naive(&ones, &pat("perm: 1 2")));
        let anti = mat(2, 2, &[(1, 2), (2, 1)]);
        assert!(!contains_naive(&anti, &pat("perm: 1 2")));
        assert!(contains_naive(&mat(3, 4, &[(2, 3)]), &pat("1")));
        assert!(!contains_naive(&Matrix01::zeros(3, 3), &pat("1")));
    }

    #[test]
    fn anchored_probe_matches_full_check() {
        let s = mat(5, 6, &[(1, 3), (2, 1), (2, 5), (4, 2), (4, 6), (5, 4)]);
        let p = pat("perm: 3 1 4 2");
        let mut index = HostIndex::new(&s);
        for i in 1..=5 {
            for j in 1..=6 {
                let cell = Entry::new(i, j);
                if s.has_entry(cell) {
                    continue;
                }
                let full = contains(&s.with_entry(cell).unwrap(), &p);
                assert_eq!(index.contains_with(&p, cell), full, "{cell}");
            }
        }
        assert!(index.contains_with(&p, Entry::new(3, 1)));
        assert!(!index.has(Entry::new(3, 1)));
    }

    #[test]
    fn non_permutation_pattern() {
        let p = pat("11\n10");
        assert!(contains(&mat(3, 3, &[(1, 1), (1, 3), (3, 1)]), &p));
        assert!(!contains(&mat(3, 3, &[(1, 3), (3, 1), (2, 2)]), &p));
        // same column must map to the same column
        let q = pat("1\n1");
        assert!(!contains(&mat(2, 2, &[(1, 1), (2, 2)]), &q));
    }

    fn arb_matrix(rmax: usize, cmax: usize, density: f64) -> impl Strategy<Value = Matrix01> {
        (1..=rmax, 1..=cmax).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(proptest::bool::weighted(density), r * c).prop_map(move |bits| {
                Matrix01::new(
                    r,
                    c,
                    bits.iter()
                        .enumerate()
                        .filter(|(_, &b)| b)
                        .map(|(idx, _)| Entry::new(idx / c + 1, idx % c + 1)),
                )
                .unwrap()
            })
        })
    }

    fn arb_pattern(max: usize) -> impl Strategy<Value = Pattern> {
        arb_matrix(max, max, 0.5).prop_filter_map("reduced", |m| Pattern::new(m).ok())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn agrees_with_naive(m in arb_matrix(6, 6, 0.4), p in arb_pattern(3)) {
            let found = find_embedding(&m, &p);
            prop_assert_eq!(found.is_some(), contains_naive(&m, &p));
            if let Some(e) = found {
                prop_assert!(e.is_valid(&m, &p));
            }
        }

        #[test]
        fn monotone_under_adding_cells(m in arb_matrix(6, 6, 0.3), p in arb_pattern(3), r in 1usize..=6, c in 1usize..=6) {
            let cell = Entry::new(r.min(m.rows()), c.min(m.cols()));
            if contains(&m, &p) {
                prop_assert!(contains(&m.with_entry(cell).unwrap(), &p));
            }
        }

        #[test]
        fn equivariant_under_symmetries(m in arb_matrix(7, 7, 0.35), p in arb_pattern(3)) {
            let base = contains(&m, &p);
            for op in Transform::ALL {
                prop_assert_eq!(contains(&m.transform(op), &p.transform(op)), base);
            }
        }

        #[test]
        fn reflexive(p in arb_pattern(5)) {
            prop_assert!(contains(&p, &p));
        }
    }
}
