//! Exhaustive saturation and extremal numbers for tiny dimensions.
//!
//! Both searches fill cells in row-major order, backtracking as soon as a
//! set cell completes an occurrence. They serve as ground truth for small
//! cases and refuse anything above [`CELL_LIMIT`] cells.

use crate::containment::HostIndex;
use crate::error::OracleError;
use crate::matrix::{Entry, Matrix01, Pattern};

pub const CELL_LIMIT: usize = 25;

/// An optimal weight together with the row-major-first matrix attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub weight: usize,
    pub matrix: Matrix01,
}

fn guard(rows: usize, cols: usize) -> Result<Vec<Entry>, OracleError> {
    let cells = rows * cols;
    if cells > CELL_LIMIT {
        return Err(OracleError::Guard { rows, cols, cells, limit: CELL_LIMIT });
    }
    Ok((1..=rows).flat_map(|i| (1..=cols).map(move |j| Entry::new(i, j))).collect())
}

struct Search<'a> {
    p: &'a Pattern,
    cells: Vec<Entry>,
    host: HostIndex,
    /// Chosen cells plus every undecided cell.
    optimistic: HostIndex,
    chosen: Vec<Entry>,
    zeros: Vec<Entry>,
    best: Option<Vec<Entry>>,
}

impl Search<'_> {
    fn is_maximal(&mut self) -> bool {
        let p = self.p;
        let cells = std::mem::take(&mut self.cells);
        let ok = cells.iter().all(|&c| self.host.has(c) || self.host.contains_with(p, c));
        self.cells = cells;
        ok
    }

    fn best_weight(&self) -> Option<usize> {
        self.best.as_ref().map(Vec::len)
    }

    fn try_set(&mut self, cell: Entry) -> bool {
        if self.host.contains_with(self.p, cell) {
            return false;
        }
        self.host.insert(cell);
        self.chosen.push(cell);
        true
    }

    fn unset(&mut self, cell: Entry) {
        self.host.remove(cell);
        self.chosen.pop();
    }

    /// Blocking only grows with the set of 1s, so a 0 that stays free even
    /// with every undecided cell set can never be blocked.
    fn zeros_blockable(&mut self) -> bool {
        let p = self.p;
        let zeros = std::mem::take(&mut self.zeros);
        let ok = zeros.iter().all(|&z| self.optimistic.contains_with(p, z));
        self.zeros = zeros;
        ok
    }

    fn minimum(&mut self, at: usize) {
        if self.best_weight().is_some_and(|b| self.chosen.len() >= b) {
            return;
        }
        if at == self.cells.len() {
            if self.is_maximal() {
                self.best = Some(self.chosen.clone());
            }
            return;
        }
        let cell = self.cells[at];
        self.optimistic.remove(cell);
        self.zeros.push(cell);
        if self.zeros_blockable() {
            self.minimum(at + 1);
        }
        self.zeros.pop();
        self.optimistic.insert(cell);
        if self.try_set(cell) {
            self.minimum(at + 1);
            self.unset(cell);
        }
    }

    fn maximum(&mut self, at: usize) {
        let remaining = self.cells.len() - at;
        if self.best_weight().is_some_and(|b| self.chosen.len() + remaining <= b) {
            return;
        }
        if at == self.cells.len() {
            self.best = Some(self.chosen.clone());
            return;
        }
        let cell = self.cells[at];
        if self.try_set(cell) {
            self.maximum(at + 1);
            self.unset(cell);
        }
        self.maximum(at + 1);
    }
}

fn run(p: &Pattern, rows: usize, cols: usize, minimise: bool) -> Result<OracleResult, OracleError> {
    let cells = guard(rows, cols)?;
    let full = Matrix01::new(rows, cols, cells.iter().copied()).expect("cells lie inside the grid");
    let mut s = Search {
        p,
        cells,
        host: HostIndex::new(&Matrix01::zeros(rows, cols)),
        optimistic: HostIndex::new(&full),
        chosen: Vec::new(),
        zeros: Vec::new(),
        best: None,
    };
    if minimise {
        s.minimum(0);
    } else {
        s.maximum(0);
    }
    let best = s.best.ok_or(OracleError::NoSaturatingMatrix)?;
    let weight = best.len();
    let matrix = Matrix01::new(rows, cols, best).expect("cells lie inside the grid");
    Ok(OracleResult { weight, matrix })
}

/// Least weight of an `rows x cols` matrix that is saturating for `p`.
pub fn sat_bruteforce(p: &Pattern, rows: usize, cols: usize) -> Result<OracleResult, OracleError> {
    run(p, rows, cols, true)
}

/// Greatest weight of an `rows x cols` matrix avoiding `p`.
pub fn ex_bruteforce(p: &Pattern, rows: usize, cols: usize) -> Result<OracleResult, OracleError> {
    run(p, rows, cols, false)
}
