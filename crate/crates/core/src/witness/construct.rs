//! Block layouts for the three vertical-witness constructions.
//!
//! Each builder returns the matrix together with the row it is built to
//! make expandable. Nothing here checks avoidance; callers certify.

use crate::error::WitnessError;
use crate::matrix::{split_at_entry, Entry, Matrix01, Pattern, Side};
use crate::perm::{extremes, PermutationMatrix};

fn precondition(msg: impl Into<String>) -> WitnessError {
    WitnessError::Precondition(msg.into())
}

fn only_entry_in_col(p: &Matrix01, col: usize) -> Option<Entry> {
    let mut it = p.entries().iter().filter(|e| e.col == col);
    match (it.next(), it.next()) {
        (Some(&e), None) => Some(e),
        _ => None,
    }
}

/// `L` beside `R`: the pattern without its last column over `i'-i` empty
/// rows, then the pattern without its first column under `i'-i` empty rows.
pub(crate) fn split_layout(p: &Pattern) -> Result<(Matrix01, usize), WitnessError> {
    let cols = p.cols();
    let ell = only_entry_in_col(p, 1).ok_or_else(|| precondition("leftmost column has more than one entry"))?;
    let r = only_entry_in_col(p, cols).ok_or_else(|| precondition("rightmost column has more than one entry"))?;
    if !ell.is_above(r) {
        return Err(precondition(format!("leftmost entry {ell} is not above rightmost entry {r}")));
    }
    if p.row_weight(ell.row) != 1 || p.row_weight(r.row) != 1 {
        return Err(precondition("leftmost and rightmost entries must be alone in their rows"));
    }
    let shift = r.row - ell.row;
    let left = p.column_range(1, cols - 1);
    let right = p.column_range(2, cols);
    let mut canvas = crate::matrix::Canvas::new(p.rows() + shift, 2 * cols - 2);
    canvas.place(&left, 0, 0);
    canvas.place(&right, shift, cols - 1);
    Ok((canvas.build()?, r.row))
}

/// Blocks `L', R, L, R'` around the pivot `q`, aligned on the row of `r`,
/// with the part of `L' ∪ R'` below the copy of `ℓ` moved down `k` rows.
pub(crate) fn pivot_layout(p: &PermutationMatrix, q: Entry) -> Result<(Matrix01, usize), WitnessError> {
    let k = p.k();
    let m = p.to_matrix();
    let ex = extremes(p);
    if !p.has_entry(q) {
        return Err(precondition(format!("{q} is not an entry")));
    }
    if !q.is_above(ex.ell) {
        return Err(precondition(format!("pivot {q} is not above the leftmost entry {}", ex.ell)));
    }
    if !ex.ell.is_above(ex.r) {
        return Err(precondition("leftmost entry is not above the rightmost entry"));
    }
    let e = ex.r.row;
    let primed_shift = e - q.row;
    let blocks = [
        (split_at_entry(&m, q, Side::Left)?, primed_shift, true),
        (split_at_entry(&m, ex.ell, Side::Right)?, e - ex.ell.row, false),
        (split_at_entry(&m, ex.r, Side::Left)?, 0, false),
        (split_at_entry(&m, q, Side::Right)?, primed_shift, true),
    ];
    let ell_copy_row = ex.ell.row + primed_shift;
    let mut entries = Vec::with_capacity(3 * k);
    let mut col_offset = 0;
    for (block, row_shift, primed) in &blocks {
        for x in block.entries() {
            let mut row = x.row + row_shift;
            if *primed && row > ell_copy_row {
                row += k;
            }
            entries.push(Entry::new(row, x.col + col_offset));
        }
        col_offset += block.cols();
    }
    let height = entries.iter().map(|x| x.row).max().unwrap_or(0).max(e);
    Ok((Matrix01::new(height, col_offset, entries)?, e))
}

#[derive(Clone, Copy)]
enum Half {
    Left,
    Right,
}

/// Block order of the traversal layout: `L3 R1`, then `L_s R_{s-1}` for
/// `s = 4..=m-2`, then `L_m R_{m-2}` (1-based indices into the traversal).
fn traversal_blocks(m: usize) -> Vec<(Half, usize)> {
    let mut order = vec![(Half::Left, 3), (Half::Right, 1)];
    for s in 4..=m - 2 {
        order.push((Half::Left, s));
        order.push((Half::Right, s - 1));
    }
    order.push((Half::Left, m));
    order.push((Half::Right, m - 2));
    order
}

/// Splits at every `x_s` placed side by side on a common empty row
/// `(m-3)k`, an empty column before each right split and after `L_m`, then
/// the upper parts of late blocks lifted and the lower parts of early
/// blocks dropped so that distant blocks cannot combine.
pub(crate) fn traversal_layout(p: &PermutationMatrix, x: &[Entry]) -> Result<(Matrix01, usize), WitnessError> {
    let k = p.k();
    let m = x.len();
    if m < 6 || m % 2 == 1 || m > k {
        return Err(precondition(format!("traversal length {m} must be even and between 6 and {k}")));
    }
    let pm = p.to_matrix();
    let e = (m - 3) * k;
    let lifted = |s: usize| (5..=m - 2).contains(&s) || s == m;
    let dropped = |s: usize| s == 1 || s == 3 || (4..=m - 4).contains(&s);
    let mut entries = Vec::with_capacity((m - 2) * k);
    let mut col = 0;
    for (half, s) in traversal_blocks(m) {
        let xs = x[s - 1];
        let block = match half {
            Half::Left => split_at_entry(&pm, xs, Side::Left)?,
            Half::Right => {
                col += 1;
                split_at_entry(&pm, xs, Side::Right)?
            }
        };
        for y in block.entries() {
            let mut row = y.row + e - xs.row;
            if lifted(s) && row + 2 <= e {
                row -= (s - 4) * k;
            } else if dropped(s) && row >= e + 2 {
                row += (m - s - 3) * k;
            }
            entries.push(Entry::new(row, y.col + col));
        }
        col += block.cols();
        if matches!(half, Half::Left) && s == m {
            col += 1;
        }
    }
    Ok((Matrix01::new((2 * m - 6) * k + 1, col, entries)?, e))
}
