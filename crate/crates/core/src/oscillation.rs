//! Oscillations, spanning oscillations and traversals of permutation matrices.
//!
//! Sequences are lists of 1-entries with 1-based positions `x_1..x_m`.
//! An oscillation is an induced path in the inversion graph. It is spanning
//! when it starts with the leftmost and topmost entries (in either order)
//! and ends with the bottommost and rightmost ones. A traversal loosens the
//! vertical constraints of an even spanning oscillation that starts with
//! the leftmost entry while keeping its horizontal interleaving.

use std::collections::HashSet;

use itertools::Itertools;

use crate::error::OscillationError;
use crate::matrix::{Entry, Transform};
use crate::perm::{extremes, inverted, perm_graph, PermGraph, PermutationMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    Oscillation,
    SpanningOscillation,
    Traversal,
    TallTraversal,
}

impl SequenceKind {
    fn name(self) -> &'static str {
        match self {
            SequenceKind::Oscillation => "oscillation",
            SequenceKind::SpanningOscillation => "spanning oscillation",
            SequenceKind::Traversal => "traversal",
            SequenceKind::TallTraversal => "tall traversal",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EntrySequence {
    pub entries: Vec<Entry>,
    pub kind: SequenceKind,
}

impl EntrySequence {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Tall,
    Wide,
}

/// An insertion point `s` and the pair `y1, y2` that goes after `x_s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Extension {
    pub s: usize,
    pub y1: Entry,
    pub y2: Entry,
}

fn check_members(p: &PermutationMatrix, seq: &[Entry]) -> Result<(), OscillationError> {
    let mut seen = HashSet::new();
    for &x in seq {
        if !p.has_entry(x) {
            return Err(OscillationError::NotAnEntry(x));
        }
        if !seen.insert(x) {
            return Err(OscillationError::Duplicate(x));
        }
    }
    Ok(())
}

fn is_induced_path(seq: &[Entry]) -> bool {
    seq.iter().enumerate().tuple_combinations().all(|((a, &x), (b, &y))| inverted(x, y) == (b == a + 1))
}

/// Whether `seq` satisfies every condition of `kind`.
///
/// Entries outside the matrix and repeated entries are errors rather than a
/// `false` verdict.
pub fn validate(p: &PermutationMatrix, seq: &[Entry], kind: SequenceKind) -> Result<bool, OscillationError> {
    check_members(p, seq)?;
    Ok(match kind {
        SequenceKind::Oscillation => !seq.is_empty() && is_induced_path(seq),
        SequenceKind::SpanningOscillation => is_spanning(p, seq),
        SequenceKind::Traversal => is_traversal(p, seq),
        SequenceKind::TallTraversal => is_traversal(p, seq) && tall_violation(p, seq, 0).is_none(),
    })
}

fn is_spanning(p: &PermutationMatrix, seq: &[Entry]) -> bool {
    let m = seq.len();
    if m < 4 || !is_induced_path(seq) {
        return false;
    }
    let x = extremes(p);
    let same = |a: Entry, b: Entry, u: Entry, v: Entry| (a == u && b == v) || (a == v && b == u);
    same(seq[0], seq[1], x.ell, x.t) && same(seq[m - 2], seq[m - 1], x.b, x.r)
}

/// Column order of a traversal: `x1 x3 x2 x5 x4 ... x_{m-1} x_{m-2} x_m`.
fn horizontal_chain(m: usize) -> Vec<usize> {
    let mut order = vec![1];
    let mut s = 3;
    while s < m {
        order.push(s);
        order.push(s - 1);
        s += 2;
    }
    order.push(m);
    order
}

fn is_traversal(p: &PermutationMatrix, seq: &[Entry]) -> bool {
    let m = seq.len();
    if m < 4 || m % 2 == 1 {
        return false;
    }
    let ext = extremes(p);
    let x = |i: usize| seq[i - 1];
    if (x(1), x(2), x(m - 1), x(m)) != (ext.ell, ext.t, ext.b, ext.r) {
        return false;
    }
    let cols_increase = |idx: &[usize]| idx.windows(2).all(|w| x(w[0]).col < x(w[1]).col);
    let rows_increase = |idx: &[usize]| idx.windows(2).all(|w| x(w[0]).row < x(w[1]).row);
    let upper: Vec<usize> = std::iter::once(1).chain((4..=m).step_by(2)).collect();
    let lower: Vec<usize> = (3..=m.saturating_sub(3)).step_by(2).chain(std::iter::once(m)).collect();
    cols_increase(&horizontal_chain(m))
        && rows_increase(&upper)
        && rows_increase(&lower)
        && (1..m).step_by(2).all(|s| x(s).row > x(s + 1).row)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Violation {
    /// Some entry is below `x_{i+1}` and left of `x_i`.
    Below(usize),
    /// Some entry is above `x_i` and right of `x_{i+1}`.
    Above(usize),
}

/// First tallness violation at the indices `2 <= i <= m-2` with
/// `i % 2 == parity`.
fn tall_violation(p: &PermutationMatrix, seq: &[Entry], parity: usize) -> Option<Violation> {
    let m = seq.len();
    let entries = p.entries();
    (2..=m.saturating_sub(2)).filter(|i| i % 2 == parity).find_map(|i| {
        let (xi, xn) = (seq[i - 1], seq[i]);
        if entries.iter().any(|z| z.is_below(xn) && z.is_left_of(xi)) {
            Some(Violation::Below(i))
        } else if entries.iter().any(|z| z.is_above(xi) && z.is_right_of(xn)) {
            Some(Violation::Above(i))
        } else {
            None
        }
    })
}

/// Indices of upper entries have this parity: even when the sequence starts
/// with the leftmost entry, odd when it starts with the topmost.
fn upper_parity(p: &PermutationMatrix, seq: &[Entry]) -> usize {
    if seq[0] == extremes(p).ell {
        0
    } else {
        1
    }
}

/// Tallness of a spanning oscillation or a traversal.
pub fn is_tall(p: &PermutationMatrix, seq: &[Entry]) -> Result<bool, OscillationError> {
    check_members(p, seq)?;
    if !is_spanning(p, seq) && !is_traversal(p, seq) {
        return Err(OscillationError::Invalid("spanning oscillation or traversal"));
    }
    Ok(tall_violation(p, seq, upper_parity(p, seq)).is_none())
}

/// Tallness of the transposed instance.
pub fn is_wide(p: &PermutationMatrix, seq: &[Entry]) -> Result<bool, OscillationError> {
    let (pt, st) = transform_instance(p, seq, Transform::Trans);
    is_tall(&pt, &st)
}

fn transform_instance(p: &PermutationMatrix, seq: &[Entry], op: Transform) -> (PermutationMatrix, Vec<Entry>) {
    let k = p.k();
    let image = PermutationMatrix::from_matrix(&p.to_matrix().transform(op)).expect("symmetries keep permutations");
    (image, seq.iter().map(|&e| op.apply(e, k, k)).collect())
}

/// Image of `seq` under a 180-degree rotation, read backwards so that it is
/// again a spanning oscillation (or traversal) of the rotated matrix.
pub fn rot2_sequence(k: usize, seq: &[Entry]) -> Vec<Entry> {
    seq.iter().rev().map(|&e| Transform::Rot2.apply(e, k, k)).collect()
}

/// A shortest spanning oscillation, lexicographically first among the
/// shortest, found by iterative deepening over induced paths.
pub fn find_min_spanning_oscillation(p: &PermutationMatrix) -> Option<EntrySequence> {
    let k = p.k();
    if k < 2 {
        return None;
    }
    let ext = extremes(p);
    let graph = perm_graph(p);
    let starts = [(ext.ell, ext.t), (ext.t, ext.ell)].into_iter().sorted().dedup().collect::<Vec<_>>();
    (4..=k).find_map(|m| {
        starts.iter().find_map(|&(a, b)| {
            if !graph.has_edge(a, b) {
                return None;
            }
            let mut path = vec![a, b];
            extend_path(&graph, &mut path, m, (ext.b, ext.r)).then_some(EntrySequence {
                entries: path,
                kind: SequenceKind::SpanningOscillation,
            })
        })
    })
}

/// Depth-first extension of an induced path to exactly `m` entries whose
/// last two are `ends` in some order. Neighbours are tried in row-major
/// order, so the first hit is lexicographically least.
fn extend_path(graph: &PermGraph, path: &mut Vec<Entry>, m: usize, ends: (Entry, Entry)) -> bool {
    let len = path.len();
    if len == m {
        let (u, v) = (path[m - 2], path[m - 1]);
        return (u, v) == ends || (v, u) == ends;
    }
    let last = path[len - 1];
    for y in graph.neighbors(last) {
        if path.contains(&y) {
            continue;
        }
        // the end pair may only occupy the last two positions
        if (y == ends.0 || y == ends.1) && len + 1 < m - 1 {
            continue;
        }
        if path[..len - 1].iter().any(|&z| graph.has_edge(z, y)) {
            continue;
        }
        path.push(y);
        if extend_path(graph, path, m, ends) {
            return true;
        }
        path.pop();
    }
    false
}

/// Repairs a shortest spanning oscillation until it is tall (or wide),
/// keeping its length and its first two and last two entries.
///
/// Each round takes the first violated index `i`. A violation of the
/// below-left condition is fixed by replacing `x_{i+1}` with the bottommost
/// entry below `x_{i+1}` and left of `x_i`; the above-right condition is the
/// same repair on the 180-degree rotation. Inputs that are not of minimum
/// length are rejected, since the repair may then shorten the sequence.
pub fn straighten(
    p: &PermutationMatrix,
    seq: &[Entry],
    orientation: Orientation,
) -> Result<EntrySequence, OscillationError> {
    if orientation == Orientation::Wide {
        let (pt, st) = transform_instance(p, seq, Transform::Trans);
        let tall = straighten(&pt, &st, Orientation::Tall)?;
        return Ok(EntrySequence {
            entries: tall.entries.iter().map(|e| e.transposed()).collect(),
            kind: SequenceKind::SpanningOscillation,
        });
    }
    check_members(p, seq)?;
    if !is_spanning(p, seq) {
        return Err(OscillationError::Invalid(SequenceKind::SpanningOscillation.name()));
    }
    let minimum = find_min_spanning_oscillation(p).map_or(0, |s| s.len());
    let m = seq.len();
    if m != minimum {
        return Err(OscillationError::NotMinimum { minimum, found: m });
    }
    let k = p.k();
    let parity = upper_parity(p, seq);
    let mut x = seq.to_vec();
    for _ in 0..4 * k * k {
        let next = match tall_violation(p, &x, parity) {
            None => {
                return Ok(EntrySequence { entries: x, kind: SequenceKind::SpanningOscillation });
            }
            Some(Violation::Below(i)) => repair_below(p, &x, i),
            Some(Violation::Above(i)) => {
                let (pr, xr) = (transform_instance(p, &[], Transform::Rot2).0, rot2_sequence(k, &x));
                rot2_sequence(k, &repair_below(&pr, &xr, m - i))
            }
        };
        if next.len() != m {
            return Err(OscillationError::NotMinimum { minimum: next.len(), found: m });
        }
        if !is_spanning(p, &next) {
            return Err(OscillationError::Inconsistent("repair produced an invalid oscillation".into()));
        }
        x = next;
    }
    Err(OscillationError::Inconsistent("tall repair did not converge".into()))
}

fn repair_below(p: &PermutationMatrix, x: &[Entry], i: usize) -> Vec<Entry> {
    let (xi, xn) = (x[i - 1], x[i]);
    let y = p
        .entries()
        .into_iter()
        .filter(|z| z.is_below(xn) && z.is_left_of(xi))
        .max_by_key(|z| z.row)
        .expect("violation has a witness entry");
    let j = x.iter().position(|z| z.is_right_of(y)).expect("x_i is right of y") + 1;
    let k = x.iter().rposition(|z| z.is_above(y)).expect("x_{i+2} is above y") + 1;
    x[..j].iter().copied().chain(std::iter::once(y)).chain(x[k - 1..].iter().copied()).collect()
}

fn require_tall_traversal(p: &PermutationMatrix, seq: &[Entry]) -> Result<(), OscillationError> {
    if validate(p, seq, SequenceKind::TallTraversal)? {
        Ok(())
    } else {
        Err(OscillationError::Invalid(SequenceKind::TallTraversal.name()))
    }
}

fn insert_after(seq: &[Entry], s: usize, y1: Entry, y2: Entry) -> Vec<Entry> {
    let mut out = Vec::with_capacity(seq.len() + 2);
    out.extend_from_slice(&seq[..s]);
    out.push(y1);
    out.push(y2);
    out.extend_from_slice(&seq[s..]);
    out
}

/// Looks for an odd `5 <= s <= m-5` and entries `y1, y2` whose insertion
/// after `x_s` gives a traversal. Returns the first hit in order of `s`,
/// then `y1`, then `y2` (row-major).
pub fn is_extendable(p: &PermutationMatrix, seq: &[Entry]) -> Result<Option<Extension>, OscillationError> {
    require_tall_traversal(p, seq)?;
    let m = seq.len();
    let free: Vec<Entry> = p.entries().into_iter().filter(|e| !seq.contains(e)).collect();
    for s in (5..=m.saturating_sub(5)).step_by(2) {
        for (&y1, &y2) in free.iter().cartesian_product(free.iter()) {
            if y1 != y2 && is_traversal(p, &insert_after(seq, s, y1, y2)) {
                return Ok(Some(Extension { s, y1, y2 }));
            }
        }
    }
    Ok(None)
}

/// Inserts pairs until the traversal is no longer extendable.
///
/// For each extension `(s, y1, y2)` found, the inserted pair is the one with
/// `y2'` left of `y1'`, `y1'` not below `y1`, `y2'` not above `y2`, and the
/// largest row distance, ties going to the lexicographically least pair.
/// That choice keeps the sequence a tall traversal; failure to do so is
/// reported as an internal inconsistency.
pub fn extend_to_nonextendable(p: &PermutationMatrix, seq: &[Entry]) -> Result<EntrySequence, OscillationError> {
    require_tall_traversal(p, seq)?;
    let entries = p.entries();
    let mut x = seq.to_vec();
    while let Some(Extension { s, y1, y2 }) = is_extendable(p, &x)? {
        let (a, b) = entries
            .iter()
            .cartesian_product(entries.iter())
            .filter(|(a, b)| b.is_left_of(**a) && a.row <= y1.row && b.row >= y2.row)
            .max_by(|(a1, b1), (a2, b2)| {
                (b1.row - a1.row)
                    .cmp(&(b2.row - a2.row))
                    .then_with(|| (a2, b2).cmp(&(a1, b1)))
            })
            .expect("the found pair qualifies");
        let next = insert_after(&x, s, *a, *b);
        if !validate(p, &next, SequenceKind::TallTraversal)? {
            return Err(OscillationError::Inconsistent(format!(
                "inserting {a} {b} after position {s} did not give a tall traversal"
            )));
        }
        x = next;
    }
    Ok(EntrySequence { entries: x, kind: SequenceKind::TallTraversal })
}
