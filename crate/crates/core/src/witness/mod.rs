//! Witness constructions and their certificates.
//!
//! A vertical witness avoids the pattern and has an empty row where any
//! added 1 completes an occurrence. Vertical witnesses come from one of
//! three layouts depending on the shape of a shortest spanning oscillation;
//! a full witness stacks a vertical and a horizontal one, and an explicit
//! witness fills a full witness greedily until it is saturating.
//!
//! Every public builder runs its output through the verifier and turns a
//! failed check into [`WitnessError::Verification`].

mod construct;

use crate::containment::HostIndex;
use crate::error::WitnessError;
use crate::matrix::{Canvas, Entry, Matrix01, Pattern, Transform};
use crate::oscillation::{
    extend_to_nonextendable, find_min_spanning_oscillation, is_extendable, rot2_sequence, straighten, validate,
    Orientation, SequenceKind,
};
use crate::perm::{decompose_kind, detect_four_trav_class, extremes, DecomposeKind, PermutationMatrix, Variant};
use crate::verify::{certify, certify_certificate, expandable_lines, Axis, Claim};

/// A matrix, the pattern it was built for, the property it claims and the
/// lines it claims are expandable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub matrix: Matrix01,
    pub pattern: Pattern,
    pub role: Claim,
    pub expandable_rows: Vec<usize>,
    pub expandable_cols: Vec<usize>,
}

fn checked(cert: WitnessCertificate) -> Result<WitnessCertificate, WitnessError> {
    let report = certify_certificate(&cert);
    if report.holds {
        Ok(cert)
    } else {
        Err(WitnessError::Verification(report.diagnostic.unwrap_or_default()))
    }
}

fn vertical(matrix: Matrix01, pattern: &Pattern, row: usize) -> WitnessCertificate {
    WitnessCertificate {
        matrix,
        pattern: pattern.clone(),
        role: Claim::VerticalWitness,
        expandable_rows: vec![row],
        expandable_cols: vec![],
    }
}

/// The split layout for a pattern whose unique leftmost entry lies above
/// its unique rightmost entry, both alone in their rows.
pub fn split_witness(p: &Pattern) -> Result<WitnessCertificate, WitnessError> {
    let (m, row) = construct::split_layout(p)?;
    checked(vertical(m, p, row))
}

/// The pivot layout around `q`, without the avoidance check.
pub fn pivot_witness_unverified(p: &PermutationMatrix, q: Entry) -> Result<WitnessCertificate, WitnessError> {
    let (m, row) = construct::pivot_layout(p, q)?;
    Ok(vertical(m, &p.to_pattern(), row))
}

/// The pivot layout around `q`, certified.
pub fn pivot_witness(p: &PermutationMatrix, q: Entry) -> Result<WitnessCertificate, WitnessError> {
    checked(pivot_witness_unverified(p, q)?)
}

/// The traversal layout for a non-extendable tall traversal of even length
/// at least 6.
pub fn traversal_witness(p: &PermutationMatrix, x: &[Entry]) -> Result<WitnessCertificate, WitnessError> {
    if !validate(p, x, SequenceKind::TallTraversal)? {
        return Err(WitnessError::Precondition("sequence is not a tall traversal".into()));
    }
    if is_extendable(p, x)?.is_some() {
        return Err(WitnessError::Precondition("traversal is extendable".into()));
    }
    let (m, row) = construct::traversal_layout(p, x)?;
    checked(vertical(m, &p.to_pattern(), row))
}

fn inconsistent(msg: &str) -> WitnessError {
    WitnessError::Verification(msg.to_string())
}

/// Layout choice for an indecomposable permutation of size at least 2,
/// given a shortest spanning oscillation `x` of `p`.
fn layout_for(p: &PermutationMatrix, x: &[Entry]) -> Result<(Matrix01, usize), WitnessError> {
    let ex = extremes(p);
    let m = x.len();
    if m == 4 {
        if ex.ell.is_above(ex.r) {
            return construct::split_layout(&p.to_pattern());
        }
        let (w, row) = construct::split_layout(&p.to_pattern().transform(Transform::Rev))?;
        return Ok((w.rev(), row));
    }
    if x[0] == ex.t {
        let wide = straighten(p, x, Orientation::Wide)?;
        return construct::pivot_layout(p, wide.entries[2]);
    }
    if x[0] != ex.ell {
        return Err(inconsistent("spanning oscillation starts at neither the leftmost nor the topmost entry"));
    }
    if m % 2 == 1 {
        let turned = PermutationMatrix::from_matrix(&p.to_matrix().rot2()).ok_or_else(|| inconsistent("rotation"))?;
        let (w, row) = layout_for(&turned, &rot2_sequence(p.k(), x))?;
        let rows = w.rows();
        return Ok((w.rot2(), rows + 1 - row));
    }
    let tall = straighten(p, x, Orientation::Tall)?;
    let full = extend_to_nonextendable(p, &tall.entries)?;
    construct::traversal_layout(p, &full.entries)
}

fn permutation_layout(p: &PermutationMatrix) -> Result<(Matrix01, usize), WitnessError> {
    if decompose_kind(p) != DecomposeKind::Indecomposable {
        return Err(WitnessError::Decomposable);
    }
    if p.k() == 1 {
        return Ok((Matrix01::zeros(1, 1), 1));
    }
    if let Some(x) = find_min_spanning_oscillation(p) {
        return layout_for(p, &x.entries);
    }
    let rev = PermutationMatrix::from_matrix(&p.to_matrix().rev()).ok_or_else(|| inconsistent("reversal"))?;
    let x = find_min_spanning_oscillation(&rev)
        .ok_or_else(|| inconsistent("indecomposable permutation without a spanning oscillation"))?;
    let (w, row) = layout_for(&rev, &x.entries)?;
    Ok((w.rev(), row))
}

fn four_trav_layout(p: &Pattern) -> Result<(Matrix01, usize), WitnessError> {
    let found = detect_four_trav_class(p).ok_or(WitnessError::Unsupported)?;
    match found.variant {
        Variant::B => construct::split_layout(p),
        Variant::A => {
            let (w, row) = construct::split_layout(&p.transform(Transform::Rev))?;
            Ok((w.rev(), row))
        }
    }
}

/// A certified vertical witness for an indecomposable permutation matrix
/// or a pattern of the four-extremes class.
pub fn vertical_witness(p: &Pattern) -> Result<WitnessCertificate, WitnessError> {
    let (m, row) = match PermutationMatrix::from_matrix(p) {
        Some(perm) => permutation_layout(&perm)?,
        None => four_trav_layout(p)?,
    };
    checked(vertical(m, p, row))
}

/// The transpose of a vertical witness of the transposed pattern.
pub fn horizontal_witness(p: &Pattern) -> Result<WitnessCertificate, WitnessError> {
    let v = vertical_witness(&p.transform(Transform::Trans))?;
    checked(WitnessCertificate {
        matrix: v.matrix.trans(),
        pattern: p.clone(),
        role: Claim::HorizontalWitness,
        expandable_rows: vec![],
        expandable_cols: v.expandable_rows,
    })
}

/// `[[0, W_H], [W_V, 0]]` for a vertical witness `W_V` and a horizontal
/// witness `W_H`.
pub fn full_witness(p: &Pattern) -> Result<WitnessCertificate, WitnessError> {
    if p.row_weight(p.rows()) != 1 || p.col_weight(p.cols()) != 1 {
        return Err(WitnessError::Precondition("last row and last column must each hold a single 1".into()));
    }
    let v = vertical_witness(p)?;
    let h = horizontal_witness(p)?;
    let (m0, n1) = (h.matrix.rows(), h.matrix.cols());
    let (m1, n0) = (v.matrix.rows(), v.matrix.cols());
    let mut canvas = Canvas::new(m0 + m1, n0 + n1);
    canvas.place(&h.matrix, 0, n0);
    canvas.place(&v.matrix, m0, 0);
    checked(WitnessCertificate {
        matrix: canvas.build()?,
        pattern: p.clone(),
        role: Claim::Witness,
        expandable_rows: vec![m0 + v.expandable_rows[0]],
        expandable_cols: vec![n0 + h.expandable_cols[0]],
    })
}

/// Fills a witness row by row, setting each 0 that keeps the matrix
/// avoiding `p`. The seed defaults to [`full_witness`].
pub fn explicit_witness(p: &Pattern, seed: Option<&Matrix01>) -> Result<WitnessCertificate, WitnessError> {
    let (start, rows, cols) = match seed {
        None => {
            let w = full_witness(p)?;
            (w.matrix, w.expandable_rows, w.expandable_cols)
        }
        Some(m) => {
            let report = certify(m, p, Claim::Witness);
            if !report.holds {
                return Err(WitnessError::NotAWitness(report.diagnostic.unwrap_or_default()));
            }
            (m.clone(), expandable_lines(m, p, Axis::Row), expandable_lines(m, p, Axis::Col))
        }
    };
    let mut host = HostIndex::new(&start);
    let mut entries = start.entries().to_vec();
    for i in 1..=start.rows() {
        for j in 1..=start.cols() {
            let cell = Entry::new(i, j);
            if !host.has(cell) && !host.contains_with(p, cell) {
                host.insert(cell);
                entries.push(cell);
            }
        }
    }
    checked(WitnessCertificate {
        matrix: Matrix01::new(start.rows(), start.cols(), entries)?,
        pattern: p.clone(),
        role: Claim::ExplicitWitness,
        expandable_rows: rows,
        expandable_cols: cols,
    })
}

fn widen(lines: &[usize], count: usize) -> Vec<usize> {
    let Some(&first) = lines.first() else {
        return lines.to_vec();
    };
    lines
        .iter()
        .map(|&i| if i > first { i + count } else { i })
        .chain(first + 1..=first + count)
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Grows a certificate to `rows x cols` by repeating its first expandable
/// row and column.
pub fn pad_witness(c: &WitnessCertificate, rows: usize, cols: usize) -> Result<WitnessCertificate, WitnessError> {
    let (r0, c0) = (c.matrix.rows(), c.matrix.cols());
    if rows < r0 || cols < c0 {
        return Err(WitnessError::PadTooSmall { rows: r0, cols: c0, target_rows: rows, target_cols: cols });
    }
    let mut matrix = c.matrix.clone();
    if rows > r0 {
        let &at = c.expandable_rows.first().ok_or(WitnessError::MissingLine("row"))?;
        matrix = matrix.insert_empty_rows(at, rows - r0)?;
    }
    if cols > c0 {
        let &at = c.expandable_cols.first().ok_or(WitnessError::MissingLine("column"))?;
        matrix = matrix.insert_empty_cols(at, cols - c0)?;
    }
    checked(WitnessCertificate {
        matrix,
        pattern: c.pattern.clone(),
        role: c.role,
        expandable_rows: widen(&c.expandable_rows, rows - r0),
        expandable_cols: widen(&c.expandable_cols, cols - c0),
    })
}
