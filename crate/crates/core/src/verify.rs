//! Certification of avoidance, expandable lines, witnesses and saturation.
//!
//! Every check re-runs containment queries; nothing here trusts the
//! construction that produced a matrix. Failures carry a diagnostic naming
//! the first offending cell or line in row-major order.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::containment::HostIndex;
use crate::error::IndexError;
use crate::format::render_sequence;
use crate::matrix::{Entry, Matrix01, Pattern};
use crate::witness::WitnessCertificate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Row,
    Col,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Row => "row",
            Axis::Col => "column",
        }
    }
}

/// A property of a matrix relative to a pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    Avoids,
    VerticalWitness,
    HorizontalWitness,
    Witness,
    Saturating,
    ExplicitWitness,
}

impl Claim {
    pub const ALL: [Claim; 6] = [
        Claim::Avoids,
        Claim::VerticalWitness,
        Claim::HorizontalWitness,
        Claim::Witness,
        Claim::Saturating,
        Claim::ExplicitWitness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Claim::Avoids => "avoids",
            Claim::VerticalWitness => "vertical-witness",
            Claim::HorizontalWitness => "horizontal-witness",
            Claim::Witness => "witness",
            Claim::Saturating => "saturating",
            Claim::ExplicitWitness => "explicit-witness",
        }
    }

    fn needs_row(self) -> bool {
        matches!(self, Claim::VerticalWitness | Claim::Witness | Claim::ExplicitWitness)
    }

    fn needs_col(self) -> bool {
        matches!(self, Claim::HorizontalWitness | Claim::Witness | Claim::ExplicitWitness)
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Claim {
    type Err = String;

    /// Accepts the canonical names and the short forms `vertical`,
    /// `horizontal` and `explicit`.
    fn from_str(s: &str) -> Result<Self, String> {
        let short = match s {
            "vertical" => Some(Claim::VerticalWitness),
            "horizontal" => Some(Claim::HorizontalWitness),
            "explicit" => Some(Claim::ExplicitWitness),
            _ => None,
        };
        short
            .or_else(|| Claim::ALL.into_iter().find(|c| c.name() == s))
            .ok_or_else(|| format!("unknown claim {s:?}"))
    }
}

/// Outcome of a certification: `diagnostic` is set exactly when the claim
/// fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub holds: bool,
    pub diagnostic: Option<String>,
}

impl Report {
    fn pass() -> Self {
        Report { holds: true, diagnostic: None }
    }

    fn fail(msg: impl Into<String>) -> Self {
        Report { holds: false, diagnostic: Some(msg.into()) }
    }
}

fn line_cells(m: &Matrix01, axis: Axis, index: usize) -> Vec<Entry> {
    match axis {
        Axis::Row => (1..=m.cols()).map(|j| Entry::new(index, j)).collect(),
        Axis::Col => (1..=m.rows()).map(|i| Entry::new(i, index)).collect(),
    }
}

/// First cell whose flip does not complete an occurrence, scanning `cells`
/// in order. Assumes the host avoids the pattern.
fn first_free_cell(index: &HostIndex, p: &Pattern, cells: &[Entry]) -> Option<Entry> {
    cells
        .par_iter()
        .map_init(|| index.clone(), |idx, &cell| (!idx.contains_with(p, cell)).then_some(cell))
        .find_first(Option::is_some)
        .flatten()
}

/// An empty row (column) where setting any cell creates an occurrence.
pub fn check_expandable(m: &Matrix01, p: &Pattern, axis: Axis, index: usize) -> Result<bool, IndexError> {
    let len = match axis {
        Axis::Row => m.rows(),
        Axis::Col => m.cols(),
    };
    if index == 0 || index > len {
        return Err(IndexError { axis: axis.name(), index, len });
    }
    let empty = match axis {
        Axis::Row => m.is_row_empty(index),
        Axis::Col => m.is_col_empty(index),
    };
    if !empty {
        return Ok(false);
    }
    let host = HostIndex::new(m);
    if host.contains(p) {
        return Ok(true);
    }
    Ok(first_free_cell(&host, p, &line_cells(m, axis, index)).is_none())
}

/// All expandable lines along `axis`, ascending.
pub fn expandable_lines(m: &Matrix01, p: &Pattern, axis: Axis) -> Vec<usize> {
    let candidates = match axis {
        Axis::Row => m.empty_rows(),
        Axis::Col => m.empty_cols(),
    };
    candidates
        .into_iter()
        .filter(|&i| check_expandable(m, p, axis, i).unwrap_or(false))
        .collect()
}

fn first_expandable(m: &Matrix01, p: &Pattern, axis: Axis) -> Option<usize> {
    let candidates = match axis {
        Axis::Row => m.empty_rows(),
        Axis::Col => m.empty_cols(),
    };
    candidates.into_iter().find(|&i| check_expandable(m, p, axis, i).unwrap_or(false))
}

fn avoidance(host: &HostIndex, p: &Pattern) -> Report {
    match host.find(p) {
        None => Report::pass(),
        Some(e) => {
            let image: Vec<Entry> = e.pairs().iter().map(|&(_, h)| h).collect();
            Report::fail(format!("matrix contains the pattern at {}", render_sequence(&image)))
        }
    }
}

fn saturation(m: &Matrix01, host: &HostIndex, p: &Pattern) -> Report {
    let zeros: Vec<Entry> = (1..=m.rows())
        .flat_map(|i| (1..=m.cols()).map(move |j| Entry::new(i, j)))
        .filter(|&e| !m.has_entry(e))
        .collect();
    match first_free_cell(host, p, &zeros) {
        None => Report::pass(),
        Some(cell) => Report::fail(format!("setting {cell} creates no occurrence, so the matrix is not saturating")),
    }
}

/// Checks `claim` for `m` against `p`.
pub fn certify(m: &Matrix01, p: &Pattern, claim: Claim) -> Report {
    let host = HostIndex::new(m);
    let avoid = avoidance(&host, p);
    if !avoid.holds {
        return avoid;
    }
    if matches!(claim, Claim::Saturating | Claim::ExplicitWitness) {
        let sat = saturation(m, &host, p);
        if !sat.holds {
            return sat;
        }
        if claim == Claim::ExplicitWitness {
            if m.empty_rows().is_empty() {
                return Report::fail("saturating but has no empty row");
            }
            if m.empty_cols().is_empty() {
                return Report::fail("saturating but has no empty column");
            }
        }
        return Report::pass();
    }
    if claim.needs_row() && first_expandable(m, p, Axis::Row).is_none() {
        return Report::fail("no expandable row");
    }
    if claim.needs_col() && first_expandable(m, p, Axis::Col).is_none() {
        return Report::fail("no expandable column");
    }
    Report::pass()
}

/// Checks a certificate: its role, and every line it lists as expandable.
/// A role that requires an expandable row or column must list one.
pub fn certify_certificate(c: &WitnessCertificate) -> Report {
    for (axis, lines, needed) in [
        (Axis::Row, &c.expandable_rows, c.role.needs_row()),
        (Axis::Col, &c.expandable_cols, c.role.needs_col()),
    ] {
        if needed && lines.is_empty() {
            return Report::fail(format!("certificate for {} lists no expandable {}", c.role, axis.name()));
        }
        for &i in lines.iter() {
            match check_expandable(&c.matrix, &c.pattern, axis, i) {
                Ok(true) => {}
                Ok(false) => return Report::fail(format!("{} {i} is not expandable", axis.name())),
                Err(e) => return Report::fail(e.to_string()),
            }
        }
    }
    certify(&c.matrix, &c.pattern, c.role)
}
