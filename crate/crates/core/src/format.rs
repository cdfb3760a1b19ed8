//! Text formats: matrix grids, permutation shorthand, entry sequences and
//! witness certificates.
//!
//! A grid is an optional `# rows cols` header followed by one line per row,
//! `1`/`*` for a 1-entry and `0`/`.` for a 0-entry. Without a header the
//! dimensions are read off the grid, so a headerless grid cannot describe a
//! matrix with zero rows or columns. The shorthand `perm: c1 ... ck` denotes
//! the permutation matrix with entries `(i, c_i)`.

use crate::error::ParseError;
use crate::matrix::{Entry, Matrix01, Pattern};
use crate::verify::Claim;
use crate::witness::WitnessCertificate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Style {
    /// `1` and `0`.
    #[default]
    Grid,
    /// `*` and `.`.
    Dotted,
}

pub fn parse_matrix(text: &str) -> Result<Matrix01, ParseError> {
    let lines = split_lines(text);
    if lines.iter().all(|l| l.is_empty()) {
        return Err(ParseError::Empty);
    }
    if let Some(rest) = lines[0].trim_start().strip_prefix("perm:") {
        if !(Cursor { lines: &lines, next: 1 }).finished() {
            return Err(ParseError::Syntax { line: 2, message: "unexpected text after shorthand".into() });
        }
        return parse_shorthand(rest);
    }
    let mut cursor = Cursor { lines: &lines, next: 0 };
    let m = cursor.grid()?;
    if !cursor.finished() {
        return Err(ParseError::Syntax { line: cursor.next + 1, message: "unexpected text after grid".into() });
    }
    Ok(m)
}

/// Renders without a trailing newline. A header is written only when a
/// dimension is zero, since the grid alone cannot express that.
pub fn render_matrix(m: &Matrix01, style: Style) -> String {
    let mut out = String::new();
    if m.rows() == 0 || m.cols() == 0 {
        out.push_str(&format!("# {} {}", m.rows(), m.cols()));
        if m.rows() > 0 {
            out.push('\n');
        }
    }
    push_rows(&mut out, m, style);
    out
}

/// Renders with a header line regardless of the dimensions.
pub fn render_matrix_with_header(m: &Matrix01, style: Style) -> String {
    let mut out = format!("# {} {}", m.rows(), m.cols());
    if m.rows() > 0 {
        out.push('\n');
    }
    push_rows(&mut out, m, style);
    out
}

fn push_rows(out: &mut String, m: &Matrix01, style: Style) {
    let (one, zero) = match style {
        Style::Grid => ('1', '0'),
        Style::Dotted => ('*', '.'),
    };
    for i in 1..=m.rows() {
        if i > 1 {
            out.push('\n');
        }
        out.extend((1..=m.cols()).map(|j| if m.is_one(i, j) { one } else { zero }));
    }
}

/// Shorthand for a permutation matrix, `perm: c1 ... ck`.
pub fn render_permutation(sigma: &[usize]) -> String {
    let mut out = String::from("perm:");
    for c in sigma {
        out.push_str(&format!(" {c}"));
    }
    out
}

fn parse_shorthand(rest: &str) -> Result<Matrix01, ParseError> {
    let values = rest
        .split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| ParseError::Permutation(format!("{tok:?} is not a positive integer")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(ParseError::Permutation("no values".into()));
    }
    let k = values.len();
    let mut seen = vec![false; k + 1];
    for &c in &values {
        if c == 0 || c > k || seen[c] {
            return Err(ParseError::Permutation(format!("values are not a permutation of 1..{k}")));
        }
        seen[c] = true;
    }
    Ok(Matrix01::from_permutation(&values)?)
}

/// Entry sequence on one line, `(r,c) (r,c) ...`. Whitespace is allowed
/// between any two tokens.
pub fn parse_sequence(text: &str) -> Result<Vec<Entry>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    let err = |message: String| ParseError::Syntax { line: 1, message };
    let skip_ws = |it: &mut std::iter::Peekable<std::str::CharIndices<'_>>| {
        while it.peek().is_some_and(|(_, c)| c.is_whitespace()) {
            it.next();
        }
    };
    let number = |it: &mut std::iter::Peekable<std::str::CharIndices<'_>>| -> Result<usize, ParseError> {
        let mut digits = String::new();
        while let Some(&(_, c)) = it.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            digits.push(c);
            it.next();
        }
        match digits.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(ParseError::Syntax { line: 1, message: format!("expected a positive index, found {digits:?}") }),
        }
    };
    loop {
        skip_ws(&mut chars);
        match chars.next() {
            None => break,
            Some((_, '(')) => {}
            Some((at, c)) => return Err(err(format!("expected '(' at byte {at}, found {c:?}"))),
        }
        skip_ws(&mut chars);
        let row = number(&mut chars)?;
        skip_ws(&mut chars);
        if chars.next().map(|(_, c)| c) != Some(',') {
            return Err(err("expected ',' inside an entry".into()));
        }
        skip_ws(&mut chars);
        let col = number(&mut chars)?;
        skip_ws(&mut chars);
        if chars.next().map(|(_, c)| c) != Some(')') {
            return Err(err("expected ')' closing an entry".into()));
        }
        out.push(Entry::new(row, col));
    }
    Ok(out)
}

pub fn render_sequence(seq: &[Entry]) -> String {
    seq.iter().map(Entry::to_string).collect::<Vec<_>>().join(" ")
}

/// Certificate layout:
///
/// ```text
/// role: vertical-witness
/// # 4 4
/// <pattern rows>
/// # 5 6
/// <matrix rows>
/// expandable-rows: 3
/// expandable-cols:
/// ```
pub fn render_certificate(c: &WitnessCertificate) -> String {
    let list = |v: &[usize]| v.iter().map(|i| format!(" {i}")).collect::<String>();
    let mut out = format!("role: {}\n", c.role.name());
    out.push_str(&render_matrix_with_header(c.pattern.matrix(), Style::Grid));
    out.push('\n');
    out.push_str(&render_matrix_with_header(&c.matrix, Style::Grid));
    out.push('\n');
    out.push_str(&format!("expandable-rows:{}\n", list(&c.expandable_rows)));
    out.push_str(&format!("expandable-cols:{}\n", list(&c.expandable_cols)));
    out
}

pub fn parse_certificate(text: &str) -> Result<WitnessCertificate, ParseError> {
    let lines = split_lines(text);
    if lines.iter().all(|l| l.trim().is_empty()) {
        return Err(ParseError::Empty);
    }
    let mut cursor = Cursor { lines: &lines, next: 0 };
    let role_text = cursor.field("role")?;
    let role: Claim = role_text
        .trim()
        .parse()
        .map_err(|e: String| ParseError::Syntax { line: 1, message: e })?;
    let pattern_line = cursor.next + 1;
    let pattern = Pattern::new(cursor.headed_grid()?)
        .map_err(|e| ParseError::Syntax { line: pattern_line, message: e.to_string() })?;
    let matrix = cursor.headed_grid()?;
    let rows_line = cursor.next + 1;
    let expandable_rows = parse_indices(&cursor.field("expandable-rows")?, rows_line)?;
    let cols_line = cursor.next + 1;
    let expandable_cols = parse_indices(&cursor.field("expandable-cols")?, cols_line)?;
    if !cursor.finished() {
        return Err(ParseError::Syntax { line: cursor.next + 1, message: "unexpected text after certificate".into() });
    }
    Ok(WitnessCertificate { matrix, pattern, role, expandable_rows, expandable_cols })
}

fn parse_indices(text: &str, line: usize) -> Result<Vec<usize>, ParseError> {
    text.split_whitespace()
        .map(|tok| match tok.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(ParseError::Syntax { line, message: format!("{tok:?} is not a positive index") }),
        })
        .collect()
}

fn split_lines(text: &str) -> Vec<&str> {
    text.split('\n').collect()
}

struct Cursor<'a> {
    lines: &'a [&'a str],
    next: usize,
}

impl Cursor<'_> {
    /// Everything consumed, allowing for one trailing newline.
    fn finished(&self) -> bool {
        let rest = &self.lines[self.next.min(self.lines.len())..];
        rest.is_empty() || rest == [""]
    }

    fn take(&mut self) -> Option<&str> {
        let line = self.lines.get(self.next).copied();
        if line.is_some() {
            self.next += 1;
        }
        line
    }

    fn field(&mut self, name: &str) -> Result<String, ParseError> {
        let line = self.next + 1;
        let text = self.take().ok_or_else(|| ParseError::Syntax {
            line,
            message: format!("missing \"{name}:\" line"),
        })?;
        text.strip_prefix(name)
            .and_then(|r| r.strip_prefix(':'))
            .map(str::to_owned)
            .ok_or_else(|| ParseError::Syntax { line, message: format!("expected \"{name}:\"") })
    }

    fn header(&mut self) -> Result<Option<(usize, usize)>, ParseError> {
        let Some(first) = self.lines.get(self.next) else {
            return Ok(None);
        };
        let Some(rest) = first.strip_prefix('#') else {
            return Ok(None);
        };
        let line = self.next + 1;
        let bad = || ParseError::Header { line, text: first.to_string() };
        let dims: Vec<usize> = rest
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        let [rows, cols] = dims[..] else {
            return Err(bad());
        };
        self.next += 1;
        Ok(Some((rows, cols)))
    }

    fn headed_grid(&mut self) -> Result<Matrix01, ParseError> {
        let line = self.next + 1;
        match self.header()? {
            Some((rows, cols)) => self.body(rows, Some(cols)),
            None => Err(ParseError::Syntax { line, message: "expected a \"# rows cols\" header".into() }),
        }
    }

    fn grid(&mut self) -> Result<Matrix01, ParseError> {
        match self.header()? {
            Some((rows, cols)) => self.body(rows, Some(cols)),
            None => {
                let mut rows = self.lines.len() - self.next;
                if self.lines.last() == Some(&"") {
                    rows -= 1;
                }
                self.body(rows, None)
            }
        }
    }

    /// Reads `rows` grid lines. Without a known width the first line fixes it.
    fn body(&mut self, rows: usize, cols: Option<usize>) -> Result<Matrix01, ParseError> {
        let mut width = cols;
        let mut entries = Vec::new();
        for i in 1..=rows {
            let line = self.next + 1;
            let Some(text) = self.take() else {
                return Err(ParseError::RowCount { expected: rows, found: i - 1 });
            };
            let mut found = 0;
            for (j, glyph) in text.chars().enumerate() {
                match glyph {
                    '1' | '*' => entries.push(Entry::new(i, j + 1)),
                    '0' | '.' => {}
                    _ => return Err(ParseError::IllegalGlyph { line, col: j + 1, glyph }),
                }
                found += 1;
            }
            let expected = *width.get_or_insert(found);
            if found != expected || found == 0 && cols.is_none() {
                return Err(ParseError::Ragged { line, expected, found });
            }
        }
        Ok(Matrix01::new(rows, width.unwrap_or(0), entries)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn entry_set(m: &Matrix01) -> Vec<(usize, usize)> {
        m.entries().iter().map(|e| (e.row, e.col)).collect()
    }

    #[test]
    fn shorthand_fk_pattern() {
        let m = parse_matrix("perm: 2 5 3 1 4").unwrap();
        assert_eq!((m.rows(), m.cols()), (5, 5));
        assert_eq!(entry_set(&m), vec![(1, 2), (2, 5), (3, 3), (4, 1), (5, 4)]);
        let m = parse_matrix("perm: 3 1 4 2\n").unwrap();
        assert_eq!(entry_set(&m), vec![(1, 3), (2, 1), (3, 4), (4, 2)]);
    }

    #[test]
    fn identity_grid() {
        let m = parse_matrix("10\n01").unwrap();
        assert_eq!(entry_set(&m), vec![(1, 1), (2, 2)]);
        assert_eq!(render_matrix(&m, Style::Grid), "10\n01");
        assert_eq!(parse_matrix("10\n01\n").unwrap(), m);
        assert_eq!(parse_matrix("*.\n.*").unwrap(), m);
        assert_eq!(parse_matrix("# 2 2\n10\n01\n").unwrap(), m);
    }

    #[test]
    fn dotted_rendering() {
        assert_eq!(render_matrix(&Matrix01::zeros(1, 1), Style::Dotted), ".");
        let q = parse_matrix("perm: 2 5 3 1 4").unwrap();
        assert_eq!(render_matrix(&q, Style::Dotted), ".*...\n....*\n..*..\n*....\n...*.");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_matrix(""), Err(ParseError::Empty));
        assert_eq!(parse_matrix("\n"), Err(ParseError::Empty));
        assert!(matches!(parse_matrix("10\n0"), Err(ParseError::Ragged { line: 2, .. })));
        assert!(matches!(parse_matrix("1x"), Err(ParseError::IllegalGlyph { line: 1, col: 2, glyph: 'x' })));
        assert!(matches!(parse_matrix("perm: 1 1"), Err(ParseError::Permutation(_))));
        assert!(matches!(parse_matrix("perm: 0 1"), Err(ParseError::Permutation(_))));
        assert!(matches!(parse_matrix("perm:"), Err(ParseError::Permutation(_))));
        assert!(matches!(parse_matrix("perm: a"), Err(ParseError::Permutation(_))));
        assert!(matches!(parse_matrix("10\n\n01"), Err(ParseError::Ragged { line: 2, .. })));
        assert!(matches!(parse_matrix("# 2 2\n10"), Err(ParseError::RowCount { expected: 2, found: 1 })));
        assert!(matches!(parse_matrix("# 2\n10"), Err(ParseError::Header { .. })));
        assert!(matches!(parse_matrix("# 1 2\n10\n11"), Err(ParseError::Syntax { line: 3, .. })));
        assert!(matches!(parse_matrix("10\r\n01"), Err(ParseError::IllegalGlyph { glyph: '\r', .. })));
    }

    #[test]
    fn degenerate_dimensions_round_trip() {
        for (r, c) in [(0, 0), (0, 3), (3, 0), (1, 0)] {
            let m = Matrix01::zeros(r, c);
            let text = render_matrix(&m, Style::Grid);
            assert_eq!(parse_matrix(&text).unwrap(), m, "{r}x{c}: {text:?}");
            assert_eq!(parse_matrix(&format!("{text}\n")).unwrap(), m, "{r}x{c} with newline");
        }
    }

    #[test]
    fn sequences() {
        let s = parse_sequence("(2,1) (1,3)  ( 4 , 2 )\n").unwrap();
        assert_eq!(s, vec![Entry::new(2, 1), Entry::new(1, 3), Entry::new(4, 2)]);
        assert_eq!(render_sequence(&s), "(2,1) (1,3) (4,2)");
        assert_eq!(parse_sequence("").unwrap(), vec![]);
        assert!(parse_sequence("(0,1)").is_err());
        assert!(parse_sequence("(1,2").is_err());
        assert!(parse_sequence("1,2)").is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let pattern = Pattern::new(parse_matrix("perm: 3 1 4 2").unwrap()).unwrap();
        let matrix = parse_matrix("001000\n100010\n000000\n010001\n000100").unwrap();
        let cert = WitnessCertificate {
            matrix,
            pattern,
            role: Claim::VerticalWitness,
            expandable_rows: vec![3],
            expandable_cols: vec![],
        };
        let text = render_certificate(&cert);
        assert!(text.starts_with("role: vertical-witness\n# 4 4\n0010\n"));
        assert!(text.ends_with("expandable-rows: 3\nexpandable-cols:\n"));
        assert_eq!(parse_certificate(&text).unwrap(), cert);
        assert!(parse_certificate("role: witness\n").is_err());
        assert!(parse_certificate("role: bogus\n# 1 1\n1\n# 1 1\n0\nexpandable-rows:\nexpandable-cols:\n").is_err());
        assert!(parse_certificate("role: witness\n# 1 1\n0\n# 1 1\n0\nexpandable-rows:\nexpandable-cols:\n").is_err());
    }

    fn arb_matrix(max: usize) -> impl Strategy<Value = Matrix01> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
                let entries = bits
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(idx, _)| Entry::new(idx / c + 1, idx % c + 1));
                Matrix01::new(r, c, entries).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn grid_round_trip(m in arb_matrix(8), dotted in any::<bool>()) {
            let style = if dotted { Style::Dotted } else { Style::Grid };
            prop_assert_eq!(parse_matrix(&render_matrix(&m, style)).unwrap(), m.clone());
            prop_assert_eq!(parse_matrix(&render_matrix_with_header(&m, style)).unwrap(), m);
        }

        #[test]
        fn parser_never_panics(text in "[01*.#perm: 0-9\n]{0,40}") {
            let _ = parse_matrix(&text);
            let _ = parse_sequence(&text);
            let _ = parse_certificate(&text);
        }
    }
}
