//! Plain-text truth tables.
//!
//! ```text
//! 3
//! +-+++--+
//! ```
//!
//! Line 1 holds `n`, line 2 holds `2^n` symbols where position `x` is `f(x)`
//! (`+` or `-`) and spin 1 is the most significant bit of `x`. Trailing
//! whitespace is allowed on every line, and blank lines may follow the table.

use std::fmt::Write as _;

use ensemble_parity::spin::DEFAULT_QUBIT_CAP;
use ensemble_parity::PhaseFunction;

use crate::error::ParseError;

fn strip_line_end(line: &str) -> &str {
    line.trim_end_matches([' ', '\t', '\r'])
}

fn leading_whitespace(line: &str) -> Option<usize> {
    line.chars().next().filter(|c| c.is_whitespace()).map(|_| 1)
}

pub fn parse_truth_table(text: &str) -> Result<PhaseFunction, ParseError> {
    parse_with_cap(text, DEFAULT_QUBIT_CAP)
}

pub fn parse_with_cap(text: &str, cap: usize) -> Result<PhaseFunction, ParseError> {
    let mut lines = text.split('\n');

    let header = strip_line_end(lines.next().unwrap_or(""));
    if header.is_empty() {
        return Err(ParseError::new(1, 1, "expected the qubit count n"));
    }
    if let Some(col) = leading_whitespace(header) {
        return Err(ParseError::new(1, col, "leading whitespace"));
    }
    if let Some((i, c)) = header.chars().enumerate().find(|(_, c)| !c.is_ascii_digit()) {
        return Err(ParseError::new(1, i + 1, format!("unexpected character {c:?} in qubit count")));
    }
    let n = match header.parse::<usize>() {
        Ok(n) if (1..=cap).contains(&n) => n,
        _ => return Err(ParseError::new(1, 1, format!("qubit count {header} outside 1..={cap}"))),
    };
    let dim = 1usize << n;

    let Some(body) = lines.next().map(strip_line_end) else {
        return Err(ParseError::new(2, 1, format!("missing table of {dim} symbols")));
    };
    let mut marks = Vec::with_capacity(dim);
    for (i, c) in body.chars().enumerate() {
        if i == dim {
            return Err(ParseError::new(2, i + 1, format!("table longer than {dim} symbols")));
        }
        match c {
            '+' => marks.push(false),
            '-' => marks.push(true),
            other => return Err(ParseError::new(2, i + 1, format!("illegal symbol {other:?}"))),
        }
    }
    if marks.len() < dim {
        return Err(ParseError::new(
            2,
            marks.len() + 1,
            format!("table has {} symbols, expected {dim}", marks.len()),
        ));
    }

    for (i, rest) in lines.enumerate() {
        if !strip_line_end(rest).is_empty() {
            return Err(ParseError::new(i + 3, 1, "unexpected content after the table"));
        }
    }

    PhaseFunction::from_marks(n, marks).map_err(|e| ParseError::new(1, 1, e.to_string()))
}

pub fn format_truth_table(f: &PhaseFunction) -> String {
    let mut out = String::with_capacity(f.dim() + 8);
    let _ = writeln!(out, "{}", f.n());
    out.extend(f.marks().iter().map(|&m| if m { '-' } else { '+' }));
    out.push('\n');
    out
}
