//! Text formats for quandles.
//!
//! Table format: the first line holds `n`, followed by `n` lines of `n`
//! whitespace-separated entries; row `a`, column `b` is `a ∗ b`.
//!
//! Permutation-list format: the first line holds `n`, followed by `n`
//! lines, line `i` holding `μ_i` in cycle notation. Fixed points may be
//! omitted when reading and are always written.

use std::fmt::Write as _;

use thiserror::Error;

use crate::perm::{PermError, Permutation};
use crate::quandle::{Quandle, QuandleError};
use crate::structure::PartitionClasses;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Permutations,
}

/// A syntax error, located by 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] QuandleError),
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

pub fn format_table(q: &Quandle) -> String {
    let mut out = String::new();
    writeln!(out, "{}", q.order()).unwrap();
    for row in q.to_table() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}

pub fn format_permutations(q: &Quandle) -> String {
    let mut out = String::new();
    writeln!(out, "{}", q.order()).unwrap();
    for m in q.permutations() {
        writeln!(out, "{m}").unwrap();
    }
    out
}

/// A quotient table whose rows and columns are labeled by the classes.
pub fn format_labeled_quotient(quotient: &Quandle, classes: &PartitionClasses) -> String {
    let labels: Vec<String> = classes.to_string().split(' ').map(str::to_string).collect();
    let width = labels.iter().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    let header: Vec<String> = labels.iter().map(|l| format!("{l:<width$}")).collect();
    writeln!(out, "{:<width$} | {}", "*", header.join(" ").trim_end()).unwrap();
    for (a, row) in quotient.to_table().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|&c| format!("{:<width$}", labels[c - 1])).collect();
        writeln!(out, "{:<width$} | {}", labels[a], cells.join(" ").trim_end()).unwrap();
    }
    out
}

pub fn format_quandle(q: &Quandle, format: Format) -> String {
    match format {
        Format::Table => format_table(q),
        Format::Permutations => format_permutations(q),
    }
}

type NumberedLines<'a> = Vec<(usize, &'a str)>;

// First non-blank line must be the order; returns it and the remaining
// (line number, text) pairs.
fn split_header(text: &str) -> Result<(usize, NumberedLines<'_>), ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (line_no, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| parse_err(1, 1, "empty input"))?;
    let trimmed = header.trim();
    let column = header.find(trimmed).unwrap_or(0) + 1;
    let n: usize = trimmed
        .parse()
        .map_err(|_| parse_err(line_no, column, format!("expected the order, found {trimmed:?}")))?;
    if n == 0 {
        return Err(parse_err(line_no, column, "order must be at least 1"));
    }
    Ok((n, lines.collect()))
}

/// Parses the table format into a raw `n × n` array, without checking axioms.
pub fn parse_table_text(text: &str) -> Result<Vec<Vec<usize>>, ParseError> {
    let (n, rest) = split_header(text)?;
    let rows: Vec<(usize, &str)> = rest
        .into_iter()
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    if rows.len() != n {
        let line = rows.last().map_or(1, |(l, _)| l + 1);
        return Err(parse_err(line, 1, format!("expected {n} rows, found {}", rows.len())));
    }
    let mut table = Vec::with_capacity(n);
    for (line_no, line) in rows {
        let mut row = Vec::with_capacity(n);
        let mut offset = 0;
        for token in line.split_whitespace() {
            let column = line[offset..].find(token).unwrap() + offset + 1;
            offset = column - 1 + token.len();
            let v: usize = token
                .parse()
                .map_err(|_| parse_err(line_no, column, format!("expected an integer, found {token:?}")))?;
            if v == 0 || v > n {
                return Err(parse_err(line_no, column, format!("entry {v} outside 1..={n}")));
            }
            row.push(v);
        }
        if row.len() != n {
            return Err(parse_err(
                line_no,
                line.len() + 1,
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        table.push(row);
    }
    Ok(table)
}

/// Parses the permutation-list format, without checking axioms.
pub fn parse_permutation_list(text: &str) -> Result<Vec<Permutation>, ParseError> {
    let (n, rest) = split_header(text)?;
    // trailing blank lines are tolerated; interior ones would be identities
    let mut rows = rest;
    while rows.last().is_some_and(|(_, l)| l.trim().is_empty()) {
        rows.pop();
    }
    if rows.len() != n {
        let line = rows.last().map_or(1, |(l, _)| l + 1);
        return Err(parse_err(line, 1, format!("expected {n} permutations, found {}", rows.len())));
    }
    rows.into_iter()
        .map(|(line_no, line)| {
            Permutation::parse_cycles(n, line).map_err(|e| match e {
                PermError::Syntax { offset, message } => parse_err(line_no, offset + 1, message),
                other => parse_err(line_no, 1, other.to_string()),
            })
        })
        .collect()
}

/// Guesses the format: permutation lists are the ones using parentheses.
pub fn detect_format(text: &str) -> Format {
    if text.contains('(') {
        Format::Permutations
    } else {
        Format::Table
    }
}

/// Parses either format and verifies the quandle axioms.
pub fn parse_quandle(text: &str) -> Result<Quandle, LoadError> {
    match detect_format(text) {
        Format::Table => Ok(Quandle::from_table(&parse_table_text(text)?)?),
        Format::Permutations => Ok(Quandle::from_permutations(parse_permutation_list(text)?)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE5: &str = "5\n1 1 1 1 1\n2 2 2 3 3\n3 3 3 2 2\n5 5 5 4 4\n4 4 4 5 5\n";

    #[test]
    fn table_round_trip() {
        let q = parse_quandle(TABLE5).unwrap();
        assert_eq!(format_table(&q), TABLE5);
        let perms = format_permutations(&q);
        assert_eq!(
            perms,
            "5\n(1)(2)(3)(4 5)\n(1)(2)(3)(4 5)\n(1)(2)(3)(4 5)\n(1)(2 3)(4)(5)\n(1)(2 3)(4)(5)\n"
        );
        assert_eq!(parse_quandle(&perms).unwrap(), q);
    }

    #[test]
    fn omitted_fixed_points_are_accepted() {
        let q = parse_quandle("5\n(4 5)\n(4 5)\n(4 5)\n(2 3)\n(2 3)\n").unwrap();
        assert_eq!(format_table(&q), TABLE5);
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(parse_quandle("").unwrap_err(), LoadError::Parse(parse_err(1, 1, "empty input")));
        match parse_quandle("2\n1 x\n2 2\n") {
            Err(LoadError::Parse(e)) => assert_eq!((e.line, e.column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        match parse_quandle("2\n1 1\n") {
            Err(LoadError::Parse(e)) => assert_eq!(e.line, 3),
            other => panic!("unexpected {other:?}"),
        }
        match parse_quandle("2\n(1 2\n()\n") {
            Err(LoadError::Parse(e)) => assert_eq!(e.line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match parse_quandle("3\n1 1 4\n2 2 2\n3 3 3\n") {
            Err(LoadError::Parse(e)) => assert_eq!((e.line, e.column), (2, 5)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn labeled_quotient_of_r4() {
        let r4 = crate::constructors::dihedral(4).unwrap();
        let classes = crate::structure::association_classes(&r4).unwrap();
        let q = crate::structure::quotient(&r4, &classes).unwrap();
        assert_eq!(
            format_labeled_quotient(&q, &classes),
            "*     | {1,3} {2,4}\n{1,3} | {1,3} {1,3}\n{2,4} | {2,4} {2,4}\n"
        );
    }

    #[test]
    fn axiom_failures_are_not_parse_errors() {
        assert!(matches!(
            parse_quandle("2\n2 1\n1 2\n"),
            Err(LoadError::Invalid(QuandleError::Axioms(_)))
        ));
    }
}
