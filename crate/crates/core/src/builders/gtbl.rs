//! GTBL v1: a plain-text multiplication table.
//!
//! ```text
//! # optional comments, before the header only
//! gtbl 1 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! ```
//!
//! Row `x`, column `y` holds `x * y`. Element 0 must be the identity and the
//! file must end with a newline.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, GtblError, Result};
use crate::group::FiniteGroup;

pub fn format_table(group: &FiniteGroup) -> String {
    let n = group.order();
    let mut out = String::with_capacity(n * n * 5 + 16);
    writeln!(out, "gtbl 1 {n}").unwrap();
    for row in group.table().chunks(n) {
        for (i, e) in row.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            write!(out, "{e}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_table(text: &str, label: &str) -> Result<FiniteGroup, GtblError> {
    parse_table_limited(text, label, None).map_err(|e| match e {
        Error::Gtbl(g) => g,
        other => unreachable!("unexpected error without a limit: {other}"),
    })
}

fn parse_table_limited(text: &str, label: &str, max_order: Option<u64>) -> Result<FiniteGroup> {
    if !text.ends_with('\n') {
        return Err(GtblError::MissingTrailingNewline.into());
    }
    let mut lines = text.lines().skip_while(|l| l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| GtblError::MalformedHeader("missing header".into()))?;
    let n = parse_header(header)?;
    if let Some(max) = max_order {
        if n as u64 > max {
            return Err(Error::OrderTooLarge {
                order: n as u128,
                max,
            });
        }
    }

    let rows: Vec<&str> = lines.collect();
    if rows.len() != n {
        return Err(GtblError::RowCount {
            expected: n,
            found: rows.len(),
        }
        .into());
    }
    let mut table = Vec::with_capacity(n * n);
    for (row, line) in rows.into_iter().enumerate() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != n {
            return Err(GtblError::RowLength {
                row,
                expected: n,
                found: tokens.len(),
            }
            .into());
        }
        for (col, token) in tokens.into_iter().enumerate() {
            let value: u64 = token.parse().map_err(|_| GtblError::BadInteger {
                row,
                col,
                token: token.to_owned(),
            })?;
            if value >= n as u64 {
                return Err(GtblError::EntryOutOfRange {
                    row,
                    col,
                    value,
                    order: n,
                }
                .into());
            }
            table.push(value as u32);
        }
    }
    FiniteGroup::from_table(label, n, table).map_err(|e| Error::Gtbl(GtblError::Law(e)))
}

fn parse_header(line: &str) -> Result<usize, GtblError> {
    let bad = || GtblError::MalformedHeader(line.to_owned());
    let fields: Vec<&str> = line.split_whitespace().collect();
    match fields.as_slice() {
        ["gtbl", "1", n] => match n.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(bad()),
        },
        _ => Err(bad()),
    }
}

pub fn read_table(path: &Path) -> Result<FiniteGroup, GtblError> {
    let text = read(path)?;
    parse_table(&text, &path.display().to_string())
}

/// Like [`read_table`], but stops after the header when the declared order
/// exceeds `max_order`.
pub fn read_table_limited(path: &Path, max_order: u64) -> Result<FiniteGroup> {
    let text = read(path)?;
    parse_table_limited(&text, &path.display().to_string(), Some(max_order))
}

fn read(path: &Path) -> Result<String, GtblError> {
    fs::read_to_string(path).map_err(|source| GtblError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn write_table(group: &FiniteGroup, path: &Path) -> Result<(), GtblError> {
    fs::write(path, format_table(group)).map_err(|source| GtblError::Io {
        path: path.to_owned(),
        source,
    })
}
