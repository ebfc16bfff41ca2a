//! Text formats.
//!
//! Matrix: first line `rows cols`, then `rows` lines of `cols` rationals
//! written `p` or `p/q`.
//!
//! Lie algebra: first line `dim n`, then lines `i j k c` meaning
//! `c_ij^k = c` with `1 <= i < j <= n`, `1 <= k <= n`; omitted constants are
//! zero.
//!
//! In both, `#` starts a comment that runs to the end of the line, and
//! blank lines are ignored.

use crate::lie::LieAlgebra;
use crate::linalg::rational::{parse_rat, Rat};
use crate::linalg::{Poly, QMat};
use std::fmt;
use thiserror::Error;

/// Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

/// Non-blank lines as (line number, tokens with columns); `#` starts a
/// comment running to the end of the line.
fn content_lines(text: &str) -> Vec<(usize, Vec<Token<'_>>)> {
    text.lines()
        .map(|l| l.split_once('#').map_or(l, |(code, _)| code))
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let mut tokens = Vec::new();
            let mut start = None;
            for (pos, ch) in l.char_indices().chain(std::iter::once((l.len(), ' '))) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(pos),
                    (true, Some(s)) => {
                        tokens.push(Token {
                            text: &l[s..pos],
                            column: s + 1,
                        });
                        start = None;
                    }
                    _ => {}
                }
            }
            (i + 1, tokens)
        })
        .collect()
}

fn parse_usize(tok: &Token<'_>, line: usize, what: &str) -> Result<usize, ParseError> {
    tok.text.parse::<usize>().map_err(|_| {
        err(
            line,
            tok.column,
            format!("expected {what}, found `{}`", tok.text),
        )
    })
}

fn parse_entry(tok: &Token<'_>, line: usize) -> Result<Rat, ParseError> {
    parse_rat(tok.text).map_err(|m| err(line, tok.column, m))
}

pub fn parse_matrix(text: &str) -> Result<QMat, ParseError> {
    let lines = content_lines(text);
    let Some((hl, header)) = lines.first() else {
        return Err(err(1, 1, "missing `rows cols` header"));
    };
    if header.len() != 2 {
        let col = header.get(2).map_or(1, |t| t.column);
        return Err(err(*hl, col, "header must be `rows cols`"));
    }
    let rows = parse_usize(&header[0], *hl, "a row count")?;
    let cols = parse_usize(&header[1], *hl, "a column count")?;
    let body = &lines[1..];
    if body.len() != rows {
        let (line, column) = match body.get(rows) {
            Some((l, t)) => (*l, t[0].column),
            None => (text.lines().count().max(1), 1),
        };
        return Err(err(
            line,
            column,
            format!("expected {rows} rows, found {}", body.len()),
        ));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (line, toks) in body {
        if toks.len() != cols {
            let column = toks.get(cols).map_or_else(
                || toks.last().map_or(1, |t| t.column + t.text.len()),
                |t| t.column,
            );
            return Err(err(
                *line,
                column,
                format!("expected {cols} entries, found {}", toks.len()),
            ));
        }
        for t in toks {
            data.push(parse_entry(t, *line)?);
        }
    }
    Ok(QMat::new(rows, cols, data).expect("entry count checked"))
}

pub fn parse_lie(text: &str) -> Result<LieAlgebra, ParseError> {
    let lines = content_lines(text);
    let Some((hl, header)) = lines.first() else {
        return Err(err(1, 1, "missing `dim n` header"));
    };
    if header.len() != 2 || header[0].text != "dim" {
        return Err(err(*hl, 1, "header must be `dim n`"));
    }
    let n = parse_usize(&header[1], *hl, "a dimension")?;
    let mut g = LieAlgebra::abelian(n);
    let mut seen = std::collections::BTreeSet::new();
    for (line, toks) in &lines[1..] {
        if toks.len() != 4 {
            return Err(err(*line, 1, "expected `i j k c`"));
        }
        let mut idx = [0usize; 3];
        for (slot, t) in idx.iter_mut().zip(toks) {
            let v = parse_usize(t, *line, "an index")?;
            if v == 0 || v > n {
                return Err(err(*line, t.column, format!("index {v} is outside 1..{n}")));
            }
            *slot = v - 1;
        }
        let [i, j, k] = idx;
        if i >= j {
            return Err(err(
                *line,
                toks[0].column,
                "bracket indices must satisfy i < j",
            ));
        }
        if !seen.insert((i, j, k)) {
            return Err(err(
                *line,
                toks[0].column,
                format!("constant for ({} {} {}) given twice", i + 1, j + 1, k + 1),
            ));
        }
        let c = parse_entry(&toks[3], *line)?;
        g.set_constant(i, j, k, c).expect("indices validated");
    }
    Ok(g)
}

pub fn lie_to_text(g: &LieAlgebra) -> String {
    let mut out = format!("dim {}\n", g.dim());
    for (i, j, k, c) in g.constants() {
        out.push_str(&format!("{} {} {} {}\n", i + 1, j + 1, k + 1, c));
    }
    out
}

/// Comma-separated coefficients, highest degree first.
pub fn parse_poly_high_first(text: &str) -> Result<Poly, ParseError> {
    let mut coeffs = Vec::new();
    let mut column = 1;
    for part in text.split(',') {
        let t = part.trim();
        let lead = part.len() - part.trim_start().len();
        if t.is_empty() {
            return Err(err(1, column + lead, "empty coefficient"));
        }
        coeffs.push(parse_rat(t).map_err(|m| err(1, column + lead, m))?);
        column += part.len() + 1;
    }
    Ok(Poly::from_high_first(&coeffs))
}
