//! Line-oriented instance files.
//!
//! ```text
//! # comments run from `#` to the end of the line
//! n=3 m=3
//! h0: 2 0 1
//! h1: 0 3 0
//! ```
//!
//! The first non-blank line is the header `n=<int> m=<int>`. Every following
//! non-blank line is `name: c1 c2 ... cn`. Names are made of ASCII letters,
//! digits, `_`, `-` and `.`, and must be unique. Rows must have exactly `n`
//! counts summing to `m`.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::histogram::Histogram;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub n: usize,
    pub m: u64,
    pub names: Vec<String>,
    pub histograms: Vec<Histogram>,
}

impl Instance {
    /// Builds an instance from named rows, enforcing the file invariants.
    pub fn new(n: usize, m: u64, rows: Vec<(String, Vec<u64>)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ShapeMismatch("n must be at least 1".into()));
        }
        if rows.is_empty() {
            return Err(Error::ShapeMismatch("no histograms".into()));
        }
        let mut seen = HashSet::new();
        let mut names = Vec::with_capacity(rows.len());
        let mut histograms = Vec::with_capacity(rows.len());
        for (name, counts) in rows {
            if !valid_name(&name) {
                return Err(Error::ShapeMismatch(format!("invalid name `{name}`")));
            }
            if !seen.insert(name.clone()) {
                return Err(Error::ShapeMismatch(format!("duplicate name `{name}`")));
            }
            histograms.push(checked_row(&name, n, m, counts)?);
            names.push(name);
        }
        Ok(Self {
            n,
            m,
            names,
            histograms,
        })
    }

    pub fn d(&self) -> usize {
        self.histograms.len() - 1
    }

    /// Canonical text form; parses back to an equal instance.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={} m={}\n", self.n, self.m);
        for (name, h) in self.names.iter().zip(&self.histograms) {
            out.push_str(name);
            out.push(':');
            for c in h.counts() {
                let _ = write!(out, " {c}");
            }
            out.push('\n');
        }
        out
    }
}

fn checked_row(name: &str, n: usize, m: u64, counts: Vec<u64>) -> Result<Histogram> {
    if counts.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "`{name}` has {} counts, expected n={n}",
            counts.len()
        )));
    }
    let h = Histogram::new(counts)?;
    if h.m() != m {
        return Err(Error::ShapeMismatch(format!(
            "`{name}` has mass {}, expected m={m}",
            h.m()
        )));
    }
    Ok(h)
}

pub fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || matches!(b, b'_' | b'-' | b'.'))
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based character columns.
fn tokens(text: &str, offset: usize) -> impl Iterator<Item = (usize, &str)> {
    let mut col = offset;
    let mut start = None;
    let mut out = Vec::new();
    for (i, ch) in text.char_indices() {
        col += 1;
        if ch.is_whitespace() {
            if let Some((s, c)) = start.take() {
                out.push((c, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some((i, col));
        }
    }
    if let Some((s, c)) = start {
        out.push((c, &text[s..]));
    }
    out.into_iter()
}

fn parse_int<T: std::str::FromStr>(tok: &str, line: usize, column: usize, what: &str) -> Result<T> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_error(
            line,
            column,
            format!("expected {what}, found `{tok}`"),
        ));
    }
    tok.parse()
        .map_err(|_| parse_error(line, column, format!("{what} `{tok}` is out of range")))
}

fn parse_header(content: &str, line: usize) -> Result<(usize, u64)> {
    let toks: Vec<(usize, &str)> = tokens(content, 0).collect();
    let field = |idx: usize, key: &str| -> Result<(usize, &str)> {
        let Some(&(col, tok)) = toks.get(idx) else {
            let col = content.chars().count() + 1;
            return Err(parse_error(
                line,
                col,
                format!("header is missing `{key}=`"),
            ));
        };
        match tok.strip_prefix(key).and_then(|t| t.strip_prefix('=')) {
            Some(value) => Ok((col + key.len() + 1, value)),
            None => Err(parse_error(
                line,
                col,
                format!("expected `{key}=<int>`, found `{tok}`"),
            )),
        }
    };
    let (ncol, ntok) = field(0, "n")?;
    let (mcol, mtok) = field(1, "m")?;
    if let Some(&(col, tok)) = toks.get(2) {
        return Err(parse_error(
            line,
            col,
            format!("unexpected `{tok}` after header"),
        ));
    }
    let n: usize = parse_int(ntok, line, ncol, "bin count")?;
    if n == 0 {
        return Err(parse_error(line, ncol, "n must be at least 1"));
    }
    let m: u64 = parse_int(mtok, line, mcol, "mass")?;
    Ok((n, m))
}

/// Parses an instance file. Syntax errors carry 1-based line and column;
/// rows with the wrong length or mass are reported as shape mismatches.
pub fn parse(text: &str) -> Result<Instance> {
    let mut header: Option<(usize, u64)> = None;
    let mut rows: Vec<(String, Vec<u64>)> = Vec::new();
    let mut seen = HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some((n, m)) = header else {
            header = Some(parse_header(content, line)?);
            continue;
        };

        let Some(colon) = content.find(':') else {
            let col = content.chars().take_while(|c| c.is_whitespace()).count() + 1;
            return Err(parse_error(line, col, "expected `name: counts...`"));
        };
        let name_part = &content[..colon];
        let name = name_part.trim();
        let name_col = name_part.chars().take_while(|c| c.is_whitespace()).count() + 1;
        if !valid_name(name) {
            return Err(parse_error(
                line,
                name_col,
                format!("invalid name `{name}`"),
            ));
        }
        if !seen.insert(name.to_string()) {
            return Err(parse_error(
                line,
                name_col,
                format!("duplicate name `{name}`"),
            ));
        }
        let offset = content[..=colon].chars().count();
        let counts = tokens(&content[colon + 1..], offset)
            .map(|(col, tok)| parse_int::<u64>(tok, line, col, "count"))
            .collect::<Result<Vec<_>>>()?;
        let row = checked_row(name, n, m, counts).map_err(|e| match e {
            Error::ShapeMismatch(msg) => Error::ShapeMismatch(format!("line {line}: {msg}")),
            other => other,
        })?;
        rows.push((name.to_string(), row.counts().to_vec()));
    }

    let Some((n, m)) = header else {
        return Err(parse_error(1, 1, "missing header `n=<int> m=<int>`"));
    };
    if rows.is_empty() {
        return Err(parse_error(text.lines().count().max(1), 1, "no histograms"));
    }
    Instance::new(n, m, rows)
}
