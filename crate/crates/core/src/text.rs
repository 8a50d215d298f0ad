//! Text interchange format.
//!
//! ```text
//! # comment lines are ignored
//! k n b
//! v_0 v_1 ... v_{k^n - 1}
//! ```
//!
//! Values are whitespace separated and may span any number of lines. The
//! single-line variant `k n b;v_0 v_1 ...` is accepted everywhere. Several
//! functions may be concatenated into one stream since the header fixes the
//! number of values that follow.

use crate::error::{Error, Result};
use crate::function::{checked_pow, FiniteFunction, Value, DEFAULT_MAX_TABLE_LEN};

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        let mut start: Option<usize> = None;
        for (pos, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
            let sep = ch.is_whitespace() || ch == ';';
            match (start, sep) {
                (None, false) => start = Some(pos),
                (Some(s), true) => {
                    out.push(Token {
                        text: &line[s..pos],
                        line: line_no + 1,
                        column: line[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
    }
    out
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn number(tok: &Token<'_>, what: &str) -> Result<usize> {
    tok.text
        .parse::<usize>()
        .map_err(|_| parse_error(tok.line, tok.column, format!("expected {what}, found `{}`", tok.text)))
}

struct Reader<'a> {
    tokens: Vec<Token<'a>>,
    pos: usize,
    end: (usize, usize),
    limit: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str, limit: usize) -> Self {
        let lines = text.lines().count().max(1);
        let last_col = text.lines().last().map_or(0, |l| l.chars().count()) + 1;
        Reader {
            tokens: tokenize(text),
            pos: 0,
            end: (lines, last_col),
            limit,
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn read_function(&mut self) -> Result<FiniteFunction> {
        let head = self.tokens[self.pos..].iter().take(3).copied().collect::<Vec<_>>();
        if head.len() < 3 || head.iter().any(|t| t.line != head[0].line) {
            let t = head.first().copied().unwrap();
            return Err(parse_error(t.line, t.column, "malformed header: expected `k n b` on one line"));
        }
        let k = number(&head[0], "domain size k")?;
        let n = number(&head[1], "arity n")?;
        let b = number(&head[2], "codomain size b")?;
        let hdr = |msg: String| parse_error(head[0].line, head[0].column, msg);
        if k < 2 {
            return Err(hdr(format!("malformed header: k must be at least 2, got {k}")));
        }
        if n < 1 {
            return Err(hdr("malformed header: n must be at least 1".into()));
        }
        if b < 2 || b > Value::MAX as usize {
            return Err(hdr(format!("malformed header: b must be in 2..=2^32-1, got {b}")));
        }
        let len = match checked_pow(k, n) {
            Some(len) if len <= self.limit => len,
            _ => {
                return Err(hdr(format!(
                    "table size {k}^{n} exceeds the limit of {} entries",
                    self.limit
                )))
            }
        };
        self.pos += 3;
        let available = self.tokens.len() - self.pos;
        if available < len {
            let (line, column) = self.end;
            return Err(parse_error(
                line,
                column,
                format!("expected {len} values, found {available}"),
            ));
        }
        let mut table = Vec::with_capacity(len);
        for tok in &self.tokens[self.pos..self.pos + len] {
            let v = tok
                .text
                .parse::<u64>()
                .map_err(|_| parse_error(tok.line, tok.column, format!("expected a value, found `{}`", tok.text)))?;
            if v >= b as u64 {
                return Err(parse_error(tok.line, tok.column, format!("value {v} out of range, b = {b}")));
            }
            table.push(v as Value);
        }
        self.pos += len;
        FiniteFunction::with_limit(k, n, b, table, self.limit)
    }
}

/// Parses exactly one function.
pub fn parse(text: &str) -> Result<FiniteFunction> {
    parse_with_limit(text, DEFAULT_MAX_TABLE_LEN)
}

pub fn parse_with_limit(text: &str, limit: usize) -> Result<FiniteFunction> {
    let mut r = Reader::new(text, limit);
    if r.at_end() {
        let (line, column) = r.end;
        return Err(parse_error(line, column, "empty input: expected header `k n b`"));
    }
    let f = r.read_function()?;
    if let Some(tok) = r.tokens.get(r.pos) {
        return Err(parse_error(
            tok.line,
            tok.column,
            format!("expected {} values, found more", f.table().len()),
        ));
    }
    Ok(f)
}

/// Parses a concatenation of zero or more functions.
pub fn parse_many(text: &str) -> Result<Vec<FiniteFunction>> {
    let mut r = Reader::new(text, DEFAULT_MAX_TABLE_LEN);
    let mut out = Vec::new();
    while !r.at_end() {
        out.push(r.read_function()?);
    }
    Ok(out)
}

fn values(f: &FiniteFunction) -> String {
    let mut s = String::with_capacity(f.table().len() * 2);
    for (i, v) in f.table().iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        s.push_str(&v.to_string());
    }
    s
}

/// Canonical two-line rendering, without a trailing newline.
pub fn render(f: &FiniteFunction) -> String {
    format!("{} {} {}\n{}", f.k(), f.n(), f.b(), values(f))
}

/// Single-line rendering `k n b;v_0 v_1 ...`.
pub fn render_line(f: &FiniteFunction) -> String {
    format!("{} {} {};{}", f.k(), f.n(), f.b(), values(f))
}
