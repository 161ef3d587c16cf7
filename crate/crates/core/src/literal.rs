//! Text literals for field elements: `INT`, `INT/INT`, `R*sqrt(D)`,
//! `R+R*sqrt(D)` and `R-R*sqrt(D)`.
//!
//! Inside a literal, whitespace next to `*`, `/`, `(` and `)` is ignored.
//! In a row of literals a bare run of whitespace separates entries, so
//! `1 -1` is two literals while `1 - 1/5*sqrt(5)` is also two (`1` and
//! `-1/5*sqrt(5)`); write `1-1/5*sqrt(5)` for the single value.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::field::{FieldError, QuadExt, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiteralError {
    #[error("empty literal")]
    Empty,
    #[error("malformed rational `{0}`")]
    BadRational(String),
    #[error("malformed radical in `{0}`")]
    BadRadical(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub fn parse_rational(s: &str) -> Result<Rational, LiteralError> {
    let bad = || LiteralError::BadRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = num.strip_prefix('+').unwrap_or(num);
    if num.is_empty() || num.starts_with(['+']) {
        return Err(bad());
    }
    let n = BigInt::from_str(num).map_err(|_| bad())?;
    let d = match den {
        Some(d) if !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) => {
            BigInt::from_str(d).map_err(|_| bad())?
        }
        Some(_) => return Err(bad()),
        None => BigInt::from(1),
    };
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Parses one literal. All whitespace is ignored.
pub fn parse_literal(s: &str) -> Result<QuadExt, LiteralError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    parse_compact(&compact)
}

fn parse_compact(s: &str) -> Result<QuadExt, LiteralError> {
    if s.is_empty() {
        return Err(LiteralError::Empty);
    }
    let Some(pos) = s.find("*sqrt(") else {
        return Ok(QuadExt::rational(parse_rational(s)?));
    };
    let bad = || LiteralError::BadRadical(s.to_string());
    let radical = &s[pos + "*sqrt(".len()..];
    let inner = radical.strip_suffix(')').ok_or_else(bad)?;
    if inner.is_empty() || !inner.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let d: i64 = inner.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    let head = &s[..pos];
    // the binary operator is the last sign that is not the leading one
    let split = head
        .char_indices()
        .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
        .map(|(i, _)| i)
        .next_back();
    let (p, q) = match split {
        Some(i) => (parse_rational(&head[..i])?, parse_rational(&head[i..])?),
        None => (Rational::zero(), parse_rational(head)?),
    };
    Ok(QuadExt::normalize(p, q, d)?)
}

/// Splits a row into literal tokens.
pub fn split_row(row: &str) -> Vec<String> {
    let chars: Vec<char> = row.chars().collect();
    let glue_after = |c: char| matches!(c, '*' | '/' | '(');
    let glue_before = |c: char| matches!(c, '*' | '/' | '(' | ')');
    let mut tokens = Vec::new();
    let mut cur = String::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            let start = i;
            while i < chars.len() && chars[i].is_whitespace() {
                i += 1;
            }
            let prev = start.checked_sub(1).map(|j| chars[j]);
            let next = chars.get(i).copied();
            let joined = prev.is_some_and(glue_after) || next.is_some_and(glue_before);
            let lone_sign = cur == "-" || cur == "+";
            if !joined && !lone_sign && !cur.is_empty() {
                tokens.push(std::mem::take(&mut cur));
            }
            continue;
        }
        cur.push(c);
        i += 1;
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    tokens
}
